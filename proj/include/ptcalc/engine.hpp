#pragma once

// Presentations (G, H, {W_k}, signature): hypothesis checks, correspondence
// coefficients, exponent, signature condition, dimension and genus formulas,
// Kanev coefficients and correspondence matrices.

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ptcalc/characters.hpp"
#include "ptcalc/group.hpp"
#include "ptcalc/matrix.hpp"
#include "ptcalc/subgroups.hpp"

namespace ptcalc {

struct SignatureEntry {
  std::string label;  // e.g. "C1"
  PermGroup subgroup;  // a representative G_j of the class
  long long s = 0;     // number of branch points of this type
};

class GeometricSignature {
 public:
  GeometricSignature() = default;

  /// Validates the entries against G: each representative is a nontrivial
  /// cyclic subgroup and no two are conjugate. Entries with s = 0 are dropped.
  static GeometricSignature make(const PermGroup& G, long long gamma, std::vector<SignatureEntry> entries) {
    if (gamma < 0) throw InputError("signature genus must be non-negative");
    GeometricSignature sig;
    sig.gamma_ = gamma;
    for (auto& e : entries) {
      if (e.s < 0) throw InputError("signature count for " + e.label + " is negative");
      if (e.s == 0) continue;
      require_subgroup(G, e.subgroup, "signature class " + e.label);
      if (e.subgroup.order() == 1 || !e.subgroup.is_cyclic())
        throw InputError("signature class " + e.label + " must be a nontrivial cyclic subgroup");
      for (const auto& f : sig.entries_)
        if (are_conjugate(G, f.subgroup, e.subgroup))
          throw InputError("signature classes " + f.label + " and " + e.label + " are conjugate");
      sig.entries_.push_back(std::move(e));
    }
    return sig;
  }

  long long gamma() const noexcept { return gamma_; }
  const std::vector<SignatureEntry>& entries() const noexcept { return entries_; }

  std::string to_string() const {
    std::string out = "[" + std::to_string(gamma_);
    for (const auto& e : entries_) out += ";(" + e.label + "," + std::to_string(e.s) + ")";
    return out + "]";
  }

 private:
  long long gamma_ = 0;
  std::vector<SignatureEntry> entries_;
};

struct PTPresentation {
  GroupPtr G;
  PermGroup H;
  std::vector<RationalRep> reps;
  GeometricSignature signature;

  PTPresentation(GroupPtr group, PermGroup subgroup, std::vector<RationalRep> representations, GeometricSignature sig)
      : G(std::move(group)), H(std::move(subgroup)), reps(std::move(representations)), signature(std::move(sig)) {
    require_subgroup(*G, H, "presentation subgroup");
    if (reps.empty()) throw InputError("presentation needs at least one representation");
    for (std::size_t i = 0; i < reps.size(); ++i) {
      if (!(*reps[i].seed().group() == *G)) throw InputError("representation " + reps[i].name + " is on another group");
      if (reps[i].is_trivial()) throw InputError("representation " + reps[i].name + " is trivial");
      for (std::size_t j = 0; j < i; ++j)
        if (same_rational_rep(reps[i], reps[j]))
          throw InputError("representations " + reps[j].name + " and " + reps[i].name + " are isomorphic");
    }
  }

  std::size_t n() const { return reps.front().dim_complex; }
  /// [L:Q] for the common field of definition.
  std::size_t field_degree() const { return reps.front().field_degree(); }
  std::size_t index() const { return G->order() / H.order(); }

  void require_genus_zero(const char* what) const {
    if (signature.gamma() != 0) throw InputError(std::string(what) + " needs a genus-0 signature");
  }
};

// ---------------------------------------------------------------------------
// Hypothesis

struct HypothesisReport {
  bool a = true, b = true, c = true, d = true;
  std::vector<std::string> witnesses;
  bool all() const noexcept { return a && b && c && d; }
};

inline HypothesisReport check_hypothesis(const PTPresentation& P) {
  HypothesisReport r;
  const std::size_t n = P.n();
  for (const auto& R : P.reps)
    if (R.dim_complex != n) {
      r.a = false;
      r.witnesses.push_back("(a) dim " + R.name + " = " + std::to_string(R.dim_complex) + " != " + std::to_string(n));
    }
  // Subfields of Q(zeta_p) are determined by their degree, which is the orbit size.
  const std::size_t K = P.reps.front().orbit.size();
  for (const auto& R : P.reps)
    if (R.orbit.size() != K) {
      r.b = false;
      r.witnesses.push_back("(b) character field of " + R.name + " has degree " + std::to_string(R.orbit.size()) +
                            " != " + std::to_string(K));
    }
  for (const auto& R : P.reps) {
    const std::size_t dim = fixed_space_dim(R.seed(), P.H);
    if (dim != 1) {
      r.c = false;
      r.witnesses.push_back("(c) dim " + R.name + "^H = " + std::to_string(dim));
    }
  }
  if (r.c) {
    for (const auto& N : proper_supergroups(*P.G, P.H)) {
      bool killed = false;
      for (const auto& R : P.reps)
        if (fixed_space_dim(R.seed(), N) == 0) killed = true;
      if (!killed) {
        r.d = false;
        r.witnesses.push_back("(d) every representation has invariants under " + N.to_string());
        break;
      }
    }
  } else {
    r.d = false;
    r.witnesses.push_back("(d) not evaluated because (c) fails");
  }
  return r;
}

// ---------------------------------------------------------------------------
// Coefficients and exponent

/// tr_{K/Q} of a value lying in the character field K of R.
inline Rational character_field_trace(const RationalRep& R, const Cyclotomic& x) {
  const int p = x.conductor();
  const std::size_t rel = static_cast<std::size_t>(p - 1) / R.orbit.size();
  return x.trace_full() / Rational(rel);
}

/// sum_k sum_{h in H} tr_{K/Q}(chi_{V_k}(h g^-1)), for any g.
inline Integer coefficient_at(const PTPresentation& P, const Perm& g) {
  const Perm gi = g.inverse();
  Rational total = 0;
  for (const auto& R : P.reps) {
    Rational viaTrace = 0;
    Cyclotomic viaOrbit(R.seed().conductor());
    for (const auto& h : P.H.elements()) {
      const std::size_t e = P.G->index_of(h * gi);
      viaTrace += character_field_trace(R, R.seed().at(e));
      for (const auto& chi : R.orbit) viaOrbit += chi.at(e);
    }
    if (!viaOrbit.is_rational() || viaTrace != viaOrbit.rational_value())
      throw VerificationError("trace of " + R.name + " disagrees with the Galois-orbit sum at " + g.to_string());
    total += viaTrace;
  }
  return to_integer(total, "coefficient at " + g.to_string());
}

struct Coefficients {
  DoubleCosetData cosets;
  std::vector<Integer> b;  // b[0] belongs to the identity double coset
};

inline Coefficients coefficients(const PTPresentation& P) {
  const HypothesisReport h = check_hypothesis(P);
  if (!(h.a && h.b && h.c))
    throw VerificationError("coefficients need Hypothesis (a)-(c): " +
                            (h.witnesses.empty() ? std::string() : h.witnesses.front()));
  Coefficients out{double_cosets(*P.G, P.H), {}};
  for (const auto& g : out.cosets.reps) out.b.push_back(coefficient_at(P, g));
  return out;
}

struct Exponent {
  Integer b;
  Integer q;
};

inline Exponent exponent(const PTPresentation& P, const std::vector<Integer>& b) {
  if (b.size() < 2) throw InputError("degenerate presentation: only one double coset");
  Integer g = 0;
  for (std::size_t i = 1; i < b.size(); ++i) g = gcd(g, b[0] - b[i]);
  if (g == 0) throw VerificationError("degenerate presentation: all coefficients are equal");
  const Rational q = Rational(Integer(P.G->order())) / Rational(g * Integer(P.n()));
  return {g, to_integer(q, "exponent q = |G|/(b n)")};
}

inline Exponent exponent(const PTPresentation& P) { return exponent(P, coefficients(P).b); }

// ---------------------------------------------------------------------------
// Signature condition, dimension, genera

struct SignatureCondition {
  std::vector<Rational> brackets;  // without the factor s_j
  std::vector<Rational> terms;     // s_j times the bracket
  Rational total = 0;
  bool holds = false;
  bool bracketwise = false;
};

inline SignatureCondition signature_condition(const PTPresentation& P, const Integer& q) {
  P.require_genus_zero("signature condition");
  SignatureCondition out;
  const Rational L = Rational(P.field_degree());
  for (const auto& e : P.signature.entries()) {
    Rational rep_sum = 0;
    for (const auto& R : P.reps)
      rep_sum += Rational(R.dim_complex) - Rational(fixed_space_dim(R.seed(), e.subgroup));
    const Rational coset_term =
        Rational(P.index()) - Rational(double_coset_count(*P.G, P.H, e.subgroup));
    const Rational bracket = Rational(q) * L * rep_sum - coset_term;
    out.brackets.push_back(bracket);
    out.terms.push_back(Rational(e.s) * bracket);
    out.total += out.terms.back();
  }
  out.holds = out.total == 0;
  out.bracketwise = std::all_of(out.brackets.begin(), out.brackets.end(), [](const Rational& r) { return r == 0; });
  return out;
}

/// [L:Q] sum_i [ -n + 1/2 sum_j s_j (dim V_i - dim V_i^{G_j}) ].
inline Integer pt_dimension(const PTPresentation& P) {
  P.require_genus_zero("pt_dimension");
  Rational total = 0;
  for (const auto& R : P.reps) {
    Rational inner = -Rational(R.dim_complex);
    for (const auto& e : P.signature.entries())
      inner += Rational(e.s) / 2 * (Rational(R.dim_complex) - Rational(fixed_space_dim(R.seed(), e.subgroup)));
    total += inner;
  }
  total *= Rational(P.field_degree());
  const Integer d = to_integer(total, "Prym-Tyurin dimension");
  if (d < 0) throw VerificationError("negative Prym-Tyurin dimension " + d.str() + ": inconsistent signature");
  return d;
}

/// Genus of Z/U: 1 - [G:U] + 1/2 sum_j s_j ([G:U] - |U\G/G_j|).
inline Integer quotient_genus(const PermGroup& G, const PermGroup& U, const GeometricSignature& sig) {
  if (sig.gamma() != 0) throw InputError("quotient_genus needs a genus-0 signature");
  const Rational idx = Rational(index(G, U));
  Rational g = 1 - idx;
  for (const auto& e : sig.entries())
    g += Rational(e.s) / 2 * (idx - Rational(double_coset_count(G, U, e.subgroup)));
  const Integer out = to_integer(g, "genus of Z/U");
  if (out < 0) throw VerificationError("negative genus " + out.str() + " for Z/U");
  return out;
}

inline Integer quotient_genus(const PTPresentation& P) { return quotient_genus(*P.G, P.H, P.signature); }

/// Riemann-Hurwitz: 2 g_Z - 2 = |G| (2 gamma - 2) + sum_j s_j |G| (1 - 1/|G_j|).
inline Integer total_space_genus(const GeometricSignature& sig, std::size_t group_order) {
  const Rational N = Rational(group_order);
  Rational twice = N * (2 * Rational(sig.gamma()) - 2);
  for (const auto& e : sig.entries()) twice += Rational(e.s) * N * (1 - Rational(1) / Rational(e.subgroup.order()));
  const Rational g = twice / 2 + 1;
  const Integer out = to_integer(g, "genus of Z");
  if (out < 0) throw VerificationError("Riemann-Hurwitz gives negative genus " + out.str());
  return out;
}

// ---------------------------------------------------------------------------
// Kanev correspondence and matrices

/// (b_1 - b_i)/b - 1 for i >= 2; entry 0 (the identity double coset) is 0.
inline std::vector<Integer> kanev_coefficients(const std::vector<Integer>& b, const Integer& gcd_b) {
  if (gcd_b == 0) throw InputError("kanev_coefficients: b must be nonzero");
  std::vector<Integer> out{Integer(0)};
  for (std::size_t i = 1; i < b.size(); ++i) {
    const Integer diff = b[0] - b[i];
    if (diff % gcd_b != 0) throw VerificationError("b does not divide b_1 - b_i");
    Integer c = diff / gcd_b - 1;
    if (c < 0) throw VerificationError("Kanev effectivity violated at double coset " + std::to_string(i + 1));
    out.push_back(std::move(c));
  }
  return out;
}

/// Labels of the right cosets: the smallest element of each.
inline std::vector<std::string> coset_labels(const CosetTable& t) {
  std::vector<std::string> out;
  for (const auto& c : t.cosets) out.push_back("H" + c.rep.to_string());
  return out;
}

/// M(Hg', Hg) = sum_i coeff_i #{j : H g_ij g = Hg'}. The column of Hg is
/// recomputed from every element of the coset and must not depend on it.
inline CorrMatrix corr_matrix(const PermGroup& G, const PermGroup& H, const DoubleCosetData& dc,
                              const std::vector<Integer>& coeffs) {
  if (coeffs.size() != dc.count()) throw InputError("one coefficient per double coset expected");
  const CosetTable table = right_coset_table(G, H);
  const std::size_t N = table.cosets.size();
  CorrMatrix M(N, coset_labels(table));
  for (std::size_t c = 0; c < N; ++c) {
    std::vector<Integer> first;
    for (const auto& g : table.cosets[c].elements) {
      std::vector<Integer> col(N);
      for (std::size_t i = 0; i < dc.count(); ++i) {
        if (coeffs[i] == 0) continue;
        for (const auto& gij : dc.right_reps[i]) col[table.coset_of[G.index_of(gij * g)]] += coeffs[i];
      }
      if (first.empty()) {
        first = std::move(col);
      } else if (col != first) {
        throw VerificationError("correspondence is not well defined on the coset " + table.cosets[c].rep.to_string());
      }
    }
    for (std::size_t r = 0; r < N; ++r) M(r, c) = first[r];
  }
  return M;
}

struct MatrixProperties {
  bool effective = false;
  bool symmetric = false;
  bool fixed_point_free = false;
  std::optional<Integer> degree;       // common row and column sum
  std::optional<Integer> certificate;  // c with M^2 + (q-2)M - (q-1)I = cJ
  std::optional<Integer> predicted;    // (r^2 + (q-2) r - (q-1)) / N
};

inline MatrixProperties matrix_properties(const CorrMatrix& M, const Integer& q) {
  MatrixProperties out;
  out.effective = M.is_nonnegative();
  out.symmetric = M.is_symmetric();
  out.fixed_point_free = M.has_zero_diagonal();
  out.degree = M.constant_line_sum();
  const std::size_t N = M.size();
  if (N == 0) return out;
  CorrMatrix A = M * M + M * Integer(q - 2) - CorrMatrix::identity(N) * Integer(q - 1);
  const Integer c = A(0, 0);
  bool constant = true;
  for (std::size_t i = 0; i < N && constant; ++i)
    for (std::size_t j = 0; j < N; ++j)
      if (A(i, j) != c) {
        constant = false;
        break;
      }
  if (out.degree) {
    const Integer& r = *out.degree;
    const Integer num = r * r + (q - 2) * r - (q - 1);
    if (num % Integer(N) == 0) out.predicted = num / Integer(N);
  }
  if (constant && out.predicted && *out.predicted == c) out.certificate = c;
  return out;
}

// ---------------------------------------------------------------------------
// Everything the criterion needs in one record

struct PresentationReport {
  HypothesisReport hypothesis;
  Coefficients coeffs;
  Exponent exp;
  SignatureCondition condition;
  Integer dimension;
  Integer genus;
  std::optional<Integer> total_genus;
  std::vector<Integer> kanev;
  CorrMatrix kanev_matrix;
  MatrixProperties kanev_props;
};

inline PresentationReport analyze(const PTPresentation& P) {
  PresentationReport r;
  r.hypothesis = check_hypothesis(P);
  r.coeffs = coefficients(P);
  r.exp = exponent(P, r.coeffs.b);
  r.condition = signature_condition(P, r.exp.q);
  r.dimension = pt_dimension(P);
  r.genus = quotient_genus(P);
  try {
    r.total_genus = total_space_genus(P.signature, P.G->order());
  } catch (const VerificationError&) {
    r.total_genus.reset();
  }
  r.kanev = kanev_coefficients(r.coeffs.b, r.exp.b);
  r.kanev_matrix = corr_matrix(*P.G, P.H, r.coeffs.cosets, r.kanev);
  r.kanev_props = matrix_properties(r.kanev_matrix, r.exp.q);
  return r;
}

}  // namespace ptcalc
