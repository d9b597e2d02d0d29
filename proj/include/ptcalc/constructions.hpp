#pragma once

// Self-products of presentations: G x G acting on the fibre product of two
// G-covers, with the representations W (x) V0 and V0 (x) W.

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "ptcalc/engine.hpp"

namespace ptcalc {

struct ProductPresentation {
  PTPresentation first, second;  // share G, H and the representations
  std::shared_ptr<const ProductGroup> product;
  PTPresentation combined;
  std::vector<std::string> assumptions;
};

namespace detail {

inline void require_same_base(const PTPresentation& a, const PTPresentation& b) {
  if (!(*a.G == *b.G)) throw InputError("fiber_product: the two presentations have different groups");
  if (!(a.H == b.H)) throw InputError("fiber_product: the two presentations have different subgroups");
  if (a.reps.size() != b.reps.size()) throw InputError("fiber_product: representation lists differ");
  for (std::size_t i = 0; i < a.reps.size(); ++i)
    if (!same_rational_rep(a.reps[i], b.reps[i]))
      throw InputError("fiber_product: representation " + a.reps[i].name + " differs between the factors");
}

inline RationalRep embed_rep(const ProductGroup& P, const RationalRep& R, bool left) {
  const GroupPtr& other = left ? P.right() : P.left();
  const ClassFunction one = ClassFunction::constant(other, R.seed().conductor(), 1);
  const ClassFunction chi = left ? tensor(P, R.seed(), one) : tensor(P, one, R.seed());
  return rational_rep_of(chi, left ? R.name + "(x)V0" : "V0(x)" + R.name, R.schur_index);
}

}  // namespace detail

/// The G^2 presentation: subgroup H x H, representations W_k (x) V0 and
/// V0 (x) W_k, signature [0; (C_j x 1, s^1_j), (1 x C_j, s^2_j)].
inline ProductPresentation fiber_product(const PTPresentation& first, const PTPresentation& second) {
  detail::require_same_base(first, second);
  first.require_genus_zero("fiber_product");
  second.require_genus_zero("fiber_product");
  const Exponent e = exponent(first);
  if (!signature_condition(first, e.q).holds)
    throw InputError("fiber_product: the first signature does not satisfy the signature condition");
  if (!signature_condition(second, e.q).holds)
    throw InputError("fiber_product: the second signature does not satisfy the signature condition");

  auto P = std::make_shared<const ProductGroup>(ProductGroup::external(first.G, first.G));
  std::vector<RationalRep> reps;
  for (const auto& R : first.reps) reps.push_back(detail::embed_rep(*P, R, true));
  for (const auto& R : first.reps) reps.push_back(detail::embed_rep(*P, R, false));
  std::vector<SignatureEntry> entries;
  for (const auto& x : first.signature.entries()) entries.push_back({x.label + "^1", P->embed_left(x.subgroup), x.s});
  for (const auto& x : second.signature.entries()) entries.push_back({x.label + "^2", P->embed_right(x.subgroup), x.s});
  GeometricSignature sig = GeometricSignature::make(*P->group(), 0, std::move(entries));
  PTPresentation combined(P->group(), P->product(first.H, first.H), std::move(reps), std::move(sig));
  return {first, second, P, std::move(combined), {"branch loci of the two factor covers are assumed disjoint"}};
}

struct ProductExponentCheck {
  Exponent base, product;
  std::size_t index = 0;   // [G:H]
  std::size_t h_order = 0;  // |H|
  bool ok = false;
};

/// Recomputes the exponent of the product and compares q~ = [G:H] q, b~ = |H| b.
inline ProductExponentCheck verify_product_exponent(const ProductPresentation& pp) {
  ProductExponentCheck r;
  r.base = exponent(pp.first);
  r.product = exponent(pp.combined);
  r.index = pp.first.index();
  r.h_order = pp.first.H.order();
  r.ok = r.product.q == r.base.q * Integer(r.index) && r.product.b == r.base.b * Integer(r.h_order);
  return r;
}

struct PullbackCheck {
  CorrMatrix D;           // correspondence of the product
  CorrMatrix pullbacks;   // |H| (q1^* D1 + q2^* D2)
  CorrMatrix residual;    // D - pullbacks
  bool matrices_equal = false;
  bool coefficients_ok = false;  // b_ik = |H| a_i and b'_ik = |H| a_k
  std::vector<std::string> failures;
  bool ok() const noexcept { return matrices_equal && coefficients_ok; }
};

/// D = |H| (q1^* D1 + q2^* D2) on the cosets of H x H, where the pullback
/// q1^* D1 sends (x1, x2) to D1(x1) times the whole fibre of q1 over it.
inline PullbackCheck verify_lemma_3_2(const ProductPresentation& pp) {
  PullbackCheck r;
  const PermGroup& G = *pp.first.G;
  const PermGroup& H = pp.first.H;
  const ProductGroup& P = *pp.product;
  const Coefficients base = coefficients(pp.first);
  const CorrMatrix D1 = corr_matrix(G, H, base.cosets, base.b);
  const Coefficients prod = coefficients(pp.combined);
  r.D = corr_matrix(*P.group(), pp.combined.H, prod.cosets, prod.b);

  // Coset (x1, x2) of H x H for each product coset.
  const CosetTable base_table = right_coset_table(G, H);
  const CosetTable prod_table = right_coset_table(*P.group(), pp.combined.H);
  const std::size_t N = base_table.cosets.size();
  std::vector<std::pair<std::size_t, std::size_t>> split;
  for (const auto& c : prod_table.cosets) {
    const auto [i, j] = P.coordinates(c.rep);
    split.emplace_back(base_table.coset_of[G.index_of(P.left()->elements()[i])],
                       base_table.coset_of[G.index_of(P.right()->elements()[j])]);
  }
  const std::size_t M = split.size();
  if (M != N * N) throw VerificationError("product coset count is not the square of the base count");
  r.pullbacks = CorrMatrix(M, r.D.labels());
  const Integer h(H.order());
  for (std::size_t a = 0; a < M; ++a)
    for (std::size_t b = 0; b < M; ++b)
      r.pullbacks(a, b) = h * (D1(split[a].first, split[b].first) + D1(split[a].second, split[b].second));
  r.residual = r.D - r.pullbacks;
  r.matrices_equal = r.residual.is_zero();
  if (!r.matrices_equal) r.failures.push_back("D differs from |H|(q1*D1 + q2*D2)");

  // Coefficient level: split the product reps into the W (x) V0 and V0 (x) W halves.
  const std::size_t k = pp.first.reps.size();
  std::vector<RationalRep> lefts(pp.combined.reps.begin(), pp.combined.reps.begin() + static_cast<long>(k));
  std::vector<RationalRep> rights(pp.combined.reps.begin() + static_cast<long>(k), pp.combined.reps.end());
  const PTPresentation left_only(pp.combined.G, pp.combined.H, lefts, pp.combined.signature);
  const PTPresentation right_only(pp.combined.G, pp.combined.H, rights, pp.combined.signature);
  r.coefficients_ok = true;
  for (std::size_t i = 0; i < prod.cosets.count(); ++i) {
    const Perm& g = prod.cosets.reps[i];
    const auto [x, y] = P.coordinates(g);
    const Integer ai = base.b[base.cosets.double_coset_of[G.index_of(P.left()->elements()[x])]];
    const Integer ak = base.b[base.cosets.double_coset_of[G.index_of(P.right()->elements()[y])]];
    const Integer bik = coefficient_at(left_only, g), bik2 = coefficient_at(right_only, g);
    if (bik != h * ai || bik2 != h * ak || prod.b[i] != bik + bik2) {
      r.coefficients_ok = false;
      r.failures.push_back("coefficient identity fails at " + g.to_string());
    }
  }
  return r;
}

struct DimensionAdditivity {
  Integer product, first, second;
  bool ok = false;
};

inline DimensionAdditivity verify_dimension_additivity(const ProductPresentation& pp) {
  DimensionAdditivity r{pt_dimension(pp.combined), pt_dimension(pp.first), pt_dimension(pp.second), false};
  r.ok = r.product == r.first + r.second;
  return r;
}

}  // namespace ptcalc
