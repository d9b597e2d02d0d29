#pragma once

// Exact character theory for the families in scope: Z/2, dihedral groups and
// direct products of those. Values live in Q(zeta_p) for one odd prime p.

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ptcalc/exact.hpp"
#include "ptcalc/group.hpp"
#include "ptcalc/product.hpp"

namespace ptcalc {

class ClassFunction {
 public:
  /// values[i] is the value at group->elements()[i]. Class constancy is checked
  /// against conjugation by the generators.
  ClassFunction(GroupPtr group, std::vector<Cyclotomic> values) : G_(std::move(group)), v_(std::move(values)) {
    if (!G_) throw InputError("class function without a group");
    if (v_.size() != G_->order()) throw InputError("class function has the wrong number of values");
    if (v_.empty()) throw InputError("class function on an empty group");
    const int p = v_.front().conductor();
    for (const auto& x : v_)
      if (x.conductor() != p) throw InputError("class function values in different cyclotomic fields");
    const auto& el = G_->elements();
    for (const auto& g : G_->generators()) {
      const Perm gi = g.inverse();
      for (std::size_t i = 0; i < el.size(); ++i)
        if (!(v_[G_->index_of(gi * el[i] * g)] == v_[i]))
          throw InputError("function is not constant on the conjugacy class of " + el[i].to_string());
    }
  }

  static ClassFunction constant(GroupPtr group, int conductor, const Rational& c) {
    std::vector<Cyclotomic> v(group->order(), Cyclotomic(conductor, c));
    return ClassFunction(std::move(group), std::move(v));
  }

  const GroupPtr& group() const noexcept { return G_; }
  int conductor() const noexcept { return v_.front().conductor(); }
  const std::vector<Cyclotomic>& values() const noexcept { return v_; }
  const Cyclotomic& at(std::size_t element) const { return v_.at(element); }
  const Cyclotomic& operator()(const Perm& g) const { return v_.at(G_->index_of(g)); }

  /// Value at the identity, which must be a non-negative integer for a character.
  Integer degree() const { return to_integer(v_.front().rational_value(), "character degree"); }

  ClassFunction galois(long long k) const {
    std::vector<Cyclotomic> out;
    out.reserve(v_.size());
    for (const auto& x : v_) out.push_back(x.galois(k));
    return ClassFunction(G_, std::move(out), Unchecked{});
  }

  ClassFunction& operator+=(const ClassFunction& o) {
    require_same_group(o);
    for (std::size_t i = 0; i < v_.size(); ++i) v_[i] += o.v_[i];
    return *this;
  }
  ClassFunction& operator-=(const ClassFunction& o) {
    require_same_group(o);
    for (std::size_t i = 0; i < v_.size(); ++i) v_[i] -= o.v_[i];
    return *this;
  }
  ClassFunction& operator*=(const Rational& s) {
    for (auto& x : v_) x *= s;
    return *this;
  }
  friend ClassFunction operator+(ClassFunction a, const ClassFunction& b) { return a += b; }
  friend ClassFunction operator-(ClassFunction a, const ClassFunction& b) { return a -= b; }
  friend ClassFunction operator*(ClassFunction a, const Rational& s) { return a *= s; }

  /// Pointwise product.
  friend ClassFunction operator*(const ClassFunction& a, const ClassFunction& b) {
    a.require_same_group(b);
    std::vector<Cyclotomic> out;
    out.reserve(a.v_.size());
    for (std::size_t i = 0; i < a.v_.size(); ++i) out.push_back(a.v_[i] * b.v_[i]);
    return ClassFunction(a.G_, std::move(out), Unchecked{});
  }

  friend bool operator==(const ClassFunction& a, const ClassFunction& b) {
    return (a.G_ == b.G_ || *a.G_ == *b.G_) && a.v_ == b.v_;
  }

  /// First element where two class functions differ, if any.
  std::optional<std::size_t> first_difference(const ClassFunction& o) const {
    require_same_group(o);
    for (std::size_t i = 0; i < v_.size(); ++i)
      if (!(v_[i] == o.v_[i])) return i;
    return std::nullopt;
  }

  void require_same_group(const ClassFunction& o) const {
    if (G_ != o.G_ && !(*G_ == *o.G_)) throw InputError("class functions on different groups");
  }

 private:
  struct Unchecked {};
  ClassFunction(GroupPtr group, std::vector<Cyclotomic> values, Unchecked)
      : G_(std::move(group)), v_(std::move(values)) {}

  GroupPtr G_;
  std::vector<Cyclotomic> v_;
};

/// (1/|G|) sum_g a(g) b(g^-1).
inline Rational inner_product(const ClassFunction& a, const ClassFunction& b) {
  a.require_same_group(b);
  const PermGroup& G = *a.group();
  Cyclotomic acc(a.conductor());
  for (std::size_t i = 0; i < G.order(); ++i) acc += a.at(i) * b.at(G.inverse_index(i));
  return acc.rational_value() / Rational(G.order());
}

/// The same inner product summed over conjugacy classes weighted by class size.
inline Rational inner_product_by_classes(const ClassFunction& a, const ClassFunction& b) {
  a.require_same_group(b);
  const PermGroup& G = *a.group();
  Cyclotomic acc(a.conductor());
  for (const auto& cls : conjugacy_classes(G)) {
    const std::size_t x = cls.front();
    acc += a.at(x) * b.at(G.inverse_index(x)) * Rational(cls.size());
  }
  return acc.rational_value() / Rational(G.order());
}

/// dim V^H = (1/|H|) sum_{h in H} chi_V(h).
inline std::size_t fixed_space_dim(const ClassFunction& V, const PermGroup& H) {
  require_subgroup(*V.group(), H, "fixed_space_dim");
  Cyclotomic acc(V.conductor());
  for (const auto& h : H.elements()) acc += V(h);
  const Rational r = acc.rational_value() / Rational(H.order());
  const Integer d = to_integer(r, "fixed-space dimension");
  if (d < 0) throw VerificationError("negative fixed-space dimension " + d.str());
  return static_cast<std::size_t>(d);
}

/// rho_H: the number of right cosets Hx with Hxg = Hx.
inline ClassFunction perm_character(const GroupPtr& G, const PermGroup& H, int conductor) {
  require_subgroup(*G, H, "perm_character");
  const CosetTable table = right_coset_table(*G, H);
  std::vector<Cyclotomic> v;
  v.reserve(G->order());
  for (const auto& g : G->elements()) {
    std::size_t fixed = 0;
    for (std::size_t c = 0; c < table.cosets.size(); ++c)
      if (table.coset_of[G->index_of(table.cosets[c].rep * g)] == c) ++fixed;
    v.emplace_back(conductor, Rational(fixed));
  }
  return ClassFunction(G, std::move(v));
}

/// chi(g1, g2) = a(g1) b(g2) on the direct product.
inline ClassFunction tensor(const ProductGroup& P, const ClassFunction& a, const ClassFunction& b) {
  if (!(*a.group() == *P.left()) || !(*b.group() == *P.right()))
    throw InputError("tensor: factors do not match the product");
  if (a.conductor() != b.conductor()) throw InputError("tensor: conductor mismatch");
  std::vector<Cyclotomic> v;
  v.reserve(P.group()->order());
  for (std::size_t k = 0; k < P.group()->order(); ++k) {
    const auto [i, j] = P.coordinates(k);
    v.push_back(a.at(a.group()->index_of(P.left()->elements()[i])) *
                b.at(b.group()->index_of(P.right()->elements()[j])));
  }
  return ClassFunction(P.group(), std::move(v));
}

/// A rational irreducible representation as the Galois orbit of a complex
/// irreducible character.
struct RationalRep {
  std::string name;
  std::vector<ClassFunction> orbit;
  std::size_t dim_complex = 0;
  std::size_t schur_index = 1;

  std::size_t field_degree() const noexcept { return orbit.size() * schur_index; }
  const ClassFunction& seed() const { return orbit.front(); }

  /// Character of the rational representation: m times the sum over the orbit.
  ClassFunction character() const {
    ClassFunction out = orbit.front();
    for (std::size_t i = 1; i < orbit.size(); ++i) out += orbit[i];
    return out * Rational(schur_index);
  }

  bool is_trivial() const {
    const ClassFunction one = ClassFunction::constant(seed().group(), seed().conductor(), 1);
    return orbit.size() == 1 && seed() == one;
  }
};

inline RationalRep rational_rep_of(const ClassFunction& seed, std::string name, std::size_t schur_index = 1) {
  if (inner_product(seed, seed) != 1)
    throw InputError("rational_rep_of: seed character of " + name + " is reducible");
  if (schur_index == 0) throw InputError("Schur index must be positive");
  RationalRep R;
  R.name = std::move(name);
  R.schur_index = schur_index;
  R.dim_complex = static_cast<std::size_t>(seed.degree());
  const int p = seed.conductor();
  for (int k = 1; k < p; ++k) {
    ClassFunction c = seed.galois(k);
    if (std::find(R.orbit.begin(), R.orbit.end(), c) == R.orbit.end()) R.orbit.push_back(std::move(c));
  }
  return R;
}

/// True when two rational representations have the same orbit.
inline bool same_rational_rep(const RationalRep& a, const RationalRep& b) {
  return std::find(b.orbit.begin(), b.orbit.end(), a.seed()) != b.orbit.end();
}

/// Irreducible complex characters of one of the supported families, each with
/// a symbolic name.
class CharacterTable {
 public:
  struct Entry {
    std::string name;
    ClassFunction chi;
  };
  enum class Family { Cyclic2, Dihedral, Product };

  const GroupPtr& group() const noexcept { return G_; }
  int conductor() const noexcept { return p_; }
  Family family() const noexcept { return family_; }
  const std::vector<Entry>& irreducibles() const noexcept { return entries_; }

  const ClassFunction& get(std::string_view name) const {
    for (const auto& e : entries_)
      if (e.name == name) return e.chi;
    throw InputError("no irreducible character named '" + std::string(name) + "'");
  }

  /// Name of an irreducible character, or empty if not in the table.
  std::string name_of(const ClassFunction& chi) const {
    for (const auto& e : entries_)
      if (e.chi == chi) return e.name;
    return {};
  }

  /// Rational irreducibles: Galois orbits, named after the first member met.
  std::vector<RationalRep> rational_irreducibles() const {
    std::vector<RationalRep> out;
    for (const auto& e : entries_) {
      bool seen = false;
      for (const auto& R : out)
        if (std::find(R.orbit.begin(), R.orbit.end(), e.chi) != R.orbit.end()) seen = true;
      if (!seen) out.push_back(rational_rep_of(e.chi, e.name));
    }
    return out;
  }

  // Family data, present when applicable.
  std::optional<Perm> sigma, tau;  // dihedral generators
  std::shared_ptr<const ProductGroup> product;
  std::shared_ptr<const CharacterTable> left, right;

  static CharacterTable cyclic2(GroupPtr G, int conductor) {
    if (G->order() != 2) throw InputError("cyclic2 character table needs a group of order 2");
    CharacterTable T(std::move(G), conductor, Family::Cyclic2);
    std::vector<Cyclotomic> sign;
    for (const auto& g : T.G_->elements()) sign.emplace_back(conductor, Rational(g.is_identity() ? 1 : -1));
    T.entries_.push_back({"trivial", ClassFunction::constant(T.G_, conductor, 1)});
    T.entries_.push_back({"alternating", ClassFunction(T.G_, std::move(sign))});
    return T;
  }

  /// D_p = <sigma, tau> with sigma of order p, tau an involution inverting it.
  /// chi_{V_j}(sigma^h) = w^{jh} + w^{-jh} and chi_{V_j}(tau sigma^h) = 0.
  static CharacterTable dihedral(GroupPtr G, const Perm& sigma, const Perm& tau) {
    const std::size_t p = sigma.order();
    if (!is_odd_prime(static_cast<long long>(p))) throw InputError("dihedral table: sigma must have odd prime order");
    if (tau.order() != 2 || !(tau * sigma * tau == sigma.inverse()))
      throw InputError("dihedral table: tau must be an involution inverting sigma");
    if (G->order() != 2 * p || !G->contains(sigma) || !G->contains(tau))
      throw InputError("dihedral table: group is not <sigma, tau> of order 2p");
    const int ip = static_cast<int>(p);
    CharacterTable T(std::move(G), ip, Family::Dihedral);
    T.sigma = sigma;
    T.tau = tau;
    // rotation exponent of each element, or -1 for reflections
    std::vector<long long> rot(T.G_->order(), -1);
    Perm s = Perm::identity(sigma.degree());
    for (std::size_t h = 0; h < p; ++h, s = s * sigma) rot[T.G_->index_of(s)] = static_cast<long long>(h);
    auto make = [&](auto f) {
      std::vector<Cyclotomic> v;
      for (std::size_t i = 0; i < T.G_->order(); ++i) v.push_back(f(rot[i]));
      return ClassFunction(T.G_, std::move(v));
    };
    T.entries_.push_back({"trivial", ClassFunction::constant(T.G_, ip, 1)});
    T.entries_.push_back({"alternating", make([&](long long h) { return Cyclotomic(ip, Rational(h < 0 ? -1 : 1)); })});
    for (long long j = 1; j <= static_cast<long long>(p - 1) / 2; ++j)
      T.entries_.push_back({"V(" + std::to_string(j) + ")", make([&](long long h) {
                              if (h < 0) return Cyclotomic(ip);
                              return Cyclotomic::root_power(ip, j * h) + Cyclotomic::root_power(ip, -j * h);
                            })});
    return T;
  }

  /// Outer tensor products of the factors' irreducibles, named "tensor(a,b)".
  static CharacterTable product_of(std::shared_ptr<const ProductGroup> P, std::shared_ptr<const CharacterTable> L,
                                   std::shared_ptr<const CharacterTable> R) {
    if (L->conductor() != R->conductor()) throw InputError("product table: factor conductors differ");
    CharacterTable T(P->group(), L->conductor(), Family::Product);
    for (const auto& a : L->irreducibles())
      for (const auto& b : R->irreducibles())
        T.entries_.push_back({"tensor(" + a.name + "," + b.name + ")", tensor(*P, a.chi, b.chi)});
    T.product = std::move(P);
    T.left = std::move(L);
    T.right = std::move(R);
    return T;
  }

 private:
  CharacterTable(GroupPtr G, int p, Family f) : G_(std::move(G)), p_(p), family_(f) {}

  GroupPtr G_;
  int p_;
  Family family_;
  std::vector<Entry> entries_;
};

/// The dihedral group on {1..p} with sigma = (1 2 ... p) and tau: i -> p+2-i.
struct DihedralGroup {
  GroupPtr group;
  Perm sigma, tau;
};

inline DihedralGroup dihedral_group(int p) {
  if (!is_odd_prime(p)) throw InputError("dihedral:p needs an odd prime p, got " + std::to_string(p));
  std::vector<std::size_t> s(p), t(p);
  for (int i = 1; i <= p; ++i) {
    s[i - 1] = static_cast<std::size_t>(i % p + 1);
    t[i - 1] = static_cast<std::size_t>(mod_floor(p + 2 - i - 1, p) + 1);
  }
  DihedralGroup D{nullptr, Perm::from_images(s), Perm::from_images(t)};
  D.group = share(PermGroup::generate(static_cast<std::size_t>(p), {D.sigma, D.tau}));
  return D;
}

/// The rational irreducible W = V(1) + ... + V((p-1)/2) of a dihedral table.
inline RationalRep dihedral_W(const CharacterTable& T) { return rational_rep_of(T.get("V(1)"), "W"); }

/// Galois orbit of V_1 (x) V_j, compared with the closed-form index rule that pairs
/// V_i with V_k for k = j+i-1, reduced by (p-1)/2 when it exceeds (p-1)/2.
struct UOrbitCheck {
  RationalRep rep;
  std::vector<std::pair<long long, long long>> closure_pairs;  // (i, k) found by Galois closure
  std::vector<std::pair<long long, long long>> rule_pairs;     // (i, k) by the closed-form rule
  bool matches_rule = true;
};

namespace detail {

inline long long fold_index(long long k, long long p) {
  k = mod_floor(k, p);
  return std::min(k, p - k);
}

// Index k paired with V_i in U_j by the closed-form rule.
inline long long u_rule_index(long long i, long long j, long long p) {
  const long long half = (p - 1) / 2;
  const long long k = j + i - 1;
  return k <= half ? k : k - half;
}

// Splits "a,b" at the top-level comma.
inline std::pair<std::string, std::string> split_pair(std::string_view s) {
  int depth = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')') --depth;
    if (s[i] == ',' && depth == 0) return {std::string(s.substr(0, i)), std::string(s.substr(i + 1))};
  }
  throw InputError("expected two comma-separated arguments in '" + std::string(s) + "'");
}

inline std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

// "name(arg)" -> arg when the head matches.
inline std::optional<std::string> call_arg(std::string_view s, std::string_view head) {
  if (s.size() < head.size() + 2 || s.substr(0, head.size()) != head || s[head.size()] != '(' || s.back() != ')')
    return std::nullopt;
  return std::string(s.substr(head.size() + 1, s.size() - head.size() - 2));
}

inline long long parse_index(const std::string& s) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(trim(s), &used);
    if (used != trim(s).size()) throw InputError("bad index");
    return v;
  } catch (const std::exception&) {
    throw InputError("expected an integer index, got '" + s + "'");
  }
}

}  // namespace detail

inline UOrbitCheck u_orbit(const CharacterTable& T, long long j) {
  if (T.family() != CharacterTable::Family::Product || T.left->family() != CharacterTable::Family::Dihedral ||
      T.right->family() != CharacterTable::Family::Dihedral)
    throw InputError("U(j) is defined on a product of two dihedral groups");
  const long long p = T.conductor(), half = (p - 1) / 2;
  if (j < 1 || j > half) throw InputError("U(j) needs 1 <= j <= " + std::to_string(half));
  UOrbitCheck out;
  out.rep = rational_rep_of(tensor(*T.product, T.left->get("V(1)"), T.right->get("V(" + std::to_string(j) + ")")),
                            "U(" + std::to_string(j) + ")");
  for (const auto& chi : out.rep.orbit) {
    const std::string nm = T.name_of(chi);
    // nm has the form tensor(V(i),V(k))
    const auto inner = detail::call_arg(nm, "tensor");
    const auto [a, b] = detail::split_pair(*inner);
    out.closure_pairs.emplace_back(detail::parse_index(*detail::call_arg(a, "V")),
                                   detail::parse_index(*detail::call_arg(b, "V")));
  }
  std::sort(out.closure_pairs.begin(), out.closure_pairs.end());
  for (long long i = 1; i <= half; ++i) out.rule_pairs.emplace_back(i, detail::u_rule_index(i, j, p));
  std::sort(out.rule_pairs.begin(), out.rule_pairs.end());
  out.matches_rule = out.closure_pairs == out.rule_pairs;
  return out;
}

/// Resolves a symbolic character name to an irreducible complex character:
/// trivial, alternating, V(j), W, W1, W2, U(j), tensor(a,b).
inline ClassFunction resolve_character(const CharacterTable& T, std::string_view spec) {
  const std::string s = detail::trim(spec);
  using F = CharacterTable::Family;
  if (T.family() == F::Product) {
    if (s == "trivial") return T.get("tensor(trivial,trivial)");
    if (s == "alternating") return T.get("tensor(alternating,alternating)");
    if (s == "W1") return tensor(*T.product, resolve_character(*T.left, "W"), T.right->get("trivial"));
    if (s == "W2") return tensor(*T.product, T.left->get("trivial"), resolve_character(*T.right, "W"));
    if (auto a = detail::call_arg(s, "U")) return u_orbit(T, detail::parse_index(*a)).rep.seed();
    if (auto a = detail::call_arg(s, "tensor")) {
      const auto [l, r] = detail::split_pair(*a);
      return tensor(*T.product, resolve_character(*T.left, l), resolve_character(*T.right, r));
    }
    throw InputError("unknown character '" + s + "' on a product group");
  }
  if (s == "W") return T.family() == F::Dihedral ? T.get("V(1)") : T.get("alternating");
  if (auto a = detail::call_arg(s, "V")) {
    if (T.family() != F::Dihedral) throw InputError("V(j) is only defined for dihedral groups");
    return T.get("V(" + std::to_string(detail::parse_index(*a)) + ")");
  }
  return T.get(s);
}

/// The rational representation spanned by the Galois orbit of a named character.
inline RationalRep resolve_rep(const CharacterTable& T, std::string_view spec) {
  return rational_rep_of(resolve_character(T, spec), detail::trim(spec));
}

struct Constituent {
  RationalRep rep;
  std::size_t multiplicity = 0;  // dim V^H / m
};

/// rho_H = sum over rational irreducibles of (dim V^H / m) times their character,
/// checked value-wise on every element.
inline std::vector<Constituent> decompose_perm_character(const CharacterTable& T, const PermGroup& H) {
  const ClassFunction rho = perm_character(T.group(), H, T.conductor());
  std::vector<Constituent> out;
  ClassFunction sum = ClassFunction::constant(T.group(), T.conductor(), 0);
  for (auto& R : T.rational_irreducibles()) {
    const std::size_t dim = fixed_space_dim(R.seed(), H);
    if (dim % R.schur_index != 0)
      throw VerificationError("Schur index " + std::to_string(R.schur_index) + " does not divide dim " + R.name + "^H");
    const std::size_t mult = dim / R.schur_index;
    if (mult == 0) continue;
    sum += R.character() * Rational(mult);
    out.push_back({std::move(R), mult});
  }
  if (auto bad = rho.first_difference(sum))
    throw VerificationError("permutation character decomposition fails at " +
                            T.group()->elements()[*bad].to_string());
  return out;
}

}  // namespace ptcalc
