#pragma once

// Presentations shared by the unit tests and the acceptance binary.

#include <memory>

#include "ptcalc/constructions.hpp"

namespace build {

using namespace ptcalc;

struct Dihedral {
  DihedralGroup D;
  std::shared_ptr<const CharacterTable> table;
  PermGroup H;  // <tau>
};

inline Dihedral dihedral(int p) {
  Dihedral d{dihedral_group(p), nullptr, {}};
  d.table = std::make_shared<const CharacterTable>(CharacterTable::dihedral(d.D.group, d.D.sigma, d.D.tau));
  d.H = PermGroup::generate(d.D.group->degree(), {d.D.tau});
  return d;
}

/// (D_p, <tau>, {W}) with s branch points of type <tau>.
inline PTPresentation dihedral_presentation(const Dihedral& d, long long s) {
  auto sig = GeometricSignature::make(*d.D.group, 0, {{"C1", d.H, s}});
  return PTPresentation(d.D.group, d.H, {dihedral_W(*d.table)}, std::move(sig));
}

/// (Z/2, 1, {alternating}) with s branch points: a hyperelliptic double cover.
inline PTPresentation double_cover(long long s) {
  static const GroupPtr Z = share(PermGroup::generate(2, {Perm::from_cycles(2, "(1 2)")}));
  static const auto T = std::make_shared<const CharacterTable>(CharacterTable::cyclic2(Z, 3));
  auto sig = GeometricSignature::make(*Z, 0, {{"C1", *Z, s}});
  return PTPresentation(Z, PermGroup::trivial(2), {rational_rep_of(T->get("alternating"), "W")}, std::move(sig));
}

inline ProductPresentation dihedral_product(const Dihedral& d, long long s1, long long s2) {
  return fiber_product(dihedral_presentation(d, s1), dihedral_presentation(d, s2));
}

inline ProductPresentation klein_product(long long s1, long long s2) {
  return fiber_product(double_cover(s1), double_cover(s2));
}

}  // namespace build
