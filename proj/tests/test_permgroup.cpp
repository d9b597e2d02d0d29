#include <gtest/gtest.h>

#include "oracles.hpp"
#include "ptcalc/product.hpp"
#include "ptcalc/subgroups.hpp"

using namespace ptcalc;

namespace {

PermGroup S4() {
  return PermGroup::generate(4, {Perm::from_cycles(4, "(1 2 3 4)"), Perm::from_cycles(4, "(1 2)")});
}

std::set<Perm> as_set(const PermGroup& U) { return {U.elements().begin(), U.elements().end()}; }

}  // namespace

TEST(Perm, CompositionIsLeftToRight) {
  const Perm a = Perm::from_cycles(3, "(1 2)"), b = Perm::from_cycles(3, "(2 3)");
  // x (ab) = (x a) b: 1 -> 2 -> 3
  EXPECT_EQ((a * b)(1), 3u);
  EXPECT_EQ((a * b).to_string(), "(1 3 2)");
  EXPECT_EQ(a.inverse() * a, Perm::identity(3));
  EXPECT_EQ(Perm::from_cycles(5, "(1 2 3 4 5)").order(), 5u);
  EXPECT_EQ(Perm::from_cycles(5, "(1 2 3 4 5)").pow(-1), Perm::from_cycles(5, "(1 5 4 3 2)"));
}

TEST(Perm, Parsing) {
  EXPECT_EQ(parse_perm("[2,1,4,3]", 4), Perm::from_cycles(4, "(1 2)(3 4)"));
  EXPECT_EQ(parse_perm("()", 3), Perm::identity(3));
  EXPECT_THROW(parse_perm("(1 5)", 4), InputError);
  EXPECT_THROW(parse_perm("(1 2)(2 3)", 4), InputError);
  EXPECT_THROW(Perm::from_images({1, 1}), InputError);
}

TEST(PermGroup, OrdersMatchClosureOracle) {
  for (int p : {3, 5, 7, 11}) {
    const auto D = dihedral_group(p);
    EXPECT_EQ(D.group->order(), static_cast<std::size_t>(2 * p));
    EXPECT_EQ(as_set(*D.group), oracle::closure(p, {D.sigma, D.tau}));
  }
  EXPECT_EQ(S4().order(), 24u);
  EXPECT_THROW(PermGroup::generate(8, {Perm::from_cycles(8, "(1 2 3 4 5 6 7 8)"), Perm::from_cycles(8, "(1 2)")}, 1000),
               CapExceeded);
}

TEST(PermGroup, RightCosetsNumberedBySmallestElement) {
  const PermGroup G = S4();
  const PermGroup H = PermGroup::generate(4, {Perm::from_cycles(4, "(1 2)")});
  const CosetTable t = right_coset_table(G, H);
  ASSERT_EQ(t.cosets.size(), 12u);
  for (std::size_t i = 0; i < t.cosets.size(); ++i) {
    const auto& c = t.cosets[i];
    EXPECT_EQ(std::set<Perm>(c.elements.begin(), c.elements.end()), oracle::right_coset(H, c.rep));
    EXPECT_EQ(c.rep, c.elements.front());
    if (i > 0) EXPECT_LT(t.cosets[i - 1].rep, c.rep);
  }
  for (std::size_t k = 0; k < G.order(); ++k) EXPECT_TRUE(oracle::right_coset(H, G.elements()[k]).contains(t.cosets[t.coset_of[k]].rep));
  EXPECT_EQ(index(G, H), 12u);
}

TEST(PermGroup, DoubleCosetsAgainstOracle) {
  for (int p : {3, 5, 7, 11}) {
    const auto D = dihedral_group(p);
    const PermGroup H = PermGroup::generate(p, {D.tau});
    const DoubleCosetData dc = double_cosets(*D.group, H);
    EXPECT_EQ(dc.count(), static_cast<std::size_t>((p + 1) / 2));
    EXPECT_TRUE(dc.reps.front().is_identity());
    const auto ref = oracle::double_cosets(*D.group, H, H);
    EXPECT_EQ(ref.size(), dc.count());
    for (std::size_t i = 0; i < dc.count(); ++i) {
      const auto set = oracle::double_coset(H, dc.reps[i], H);
      EXPECT_EQ(set.size(), dc.sizes[i] * H.order());
      // right_reps are right coset representatives covering the double coset
      std::set<std::set<Perm>> covered;
      for (const auto& g : dc.right_reps[i]) {
        EXPECT_TRUE(set.contains(g));
        covered.insert(oracle::right_coset(H, g));
      }
      EXPECT_EQ(covered.size(), dc.right_reps[i].size());
      EXPECT_EQ(covered.size() * H.order(), set.size());
    }
  }
}

TEST(PermGroup, DoubleCosetCountMixed) {
  const PermGroup G = S4();
  const PermGroup H = PermGroup::generate(4, {Perm::from_cycles(4, "(1 2)")});
  const PermGroup K = PermGroup::generate(4, {Perm::from_cycles(4, "(1 2 3)")});
  EXPECT_EQ(double_coset_count(G, H, K), oracle::double_cosets(G, H, K).size());
}

TEST(PermGroup, NormalityCoreAndConjugacy) {
  const PermGroup G = S4();
  const PermGroup V = PermGroup::generate(4, {Perm::from_cycles(4, "(1 2)(3 4)"), Perm::from_cycles(4, "(1 3)(2 4)")});
  const PermGroup H = PermGroup::generate(4, {Perm::from_cycles(4, "(1 2)")});
  EXPECT_TRUE(is_normal(G, V));
  EXPECT_FALSE(is_normal(G, H));
  EXPECT_EQ(core(G, H).order(), 1u);
  EXPECT_EQ(core(G, V), V);
  EXPECT_TRUE(are_conjugate(G, H, PermGroup::generate(4, {Perm::from_cycles(4, "(3 4)")})));
  EXPECT_FALSE(are_conjugate(G, H, PermGroup::generate(4, {Perm::from_cycles(4, "(1 2)(3 4)")})));
  std::size_t total = 0;
  for (const auto& cls : conjugacy_classes(G)) {
    total += cls.size();
    EXPECT_EQ(cls.size(), oracle::conjugacy_class(G, G.elements()[cls.front()]).size());
  }
  EXPECT_EQ(total, 24u);
  EXPECT_EQ(conjugacy_classes(G).size(), 5u);
}

TEST(PermGroup, OrbitsStabilizersBlocks) {
  const auto D = dihedral_group(5);
  EXPECT_EQ(orbit(*D.group, 1).size(), 5u);
  EXPECT_EQ(stabilizer(*D.group, 1).order(), 2u);
  EXPECT_TRUE(is_transitive(*D.group));
  // D_5 acting on 5 points is primitive: only the trivial block systems
  for (const auto& B : imprimitivity_blocks(*D.group)) EXPECT_TRUE(B.size() == 1 || B.size() == 5);
  const PermGroup C = PermGroup::generate(4, {Perm::from_cycles(4, "(1 2 3 4)")});
  bool found = false;
  for (const auto& B : imprimitivity_blocks(C)) found = found || (B.size() == 2 && is_block_system(C, B));
  EXPECT_TRUE(found);
}

TEST(Subgroups, EnumerationMatchesOracle) {
  for (int p : {3, 5}) {
    const auto D = dihedral_group(p);
    CayleyTable T(*D.group);
    const auto subs = all_subgroups(T);
    std::set<std::set<Perm>> mine;
    for (const auto& s : subs) mine.insert(as_set(T.to_group(s)));
    EXPECT_EQ(mine, oracle::all_subgroups(*D.group));
    EXPECT_EQ(subs.size(), static_cast<std::size_t>(p + 3));
  }
  const PermGroup G = S4();
  CayleyTable T(G);
  EXPECT_EQ(all_subgroups(T).size(), 30u);
  EXPECT_EQ(all_subgroups(T).size(), oracle::all_subgroups(G).size());
}

TEST(Subgroups, ProperSupergroups) {
  const PermGroup G = S4();
  const PermGroup H = PermGroup::generate(4, {Perm::from_cycles(4, "(1 2)")});
  std::size_t expected = 0;
  for (const auto& U : oracle::all_subgroups(G))
    if (U.size() > 2 && U.contains(Perm::from_cycles(4, "(1 2)"))) ++expected;
  const auto sup = proper_supergroups(G, H);
  EXPECT_EQ(sup.size(), expected);
  for (const auto& U : sup) EXPECT_TRUE(H.is_subgroup_of(U));
}

TEST(Subgroups, CyclicClassesOrderedBySize) {
  const auto D = dihedral_group(7);
  const auto cls = cyclic_subgroup_classes(*D.group);
  ASSERT_EQ(cls.size(), 2u);
  EXPECT_EQ(cls[0].front().order(), 2u);
  EXPECT_EQ(cls[0].size(), 7u);
  EXPECT_EQ(cls[1].front().order(), 7u);
  EXPECT_EQ(cls[1].size(), 1u);
  const auto s4 = cyclic_subgroup_classes(S4());
  ASSERT_EQ(s4.size(), 4u);  // <(12)>, <(12)(34)>, <(123)>, <(1234)>
  for (std::size_t i = 1; i < s4.size(); ++i) EXPECT_LE(s4[i - 1].front().order(), s4[i].front().order());
}

TEST(Products, ExternalAndInternal) {
  const auto D = dihedral_group(3);
  const ProductGroup P = ProductGroup::external(D.group, D.group);
  EXPECT_EQ(P.group()->order(), 36u);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) {
      const auto [a, b] = P.coordinates(P.combine(i, j));
      EXPECT_EQ(a, i);
      EXPECT_EQ(b, j);
    }
  const PermGroup Hsq = P.product(PermGroup::generate(3, {D.tau}), PermGroup::generate(3, {D.tau}));
  EXPECT_EQ(Hsq.order(), 4u);
  const ProductGroup Q = ProductGroup::internal(P.group(), P.embed_left(*D.group), P.embed_right(*D.group));
  EXPECT_EQ(Q.group()->order(), 36u);
  EXPECT_THROW(ProductGroup::internal(P.group(), P.embed_left(*D.group), P.embed_left(*D.group)), InputError);
}
