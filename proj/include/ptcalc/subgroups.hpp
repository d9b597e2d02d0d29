#pragma once

// Subgroup enumeration inside a fixed finite group, working on element-index
// sets over a precomputed multiplication table.

#include <algorithm>
#include <cstdint>
#include <unordered_set>
#include <vector>

#include "ptcalc/group.hpp"

namespace ptcalc {

/// Subset of a parent group's elements, indexed like PermGroup::elements().
using ElementSet = std::vector<bool>;

class CayleyTable {
 public:
  explicit CayleyTable(const PermGroup& G) : G_(&G), n_(G.order()), mul_(n_ * n_), inv_(n_) {
    for (std::size_t a = 0; a < n_; ++a) {
      const Perm& x = G.elements()[a];
      inv_[a] = static_cast<std::uint32_t>(G.index_of(x.inverse()));
      for (std::size_t b = 0; b < n_; ++b)
        mul_[a * n_ + b] = static_cast<std::uint32_t>(G.index_of(x * G.elements()[b]));
    }
  }

  const PermGroup& group() const noexcept { return *G_; }
  std::size_t order() const noexcept { return n_; }
  std::size_t mul(std::size_t a, std::size_t b) const noexcept { return mul_[a * n_ + b]; }
  std::size_t inv(std::size_t a) const noexcept { return inv_[a]; }

  /// Subgroup generated by the given element indices.
  ElementSet closure(const std::vector<std::size_t>& gens) const {
    ElementSet in(n_, false);
    std::vector<std::size_t> list{0};  // index 0 is the identity
    in[0] = true;
    for (std::size_t k = 0; k < list.size(); ++k)
      for (std::size_t g : gens) {
        const std::size_t y = mul(list[k], g);
        if (!in[y]) {
          in[y] = true;
          list.push_back(y);
        }
      }
    return in;
  }

  ElementSet conjugate(const ElementSet& U, std::size_t g) const {
    ElementSet out(n_, false);
    const std::size_t gi = inv(g);
    for (std::size_t i = 0; i < n_; ++i)
      if (U[i]) out[mul(mul(gi, i), g)] = true;
    return out;
  }

  ElementSet to_set(const PermGroup& U) const {
    ElementSet s(n_, false);
    for (const auto& u : U.elements()) s[G_->index_of(u)] = true;
    return s;
  }

  PermGroup to_group(const ElementSet& s) const {
    std::vector<Perm> elems;
    for (std::size_t i = 0; i < n_; ++i)
      if (s[i]) elems.push_back(G_->elements()[i]);
    std::vector<Perm> gens;
    ElementSet span = closure({});
    for (std::size_t i = 0; i < n_; ++i) {
      if (!s[i] || span[i]) continue;
      gens.push_back(G_->elements()[i]);
      std::vector<std::size_t> idx;
      for (const auto& x : gens) idx.push_back(G_->index_of(x));
      span = closure(idx);
    }
    PermGroup out = PermGroup::generate(G_->degree(), std::move(gens));
    return out;
  }

 private:
  const PermGroup* G_;
  std::size_t n_;
  std::vector<std::uint32_t> mul_;
  std::vector<std::uint32_t> inv_;
};

inline std::size_t set_size(const ElementSet& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), true));
}

inline bool set_includes(const ElementSet& big, const ElementSet& small) {
  for (std::size_t i = 0; i < big.size(); ++i)
    if (small[i] && !big[i]) return false;
  return true;
}

namespace detail {

// Deterministic order: by size, then by the sorted index list.
inline bool set_less(const ElementSet& a, const ElementSet& b) {
  const std::size_t sa = set_size(a), sb = set_size(b);
  if (sa != sb) return sa < sb;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i];
  return false;
}

inline std::vector<ElementSet> sorted_sets(const std::unordered_set<ElementSet>& s) {
  std::vector<ElementSet> out(s.begin(), s.end());
  std::sort(out.begin(), out.end(), set_less);
  return out;
}

// Breadth-first closure of the lattice above `start` under one-element joins
// with the candidate elements; each found subgroup keeps a generator list.
inline std::unordered_set<ElementSet> joins_to_fixpoint(const CayleyTable& T,
                                                        std::vector<std::pair<ElementSet, std::vector<std::size_t>>> start,
                                                        const std::vector<std::size_t>& candidates) {
  std::unordered_set<ElementSet> found;
  for (const auto& [s, g] : start) found.insert(s);
  auto frontier = std::move(start);
  while (!frontier.empty()) {
    std::vector<std::pair<ElementSet, std::vector<std::size_t>>> next;
    for (const auto& [K, gens] : frontier)
      for (std::size_t c : candidates) {
        if (K[c]) continue;
        std::vector<std::size_t> g2 = gens;
        g2.push_back(c);
        ElementSet J = T.closure(g2);
        if (found.insert(J).second) next.emplace_back(std::move(J), std::move(g2));
      }
    frontier = std::move(next);
  }
  return found;
}

}  // namespace detail

/// Every subgroup of G as an element set: joins of cyclic subgroups to a fixpoint.
inline std::vector<ElementSet> all_subgroups(const CayleyTable& T) {
  const std::size_t n = T.order();
  std::unordered_set<ElementSet> seen;
  std::vector<std::pair<ElementSet, std::vector<std::size_t>>> start;
  std::vector<std::size_t> cyclic_gens;
  for (std::size_t g = 0; g < n; ++g) {
    ElementSet c = T.closure({g});
    if (seen.insert(c).second) {
      cyclic_gens.push_back(g);
      start.emplace_back(std::move(c), std::vector<std::size_t>{g});
    }
  }
  return detail::sorted_sets(detail::joins_to_fixpoint(T, std::move(start), cyclic_gens));
}

/// All N with H strictly inside N inside G, by repeated one-element joins.
inline std::vector<PermGroup> proper_supergroups(const PermGroup& G, const PermGroup& H) {
  require_subgroup(G, H, "proper_supergroups");
  CayleyTable T(G);
  const ElementSet h = T.to_set(H);
  std::vector<std::size_t> hgens, candidates;
  for (const auto& x : H.generators()) hgens.push_back(G.index_of(x));
  for (std::size_t g = 0; g < T.order(); ++g)
    if (!h[g]) candidates.push_back(g);
  auto found = detail::joins_to_fixpoint(T, {{h, hgens}}, candidates);
  found.erase(h);
  std::vector<PermGroup> out;
  for (const auto& s : detail::sorted_sets(found)) out.push_back(T.to_group(s));
  return out;
}

/// Conjugacy classes of nontrivial cyclic subgroups. Classes are ordered by
/// subgroup order, then by the smallest element generating a member; members
/// are ordered the same way.
inline std::vector<std::vector<PermGroup>> cyclic_subgroup_classes(const PermGroup& G) {
  CayleyTable T(G);
  const std::size_t n = T.order();
  // Smallest generator of each distinct cyclic subgroup.
  std::vector<std::pair<ElementSet, std::size_t>> subs;
  std::unordered_set<ElementSet> seen;
  for (std::size_t g = 1; g < n; ++g) {
    ElementSet c = T.closure({g});
    if (seen.insert(c).second) subs.emplace_back(std::move(c), g);
  }
  std::vector<int> cls(subs.size(), -1);
  std::vector<std::vector<std::size_t>> classes;
  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (cls[i] >= 0) continue;
    const int id = static_cast<int>(classes.size());
    classes.push_back({});
    std::unordered_set<ElementSet> conj;
    for (std::size_t g = 0; g < n; ++g) conj.insert(T.conjugate(subs[i].first, g));
    for (std::size_t j = i; j < subs.size(); ++j)
      if (cls[j] < 0 && conj.contains(subs[j].first)) {
        cls[j] = id;
        classes.back().push_back(j);
      }
  }
  std::sort(classes.begin(), classes.end(), [&](const auto& a, const auto& b) {
    const std::size_t oa = set_size(subs[a.front()].first), ob = set_size(subs[b.front()].first);
    if (oa != ob) return oa < ob;
    return subs[a.front()].second < subs[b.front()].second;
  });
  std::vector<std::vector<PermGroup>> out;
  for (const auto& c : classes) {
    std::vector<PermGroup> members;
    for (std::size_t j : c) members.push_back(PermGroup::generate(G.degree(), {G.elements()[subs[j].second]}));
    out.push_back(std::move(members));
  }
  return out;
}

}  // namespace ptcalc
