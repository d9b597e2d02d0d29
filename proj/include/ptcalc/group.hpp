#pragma once

// Finite permutation groups with a fully materialized, sorted element list,
// plus the coset machinery built on it.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ptcalc/error.hpp"
#include "ptcalc/perm.hpp"

namespace ptcalc {

class PermGroup {
 public:
  static constexpr std::size_t kDefaultOrderCap = 100000;

  PermGroup() : PermGroup(trivial(0)) {}

  /// Closure of `gens` inside S_degree by breadth-first right multiplication.
  static PermGroup generate(std::size_t degree, std::vector<Perm> gens,
                            std::size_t order_cap = kDefaultOrderCap) {
    for (const auto& g : gens)
      if (g.degree() != degree)
        throw InputError("generator " + g.to_string() + " has degree " +
                         std::to_string(g.degree()) + ", expected " + std::to_string(degree));
    PermGroup G;
    G.degree_ = degree;
    G.gens_ = std::move(gens);
    std::unordered_map<Perm, std::size_t, PermHash> seen;
    std::vector<Perm> elems{Perm::identity(degree)};
    seen.emplace(elems.front(), 0);
    for (std::size_t k = 0; k < elems.size(); ++k) {
      for (const auto& g : G.gens_) {
        Perm y = elems[k] * g;
        if (seen.contains(y)) continue;
        if (elems.size() >= order_cap)
          throw CapExceeded("group order exceeds cap " + std::to_string(order_cap) +
                                " (enumerated " + std::to_string(elems.size()) + " elements)",
                            elems.size());
        seen.emplace(y, elems.size());
        elems.push_back(std::move(y));
      }
    }
    G.adopt(std::move(elems));
    return G;
  }

  static PermGroup trivial(std::size_t degree) {
    PermGroup G(Tag{});
    G.degree_ = degree;
    G.adopt({Perm::identity(degree)});
    return G;
  }

  /// Subgroup from an element list that must already be closed under products.
  /// Generators are chosen greedily in sorted element order.
  static PermGroup from_elements(std::size_t degree, std::vector<Perm> elems) {
    PermGroup G(Tag{});
    G.degree_ = degree;
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    G.adopt(elems);
    if (!G.contains(Perm::identity(degree))) throw InputError("element list lacks the identity");
    for (const auto& a : G.elems_)
      for (const auto& b : G.elems_)
        if (!G.contains(a * b)) throw InputError("element list is not closed under products");
    PermGroup span = trivial(degree);
    for (const auto& e : G.elems_) {
      if (span.contains(e)) continue;
      G.gens_.push_back(e);
      span = generate(degree, G.gens_);
    }
    return G;
  }

  std::size_t degree() const noexcept { return degree_; }
  std::size_t order() const noexcept { return elems_.size(); }
  const std::vector<Perm>& generators() const noexcept { return gens_; }
  const std::vector<Perm>& elements() const noexcept { return elems_; }
  const Perm& identity() const noexcept { return elems_.front(); }

  bool contains(const Perm& g) const { return index_.contains(g); }

  std::optional<std::size_t> find(const Perm& g) const {
    auto it = index_.find(g);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t index_of(const Perm& g) const {
    auto it = index_.find(g);
    if (it == index_.end()) throw InputError("element " + g.to_string() + " not in group");
    return it->second;
  }

  /// Index of the inverse of elements()[i].
  std::size_t inverse_index(std::size_t i) const { return inverse_.at(i); }

  bool is_subgroup_of(const PermGroup& G) const {
    if (G.degree_ != degree_) return false;
    return std::all_of(elems_.begin(), elems_.end(), [&](const Perm& e) { return G.contains(e); });
  }

  bool is_abelian() const {
    for (const auto& a : gens_)
      for (const auto& b : gens_)
        if (!(a * b == b * a)) return false;
    return true;
  }

  bool is_cyclic() const {
    return std::any_of(elems_.begin(), elems_.end(),
                       [&](const Perm& e) { return e.order() == elems_.size(); });
  }

  /// Same element set (generators may differ).
  friend bool operator==(const PermGroup& a, const PermGroup& b) {
    return a.degree_ == b.degree_ && a.elems_ == b.elems_;
  }

  std::string to_string() const {
    std::string out = "<";
    for (std::size_t i = 0; i < gens_.size(); ++i) {
      if (i) out += ", ";
      out += gens_[i].to_string();
    }
    return out + "> (order " + std::to_string(order()) + ")";
  }

 private:
  struct Tag {};
  explicit PermGroup(Tag) {}

  void adopt(std::vector<Perm> elems) {
    std::sort(elems.begin(), elems.end());
    elems_ = std::move(elems);
    index_.clear();
    index_.reserve(elems_.size());
    for (std::size_t i = 0; i < elems_.size(); ++i) index_.emplace(elems_[i], i);
    inverse_.assign(elems_.size(), 0);
    for (std::size_t i = 0; i < elems_.size(); ++i) {
      auto it = index_.find(elems_[i].inverse());
      inverse_[i] = it == index_.end() ? static_cast<std::size_t>(-1) : it->second;
    }
  }

  std::size_t degree_ = 0;
  std::vector<Perm> gens_;
  std::vector<Perm> elems_;
  std::unordered_map<Perm, std::size_t, PermHash> index_;
  std::vector<std::size_t> inverse_;
};

using GroupPtr = std::shared_ptr<const PermGroup>;

inline GroupPtr share(PermGroup g) { return std::make_shared<const PermGroup>(std::move(g)); }

inline void require_subgroup(const PermGroup& G, const PermGroup& H, const std::string& context) {
  if (!H.is_subgroup_of(G))
    throw InputError(context + ": " + H.to_string() + " is not a subgroup of " + G.to_string());
}

/// U^g = g^-1 U g.
inline PermGroup conjugate(const PermGroup& U, const Perm& g) {
  const Perm gi = g.inverse();
  std::vector<Perm> gens;
  for (const auto& u : U.generators()) gens.push_back(gi * u * g);
  return PermGroup::generate(U.degree(), std::move(gens));
}

inline bool is_normal(const PermGroup& G, const PermGroup& U) {
  for (const auto& g : G.generators())
    for (const auto& u : U.generators())
      if (!U.contains(g.inverse() * u * g)) return false;
  return true;
}

inline bool are_conjugate(const PermGroup& G, const PermGroup& U, const PermGroup& V) {
  if (U.order() != V.order()) return false;
  for (const auto& g : G.elements()) {
    const Perm gi = g.inverse();
    bool ok = true;
    for (const auto& u : U.generators())
      if (!V.contains(gi * u * g)) {
        ok = false;
        break;
      }
    if (ok) return true;
  }
  return false;
}

inline PermGroup intersection(const PermGroup& A, const PermGroup& B) {
  std::vector<Perm> elems;
  for (const auto& a : A.elements())
    if (B.contains(a)) elems.push_back(a);
  return PermGroup::from_elements(A.degree(), std::move(elems));
}

/// Largest normal subgroup of G inside U: the intersection of all conjugates.
inline PermGroup core(const PermGroup& G, const PermGroup& U) {
  require_subgroup(G, U, "core");
  std::vector<Perm> keep;
  for (const auto& u : U.elements()) {
    bool in_all = true;
    for (const auto& g : G.elements())
      if (!U.contains(g * u * g.inverse())) {
        in_all = false;
        break;
      }
    if (in_all) keep.push_back(u);
  }
  return PermGroup::from_elements(G.degree(), std::move(keep));
}

/// Conjugacy classes as lists of element indices, ordered by smallest member.
inline std::vector<std::vector<std::size_t>> conjugacy_classes(const PermGroup& G) {
  std::vector<int> cls(G.order(), -1);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t i = 0; i < G.order(); ++i) {
    if (cls[i] >= 0) continue;
    const int id = static_cast<int>(out.size());
    std::vector<std::size_t> members{i};
    cls[i] = id;
    for (std::size_t k = 0; k < members.size(); ++k) {
      for (const auto& g : G.generators()) {
        const std::size_t j = G.index_of(g.inverse() * G.elements()[members[k]] * g);
        if (cls[j] < 0) {
          cls[j] = id;
          members.push_back(j);
        }
      }
    }
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Cosets

struct Coset {
  Perm rep;                  // smallest element
  std::vector<Perm> elements;  // sorted
};

/// coset_of[k] is the index of the right coset Hg containing G.elements()[k];
/// cosets are numbered by smallest element.
struct CosetTable {
  std::vector<Coset> cosets;
  std::vector<std::size_t> coset_of;
};

inline CosetTable right_coset_table(const PermGroup& G, const PermGroup& H) {
  require_subgroup(G, H, "right_cosets");
  CosetTable t;
  t.coset_of.assign(G.order(), static_cast<std::size_t>(-1));
  for (std::size_t k = 0; k < G.order(); ++k) {
    if (t.coset_of[k] != static_cast<std::size_t>(-1)) continue;
    const Perm& g = G.elements()[k];
    Coset c{g, {}};
    for (const auto& h : H.elements()) {
      Perm x = h * g;
      t.coset_of[G.index_of(x)] = t.cosets.size();
      c.elements.push_back(std::move(x));
    }
    std::sort(c.elements.begin(), c.elements.end());
    t.cosets.push_back(std::move(c));
  }
  return t;
}

inline CosetTable left_coset_table(const PermGroup& G, const PermGroup& H) {
  require_subgroup(G, H, "left_cosets");
  CosetTable t;
  t.coset_of.assign(G.order(), static_cast<std::size_t>(-1));
  for (std::size_t k = 0; k < G.order(); ++k) {
    if (t.coset_of[k] != static_cast<std::size_t>(-1)) continue;
    const Perm& g = G.elements()[k];
    Coset c{g, {}};
    for (const auto& h : H.elements()) {
      Perm x = g * h;
      t.coset_of[G.index_of(x)] = t.cosets.size();
      c.elements.push_back(std::move(x));
    }
    std::sort(c.elements.begin(), c.elements.end());
    t.cosets.push_back(std::move(c));
  }
  return t;
}

inline std::vector<Coset> right_cosets(const PermGroup& G, const PermGroup& H) {
  return right_coset_table(G, H).cosets;
}

inline std::size_t index(const PermGroup& G, const PermGroup& H) {
  require_subgroup(G, H, "index");
  return G.order() / H.order();
}

/// Number of double cosets H g K.
inline std::size_t double_coset_count(const PermGroup& G, const PermGroup& H, const PermGroup& K) {
  require_subgroup(G, H, "double_coset_count");
  require_subgroup(G, K, "double_coset_count");
  std::vector<bool> done(G.order(), false);
  std::size_t count = 0;
  for (std::size_t k = 0; k < G.order(); ++k) {
    if (done[k]) continue;
    ++count;
    const Perm& g = G.elements()[k];
    for (const auto& h : H.elements()) {
      const Perm hg = h * g;
      for (const auto& x : K.elements()) done[G.index_of(hg * x)] = true;
    }
  }
  return count;
}

/// Double cosets H g_i1 H with representatives g_ij that are simultaneously
/// right- and left-coset representatives inside each double coset.
struct DoubleCosetData {
  std::vector<Perm> reps;                     // g_i1; reps[0] is the identity
  std::vector<std::vector<Perm>> right_reps;  // g_ij, right_reps[i][0] == reps[i]
  std::vector<std::size_t> sizes;             // n_i, right cosets of H in H g_i1 H
  std::vector<std::size_t> double_coset_of;   // by element index of G

  std::size_t count() const noexcept { return reps.size(); }
};

namespace detail {

// Kuhn's augmenting-path matching on a bipartite graph given as adjacency
// lists from left vertices; returns match_of_right (or -1).
inline std::vector<int> bipartite_matching(const std::vector<std::vector<std::size_t>>& adj,
                                           std::size_t right_count,
                                           const std::vector<int>& preset) {
  std::vector<int> match_right(right_count, -1);
  std::vector<bool> fixed_left(adj.size(), false);
  for (std::size_t l = 0; l < preset.size(); ++l)
    if (preset[l] >= 0) {
      match_right[static_cast<std::size_t>(preset[l])] = static_cast<int>(l);
      fixed_left[l] = true;
    }
  std::vector<char> visited;
  std::function<bool(std::size_t)> augment = [&](std::size_t l) -> bool {
    for (std::size_t r : adj[l]) {
      if (visited[r]) continue;
      visited[r] = 1;
      const int cur = match_right[r];
      if (cur >= 0 && fixed_left[static_cast<std::size_t>(cur)]) continue;
      if (cur < 0 || augment(static_cast<std::size_t>(cur))) {
        match_right[r] = static_cast<int>(l);
        return true;
      }
    }
    return false;
  };
  for (std::size_t l = 0; l < adj.size(); ++l) {
    if (fixed_left[l]) continue;
    visited.assign(right_count, 0);
    if (!augment(l)) return {};
  }
  return match_right;
}

}  // namespace detail

inline DoubleCosetData double_cosets(const PermGroup& G, const PermGroup& H) {
  require_subgroup(G, H, "double_cosets");
  const CosetTable right = right_coset_table(G, H);
  const CosetTable left = left_coset_table(G, H);
  DoubleCosetData out;
  out.double_coset_of.assign(G.order(), static_cast<std::size_t>(-1));

  for (std::size_t k = 0; k < G.order(); ++k) {
    if (out.double_coset_of[k] != static_cast<std::size_t>(-1)) continue;
    const std::size_t id = out.reps.size();
    const Perm& g = G.elements()[k];
    std::vector<std::size_t> members;
    for (const auto& h : H.elements()) {
      const Perm hg = h * g;
      for (const auto& h2 : H.elements()) {
        const std::size_t j = G.index_of(hg * h2);
        if (out.double_coset_of[j] == static_cast<std::size_t>(-1)) {
          out.double_coset_of[j] = id;
          members.push_back(j);
        }
      }
    }
    std::sort(members.begin(), members.end());

    // Right cosets (left vertices) and left cosets (right vertices) inside the
    // double coset; an edge carries the smallest common element.
    std::vector<std::size_t> rc, lc;
    for (std::size_t m : members) {
      rc.push_back(right.coset_of[m]);
      lc.push_back(left.coset_of[m]);
    }
    std::vector<std::size_t> rids(rc), lids(lc);
    std::sort(rids.begin(), rids.end());
    rids.erase(std::unique(rids.begin(), rids.end()), rids.end());
    std::sort(lids.begin(), lids.end());
    lids.erase(std::unique(lids.begin(), lids.end()), lids.end());
    if (rids.size() != lids.size())
      throw VerificationError("double coset has unequal numbers of left and right cosets");
    auto pos = [](const std::vector<std::size_t>& v, std::size_t x) {
      return static_cast<std::size_t>(std::lower_bound(v.begin(), v.end(), x) - v.begin());
    };
    const std::size_t n = rids.size();
    std::vector<std::vector<std::size_t>> adj(n);
    std::vector<std::vector<std::size_t>> witness(n, std::vector<std::size_t>(n, static_cast<std::size_t>(-1)));
    for (std::size_t t = 0; t < members.size(); ++t) {
      const std::size_t a = pos(rids, rc[t]), b = pos(lids, lc[t]);
      if (witness[a][b] == static_cast<std::size_t>(-1)) {
        witness[a][b] = members[t];  // members sorted, so first hit is smallest
        adj[a].push_back(b);
      }
    }
    for (auto& row : adj) std::sort(row.begin(), row.end());

    // g_i1 (the smallest element) represents both of its own cosets.
    std::vector<int> preset(n, -1);
    const std::size_t r0 = pos(rids, right.coset_of[k]);
    const std::size_t l0 = pos(lids, left.coset_of[k]);
    preset[r0] = static_cast<int>(l0);
    const std::vector<int> match = detail::bipartite_matching(adj, n, preset);
    if (match.empty())
      throw VerificationError("no simultaneous left/right coset representatives for double coset of " +
                              g.to_string());
    std::vector<std::size_t> chosen(n);
    for (std::size_t b = 0; b < n; ++b) chosen[static_cast<std::size_t>(match[b])] = witness[static_cast<std::size_t>(match[b])][b];

    std::vector<Perm> reps{g};
    std::vector<std::size_t> rest;
    for (std::size_t a = 0; a < n; ++a)
      if (a != r0) rest.push_back(chosen[a]);
    std::sort(rest.begin(), rest.end());
    for (std::size_t e : rest) reps.push_back(G.elements()[e]);

    out.reps.push_back(g);
    out.sizes.push_back(n);
    out.right_reps.push_back(std::move(reps));
  }

  // Verify: the representatives split each double coset into right cosets and
  // into left cosets, and the double cosets partition G.
  std::size_t total = 0;
  for (std::size_t i = 0; i < out.count(); ++i) {
    std::set<std::size_t> rs, ls;
    for (const auto& x : out.right_reps[i]) {
      const std::size_t e = G.index_of(x);
      if (out.double_coset_of[e] != i) throw VerificationError("representative outside its double coset");
      rs.insert(right.coset_of[e]);
      ls.insert(left.coset_of[e]);
    }
    if (rs.size() != out.sizes[i] || ls.size() != out.sizes[i])
      throw VerificationError("representatives are not simultaneous left/right coset representatives");
    total += out.sizes[i] * H.order();
  }
  if (total != G.order()) throw VerificationError("double cosets do not partition the group");
  if (!out.reps.front().is_identity()) throw VerificationError("first double coset representative is not the identity");
  return out;
}

// ---------------------------------------------------------------------------
// Actions on points

inline std::vector<std::size_t> orbit(const PermGroup& G, std::size_t point) {
  if (point < 1 || point > G.degree())
    throw InputError("point " + std::to_string(point) + " out of range 1.." + std::to_string(G.degree()));
  std::vector<std::size_t> orb{point};
  std::vector<bool> seen(G.degree() + 1, false);
  seen[point] = true;
  for (std::size_t k = 0; k < orb.size(); ++k)
    for (const auto& g : G.generators()) {
      const std::size_t y = g(orb[k]);
      if (!seen[y]) {
        seen[y] = true;
        orb.push_back(y);
      }
    }
  std::sort(orb.begin(), orb.end());
  return orb;
}

inline PermGroup stabilizer(const PermGroup& G, std::size_t point) {
  if (point < 1 || point > G.degree())
    throw InputError("point " + std::to_string(point) + " out of range 1.." + std::to_string(G.degree()));
  std::vector<Perm> keep;
  for (const auto& g : G.elements())
    if (g(point) == point) keep.push_back(g);
  return PermGroup::from_elements(G.degree(), std::move(keep));
}

/// {g in G : g(S) = S} for a set S of points.
inline PermGroup setwise_stabilizer(const PermGroup& G, const std::vector<std::size_t>& points) {
  std::set<std::size_t> s(points.begin(), points.end());
  for (auto x : s)
    if (x < 1 || x > G.degree()) throw InputError("point out of range in setwise_stabilizer");
  std::vector<Perm> keep;
  for (const auto& g : G.elements()) {
    bool ok = true;
    for (auto x : s)
      if (!s.contains(g(x))) {
        ok = false;
        break;
      }
    if (ok) keep.push_back(g);
  }
  return PermGroup::from_elements(G.degree(), std::move(keep));
}

/// Transitivity on an explicit point set (all of {1..n} when empty).
inline bool is_transitive(const PermGroup& G, std::vector<std::size_t> points = {}) {
  if (points.empty()) {
    points.resize(G.degree());
    std::iota(points.begin(), points.end(), std::size_t{1});
  }
  if (points.empty()) return true;
  std::sort(points.begin(), points.end());
  return orbit(G, points.front()) == points;
}

using BlockSystem = std::vector<std::vector<std::size_t>>;

/// True if the partition is preserved by every generator.
inline bool is_block_system(const PermGroup& G, const BlockSystem& blocks) {
  std::vector<std::size_t> block_of(G.degree() + 1, static_cast<std::size_t>(-1));
  std::size_t covered = 0;
  for (std::size_t b = 0; b < blocks.size(); ++b)
    for (auto x : blocks[b]) {
      if (x < 1 || x > G.degree() || block_of[x] != static_cast<std::size_t>(-1)) return false;
      block_of[x] = b;
      ++covered;
    }
  if (covered != G.degree()) return false;
  for (const auto& g : G.generators())
    for (const auto& blk : blocks) {
      const std::size_t target = block_of[g(blk.front())];
      for (auto x : blk)
        if (block_of[g(x)] != target) return false;
    }
  return true;
}

namespace detail {

// Finest block system of a transitive group in which 1 and b share a block.
inline BlockSystem block_closure(const PermGroup& G, std::size_t b) {
  const std::size_t n = G.degree();
  std::vector<std::size_t> parent(n + 1);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<std::pair<std::size_t, std::size_t>> queue{{1, b}};
  parent[find(b)] = find(1);
  for (std::size_t k = 0; k < queue.size(); ++k) {
    const auto [x, y] = queue[k];
    for (const auto& g : G.generators()) {
      const std::size_t gx = find(g(x)), gy = find(g(y));
      if (gx != gy) {
        parent[gy] = gx;
        queue.emplace_back(g(x), g(y));
      }
    }
  }
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t x = 1; x <= n; ++x) groups[find(x)].push_back(x);
  BlockSystem out;
  for (auto& [root, blk] : groups) out.push_back(std::move(blk));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

/// Minimal nontrivial block systems of a transitive group on {1..n}; empty
/// when the action is primitive.
inline std::vector<BlockSystem> imprimitivity_blocks(const PermGroup& G) {
  if (!is_transitive(G)) throw InputError("imprimitivity_blocks: group is not transitive");
  std::vector<BlockSystem> systems;
  for (std::size_t b = 2; b <= G.degree(); ++b) {
    BlockSystem s = detail::block_closure(G, b);
    if (s.size() == 1) continue;
    if (std::find(systems.begin(), systems.end(), s) == systems.end()) systems.push_back(std::move(s));
  }
  // Keep systems whose blocks contain no smaller block of another system.
  auto block_of_one = [](const BlockSystem& s) -> const std::vector<std::size_t>& { return s.front(); };
  std::vector<BlockSystem> minimal;
  for (const auto& s : systems) {
    const auto& mine = block_of_one(s);
    bool is_min = true;
    for (const auto& t : systems) {
      const auto& other = block_of_one(t);
      if (other.size() < mine.size() &&
          std::includes(mine.begin(), mine.end(), other.begin(), other.end())) {
        is_min = false;
        break;
      }
    }
    if (is_min) minimal.push_back(s);
  }
  std::sort(minimal.begin(), minimal.end(),
            [](const BlockSystem& a, const BlockSystem& b) {
              return a.front().size() != b.front().size() ? a.front().size() < b.front().size() : a < b;
            });
  return minimal;
}

}  // namespace ptcalc
