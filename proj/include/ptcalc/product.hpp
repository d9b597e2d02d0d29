#pragma once

// Direct products G1 x G2, either realized on the disjoint union of the
// factors' points or recognized inside a given group as two commuting
// subgroups with trivial intersection.

#include <cstddef>
#include <utility>
#include <vector>

#include "ptcalc/group.hpp"

namespace ptcalc {

class ProductGroup {
 public:
  /// G1 x G2 acting on {1..n1} and {n1+1..n1+n2}.
  static ProductGroup external(GroupPtr left, GroupPtr right) {
    ProductGroup P;
    P.left_ = std::move(left);
    P.right_ = std::move(right);
    P.external_ = true;
    const std::size_t n1 = P.left_->degree(), n2 = P.right_->degree();
    std::vector<Perm> gens;
    for (const auto& a : P.left_->generators()) gens.push_back(P.join(a, Perm::identity(n2)));
    for (const auto& b : P.right_->generators()) gens.push_back(P.join(Perm::identity(n1), b));
    P.group_ = share(PermGroup::generate(n1 + n2, std::move(gens)));
    P.index_coordinates();
    return P;
  }

  /// Recognizes `whole` as the internal direct product of two of its subgroups.
  static ProductGroup internal(GroupPtr whole, PermGroup left, PermGroup right) {
    require_subgroup(*whole, left, "internal product");
    require_subgroup(*whole, right, "internal product");
    for (const auto& a : left.generators())
      for (const auto& b : right.generators())
        if (!(a * b == b * a)) throw InputError("internal product: factors do not commute");
    if (intersection(left, right).order() != 1)
      throw InputError("internal product: factors intersect nontrivially");
    if (left.order() * right.order() != whole->order())
      throw InputError("internal product: factor orders do not multiply to the group order");
    ProductGroup P;
    P.group_ = std::move(whole);
    P.left_ = share(std::move(left));
    P.right_ = share(std::move(right));
    P.index_coordinates();
    return P;
  }

  const GroupPtr& group() const noexcept { return group_; }
  const GroupPtr& left() const noexcept { return left_; }
  const GroupPtr& right() const noexcept { return right_; }
  bool is_external() const noexcept { return external_; }

  /// Factor element indices of an element of the product.
  std::pair<std::size_t, std::size_t> coordinates(std::size_t element) const { return coords_.at(element); }
  std::pair<std::size_t, std::size_t> coordinates(const Perm& g) const {
    return coords_.at(group_->index_of(g));
  }

  std::size_t combine_index(std::size_t i, std::size_t j) const { return combine_.at(i * right_->order() + j); }
  const Perm& combine(std::size_t i, std::size_t j) const { return group_->elements()[combine_index(i, j)]; }
  const Perm& combine(const Perm& a, const Perm& b) const {
    return combine(left_->index_of(a), right_->index_of(b));
  }

  /// U1 x U2 as a subgroup of the product.
  PermGroup product(const PermGroup& U1, const PermGroup& U2) const {
    require_subgroup(*left_, U1, "product subgroup");
    require_subgroup(*right_, U2, "product subgroup");
    std::vector<Perm> gens;
    for (const auto& a : U1.generators()) gens.push_back(combine(a, right_->identity()));
    for (const auto& b : U2.generators()) gens.push_back(combine(left_->identity(), b));
    return PermGroup::generate(group_->degree(), std::move(gens));
  }

  PermGroup embed_left(const PermGroup& U) const { return product(U, PermGroup::trivial(right_->degree())); }
  PermGroup embed_right(const PermGroup& U) const { return product(PermGroup::trivial(left_->degree()), U); }

 private:
  ProductGroup() = default;

  Perm join(const Perm& a, const Perm& b) const {
    std::vector<std::size_t> img = a.images();
    const std::size_t n1 = a.degree();
    for (auto x : b.images()) img.push_back(x + n1);
    return Perm::from_images(img);
  }

  void index_coordinates() {
    const std::size_t m = right_->order();
    coords_.assign(group_->order(), {0, 0});
    combine_.assign(left_->order() * m, 0);
    for (std::size_t i = 0; i < left_->order(); ++i)
      for (std::size_t j = 0; j < m; ++j) {
        const Perm g = external_ ? join(left_->elements()[i], right_->elements()[j])
                                 : left_->elements()[i] * right_->elements()[j];
        const std::size_t k = group_->index_of(g);
        coords_[k] = {i, j};
        combine_[i * m + j] = k;
      }
  }

  GroupPtr group_, left_, right_;
  bool external_ = false;
  std::vector<std::pair<std::size_t, std::size_t>> coords_;
  std::vector<std::size_t> combine_;
};

}  // namespace ptcalc
