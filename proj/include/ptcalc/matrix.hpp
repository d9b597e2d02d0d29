#pragma once

// Square integer matrices with row/column labels, used for correspondences on
// coset spaces and on the grid.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ptcalc/exact.hpp"

namespace ptcalc {

class IntMatrix {
 public:
  IntMatrix() = default;
  explicit IntMatrix(std::size_t n, std::vector<std::string> labels = {}) : n_(n), a_(n * n), labels_(std::move(labels)) {
    if (labels_.empty())
      for (std::size_t i = 0; i < n; ++i) labels_.push_back(std::to_string(i + 1));
    if (labels_.size() != n) throw InputError("matrix label count does not match its size");
  }

  static IntMatrix identity(std::size_t n, std::vector<std::string> labels = {}) {
    IntMatrix m(n, std::move(labels));
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  /// All-ones matrix.
  static IntMatrix ones(std::size_t n) {
    IntMatrix m(n);
    for (auto& x : m.a_) x = 1;
    return m;
  }

  std::size_t size() const noexcept { return n_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  void set_labels(std::vector<std::string> labels) {
    if (labels.size() != n_) throw InputError("matrix label count does not match its size");
    labels_ = std::move(labels);
  }

  Integer& operator()(std::size_t r, std::size_t c) { return a_[r * n_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return a_[r * n_ + c]; }

  IntMatrix& operator+=(const IntMatrix& o) {
    require_same_size(o);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
  }
  IntMatrix& operator-=(const IntMatrix& o) {
    require_same_size(o);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
  }
  IntMatrix& operator*=(const Integer& s) {
    for (auto& x : a_) x *= s;
    return *this;
  }
  friend IntMatrix operator+(IntMatrix a, const IntMatrix& b) { return a += b; }
  friend IntMatrix operator-(IntMatrix a, const IntMatrix& b) { return a -= b; }
  friend IntMatrix operator*(IntMatrix a, const Integer& s) { return a *= s; }
  friend IntMatrix operator*(const Integer& s, IntMatrix a) { return a *= s; }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    a.require_same_size(b);
    IntMatrix out(a.n_, a.labels_);
    for (std::size_t i = 0; i < a.n_; ++i)
      for (std::size_t k = 0; k < a.n_; ++k) {
        const Integer& x = a(i, k);
        if (x == 0) continue;
        for (std::size_t j = 0; j < a.n_; ++j)
          if (b(k, j) != 0) out(i, j) += x * b(k, j);
      }
    return out;
  }

  /// Entry-wise equality; labels are not compared.
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) { return a.n_ == b.n_ && a.a_ == b.a_; }

  IntMatrix transpose() const {
    IntMatrix t(n_, labels_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  /// Simultaneous row and column permutation: out(perm[i], perm[j]) = this(i, j).
  IntMatrix permuted(const std::vector<std::size_t>& perm, std::vector<std::string> labels = {}) const {
    if (perm.size() != n_) throw InputError("permutation size does not match the matrix");
    IntMatrix out(n_, labels.empty() ? labels_ : std::move(labels));
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) out(perm[i], perm[j]) = (*this)(i, j);
    return out;
  }

  Integer row_sum(std::size_t r) const {
    Integer s = 0;
    for (std::size_t c = 0; c < n_; ++c) s += (*this)(r, c);
    return s;
  }
  Integer col_sum(std::size_t c) const {
    Integer s = 0;
    for (std::size_t r = 0; r < n_; ++r) s += (*this)(r, c);
    return s;
  }

  bool is_nonnegative() const {
    for (const auto& x : a_)
      if (x < 0) return false;
    return true;
  }
  bool is_symmetric() const { return *this == transpose(); }
  bool has_zero_diagonal() const {
    for (std::size_t i = 0; i < n_; ++i)
      if ((*this)(i, i) != 0) return false;
    return true;
  }
  bool is_zero() const {
    for (const auto& x : a_)
      if (x != 0) return false;
    return true;
  }

  /// Common value of all row and column sums, if there is one.
  std::optional<Integer> constant_line_sum() const {
    if (n_ == 0) return Integer(0);
    const Integer r = row_sum(0);
    for (std::size_t i = 0; i < n_; ++i)
      if (row_sum(i) != r || col_sum(i) != r) return std::nullopt;
    return r;
  }

  /// Row-major decimal strings.
  std::vector<std::vector<std::string>> rows() const {
    std::vector<std::vector<std::string>> out(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) out[i].push_back((*this)(i, j).str());
    return out;
  }

 private:
  void require_same_size(const IntMatrix& o) const {
    if (o.n_ != n_) throw InputError("matrix size mismatch");
  }

  std::size_t n_ = 0;
  std::vector<Integer> a_;
  std::vector<std::string> labels_;
};

/// A correspondence matrix: M(x', x) is the coefficient of x' in D(x).
using CorrMatrix = IntMatrix;

}  // namespace ptcalc
