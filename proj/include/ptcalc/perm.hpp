#pragma once

// Permutations of {1..n}. Products compose left to right: (a * b)(x) = b(a(x)),
// so groups act on points from the right.

#include <algorithm>
#include <charconv>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "ptcalc/error.hpp"

namespace ptcalc {

class Perm {
 public:
  Perm() = default;

  static Perm identity(std::size_t degree) {
    Perm p;
    p.img_.resize(degree);
    std::iota(p.img_.begin(), p.img_.end(), std::uint16_t{0});
    return p;
  }

  /// From 1-based images: images[i-1] is the image of point i.
  static Perm from_images(const std::vector<std::size_t>& images) {
    if (images.size() > 0xFFFF) throw InputError("permutation degree too large");
    Perm p;
    p.img_.resize(images.size());
    std::vector<bool> seen(images.size(), false);
    for (std::size_t i = 0; i < images.size(); ++i) {
      const std::size_t v = images[i];
      if (v < 1 || v > images.size() || seen[v - 1])
        throw InputError("image array is not a bijection of {1.." +
                         std::to_string(images.size()) + "}");
      seen[v - 1] = true;
      p.img_[i] = static_cast<std::uint16_t>(v - 1);
    }
    return p;
  }

  /// Parses cycle notation such as "(1 4)(2 5)" or "()" into S_degree.
  /// Commas are accepted as separators inside a cycle.
  static Perm from_cycles(std::size_t degree, std::string_view text) {
    Perm p = identity(degree);
    std::size_t pos = 0;
    auto skip_ws = [&] {
      while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    };
    skip_ws();
    if (pos == text.size()) throw InputError("empty permutation string");
    std::vector<bool> used(degree, false);
    while (pos < text.size()) {
      if (text[pos] != '(') throw InputError("malformed cycle notation: " + std::string(text));
      ++pos;
      std::vector<std::size_t> cycle;
      for (;;) {
        skip_ws();
        if (pos < text.size() && text[pos] == ',') {
          ++pos;
          continue;
        }
        if (pos < text.size() && text[pos] == ')') {
          ++pos;
          break;
        }
        std::size_t value = 0;
        auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), value);
        if (ec != std::errc() || ptr == text.data() + pos)
          throw InputError("malformed cycle notation: " + std::string(text));
        pos = static_cast<std::size_t>(ptr - text.data());
        if (value < 1 || value > degree)
          throw InputError("point " + std::to_string(value) + " outside 1.." +
                           std::to_string(degree) + " in " + std::string(text));
        if (used[value - 1])
          throw InputError("point " + std::to_string(value) + " repeated in " + std::string(text));
        used[value - 1] = true;
        cycle.push_back(value - 1);
      }
      for (std::size_t k = 0; k < cycle.size(); ++k)
        p.img_[cycle[k]] = static_cast<std::uint16_t>(cycle[(k + 1) % cycle.size()]);
      skip_ws();
    }
    return p;
  }

  std::size_t degree() const noexcept { return img_.size(); }

  /// Image of a 1-based point.
  std::size_t operator()(std::size_t point) const { return img_.at(point - 1) + 1u; }

  /// 1-based image array.
  std::vector<std::size_t> images() const {
    std::vector<std::size_t> out(img_.size());
    for (std::size_t i = 0; i < img_.size(); ++i) out[i] = img_[i] + 1u;
    return out;
  }

  friend Perm operator*(const Perm& a, const Perm& b) {
    if (a.degree() != b.degree())
      throw InputError("degree mismatch in permutation product");
    Perm r;
    r.img_.resize(a.img_.size());
    for (std::size_t i = 0; i < a.img_.size(); ++i) r.img_[i] = b.img_[a.img_[i]];
    return r;
  }

  Perm inverse() const {
    Perm r;
    r.img_.resize(img_.size());
    for (std::size_t i = 0; i < img_.size(); ++i) r.img_[img_[i]] = static_cast<std::uint16_t>(i);
    return r;
  }

  Perm pow(long long e) const {
    Perm base = e < 0 ? inverse() : *this;
    unsigned long long n = e < 0 ? static_cast<unsigned long long>(-e) : static_cast<unsigned long long>(e);
    Perm acc = identity(degree());
    while (n) {
      if (n & 1u) acc = acc * base;
      base = base * base;
      n >>= 1u;
    }
    return acc;
  }

  bool is_identity() const {
    for (std::size_t i = 0; i < img_.size(); ++i)
      if (img_[i] != i) return false;
    return true;
  }

  std::size_t order() const {
    std::size_t ord = 1;
    std::vector<bool> seen(img_.size(), false);
    for (std::size_t i = 0; i < img_.size(); ++i) {
      if (seen[i]) continue;
      std::size_t len = 0;
      for (std::size_t j = i; !seen[j]; j = img_[j]) {
        seen[j] = true;
        ++len;
      }
      ord = std::lcm(ord, len);
    }
    return ord;
  }

  /// Disjoint cycles of length >= 2, each starting at its smallest point.
  std::vector<std::vector<std::size_t>> cycles() const {
    std::vector<std::vector<std::size_t>> out;
    std::vector<bool> seen(img_.size(), false);
    for (std::size_t i = 0; i < img_.size(); ++i) {
      if (seen[i] || img_[i] == i) continue;
      std::vector<std::size_t> cyc;
      for (std::size_t j = i; !seen[j]; j = img_[j]) {
        seen[j] = true;
        cyc.push_back(j + 1);
      }
      out.push_back(std::move(cyc));
    }
    return out;
  }

  std::string to_string() const {
    std::string out;
    for (const auto& cyc : cycles()) {
      out += '(';
      for (std::size_t k = 0; k < cyc.size(); ++k) {
        if (k) out += ' ';
        out += std::to_string(cyc[k]);
      }
      out += ')';
    }
    return out.empty() ? "()" : out;
  }

  friend bool operator==(const Perm&, const Perm&) = default;
  friend auto operator<=>(const Perm& a, const Perm& b) { return a.img_ <=> b.img_; }

  std::size_t hash() const noexcept {
    std::size_t h = img_.size();
    for (auto v : img_) h = h * 1000003u ^ v;
    return h;
  }

 private:
  std::vector<std::uint16_t> img_;
};

struct PermHash {
  std::size_t operator()(const Perm& p) const noexcept { return p.hash(); }
};

/// Accepts cycle notation "(1 2)(3 4)" or an image array "[2,1,4,3]".
inline Perm parse_perm(std::string_view text, std::size_t degree) {
  std::size_t a = text.find_first_not_of(" \t");
  if (a == std::string_view::npos) throw InputError("empty permutation string");
  text = text.substr(a, text.find_last_not_of(" \t") - a + 1);
  if (text.front() != '[') return Perm::from_cycles(degree, text);
  if (text.back() != ']') throw InputError("malformed image array: " + std::string(text));
  std::vector<std::size_t> images;
  std::size_t pos = 1;
  while (pos < text.size() - 1) {
    while (pos < text.size() - 1 && (text[pos] == ' ' || text[pos] == ',')) ++pos;
    if (pos >= text.size() - 1) break;
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size() - 1, v);
    if (ec != std::errc()) throw InputError("malformed image array: " + std::string(text));
    images.push_back(v);
    pos = static_cast<std::size_t>(ptr - text.data());
  }
  if (images.size() != degree)
    throw InputError("image array has degree " + std::to_string(images.size()) + ", expected " +
                     std::to_string(degree));
  return Perm::from_images(images);
}

}  // namespace ptcalc

template <>
struct std::hash<ptcalc::Perm> {
  std::size_t operator()(const ptcalc::Perm& p) const noexcept { return p.hash(); }
};
