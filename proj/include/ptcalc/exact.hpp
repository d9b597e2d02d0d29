#pragma once

// Exact scalars: arbitrary-precision integers and rationals, and elements of
// the cyclotomic field Q(zeta_p) for an odd prime p in the power basis
// 1, zeta, ..., zeta^(p-2).

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ptcalc/error.hpp"

namespace ptcalc {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline bool is_odd_prime(long long n) { return n > 2 && is_prime(n); }

inline long long mod_floor(long long a, long long m) {
  long long r = a % m;
  return r < 0 ? r + m : r;
}

inline bool is_integral(const Rational& r) {
  return boost::multiprecision::denominator(r) == 1;
}

/// Numerator of an integral rational; throws VerificationError otherwise.
inline Integer to_integer(const Rational& r, const std::string& what) {
  if (!is_integral(r))
    throw VerificationError(what + " is not an integer: " + r.str());
  return boost::multiprecision::numerator(r);
}

/// Decimal string "n" or "n/d" in lowest terms.
inline std::string to_string(const Rational& r) { return r.str(); }
inline std::string to_string(const Integer& i) { return i.str(); }

inline Integer gcd(Integer a, Integer b) {
  a = abs(a);
  b = abs(b);
  while (b != 0) {
    Integer t = a % b;
    a = std::move(b);
    b = std::move(t);
  }
  return a;
}

class Cyclotomic {
 public:
  /// Zero of Q(zeta_p).
  explicit Cyclotomic(int conductor) : p_(checked_conductor(conductor)), c_(p_ - 1) {}

  /// Rational scalar embedded in Q(zeta_p).
  Cyclotomic(int conductor, Rational scalar) : Cyclotomic(conductor) {
    c_[0] = std::move(scalar);
  }

  /// zeta^j, reduced to the power basis.
  static Cyclotomic root_power(int conductor, long long j) {
    Cyclotomic out(conductor);
    out.add_monomial(mod_floor(j, out.p_), Rational(1));
    return out;
  }

  int conductor() const noexcept { return p_; }
  std::span<const Rational> coords() const noexcept { return c_; }

  bool is_zero() const {
    for (const auto& x : c_)
      if (x != 0) return false;
    return true;
  }

  bool is_rational() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
      if (c_[i] != 0) return false;
    return true;
  }

  Rational rational_value() const {
    if (!is_rational())
      throw VerificationError("cyclotomic value is not rational: " + to_string());
    return c_[0];
  }

  Cyclotomic& operator+=(const Cyclotomic& o) {
    require_same_field(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  Cyclotomic& operator-=(const Cyclotomic& o) {
    require_same_field(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  Cyclotomic& operator*=(const Rational& s) {
    for (auto& x : c_) x *= s;
    return *this;
  }
  Cyclotomic& operator*=(const Cyclotomic& o) { return *this = *this * o; }

  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  friend Cyclotomic operator*(Cyclotomic a, const Rational& s) { return a *= s; }
  friend Cyclotomic operator-(Cyclotomic a) { return a *= Rational(-1); }

  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
    a.require_same_field(b);
    const int p = a.p_;
    if (b.is_rational()) return a * b.c_[0];
    if (a.is_rational()) return b * a.c_[0];
    // Convolution over exponents mod p, then reduce the zeta^(p-1) term.
    std::vector<Rational> acc(static_cast<std::size_t>(p));
    for (int i = 0; i < p - 1; ++i) {
      if (a.c_[i] == 0) continue;
      for (int j = 0; j < p - 1; ++j) {
        if (b.c_[j] == 0) continue;
        acc[static_cast<std::size_t>((i + j) % p)] += a.c_[i] * b.c_[j];
      }
    }
    return from_exponent_sums(p, std::move(acc));
  }

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    return a.p_ == b.p_ && a.c_ == b.c_;
  }

  /// Image under the field automorphism zeta -> zeta^k.
  Cyclotomic galois(long long k) const {
    const long long kk = mod_floor(k, p_);
    if (kk == 0)
      throw InputError("galois_apply: exponent " + std::to_string(k) +
                       " is not a unit mod " + std::to_string(p_));
    std::vector<Rational> acc(static_cast<std::size_t>(p_));
    for (int e = 0; e < p_ - 1; ++e)
      if (c_[e] != 0) acc[static_cast<std::size_t>((e * kk) % p_)] += c_[e];
    return from_exponent_sums(p_, std::move(acc));
  }

  /// Trace from Q(zeta_p) to Q: Tr(1) = p-1 and Tr(zeta^e) = -1 for e != 0.
  Rational trace_full() const {
    Rational t = c_[0] * (p_ - 1);
    for (std::size_t e = 1; e < c_.size(); ++e) t -= c_[e];
    return t;
  }

  /// Trace from the real subfield Q(zeta + zeta^-1) to Q.
  Rational trace_real() const {
    if (!(galois(p_ - 1) == *this))
      throw InputError("trace_real: value " + to_string() +
                       " is not invariant under complex conjugation");
    return trace_full() / 2;
  }

  std::string to_string() const {
    std::string out;
    for (std::size_t e = 0; e < c_.size(); ++e) {
      if (c_[e] == 0) continue;
      std::string coeff = c_[e].str();
      if (!out.empty()) out += coeff.front() == '-' ? " - " : " + ";
      else if (coeff.front() == '-') out += "-";
      if (coeff.front() == '-') coeff.erase(0, 1);
      if (e == 0) {
        out += coeff;
      } else {
        if (coeff != "1") out += coeff + "*";
        out += "z";
        if (e > 1) out += "^" + std::to_string(e);
      }
    }
    return out.empty() ? "0" : out;
  }

 private:
  static int checked_conductor(int p) {
    if (!is_odd_prime(p))
      throw InputError("cyclotomic conductor must be an odd prime, got " + std::to_string(p));
    return p;
  }

  void require_same_field(const Cyclotomic& o) const {
    if (o.p_ != p_)
      throw InputError("cyclotomic conductor mismatch: " + std::to_string(p_) + " vs " +
                       std::to_string(o.p_));
  }

  void add_monomial(long long e, const Rational& coeff) {
    if (e == p_ - 1) {
      for (auto& x : c_) x -= coeff;
    } else {
      c_[static_cast<std::size_t>(e)] += coeff;
    }
  }

  // acc[e] is the coefficient of zeta^e for e in [0, p); applies
  // zeta^(p-1) = -(1 + zeta + ... + zeta^(p-2)).
  static Cyclotomic from_exponent_sums(int p, std::vector<Rational> acc) {
    Cyclotomic out(p);
    const Rational& top = acc[static_cast<std::size_t>(p - 1)];
    for (int e = 0; e < p - 1; ++e) out.c_[e] = acc[static_cast<std::size_t>(e)] - top;
    return out;
  }

  int p_;
  std::vector<Rational> c_;
};

inline Cyclotomic cyc_root_power(int p, long long j) { return Cyclotomic::root_power(p, j); }
inline Cyclotomic cyc_mul(const Cyclotomic& a, const Cyclotomic& b) { return a * b; }
inline Cyclotomic galois_apply(const Cyclotomic& a, long long k) { return a.galois(k); }
inline Rational trace_full(const Cyclotomic& a) { return a.trace_full(); }
inline Rational trace_real(const Cyclotomic& a) { return a.trace_real(); }

}  // namespace ptcalc
