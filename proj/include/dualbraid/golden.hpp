#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dualbraid {

/// Exact arithmetic in the ring Z[phi], phi = (1+sqrt(5))/2, phi^2 = phi + 1.
///
/// Crystallographic root systems only ever touch the integer part; H3 and H4
/// need the full ring. Component overflow throws instead of wrapping, so a
/// rank decision can never be silently wrong.
class GoldenInt {
public:
  constexpr GoldenInt() = default;
  constexpr GoldenInt(long long units) : a_(units) {}
  constexpr GoldenInt(long long units, long long phis) : a_(units), b_(phis) {}

  long long unit_part() const { return a_; }
  long long phi_part() const { return b_; }

  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool is_rational() const { return b_ == 0; }

  friend bool operator==(const GoldenInt& x, const GoldenInt& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }
  friend bool operator!=(const GoldenInt& x, const GoldenInt& y) { return !(x == y); }

  GoldenInt operator-() const { return {checked_neg(a_), checked_neg(b_)}; }

  friend GoldenInt operator+(const GoldenInt& x, const GoldenInt& y) {
    return {checked_add(x.a_, y.a_), checked_add(x.b_, y.b_)};
  }
  friend GoldenInt operator-(const GoldenInt& x, const GoldenInt& y) {
    return {checked_sub(x.a_, y.a_), checked_sub(x.b_, y.b_)};
  }
  // (a + b phi)(c + d phi) = ac + bd + (ad + bc + bd) phi
  friend GoldenInt operator*(const GoldenInt& x, const GoldenInt& y) {
    long long ac = checked_mul(x.a_, y.a_);
    long long bd = checked_mul(x.b_, y.b_);
    long long ad = checked_mul(x.a_, y.b_);
    long long bc = checked_mul(x.b_, y.a_);
    return {checked_add(ac, bd), checked_add(checked_add(ad, bc), bd)};
  }
  GoldenInt& operator+=(const GoldenInt& y) { return *this = *this + y; }
  GoldenInt& operator-=(const GoldenInt& y) { return *this = *this - y; }
  GoldenInt& operator*=(const GoldenInt& y) { return *this = *this * y; }

  /// Field norm N(a + b phi) = a^2 + ab - b^2; zero only at zero.
  long long norm() const {
    return checked_add(checked_mul(a_, a_), checked_sub(checked_mul(a_, b_), checked_mul(b_, b_)));
  }

  /// Galois conjugate: phi |-> 1 - phi.
  GoldenInt conjugate() const { return {checked_add(a_, b_), checked_neg(b_)}; }

  /// Sign of the real value a + b*(1+sqrt5)/2, computed exactly.
  int sign() const {
    // 2*(a + b phi) = (2a + b) + b*sqrt(5)
    long long u = checked_add(checked_add(a_, a_), b_);
    long long v = b_;
    if (u == 0 && v == 0) return 0;
    if (u >= 0 && v >= 0) return 1;
    if (u <= 0 && v <= 0) return -1;
    __int128 uu = static_cast<__int128>(u) * u;
    __int128 vv5 = static_cast<__int128>(v) * v * 5;
    if (u > 0) return uu > vv5 ? 1 : -1;  // v < 0
    return vv5 > uu ? 1 : -1;             // u < 0, v > 0
  }

  /// Exact division; throws if the quotient is not in Z[phi].
  GoldenInt exact_div(const GoldenInt& d) const {
    if (d.is_zero()) throw std::domain_error("GoldenInt: division by zero");
    if (d.b_ == 0) return {exact_int_div(a_, d.a_), exact_int_div(b_, d.a_)};
    GoldenInt num = *this * d.conjugate();
    long long n = d.norm();
    return {exact_int_div(num.a_, n), exact_int_div(num.b_, n)};
  }

  std::string str() const {
    if (b_ == 0) return std::to_string(a_);
    std::string s;
    if (a_ != 0) s = std::to_string(a_) + (b_ > 0 ? "+" : "");
    if (b_ == 1) s += "phi";
    else if (b_ == -1) s += "-phi";
    else s += std::to_string(b_) + "phi";
    return s;
  }

private:
  static long long checked_add(long long x, long long y) {
    long long r;
    if (__builtin_add_overflow(x, y, &r)) throw std::overflow_error("GoldenInt overflow (+)");
    return r;
  }
  static long long checked_sub(long long x, long long y) {
    long long r;
    if (__builtin_sub_overflow(x, y, &r)) throw std::overflow_error("GoldenInt overflow (-)");
    return r;
  }
  static long long checked_mul(long long x, long long y) {
    long long r;
    if (__builtin_mul_overflow(x, y, &r)) throw std::overflow_error("GoldenInt overflow (*)");
    return r;
  }
  static long long checked_neg(long long x) { return checked_sub(0, x); }
  static long long exact_int_div(long long x, long long d) {
    if (d == 0 || x % d != 0) throw std::domain_error("GoldenInt: inexact division");
    return x / d;
  }

  long long a_ = 0;  // rational part
  long long b_ = 0;  // coefficient of phi
};

/// Strict total order by real value.
inline bool golden_less(const GoldenInt& x, const GoldenInt& y) { return (x - y).sign() < 0; }

}  // namespace dualbraid
