#pragma once

// Exact arithmetic in Z[√2] and its fraction field Q(√2).

#include <gmpxx.h>

#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>

#include "h4/errors.hpp"

namespace h4 {

using Int = mpz_class;

inline int sign(const Int& x) { return sgn(x); }

inline bool is_odd(const Int& x) { return mpz_odd_p(x.get_mpz_t()) != 0; }

inline Int gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Int lcm(const Int& a, const Int& b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

inline std::optional<Int> isqrt_exact(const Int& x) {
  if (sgn(x) < 0) return std::nullopt;
  if (!mpz_perfect_square_p(x.get_mpz_t())) return std::nullopt;
  Int r;
  mpz_sqrt(r.get_mpz_t(), x.get_mpz_t());
  return r;
}

/// Element a + b√2 of Z[√2].
class ZRt2 {
 public:
  ZRt2() = default;
  ZRt2(long a, long b = 0) : a_(a), b_(b) {}
  ZRt2(Int a) : a_(std::move(a)) {}
  ZRt2(Int a, Int b) : a_(std::move(a)), b_(std::move(b)) {}

  static ZRt2 sqrt2() { return ZRt2(0, 1); }

  const Int& a() const { return a_; }
  const Int& b() const { return b_; }

  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
  bool is_rational() const { return sgn(b_) == 0; }

  ZRt2 conj() const { return ZRt2(a_, -b_); }
  /// a² − 2b², an ordinary integer.
  Int norm() const { return a_ * a_ - 2 * b_ * b_; }
  /// gcd of the two coefficients.
  Int content() const { return gcd(a_, b_); }

  /// x·√2
  ZRt2 times_sqrt2() const { return ZRt2(Int(2 * b_), a_); }

  ZRt2 operator-() const { return ZRt2(Int(-a_), Int(-b_)); }
  ZRt2& operator+=(const ZRt2& o) { a_ += o.a_; b_ += o.b_; return *this; }
  ZRt2& operator-=(const ZRt2& o) { a_ -= o.a_; b_ -= o.b_; return *this; }
  ZRt2& operator*=(const ZRt2& o) {
    Int a = a_ * o.a_ + 2 * b_ * o.b_;
    Int b = a_ * o.b_ + b_ * o.a_;
    a_ = std::move(a);
    b_ = std::move(b);
    return *this;
  }
  ZRt2& operator*=(const Int& k) { a_ *= k; b_ *= k; return *this; }

  friend ZRt2 operator+(ZRt2 x, const ZRt2& y) { return x += y; }
  friend ZRt2 operator-(ZRt2 x, const ZRt2& y) { return x -= y; }
  friend ZRt2 operator*(ZRt2 x, const ZRt2& y) { return x *= y; }
  friend ZRt2 operator*(ZRt2 x, const Int& k) { return x *= k; }
  friend ZRt2 operator*(const Int& k, ZRt2 x) { return x *= k; }

  friend bool operator==(const ZRt2& x, const ZRt2& y) { return x.a_ == y.a_ && x.b_ == y.b_; }
  friend bool operator!=(const ZRt2& x, const ZRt2& y) { return !(x == y); }

  /// Exact quotient by an integer, if it divides both coefficients.
  std::optional<ZRt2> div_exact(const Int& k) const {
    if (sgn(k) == 0) return std::nullopt;
    if (!mpz_divisible_p(a_.get_mpz_t(), k.get_mpz_t()) ||
        !mpz_divisible_p(b_.get_mpz_t(), k.get_mpz_t()))
      return std::nullopt;
    return ZRt2(Int(a_ / k), Int(b_ / k));
  }

  /// Exact quotient in Z[√2], if it exists.
  std::optional<ZRt2> div_exact(const ZRt2& y) const {
    if (y.is_zero()) return std::nullopt;
    return (*this * y.conj()).div_exact(y.norm());
  }

  std::string str() const;

 private:
  Int a_;
  Int b_;
};

/// Exact sign of a + b√2 (the real embedding with √2 > 0).
inline int sign(const ZRt2& x) {
  const int sa = sgn(x.a());
  const int sb = sgn(x.b());
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // Opposite signs: compare a² with 2b².
  const int c = cmp(Int(x.a() * x.a()), Int(2 * x.b() * x.b()));
  return c > 0 ? sa : sb;
}

inline int compare(const ZRt2& x, const ZRt2& y) { return sign(x - y); }
inline bool operator<(const ZRt2& x, const ZRt2& y) { return compare(x, y) < 0; }
inline bool operator>(const ZRt2& x, const ZRt2& y) { return compare(x, y) > 0; }
inline bool operator<=(const ZRt2& x, const ZRt2& y) { return compare(x, y) <= 0; }
inline bool operator>=(const ZRt2& x, const ZRt2& y) { return compare(x, y) >= 0; }

inline ZRt2 abs(const ZRt2& x) { return sign(x) < 0 ? -x : x; }

/// Square root inside Z[√2] (non-negative real value), if x is a perfect square.
/// Z[√2] is integrally closed, so this also decides squareness in Q(√2).
inline std::optional<ZRt2> sqrt_exact(const ZRt2& x) {
  if (x.is_zero()) return ZRt2();
  if (sign(x) < 0) return std::nullopt;
  const auto s = isqrt_exact(x.norm());
  if (!s) return std::nullopt;
  // (p + q√2)² = x  ⇒  p² + 2q² = a, p² − 2q² = ±s.
  for (int branch : {1, -1}) {
    Int two_p2 = x.a() + branch * *s;
    Int four_q2 = x.a() - branch * *s;
    if (sgn(two_p2) < 0 || sgn(four_q2) < 0) continue;
    if (!mpz_divisible_ui_p(two_p2.get_mpz_t(), 2) || !mpz_divisible_ui_p(four_q2.get_mpz_t(), 4))
      continue;
    auto p = isqrt_exact(Int(two_p2 / 2));
    auto q = isqrt_exact(Int(four_q2 / 4));
    if (!p || !q) continue;
    // Fix the relative sign from 2pq = b.
    Int qq = sgn(x.b()) < 0 ? Int(-*q) : *q;
    if (2 * *p * qq != x.b()) continue;
    ZRt2 r(*p, qq);
    return sign(r) < 0 ? -r : r;
  }
  return std::nullopt;
}

inline std::string ZRt2::str() const {
  std::ostringstream os;
  auto coeff = [](const Int& b) {
    if (b == 1) return std::string();
    if (b == -1) return std::string("-");
    return b.get_str();
  };
  if (sgn(b_) == 0) {
    os << a_.get_str();
  } else if (sgn(a_) == 0) {
    os << coeff(b_) << "√2";
  } else {
    os << a_.get_str() << (sgn(b_) > 0 ? "+" : "-");
    Int ab = ::abs(b_);
    os << (ab == 1 ? std::string() : ab.get_str()) << "√2";
  }
  return os.str();
}

inline std::ostream& operator<<(std::ostream& os, const ZRt2& x) { return os << x.str(); }

/// Element (a + b√2)/d of Q(√2), kept with d > 0 and gcd(a, b, d) = 1.
class QRt2 {
 public:
  QRt2() : den_(1) {}
  QRt2(long a) : num_(a), den_(1) {}
  QRt2(Int a) : num_(std::move(a)), den_(1) {}
  QRt2(ZRt2 num) : num_(std::move(num)), den_(1) {}
  QRt2(ZRt2 num, Int den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

  /// x / y for x, y in Z[√2], y ≠ 0.
  static QRt2 ratio(const ZRt2& x, const ZRt2& y) {
    if (y.is_zero()) throw Error(ErrorKind::PoleAtValue, "division by zero in Q(√2)");
    return QRt2(x * y.conj(), y.norm());
  }

  const ZRt2& num() const { return num_; }
  const Int& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_integral() const { return den_ == 1; }
  /// Whether the value lies in √2·Q.
  bool in_sqrt2_q() const { return sgn(num_.a()) == 0; }

  QRt2 conj() const { return QRt2(num_.conj(), den_); }
  QRt2 inverse() const {
    if (is_zero()) throw Error(ErrorKind::PoleAtValue, "inverse of zero in Q(√2)");
    return QRt2(num_.conj() * den_, num_.norm());
  }

  QRt2 operator-() const { QRt2 r = *this; r.num_ = -r.num_; return r; }
  friend QRt2 operator+(const QRt2& x, const QRt2& y) {
    return QRt2(x.num_ * y.den_ + y.num_ * x.den_, x.den_ * y.den_);
  }
  friend QRt2 operator-(const QRt2& x, const QRt2& y) {
    return QRt2(x.num_ * y.den_ - y.num_ * x.den_, x.den_ * y.den_);
  }
  friend QRt2 operator*(const QRt2& x, const QRt2& y) {
    return QRt2(x.num_ * y.num_, x.den_ * y.den_);
  }
  friend QRt2 operator/(const QRt2& x, const QRt2& y) { return x * y.inverse(); }
  QRt2& operator+=(const QRt2& o) { return *this = *this + o; }
  QRt2& operator-=(const QRt2& o) { return *this = *this - o; }
  QRt2& operator*=(const QRt2& o) { return *this = *this * o; }
  QRt2& operator/=(const QRt2& o) { return *this = *this / o; }

  friend bool operator==(const QRt2& x, const QRt2& y) { return x.num_ == y.num_ && x.den_ == y.den_; }
  friend bool operator!=(const QRt2& x, const QRt2& y) { return !(x == y); }

  std::string str() const {
    if (den_ == 1) return num_.str();
    const bool compound = sgn(num_.a()) != 0 && sgn(num_.b()) != 0;
    return (compound ? "(" + num_.str() + ")" : num_.str()) + "/" + den_.get_str();
  }

 private:
  void normalize() {
    if (sgn(den_) == 0) throw Error(ErrorKind::PoleAtValue, "zero denominator in Q(√2)");
    if (sgn(den_) < 0) {
      den_ = -den_;
      num_ = -num_;
    }
    Int g = gcd(num_.content(), den_);
    if (g != 1) {
      num_ = *num_.div_exact(g);
      den_ /= g;
    }
  }

  ZRt2 num_;
  Int den_;
};

inline int sign(const QRt2& x) { return sign(x.num()); }
inline int compare(const QRt2& x, const QRt2& y) { return sign(x - y); }
inline bool operator<(const QRt2& x, const QRt2& y) { return compare(x, y) < 0; }
inline bool operator>(const QRt2& x, const QRt2& y) { return compare(x, y) > 0; }
inline bool operator<=(const QRt2& x, const QRt2& y) { return compare(x, y) <= 0; }
inline bool operator>=(const QRt2& x, const QRt2& y) { return compare(x, y) >= 0; }
inline QRt2 abs(const QRt2& x) { return sign(x) < 0 ? -x : x; }

inline std::ostream& operator<<(std::ostream& os, const QRt2& x) { return os << x.str(); }

inline const QRt2& sqrt2_q() {
  static const QRt2 r(ZRt2::sqrt2());
  return r;
}

}  // namespace h4
