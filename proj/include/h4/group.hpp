#pragma once

// The Hecke group H4, its canonical fractions Q(H4) = √2·Q, and Ford circles.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "h4/matrix.hpp"
#include "h4/surd.hpp"

namespace h4 {

namespace gen {

inline const Mat2 T{ZRt2(1), ZRt2::sqrt2(), ZRt2(0), ZRt2(1)};
inline const Mat2 S{ZRt2(0), ZRt2(-1), ZRt2(1), ZRt2(0)};
inline const Mat2 R{ZRt2(0), ZRt2(1), ZRt2(-1), ZRt2::sqrt2()};
inline const Mat2 A1{ZRt2(1), ZRt2(0), ZRt2::sqrt2(), ZRt2(1)};
inline const Mat2 A2{ZRt2::sqrt2(), ZRt2(1), ZRt2(1), ZRt2::sqrt2()};
inline const Mat2 A3 = T;
// Conjugating involutions; det = −1, so neither lies in H4.
inline const Mat2 H{ZRt2(-1), ZRt2(0), ZRt2(0), ZRt2(1)};
inline const Mat2 J{ZRt2(0), ZRt2(1), ZRt2(1), ZRt2(0)};

}  // namespace gen

/// A_d for a digit d ∈ {1, 2, 3}.
inline const Mat2& digit_matrix(int d) {
  switch (d) {
    case 1: return gen::A1;
    case 2: return gen::A2;
    case 3: return gen::A3;
  }
  throw Error(ErrorKind::ValidationError, "digit must be 1, 2 or 3, got " + std::to_string(d));
}

inline bool is_odd_integer(const ZRt2& x) { return x.is_rational() && is_odd(x.a()); }
inline bool in_sqrt2_z(const ZRt2& x) { return sgn(x.a()) == 0; }

/// det = 1 and one of the two parity forms.
inline bool is_member(const Mat2& m) {
  if (m.det() != ZRt2(1)) return false;
  const bool odd_diag = is_odd_integer(m.t) && is_odd_integer(m.w) && in_sqrt2_z(m.v) && in_sqrt2_z(m.u);
  const bool odd_anti = in_sqrt2_z(m.t) && in_sqrt2_z(m.w) && is_odd_integer(m.v) && is_odd_integer(m.u);
  return odd_diag || odd_anti;
}

enum class Family { OddOverSqrt2, Sqrt2OverOdd };

inline const char* to_string(Family f) {
  return f == Family::OddOverSqrt2 ? "OddOverSqrt2" : "Sqrt2OverOdd";
}

/// p/q ∈ Q(H4) in its unique canonical form: a/(√2c) with a odd, or √2a/c with c odd.
struct H4Fraction {
  ZRt2 p;
  ZRt2 q;
  Family family = Family::Sqrt2OverOdd;

  /// The value √2·m/n.
  static H4Fraction canonicalize(Int m, Int n) {
    if (sgn(n) == 0) throw Error(ErrorKind::PoleAtValue, "zero denominator");
    if (sgn(n) < 0) {
      m = -m;
      n = -n;
    }
    Int g = gcd(m, n);
    m /= g;
    n /= g;
    if (is_odd(n)) return {ZRt2(Int(0), m), ZRt2(n), Family::Sqrt2OverOdd};
    return {ZRt2(m), ZRt2(Int(0), Int(n / 2)), Family::OddOverSqrt2};
  }

  static H4Fraction from_value(const QRt2& x) {
    if (!x.in_sqrt2_q()) throw Error(ErrorKind::NotInQH4, x.str() + " is not in √2·Q");
    return canonicalize(x.num().b(), x.den());
  }

  /// The canonical form of p/q, or nullopt for the point ∞ (q = 0).
  static std::optional<H4Fraction> from_pair(const ZRt2& p, const ZRt2& q) {
    if (q.is_zero()) return std::nullopt;
    return from_value(QRt2::ratio(p, q));
  }

  QRt2 value() const { return QRt2::ratio(p, q); }

  /// |qα − p| exactly.
  Surd error(const Surd& alpha) const { return abs(Surd(q) * alpha - Surd(p)); }

  std::string str() const {
    auto wrap = [](const ZRt2& x) {
      const bool bare = x.is_rational() || (sgn(x.a()) == 0 && x.b() == 1);
      return bare ? x.str() : "(" + x.str() + ")";
    };
    return p.str() + "/" + wrap(q);
  }

  friend bool operator==(const H4Fraction& x, const H4Fraction& y) { return x.p == y.p && x.q == y.q; }
  friend bool operator!=(const H4Fraction& x, const H4Fraction& y) { return !(x == y); }
};

inline std::ostream& operator<<(std::ostream& os, const H4Fraction& f) { return os << f.str(); }

/// Ford circles at x and y are tangent iff |ps − rq| = 1.
inline bool ford_tangent(const H4Fraction& x, const H4Fraction& y) {
  return abs(x.p * y.q - y.p * x.q) == ZRt2(1);
}

/// Every admissible denominator value ≤ qmax, ascending: odd c and √2·c.
struct Rung {
  ZRt2 q;
  Family family;
};

inline std::vector<Rung> denominator_ladder(const Int& qmax) {
  std::vector<Rung> out;
  for (Int c = 1; c <= qmax; c += 2) out.push_back({ZRt2(c), Family::Sqrt2OverOdd});
  // √2c ≤ qmax  ⇔  2c² ≤ qmax²
  for (Int c = 1; 2 * c * c <= qmax * qmax; c += 1)
    out.push_back({ZRt2(Int(0), c), Family::OddOverSqrt2});
  std::sort(out.begin(), out.end(), [](const Rung& x, const Rung& y) { return x.q < y.q; });
  return out;
}

}  // namespace h4
