#pragma once

#include <ostream>

#include "h4/zrt2.hpp"

namespace h4 {

/// 2×2 matrix [[t, v], [u, w]] over Z[√2], acting by z ↦ (t z + v)/(u z + w).
/// The entry names follow the convergent matrices G_n, whose columns are the
/// interval endpoints t/u = G·∞ and v/w = G·0.
struct Mat2 {
  ZRt2 t{1};
  ZRt2 v{0};
  ZRt2 u{0};
  ZRt2 w{1};

  static Mat2 identity() { return {}; }

  ZRt2 det() const { return t * w - v * u; }
  ZRt2 trace() const { return t + w; }

  /// Adjugate; the inverse whenever det = 1.
  Mat2 adjugate() const { return {w, -v, -u, t}; }

  /// J·Mᵀ·J with J = [[0,1],[1,0]]. Reverses products of digit matrices.
  Mat2 reversal() const { return {w, v, u, t}; }

  Mat2 operator-() const { return {-t, -v, -u, -w}; }

  friend Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.t * y.t + x.v * y.u, x.t * y.v + x.v * y.w,
            x.u * y.t + x.w * y.u, x.u * y.v + x.w * y.w};
  }
  Mat2& operator*=(const Mat2& y) { return *this = *this * y; }

  friend bool operator==(const Mat2& x, const Mat2& y) {
    return x.t == y.t && x.v == y.v && x.u == y.u && x.w == y.w;
  }
  friend bool operator!=(const Mat2& x, const Mat2& y) { return !(x == y); }

  /// Equality in PSL(2): M and −M act identically.
  friend bool equal_projective(const Mat2& x, const Mat2& y) { return x == y || x == -y; }
};

inline std::ostream& operator<<(std::ostream& os, const Mat2& m) {
  return os << "[[" << m.t << ", " << m.v << "], [" << m.u << ", " << m.w << "]]";
}

inline Mat2 power(Mat2 m, unsigned k) {
  Mat2 r;
  while (k) {
    if (k & 1u) r *= m;
    m *= m;
    k >>= 1u;
  }
  return r;
}

}  // namespace h4
