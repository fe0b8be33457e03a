#pragma once

// Quadratic surds (P + Q√D)/S over Q(√2) with exact comparison.

#include <gmpxx.h>

#include <string>
#include <utility>

#include "h4/matrix.hpp"
#include "h4/zrt2.hpp"

namespace h4 {

/// Real number A + B·√D with A, B ∈ Q(√2) and D ∈ Z[√2], D > 0.
///
/// When B ≠ 0 the radicand D is never a square in Q(√2); values whose
/// radicand turns out to be a square are collapsed to B = 0 at construction.
/// A degenerate surd (B = 0) carries D = 1.
class Surd {
 public:
  Surd() : rad_(1) {}
  Surd(long a) : rat_(a), rad_(1) {}
  Surd(QRt2 r) : rat_(std::move(r)), rad_(1) {}
  Surd(const ZRt2& r) : rat_(r), rad_(1) {}

  /// A + B√D, normalized.
  static Surd from_parts(QRt2 rat, QRt2 irr, ZRt2 rad) {
    Surd s;
    s.rat_ = std::move(rat);
    s.irr_ = std::move(irr);
    s.rad_ = std::move(rad);
    s.normalize();
    return s;
  }

  /// (P + Q√D)/S.
  static Surd make(const ZRt2& P, const ZRt2& Q, const ZRt2& D, const ZRt2& S) {
    if (S.is_zero()) throw Error(ErrorKind::ValidationError, "surd denominator S is zero");
    if (!Q.is_zero() && sign(D) <= 0)
      throw Error(ErrorKind::ValidationError, "surd radicand D must be positive");
    return from_parts(QRt2::ratio(P, S), QRt2::ratio(Q, S), Q.is_zero() ? ZRt2(1) : D);
  }

  const QRt2& rational_part() const { return rat_; }
  const QRt2& irrational_coeff() const { return irr_; }
  const ZRt2& radicand() const { return rad_; }

  /// Value lies in Q(√2).
  bool is_degenerate() const { return irr_.is_zero(); }
  /// Value lies in Q(H4) = √2·Q.
  bool in_qh4() const { return is_degenerate() && rat_.in_sqrt2_q(); }

  /// Integral presentation (P + Q√D)/S with S a positive integer.
  struct Parts {
    ZRt2 P, Q, D, S;
  };
  Parts parts() const {
    Int s = lcm(rat_.den(), irr_.den());
    ZRt2 p = rat_.num() * Int(s / rat_.den());
    ZRt2 q = irr_.num() * Int(s / irr_.den());
    return {p, q, rad_, ZRt2(s)};
  }

  /// Canonical string identity, equal for equal values with the same radicand.
  std::string key() const {
    auto z = [](const ZRt2& x) { return x.a().get_str() + "," + x.b().get_str(); };
    return z(rat_.num()) + "/" + rat_.den().get_str() + "|" + z(irr_.num()) + "/" +
           irr_.den().get_str() + "|" + z(rad_);
  }

  std::string str() const {
    if (is_degenerate()) return rat_.str();
    const Parts p = parts();
    std::string num = p.P.is_zero() ? "" : "(" + p.P.str() + ")+";
    num += "(" + p.Q.str() + ")·√(" + p.D.str() + ")";
    return p.S == ZRt2(1) ? num : "[" + num + "]/" + p.S.str();
  }

  Surd operator-() const { return from_parts(-rat_, -irr_, rad_); }

  friend Surd operator+(const Surd& x, const Surd& y);
  friend Surd operator-(const Surd& x, const Surd& y);
  friend Surd operator*(const Surd& x, const Surd& y);
  friend Surd operator/(const Surd& x, const Surd& y);
  Surd& operator+=(const Surd& y) { return *this = *this + y; }
  Surd& operator-=(const Surd& y) { return *this = *this - y; }
  Surd& operator*=(const Surd& y) { return *this = *this * y; }
  Surd& operator/=(const Surd& y) { return *this = *this / y; }

  Surd inverse() const;

  /// Rewrites x and y over one radicand. Throws MixedRadicands when the two
  /// values generate different quadratic extensions of Q(√2).
  friend std::pair<Surd, Surd> align(const Surd& x, const Surd& y);

 private:
  static Int square_part(Int g) {
    // Largest f with f² | g, by trial division over small primes.
    // Composite radicand contents beyond the trial bound keep their square part.
    Int f = 1;
    g = ::abs(g);
    for (unsigned long p = 2; p < 2000 && Int(p) * p <= g; ++p) {
      Int pp = Int(p) * p;
      while (mpz_divisible_p(g.get_mpz_t(), pp.get_mpz_t())) {
        g /= pp;
        f *= p;
      }
      while (mpz_divisible_ui_p(g.get_mpz_t(), p)) g /= p;
    }
    if (auto r = isqrt_exact(g); r && *r > 1) f *= *r;
    return f;
  }

  void normalize() {
    if (irr_.is_zero()) {
      rad_ = ZRt2(1);
      return;
    }
    if (sign(rad_) <= 0) throw Error(ErrorKind::ValidationError, "surd radicand must be positive");
    if (auto r = sqrt_exact(rad_)) {
      rat_ += irr_ * QRt2(*r);
      irr_ = QRt2();
      rad_ = ZRt2(1);
      return;
    }
    Int f = square_part(rad_.content());
    if (f > 1) {
      rad_ = *rad_.div_exact(Int(f * f));
      irr_ *= QRt2(f);
    }
  }

  QRt2 rat_;
  QRt2 irr_;
  ZRt2 rad_;
};

inline std::pair<Surd, Surd> align(const Surd& x, const Surd& y) {
  if (x.is_degenerate() && y.is_degenerate()) return {x, y};
  if (x.is_degenerate()) {
    Surd xx = x;
    xx.rad_ = y.rad_;
    return {xx, y};
  }
  if (y.is_degenerate() || x.rad_ == y.rad_) {
    Surd yy = y;
    yy.rad_ = x.rad_;
    return {x, yy};
  }
  // √Dy = r/√Dx = (r/Dx)·√Dx when Dx·Dy = r² in Z[√2].
  auto r = sqrt_exact(x.rad_ * y.rad_);
  if (!r) throw Error(ErrorKind::MixedRadicands, "radicands " + x.rad_.str() + " and " + y.rad_.str());
  Surd yy;
  yy.rat_ = y.rat_;
  yy.irr_ = y.irr_ * QRt2::ratio(*r, x.rad_);
  yy.rad_ = x.rad_;
  return {x, yy};
}

inline Surd operator+(const Surd& x, const Surd& y) {
  auto [a, b] = align(x, y);
  return Surd::from_parts(a.rat_ + b.rat_, a.irr_ + b.irr_, a.rad_);
}

inline Surd operator-(const Surd& x, const Surd& y) {
  auto [a, b] = align(x, y);
  return Surd::from_parts(a.rat_ - b.rat_, a.irr_ - b.irr_, a.rad_);
}

inline Surd operator*(const Surd& x, const Surd& y) {
  auto [a, b] = align(x, y);
  const QRt2 d(a.rad_);
  return Surd::from_parts(a.rat_ * b.rat_ + a.irr_ * b.irr_ * d, a.rat_ * b.irr_ + a.irr_ * b.rat_,
                          a.rad_);
}

inline Surd Surd::inverse() const {
  if (is_degenerate()) {
    if (rat_.is_zero()) throw Error(ErrorKind::PoleAtValue, "inverse of zero");
    return Surd(rat_.inverse());
  }
  // 1/(A + B√D) = (A − B√D)/(A² − B²D); the norm is nonzero since D is not a square.
  const QRt2 n = rat_ * rat_ - irr_ * irr_ * QRt2(rad_);
  const QRt2 ninv = n.inverse();
  return from_parts(rat_ * ninv, -irr_ * ninv, rad_);
}

inline Surd operator/(const Surd& x, const Surd& y) {
  auto [a, b] = align(x, y);
  return a * b.inverse();
}

inline bool operator==(const Surd& x, const Surd& y) {
  if (x.is_degenerate() != y.is_degenerate()) return false;
  if (x.is_degenerate()) return x.rational_part() == y.rational_part();
  try {
    auto [a, b] = align(x, y);
    return a.rational_part() == b.rational_part() && a.irrational_coeff() == b.irrational_coeff();
  } catch (const Error&) {
    return false;
  }
}
inline bool operator!=(const Surd& x, const Surd& y) { return !(x == y); }

/// Exact sign of A + B√D.
inline int sign(const Surd& x) {
  const int sa = sign(x.rational_part());
  const int sb = sign(x.irrational_coeff());
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  const QRt2& a = x.rational_part();
  const QRt2& b = x.irrational_coeff();
  const int c = sign(a * a - b * b * QRt2(x.radicand()));
  ensure(c != 0, "surd with square radicand survived normalization");
  return c > 0 ? sa : sb;
}

/// Total order on surds sharing a quadratic extension.
inline int compare(const Surd& x, const Surd& y) { return sign(x - y); }
inline bool operator<(const Surd& x, const Surd& y) { return compare(x, y) < 0; }
inline bool operator>(const Surd& x, const Surd& y) { return compare(x, y) > 0; }
inline bool operator<=(const Surd& x, const Surd& y) { return compare(x, y) <= 0; }
inline bool operator>=(const Surd& x, const Surd& y) { return compare(x, y) >= 0; }

inline Surd abs(const Surd& x) { return sign(x) < 0 ? -x : x; }

/// Image of x under z ↦ (t z + v)/(u z + w).
inline Surd mobius(const Mat2& m, const Surd& x) {
  const Surd den = Surd(m.u) * x + Surd(m.w);
  if (sign(den) == 0) throw Error(ErrorKind::PoleAtValue, "point is the pole of the map");
  return (Surd(m.t) * x + Surd(m.v)) / den;
}

enum class Branch { Plus, Minus };

/// Root (−B ± √(B² − 4AC))/(2A) of A x² + B x + C = 0.
inline Surd quad_root(const ZRt2& A, const ZRt2& B, const ZRt2& C, Branch branch) {
  if (A.is_zero()) throw Error(ErrorKind::ZeroLeadingCoefficient, "quadratic with A = 0");
  const ZRt2 disc = B * B - ZRt2(4) * A * C;
  if (sign(disc) < 0) throw Error(ErrorKind::NegativeDiscriminant, "discriminant " + disc.str());
  const ZRt2 q = branch == Branch::Plus ? ZRt2(1) : ZRt2(-1);
  return Surd::make(-B, disc.is_zero() ? ZRt2() : q, disc.is_zero() ? ZRt2(1) : disc, ZRt2(2) * A);
}

// ---------------------------------------------------------------------------
// Diagnostics: high-precision evaluation. Never used for decisions.

inline constexpr unsigned kDefaultBits = 256;

// a + b√2 with a, b of opposite signs is evaluated as (a² − 2b²)/(a − b√2);
// both forms are exact, only the second avoids cancellation.
inline mpf_class to_mpf(const ZRt2& x, unsigned bits = kDefaultBits) {
  mpf_class r2(2, bits);
  r2 = sqrt(r2);
  mpf_class a(x.a(), bits), b(x.b(), bits);
  mpf_class out(0, bits);
  if (sgn(x.a()) * sgn(x.b()) >= 0) {
    out = a + b * r2;
  } else {
    mpf_class nm(x.norm(), bits);
    out = nm / (a - b * r2);
  }
  return out;
}

inline mpf_class to_mpf(const QRt2& x, unsigned bits = kDefaultBits) {
  mpf_class out(0, bits);
  mpf_class d(x.den(), bits);
  out = to_mpf(x.num(), bits) / d;
  return out;
}

inline mpf_class to_mpf(const Surd& x, unsigned bits = kDefaultBits) {
  mpf_class out(0, bits);
  out = to_mpf(x.rational_part(), bits);
  if (x.is_degenerate()) return out;
  mpf_class irr(0, bits), rd(0, bits);
  irr = to_mpf(x.irrational_coeff(), bits);
  rd = sqrt(to_mpf(x.radicand(), bits));
  irr *= rd;
  if (sgn(out) * sgn(irr) >= 0) {
    out += irr;
  } else {
    const QRt2& r = x.rational_part();
    const QRt2& c = x.irrational_coeff();
    const QRt2 nm = r * r - c * c * QRt2(x.radicand());
    out = to_mpf(nm, bits) / (out - irr);
  }
  return out;
}

inline double to_double(const Surd& x) { return to_mpf(x).get_d(); }

/// Exact floor: approximate, then correct by exact comparison.
inline Int floor(const Surd& x) {
  mpf_class approx = to_mpf(x, 512);
  mpf_class fl(0, 512);
  fl = ::floor(approx);
  Int k(fl);
  while (compare(x, Surd(QRt2(k))) < 0) k -= 1;
  while (compare(x, Surd(QRt2(Int(k + 1)))) >= 0) k += 1;
  return k;
}

/// Decimal expansion rounded to `digits` places, computed from an exact floor.
inline std::string to_decimal(const Surd& x, int digits = 30) {
  Int scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  Surd scaled = x * Surd(QRt2(scale)) + Surd(QRt2(ZRt2(1), Int(2)));
  Int n = floor(scaled);
  const bool neg = sgn(n) < 0;
  if (neg) n = -n;
  std::string s = n.get_str();
  if (digits > 0) {
    if (static_cast<int>(s.size()) <= digits) s.insert(0, digits + 1 - s.size(), '0');
    s.insert(s.size() - digits, ".");
  }
  return (neg ? "-" : "") + s;
}

}  // namespace h4
