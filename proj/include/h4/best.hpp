#pragma once

// H4-best approximations: the successor-rule enumerator, the endpoint
// characterization, and a brute-force scan of the definition.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "h4/expansion.hpp"
#include "h4/group.hpp"
#include "h4/rosen.hpp"
#include "h4/surd.hpp"

namespace h4 {

enum class Side { TU, VW };

/// How p_{i+1}/q_{i+1} follows p_i/q_i. B* leave from t_n/u_n, Mirror* from v_n/w_n.
enum class Transition { B1, B2, B3, MirrorB1, MirrorB2, MirrorB3 };

inline const char* to_string(Side s) { return s == Side::TU ? "tu" : "vw"; }

inline const char* to_string(Transition t) {
  switch (t) {
    case Transition::B1: return "b1";
    case Transition::B2: return "b2";
    case Transition::B3: return "b3";
    case Transition::MirrorB1: return "mirror-b1";
    case Transition::MirrorB2: return "mirror-b2";
    case Transition::MirrorB3: return "mirror-b3";
  }
  return "";
}

struct BestApprox {
  H4Fraction frac;
  Side side = Side::TU;
  std::uint64_t n_first = 0;  // indices n ≥ m+1 at which frac is the `side` endpoint
  std::uint64_t n_last = 0;
  bool is_rosen = false;  // frac ∈ {M_n·∞ : n ≥ m+1}
  bool is_dual = false;   // frac ∈ {N_n·∞ : n ≥ m+1}

  // State at n_last, where the successor rule fires.
  Transition transition = Transition::B1;
  Mat2 G;                     // G_{n_last}
  std::optional<Surd> tail;   // α_{n_last}, when α is a surd
};

/// Walks the successor rules along the H4-expansion.
class BestApproximations {
 public:
  explicit BestApproximations(Walker w) : w_(std::move(w)) {
    if (w_.exact() && w_.tail().in_qh4())
      throw Error(ErrorKind::InputInQH4, "best approximations need α ∉ Q(H4)");
    m_ = leading_threes(w_);
    while (w_.n() < m_ + 1) w_.advance();
    side_ = w_.G().u == ZRt2::sqrt2() ? Side::VW : Side::TU;  // d_{m+1} = 1 or 2
  }

  std::uint64_t m() const { return m_; }

  BestApprox next() {
    BestApprox b;
    b.side = side_;
    b.n_first = w_.n();
    b.frac = *endpoint();
    while (true) {
      const int s = w_.star_vs_one();
      if (side_ == Side::TU) {
        b.is_rosen |= s > 0;
        b.is_dual |= n_uses_tu(w_);
      } else {
        b.is_rosen |= s < 0;
        b.is_dual |= !n_uses_tu(w_);
      }
      const int d = w_.peek();
      if ((side_ == Side::TU && d == 3) || (side_ == Side::VW && d == 1)) {
        w_.advance();
        continue;
      }
      break;
    }
    b.n_last = w_.n();
    b.G = w_.G();
    if (w_.exact()) b.tail = w_.tail();

    const int s = w_.star_vs_one();
    const int t = w_.tail_vs_one();
    bool step = false;
    if (side_ == Side::TU) {
      if (s > 0 && t < 0) {
        b.transition = Transition::B1;
        side_ = Side::VW;
      } else if (s > 0) {
        b.transition = Transition::B2;
        step = true;
      } else if (t > 0) {
        b.transition = Transition::B3;
        side_ = Side::VW;
        step = true;
      } else {
        throw Error(ErrorKind::InvariantViolation, "t_n/u_n with α*_n < 1 and α_n ≤ 1 is not best");
      }
    } else {
      if (s < 0 && t > 0) {
        b.transition = Transition::MirrorB1;
        side_ = Side::TU;
      } else if (s < 0) {
        b.transition = Transition::MirrorB2;
        step = true;
      } else if (t < 0) {
        b.transition = Transition::MirrorB3;
        side_ = Side::TU;
        step = true;
      } else {
        throw Error(ErrorKind::InvariantViolation, "v_n/w_n with α*_n > 1 and α_n ≥ 1 is not best");
      }
    }
    if (step) w_.advance();
    return b;
  }

  const Walker& walker() const { return w_; }

 private:
  std::optional<H4Fraction> endpoint() const { return side_ == Side::TU ? w_.tu() : w_.vw(); }

  Walker w_;
  std::uint64_t m_ = 0;
  Side side_ = Side::TU;
};

/// Best approximations with denominator ≤ qmax, in order.
inline std::vector<BestApprox> best_approximations(Walker w, const Int& qmax,
                                                   std::uint64_t cap = 1000000) {
  BestApproximations it(std::move(w));
  std::vector<BestApprox> out;
  const ZRt2 qcap(qmax);
  while (true) {
    BestApprox b = it.next();
    if (b.frac.q > qcap) break;
    if (out.size() >= cap) throw Error(ErrorKind::CapExceeded, "too many best approximations");
    ensure(out.empty() || out.back().frac.q < b.frac.q, "best approximation denominators must increase");
    out.push_back(std::move(b));
  }
  return out;
}

/// The first `count` best approximations.
inline std::vector<BestApprox> best_approximations_count(Walker w, std::size_t count) {
  BestApproximations it(std::move(w));
  std::vector<BestApprox> out;
  while (out.size() < count) out.push_back(it.next());
  return out;
}

inline std::vector<H4Fraction> fractions(const std::vector<BestApprox>& bs) {
  std::vector<H4Fraction> out;
  for (const auto& b : bs) out.push_back(b.frac);
  return out;
}

/// Endpoint characterization: t_n/u_n when α_n > 1 or α*_n > 1, v_n/w_n when
/// α_n < 1 or α*_n < 1, over n ≥ m+1. Sorted by denominator.
inline std::vector<H4Fraction> characterized_set(Walker w, const Int& qmax) {
  const ZRt2 qcap(qmax);
  const std::uint64_t m = leading_threes(w);
  while (w.n() < m + 1) w.advance();
  std::vector<H4Fraction> out;
  auto add = [&](const H4Fraction& f) {
    if (f.q <= qcap && std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
  };
  while (std::min(w.G().u, w.G().w) <= qcap) {
    const int s = w.star_vs_one();
    const int t = w.tail_vs_one();
    if (t > 0 || s > 0) add(*w.tu());
    if (t < 0 || s < 0) add(*w.vw());
    w.advance();
  }
  std::sort(out.begin(), out.end(), [](const H4Fraction& x, const H4Fraction& y) { return x.q < y.q; });
  return out;
}

// ---------------------------------------------------------------------------
// Definitional scan.

/// Admissible numerators nearest to qα on each side, for a rung q of the ladder.
/// Non-coprime neighbours are skipped: they are reducible to a smaller
/// denominator with a smaller error, so they can never set a record.
inline std::vector<H4Fraction> nearest_candidates(const Surd& alpha, const Rung& r) {
  std::vector<H4Fraction> out;
  if (r.family == Family::Sqrt2OverOdd) {
    const Int& c = r.q.a();
    const Int a = floor(Surd(QRt2(c)) * alpha / detail::sqrt2_surd());
    for (Int x : {a, Int(a + 1)})
      if (gcd(x, c) == 1) out.push_back({ZRt2(Int(0), x), r.q, Family::Sqrt2OverOdd});
  } else {
    const Int& c = r.q.b();
    Int f = floor(Surd(r.q) * alpha);
    if (!is_odd(f)) f -= 1;
    for (Int x : {f, Int(f + 2)})
      if (gcd(x, c) == 1) out.push_back({ZRt2(x), r.q, Family::OddOverSqrt2});
  }
  return out;
}

/// Scan of the denominator ladder keeping strict records of |qα − p|.
inline std::vector<H4Fraction> oracle_best_approximations(const Surd& alpha, const Int& qmax) {
  std::vector<H4Fraction> out;
  std::optional<Surd> best;
  for (const Rung& r : denominator_ladder(qmax)) {
    std::optional<H4Fraction> pick;
    std::optional<Surd> err;
    for (const auto& f : nearest_candidates(alpha, r)) {
      Surd e = f.error(alpha);
      if (err) {
        const int c = compare(e, *err);
        ensure(c != 0, "equal errors at one denominator force α ∈ Q(H4)");
        if (c > 0) continue;
      }
      err = std::move(e);
      pick = f;
    }
    if (!pick) continue;
    if (!best || compare(*err, *best) < 0) {
      out.push_back(*pick);
      best = std::move(err);
    }
  }
  return out;
}

/// min over canonical p/q with 1 ≤ q < qlimit of |qα − p|, by the same scan.
inline Surd oracle_min_error(const Surd& alpha, const ZRt2& qlimit) {
  std::optional<Surd> best;
  const Int bound = floor(Surd(qlimit)) + 1;
  for (const Rung& r : denominator_ladder(bound)) {
    if (!(r.q < qlimit)) continue;
    for (const auto& f : nearest_candidates(alpha, r)) {
      Surd e = f.error(alpha);
      if (!best || compare(e, *best) < 0) best = std::move(e);
    }
  }
  ensure(best.has_value(), "no denominator below the limit");
  return *best;
}

// ---------------------------------------------------------------------------
// Legendre-type classification.

/// q·|qα − p|, i.e. q²·|α − p/q|.
inline Surd scaled_error(const Surd& alpha, const H4Fraction& f) { return Surd(f.q) * f.error(alpha); }

enum class LegendreClass { BestBySufficient, BestButNotSufficient, NotBest };

inline const char* to_string(LegendreClass c) {
  switch (c) {
    case LegendreClass::BestBySufficient: return "BestBySufficient";
    case LegendreClass::BestButNotSufficient: return "BestButNotSufficient";
    case LegendreClass::NotBest: return "NotBest";
  }
  return "";
}

inline LegendreClass legendre_classify(const Surd& alpha, const H4Fraction& f) {
  const Surd se = scaled_error(alpha, f);
  const bool sufficient = compare(se, Surd(QRt2(ZRt2(1), Int(2)))) < 0;
  const Int qbound = floor(Surd(f.q)) + 1;
  const auto bs = best_approximations(Walker(alpha), qbound);
  const bool member = std::any_of(bs.begin(), bs.end(), [&](const BestApprox& b) { return b.frac == f; });
  ensure(!sufficient || member, "fraction within 1/(2q²) is not best");
  ensure(!member || compare(se, Surd(1)) < 0, "best approximation outside 1/q²");
  if (sufficient) return LegendreClass::BestBySufficient;
  return member ? LegendreClass::BestButNotSufficient : LegendreClass::NotBest;
}

// ---------------------------------------------------------------------------
// Bounds by membership in the two continued-fraction families.

struct TierRecord {
  H4Fraction frac;
  bool rosen = false;       // r_i/s_i for some i ≥ 0
  bool dual = false;        // r̃_i/s̃_i for some i ≥ 1
  bool same_index = false;  // t_n/u_n with α*_n, α_n > 1, or v_n/w_n with both < 1, at one n
  Surd scaled;              // q²|α − p/q|
  bool within = false;      // both: < 1/2; exactly one: in (1/(√2+1), 1)
};

/// Every best approximation with q ≤ qmax, tagged by family and bound.
inline std::vector<TierRecord> three_tier(const Surd& alpha, const Int& qmax) {
  const auto rosen = rosen_convergents(alpha, qmax);
  const auto dual = dual_rosen_convergents(alpha, qmax);
  std::vector<H4Fraction> same;
  {
    Walker w(alpha);
    const std::uint64_t m = leading_threes(w);
    while (w.n() < m + 1) w.advance();
    const ZRt2 qcap(qmax);
    while (std::min(w.G().u, w.G().w) <= qcap) {
      const int s = w.star_vs_one();
      const int t = w.tail_vs_one();
      if (s > 0 && t > 0) same.push_back(*w.tu());
      if (s < 0 && t < 0) same.push_back(*w.vw());
      w.advance();
    }
  }
  auto has = [](const auto& v, const H4Fraction& f, std::size_t from = 0) {
    return std::find(v.begin() + static_cast<std::ptrdiff_t>(std::min(from, v.size())), v.end(), f) != v.end();
  };
  const Surd half(QRt2(ZRt2(1), Int(2)));
  const Surd lower(QRt2(ZRt2(-1, 1)));  // 1/(√2+1) = √2 − 1
  std::vector<TierRecord> out;
  for (const auto& b : best_approximations(Walker(alpha), qmax)) {
    TierRecord r;
    r.frac = b.frac;
    r.rosen = has(rosen, b.frac);
    r.dual = has(dual, b.frac, 1);
    r.same_index = has(same, b.frac);
    r.scaled = scaled_error(alpha, b.frac);
    if (r.rosen && r.dual)
      r.within = r.scaled < half;
    else if (r.rosen || r.dual)
      r.within = lower < r.scaled && r.scaled < Surd(1);
    out.push_back(std::move(r));
  }
  return out;
}

/// Maps a fraction for α + k√2 back to α: p ↦ p − k√2·q.
inline H4Fraction shift_back(const H4Fraction& f, const Int& k) {
  if (sgn(k) == 0) return f;
  return *H4Fraction::from_pair(f.p - ZRt2(Int(0), k) * f.q, f.q);
}

}  // namespace h4
