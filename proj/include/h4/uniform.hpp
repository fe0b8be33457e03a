#pragma once

// Uniform approximation: the sequence q_{i+1}|q_i α − p_i|, its limsup K(α),
// Dirichlet witnesses, and the two extremal digit streams.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "h4/best.hpp"
#include "h4/expansion.hpp"
#include "h4/surd.hpp"

namespace h4 {

/// (√2+1)/2 = K(1), the largest possible value of K.
inline Surd k_of_one() { return Surd(QRt2(ZRt2(1, 1), Int(2))); }

inline Surd one_half() { return Surd(QRt2(ZRt2(1), Int(2))); }

/// q_{i+1}|q_i α − p_i| from the state (α_n, α*_n) at the step where p_i/q_i
/// hands over to p_{i+1}/q_{i+1}.
inline Surd case_value(Transition c, const Surd& tail, const Surd& star) {
  const Surd r2(ZRt2::sqrt2());
  const Surd den = tail + star;
  switch (c) {
    case Transition::B1: return star / den;
    case Transition::B2: return (r2 + star) / den;
    case Transition::B3: return (Surd(1) + r2 * star) / den;
    case Transition::MirrorB1: return tail / den;
    case Transition::MirrorB2: return (Surd(1) + r2 * star) * tail / den;
    case Transition::MirrorB3: return (r2 + star) * tail / den;
  }
  throw Error(ErrorKind::InvariantViolation, "unknown transition");
}

inline mpf_class case_value(Transition c, const mpf_class& tail, const mpf_class& star,
                            unsigned bits = kDefaultBits) {
  mpf_class r2(2, bits), one(1, bits), out(0, bits), den(0, bits);
  r2 = sqrt(r2);
  den = tail + star;
  switch (c) {
    case Transition::B1: out = star / den; break;
    case Transition::B2: out = (r2 + star) / den; break;
    case Transition::B3: out = (one + r2 * star) / den; break;
    case Transition::MirrorB1: out = tail / den; break;
    case Transition::MirrorB2: out = (one + r2 * star) * tail / den; break;
    case Transition::MirrorB3: out = (r2 + star) * tail / den; break;
  }
  return out;
}

/// α*_n = w_n/u_n; finite for every n past the leading 3s.
inline Surd star_of(const Mat2& G) {
  ensure(!G.u.is_zero(), "α*_n is infinite only inside the leading 3s");
  return Surd(QRt2::ratio(G.w, G.u));
}

struct UniformRecord {
  std::size_t i = 0;
  Surd value;
  Transition kind = Transition::B1;
};

/// First `count` records, each checked against q_{i+1}·|q_i α − p_i|.
inline std::vector<UniformRecord> uniform_sequence(const Surd& alpha, std::size_t count) {
  const Normalized nz = make_positive(alpha);
  if (nz.in_qh4) throw Error(ErrorKind::InputInQH4, "α ∈ Q(H4)");
  const auto bs = best_approximations_count(Walker(nz.rep), count + 1);
  std::vector<UniformRecord> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const BestApprox& b = bs[i];
    Surd v = case_value(b.transition, *b.tail, star_of(b.G));
    const Surd direct = Surd(bs[i + 1].frac.q) * b.frac.error(nz.rep);
    ensure(v == direct, "case formula disagrees with q_{i+1}|q_i α − p_i|");
    out.push_back({i, std::move(v), b.transition});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Numeric tails for digit streams.

/// α_n for a stream, to absolute width `tol`, by doubling the lookahead.
inline mpf_class stream_tail(const DigitStream& s, std::uint64_t n, const mpf_class& tol,
                             std::uint64_t kcap = 1u << 20, unsigned bits = kDefaultBits) {
  for (std::uint64_t k = 16;; k *= 2) {
    if (k > kcap) throw Error(ErrorKind::CapExceeded, "lookahead beyond " + std::to_string(kcap) + " digits");
    const Mat2 L = lookahead(s, n, k);
    if (L.u.is_zero() || L.w.is_zero()) continue;
    mpf_class lo(0, bits), hi(0, bits), width(0, bits), mid(0, bits);
    lo = to_mpf(L.v, bits) / to_mpf(L.w, bits);
    hi = to_mpf(L.t, bits) / to_mpf(L.u, bits);
    width = hi - lo;
    if (abs(width) < tol) {
      mid = (lo + hi) / 2;
      return mid;
    }
  }
}

// ---------------------------------------------------------------------------
// K(α).

enum class KMethod { ExactPeriodic, NumericLimsup };

inline const char* to_string(KMethod m) {
  return m == KMethod::ExactPeriodic ? "ExactPeriodic" : "NumericLimsup";
}

/// Limit of the records along one residue class of n modulo the period.
struct KPhase {
  std::uint64_t residue = 0;  // n mod L at the handover
  Side side = Side::TU;
  Transition transition = Transition::B1;
  Surd tail;        // α_n, constant along the class
  Surd star_limit;  // lim α*_n along the class
  Surd value;
};

struct KResult {
  KMethod method = KMethod::ExactPeriodic;
  std::optional<Surd> exact;
  mpf_class value{0, kDefaultBits};
  bool certified = false;
  std::uint64_t preperiod = 0;
  std::uint64_t period = 0;
  std::vector<KPhase> phases;
  std::size_t records = 0;
  std::size_t window = 0;
};

/// The fixed point of x ↦ P·x in (0, ∞) for a positive matrix P.
inline Surd positive_fixed_point(const Mat2& P) {
  ensure(sign(P.u) > 0 && sign(P.v) > 0, "fixed point needs a positive matrix");
  return quad_root(P.u, P.w - P.t, -P.v, Branch::Plus);
}

inline KResult k_exact(const DigitStream& s) {
  if (s.kind() != DigitStream::Kind::EventuallyPeriodic)
    throw Error(ErrorKind::NonPeriodicInput, "exact K needs an eventually periodic expansion");
  const auto& per = s.period();
  if (per.size() == 1 && per[0] != 2)
    throw Error(ErrorKind::InputInQH4, "a tail of 1s or 3s ends at a point of Q(H4)");

  const std::uint64_t mu = s.prefix().size();
  const std::uint64_t L = per.size();
  // Past n0 the signs of α_n − 1 and α*_n − 1 and the digits are L-periodic in n.
  const std::uint64_t n0 = mu + L;

  KResult r;
  r.method = KMethod::ExactPeriodic;
  r.certified = true;
  r.preperiod = mu;
  r.period = L;

  // B1 and mirror-B1 keep n, so one n can end a record on each side.
  std::map<std::pair<std::uint64_t, Side>, Transition> seen;
  BestApproximations it{Walker(s)};
  while (true) {
    const BestApprox b = it.next();
    if (b.n_first < n0) continue;
    if (b.n_first >= n0 + 2 * L) break;
    const std::uint64_t res = b.n_last % L;
    auto [pos, fresh] = seen.emplace(std::make_pair(res, b.side), b.transition);
    if (!fresh) {
      ensure(pos->second == b.transition, "transition is not periodic in n");
      continue;
    }
    const std::uint64_t n = b.n_last;
    const Surd tail = positive_fixed_point(lookahead(s, n, L));
    const Surd star = positive_fixed_point(lookahead(s, n - L, L).reversal());
    Surd v = case_value(b.transition, tail, star);
    r.phases.push_back({res, b.side, b.transition, tail, star, v});
  }
  ensure(!r.phases.empty(), "no handover within two periods");
  std::sort(r.phases.begin(), r.phases.end(), [](const KPhase& x, const KPhase& y) {
    return std::tie(x.residue, x.side) < std::tie(y.residue, y.side);
  });
  Surd best = r.phases.front().value;
  for (const auto& p : r.phases)
    if (p.value > best) best = p.value;
  r.value = to_mpf(best);
  r.exact = std::move(best);
  return r;
}

inline KResult k_exact(const Surd& alpha, std::uint64_t cap = 10000) {
  const Normalized nz = make_positive(alpha);
  if (nz.in_qh4) throw Error(ErrorKind::InputInQH4, "α ∈ Q(H4)");
  if (nz.rep.in_qh4()) throw Error(ErrorKind::InputInQH4, "α ∈ Q(H4)");
  return k_exact(detect_period(nz.rep, cap));
}

/// Max of the records over the last `window` of the first `records`. Not certified.
inline KResult k_numeric(Walker w, std::size_t records, std::size_t window) {
  if (records == 0 || window == 0 || window > records)
    throw Error(ErrorKind::ValidationError, "need 0 < window ≤ records");
  KResult r;
  r.method = KMethod::NumericLimsup;
  r.certified = false;
  r.records = records;
  r.window = window;
  const DigitStream* s = w.stream();
  std::optional<DigitStream> stream = s ? std::optional<DigitStream>(*s) : std::nullopt;
  BestApproximations it(std::move(w));
  const mpf_class tol("1e-40", kDefaultBits);
  mpf_class best(0, kDefaultBits);
  for (std::size_t i = 0; i < records; ++i) {
    const BestApprox b = it.next();
    if (i + window < records) continue;
    mpf_class v(0, kDefaultBits);
    if (b.tail) {
      v = to_mpf(case_value(b.transition, *b.tail, star_of(b.G)));
    } else {
      mpf_class star(0, kDefaultBits);
      star = to_mpf(b.G.w) / to_mpf(b.G.u);
      v = case_value(b.transition, stream_tail(*stream, b.n_last, tol), star);
    }
    if (v > best) best = v;
  }
  r.value = best;
  return r;
}

// ---------------------------------------------------------------------------
// Dirichlet.

struct DirichletWitness {
  Int N;
  H4Fraction frac;
  Surd error;   // |qα − p|
  bool holds;   // N·|qα − p| < (√2+1)/2
};

namespace detail {

inline DirichletWitness witness_from(const std::vector<BestApprox>& bs, const Surd& alpha,
                                     const Int& N, const Int& shift) {
  const ZRt2 cap(N);
  auto last = std::find_if(bs.begin(), bs.end(), [&](const BestApprox& b) { return b.frac.q > cap; });
  ensure(last != bs.begin() && last != bs.end(), "best approximations do not straddle N");
  const H4Fraction f = shift_back(std::prev(last)->frac, shift);
  Surd e = f.error(alpha);
  const bool holds = Surd(ZRt2(N)) * e < k_of_one();
  return {N, f, std::move(e), holds};
}

}  // namespace detail

/// p_{i−1}/q_{i−1} with q_{i−1} ≤ N < q_i.
inline DirichletWitness dirichlet_witness(const Surd& alpha, const Int& N) {
  if (N < 1) throw Error(ErrorKind::ValidationError, "N must be at least 1");
  const Normalized nz = make_positive(alpha);
  if (nz.in_qh4) throw Error(ErrorKind::InputInQH4, "α ∈ Q(H4)");
  BestApproximations it{Walker(nz.rep)};
  std::vector<BestApprox> bs;
  do bs.push_back(it.next());
  while (bs.back().frac.q <= ZRt2(N));
  return detail::witness_from(bs, alpha, N, nz.k);
}

/// Witnesses for N = 1..nmax.
inline std::vector<DirichletWitness> dirichlet_sweep(const Surd& alpha, const Int& nmax) {
  if (nmax < 1) throw Error(ErrorKind::ValidationError, "N must be at least 1");
  const Normalized nz = make_positive(alpha);
  if (nz.in_qh4) throw Error(ErrorKind::InputInQH4, "α ∈ Q(H4)");
  BestApproximations it{Walker(nz.rep)};
  std::vector<BestApprox> bs;
  do bs.push_back(it.next());
  while (bs.back().frac.q <= ZRt2(nmax));
  std::vector<DirichletWitness> out;
  for (Int N = 1; N <= nmax; ++N) out.push_back(detail::witness_from(bs, alpha, N, nz.k));
  return out;
}

// ---------------------------------------------------------------------------
// Extremal streams.

enum class OptimalityStream { A, B };

struct OptimalityPoint {
  unsigned i = 0;
  std::uint64_t n = 0;
  std::string series;  // "n_i" or "n'_i"
  int tail_vs_one = 0;
  int star_vs_one = 0;
  mpf_class value;     // w_n|w_n α − v_n| = 1/(1/α*_n + 1/α_n)
  mpf_class target;
  mpf_class distance;
};

inline DigitStream optimality_stream(OptimalityStream which) {
  return DigitStream::generated(which == OptimalityStream::A ? DigitStream::Rule::FourBlocks
                                                             : DigitStream::Rule::ThreePowers);
}

/// Checker values at i = 1..i_max. `cap` bounds every digit index touched.
inline std::vector<OptimalityPoint> optimality_check(OptimalityStream which, unsigned i_max,
                                                     std::uint64_t cap = 100000) {
  const unsigned bits = kDefaultBits;
  mpf_class r2(2, bits);
  r2 = sqrt(r2);
  struct Target {
    unsigned i;
    std::uint64_t n;
    const char* series;
    mpf_class value;
  };
  std::vector<Target> targets;
  for (unsigned i = 1; i <= i_max; ++i) {
    if (which == OptimalityStream::A) {
      std::uint64_t p = 1;
      for (unsigned j = 0; j < i; ++j) p *= 4;
      if (4 * p > cap) throw Error(ErrorKind::CapExceeded, "i = " + std::to_string(i) + " exceeds the digit cap");
      mpf_class inv(1, bits);
      inv = inv / (r2 + 1);
      targets.push_back({i, 2 * p - 1, "n'_i", mpf_class(1, bits)});
      targets.push_back({i, 3 * p - 2, "n_i", inv});
    } else {
      std::uint64_t p = 1;
      for (unsigned j = 0; j < i; ++j) p *= 3;
      if (3 * p > cap) throw Error(ErrorKind::CapExceeded, "i = " + std::to_string(i) + " exceeds the digit cap");
      targets.push_back({i, 2 * p, "n_i", mpf_class(0.5, bits)});
    }
  }
  std::sort(targets.begin(), targets.end(), [](const Target& x, const Target& y) { return x.n < y.n; });

  const DigitStream s = optimality_stream(which);
  const mpf_class tol("1e-12", bits);
  std::vector<OptimalityPoint> out;
  Mat2 G;
  std::uint64_t n = 0;
  for (const auto& t : targets) {
    while (n < t.n) G *= digit_matrix(s.at(++n));
    OptimalityPoint p;
    p.i = t.i;
    p.n = t.n;
    p.series = t.series;
    p.tail_vs_one = compare_tail_to_one(s, n);
    p.star_vs_one = sign(G.w - G.u);
    mpf_class a(0, bits), star(0, bits), one(1, bits);
    a = stream_tail(s, n, tol, cap, bits);
    star = to_mpf(G.w, bits) / to_mpf(G.u, bits);
    p.value = mpf_class(one / (one / star + one / a), bits);
    p.target = t.value;
    p.distance = mpf_class(abs(p.value - p.target), bits);
    out.push_back(std::move(p));
  }
  std::sort(out.begin(), out.end(), [](const OptimalityPoint& x, const OptimalityPoint& y) {
    return x.series != y.series ? x.series < y.series : x.i < y.i;
  });
  return out;
}

// ---------------------------------------------------------------------------

/// min of q|qα − p| over canonical p/q with qlo ≤ q ≤ qhi.
inline Surd scaled_error_minimum(const Surd& alpha, const Int& qlo, const Int& qhi) {
  std::optional<Surd> best;
  const ZRt2 lo(qlo);
  for (const Rung& r : denominator_ladder(qhi)) {
    if (r.q < lo) continue;
    for (const auto& f : nearest_candidates(alpha, r)) {
      Surd e = scaled_error(alpha, f);
      if (!best || e < *best) best = std::move(e);
    }
  }
  ensure(best.has_value(), "empty denominator range");
  return *best;
}

}  // namespace h4
