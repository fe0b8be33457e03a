#pragma once

// Rosen and dual Rosen continued fractions, by two routes: iterating the
// Gauss-type maps on a surd, and regrouping the H4-expansion through the
// selector matrices M_n and N_n.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "h4/expansion.hpp"
#include "h4/group.hpp"
#include "h4/surd.hpp"

namespace h4 {

/// One partial quotient ε_i / a_i.
struct RosenTerm {
  int eps;
  Int a;
  friend bool operator==(const RosenTerm& x, const RosenTerm& y) { return x.eps == y.eps && x.a == y.a; }
};

/// ⟦a_0; ε_1/a_1, ε_2/a_2, …⟧ truncated to the stored terms.
struct RosenExpansion {
  Int a0;
  std::vector<RosenTerm> terms;  // terms[i-1] = (ε_i, a_i)

  friend bool operator==(const RosenExpansion& x, const RosenExpansion& y) {
    return x.a0 == y.a0 && x.terms == y.terms;
  }

  std::string str() const {
    std::string s = "[[" + a0.get_str() + ";";
    for (std::size_t i = 0; i < terms.size(); ++i) {
      s += (i ? ", " : " ") + std::string(terms[i].eps > 0 ? "+1/" : "-1/") + terms[i].a.get_str();
    }
    return s + "]]";
  }
};

/// a_i ≥ 1 and a_i + ε_{i+1} ≥ 1 for i ≥ 1; a_0 is unconstrained.
inline bool satisfies_rosen_rule(const RosenExpansion& e) {
  for (std::size_t i = 0; i < e.terms.size(); ++i) {
    const Int& a = e.terms[i].a;
    if (a < 1) return false;
    if (i + 1 < e.terms.size() && a + e.terms[i + 1].eps < 1) return false;
  }
  return true;
}

/// ε̃_i = −1 forces ã_i ≥ 2.
inline bool satisfies_dual_rule(const RosenExpansion& e) {
  for (const auto& t : e.terms)
    if (t.a < 1 || (t.eps < 0 && t.a < 2)) return false;
  return true;
}

/// r_i/s_i for i = 0..terms.size(): r_i = a_i√2·r_{i−1} + ε_i·r_{i−2}.
inline std::vector<H4Fraction> convergents(const RosenExpansion& e) {
  std::vector<H4Fraction> out;
  ZRt2 r2(1), s2(0);
  ZRt2 r1 = ZRt2(Int(0), e.a0), s1(1);
  out.push_back(*H4Fraction::from_pair(r1, s1));
  for (const auto& t : e.terms) {
    const ZRt2 k(Int(0), t.a);
    ZRt2 r = k * r1 + ZRt2(t.eps) * r2;
    ZRt2 s = k * s1 + ZRt2(t.eps) * s2;
    r2 = std::move(r1);
    s2 = std::move(s1);
    r1 = std::move(r);
    s1 = std::move(s);
    out.push_back(*H4Fraction::from_pair(r1, s1));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Gauss-map route.

namespace detail {

inline const Surd& sqrt2_surd() {
  static const Surd s(ZRt2::sqrt2());
  return s;
}

/// x − a√2 as (ε, 1/|x − a√2|).
inline std::pair<int, Surd> gauss_step(const Surd& x, const Int& a) {
  Surd y = x - Surd(ZRt2(Int(0), a));
  const int e = sign(y);
  if (e == 0) throw Error(ErrorKind::DomainError, "expansion reached a point of Q(H4)");
  return {e, (e > 0 ? y : -y).inverse()};
}

inline void reject_qh4(const Surd& alpha) {
  if (alpha.in_qh4()) throw Error(ErrorKind::DomainError, alpha.str() + " lies in Q(H4)");
}

}  // namespace detail

/// Nearest multiple: a√2 − 1/√2 < x < a√2 + 1/√2.
inline Int rosen_a(const Surd& x) {
  return floor(x / detail::sqrt2_surd() + Surd(QRt2(ZRt2(1), Int(2))));
}

/// Dual window: (a−1)√2 + 1 ≤ x < a√2 + 1.
inline Int dual_a(const Surd& x) { return floor((x - Surd(1)) / detail::sqrt2_surd()) + 1; }

/// Rosen expansion with `count` terms after a_0.
inline RosenExpansion rosen_digits(const Surd& alpha, std::size_t count) {
  detail::reject_qh4(alpha);
  RosenExpansion e;
  Surd x = alpha;
  e.a0 = rosen_a(x);
  Int a = e.a0;
  while (e.terms.size() < count) {
    auto [eps, next] = detail::gauss_step(x, a);
    x = std::move(next);
    a = rosen_a(x);
    e.terms.push_back({eps, a});
  }
  return e;
}

/// Dual Rosen expansion. Below 1 the map is undefined; there α = 0·√2 + 1/(1/α)
/// and the expansion continues from 1/α > 1.
inline RosenExpansion dual_rosen_digits(const Surd& alpha, std::size_t count) {
  detail::reject_qh4(alpha);
  if (sign(alpha) <= 0) throw Error(ErrorKind::DomainError, "dual map needs α > 0");
  RosenExpansion e;
  Surd x = alpha;
  Int a;
  if (compare(x, Surd(1)) < 0) {
    e.a0 = 0;
    x = x.inverse();
    a = dual_a(x);
    if (count) e.terms.push_back({1, a});
  } else {
    e.a0 = dual_a(x);
    a = e.a0;
  }
  while (e.terms.size() < count) {
    auto [eps, next] = detail::gauss_step(x, a);
    x = std::move(next);
    a = dual_a(x);
    e.terms.push_back({eps, a});
  }
  return e;
}

// ---------------------------------------------------------------------------
// Selector matrices.

/// M_n = G_n if α*_n > 1, else G_n·J.
inline Mat2 select_M(const Walker& w) {
  const int s = w.star_vs_one();
  ensure(s != 0, "α*_n = 1 cannot occur");
  return s > 0 ? w.G() : w.G() * gen::J;
}

/// N_n = G_n if α_n > 1 or (α_n = 1 and α*_n > 1), else G_n·J.
inline bool n_uses_tu(const Walker& w) {
  const int t = w.tail_vs_one();
  return t > 0 || (t == 0 && w.star_vs_one() > 0);
}

inline Mat2 select_N(const Walker& w) { return n_uses_tu(w) ? w.G() : w.G() * gen::J; }

/// Point M·∞ = t/u as a fraction (nullopt for ∞).
inline std::optional<H4Fraction> at_infinity(const Mat2& m) { return H4Fraction::from_pair(m.t, m.u); }

// ---------------------------------------------------------------------------
// Regrouping route.

enum class Letter { A1J, JA1, A2, A3 };

/// M_n⁻¹·M_{n+1} (or N_n⁻¹·N_{n+1}) identified among the allowed letters.
inline Letter identify_letter(const Mat2& step, bool dual) {
  if (step == gen::A3) return Letter::A3;
  if (step == gen::A2) return Letter::A2;
  if (!dual && step == gen::A1 * gen::J) return Letter::A1J;
  if (dual && step == gen::J * gen::A1) return Letter::JA1;
  throw Error(ErrorKind::InvariantViolation, "selector step is not a Rosen letter");
}

/// Reads Rosen (or dual Rosen) digits off the H4-expansion. Blocks are A3^k
/// followed by a terminator (A1J / JA1 → ε = +1, A2 → ε = −1).
inline RosenExpansion regroup(Walker w, std::size_t count, bool dual) {
  auto flag = [&](const Walker& x) { return dual ? n_uses_tu(x) : x.star_vs_one() > 0; };
  std::vector<Int> as;
  std::vector<int> eps;
  bool use_j = !flag(w);
  if (dual && use_j) {
    // N_0 = J: α = 1/α̃'_0, so ã_0 = 0 and ε̃_1 = +1.
    as.push_back(0);
    eps.push_back(1);
  }
  bool prev_a2 = false;
  Int k = 0;
  while (as.size() < count + 1) {
    const int d = w.peek();
    w.advance();
    const bool next_j = !flag(w);
    Mat2 step = digit_matrix(d);
    if (use_j) step = gen::J * step;
    if (next_j) step = step * gen::J;
    use_j = next_j;
    const Letter L = identify_letter(step, dual);
    if (L == Letter::A3) {
      k += 1;
      continue;
    }
    const bool a2 = L == Letter::A2;
    if (!dual)
      as.push_back(as.empty() ? Int(k + (a2 ? 1 : 0)) : Int(k + 1 + (a2 ? 1 : 0)));
    else
      as.push_back(k + 1 + (prev_a2 ? 1 : 0));
    prev_a2 = a2;
    eps.push_back(a2 ? -1 : 1);
    k = 0;
  }
  RosenExpansion e;
  e.a0 = as[0];
  for (std::size_t i = 1; i <= count; ++i) e.terms.push_back({eps[i - 1], as[i]});
  return e;
}

inline RosenExpansion rosen_digits_regrouped(const Walker& w, std::size_t count) { return regroup(w, count, false); }
inline RosenExpansion dual_rosen_digits_regrouped(const Walker& w, std::size_t count) {
  return regroup(w, count, true);
}

/// Distinct values of M_n·∞ (or N_n·∞) for n ≥ m+1 with denominator ≤ qmax,
/// in order of increasing denominator.
inline std::vector<H4Fraction> selector_endpoints(Walker w, const Int& qmax, bool dual) {
  const ZRt2 qcap(qmax);
  std::vector<H4Fraction> out;
  const std::uint64_t m = leading_threes(w);
  while (w.n() < m + 1) w.advance();
  while (true) {
    const Mat2& G = w.G();
    if (std::min(G.u, G.w) > qcap) break;
    const Mat2 sel = dual ? select_N(w) : select_M(w);
    auto f = at_infinity(sel);
    ensure(f.has_value(), "selector endpoint at ∞ past the leading 3s");
    if (f->q <= qcap && std::find(out.begin(), out.end(), *f) == out.end()) out.push_back(*f);
    w.advance();
  }
  std::sort(out.begin(), out.end(), [](const H4Fraction& x, const H4Fraction& y) { return x.q < y.q; });
  return out;
}

/// Rosen convergents r_i/s_i with s_i ≤ qmax, computed by the digit recurrence
/// and checked against {M_n·∞ : n ≥ m+1}.
inline std::vector<H4Fraction> rosen_convergents(const Surd& alpha, const Int& qmax) {
  std::size_t count = 4;
  std::vector<H4Fraction> conv;
  while (true) {
    conv = convergents(rosen_digits(alpha, count));
    if (conv.back().q > ZRt2(qmax)) break;
    count *= 2;
  }
  while (!conv.empty() && conv.back().q > ZRt2(qmax)) conv.pop_back();
  const auto via_m = selector_endpoints(Walker(alpha), qmax, false);
  ensure(conv == via_m, "Rosen convergents disagree with M_n·∞");
  return conv;
}

/// Dual Rosen convergents r̃_i/s̃_i with s̃_i ≤ qmax, all i ≥ 0.
inline std::vector<H4Fraction> dual_rosen_convergents(const Surd& alpha, const Int& qmax) {
  std::size_t count = 4;
  std::vector<H4Fraction> conv;
  while (true) {
    conv = convergents(dual_rosen_digits(alpha, count));
    if (conv.back().q > ZRt2(qmax)) break;
    count *= 2;
  }
  while (!conv.empty() && conv.back().q > ZRt2(qmax)) conv.pop_back();
  return conv;
}

/// Whether r_0/s_0 shows up among N_n·∞ without being a dual convergent of index ≥ 1.
struct DualDichotomy {
  bool r0_in_n_set;
  bool r0_is_dual_convergent;  // r_0/s_0 = r̃_i/s̃_i for some i ≥ 1
};

inline DualDichotomy dual_dichotomy(const Surd& alpha) {
  const auto e = rosen_digits(alpha, 0);
  const H4Fraction r0 = convergents(e).front();
  const auto nset = selector_endpoints(Walker(alpha), Int(2), true);
  const auto dual = dual_rosen_convergents(alpha, Int(2));
  DualDichotomy d{};
  d.r0_in_n_set = std::find(nset.begin(), nset.end(), r0) != nset.end();
  d.r0_is_dual_convergent = std::find(dual.begin() + 1, dual.end(), r0) != dual.end();
  return d;
}

}  // namespace h4
