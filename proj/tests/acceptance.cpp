// Acceptance run: one PASS/FAIL line per criterion, timed. Exit status is the
// number of failed criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "h4/corpus.hpp"
#include "h4/h4.hpp"
#include "oracle.hpp"

using namespace h4;

namespace {

using Clock = std::chrono::steady_clock;

struct Verdict {
  bool ok;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, double limit_s, const std::function<Verdict()>& body) {
  const auto t0 = Clock::now();
  Verdict v{false, ""};
  try {
    v = body();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  const bool in_time = secs < limit_s;
  const bool ok = v.ok && in_time;
  if (!ok) ++failures;
  std::printf("[%s] %2d %s: %s (%.2f s, limit %.0f s%s)\n", ok ? "PASS" : "FAIL", id, title, v.detail.c_str(), secs,
              limit_s, in_time ? "" : ", over time");
  std::fflush(stdout);
}

const Surd kExample = Surd::make(ZRt2(3), ZRt2(1), ZRt2(17), ZRt2(0, 2));
const Surd kHalf(QRt2(ZRt2(1), Int(2)));

std::vector<Surd> corpus() { return make_corpus(CorpusSpec{1, 100, 20}); }

Mat2 m(ZRt2 t, ZRt2 v, ZRt2 u, ZRt2 w) { return {t, v, u, w}; }

template <class... T>
std::string fmt(const char* f, T... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

}  // namespace

int main() {
  const auto C = corpus();

  criterion(1, "example (3+√17)/(2√2)", 1, [] {
    const DigitStream s = detect_period(kExample);
    bool ok = s.prefix().empty() && s.period() == std::vector<int>{3, 2, 3, 1, 2, 1};
    const std::vector<Mat2> want = {
        m(ZRt2(0, 2), ZRt2(3), ZRt2(1), ZRt2(0, 1)),      // G_2
        m(ZRt2(0, 2), ZRt2(7), ZRt2(1), ZRt2(0, 2)),      // G_3
        m(ZRt2(0, 9), ZRt2(7), ZRt2(5), ZRt2(0, 2)),      // G_4
        m(ZRt2(25), ZRt2(0, 16), ZRt2(0, 7), ZRt2(9)),    // G_5; printed with 9√2 in the corner, det −63
        m(ZRt2(57), ZRt2(0, 16), ZRt2(0, 16), ZRt2(9)),  // G_6
    };
    Walker w(kExample);
    w.advance();
    for (const Mat2& g : want) {
      w.advance();
      ok = ok && w.G() == g;
    }
    std::vector<std::string> names;
    for (const auto& f : fractions(best_approximations_count(Walker(kExample), 4))) names.push_back(f.str());
    ok = ok && names == std::vector<std::string>{"2√2/1", "7/(2√2)", "16√2/9", "57/(16√2)"};
    return Verdict{ok, "expansion " + s.str() + ", G_2..G_6 exact (G_5 = [[25,16√2],[7√2,9]]), best " + names[0] +
                           ", " + names[1] + ", " + names[2] + ", " + names[3]};
  });

  criterion(2, "K(1) exact vs numeric limsup", 5, [] {
    const KResult e = k_exact(Surd(1));
    const KResult n = k_numeric(Walker(Surd(1)), 1000, 100);
    const double d = std::abs(e.value.get_d() - n.value.get_d());
    const bool ok = e.exact && *e.exact == k_of_one() && d < 1e-9;
    return Verdict{ok, "exact " + e.exact->str() + ", |exact − numeric over 10³ records| = " + fmt("%.3e", d) +
                           " (tol 1e-9)"};
  });

  criterion(3, "enumerator = definitional scan, q ≤ 200, 100 surds", 120, [&] {
    int bad = 0;
    for (const Surd& a : C)
      if (fractions(best_approximations(Walker(a), Int(200))) != oracle_best_approximations(a, Int(200))) ++bad;
    return Verdict{bad == 0, fmt("%d/100 mismatches", bad)};
  });

  criterion(4, "Dirichlet N ∈ [1,500] on the corpus", 120, [&] {
    long bad = 0, total = 0;
    for (const Surd& a : C) {
      for (const auto& w : dirichlet_sweep(a, Int(500))) {
        ++total;
        const bool exact = w.frac.q <= ZRt2(w.N) && w.error == w.frac.error(a) &&
                           Surd(ZRt2(w.N)) * w.frac.error(a) < k_of_one();
        if (!exact || !w.holds) ++bad;
      }
    }
    return Verdict{bad == 0, fmt("%ld/%ld witnesses fail N·|qα − p| < (√2+1)/2 (exact)", bad, total)};
  });

  criterion(5, "Legendre on the corpus, q ≤ 100", 120, [&] {
    long not_best = 0, sufficient = 0, outside = 0, bests = 0;
    for (const Surd& a : C) {
      const auto best = fractions(best_approximations(Walker(a), Int(100)));
      for (const Rung& r : denominator_ladder(Int(100)))
        for (const auto& f : nearest_candidates(a, r))
          if (scaled_error(a, f) < kHalf) {
            ++sufficient;
            if (std::find(best.begin(), best.end(), f) == best.end()) ++not_best;
          }
      for (const auto& f : best) {
        ++bests;
        if (!(scaled_error(a, f) < Surd(1))) ++outside;
      }
    }
    return Verdict{not_best == 0 && outside == 0,
                   fmt("%ld/%ld within 1/(2q²) not best; %ld/%ld best outside 1/q²", not_best, sufficient, outside,
                       bests)};
  });

  criterion(6, "three-tier bound on the corpus, q ≤ 10³", 120, [&] {
    long total = 0, both = 0, one = 0, neither = 0, bad_both = 0, bad_one = 0;
    long same = 0, bad_same = 0, other = 0, bad_other = 0;
    const Surd lower(QRt2(ZRt2(-1, 1)));
    std::string first;
    for (const Surd& a : C) {
      for (const auto& r : three_tier(a, Int(1000))) {
        ++total;
        if (r.rosen && r.dual) {
          ++both;
          if (!r.within) ++bad_both;
          if (!r.within && first.empty()) {
            const oracle::Real q = oracle::eval(r.frac.q);
            const double se = (q * q * (oracle::eval(a) - oracle::eval(r.frac))).abs().to_double();
            first = "; first: α = " + to_decimal(a, 12) + ", " + r.frac.str() + " in both families, q²|α − p/q| = " +
                    fmt("%.10f", se) + " (MPFR)";
          }
        } else if (r.rosen || r.dual) {
          ++one;
          if (!r.within) ++bad_one;
        } else {
          ++neither;
        }
        // Per-index reading, diagnostic only.
        if (r.same_index) {
          ++same;
          if (!(r.scaled < kHalf)) ++bad_same;
        } else {
          ++other;
          if (!(lower < r.scaled && r.scaled < Surd(1))) ++bad_other;
        }
      }
    }
    const bool ok = bad_both == 0 && bad_one == 0 && neither == 0;
    return Verdict{ok, fmt("%ld records: both families %ld (%ld ≥ 1/(2q²)), one family %ld (%ld outside "
                           "(1/((√2+1)q²), 1/q²)), neither %ld; per-index reading: %ld/%ld and %ld/%ld violate",
                           total, both, bad_both, one, bad_one, neither, bad_same, same, bad_other, other) +
                           first};
  });

  criterion(7, "uniform records inside (1/2, (√2+1)/2), 50 per surd", 120, [&] {
    long bad = 0, total = 0;
    for (const Surd& a : C)
      for (const auto& r : uniform_sequence(a, 50)) {
        ++total;
        if (!(kHalf < r.value && r.value < k_of_one())) ++bad;
      }
    return Verdict{bad == 0, fmt("%ld/%ld records outside (exact)", bad, total)};
  });

  criterion(8, "Rosen (i ≥ 0) ∪ dual (i ≥ 1) = best, q ≤ 10³", 120, [&] {
    int bad = 0;
    for (const Surd& a : C) {
      const Int qmax(1000);
      std::vector<H4Fraction> u = rosen_convergents(a, qmax);
      const auto dual = dual_rosen_convergents(a, qmax);
      for (std::size_t i = 1; i < dual.size(); ++i)
        if (std::find(u.begin(), u.end(), dual[i]) == u.end()) u.push_back(dual[i]);
      std::sort(u.begin(), u.end(), [](const H4Fraction& x, const H4Fraction& y) { return x.q < y.q; });
      if (u != fractions(best_approximations(Walker(a), qmax))) ++bad;
    }
    return Verdict{bad == 0, fmt("%d/100 mismatches", bad)};
  });

  criterion(9, "optimality streams at i = 5", 60, [] {
    bool ok = true;
    std::ostringstream d;
    for (auto which : {OptimalityStream::A, OptimalityStream::B}) {
      for (const auto& p : optimality_check(which, 5)) {
        if (p.i != 5) continue;
        const double dist = p.distance.get_d();
        ok = ok && dist < 1e-3;
        d << (which == OptimalityStream::A ? "A " : "B ") << p.series << " n=" << p.n << " |value − target| "
          << fmt("%.3e", dist) << "; ";
      }
    }
    d << "tol 1e-3";
    return Verdict{ok, d.str()};
  });

  criterion(10, "10⁴ randomized consistency checks", 60, [] {
    std::mt19937_64 g(20261016);
    auto coef = [&](long b) { return static_cast<long>(g() % static_cast<std::uint64_t>(2 * b + 1)) - b; };
    auto zr = [&](long b) {
      const long a = coef(b);
      return ZRt2(a, coef(b));
    };
    auto word = [&](int len) {
      std::vector<int> w(static_cast<std::size_t>(len));
      for (int& d : w) d = 1 + static_cast<int>(g() % 3);
      return w;
    };
    long bad = 0;
    for (int it = 0; it < 10000; ++it) {
      // sign, product and comparison against 2000-bit floats
      const ZRt2 x = zr(1000000), y = zr(1000000);
      if (sign(x * y) != sign(x) * sign(y) || sign(x) != oracle::eval(x).sign() ||
          compare(x, y) != oracle::cmp(oracle::eval(x), oracle::eval(y)))
        ++bad;
      // det 1 and Möbius composition
      const auto w1 = word(1 + static_cast<int>(g() % 8)), w2 = word(1 + static_cast<int>(g() % 8));
      Mat2 a, b, rev;
      for (int d : w1) a *= digit_matrix(d);
      for (int d : w2) b *= digit_matrix(d);
      if (a.det() != ZRt2(1) || (a * b).det() != ZRt2(1)) ++bad;
      const Surd z = abs(Surd::make(zr(30), ZRt2(1), ZRt2(7, 2), ZRt2(1 + static_cast<long>(g() % 20))));
      if (mobius(a, mobius(b, z)) != mobius(a * b, z)) ++bad;
      // reversal: J·(A_{d1}···A_{dn})ᵀ·J = A_{dn}···A_{d1}
      for (auto d = w1.rbegin(); d != w1.rend(); ++d) rev *= digit_matrix(*d);
      if (a.reversal() != rev) ++bad;
      // nesting: [G_{n+1}·0, G_{n+1}·∞] ⊂ [G_n·0, G_n·∞] for positive finite endpoints
      const Mat2 c = a * digit_matrix(1 + static_cast<int>(g() % 3));
      auto lo = [](const Mat2& m) { return oracle::eval(m.v) / oracle::eval(m.w); };
      auto hi = [](const Mat2& m) { return oracle::eval(m.t) / oracle::eval(m.u); };
      if (lo(c) < lo(a)) ++bad;
      if (!a.u.is_zero() && hi(a) < hi(c)) ++bad;
    }
    return Verdict{bad == 0, fmt("%ld failed of 10⁴ rounds (sign, product, compare, det, Möbius, reversal, nesting)",
                                 bad)};
  });

  std::printf("%d of 10 criteria failed\n", failures);
  return failures;
}
