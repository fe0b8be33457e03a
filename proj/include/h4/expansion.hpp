#pragma once

// H4-expansions: digit streams, the convergent engine G_n = A_{d1}···A_{dn},
// tails α_n = G_n⁻¹·α and reversals α*_n = w_n/u_n.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "h4/group.hpp"
#include "h4/surd.hpp"

namespace h4 {

enum class Boundary { Zero, InvSqrt2, Sqrt2 };

/// Expansion reached a point of Q(H4) after `n` digits.
class Terminated : public Error {
 public:
  Terminated(Boundary b, std::uint64_t n)
      : Error(ErrorKind::Terminated, "expansion terminates after " + std::to_string(n) + " digits"),
        boundary(b),
        n(n) {}
  Boundary boundary;
  std::uint64_t n;
};

/// Infinite word `word` followed by `repeat` forever.
struct Completion {
  std::vector<int> word;
  int repeat;
};

/// Both infinite representations of a terminated expansion.
inline std::pair<Completion, Completion> completions(const std::vector<int>& prefix, Boundary b) {
  auto with = [&](int d, int r) {
    Completion c{prefix, r};
    c.word.push_back(d);
    return c;
  };
  switch (b) {
    case Boundary::InvSqrt2: return {with(1, 3), with(2, 1)};  // A1·∞ = A2·0
    case Boundary::Sqrt2: return {with(2, 3), with(3, 1)};     // A2·∞ = A3·0
    case Boundary::Zero: break;
  }
  return {Completion{prefix, 1}, Completion{prefix, 1}};
}

struct Step {
  int digit;
  Surd tail;
};

/// First digit of x > 0 and the tail A_d⁻¹·x.
inline Step next_digit(const Surd& x) {
  if (sign(x) <= 0) throw Terminated(Boundary::Zero, 0);
  static const Surd inv_sqrt2(QRt2(ZRt2::sqrt2(), Int(2)));
  static const Surd sqrt2(ZRt2::sqrt2());
  int d;
  const int c1 = compare(x, inv_sqrt2);
  if (c1 == 0) throw Terminated(Boundary::InvSqrt2, 0);
  if (c1 < 0) {
    d = 1;
  } else {
    const int c2 = compare(x, sqrt2);
    if (c2 == 0) throw Terminated(Boundary::Sqrt2, 0);
    d = c2 < 0 ? 2 : 3;
  }
  return {d, mobius(digit_matrix(d).adjugate(), x)};
}

// ---------------------------------------------------------------------------

class DigitStream {
 public:
  enum class Kind { Finite, EventuallyPeriodic, Generated };
  /// FourBlocks: 3 on [4^i, 2·4^i), 2 on [2·4^i, 3·4^i), 1 on [3·4^i, 4^{i+1}).
  /// ThreePowers: 3 at n = 3^i, 2 elsewhere.
  enum class Rule { FourBlocks, ThreePowers };

  static DigitStream finite(std::vector<int> word) {
    DigitStream s;
    s.kind_ = Kind::Finite;
    s.prefix_ = std::move(word);
    s.check();
    return s;
  }

  /// Normalizes to minimal preperiod and primitive period.
  static DigitStream periodic(std::vector<int> pre, std::vector<int> per) {
    if (per.empty()) throw Error(ErrorKind::ValidationError, "empty period");
    DigitStream s;
    s.kind_ = Kind::EventuallyPeriodic;
    const std::size_t L = per.size();
    for (std::size_t d = 1; d <= L; ++d) {
      if (L % d) continue;
      bool ok = true;
      for (std::size_t i = d; i < L && ok; ++i) ok = per[i] == per[i - d];
      if (ok) {
        per.resize(d);
        break;
      }
    }
    while (!pre.empty() && pre.back() == per.back()) {
      pre.pop_back();
      std::rotate(per.begin(), per.end() - 1, per.end());
    }
    s.prefix_ = std::move(pre);
    s.period_ = std::move(per);
    s.check();
    return s;
  }

  static DigitStream generated(Rule r) {
    DigitStream s;
    s.kind_ = Kind::Generated;
    s.rule_ = r;
    return s;
  }

  Kind kind() const { return kind_; }
  Rule rule() const { return rule_; }
  const std::vector<int>& prefix() const { return prefix_; }
  const std::vector<int>& period() const { return period_; }

  bool has(std::uint64_t n) const { return kind_ != Kind::Finite || n <= prefix_.size(); }

  /// d_n, n ≥ 1.
  int at(std::uint64_t n) const {
    if (n == 0) throw Error(ErrorKind::ValidationError, "digits are indexed from 1");
    switch (kind_) {
      case Kind::Finite:
        if (n > prefix_.size()) throw Terminated(Boundary::Zero, prefix_.size());
        return prefix_[n - 1];
      case Kind::EventuallyPeriodic:
        if (n <= prefix_.size()) return prefix_[n - 1];
        return period_[(n - 1 - prefix_.size()) % period_.size()];
      case Kind::Generated:
        if (rule_ == Rule::FourBlocks) {
          std::uint64_t b = 1;
          while (b * 4 <= n) b *= 4;
          return n < 2 * b ? 3 : n < 3 * b ? 2 : 1;
        }
        return is_power_of_three(n) ? 3 : 2;
    }
    return 0;
  }

  /// Smallest k > n with d_k ≠ 2; nullopt when every later digit is 2.
  std::optional<std::uint64_t> next_non_two(std::uint64_t n) const {
    switch (kind_) {
      case Kind::Finite:
        for (std::uint64_t k = n + 1; k <= prefix_.size(); ++k)
          if (prefix_[k - 1] != 2) return k;
        throw Error(ErrorKind::Undecidable, "finite word ends before a digit other than 2");
      case Kind::EventuallyPeriodic: {
        const std::uint64_t end = std::max<std::uint64_t>(n, prefix_.size()) + period_.size();
        for (std::uint64_t k = n + 1; k <= end; ++k)
          if (at(k) != 2) return k;
        return std::nullopt;
      }
      case Kind::Generated:
        if (rule_ == Rule::FourBlocks) {
          std::uint64_t b = 1;
          while (b * 4 <= n + 1) b *= 4;
          const std::uint64_t k = n + 1;
          return (k >= 2 * b && k < 3 * b) ? 3 * b : k;
        } else {
          std::uint64_t p = 1;
          while (p <= n) p *= 3;
          return p;
        }
    }
    return std::nullopt;
  }

  std::string str() const {
    auto word = [](const std::vector<int>& w) {
      std::string s;
      for (int d : w) s += static_cast<char>('0' + d);
      return s;
    };
    switch (kind_) {
      case Kind::Finite: return "[" + word(prefix_) + "]";
      case Kind::EventuallyPeriodic:
        return "[" + word(prefix_) + "(" + word(period_) + ")^∞]";
      case Kind::Generated: return rule_ == Rule::FourBlocks ? "four-blocks" : "three-powers";
    }
    return "";
  }

 private:
  static bool is_power_of_three(std::uint64_t n) {
    while (n % 3 == 0) n /= 3;
    return n == 1;
  }
  void check() const {
    for (int d : prefix_) digit_matrix(d);
    for (int d : period_) digit_matrix(d);
  }

  Kind kind_ = Kind::Finite;
  Rule rule_ = Rule::FourBlocks;
  std::vector<int> prefix_;
  std::vector<int> period_;
};

/// sign(α_n − 1) from the digits alone: A_d is increasing, 1 = [2^∞], so the
/// first digit after n that differs from 2 decides.
inline int compare_tail_to_one(const DigitStream& s, std::uint64_t n) {
  auto k = s.next_non_two(n);
  if (!k) return 0;
  return s.at(*k) == 1 ? -1 : 1;
}

/// Product A_{d_{n+1}}···A_{d_{n+k}}; α_n lies between its images of 0 and ∞.
inline Mat2 lookahead(const DigitStream& s, std::uint64_t n, std::uint64_t k) {
  Mat2 L;
  for (std::uint64_t j = n + 1; j <= n + k; ++j) L *= digit_matrix(s.at(j));
  return L;
}

// ---------------------------------------------------------------------------

/// Iterates G_n for a positive surd or a digit stream, keeping only the current state.
class Walker {
 public:
  explicit Walker(Surd alpha) : tail_(std::move(alpha)) {
    if (sign(*tail_) <= 0) throw Error(ErrorKind::DomainError, "expansion needs α > 0");
  }
  explicit Walker(DigitStream s) : stream_(std::move(s)) {}

  std::uint64_t n() const { return n_; }
  const Mat2& G() const { return G_; }
  bool exact() const { return tail_.has_value(); }
  const DigitStream* stream() const { return stream_ ? &*stream_ : nullptr; }

  /// α_n; only for the surd backend.
  const Surd& tail() const {
    if (!tail_) throw Error(ErrorKind::DomainError, "digit-stream input has no exact tail");
    return *tail_;
  }

  /// d_{n+1}.
  int peek() {
    if (!next_) {
      if (tail_) {
        try {
          next_ = next_digit(*tail_);
        } catch (const Terminated& t) {
          throw Terminated(t.boundary, n_);
        }
      } else {
        if (!stream_->has(n_ + 1)) throw Terminated(Boundary::Zero, n_);
        next_ = Step{stream_->at(n_ + 1), Surd()};
      }
    }
    return next_->digit;
  }

  void advance() {
    const int d = peek();
    G_ *= digit_matrix(d);
    if (tail_) tail_ = std::move(next_->tail);
    next_.reset();
    ++n_;
  }

  /// sign(α_n − 1).
  int tail_vs_one() const {
    if (tail_) return sign(*tail_ - Surd(1));
    return compare_tail_to_one(*stream_, n_);
  }

  /// sign(α*_n − 1) with α*_n = w_n/u_n; u_n = 0 means α*_n = ∞.
  int star_vs_one() const {
    if (G_.u.is_zero()) return 1;
    return sign(G_.w - G_.u);
  }

  /// α*_n, or nullopt for ∞.
  std::optional<Surd> star() const {
    if (G_.u.is_zero()) return std::nullopt;
    return Surd(QRt2::ratio(G_.w, G_.u));
  }

  std::optional<H4Fraction> tu() const { return H4Fraction::from_pair(G_.t, G_.u); }
  std::optional<H4Fraction> vw() const { return H4Fraction::from_pair(G_.v, G_.w); }

  /// Enclosure [lo, hi] of α_n (hi may be +∞ reported as nullopt), diagnostics only.
  std::pair<mpf_class, std::optional<mpf_class>> tail_enclosure(std::uint64_t k,
                                                                unsigned bits = kDefaultBits) const {
    if (tail_) {
      mpf_class x = to_mpf(*tail_, bits);
      return {x, x};
    }
    const Mat2 L = lookahead(*stream_, n_, k);
    mpf_class lo(0, bits);
    lo = to_mpf(L.v, bits) / to_mpf(L.w, bits);
    if (L.u.is_zero()) return {lo, std::nullopt};
    mpf_class hi(0, bits);
    hi = to_mpf(L.t, bits) / to_mpf(L.u, bits);
    return {lo, hi};
  }

 private:
  std::optional<Surd> tail_;
  std::optional<DigitStream> stream_;
  std::uint64_t n_ = 0;
  Mat2 G_;
  std::optional<Step> next_;
};

/// First `count` digits; stops early at termination, reporting it.
struct Prefix {
  std::vector<int> digits;
  std::optional<Boundary> terminated;
};

inline Prefix expand(Walker w, std::uint64_t count) {
  Prefix out;
  try {
    while (out.digits.size() < count) {
      out.digits.push_back(w.peek());
      w.advance();
    }
  } catch (const Terminated& t) {
    out.terminated = t.boundary;
  }
  return out;
}

/// Exact tail-state repetition. The first repeat gives the minimal preperiod
/// and the primitive period directly.
inline DigitStream detect_period(const Surd& alpha, std::uint64_t cap = 10000) {
  Walker w(alpha);
  std::unordered_map<std::string, std::uint64_t> seen;
  std::vector<int> digits;
  seen.emplace(w.tail().key(), 0);
  while (digits.size() < cap) {
    digits.push_back(w.peek());
    w.advance();
    auto [it, fresh] = seen.emplace(w.tail().key(), w.n());
    if (!fresh) {
      const auto i = it->second;
      std::vector<int> pre(digits.begin(), digits.begin() + static_cast<std::ptrdiff_t>(i));
      std::vector<int> per(digits.begin() + static_cast<std::ptrdiff_t>(i), digits.end());
      return DigitStream::periodic(std::move(pre), std::move(per));
    }
  }
  throw Error(ErrorKind::CapExceeded, "no period within " + std::to_string(cap) + " digits");
}

/// Shift by T^k into (0, √2): k = −⌊α/√2⌋.
struct Normalized {
  Int k;
  Surd rep;
  bool in_qh4;  // α/√2 is an integer, so rep = 0
};

inline Normalized normalize_alpha(const Surd& alpha) {
  const Surd sqrt2(ZRt2::sqrt2());
  const Int k = -floor(alpha / sqrt2);
  Surd rep = alpha + Surd(ZRt2(Int(0), k));
  const bool hit = sign(rep) == 0;
  return {k, std::move(rep), hit};
}

/// Shift only when needed: α > 0 stays, otherwise normalize.
inline Normalized make_positive(const Surd& alpha) {
  if (sign(alpha) > 0) return {Int(0), alpha, false};
  return normalize_alpha(alpha);
}

/// Number of leading digits 3, i.e. m(α) with α ∈ (m√2, (m+1)√2) for α ∉ Q(H4).
inline std::uint64_t leading_threes(Walker w) {
  std::uint64_t m = 0;
  while (w.peek() == 3) {
    w.advance();
    ++m;
  }
  return m;
}

}  // namespace h4
