#pragma once

// Seeded random surds for sweeps.
//
// PRNG: std::mt19937_64 seeded with `seed`. Each candidate draws eight
// coefficients in the order P.a, P.b, Q.a, Q.b, D.a, D.b, S.a, S.b, each as
// (engine() mod (2·bound + 1)) − bound. Candidates with S = 0, D ≤ 0, a
// non-positive value or a value in √2·Q are dropped.

#include <cstdint>
#include <random>
#include <vector>

#include "h4/surd.hpp"

namespace h4 {

struct CorpusSpec {
  std::uint64_t seed = 1;
  std::size_t size = 100;
  long coeff_bound = 20;
};

inline std::vector<Surd> make_corpus(const CorpusSpec& spec) {
  if (spec.coeff_bound < 1) throw Error(ErrorKind::ValidationError, "coefficient bound must be positive");
  std::mt19937_64 engine(spec.seed);
  const auto span = static_cast<std::uint64_t>(2 * spec.coeff_bound + 1);
  auto draw = [&] { return static_cast<long>(engine() % span) - spec.coeff_bound; };
  auto pair = [&] {
    const long a = draw();
    const long b = draw();
    return ZRt2(a, b);
  };
  std::vector<Surd> out;
  out.reserve(spec.size);
  while (out.size() < spec.size) {
    const ZRt2 P = pair(), Q = pair(), D = pair(), S = pair();
    if (S.is_zero() || sign(D) <= 0) continue;
    Surd a = Surd::make(P, Q, D, S);
    if (sign(a) <= 0 || a.in_qh4()) continue;
    out.push_back(std::move(a));
  }
  return out;
}

inline std::vector<Surd> make_corpus(std::uint64_t seed, std::size_t size, long coeff_bound = 20) {
  return make_corpus(CorpusSpec{seed, size, coeff_bound});
}

}  // namespace h4
