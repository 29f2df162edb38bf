#ifndef TANAKA_TEST_UTIL_HPP
#define TANAKA_TEST_UTIL_HPP

#include <cstdint>
#include <vector>

#include "tanaka/polynomial.hpp"
#include "tanaka/vectorfield.hpp"

namespace tanaka::test {

// Deterministic 64-bit generator (splitmix64); identical streams on every platform.
struct Rng {
  uint64_t state;
  explicit Rng(uint64_t seed) : state(seed) {}
  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  // uniform in [lo, hi]
  long pick(long lo, long hi) {
    return lo + static_cast<long>(next() % static_cast<uint64_t>(hi - lo + 1));
  }
};

inline Rational random_rational(Rng& rng) {
  return Rational(rng.pick(-3, 3), rng.pick(1, 3));
}

inline Polynomial random_polynomial(Rng& rng, const Chart& chart, int max_degree) {
  Polynomial p(chart);
  const int nterms = static_cast<int>(rng.pick(1, 4));
  for (int t = 0; t < nterms; ++t) {
    Exponents e(chart.size(), 0);
    int budget = static_cast<int>(rng.pick(0, max_degree));
    while (budget > 0) {
      e[static_cast<size_t>(rng.pick(0, static_cast<long>(chart.size()) - 1))] += 1;
      --budget;
    }
    p += Polynomial::monomial(chart, e, random_rational(rng));
  }
  return p;
}

inline VectorField random_field(Rng& rng, const Chart& chart, int max_degree) {
  std::vector<Polynomial> comps;
  comps.reserve(chart.size());
  for (size_t i = 0; i < chart.size(); ++i)
    comps.push_back(random_polynomial(rng, chart, max_degree));
  return VectorField(chart, std::move(comps));
}

} // namespace tanaka::test

#endif
