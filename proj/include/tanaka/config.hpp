#ifndef TANAKA_CONFIG_HPP
#define TANAKA_CONFIG_HPP

#include <cstdint>
#include <string>

namespace tanaka {

inline constexpr const char* kVersion = "0.1.0";

/// Resolved run configuration; every report embeds a copy so that verdicts
/// are reproducible.
struct Config {
  int max_degree = 10;           // prolongation level cap
  int probe_samples = 8;         // random probe points besides the base point
  uint64_t seed = 0;
  long long groebner_budget = 50000; // reduction steps per chart
  int degree_cap = 64;           // polynomial total-degree guard
  int kappa_cap = 0;             // derived-flag depth cap; 0 = chart dimension
  int cauchy_degree_bound = -1;  // -1 = max frame degree + 2
  int unknown_cap = 20000;       // prolongation unknown-count guard
  int grid_radius = 2;           // covector grid entries in [-r, r]
  int random_covectors = 64;     // seeded random covectors after the grid
  long long minor_cap = 2000;    // max maximal-minor count before "undecided"
  std::string output = "text";   // "text" or "json"
};

} // namespace tanaka

#endif
