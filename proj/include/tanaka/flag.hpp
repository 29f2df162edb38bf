#ifndef TANAKA_FLAG_HPP
#define TANAKA_FLAG_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "tanaka/linalg.hpp"
#include "tanaka/vectorfield.hpp"

namespace tanaka {

/// Seeded probe points: the origin plus `samples` pseudo-random points with
/// small rational coordinates. Deterministic for a fixed seed.
std::vector<PointQ> default_probe_points(const Chart& chart, int samples, uint64_t seed);

/// Weak derived flag of a distribution, represented by module spanning sets.
/// levels[i] spans Delta_{i+1}; levels[0] is the input frame. Level growth
/// appends brackets of frame fields with the previous level only.
struct DerivedFlag {
  std::vector<VectorField> frame;
  std::vector<std::vector<VectorField>> levels;
  int kappa_cap = 0;
  bool capped = false; // kappa_cap hit before pointwise ranks stabilized
  std::vector<PointQ> probes;

  const Chart& chart() const { return frame.front().chart(); }
  int depth() const { return static_cast<int>(levels.size()); }
};

/// Builds spanning sets until the pointwise rank stabilizes at every probe
/// point, or kappa_cap levels are reached. kappa_cap <= 0 means chart dimension.
DerivedFlag derived_flag(std::vector<VectorField> frame, int kappa_cap,
                         std::vector<PointQ> probes);
DerivedFlag derived_flag(std::vector<VectorField> frame, int kappa_cap = 0,
                         int samples = 8, uint64_t seed = 0);

/// The evaluated flag at a point: nested adapted basis, growth vector, kappa.
struct FlagAtPoint {
  PointQ point;
  /// Rows: adapted basis vectors of the tangent space, grouped by level;
  /// the first cumulative[0] rows span Delta(p), the first cumulative[1]
  /// rows span Delta_2(p), and so on.
  Matrix<Rational> adapted;
  /// For each adapted row: (level index 0-based, field index within that level).
  std::vector<std::pair<int, int>> representative;
  std::vector<int> growth;     // incremental: dim g_{-1}, dim g_{-2}, ...
  std::vector<int> cumulative; // dim Delta_i(p)
  int kappa = 0;               // growth.size(); degree of nonholonomy when generating
  bool bracket_generating = false;

  /// Index range [begin, end) of adapted rows contributed by level (1-based).
  std::pair<int, int> block(int level) const;
  /// Coordinates of v in the adapted basis; throws if v is outside its span.
  std::vector<Rational> adapted_coordinates(const std::vector<Rational>& v) const;
};

FlagAtPoint flag_at(const DerivedFlag& df, const PointQ& p);

bool is_bracket_generating(const FlagAtPoint& fp);

struct RegularityProbe {
  std::vector<PointQ> points;
  std::vector<std::vector<int>> growth;
  bool regular_at_samples = false;
};

RegularityProbe regularity_probe(const DerivedFlag& df, const std::vector<PointQ>& points);

/// The subspace of Delta_level(p) of values zeta(p), where zeta ranges over
/// combinations of the level's spanning fields with polynomial coefficients of
/// total degree <= degree_bound, subject to [zeta, s](p) in Delta_level(p) for
/// every spanning field s. degree_bound < 0 selects max frame degree + 2.
std::vector<std::vector<Rational>> cauchy_characteristic_space(const DerivedFlag& df,
                                                               int level, const PointQ& p,
                                                               int degree_bound = -1);

} // namespace tanaka

#endif
