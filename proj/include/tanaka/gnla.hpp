#ifndef TANAKA_GNLA_HPP
#define TANAKA_GNLA_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tanaka/flag.hpp"

namespace tanaka {

/// Graded nilpotent Lie algebra m = g_{-1} + ... + g_{-depth} with exact
/// structure constants. Basis elements are numbered 0..dim-1 grouped by grade,
/// grade -1 first. Brackets are stored sparsely for index pairs i < j.
struct GNLA {
  int depth = 0;
  std::vector<int> dims;                // dims[0] = dim g_{-1}, ...
  std::vector<std::string> labels;      // one per basis element
  std::map<std::pair<int, int>, std::vector<std::pair<int, Rational>>> table;

  int dim_total() const;
  /// Grade of basis element i (negative).
  int grade_of(int index) const;
  /// Index range [begin, end) of the grade block (grade negative).
  std::pair<int, int> block(int grade) const;

  /// Bracket of two basis elements as a dense vector over the whole algebra.
  std::vector<Rational> bracket_basis(int i, int j) const;
  /// Bilinear extension to dense coefficient vectors.
  std::vector<Rational> bracket(const std::vector<Rational>& a,
                                const std::vector<Rational>& b) const;

  /// Checks grading of the table and the graded Jacobi identity exactly;
  /// throws ConsistencyError on failure.
  void validate() const;
};

/// The GNLA of the flag at a bracket-generating point, with representatives
/// chosen by the deterministic pivot order of flag_at.
GNLA gnla_at(const DerivedFlag& df, const PointQ& p);
GNLA gnla_at(const FlagAtPoint& fp, const DerivedFlag& df);

/// Deterministic serialization of dims and structure constants. Equal
/// fingerprints at two points mean the deterministic frame procedure produced
/// identical constants; differing fingerprints with equal growth vectors
/// leave the isomorphism question open (no isomorphism test is attempted).
std::string gnla_fingerprint(const GNLA& a);

/// True iff grade -1 generates every deeper grade under brackets.
bool check_fundamental(const GNLA& a);

/// Free nilpotent Lie algebra on n generators truncated at step k, built on a
/// Hall basis; labels are the Hall bracket words. Guarded by dim_cap.
GNLA free_gnla(int n, int k, int dim_cap = 4096);

/// Per-degree Hall basis sizes for the free Lie algebra on n generators;
/// independent enumeration, no structure constants.
std::vector<long long> hall_basis_sizes(int n, int k);

/// Dimension of the degree-k homogeneous component of the free Lie algebra on
/// n generators (Moebius / Witt formula).
long long witt_dim(int n, int k);

/// Total dimension of the step-k free nilpotent algebra: sum of witt_dim.
long long free_total_dim(int n, int k);

} // namespace tanaka

#endif
