#ifndef TANAKA_FINTYPE_HPP
#define TANAKA_FINTYPE_HPP

#include <optional>
#include <string>
#include <vector>

#include "tanaka/config.hpp"
#include "tanaka/model.hpp"
#include "tanaka/prolong.hpp"
#include "tanaka/quadext.hpp"

namespace tanaka {

/// The subalgebra h_0 of g_0 acting trivially on every grade below -1,
/// presented by its restrictions to g_{-1}: n x n matrices, M(t,s) the
/// t-th coordinate of the image of the s-th basis vector.
struct H0Subspace {
  int n = 0;
  std::vector<Matrix<Rational>> basis;

  int dim() const { return static_cast<int>(basis.size()); }
};

H0Subspace h0(const Prolongation& pro);

/// Witness pair for a nonempty characteristic variety: the rank-1 matrix
/// q p^T lies in the span of h_0. Entries may live in a real quadratic
/// extension.
struct CharWitness {
  std::vector<QuadExt> p, q;
};

struct CharVerdict {
  enum class Kind { empty, nonempty, undecided } kind = Kind::undecided;
  std::optional<CharWitness> witness;
  bool complex_certificate = false; // nonempty via a proper chart ideal, no pair
  std::string stage;                // pipeline stage that decided or gave up
  long long budget_spent = 0;       // groebner reductions consumed
};

struct CharBudget {
  int grid_radius = 2;
  int random_covectors = 64;
  long long groebner_reductions = 50000;
  long long minor_cap = 2000;
  uint64_t seed = 0;
};

/// Decides whether the complexified span of h_0 contains a nonzero rank-1
/// matrix. Pipeline: trivial exits, rational witness grid, seeded random
/// covectors, then exact emptiness of the minor ideal chart by chart.
CharVerdict char_variety(const H0Subspace& h, const CharBudget& budget);

/// Growth-vector criterion: with n = growth[0], finite when
/// growth[0]+growth[1] > n(n-1)/2 + 2 (n > 2), or the growth begins (2,1,2)
/// (n = 2). Returns false when inconclusive.
bool theorem2_finite(const std::vector<int>& growth);

/// True when the growth vector is long enough for theorem2_finite to decide.
bool theorem2_applicable(const std::vector<int>& growth);

/// Symmetry-dimension bound for a distribution with free truncated GNLA of
/// rank n and step k; nullopt for the contact case (2,2), which is infinite.
std::optional<long long> symmetry_bound_free(int n, int k);

/// Everything cmd_analyze reports.
struct FinitenessReport {
  std::string model_name;
  PointQ point;
  std::vector<int> growth;
  std::vector<int> cumulative;
  int kappa = 0;
  bool bracket_generating = false;
  bool flag_capped = false;

  std::vector<int> tanaka_dims;
  bool tanaka_terminated = false;
  int tanaka_cap = 0;
  std::optional<long long> tanaka_total;

  int h0_dim = 0;
  CharVerdict char_verdict;

  std::optional<long long> theorem1_bound; // min sampled total, all terminated
  bool theorem2 = false;
  bool theorem2_conclusive = false;

  enum class Verdict { finite_char_variety, finite_theorem2, inconclusive };
  Verdict verdict = Verdict::inconclusive;

  struct Sample {
    PointQ point;
    std::vector<int> growth;
    bool bracket_generating = false;
    bool terminated = false;
    std::optional<long long> total;
    bool fingerprint_match = false; // structure constants equal the base point's
  };
  std::vector<Sample> samples;
  bool regular_at_samples = false;
  /// "constant" when every generating sample with the base growth vector
  /// reproduces the base structure constants under the deterministic frame
  /// procedure; otherwise "isomorphism_undetermined" (no isomorphism test).
  std::string symbol_fingerprint = "constant";

  uint64_t seed = 0;
  Config config;
};

/// Full pipeline at the base point plus seeded probe points. Throws InputError
/// when the distribution is not bracket-generating at the base point.
FinitenessReport finiteness_report(const Model& m, std::optional<PointQ> point,
                                   const Config& cfg);

} // namespace tanaka

#endif
