#ifndef TANAKA_PROLONG_HPP
#define TANAKA_PROLONG_HPP

#include <optional>
#include <vector>

#include "tanaka/gnla.hpp"

namespace tanaka {

/// One non-negative graded component g_k of the Tanaka prolongation.
/// A basis element is a tuple of homomorphisms u_i : g_i -> g_{k+i} (i < 0),
/// flattened into a single exact coordinate vector. The layout places the
/// matrix of u_{-i} at offset[i-1], stored source-major: the image of the
/// src-th basis vector of g_{-i} occupies target_dim[i-1] consecutive entries.
struct ProlongationLevel {
  int degree = 0;
  std::vector<int> target_dim; // per i = 1..kappa: dim of g_{degree-i}
  std::vector<int> offset;
  int total_unknowns = 0;
  std::vector<std::vector<Rational>> basis;

  int dim() const { return static_cast<int>(basis.size()); }
};

/// The algebraic prolongation m + g_0 + g_1 + ... of a fundamental GNLA.
class Prolongation {
public:
  enum class Status { terminated, capped };

  GNLA gnla;
  std::vector<ProlongationLevel> levels;
  Status status = Status::capped;
  int max_degree = 0;

  std::vector<int> level_dims() const;
  /// dim m + sum of level dims; only defined when terminated.
  std::optional<long long> total_dim() const;

  /// Dimension of g_d for d in [-kappa, levels_computed).
  int space_dim(int d) const;
  int levels_computed() const { return static_cast<int>(levels.size()); }

  /// Value of the degree-k element with the given basis coordinates on the
  /// GNLA basis vector j, as coordinates in g_{k + grade(j)}.
  std::vector<Rational> value_on(int k, const std::vector<Rational>& coords, int j) const;

  /// A homogeneous element of the prolongation: negative degrees carry grade
  /// block coordinates of the GNLA, non-negative degrees carry level basis
  /// coordinates.
  struct Element {
    int degree;
    std::vector<Rational> coords;
  };

  Element zero_element(int degree) const;

  /// Graded bracket. Negative-negative pairs use the GNLA bracket; an element
  /// of non-negative degree acts on negative elements as the stored
  /// homomorphism; two non-negative elements bracket via the Jacobi recursion
  /// and are resolved in the computed basis by fundamentality.
  Element bracket(const Element& u, const Element& v) const;

  /// The tensor obtained by letting a degree-d element (d >= 0) act
  /// iteratively on grade -1: indices (j_1 .. j_{d+1}, value), flattened.
  std::vector<Rational> restriction_tensor(const Element& u) const;

  /// The grading derivation (multiplication by i on g_i) expressed in the
  /// computed g_0 basis; it is always a member.
  Element grading_element() const;
};

/// Exact nullspace of the Leibniz constraints at degree k, given levels 0..k-1.
ProlongationLevel prolong_step(const GNLA& a, const std::vector<ProlongationLevel>& previous,
                               int k, int unknown_cap = 20000);

/// Iterates prolong_step until some level vanishes (terminated; all higher
/// levels vanish too) or max_degree is reached (capped).
Prolongation tanaka_prolongation(const GNLA& a, int max_degree = 10, int unknown_cap = 20000);

} // namespace tanaka

#endif
