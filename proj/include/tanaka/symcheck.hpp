#ifndef TANAKA_SYMCHECK_HPP
#define TANAKA_SYMCHECK_HPP

#include <optional>
#include <utility>
#include <vector>

#include "tanaka/flag.hpp"
#include "tanaka/prolong.hpp"

namespace tanaka {

/// Certifies [X, Y_i] in span(frame) identically on the chart (wherever the
/// frame has full rank): all (r+1)-minors of [frame | [X,Y_i]] vanish as
/// polynomials. The frame must be pointwise independent at `base`.
bool is_symmetry(const VectorField& x, const std::vector<VectorField>& frame,
                 const PointQ& base);

/// Span of symmetry fields with exact constant structure constants when the
/// span closes under brackets.
struct SymmetryAlgebra {
  std::vector<VectorField> fields;
  bool closed = false;
  /// structure[i][j] = coefficients of [fields[i], fields[j]] in the fields;
  /// only meaningful when closed.
  std::vector<std::vector<std::vector<Rational>>> structure;
  std::optional<std::pair<int, int>> failed_pair; // first bracket that escaped

  int dim() const { return static_cast<int>(fields.size()); }
  /// Jacobi identity on the structure constants; throws ConsistencyError.
  void validate_jacobi() const;
};

SymmetryAlgebra closure(const std::vector<VectorField>& fields,
                        const std::vector<VectorField>& frame, const PointQ& base);

/// True iff every iterated derivative Y_1...Y_t(f) with t <= k and Y_j drawn
/// from the frame vanishes at p (t = 0 included: f(p) = 0).
bool vanishing_order_delta(const Polynomial& f, const std::vector<VectorField>& frame,
                           const PointQ& p, int k);

/// Evaluated iterated bracket [[..[X,Y_1],..],Y_t](p); psi(X, {}, p) = X(p).
std::vector<Rational> psi(const VectorField& x, const std::vector<VectorField>& args,
                          const PointQ& p);

struct FiltrationDegree {
  int value = 0;
  bool at_cap = false; // degree is ">= cap", not an exact value
};

/// Largest i with X in L(p)^i: the flag level of X(p) when X(p) != 0, else the
/// vanishing depth of the Psi maps on the Delta frame, up to `cap`.
FiltrationDegree filtration_degree(const VectorField& x, const DerivedFlag& df,
                                   const PointQ& p, int cap = 8);

/// The graded symbol of a symmetry at p: for negative degree the class of
/// X(p) in g_i; for non-negative degree the Psi tensor on the adapted
/// g_{-1} frame plus its certified membership in the computed g_i.
struct GradedSymbol {
  int degree = 0;
  bool at_cap = false;
  std::vector<Rational> class_coords;   // degree < 0: coordinates in the grade block
  std::vector<Rational> tensor;         // degree >= 0: flattened Psi tensor
  std::vector<Rational> membership;     // degree >= 0: coordinates in the g_i basis
};

GradedSymbol graded_symbol(const VectorField& x, const DerivedFlag& df,
                           const Prolongation& pro, const PointQ& p, int cap = 8);

} // namespace tanaka

#endif
