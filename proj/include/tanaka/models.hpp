#ifndef TANAKA_MODELS_HPP
#define TANAKA_MODELS_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tanaka/flag.hpp"
#include "tanaka/model.hpp"

namespace tanaka {

/// A constructed model together with its provenance.
struct JetModel {
  enum class Kind { cartan_jet, monge, mixed_jet, product_with_jets };
  Kind kind;
  std::vector<int> params;
  Model model;
  std::string notes;
};

/// Cartan distribution C_k on J^k(R,R): chart (x, y0..yk),
/// frame <d/dx + sum y_{i+1} d/dy_i, d/dy_k>.
JetModel cartan_jet(int k);

/// Monge model E_{m,n} (y^(m) = (z^(n))^2): chart (x, y..y_{m-1}, z..z_n),
/// rank-2 frame <D_x, d/dz_n>.
JetModel monge(int m, int n);

/// Rank-3 Cartan distribution on the mixed jets J^{m,n}(R,R^2).
JetModel mixed_jet(int m, int n);

/// Appends a J^l(R,R) factor to a Monge model: coordinates w..w_l, frame
/// <D_x + sum w_{j+1} d/dw_j, d/dz_n, d/dw_l>.
JetModel product_with_jets(const JetModel& base, int l);

/// One symmetry field of the (1,3) Monge model, tagged with its grade.
struct GradedField {
  std::string name;
  int grade;
  VectorField field;
};

/// The (1,3) Monge model with its full 11-dimensional symmetry basis,
/// grades -4..1.
std::pair<JetModel, std::vector<GradedField>> e13_with_symmetries();

/// Affine rank-2 prolongation <U + t V, d/dt> of a frame <U, V> with marked
/// section V (role "section"); the result marks the new vertical field.
Model prolong_rank2(const Model& base);

enum class Rank3Type { Ia, Ib, II };

/// Affine rank-3 prolongations; the base must mark fields "X", "Y", "Z".
/// Ia: <Y, d/dt, Z + tX>; Ib: <X, d/dt, Z + tY>; II: <d/du, d/dv, Z + uX + vY>.
Model prolong_rank3(const Model& base, Rank3Type type);

/// True iff the weak growth vector at p is (2,1,1,...,1) filling the chart.
bool goursat_test(const DerivedFlag& df, const PointQ& p);

struct DeprolongationWitness {
  std::optional<std::vector<Rational>> direction; // in Delta(p)
  bool degenerate_length2 = false;                // kappa = 2: every direction works
};

/// A direction of Delta(p) inside the Cauchy characteristic space of Delta_2,
/// when one exists; present iff the growth begins (2,1,1,...).
DeprolongationWitness deprolongation_witness(const DerivedFlag& df, const PointQ& p);

} // namespace tanaka

#endif
