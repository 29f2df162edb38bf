#ifndef TANAKA_MODELIO_HPP
#define TANAKA_MODELIO_HPP

#include <string>

#include "tanaka/fintype.hpp"
#include "tanaka/gnla.hpp"
#include "tanaka/model.hpp"

namespace tanaka {

/// Parses the model DSL. Statements are line-oriented:
///   model NAME
///   coords x y z1
///   field U = d/dx + 1/2 x^2 d/dz1
///   distribution D = [U, V]
///   marked section = V
///   point 0 -1/2 0
/// Expressions are Q-linear combinations of monomial * basis terms with
/// + - * ^ (integer exponents), rational literals a/b, juxtaposition as
/// multiplication, and references to previously defined fields.
/// Errors carry 1-based line/column positions.
Model parse_model(const std::string& text);

/// Canonical rendering; parse_model(print_model(m)) is structurally equal to m.
std::string print_model(const Model& m);

/// Parses a single field expression on the chart of `m` (with its fields in
/// scope), e.g. for check-sym arguments.
VectorField parse_field_expression(const Model& m, const std::string& text);

/// Deterministic JSON rendering of a finiteness report (schema v1).
std::string emit_report(const FinitenessReport& r);

/// Human-readable one-screen summary.
std::string render_text(const FinitenessReport& r);

/// JSON rendering of a GNLA: dims, labels, nonzero structure constants.
std::string gnla_to_json(const GNLA& a);

/// Parses "v1,v2,..." or "v1 v2 ..." into a point on the chart.
PointQ parse_point(const Chart& chart, const std::string& text);

} // namespace tanaka

#endif
