#ifndef TANAKA_VECTORFIELD_HPP
#define TANAKA_VECTORFIELD_HPP

#include <string>
#include <vector>

#include "tanaka/polynomial.hpp"

namespace tanaka {

/// A point with exact rational coordinates on a named chart.
struct PointQ {
  Chart chart;
  std::vector<Rational> values;

  static PointQ origin(Chart chart) {
    const size_t n = chart.size();
    return PointQ{std::move(chart), std::vector<Rational>(n, Rational(0))};
  }

  bool operator==(const PointQ& o) const {
    return chart == o.chart && values == o.values;
  }
};

/// Tangent vector field with polynomial coefficients: one component per coordinate.
class VectorField {
public:
  VectorField() = default;
  explicit VectorField(Chart chart);
  VectorField(Chart chart, std::vector<Polynomial> components);

  /// The coordinate field d/dx_i.
  static VectorField coordinate(Chart chart, size_t index);

  const Chart& chart() const { return chart_; }
  const std::vector<Polynomial>& components() const { return components_; }
  const Polynomial& component(size_t i) const { return components_[i]; }
  bool is_zero() const;
  int max_degree() const; // max component degree, -1 for the zero field

  VectorField operator+(const VectorField& o) const;
  VectorField operator-(const VectorField& o) const;
  VectorField operator-() const;
  VectorField operator*(const Rational& c) const;
  VectorField operator*(const Polynomial& f) const;
  bool operator==(const VectorField& o) const {
    return chart_ == o.chart_ && components_ == o.components_;
  }
  bool operator!=(const VectorField& o) const { return !(*this == o); }

  std::string str() const; // canonical "d/dx + z3^2 d/dy" rendering

private:
  Chart chart_;
  std::vector<Polynomial> components_;
};

inline VectorField operator*(const Polynomial& f, const VectorField& x) { return x * f; }

/// Commutator [X, Y]; components sum_j (X_j dY_i/dx_j - Y_j dX_i/dx_j).
VectorField lie_bracket(const VectorField& x, const VectorField& y);

/// Value of the field at a rational point.
std::vector<Rational> evaluate(const VectorField& x, const PointQ& p);

/// Directional derivative X(f) = sum_j X_j df/dx_j.
Polynomial apply(const VectorField& x, const Polynomial& f);

} // namespace tanaka

#endif
