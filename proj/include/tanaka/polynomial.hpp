#ifndef TANAKA_POLYNOMIAL_HPP
#define TANAKA_POLYNOMIAL_HPP

#include <map>
#include <string>
#include <vector>

#include "tanaka/rational.hpp"

namespace tanaka {

/// Ordered coordinate names of a chart.
using Chart = std::vector<std::string>;

/// Exponent vector; one entry per chart coordinate.
using Exponents = std::vector<int>;

/// Graded reverse lexicographic order (ascending; the leading monomial is maximal).
struct GrevlexLess {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

/// Sparse multivariate polynomial over Q on a fixed chart.
/// Terms are kept in grevlex order and never store a zero coefficient, so
/// printing is deterministic. A global total-degree cap guards against
/// runaway growth in iterated brackets.
class Polynomial {
public:
  using TermMap = std::map<Exponents, Rational, GrevlexLess>;

  Polynomial() = default; // zero polynomial on the empty chart
  explicit Polynomial(Chart chart) : chart_(std::move(chart)) {}

  static Polynomial constant(Chart chart, const Rational& c);
  static Polynomial variable(Chart chart, size_t index);
  static Polynomial monomial(Chart chart, Exponents e, const Rational& c);

  const Chart& chart() const { return chart_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  Rational coeff(const Exponents& e) const;
  int total_degree() const; // -1 for the zero polynomial

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(const Rational& c) const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  bool operator==(const Polynomial& o) const {
    return chart_ == o.chart_ && terms_ == o.terms_;
  }
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  Polynomial pow(unsigned e) const;

  /// Partial derivative with respect to chart coordinate `index`.
  Polynomial derivative(size_t index) const;

  Rational evaluate(const std::vector<Rational>& values) const;

  /// Substitute `value` for coordinate `index` and drop it from the chart.
  Polynomial eliminate_variable(size_t index, const Rational& value) const;

  /// Canonical rendering, leading term first: "1/2 x^2 y - z + 3".
  std::string str() const;

  static int degree_cap();
  static void set_degree_cap(int cap);

private:
  void insert_term(const Exponents& e, const Rational& c);
  void check_chart(const Polynomial& o) const;

  Chart chart_;
  TermMap terms_;
};

inline Polynomial operator*(const Rational& c, const Polynomial& p) { return p * c; }

} // namespace tanaka

#endif
