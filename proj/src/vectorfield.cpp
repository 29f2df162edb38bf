#include "tanaka/vectorfield.hpp"

#include <sstream>

#include "tanaka/errors.hpp"

namespace tanaka {

VectorField::VectorField(Chart chart) : chart_(std::move(chart)) {
  components_.assign(chart_.size(), Polynomial(chart_));
}

VectorField::VectorField(Chart chart, std::vector<Polynomial> components)
    : chart_(std::move(chart)), components_(std::move(components)) {
  if (components_.size() != chart_.size())
    throw InputError("vector field component count differs from chart dimension");
  for (const Polynomial& p : components_)
    if (p.chart() != chart_) throw InputError("vector field component on wrong chart");
}

VectorField VectorField::coordinate(Chart chart, size_t index) {
  if (index >= chart.size()) throw InputError("coordinate index out of range");
  VectorField v(chart);
  v.components_[index] = Polynomial::constant(v.chart_, Rational(1));
  return v;
}

bool VectorField::is_zero() const {
  for (const Polynomial& p : components_)
    if (!p.is_zero()) return false;
  return true;
}

int VectorField::max_degree() const {
  int d = -1;
  for (const Polynomial& p : components_) d = std::max(d, p.total_degree());
  return d;
}

VectorField VectorField::operator+(const VectorField& o) const {
  if (chart_ != o.chart_) throw InputError("vector field chart mismatch");
  VectorField r(chart_);
  for (size_t i = 0; i < components_.size(); ++i)
    r.components_[i] = components_[i] + o.components_[i];
  return r;
}

VectorField VectorField::operator-(const VectorField& o) const {
  if (chart_ != o.chart_) throw InputError("vector field chart mismatch");
  VectorField r(chart_);
  for (size_t i = 0; i < components_.size(); ++i)
    r.components_[i] = components_[i] - o.components_[i];
  return r;
}

VectorField VectorField::operator-() const {
  VectorField r(chart_);
  for (size_t i = 0; i < components_.size(); ++i) r.components_[i] = -components_[i];
  return r;
}

VectorField VectorField::operator*(const Rational& c) const {
  VectorField r(chart_);
  for (size_t i = 0; i < components_.size(); ++i) r.components_[i] = components_[i] * c;
  return r;
}

VectorField VectorField::operator*(const Polynomial& f) const {
  if (f.chart() != chart_) throw InputError("scaling polynomial on wrong chart");
  VectorField r(chart_);
  for (size_t i = 0; i < components_.size(); ++i) r.components_[i] = components_[i] * f;
  return r;
}

std::string VectorField::str() const {
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < components_.size(); ++i) {
    const Polynomial& p = components_[i];
    if (p.is_zero()) continue;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
      const Rational& c = it->second;
      if (first) {
        if (c.sign() < 0) os << "-";
        first = false;
      } else {
        os << (c.sign() < 0 ? " - " : " + ");
      }
      const Rational a = c.abs();
      if (a != Rational(1)) os << a.str() << " ";
      for (size_t j = 0; j < it->first.size(); ++j) {
        const int e = it->first[j];
        if (e == 0) continue;
        os << chart_[j];
        if (e > 1) os << "^" << e;
        os << " ";
      }
      os << "d/d" << chart_[i];
    }
  }
  if (first) return "0";
  return os.str();
}

VectorField lie_bracket(const VectorField& x, const VectorField& y) {
  if (x.chart() != y.chart()) throw InputError("lie_bracket: chart mismatch");
  const size_t n = x.chart().size();
  std::vector<Polynomial> comps(n, Polynomial(x.chart()));
  for (size_t i = 0; i < n; ++i) {
    Polynomial acc(x.chart());
    for (size_t j = 0; j < n; ++j) {
      if (!x.component(j).is_zero()) acc += x.component(j) * y.component(i).derivative(j);
      if (!y.component(j).is_zero()) acc -= y.component(j) * x.component(i).derivative(j);
    }
    comps[i] = std::move(acc);
  }
  return VectorField(x.chart(), std::move(comps));
}

std::vector<Rational> evaluate(const VectorField& x, const PointQ& p) {
  if (x.chart() != p.chart) throw InputError("evaluate: chart mismatch");
  std::vector<Rational> v;
  v.reserve(x.components().size());
  for (const Polynomial& c : x.components()) v.push_back(c.evaluate(p.values));
  return v;
}

Polynomial apply(const VectorField& x, const Polynomial& f) {
  if (x.chart() != f.chart()) throw InputError("apply: chart mismatch");
  Polynomial acc(x.chart());
  for (size_t j = 0; j < x.chart().size(); ++j) {
    if (!x.component(j).is_zero()) acc += x.component(j) * f.derivative(j);
  }
  return acc;
}

} // namespace tanaka
