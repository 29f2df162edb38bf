#include "tanaka/polynomial.hpp"

#include <atomic>
#include <numeric>
#include <sstream>

#include "tanaka/errors.hpp"

namespace tanaka {

namespace {
std::atomic<int> g_degree_cap{64};

int degree_of(const Exponents& e) {
  return std::accumulate(e.begin(), e.end(), 0);
}
} // namespace

bool GrevlexLess::operator()(const Exponents& a, const Exponents& b) const {
  const int da = degree_of(a), db = degree_of(b);
  if (da != db) return da < db;
  // equal degree: a < b iff the rightmost nonzero entry of a - b is positive
  for (size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] > b[i];
  }
  return false;
}

int Polynomial::degree_cap() { return g_degree_cap.load(); }
void Polynomial::set_degree_cap(int cap) {
  if (cap < 1) throw InputError("degree cap must be positive");
  g_degree_cap.store(cap);
}

Polynomial Polynomial::constant(Chart chart, const Rational& c) {
  Polynomial p(std::move(chart));
  if (!c.is_zero()) p.terms_.emplace(Exponents(p.chart_.size(), 0), c);
  return p;
}

Polynomial Polynomial::variable(Chart chart, size_t index) {
  if (index >= chart.size()) throw InputError("variable index out of range");
  Polynomial p(std::move(chart));
  Exponents e(p.chart_.size(), 0);
  e[index] = 1;
  p.terms_.emplace(std::move(e), Rational(1));
  return p;
}

Polynomial Polynomial::monomial(Chart chart, Exponents e, const Rational& c) {
  if (e.size() != chart.size()) throw InputError("exponent vector length mismatch");
  for (int x : e)
    if (x < 0) throw InputError("negative exponent");
  if (degree_of(e) > degree_cap()) throw CapError("monomial exceeds degree cap");
  Polynomial p(std::move(chart));
  if (!c.is_zero()) p.terms_.emplace(std::move(e), c);
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && degree_of(terms_.begin()->first) == 0);
}

Rational Polynomial::constant_term() const {
  if (terms_.empty()) return Rational(0);
  const auto it = terms_.find(Exponents(chart_.size(), 0));
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational Polynomial::coeff(const Exponents& e) const {
  const auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

int Polynomial::total_degree() const {
  if (terms_.empty()) return -1;
  return degree_of(terms_.rbegin()->first);
}

void Polynomial::check_chart(const Polynomial& o) const {
  if (chart_ != o.chart_) throw InputError("polynomial chart mismatch");
}

void Polynomial::insert_term(const Exponents& e, const Rational& c) {
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    if (!c.is_zero()) terms_.emplace(e, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  Polynomial r = *this;
  r += o;
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  check_chart(o);
  for (const auto& [e, c] : o.terms_) insert_term(e, c);
  return *this;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  Polynomial r = *this;
  r -= o;
  return r;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  check_chart(o);
  for (const auto& [e, c] : o.terms_) insert_term(e, -c);
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial r(chart_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

Polynomial Polynomial::operator*(const Rational& c) const {
  Polynomial r(chart_);
  if (c.is_zero()) return r;
  for (const auto& [e, coeff] : terms_) r.terms_.emplace(e, coeff * c);
  return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  check_chart(o);
  if (is_zero() || o.is_zero()) return Polynomial(chart_);
  if (total_degree() + o.total_degree() > degree_cap())
    throw CapError("polynomial product exceeds degree cap (" +
                   std::to_string(degree_cap()) + ")");
  Polynomial r(chart_);
  Exponents e(chart_.size());
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : o.terms_) {
      for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r.insert_term(e, ca * cb);
    }
  }
  return r;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial r = Polynomial::constant(chart_, Rational(1));
  Polynomial base = *this;
  while (e > 0) {
    if (e & 1u) r = r * base;
    if (e >>= 1u) base = base * base;
  }
  return r;
}

Polynomial Polynomial::derivative(size_t index) const {
  if (index >= chart_.size()) throw InputError("derivative index out of range");
  Polynomial r(chart_);
  for (const auto& [e, c] : terms_) {
    if (e[index] == 0) continue;
    Exponents d = e;
    d[index] -= 1;
    r.insert_term(d, c * Rational(e[index]));
  }
  return r;
}

Rational Polynomial::evaluate(const std::vector<Rational>& values) const {
  if (values.size() != chart_.size()) throw InputError("evaluation point length mismatch");
  Rational acc(0);
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] != 0) t *= tanaka::pow(values[i], static_cast<unsigned>(e[i]));
    }
    acc += t;
  }
  return acc;
}

Polynomial Polynomial::eliminate_variable(size_t index, const Rational& value) const {
  if (index >= chart_.size()) throw InputError("eliminate index out of range");
  Chart small = chart_;
  small.erase(small.begin() + static_cast<long>(index));
  Polynomial r(small);
  for (const auto& [e, c] : terms_) {
    Rational coeff = c;
    if (e[index] != 0) coeff *= tanaka::pow(value, static_cast<unsigned>(e[index]));
    if (coeff.is_zero()) continue;
    Exponents d = e;
    d.erase(d.begin() + static_cast<long>(index));
    r.insert_term(d, coeff);
  }
  return r;
}

std::string Polynomial::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // leading term first
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const Rational& c = it->second;
    if (first) {
      if (c.sign() < 0) os << "-";
      first = false;
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    const Rational a = c.abs();
    const bool has_vars = degree_of(it->first) > 0;
    if (a != Rational(1) || !has_vars) {
      os << a.str();
      if (has_vars) os << " ";
    }
    bool first_var = true;
    for (size_t i = 0; i < it->first.size(); ++i) {
      const int e = it->first[i];
      if (e == 0) continue;
      if (!first_var) os << " ";
      first_var = false;
      os << chart_[i];
      if (e > 1) os << "^" << e;
    }
  }
  return os.str();
}

} // namespace tanaka
