#include "tanaka/groebner.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "tanaka/errors.hpp"

namespace tanaka {

namespace {

const Exponents& leading_exp(const Polynomial& p) { return p.terms().rbegin()->first; }
const Rational& leading_coeff(const Polynomial& p) { return p.terms().rbegin()->second; }

bool divides(const Exponents& a, const Exponents& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Exponents exp_lcm(const Exponents& a, const Exponents& b) {
  Exponents r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

bool coprime(const Exponents& a, const Exponents& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > 0 && b[i] > 0) return false;
  return true;
}

int degree_of(const Exponents& e) {
  int d = 0;
  for (int x : e) d += x;
  return d;
}

// f - (t / lt(g)) * g for a term t of f that lt(g) divides
Polynomial reduce_term(const Polynomial& f, const Exponents& t, const Rational& tc,
                       const Polynomial& g) {
  Exponents diff = t;
  const Exponents& lg = leading_exp(g);
  for (size_t i = 0; i < diff.size(); ++i) diff[i] -= lg[i];
  const Rational factor = tc / leading_coeff(g);
  return f - Polynomial::monomial(f.chart(), diff, factor) * g;
}

} // namespace

Polynomial normal_form(Polynomial f, const std::vector<Polynomial>& g, long long& budget) {
  Polynomial remainder(f.chart());
  while (!f.is_zero()) {
    const Exponents lead = leading_exp(f);
    bool reduced = false;
    for (const Polynomial& gi : g) {
      if (gi.is_zero()) continue;
      if (!divides(leading_exp(gi), lead)) continue;
      if (budget <= 0) throw CapError("groebner reduction budget exhausted");
      --budget;
      f = reduce_term(f, lead, leading_coeff(f), gi);
      reduced = true;
      break;
    }
    if (!reduced) {
      // move the irreducible leading term to the remainder
      remainder += Polynomial::monomial(f.chart(), lead, f.coeff(lead));
      f -= Polynomial::monomial(f.chart(), lead, f.coeff(lead));
    }
  }
  return remainder;
}

GroebnerResult groebner_basis(std::vector<Polynomial> generators, long long reduction_budget) {
  GroebnerResult out;
  long long budget = reduction_budget;

  for (Polynomial& p : generators)
    if (!p.is_zero()) out.basis.push_back(std::move(p));
  if (out.basis.empty()) {
    out.completed = true;
    return out;
  }

  // pair queue keyed by (lcm degree, lcm, i, j): normal selection strategy
  using Key = std::tuple<int, Exponents, size_t, size_t>;
  struct KeyLess {
    bool operator()(const Key& a, const Key& b) const {
      if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) < std::get<0>(b);
      GrevlexLess less;
      if (std::get<1>(a) != std::get<1>(b)) return less(std::get<1>(a), std::get<1>(b));
      if (std::get<2>(a) != std::get<2>(b)) return std::get<2>(a) < std::get<2>(b);
      return std::get<3>(a) < std::get<3>(b);
    }
  };
  std::set<Key, KeyLess> queue;
  const auto push_pairs = [&](size_t j) {
    for (size_t i = 0; i < j; ++i) {
      const Exponents l = exp_lcm(leading_exp(out.basis[i]), leading_exp(out.basis[j]));
      queue.insert({degree_of(l), l, i, j});
    }
  };
  for (size_t j = 1; j < out.basis.size(); ++j) push_pairs(j);

  try {
    while (!queue.empty()) {
      const Key key = *queue.begin();
      queue.erase(queue.begin());
      const size_t i = std::get<2>(key), j = std::get<3>(key);
      const Polynomial &fi = out.basis[i], &fj = out.basis[j];
      if (coprime(leading_exp(fi), leading_exp(fj))) continue; // product criterion

      const Exponents l = std::get<1>(key);
      Exponents di = l, dj = l;
      for (size_t t = 0; t < l.size(); ++t) {
        di[t] -= leading_exp(fi)[t];
        dj[t] -= leading_exp(fj)[t];
      }
      const Polynomial spoly =
          Polynomial::monomial(fi.chart(), di, Rational(1) / leading_coeff(fi)) * fi -
          Polynomial::monomial(fj.chart(), dj, Rational(1) / leading_coeff(fj)) * fj;
      const Polynomial nf = normal_form(spoly, out.basis, budget);
      if (nf.is_zero()) continue;
      out.basis.push_back(nf);
      push_pairs(out.basis.size() - 1);
      if (nf.is_constant()) break; // unit ideal; no further pairs matter
    }
    out.completed = true;
  } catch (const CapError&) {
    out.completed = false;
  }
  out.reductions_used = reduction_budget - budget;
  return out;
}

bool contains_one(const GroebnerResult& g) {
  for (const Polynomial& p : g.basis)
    if (!p.is_zero() && p.is_constant()) return true;
  return false;
}

} // namespace tanaka
