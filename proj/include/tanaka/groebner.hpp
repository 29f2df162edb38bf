#ifndef TANAKA_GROEBNER_HPP
#define TANAKA_GROEBNER_HPP

#include <vector>

#include "tanaka/polynomial.hpp"

namespace tanaka {

struct GroebnerResult {
  std::vector<Polynomial> basis;
  bool completed = false;        // false when the reduction budget ran out
  long long reductions_used = 0;
};

/// Buchberger with the normal selection strategy in the polynomials' native
/// degrevlex order. Every single top-reduction counts against the budget.
GroebnerResult groebner_basis(std::vector<Polynomial> generators, long long reduction_budget);

/// 1 is in the ideal iff the (possibly partial) basis contains a nonzero constant.
bool contains_one(const GroebnerResult& g);

/// Normal form of f modulo the set G; counts reductions against `budget`.
Polynomial normal_form(Polynomial f, const std::vector<Polynomial>& g, long long& budget);

} // namespace tanaka

#endif
