#include "tanaka/symcheck.hpp"

#include <algorithm>
#include <set>

#include "tanaka/errors.hpp"

namespace tanaka {

namespace {

Polynomial poly_det(const std::vector<std::vector<const Polynomial*>>& m,
                    const std::vector<size_t>& rows, const std::vector<size_t>& cols) {
  const Chart& chart = m[rows[0]][cols[0]]->chart();
  if (rows.size() == 1) return *m[rows[0]][cols[0]];
  Polynomial acc(chart);
  const std::vector<size_t> sub_rows(rows.begin() + 1, rows.end());
  for (size_t c = 0; c < cols.size(); ++c) {
    const Polynomial& e = *m[rows[0]][cols[c]];
    if (e.is_zero()) continue;
    std::vector<size_t> sub_cols;
    for (size_t t = 0; t < cols.size(); ++t)
      if (t != c) sub_cols.push_back(cols[t]);
    const Polynomial minor = poly_det(m, sub_rows, sub_cols);
    acc += (c % 2 == 0) ? e * minor : -(e * minor);
  }
  return acc;
}

void check_frame(const std::vector<VectorField>& frame, const Chart& chart) {
  if (frame.empty()) throw InputError("empty frame");
  for (const VectorField& f : frame)
    if (f.chart() != chart) throw InputError("frame chart mismatch");
}

} // namespace

bool is_symmetry(const VectorField& x, const std::vector<VectorField>& frame,
                 const PointQ& base) {
  const Chart& chart = x.chart();
  check_frame(frame, chart);
  if (base.chart != chart) throw InputError("is_symmetry: base point chart mismatch");

  const size_t n = chart.size();
  const size_t r = frame.size();
  {
    Matrix<Rational> at_base;
    for (const VectorField& f : frame) at_base.append_row(evaluate(f, base));
    if (rank(at_base) != r)
      throw InputError("is_symmetry: frame is not pointwise independent at the base point");
  }
  if (r + 1 > n) return true; // span is everything wherever the frame has full rank

  for (const VectorField& y : frame) {
    const VectorField b = lie_bracket(x, y);
    // columns: frame fields then the bracket
    std::vector<std::vector<const Polynomial*>> cols_mat(n);
    for (size_t row = 0; row < n; ++row) {
      cols_mat[row].resize(r + 1);
      for (size_t c = 0; c < r; ++c) cols_mat[row][c] = &frame[c].component(row);
      cols_mat[row][r] = &b.component(row);
    }
    std::vector<size_t> cols(r + 1);
    for (size_t c = 0; c <= r; ++c) cols[c] = c;

    // all (r+1)-row choices
    std::vector<size_t> combo(r + 1);
    for (size_t i = 0; i <= r; ++i) combo[i] = i;
    bool done = false;
    while (!done) {
      if (!poly_det(cols_mat, combo, cols).is_zero()) return false;
      long i = static_cast<long>(r);
      while (i >= 0 &&
             combo[static_cast<size_t>(i)] == n - (r + 1) + static_cast<size_t>(i))
        --i;
      if (i < 0) {
        done = true;
      } else {
        ++combo[static_cast<size_t>(i)];
        for (size_t j = static_cast<size_t>(i) + 1; j <= r; ++j) combo[j] = combo[j - 1] + 1;
      }
    }
  }
  return true;
}

SymmetryAlgebra closure(const std::vector<VectorField>& fields,
                        const std::vector<VectorField>& frame, const PointQ& base) {
  if (fields.empty()) throw InputError("closure: no fields");
  const Chart& chart = fields.front().chart();
  for (const VectorField& f : fields) {
    if (!is_symmetry(f, frame, base))
      throw InputError("closure: input field is not a symmetry of the frame");
  }

  SymmetryAlgebra alg;
  alg.fields = fields;
  alg.closed = true;
  const size_t m = fields.size();
  alg.structure.assign(m, std::vector<std::vector<Rational>>(
                              m, std::vector<Rational>(m, Rational(0))));

  // one shared coefficient matrix: unknown lambda with sum lambda_k F_k = B
  std::vector<std::set<Exponents, GrevlexLess>> monos(chart.size());
  for (const VectorField& f : fields)
    for (size_t c = 0; c < chart.size(); ++c)
      for (const auto& [e, coeff] : f.component(c).terms()) monos[c].insert(e);

  for (size_t i = 0; i < m && alg.closed; ++i) {
    for (size_t j = i + 1; j < m && alg.closed; ++j) {
      const VectorField b = lie_bracket(fields[i], fields[j]);
      // bracket monomials must already appear in the candidate span
      bool representable = true;
      for (size_t c = 0; c < chart.size() && representable; ++c)
        for (const auto& [e, coeff] : b.component(c).terms())
          if (!monos[c].count(e)) representable = false;

      std::optional<std::vector<Rational>> sol;
      if (representable) {
        size_t rows = 0;
        for (const auto& s : monos) rows += s.size();
        Matrix<Rational> sys(rows, m);
        std::vector<Rational> rhs(rows);
        size_t row = 0;
        for (size_t c = 0; c < chart.size(); ++c) {
          for (const Exponents& e : monos[c]) {
            for (size_t k = 0; k < m; ++k)
              sys.at(row, k) = fields[k].component(c).coeff(e);
            rhs[row] = b.component(c).coeff(e);
            ++row;
          }
        }
        sol = solve(sys, rhs);
      }
      if (!sol) {
        alg.closed = false;
        alg.failed_pair = {static_cast<int>(i), static_cast<int>(j)};
        break;
      }
      for (size_t k = 0; k < m; ++k) {
        alg.structure[i][j][k] = (*sol)[k];
        alg.structure[j][i][k] = -(*sol)[k];
      }
    }
  }
  if (!alg.closed) alg.structure.clear();
  return alg;
}

void SymmetryAlgebra::validate_jacobi() const {
  if (!closed) throw ConsistencyError("validate_jacobi: algebra is not closed");
  const size_t m = fields.size();
  const auto bracket_coords = [&](const std::vector<Rational>& a, size_t j) {
    std::vector<Rational> out(m, Rational(0));
    for (size_t i = 0; i < m; ++i) {
      if (a[i].is_zero()) continue;
      for (size_t k = 0; k < m; ++k) out[k] += a[i] * structure[i][j][k];
    }
    return out;
  };
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = i + 1; j < m; ++j) {
      for (size_t k = j + 1; k < m; ++k) {
        std::vector<Rational> acc = bracket_coords(structure[i][j], k);
        const auto t2 = bracket_coords(structure[j][k], i);
        const auto t3 = bracket_coords(structure[k][i], j);
        for (size_t t = 0; t < m; ++t) {
          if (!(acc[t] + t2[t] + t3[t]).is_zero())
            throw ConsistencyError("symmetry algebra violates the Jacobi identity");
        }
      }
    }
  }
}

bool vanishing_order_delta(const Polynomial& f, const std::vector<VectorField>& frame,
                           const PointQ& p, int k) {
  check_frame(frame, f.chart());
  if (k < 0) throw InputError("vanishing_order_delta: k must be >= 0");
  std::vector<Polynomial> current{f};
  for (int t = 0; t <= k; ++t) {
    for (const Polynomial& g : current)
      if (!g.evaluate(p.values).is_zero()) return false;
    if (t == k) break;
    std::vector<Polynomial> next;
    next.reserve(current.size() * frame.size());
    for (const VectorField& y : frame)
      for (const Polynomial& g : current) next.push_back(apply(y, g));
    current = std::move(next);
  }
  return true;
}

std::vector<Rational> psi(const VectorField& x, const std::vector<VectorField>& args,
                          const PointQ& p) {
  VectorField acc = x;
  for (const VectorField& y : args) acc = lie_bracket(acc, y);
  return evaluate(acc, p);
}

namespace {

bool all_zero(const std::vector<Rational>& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& r) { return r.is_zero(); });
}

// iterated brackets [[..[x, Y_{j_1}]..], Y_{j_t}] for all frame tuples, level by level
std::vector<VectorField> extend_brackets(const std::vector<VectorField>& prev,
                                         const std::vector<VectorField>& frame) {
  std::vector<VectorField> next;
  next.reserve(prev.size() * frame.size());
  for (const VectorField& b : prev)
    for (const VectorField& y : frame) next.push_back(lie_bracket(b, y));
  return next;
}

} // namespace

FiltrationDegree filtration_degree(const VectorField& x, const DerivedFlag& df,
                                   const PointQ& p, int cap) {
  if (!is_symmetry(x, df.frame, p))
    throw InputError("filtration_degree: the field is not a symmetry of the frame");
  const FlagAtPoint fp = flag_at(df, p);
  if (!fp.bracket_generating)
    throw InputError("filtration_degree: flag is not bracket-generating at the point");

  const std::vector<Rational> v = evaluate(x, p);
  if (!all_zero(v)) {
    const auto coords = fp.adapted_coordinates(v);
    int level = 1;
    for (int lev = fp.kappa; lev >= 1; --lev) {
      const auto [b, e] = fp.block(lev);
      bool nonzero = false;
      for (int t = b; t < e; ++t) nonzero |= !coords[static_cast<size_t>(t)].is_zero();
      if (nonzero) {
        level = lev;
        break;
      }
    }
    return {-level, false};
  }

  std::vector<VectorField> brackets{x};
  int degree = 0;
  while (degree < cap) {
    brackets = extend_brackets(brackets, df.frame); // now length-(degree+1) tuples
    bool vanish = true;
    for (const VectorField& b : brackets)
      if (!all_zero(evaluate(b, p))) {
        vanish = false;
        break;
      }
    if (!vanish) return {degree, false};
    ++degree;
  }
  return {cap, true};
}

GradedSymbol graded_symbol(const VectorField& x, const DerivedFlag& df,
                           const Prolongation& pro, const PointQ& p, int cap) {
  GradedSymbol sym;
  const FiltrationDegree deg = filtration_degree(x, df, p, cap);
  sym.degree = deg.value;
  sym.at_cap = deg.at_cap;
  if (deg.at_cap) return sym;

  const FlagAtPoint fp = flag_at(df, p);
  if (deg.value < 0) {
    const auto coords = fp.adapted_coordinates(evaluate(x, p));
    const auto [b, e] = fp.block(-deg.value);
    sym.class_coords.assign(coords.begin() + b, coords.begin() + e);
    return sym;
  }

  // the adapted g_{-1} frame: the level-1 representative fields
  const int n1 = fp.growth[0];
  std::vector<VectorField> basis_fields;
  for (int t = 0; t < n1; ++t) {
    const auto [lev, idx] = fp.representative[static_cast<size_t>(t)];
    basis_fields.push_back(df.levels[static_cast<size_t>(lev)][static_cast<size_t>(idx)]);
  }

  // tensor layout matches Prolongation::restriction_tensor: the outermost
  // index is the last Psi argument (the symbol sends Z to Psi(.., Z))
  const int order = deg.value + 1;
  std::vector<int> tuple(static_cast<size_t>(order), 0);
  while (true) {
    std::vector<VectorField> args;
    for (size_t t = tuple.size(); t-- > 0;)
      args.push_back(basis_fields[static_cast<size_t>(tuple[t])]);
    const auto val = psi(x, args, p);
    const auto coords = fp.adapted_coordinates(val);
    for (size_t t = static_cast<size_t>(n1); t < coords.size(); ++t)
      if (!coords[t].is_zero())
        throw ConsistencyError("Psi value escapes Delta at the point (range property violated)");
    sym.tensor.insert(sym.tensor.end(), coords.begin(), coords.begin() + n1);

    int i = order - 1;
    while (i >= 0 && tuple[static_cast<size_t>(i)] == n1 - 1) {
      tuple[static_cast<size_t>(i)] = 0;
      --i;
    }
    if (i < 0) break;
    ++tuple[static_cast<size_t>(i)];
  }

  // membership certificate: the tensor lies in the image of the computed g_i
  const int dim_i = pro.space_dim(deg.value);
  Matrix<Rational> span_mat(sym.tensor.size(), static_cast<size_t>(dim_i));
  for (int b = 0; b < dim_i; ++b) {
    auto e = pro.zero_element(deg.value);
    e.coords[static_cast<size_t>(b)] = Rational(1);
    const auto t = pro.restriction_tensor(e);
    if (t.size() != sym.tensor.size())
      throw ConsistencyError("graded_symbol: tensor shapes disagree");
    for (size_t r = 0; r < t.size(); ++r) span_mat.at(r, static_cast<size_t>(b)) = t[r];
  }
  const auto member = solve(span_mat, sym.tensor);
  if (!member)
    throw ConsistencyError("Psi tensor is not in the image of the computed prolongation level");
  sym.membership = *member;
  return sym;
}

} // namespace tanaka
