#include "tanaka/prolong.hpp"

#include <algorithm>

#include "tanaka/errors.hpp"
#include "tanaka/linalg.hpp"

namespace tanaka {

namespace {

int space_dim_of(const GNLA& a, const std::vector<ProlongationLevel>& levels, int d) {
  if (d < 0) {
    if (-d > a.depth) return 0;
    return a.dims[static_cast<size_t>(-d) - 1];
  }
  if (d < static_cast<int>(levels.size())) return levels[static_cast<size_t>(d)].dim();
  throw InputError("prolongation degree out of computed range");
}

} // namespace

std::vector<int> Prolongation::level_dims() const {
  std::vector<int> d;
  d.reserve(levels.size());
  for (const auto& l : levels) d.push_back(l.dim());
  return d;
}

std::optional<long long> Prolongation::total_dim() const {
  if (status != Status::terminated) return std::nullopt;
  long long t = gnla.dim_total();
  for (const auto& l : levels) t += l.dim();
  return t;
}

int Prolongation::space_dim(int d) const { return space_dim_of(gnla, levels, d); }

std::vector<Rational> Prolongation::value_on(int k, const std::vector<Rational>& coords,
                                             int j) const {
  const ProlongationLevel& lev = levels[static_cast<size_t>(k)];
  if (coords.size() != static_cast<size_t>(lev.dim()))
    throw InputError("value_on: coordinate length mismatch");
  const int grade = gnla.grade_of(j);
  const int i = -grade;
  const int t = lev.target_dim[static_cast<size_t>(i) - 1];
  const int src = j - gnla.block(grade).first;
  std::vector<Rational> out(static_cast<size_t>(t), Rational(0));
  for (size_t b = 0; b < coords.size(); ++b) {
    if (coords[b].is_zero()) continue;
    const auto& vec = lev.basis[b];
    const size_t base = static_cast<size_t>(lev.offset[static_cast<size_t>(i) - 1] + src * t);
    for (int r = 0; r < t; ++r)
      out[static_cast<size_t>(r)] += coords[b] * vec[base + static_cast<size_t>(r)];
  }
  return out;
}

Prolongation::Element Prolongation::zero_element(int degree) const {
  return Element{degree, std::vector<Rational>(static_cast<size_t>(space_dim(degree)), Rational(0))};
}

Prolongation::Element Prolongation::bracket(const Element& u, const Element& v) const {
  const int a = u.degree, b = v.degree;
  const int target = a + b;
  if (target < -gnla.depth) return Element{target, {}}; // zero space below -kappa
  if (target >= levels_computed() && target >= 0)
    throw InputError("bracket: degree out of computed range");
  if (a < -gnla.depth || b < -gnla.depth) return zero_element(target);

  if (a < 0 && b < 0) {
    // GNLA bracket on grade blocks
    const size_t n = static_cast<size_t>(gnla.dim_total());
    std::vector<Rational> fa(n, Rational(0)), fb(n, Rational(0));
    const auto [ba, ea] = gnla.block(a);
    const auto [bb, eb] = gnla.block(b);
    (void)ea;
    (void)eb;
    for (size_t t = 0; t < u.coords.size(); ++t) fa[static_cast<size_t>(ba) + t] = u.coords[t];
    for (size_t t = 0; t < v.coords.size(); ++t) fb[static_cast<size_t>(bb) + t] = v.coords[t];
    const auto full = gnla.bracket(fa, fb);
    Element out = zero_element(target);
    const auto [bt, et] = gnla.block(target);
    for (int t = bt; t < et; ++t) out.coords[static_cast<size_t>(t - bt)] = full[static_cast<size_t>(t)];
    return out;
  }

  if (a >= 0 && b < 0) {
    // u acts as the stored homomorphism
    Element out = zero_element(target);
    const auto [bb, eb] = gnla.block(b);
    for (int s = 0; s < eb - bb; ++s) {
      if (v.coords[static_cast<size_t>(s)].is_zero()) continue;
      const auto val = value_on(a, u.coords, bb + s);
      for (size_t t = 0; t < val.size(); ++t)
        out.coords[t] += v.coords[static_cast<size_t>(s)] * val[t];
    }
    return out;
  }

  if (a < 0 && b >= 0) {
    Element out = bracket(v, u);
    for (auto& c : out.coords) c = -c;
    return out;
  }

  // both non-negative: w = [u, v] with w(X) = [u,[v,X]] - [v,[u,X]] on g_{-1},
  // then resolved in the level basis (the restriction to g_{-1} is injective)
  const int n1 = gnla.dims[0];
  const int wdim = space_dim(target);
  if (wdim == 0) return zero_element(target);
  const int lower = space_dim(target - 1);

  std::vector<Rational> rhs;
  rhs.reserve(static_cast<size_t>(n1 * lower));
  for (int j = 0; j < n1; ++j) {
    Element ej = zero_element(-1);
    ej.coords[static_cast<size_t>(j)] = Rational(1);
    const Element vx = bracket(v, ej);
    const Element ux = bracket(u, ej);
    const Element t1 = bracket(u, vx);
    const Element t2 = bracket(v, ux);
    for (int t = 0; t < lower; ++t)
      rhs.push_back(t1.coords[static_cast<size_t>(t)] - t2.coords[static_cast<size_t>(t)]);
  }

  Matrix<Rational> restr(static_cast<size_t>(n1 * lower), static_cast<size_t>(wdim));
  for (int c = 0; c < wdim; ++c) {
    std::vector<Rational> unit(static_cast<size_t>(wdim), Rational(0));
    unit[static_cast<size_t>(c)] = Rational(1);
    for (int j = 0; j < n1; ++j) {
      const auto val = value_on(target, unit, gnla.block(-1).first + j);
      for (int t = 0; t < lower; ++t)
        restr.at(static_cast<size_t>(j * lower + t), static_cast<size_t>(c)) =
            val[static_cast<size_t>(t)];
    }
  }
  const auto sol = solve(restr, rhs);
  if (!sol) throw ConsistencyError("bracket of prolongation elements is not in the computed level");
  return Element{target, *sol};
}

std::vector<Rational> Prolongation::restriction_tensor(const Element& u) const {
  if (u.degree < 0) throw InputError("restriction_tensor: non-negative degree required");
  const int n1 = gnla.dims[0];
  if (u.degree == 0) {
    // rows of the induced endomorphism of g_{-1}, flattened (j, value)
    std::vector<Rational> out;
    out.reserve(static_cast<size_t>(n1 * n1));
    for (int j = 0; j < n1; ++j) {
      const auto val = value_on(0, u.coords, gnla.block(-1).first + j);
      out.insert(out.end(), val.begin(), val.end());
    }
    return out;
  }
  std::vector<Rational> out;
  for (int j = 0; j < n1; ++j) {
    Element ej = zero_element(-1);
    ej.coords[static_cast<size_t>(j)] = Rational(1);
    const auto sub = restriction_tensor(bracket(u, ej));
    out.insert(out.end(), sub.begin(), sub.end());
  }
  return out;
}

Prolongation::Element Prolongation::grading_element() const {
  if (levels.empty()) throw InputError("grading_element: level 0 not computed");
  const ProlongationLevel& l0 = levels[0];
  // raw layout vector of the derivation u_i = i * Id
  std::vector<Rational> raw(static_cast<size_t>(l0.total_unknowns), Rational(0));
  for (int i = 1; i <= gnla.depth; ++i) {
    const int t = l0.target_dim[static_cast<size_t>(i) - 1];
    const int off = l0.offset[static_cast<size_t>(i) - 1];
    for (int s = 0; s < t; ++s)
      raw[static_cast<size_t>(off + s * t + s)] = Rational(-i);
  }
  Matrix<Rational> basis_mat(raw.size(), l0.basis.size());
  for (size_t b = 0; b < l0.basis.size(); ++b)
    for (size_t r = 0; r < raw.size(); ++r) basis_mat.at(r, b) = l0.basis[b][r];
  const auto sol = solve(basis_mat, raw);
  if (!sol) throw ConsistencyError("grading derivation missing from the computed g_0");
  return Element{0, *sol};
}

ProlongationLevel prolong_step(const GNLA& a, const std::vector<ProlongationLevel>& previous,
                               int k, int unknown_cap) {
  if (static_cast<int>(previous.size()) != k)
    throw InputError("prolong_step: previous levels must be 0..k-1");

  ProlongationLevel lev;
  lev.degree = k;
  lev.target_dim.resize(static_cast<size_t>(a.depth));
  lev.offset.resize(static_cast<size_t>(a.depth));
  int off = 0;
  for (int i = 1; i <= a.depth; ++i) {
    const int t = space_dim_of(a, previous, k - i);
    lev.target_dim[static_cast<size_t>(i) - 1] = t;
    lev.offset[static_cast<size_t>(i) - 1] = off;
    off += t * a.dims[static_cast<size_t>(i) - 1];
  }
  lev.total_unknowns = off;
  if (off == 0) return lev;
  if (off > unknown_cap)
    throw CapError("prolong_step: unknown count " + std::to_string(off) +
                   " exceeds the cap " + std::to_string(unknown_cap));

  const int n = a.dim_total();
  const auto col_of = [&](int grade_src, int src_in_block, int tgt) {
    const int i = -grade_src;
    const int t = lev.target_dim[static_cast<size_t>(i) - 1];
    return lev.offset[static_cast<size_t>(i) - 1] + src_in_block * t + tgt;
  };
  // value of previous-level basis element r on the GNLA basis vector j
  const auto prev_value = [&](int d, int r, int j) {
    const ProlongationLevel& p = previous[static_cast<size_t>(d)];
    const int i = -a.grade_of(j);
    const int t = p.target_dim[static_cast<size_t>(i) - 1];
    const int src = j - a.block(-i).first;
    const size_t base = static_cast<size_t>(p.offset[static_cast<size_t>(i) - 1] + src * t);
    const auto& vec = p.basis[static_cast<size_t>(r)];
    return std::vector<Rational>(vec.begin() + static_cast<long>(base),
                                 vec.begin() + static_cast<long>(base) + t);
  };

  Matrix<Rational> m(0, static_cast<size_t>(off));
  std::vector<Rational> row_block; // assembled per pair below

  for (int ia = 0; ia < n; ++ia) {
    const int ga = a.grade_of(ia);
    const int src_a = ia - a.block(ga).first;
    for (int ib = 0; ib < n; ++ib) {
      if (ia == ib) continue;
      const int gb = a.grade_of(ib);
      const int src_b = ib - a.block(gb).first;
      const int gt = k + ga + gb;
      const int tdim = gt < -a.depth ? 0 : space_dim_of(a, previous, gt);
      if (tdim == 0) continue;

      Matrix<Rational> block(static_cast<size_t>(tdim), static_cast<size_t>(off));

      // LHS: u([e_a, e_b])
      const auto br = a.bracket_basis(ia, ib);
      for (int c = 0; c < n; ++c) {
        if (br[static_cast<size_t>(c)].is_zero()) continue;
        const int gc = a.grade_of(c);
        const int src_c = c - a.block(gc).first;
        for (int t = 0; t < tdim; ++t)
          block.at(static_cast<size_t>(t), static_cast<size_t>(col_of(gc, src_c, t))) +=
              br[static_cast<size_t>(c)];
      }

      // RHS term [u(e_a), e_b]
      const int da = k + ga;
      const int ta = lev.target_dim[static_cast<size_t>(-ga) - 1];
      for (int r = 0; r < ta; ++r) {
        const size_t col = static_cast<size_t>(col_of(ga, src_a, r));
        if (da < 0) {
          const int vr = a.block(da).first + r;
          const auto w = a.bracket_basis(vr, ib);
          const auto [bt, et] = a.block(gt);
          (void)et;
          for (int t = 0; t < tdim; ++t)
            block.at(static_cast<size_t>(t), col) -= w[static_cast<size_t>(bt + t)];
        } else {
          const auto w = prev_value(da, r, ib);
          for (int t = 0; t < tdim; ++t)
            block.at(static_cast<size_t>(t), col) -= w[static_cast<size_t>(t)];
        }
      }

      // RHS term [e_a, u(e_b)] = -[u(e_b), e_a]
      const int db = k + gb;
      const int tb = lev.target_dim[static_cast<size_t>(-gb) - 1];
      for (int r = 0; r < tb; ++r) {
        const size_t col = static_cast<size_t>(col_of(gb, src_b, r));
        if (db < 0) {
          const int vr = a.block(db).first + r;
          const auto w = a.bracket_basis(ia, vr);
          const auto [bt, et] = a.block(gt);
          (void)et;
          for (int t = 0; t < tdim; ++t)
            block.at(static_cast<size_t>(t), col) -= w[static_cast<size_t>(bt + t)];
        } else {
          const auto w = prev_value(db, r, ia);
          for (int t = 0; t < tdim; ++t)
            block.at(static_cast<size_t>(t), col) += w[static_cast<size_t>(t)];
        }
      }

      for (size_t t = 0; t < block.rows(); ++t) m.append_row(block.row(t));
    }
  }

  lev.basis = nullspace(m);
  return lev;
}

Prolongation tanaka_prolongation(const GNLA& a, int max_degree, int unknown_cap) {
  if (max_degree < 0) throw InputError("tanaka_prolongation: max_degree must be >= 0");
  if (!check_fundamental(a))
    throw InputError("tanaka_prolongation: the GNLA is not fundamental");

  Prolongation pro;
  pro.gnla = a;
  pro.max_degree = max_degree;
  pro.status = Prolongation::Status::capped;
  for (int k = 0; k <= max_degree; ++k) {
    ProlongationLevel lev = prolong_step(a, pro.levels, k, unknown_cap);
    const int d = lev.dim();
    pro.levels.push_back(std::move(lev));
    if (d == 0) {
      pro.status = Prolongation::Status::terminated;
      break;
    }
    // fundamentality makes the restriction to g_{-1} injective on each level
    const ProlongationLevel& l = pro.levels.back();
    const int t1 = l.target_dim[0];
    Matrix<Rational> restr(static_cast<size_t>(l.dim()),
                           static_cast<size_t>(t1 * a.dims[0]));
    for (int b = 0; b < l.dim(); ++b)
      for (int c = 0; c < t1 * a.dims[0]; ++c)
        restr.at(static_cast<size_t>(b), static_cast<size_t>(c)) =
            l.basis[static_cast<size_t>(b)][static_cast<size_t>(l.offset[0] + c)];
    if (rank(restr) != static_cast<size_t>(l.dim()))
      throw ConsistencyError("prolongation level fails the restriction injectivity");
  }
  return pro;
}

} // namespace tanaka
