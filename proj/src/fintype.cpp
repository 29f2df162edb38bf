#include "tanaka/fintype.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "tanaka/errors.hpp"
#include "tanaka/flag.hpp"
#include "tanaka/groebner.hpp"

namespace tanaka {

H0Subspace h0(const Prolongation& pro) {
  if (pro.levels.empty()) throw InputError("h0: level 0 not computed");
  const ProlongationLevel& l0 = pro.levels[0];
  const int n = pro.gnla.dims[0];

  H0Subspace h;
  h.n = n;
  if (l0.dim() == 0) return h;

  // constraints: all layout entries beyond the u_{-1} block vanish
  const int first_block = l0.target_dim[0] * n;
  Matrix<Rational> constraints(static_cast<size_t>(l0.total_unknowns - first_block),
                               static_cast<size_t>(l0.dim()));
  Matrix<Rational> restriction(static_cast<size_t>(first_block), static_cast<size_t>(l0.dim()));
  for (int b = 0; b < l0.dim(); ++b) {
    const auto& vec = l0.basis[static_cast<size_t>(b)];
    for (int r = 0; r < first_block; ++r)
      restriction.at(static_cast<size_t>(r), static_cast<size_t>(b)) =
          vec[static_cast<size_t>(r)];
    for (int r = first_block; r < l0.total_unknowns; ++r)
      constraints.at(static_cast<size_t>(r - first_block), static_cast<size_t>(b)) =
          vec[static_cast<size_t>(r)];
  }

  for (const auto& flat : image_of_kernel(constraints, restriction)) {
    // flat is source-major: entry (src * n + tgt) is coordinate tgt of u(e_src)
    Matrix<Rational> m(static_cast<size_t>(n), static_cast<size_t>(n));
    for (int s = 0; s < n; ++s)
      for (int t = 0; t < n; ++t)
        m.at(static_cast<size_t>(t), static_cast<size_t>(s)) =
            flat[static_cast<size_t>(s * n + t)];
    h.basis.push_back(std::move(m));
  }
  return h;
}

namespace {

uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::vector<QuadExt> to_quad(const std::vector<Rational>& v) {
  std::vector<QuadExt> out;
  out.reserve(v.size());
  for (const Rational& r : v) out.emplace_back(r);
  return out;
}

// is q p^T in the span of the h0 basis? (exact, possibly over Q(sqrt d))
bool witness_in_span(const H0Subspace& h, const std::vector<QuadExt>& p,
                     const std::vector<QuadExt>& q) {
  const int n = h.n;
  Matrix<QuadExt> sys(static_cast<size_t>(n * n), h.basis.size());
  std::vector<QuadExt> rhs(static_cast<size_t>(n * n));
  for (int t = 0; t < n; ++t) {
    for (int s = 0; s < n; ++s) {
      const size_t row = static_cast<size_t>(t * n + s);
      rhs[row] = q[static_cast<size_t>(t)] * p[static_cast<size_t>(s)];
      for (size_t b = 0; b < h.basis.size(); ++b)
        sys.at(row, b) = QuadExt(h.basis[b].at(static_cast<size_t>(t), static_cast<size_t>(s)));
    }
  }
  return solve(sys, rhs).has_value();
}

bool nonzero_vec(const std::vector<QuadExt>& v) {
  return std::any_of(v.begin(), v.end(), [](const QuadExt& x) { return !x.is_zero(); });
}

// annihilator of span(h.basis) under the trace pairing tr(A M) = p^T A q rule
std::vector<Matrix<Rational>> trace_annihilator(const H0Subspace& h) {
  const int n = h.n;
  Matrix<Rational> sys(h.basis.size(), static_cast<size_t>(n * n));
  for (size_t b = 0; b < h.basis.size(); ++b)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        sys.at(b, static_cast<size_t>(i * n + j)) =
            h.basis[b].at(static_cast<size_t>(j), static_cast<size_t>(i));
  std::vector<Matrix<Rational>> out;
  for (const auto& flat : nullspace(sys)) {
    Matrix<Rational> a(static_cast<size_t>(n), static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        a.at(static_cast<size_t>(i), static_cast<size_t>(j)) =
            flat[static_cast<size_t>(i * n + j)];
    out.push_back(std::move(a));
  }
  return out;
}

// K(p) for a rational covector: rows p^T A_alpha
template <class F>
Matrix<F> stacked_forms(const std::vector<Matrix<Rational>>& ann, const std::vector<F>& p) {
  const size_t n = p.size();
  Matrix<F> k(ann.size(), n);
  for (size_t a = 0; a < ann.size(); ++a)
    for (size_t j = 0; j < n; ++j) {
      F acc(0);
      for (size_t i = 0; i < n; ++i) acc = acc + F(ann[a].at(i, j)) * p[i];
      k.at(a, j) = acc;
    }
  return k;
}

// deterministic covector grid with entries in [-r, r], deduplicated up to scale
std::vector<std::vector<Rational>> covector_grid(int n, int r) {
  std::vector<std::vector<Rational>> out;
  std::set<std::vector<long>> seen;
  std::vector<long> cur(static_cast<size_t>(n), -r);
  while (true) {
    bool all_zero = true;
    for (long v : cur) all_zero &= v == 0;
    if (!all_zero) {
      std::vector<long> canon = cur;
      long g = 0;
      for (long v : canon) g = std::gcd(g, std::abs(v));
      for (long& v : canon) v /= g;
      long lead = 0;
      for (long v : canon)
        if (v != 0) {
          lead = v;
          break;
        }
      if (lead < 0)
        for (long& v : canon) v = -v;
      if (seen.insert(canon).second) {
        std::vector<Rational> p;
        p.reserve(canon.size());
        for (long v : canon) p.emplace_back(v);
        out.push_back(std::move(p));
      }
    }
    int i = n - 1;
    while (i >= 0 && cur[static_cast<size_t>(i)] == r) {
      cur[static_cast<size_t>(i)] = -r;
      --i;
    }
    if (i < 0) break;
    ++cur[static_cast<size_t>(i)];
  }
  return out;
}

// determinant by cofactor expansion; entries are small linear polynomials
Polynomial poly_det(const std::vector<std::vector<Polynomial>>& m, std::vector<size_t> rows,
                    std::vector<size_t> cols) {
  const Chart& chart = m[rows[0]][cols[0]].chart();
  if (rows.size() == 1) return m[rows[0]][cols[0]];
  Polynomial acc(chart);
  const size_t r0 = rows[0];
  const std::vector<size_t> sub_rows(rows.begin() + 1, rows.end());
  for (size_t c = 0; c < cols.size(); ++c) {
    const Polynomial& e = m[r0][cols[c]];
    if (e.is_zero()) continue;
    std::vector<size_t> sub_cols;
    for (size_t t = 0; t < cols.size(); ++t)
      if (t != c) sub_cols.push_back(cols[t]);
    const Polynomial minor = poly_det(m, sub_rows, sub_cols);
    acc += (c % 2 == 0) ? e * minor : -(e * minor);
  }
  return acc;
}

// ---- univariate helpers for the n = 2 charts -------------------------------

// coefficients ascending by degree
std::vector<Rational> to_univariate(const Polynomial& p) {
  std::vector<Rational> c;
  for (const auto& [e, coeff] : p.terms()) {
    const size_t d = static_cast<size_t>(e[0]);
    if (c.size() <= d) c.resize(d + 1, Rational(0));
    c[d] = coeff;
  }
  return c;
}

void trim(std::vector<Rational>& c) {
  while (!c.empty() && c.back().is_zero()) c.pop_back();
}

std::vector<Rational> uni_rem(std::vector<Rational> a, const std::vector<Rational>& b) {
  trim(a);
  while (a.size() >= b.size() && !a.empty()) {
    const Rational f = a.back() / b.back();
    const size_t shift = a.size() - b.size();
    for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    trim(a);
  }
  return a;
}

std::vector<Rational> uni_gcd(std::vector<Rational> a, std::vector<Rational> b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    auto r = uni_rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const Rational lead = a.back();
    for (Rational& c : a) c /= lead;
  }
  return a;
}

// square decomposition D = s^2 * d with d squarefree (trial division)
void square_decompose(mpz_class d_in, mpz_class& s, long& d) {
  s = 1;
  mpz_class rest = d_in;
  for (mpz_class f = 2; f * f <= rest && f < 100000; ++f) {
    const mpz_class f2 = f * f;
    while (mpz_divisible_p(rest.get_mpz_t(), f2.get_mpz_t())) {
      rest /= f2;
      s *= f;
    }
  }
  if (mpz_perfect_square_p(rest.get_mpz_t())) {
    mpz_class root;
    mpz_sqrt(root.get_mpz_t(), rest.get_mpz_t());
    s *= root;
    rest = 1;
  }
  if (!rest.fits_slong_p()) throw CapError("radicand too large");
  d = rest.get_si();
}

} // namespace

CharVerdict char_variety(const H0Subspace& h, const CharBudget& budget) {
  CharVerdict out;
  const int n = h.n;

  // trivial exits
  if (h.basis.empty()) {
    out.kind = CharVerdict::Kind::empty;
    out.stage = "trivial";
    return out;
  }
  for (const auto& m : h.basis) {
    if (rank(m) != 1) continue;
    size_t a0 = 0, b0 = 0;
    for (size_t i = 0; i < m.rows(); ++i)
      for (size_t j = 0; j < m.cols(); ++j)
        if (!m.at(i, j).is_zero()) {
          a0 = i;
          b0 = j;
        }
    std::vector<Rational> q(static_cast<size_t>(n)), p(static_cast<size_t>(n));
    for (int t = 0; t < n; ++t) q[static_cast<size_t>(t)] = m.at(static_cast<size_t>(t), b0);
    for (int s = 0; s < n; ++s)
      p[static_cast<size_t>(s)] = m.at(a0, static_cast<size_t>(s)) / m.at(a0, b0);
    out.kind = CharVerdict::Kind::nonempty;
    out.witness = CharWitness{to_quad(p), to_quad(q)};
    out.stage = "trivial";
    if (!witness_in_span(h, out.witness->p, out.witness->q))
      throw ConsistencyError("rank-1 basis matrix is not in its own span");
    return out;
  }

  const std::vector<Matrix<Rational>> ann = trace_annihilator(h);

  const auto try_covector = [&](const std::vector<Rational>& p) -> bool {
    const Matrix<Rational> k = stacked_forms(ann, p);
    const auto kernel = nullspace(k);
    if (kernel.empty()) return false;
    const auto wp = to_quad(p);
    const auto wq = to_quad(kernel.front());
    if (!nonzero_vec(wq)) return false;
    if (!witness_in_span(h, wp, wq))
      throw ConsistencyError("kernel covector fails span validation");
    out.kind = CharVerdict::Kind::nonempty;
    out.witness = CharWitness{wp, wq};
    return true;
  };

  // rational witness grid (covers the c < n case: every covector then works)
  for (const auto& p : covector_grid(n, budget.grid_radius)) {
    if (try_covector(p)) {
      out.stage = "grid";
      return out;
    }
  }
  uint64_t state = budget.seed ^ 0x9a3c7f11ULL;
  for (int t = 0; t < budget.random_covectors; ++t) {
    std::vector<Rational> p(static_cast<size_t>(n));
    bool nonzero = false;
    for (int i = 0; i < n; ++i) {
      const long num = static_cast<long>(splitmix64(state) % 19) - 9;
      const long den = 1 + static_cast<long>(splitmix64(state) % 4);
      p[static_cast<size_t>(i)] = Rational(num, den);
      nonzero |= num != 0;
    }
    if (!nonzero) continue;
    if (try_covector(p)) {
      out.stage = "random";
      return out;
    }
  }

  // exact emptiness via maximal minors of the stacked symbolic K(p)
  const size_t c = ann.size();
  if (c < static_cast<size_t>(n))
    throw ConsistencyError("thin annihilator should have been caught by the grid");

  long long combos = 1;
  for (int i = 0; i < n; ++i) {
    combos = combos * static_cast<long long>(c - static_cast<size_t>(i)) / (i + 1);
    if (combos > budget.minor_cap) {
      out.kind = CharVerdict::Kind::undecided;
      out.stage = "minor-cap";
      return out;
    }
  }

  Chart pchart;
  for (int i = 1; i <= n; ++i) pchart.push_back("p" + std::to_string(i));
  std::vector<std::vector<Polynomial>> sym(c, std::vector<Polynomial>(static_cast<size_t>(n),
                                                                      Polynomial(pchart)));
  for (size_t a = 0; a < c; ++a)
    for (int j = 0; j < n; ++j) {
      Polynomial e(pchart);
      for (int i = 0; i < n; ++i) {
        const Rational& coeff = ann[a].at(static_cast<size_t>(i), static_cast<size_t>(j));
        if (!coeff.is_zero()) e += Polynomial::variable(pchart, static_cast<size_t>(i)) * coeff;
      }
      sym[a][static_cast<size_t>(j)] = std::move(e);
    }

  std::vector<Polynomial> minors;
  {
    std::vector<size_t> combo(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) combo[static_cast<size_t>(i)] = static_cast<size_t>(i);
    std::vector<size_t> cols(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) cols[static_cast<size_t>(i)] = static_cast<size_t>(i);
    while (true) {
      Polynomial d = poly_det(sym, combo, cols);
      if (!d.is_zero()) minors.push_back(std::move(d));
      // next combination of n rows out of c
      int i = n - 1;
      while (i >= 0 && combo[static_cast<size_t>(i)] == c - static_cast<size_t>(n - i)) --i;
      if (i < 0) break;
      ++combo[static_cast<size_t>(i)];
      for (int j = i + 1; j < n; ++j)
        combo[static_cast<size_t>(j)] = combo[static_cast<size_t>(j) - 1] + 1;
    }
  }
  if (minors.empty()) {
    // K(p) is rank-deficient for every p, yet no rational witness surfaced
    out.kind = CharVerdict::Kind::nonempty;
    out.complex_certificate = true;
    out.stage = "minors";
    return out;
  }

  // chart-by-chart projective emptiness: substitute p_i = 1
  for (int i = 0; i < n; ++i) {
    std::vector<Polynomial> chart_gens;
    for (const Polynomial& m : minors) {
      Polynomial g = m.eliminate_variable(static_cast<size_t>(i), Rational(1));
      if (!g.is_zero()) chart_gens.push_back(std::move(g));
    }
    if (chart_gens.empty()) {
      out.kind = CharVerdict::Kind::nonempty;
      out.complex_certificate = true;
      out.stage = "ideal";
      return out;
    }

    if (n == 2) {
      // univariate chart: the ideal is generated by the gcd
      std::vector<Rational> g = to_univariate(chart_gens.front());
      for (size_t t = 1; t < chart_gens.size(); ++t)
        g = uni_gcd(g, to_univariate(chart_gens[t]));
      if (g.size() <= 1) continue; // unit ideal; chart empty
      // try rational roots first: linear factor or factorable quadratic
      if (g.size() == 2) {
        const Rational root = -g[0] / g[1];
        std::vector<Rational> p{Rational(0), Rational(0)};
        p[static_cast<size_t>(i)] = Rational(1);
        p[static_cast<size_t>(1 - i)] = root;
        if (try_covector(p)) {
          out.stage = "ideal-root";
          return out;
        }
        throw ConsistencyError("ideal root failed the kernel test");
      }
      if (g.size() == 3) {
        // roots of g2 x^2 + g1 x + g0
        const Rational A = g[2], B = g[1], C = g[0];
        const Rational disc = B * B - A * C * Rational(4);
        if (disc.sign() < 0) {
          out.kind = CharVerdict::Kind::nonempty;
          out.complex_certificate = true;
          out.stage = "ideal";
          return out;
        }
        // disc = (num/den^2-adjusted); write sqrt(disc) = (s/t) sqrt(d)
        const mpz_class num = disc.num() * disc.den();
        mpz_class s;
        long d = 0;
        square_decompose(num, s, d);
        const Rational scale(s, disc.den());
        if (d == 1) {
          for (const Rational& root :
               {(-B + scale) / (A * Rational(2)), (-B - scale) / (A * Rational(2))}) {
            std::vector<Rational> p{Rational(0), Rational(0)};
            p[static_cast<size_t>(i)] = Rational(1);
            p[static_cast<size_t>(1 - i)] = root;
            if (try_covector(p)) {
              out.stage = "ideal-root";
              return out;
            }
          }
          throw ConsistencyError("quadratic rational roots failed the kernel test");
        }
        // irrational real roots: witness over Q(sqrt(d))
        const QuadExt root(-B / (A * Rational(2)), scale / (A * Rational(2)), d);
        std::vector<QuadExt> p(2);
        p[static_cast<size_t>(i)] = QuadExt(Rational(1));
        p[static_cast<size_t>(1 - i)] = root;
        const Matrix<QuadExt> k = stacked_forms(ann, p);
        const auto kernel = nullspace(k);
        if (kernel.empty() || !nonzero_vec(kernel.front()))
          throw ConsistencyError("quadratic root gives no kernel vector");
        if (!witness_in_span(h, p, kernel.front()))
          throw ConsistencyError("quadratic witness fails span validation");
        out.kind = CharVerdict::Kind::nonempty;
        out.witness = CharWitness{p, kernel.front()};
        out.stage = "quadratic";
        return out;
      }
      // higher-degree gcd with no handled factor: the chart variety is
      // nonempty over C regardless
      out.kind = CharVerdict::Kind::nonempty;
      out.complex_certificate = true;
      out.stage = "ideal";
      return out;
    }

    const GroebnerResult gb = groebner_basis(chart_gens, budget.groebner_reductions);
    out.budget_spent += gb.reductions_used;
    if (!gb.completed) {
      out.kind = CharVerdict::Kind::undecided;
      out.stage = "groebner";
      return out;
    }
    if (!contains_one(gb)) {
      out.kind = CharVerdict::Kind::nonempty;
      out.complex_certificate = true;
      out.stage = "ideal";
      return out;
    }
  }

  out.kind = CharVerdict::Kind::empty;
  out.stage = n == 2 ? "ideal" : "groebner";
  return out;
}

bool theorem2_applicable(const std::vector<int>& growth) {
  if (growth.empty()) return false;
  const int n = growth[0];
  if (n == 2) return growth.size() >= 3;
  if (n > 2) return growth.size() >= 2;
  return false;
}

bool theorem2_finite(const std::vector<int>& growth) {
  if (growth.empty()) throw InputError("theorem2_finite: empty growth vector");
  const int n = growth[0];
  if (n > 2 && growth.size() >= 2)
    return growth[0] + growth[1] > n * (n - 1) / 2 + 2;
  if (n == 2 && growth.size() >= 3)
    return growth[0] + growth[1] + growth[2] == 5;
  return false;
}

std::optional<long long> symmetry_bound_free(int n, int k) {
  if (n < 2 || k < 2) throw InputError("symmetry_bound_free: need n >= 2, k >= 2");
  if (n == 2 && k == 2) return std::nullopt; // contact: infinite
  if (k == 2) return 2LL * n * n + n;
  if (n == 2 && k == 3) return 14;
  return free_total_dim(n, k) + static_cast<long long>(n) * n;
}

FinitenessReport finiteness_report(const Model& m, std::optional<PointQ> point,
                                   const Config& cfg) {
  Polynomial::set_degree_cap(cfg.degree_cap);

  FinitenessReport rep;
  rep.model_name = m.name;
  rep.seed = cfg.seed;
  rep.config = cfg;
  rep.tanaka_cap = cfg.max_degree;

  const std::vector<VectorField> frame = m.frame();
  if (frame.empty()) throw InputError("finiteness_report: empty distribution");
  const Chart& chart = m.chart;

  PointQ base = point ? *point : (m.base_point ? *m.base_point : PointQ::origin(chart));
  if (base.chart != chart) throw InputError("finiteness_report: point chart mismatch");
  rep.point = base;

  std::vector<PointQ> probes = default_probe_points(chart, cfg.probe_samples, cfg.seed);
  std::vector<PointQ> stabilization = probes;
  stabilization.push_back(base);
  const DerivedFlag df = derived_flag(frame, cfg.kappa_cap, stabilization);
  rep.flag_capped = df.capped;

  const FlagAtPoint fp = flag_at(df, base);
  rep.growth = fp.growth;
  rep.cumulative = fp.cumulative;
  rep.kappa = fp.kappa;
  rep.bracket_generating = fp.bracket_generating;
  if (!fp.bracket_generating)
    throw InputError("distribution is not bracket-generating at the base point");

  const GNLA algebra = gnla_at(fp, df);
  const Prolongation pro = tanaka_prolongation(algebra, cfg.max_degree, cfg.unknown_cap);
  rep.tanaka_dims = pro.level_dims();
  rep.tanaka_terminated = pro.status == Prolongation::Status::terminated;
  rep.tanaka_total = pro.total_dim();

  const H0Subspace h = h0(pro);
  rep.h0_dim = h.dim();
  CharBudget cb;
  cb.grid_radius = cfg.grid_radius;
  cb.random_covectors = cfg.random_covectors;
  cb.groebner_reductions = cfg.groebner_budget;
  cb.minor_cap = cfg.minor_cap;
  cb.seed = cfg.seed;
  rep.char_verdict = char_variety(h, cb);

  rep.theorem2 = theorem2_finite(fp.growth);
  rep.theorem2_conclusive = theorem2_applicable(fp.growth);

  bool all_terminated = rep.tanaka_terminated;
  bool all_generating = true;
  std::optional<long long> bound = rep.tanaka_total;
  const std::string base_print = gnla_fingerprint(algebra);
  for (const PointQ& p : probes) {
    FinitenessReport::Sample s;
    s.point = p;
    const FlagAtPoint sp = flag_at(df, p);
    s.growth = sp.growth;
    s.bracket_generating = sp.bracket_generating;
    if (sp.bracket_generating) {
      const GNLA sa = gnla_at(sp, df);
      s.fingerprint_match = gnla_fingerprint(sa) == base_print;
      if (s.growth == rep.growth && !s.fingerprint_match)
        rep.symbol_fingerprint = "isomorphism_undetermined";
      const Prolongation spro = tanaka_prolongation(sa, cfg.max_degree, cfg.unknown_cap);
      s.terminated = spro.status == Prolongation::Status::terminated;
      s.total = spro.total_dim();
      if (!s.terminated) all_terminated = false;
      if (s.total && (!bound || *s.total < *bound)) bound = s.total;
    } else {
      all_generating = false;
    }
    rep.samples.push_back(std::move(s));
  }
  rep.regular_at_samples =
      std::all_of(rep.samples.begin(), rep.samples.end(),
                  [&](const auto& s) { return s.growth == rep.growth; });
  if (all_terminated && all_generating) rep.theorem1_bound = bound;

  if (rep.char_verdict.kind == CharVerdict::Kind::empty)
    rep.verdict = FinitenessReport::Verdict::finite_char_variety;
  else if (rep.theorem2)
    rep.verdict = FinitenessReport::Verdict::finite_theorem2;
  else
    rep.verdict = FinitenessReport::Verdict::inconclusive;
  return rep;
}

} // namespace tanaka
