#include "tanaka/flag.hpp"

#include <algorithm>

#include "tanaka/errors.hpp"

namespace tanaka {

namespace {

uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

size_t pointwise_rank(const std::vector<VectorField>& fields, const PointQ& p) {
  Matrix<Rational> m;
  for (const VectorField& f : fields) m.append_row(evaluate(f, p));
  return m.rows() == 0 ? 0 : rank(m);
}

bool duplicate_up_to_sign(const std::vector<VectorField>& fields, const VectorField& v) {
  for (const VectorField& f : fields)
    if (f == v || f == -v) return true;
  return false;
}

// all exponent vectors on `nvars` variables with total degree <= bound
std::vector<Exponents> monomials_up_to(size_t nvars, int bound) {
  std::vector<Exponents> out;
  Exponents cur(nvars, 0);
  // lexicographic enumeration by recursion on the first variable
  struct Rec {
    std::vector<Exponents>& out;
    Exponents& cur;
    size_t nvars;
    void go(size_t i, int left) {
      if (i == nvars) {
        out.push_back(cur);
        return;
      }
      for (int e = 0; e <= left; ++e) {
        cur[i] = e;
        go(i + 1, left - e);
      }
      cur[i] = 0;
    }
  } rec{out, cur, nvars};
  rec.go(0, bound);
  return out;
}

} // namespace

std::vector<PointQ> default_probe_points(const Chart& chart, int samples, uint64_t seed) {
  std::vector<PointQ> pts{PointQ::origin(chart)};
  uint64_t state = seed ^ 0x5bf03635ULL;
  for (int s = 0; s < samples; ++s) {
    PointQ p{chart, {}};
    p.values.reserve(chart.size());
    for (size_t i = 0; i < chart.size(); ++i) {
      const long num = static_cast<long>(splitmix64(state) % 7) - 3;
      const long den = 1 + static_cast<long>(splitmix64(state) % 3);
      p.values.emplace_back(num, den);
    }
    pts.push_back(std::move(p));
  }
  return pts;
}

DerivedFlag derived_flag(std::vector<VectorField> frame, int kappa_cap,
                         std::vector<PointQ> probes) {
  if (frame.empty()) throw InputError("derived_flag: empty frame");
  const Chart& chart = frame.front().chart();
  for (const VectorField& f : frame)
    if (f.chart() != chart) throw InputError("derived_flag: frame chart mismatch");
  if (probes.empty()) throw InputError("derived_flag: no probe points");
  for (const PointQ& p : probes)
    if (p.chart != chart) throw InputError("derived_flag: probe point chart mismatch");
  if (kappa_cap <= 0) kappa_cap = static_cast<int>(chart.size());

  DerivedFlag df;
  df.frame = frame;
  df.kappa_cap = kappa_cap;
  df.probes = probes;
  df.levels.push_back(frame);

  const size_t full = chart.size();
  std::vector<size_t> ranks;
  ranks.reserve(probes.size());
  for (const PointQ& p : probes) ranks.push_back(pointwise_rank(frame, p));

  // only brackets with fields new in the previous level can enlarge the span
  std::vector<VectorField> fresh = frame;
  while (true) {
    if (std::all_of(ranks.begin(), ranks.end(), [&](size_t r) { return r == full; }))
      return df; // the flag already fills the tangent space at every probe

    std::vector<VectorField> next = df.levels.back();
    std::vector<VectorField> added;
    for (const VectorField& x : df.frame) {
      for (const VectorField& s : fresh) {
        VectorField b = lie_bracket(x, s);
        if (b.is_zero() || duplicate_up_to_sign(next, b)) continue;
        next.push_back(b);
        added.push_back(std::move(b));
      }
    }
    bool grew = false;
    std::vector<size_t> next_ranks;
    next_ranks.reserve(probes.size());
    for (size_t i = 0; i < probes.size(); ++i) {
      next_ranks.push_back(pointwise_rank(next, probes[i]));
      if (next_ranks.back() > ranks[i]) grew = true;
    }
    if (!grew) return df; // stabilized at all probe points
    if (df.depth() >= kappa_cap) {
      df.capped = true; // still growing when the cap was reached
      return df;
    }
    df.levels.push_back(std::move(next));
    ranks = std::move(next_ranks);
    fresh = std::move(added);
  }
}

DerivedFlag derived_flag(std::vector<VectorField> frame, int kappa_cap, int samples,
                         uint64_t seed) {
  if (frame.empty()) throw InputError("derived_flag: empty frame");
  const Chart chart = frame.front().chart();
  return derived_flag(std::move(frame), kappa_cap,
                      default_probe_points(chart, samples, seed));
}

std::pair<int, int> FlagAtPoint::block(int level) const {
  if (level < 1 || level > static_cast<int>(cumulative.size()))
    return {static_cast<int>(adapted.rows()), static_cast<int>(adapted.rows())};
  const int begin = level == 1 ? 0 : cumulative[static_cast<size_t>(level) - 2];
  return {begin, cumulative[static_cast<size_t>(level) - 1]};
}

std::vector<Rational> FlagAtPoint::adapted_coordinates(const std::vector<Rational>& v) const {
  Matrix<Rational> t(adapted.cols(), adapted.rows());
  for (size_t i = 0; i < adapted.rows(); ++i)
    for (size_t j = 0; j < adapted.cols(); ++j) t.at(j, i) = adapted.at(i, j);
  const auto x = solve(t, v);
  if (!x) throw ConsistencyError("vector outside the adapted basis span");
  return *x;
}

FlagAtPoint flag_at(const DerivedFlag& df, const PointQ& p) {
  const Chart& chart = df.chart();
  if (p.chart != chart) throw InputError("flag_at: chart mismatch");
  const size_t n = chart.size();

  FlagAtPoint fp;
  fp.point = p;
  IncrementalBasis<Rational> basis(n);
  size_t prev = 0;
  for (int lev = 0; lev < df.depth(); ++lev) {
    for (size_t k = 0; k < df.levels[static_cast<size_t>(lev)].size(); ++k) {
      const VectorField& f = df.levels[static_cast<size_t>(lev)][k];
      if (basis.add(evaluate(f, p)))
        fp.representative.emplace_back(lev, static_cast<int>(k));
    }
    const size_t dim = basis.size();
    if (dim == prev) break; // pointwise rank stalled at p
    fp.cumulative.push_back(static_cast<int>(dim));
    fp.growth.push_back(static_cast<int>(dim - prev));
    prev = dim;
    if (dim == n) break;
  }
  for (const auto& v : basis.vectors()) fp.adapted.append_row(v);
  fp.representative.resize(basis.size());
  fp.kappa = static_cast<int>(fp.growth.size());
  fp.bracket_generating = prev == n;
  return fp;
}

bool is_bracket_generating(const FlagAtPoint& fp) { return fp.bracket_generating; }

RegularityProbe regularity_probe(const DerivedFlag& df, const std::vector<PointQ>& points) {
  if (points.empty()) throw InputError("regularity_probe: need at least one point");
  RegularityProbe r;
  r.points = points;
  for (const PointQ& p : points) r.growth.push_back(flag_at(df, p).growth);
  r.regular_at_samples = std::all_of(r.growth.begin(), r.growth.end(),
                                     [&](const auto& g) { return g == r.growth.front(); });
  return r;
}

std::vector<std::vector<Rational>> cauchy_characteristic_space(const DerivedFlag& df,
                                                               int level, const PointQ& p,
                                                               int degree_bound) {
  if (level < 1 || level > df.depth())
    throw InputError("cauchy_characteristic_space: level out of range");
  const Chart& chart = df.chart();
  const size_t n = chart.size();
  if (degree_bound < 0) {
    degree_bound = 0;
    for (const VectorField& f : df.frame)
      degree_bound = std::max(degree_bound, f.max_degree());
    degree_bound += 2;
  }

  const std::vector<VectorField>& spans = df.levels[static_cast<size_t>(level) - 1];
  const FlagAtPoint fp = flag_at(df, p);
  const int top = std::min(level, static_cast<int>(fp.cumulative.size()));
  const size_t sub_dim =
      top == 0 ? 0 : static_cast<size_t>(fp.cumulative[static_cast<size_t>(top) - 1]);

  // complete the adapted basis to a full tangent basis so that membership in
  // Delta_level(p) is exactly "coordinates beyond sub_dim vanish"
  IncrementalBasis<Rational> full(n);
  for (size_t i = 0; i < fp.adapted.rows(); ++i) full.add(fp.adapted.row(i));
  for (size_t i = 0; i < n && full.size() < n; ++i) {
    std::vector<Rational> e(n, Rational(0));
    e[i] = Rational(1);
    full.add(e);
  }
  const size_t quot_dim = n - sub_dim;

  const std::vector<Exponents> monos = monomials_up_to(n, degree_bound);
  const size_t unknowns = spans.size() * monos.size();

  // column (alpha, mu): zeta contribution lambda * mu * s_alpha
  // constraints: for each spanning field t, quotient part of [zeta, t](p) vanishes
  Matrix<Rational> constraints(spans.size() * quot_dim, unknowns);
  Matrix<Rational> value_map(n, unknowns); // lambda -> zeta(p)

  std::vector<std::vector<Rational>> span_values; // s_alpha(p)
  for (const VectorField& s : spans) span_values.push_back(evaluate(s, p));

  for (size_t a = 0; a < spans.size(); ++a) {
    for (size_t m = 0; m < monos.size(); ++m) {
      const size_t col = a * monos.size() + m;
      const Polynomial mu = Polynomial::monomial(chart, monos[m], Rational(1));
      const Rational mu_p = mu.evaluate(p.values);
      for (size_t i = 0; i < n; ++i)
        value_map.at(i, col) = mu_p * span_values[a][i];
      for (size_t b = 0; b < spans.size(); ++b) {
        // [mu * s_a, t_b](p) = mu(p) [s_a, t_b](p) - (t_b mu)(p) s_a(p)
        const Rational dmu = apply(spans[b], mu).evaluate(p.values);
        std::vector<Rational> val(n, Rational(0));
        if (!mu_p.is_zero()) {
          const std::vector<Rational> br = evaluate(lie_bracket(spans[a], spans[b]), p);
          for (size_t i = 0; i < n; ++i) val[i] = mu_p * br[i];
        }
        if (!dmu.is_zero()) {
          for (size_t i = 0; i < n; ++i) val[i] -= dmu * span_values[a][i];
        }
        const auto coords = full.coordinates(val);
        if (!coords) throw ConsistencyError("bracket value outside completed basis");
        for (size_t q = 0; q < quot_dim; ++q)
          constraints.at(b * quot_dim + q, col) = (*coords)[sub_dim + q];
      }
    }
  }

  return image_of_kernel(constraints, value_map);
}

} // namespace tanaka
