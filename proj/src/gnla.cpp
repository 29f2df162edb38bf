#include "tanaka/gnla.hpp"

#include <algorithm>
#include <functional>

#include "tanaka/errors.hpp"

namespace tanaka {

namespace {
std::vector<Rational> unit(int n, int k) {
  std::vector<Rational> v(static_cast<size_t>(n), Rational(0));
  v[static_cast<size_t>(k)] = Rational(1);
  return v;
}
} // namespace

int GNLA::dim_total() const {
  int t = 0;
  for (int d : dims) t += d;
  return t;
}

int GNLA::grade_of(int index) const {
  int acc = 0;
  for (size_t g = 0; g < dims.size(); ++g) {
    acc += dims[g];
    if (index < acc) return -static_cast<int>(g) - 1;
  }
  throw ConsistencyError("GNLA basis index out of range");
}

std::pair<int, int> GNLA::block(int grade) const {
  const int level = -grade;
  if (level < 1 || level > static_cast<int>(dims.size()))
    return {dim_total(), dim_total()};
  int begin = 0;
  for (int g = 0; g < level - 1; ++g) begin += dims[static_cast<size_t>(g)];
  return {begin, begin + dims[static_cast<size_t>(level) - 1]};
}

std::vector<Rational> GNLA::bracket_basis(int i, int j) const {
  std::vector<Rational> out(static_cast<size_t>(dim_total()), Rational(0));
  if (i == j) return out;
  const bool flip = i > j;
  if (flip) std::swap(i, j);
  const auto it = table.find({i, j});
  if (it != table.end()) {
    for (const auto& [k, c] : it->second)
      out[static_cast<size_t>(k)] = flip ? -c : c;
  }
  return out;
}

std::vector<Rational> GNLA::bracket(const std::vector<Rational>& a,
                                    const std::vector<Rational>& b) const {
  const size_t n = static_cast<size_t>(dim_total());
  if (a.size() != n || b.size() != n)
    throw InputError("GNLA bracket: coefficient vector length mismatch");
  std::vector<Rational> out(n, Rational(0));
  for (size_t i = 0; i < n; ++i) {
    if (a[i].is_zero()) continue;
    for (size_t j = 0; j < n; ++j) {
      if (b[j].is_zero()) continue;
      const auto br = bracket_basis(static_cast<int>(i), static_cast<int>(j));
      const Rational f = a[i] * b[j];
      for (size_t k = 0; k < n; ++k)
        if (!br[k].is_zero()) out[k] += f * br[k];
    }
  }
  return out;
}

void GNLA::validate() const {
  const int n = dim_total();
  // graded support
  for (const auto& [pair, comb] : table) {
    const int g = grade_of(pair.first) + grade_of(pair.second);
    for (const auto& [k, c] : comb) {
      if (c.is_zero()) throw ConsistencyError("GNLA stores a zero structure constant");
      if (grade_of(k) != g) throw ConsistencyError("GNLA bracket violates the grading");
    }
  }
  // graded Jacobi
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const auto bij = bracket_basis(i, j);
      for (int k = j; k < n; ++k) {
        std::vector<Rational> acc = bracket(bij, unit(n, k));
        const auto bjk = bracket_basis(j, k);
        const auto bki = bracket_basis(k, i);
        const auto t2 = bracket(bjk, unit(n, i));
        const auto t3 = bracket(bki, unit(n, j));
        for (int t = 0; t < n; ++t) {
          const Rational s = acc[static_cast<size_t>(t)] + t2[static_cast<size_t>(t)] +
                             t3[static_cast<size_t>(t)];
          if (!s.is_zero()) throw ConsistencyError("GNLA violates the Jacobi identity");
        }
      }
    }
  }
}

GNLA gnla_at(const DerivedFlag& df, const PointQ& p) {
  return gnla_at(flag_at(df, p), df);
}

GNLA gnla_at(const FlagAtPoint& fp, const DerivedFlag& df) {
  if (!fp.bracket_generating)
    throw InputError("gnla_at: flag is not bracket-generating at the point");

  GNLA a;
  a.depth = fp.kappa;
  a.dims = fp.growth;
  const int n = a.dim_total();

  for (int lev = 1; lev <= fp.kappa; ++lev) {
    const auto [b, e] = fp.block(lev);
    for (int t = b; t < e; ++t)
      a.labels.push_back("e(" + std::to_string(-lev) + "," + std::to_string(t - b + 1) + ")");
  }

  // representative fields for every adapted row
  std::vector<VectorField> reps;
  reps.reserve(static_cast<size_t>(n));
  for (int r = 0; r < n; ++r) {
    const auto [lev, idx] = fp.representative[static_cast<size_t>(r)];
    reps.push_back(df.levels[static_cast<size_t>(lev)][static_cast<size_t>(idx)]);
  }

  for (int i = 0; i < n; ++i) {
    const int gi = a.grade_of(i);
    for (int j = i + 1; j < n; ++j) {
      const int gj = a.grade_of(j);
      const int g = gi + gj;
      const auto val = evaluate(lie_bracket(reps[static_cast<size_t>(i)],
                                            reps[static_cast<size_t>(j)]),
                                fp.point);
      const auto coords = fp.adapted_coordinates(val);
      // the value must lie in Delta_{|g|}(p); deeper components vanish
      const int cut = std::min(-g, fp.kappa);
      const int limit = cut == 0 ? 0 : fp.cumulative[static_cast<size_t>(cut) - 1];
      for (size_t t = static_cast<size_t>(limit); t < coords.size(); ++t)
        if (!coords[t].is_zero())
          throw ConsistencyError("bracket of representatives escapes the flag level");
      if (-g > fp.kappa) continue; // class is zero below the bottom grade
      const auto [bb, be] = fp.block(-g);
      std::vector<std::pair<int, Rational>> comb;
      for (int t = bb; t < be; ++t)
        if (!coords[static_cast<size_t>(t)].is_zero())
          comb.emplace_back(t, coords[static_cast<size_t>(t)]);
      if (!comb.empty()) a.table[{i, j}] = std::move(comb);
    }
  }

  a.validate();
  return a;
}

std::string gnla_fingerprint(const GNLA& a) {
  std::string s = "d:";
  for (int d : a.dims) s += std::to_string(d) + ",";
  for (const auto& [pair, comb] : a.table) {
    s += "[" + std::to_string(pair.first) + "," + std::to_string(pair.second) + "]=";
    for (const auto& [k, c] : comb) s += std::to_string(k) + ":" + c.str() + ",";
    s += ";";
  }
  return s;
}

bool check_fundamental(const GNLA& a) {
  const int n = a.dim_total();
  if (a.dims.empty()) return false;
  const auto [fb, fe] = a.block(-1);
  for (int s = 2; s <= a.depth; ++s) {
    const auto [pb, pe] = a.block(-s + 1);
    const auto [cb, ce] = a.block(-s);
    Matrix<Rational> generated;
    for (int i = fb; i < fe; ++i) {
      for (int j = pb; j < pe; ++j) {
        const auto br = a.bracket_basis(i, j);
        std::vector<Rational> row(br.begin() + cb, br.begin() + ce);
        generated.append_row(row);
      }
    }
    const size_t need = static_cast<size_t>(ce - cb);
    if (need == 0) continue;
    if (generated.rows() == 0 || rank(generated) < need) return false;
  }
  (void)n;
  return true;
}

// ---------------------------------------------------------------------------
// Free nilpotent Lie algebras via a Hall family.
//
// Hall set ordered by (degree, creation index). [a, t] is a Hall element iff
// a < t and (t is a generator or t = [b, c] with b <= a).

namespace {

struct HallElement {
  int degree;
  int left;  // -1 for generators
  int right; // -1 for generators
  int gen;   // generator number for degree 1
};

struct HallFamily {
  int n, k;
  std::vector<HallElement> elems; // created in degree order
  std::map<std::pair<int, int>, int> pair_index;
  std::vector<int> degree_begin; // index of first element of each degree (1-based)

  std::string label(int i) const {
    const HallElement& h = elems[static_cast<size_t>(i)];
    if (h.left < 0) return "x" + std::to_string(h.gen + 1);
    return "[" + label(h.left) + "," + label(h.right) + "]";
  }
};

HallFamily build_hall(int n, int k) {
  HallFamily f;
  f.n = n;
  f.k = k;
  f.degree_begin.assign(static_cast<size_t>(k) + 2, 0);
  for (int g = 0; g < n; ++g) f.elems.push_back({1, -1, -1, g});
  f.degree_begin[1] = 0;
  for (int d = 2; d <= k; ++d) {
    f.degree_begin[static_cast<size_t>(d)] = static_cast<int>(f.elems.size());
    const int total = static_cast<int>(f.elems.size());
    for (int a = 0; a < total; ++a) {
      const int da = f.elems[static_cast<size_t>(a)].degree;
      if (da >= d) break;
      for (int t = a + 1; t < total; ++t) {
        const HallElement& ht = f.elems[static_cast<size_t>(t)];
        if (ht.degree != d - da) continue;
        if (ht.left >= 0 && ht.left > a) continue;
        f.elems.push_back({d, a, t, -1});
        f.pair_index[{a, t}] = static_cast<int>(f.elems.size()) - 1;
      }
    }
  }
  f.degree_begin[static_cast<size_t>(k) + 1] = static_cast<int>(f.elems.size());
  return f;
}

using LinComb = std::map<int, Rational>;

struct HallRewriter {
  const HallFamily& fam;
  std::map<std::pair<int, int>, LinComb> memo;

  LinComb bracket(int i, int j) {
    if (i == j) return {};
    if (i > j) return negate(bracket(j, i));
    const auto key = std::make_pair(i, j);
    const auto it = memo.find(key);
    if (it != memo.end()) return it->second;

    LinComb result;
    const int deg =
        fam.elems[static_cast<size_t>(i)].degree + fam.elems[static_cast<size_t>(j)].degree;
    if (deg > fam.k) {
      memo[key] = result;
      return result;
    }
    const auto pit = fam.pair_index.find(key);
    if (pit != fam.pair_index.end()) {
      result[pit->second] = Rational(1);
    } else {
      // j = [b, c] with i < b < c: [i,[b,c]] = [[i,b],c] + [b,[i,c]]
      const int b = fam.elems[static_cast<size_t>(j)].left;
      const int c = fam.elems[static_cast<size_t>(j)].right;
      result = add(bracket_comb_right(bracket(i, b), c),
                   bracket_comb_left(b, bracket(i, c)));
    }
    memo[key] = result;
    return result;
  }

  LinComb bracket_comb_right(const LinComb& u, int c) {
    LinComb acc;
    for (const auto& [e, coeff] : u) acc = add(acc, scale(bracket(e, c), coeff));
    return acc;
  }

  LinComb bracket_comb_left(int b, const LinComb& v) {
    LinComb acc;
    for (const auto& [e, coeff] : v) acc = add(acc, scale(bracket(b, e), coeff));
    return acc;
  }

  static LinComb negate(LinComb m) {
    for (auto& [e, c] : m) c = -c;
    return m;
  }
  static LinComb scale(LinComb m, const Rational& f) {
    for (auto& [e, c] : m) c *= f;
    return m;
  }
  static LinComb add(LinComb a, const LinComb& b) {
    for (const auto& [e, c] : b) {
      auto it = a.find(e);
      if (it == a.end()) {
        if (!c.is_zero()) a.emplace(e, c);
      } else {
        it->second += c;
        if (it->second.is_zero()) a.erase(it);
      }
    }
    return a;
  }
};

} // namespace

std::vector<long long> hall_basis_sizes(int n, int k) {
  if (n < 1 || k < 1) throw InputError("hall_basis_sizes: need n >= 1, k >= 1");
  const HallFamily f = build_hall(n, k);
  std::vector<long long> sizes(static_cast<size_t>(k), 0);
  for (const HallElement& h : f.elems) ++sizes[static_cast<size_t>(h.degree) - 1];
  return sizes;
}

GNLA free_gnla(int n, int k, int dim_cap) {
  if (n < 2 || k < 1) throw InputError("free_gnla: need n >= 2, k >= 1");
  const HallFamily fam = build_hall(n, k);
  if (static_cast<int>(fam.elems.size()) > dim_cap)
    throw CapError("free_gnla: dimension exceeds the configured cap");

  GNLA a;
  a.depth = k;
  a.dims.assign(static_cast<size_t>(k), 0);
  for (const HallElement& h : fam.elems) ++a.dims[static_cast<size_t>(h.degree) - 1];
  for (size_t i = 0; i < fam.elems.size(); ++i) a.labels.push_back(fam.label(static_cast<int>(i)));

  HallRewriter rw{fam, {}};
  const int total = static_cast<int>(fam.elems.size());
  for (int i = 0; i < total; ++i) {
    for (int j = i + 1; j < total; ++j) {
      const LinComb comb = rw.bracket(i, j);
      if (comb.empty()) continue;
      std::vector<std::pair<int, Rational>> entry(comb.begin(), comb.end());
      a.table[{i, j}] = std::move(entry);
    }
  }
  a.validate();
  return a;
}

namespace {

int moebius(int m) {
  int mu = 1;
  for (int p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    m /= p;
    if (m % p == 0) return 0;
    mu = -mu;
  }
  if (m > 1) mu = -mu;
  return mu;
}

long long ipow(long long b, int e) {
  long long r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

} // namespace

long long witt_dim(int n, int k) {
  if (n < 1 || k < 1) throw InputError("witt_dim: need n >= 1, k >= 1");
  long long acc = 0;
  for (int m = 1; m <= k; ++m) {
    if (k % m != 0) continue;
    acc += moebius(m) * ipow(n, k / m);
  }
  if (acc % k != 0) throw ConsistencyError("witt_dim: formula did not divide evenly");
  return acc / k;
}

long long free_total_dim(int n, int k) {
  long long acc = 0;
  for (int j = 1; j <= k; ++j) acc += witt_dim(n, j);
  return acc;
}

} // namespace tanaka
