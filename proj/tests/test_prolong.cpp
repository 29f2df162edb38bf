#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "tanaka/errors.hpp"
#include "tanaka/prolong.hpp"

using namespace tanaka;

namespace {

const Chart E13{"x", "y", "z", "z1", "z2", "z3"};

GNLA e13_gnla() {
  const Polynomial z1 = Polynomial::variable(E13, 3);
  const Polynomial z2 = Polynomial::variable(E13, 4);
  const Polynomial z3 = Polynomial::variable(E13, 5);
  VectorField d = VectorField::coordinate(E13, 0);
  d = d + VectorField::coordinate(E13, 1) * (z3 * z3);
  d = d + VectorField::coordinate(E13, 2) * z1;
  d = d + VectorField::coordinate(E13, 3) * z2;
  d = d + VectorField::coordinate(E13, 4) * z3;
  const auto df = derived_flag({d, VectorField::coordinate(E13, 5)});
  return gnla_at(df, PointQ::origin(E13));
}

GNLA heisenberg_gnla() { return free_gnla(2, 2); }

} // namespace

TEST_CASE("g_0 of the Heisenberg algebra is gl(2) with the trace action") {
  const GNLA a = heisenberg_gnla();
  const auto lev = prolong_step(a, {}, 0);
  CHECK(lev.dim() == 4);

  // every A in gl(2) extends with u_{-2} = tr(A); check the four matrix units
  Matrix<Rational> basis_mat(static_cast<size_t>(lev.total_unknowns), 4);
  for (size_t b = 0; b < 4; ++b)
    for (size_t r = 0; r < static_cast<size_t>(lev.total_unknowns); ++r)
      basis_mat.at(r, b) = lev.basis[b][r];
  for (int er = 0; er < 2; ++er) {
    for (int ec = 0; ec < 2; ++ec) {
      std::vector<Rational> raw(static_cast<size_t>(lev.total_unknowns), Rational(0));
      // u(e_src)[tgt] = A[tgt][src] for A = E_{er,ec}
      raw[static_cast<size_t>(lev.offset[0] + ec * 2 + er)] = Rational(1);
      raw[static_cast<size_t>(lev.offset[1])] = er == ec ? Rational(1) : Rational(0);
      CHECK(solve(basis_mat, raw).has_value());
    }
  }
}

TEST_CASE("g_0 of free algebras is full gl(n)") {
  CHECK(prolong_step(free_gnla(3, 2), {}, 0).dim() == 9);
  CHECK(prolong_step(free_gnla(2, 3), {}, 0).dim() == 4);
  CHECK(prolong_step(free_gnla(4, 2), {}, 0).dim() == 16);
}

TEST_CASE("E13 prolongation: dims (3,2,0), total 11") {
  const Prolongation pro = tanaka_prolongation(e13_gnla());
  CHECK(pro.level_dims() == std::vector<int>{3, 2, 0});
  CHECK(pro.status == Prolongation::Status::terminated);
  REQUIRE(pro.total_dim().has_value());
  CHECK(*pro.total_dim() == 11);
}

TEST_CASE("free algebra prolongations match the classical totals") {
  SUBCASE("free(2,3): the G2 bound 14") {
    const Prolongation pro = tanaka_prolongation(free_gnla(2, 3));
    CHECK(pro.status == Prolongation::Status::terminated);
    CHECK(*pro.total_dim() == 14);
  }
  SUBCASE("free(3,2): o(7), total 21") {
    const Prolongation pro = tanaka_prolongation(free_gnla(3, 2));
    CHECK(*pro.total_dim() == 21);
  }
  SUBCASE("free(4,2): o(9), total 36") {
    const Prolongation pro = tanaka_prolongation(free_gnla(4, 2));
    CHECK(*pro.total_dim() == 36);
  }
  SUBCASE("free(3,3) and free(2,4): g_1 = 0") {
    const Prolongation p33 = tanaka_prolongation(free_gnla(3, 3));
    REQUIRE(p33.levels_computed() >= 2);
    CHECK(p33.levels[1].dim() == 0);
    CHECK(*p33.total_dim() == 23);
    const Prolongation p24 = tanaka_prolongation(free_gnla(2, 4));
    CHECK(p24.levels[1].dim() == 0);
    CHECK(*p24.total_dim() == 12);
  }
}

TEST_CASE("contact algebra never terminates: capped verdict") {
  const Prolongation pro = tanaka_prolongation(heisenberg_gnla(), 6);
  CHECK(pro.status == Prolongation::Status::capped);
  CHECK(!pro.total_dim().has_value());
  for (const auto& lev : pro.levels) CHECK(lev.dim() > 0);
  CHECK(pro.levels_computed() == 7);
  // classical contact dims: g_k has dimension of weighted-degree-(k+2) polynomials
  CHECK(pro.levels[0].dim() == 4);
  CHECK(pro.levels[1].dim() == 6);
}

TEST_CASE("monotone vanishing: the level after a terminal zero is zero") {
  for (const GNLA& a : {e13_gnla(), free_gnla(2, 3)}) {
    const Prolongation pro = tanaka_prolongation(a);
    REQUIRE(pro.status == Prolongation::Status::terminated);
    const auto extra = prolong_step(a, pro.levels, pro.levels_computed());
    CHECK(extra.dim() == 0);
  }
}

TEST_CASE("unknown-count guard") {
  CHECK_THROWS_AS(tanaka_prolongation(free_gnla(3, 2), 10, 5), CapError);
}

TEST_CASE("the grading derivation is a member of every computed g_0") {
  const std::vector<GNLA> algebras{e13_gnla(), free_gnla(2, 2), free_gnla(2, 3),
                                   free_gnla(3, 2), free_gnla(2, 4)};
  for (const GNLA& a : algebras) {
    const Prolongation pro = tanaka_prolongation(a, 2);
    const auto e = pro.grading_element();
    CHECK(e.degree == 0);
    CHECK(pro.space_dim(0) >= 1);
    // E acts on g_{-1} by -1
    auto x = pro.zero_element(-1);
    x.coords[0] = Rational(1);
    const auto ex = pro.bracket(e, x);
    CHECK(ex.coords[0] == Rational(-1));
  }
}

TEST_CASE("non-fundamental input is rejected") {
  GNLA a;
  a.depth = 2;
  a.dims = {2, 1};
  a.labels = {"a", "b", "c"};
  CHECK_THROWS_AS(tanaka_prolongation(a), InputError);
}

namespace {

// every homogeneous basis element of the computed prolongation of `pro`
std::vector<Prolongation::Element> all_basis_elements(const Prolongation& pro) {
  std::vector<Prolongation::Element> out;
  for (int d = -pro.gnla.depth; d < pro.levels_computed(); ++d) {
    const int dim = pro.space_dim(d);
    for (int t = 0; t < dim; ++t) {
      auto e = pro.zero_element(d);
      e.coords[static_cast<size_t>(t)] = Rational(1);
      out.push_back(std::move(e));
    }
  }
  return out;
}

bool coords_zero(const Prolongation::Element& e) {
  for (const auto& c : e.coords)
    if (!c.is_zero()) return false;
  return true;
}

} // namespace

TEST_CASE("graded bracket of the prolongation") {
  const Prolongation pro = tanaka_prolongation(e13_gnla());
  const auto E = pro.grading_element();

  SUBCASE("grading element acts by the grade on negative elements") {
    for (int d = -pro.gnla.depth; d < 0; ++d) {
      for (int t = 0; t < pro.space_dim(d); ++t) {
        auto x = pro.zero_element(d);
        x.coords[static_cast<size_t>(t)] = Rational(1);
        const auto ex = pro.bracket(E, x);
        for (int s = 0; s < pro.space_dim(d); ++s)
          CHECK(ex.coords[static_cast<size_t>(s)] == (s == t ? Rational(d) : Rational(0)));
      }
    }
  }

  SUBCASE("[g_1, g_{-1}] lands in the computed g_0") {
    for (int b1 = 0; b1 < pro.space_dim(1); ++b1) {
      auto u = pro.zero_element(1);
      u.coords[static_cast<size_t>(b1)] = Rational(1);
      for (int j = 0; j < pro.space_dim(-1); ++j) {
        auto x = pro.zero_element(-1);
        x.coords[static_cast<size_t>(j)] = Rational(1);
        const auto w = pro.bracket(u, x);
        CHECK(w.degree == 0);
        CHECK(w.coords.size() == static_cast<size_t>(pro.space_dim(0)));
      }
    }
  }

  SUBCASE("[u, u] = 0 for every element, including mixed-degree sums handled pairwise") {
    for (const auto& u : all_basis_elements(pro)) {
      if (u.degree * 2 < -pro.gnla.depth || (u.degree > 0 && u.degree * 2 >= pro.levels_computed()))
        continue;
      CHECK(coords_zero(pro.bracket(u, u)));
    }
  }

  SUBCASE("Jacobi identity on all in-range triples") {
    const auto elems = all_basis_elements(pro);
    const int lo = -pro.gnla.depth;
    const int hi = pro.levels_computed() - 1;
    int checked = 0;
    for (const auto& x : elems) {
      for (const auto& y : elems) {
        for (const auto& z : elems) {
          const int dxy = x.degree + y.degree, dyz = y.degree + z.degree,
                    dzx = z.degree + x.degree;
          const int total = x.degree + y.degree + z.degree;
          if (dxy > hi || dyz > hi || dzx > hi || total > hi) continue;
          const auto t1 = pro.bracket(pro.bracket(x, y), z);
          const auto t2 = pro.bracket(pro.bracket(y, z), x);
          const auto t3 = pro.bracket(pro.bracket(z, x), y);
          if (total < lo) {
            CHECK(coords_zero(t1));
            CHECK(coords_zero(t2));
            CHECK(coords_zero(t3));
          } else {
            auto sum = t1;
            for (size_t i = 0; i < sum.coords.size(); ++i)
              sum.coords[i] += t2.coords[i] + t3.coords[i];
            CHECK(coords_zero(sum));
          }
          ++checked;
        }
      }
    }
    CHECK(checked > 100);
  }
}

TEST_CASE("bracket degree range errors") {
  const Prolongation pro = tanaka_prolongation(e13_gnla());
  // degree 1+1 = 2 is computed (dim 0); degree 2+2 = 4 is beyond the range
  auto u = pro.zero_element(1);
  u.coords[0] = Rational(1);
  CHECK(pro.bracket(u, u).degree == 2);
  const auto z2 = pro.zero_element(2);
  CHECK_THROWS_AS(pro.bracket(z2, z2), InputError);
}
