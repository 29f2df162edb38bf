#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "tanaka/errors.hpp"
#include "tanaka/linalg.hpp"
#include "tanaka/polynomial.hpp"
#include "tanaka/rational.hpp"
#include "tanaka/vectorfield.hpp"
#include "test_util.hpp"

using namespace tanaka;
using tanaka::test::Rng;

static const Chart XY{"x", "y"};

TEST_CASE("rational canonical form and arithmetic") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(1, -2) == Rational(-1, 2));
  CHECK(Rational(-3, 2).str() == "-3/2");
  CHECK(Rational(6, 3).str() == "2");
  CHECK((Rational(1, 2) + Rational(1, 3)) == Rational(5, 6));
  CHECK((Rational(1, 2) * Rational(2, 3)) == Rational(1, 3));
  CHECK((Rational(1, 2) / Rational(1, 4)) == Rational(2));
  CHECK(Rational(-7, 3) < Rational(0));
  CHECK_THROWS_AS(Rational(1, 0), InputError);
  CHECK_THROWS_AS(Rational(1) / Rational(0), InputError);
  CHECK(pow(Rational(2, 3), 3) == Rational(8, 27));
}

TEST_CASE("grevlex order") {
  GrevlexLess less;
  // on (x,y,z): x^2 > x y > y^2 > x z > y z > z^2
  const Exponents x2{2, 0, 0}, xy{1, 1, 0}, y2{0, 2, 0}, xz{1, 0, 1}, yz{0, 1, 1}, z2{0, 0, 2};
  CHECK(less(xy, x2));
  CHECK(less(y2, xy));
  CHECK(less(xz, y2));
  CHECK(less(yz, xz));
  CHECK(less(z2, yz));
  CHECK(less(Exponents{1, 0, 0}, x2)); // degree dominates
  CHECK(!less(x2, x2));
}

TEST_CASE("polynomial arithmetic, derivative, evaluation") {
  const Chart c{"x", "y"};
  const Polynomial x = Polynomial::variable(c, 0);
  const Polynomial y = Polynomial::variable(c, 1);
  const Polynomial p = x * x + y * Rational(3) - Polynomial::constant(c, Rational(1, 2));
  CHECK(p.total_degree() == 2);
  CHECK(p.derivative(0) == x * Rational(2));
  CHECK(p.derivative(1) == Polynomial::constant(c, Rational(3)));
  CHECK(p.evaluate({Rational(2), Rational(1, 3)}) == Rational(4) + Rational(1) - Rational(1, 2));
  CHECK((p - p).is_zero());
  CHECK(p.str() == "x^2 + 3 y - 1/2");
  CHECK((x * y - y * x).is_zero());
  CHECK(x.pow(3) == x * x * x);

  const Polynomial q = p.eliminate_variable(0, Rational(1));
  CHECK(q.chart() == Chart{"y"});
  CHECK(q.evaluate({Rational(2)}) == Rational(1) + Rational(6) - Rational(1, 2));
}

TEST_CASE("degree cap guards runaway products") {
  const int cap = Polynomial::degree_cap();
  Polynomial::set_degree_cap(4);
  const Polynomial x = Polynomial::variable(XY, 0);
  const Polynomial x3 = x.pow(3);
  CHECK_THROWS_AS(x3 * x3, CapError);
  Polynomial::set_degree_cap(cap);
  CHECK_NOTHROW(x3 * x3);
}

TEST_CASE("lie_bracket basic examples") {
  const VectorField dx = VectorField::coordinate(XY, 0);
  const VectorField dy = VectorField::coordinate(XY, 1);
  const VectorField xdy = dy * Polynomial::variable(XY, 0);

  CHECK(lie_bracket(dx, xdy) == dy);
  CHECK(lie_bracket(xdy, xdy).is_zero());
  CHECK(lie_bracket(dx, dx).is_zero());

  const Chart other{"u", "v"};
  CHECK_THROWS_AS(lie_bracket(dx, VectorField::coordinate(other, 0)), InputError);
}

// chart and total derivative of the (1,3) Monge model
static const Chart E13{"x", "y", "z", "z1", "z2", "z3"};

static VectorField e13_dx() {
  const Polynomial z1 = Polynomial::variable(E13, 3);
  const Polynomial z2 = Polynomial::variable(E13, 4);
  const Polynomial z3 = Polynomial::variable(E13, 5);
  VectorField d = VectorField::coordinate(E13, 0);
  d = d + VectorField::coordinate(E13, 1) * (z3 * z3);
  d = d + VectorField::coordinate(E13, 2) * z1;
  d = d + VectorField::coordinate(E13, 3) * z2;
  d = d + VectorField::coordinate(E13, 4) * z3;
  return d;
}

TEST_CASE("lie_bracket on the Monge chart (hand-differentiated oracle)") {
  const VectorField dz3 = VectorField::coordinate(E13, 5);
  const VectorField br = lie_bracket(dz3, e13_dx());
  // [d/dz3, D_x] = 2 z3 d/dy + d/dz2
  VectorField expect = VectorField::coordinate(E13, 1) *
                       (Polynomial::variable(E13, 5) * Rational(2));
  expect = expect + VectorField::coordinate(E13, 4);
  CHECK(br == expect);
}

TEST_CASE("evaluate examples") {
  const VectorField xdy = VectorField::coordinate(XY, 1) * Polynomial::variable(XY, 0);
  CHECK(evaluate(xdy, PointQ::origin(XY)) == std::vector<Rational>{Rational(0), Rational(0)});

  VectorField f = VectorField::coordinate(E13, 0) +
                  VectorField::coordinate(E13, 1) *
                      (Polynomial::variable(E13, 5) * Polynomial::variable(E13, 5));
  PointQ p = PointQ::origin(E13);
  p.values[5] = Rational(2);
  const std::vector<Rational> v = evaluate(f, p);
  CHECK(v == std::vector<Rational>{Rational(1), Rational(4), Rational(0), Rational(0),
                                   Rational(0), Rational(0)});

  // Z_2 = (x^2/2) d/dz + x d/dz1 + d/dz2 evaluates to e_z2 at the origin
  const Polynomial x = Polynomial::variable(E13, 0);
  VectorField z2f = VectorField::coordinate(E13, 2) * (x * x * Rational(1, 2));
  z2f = z2f + VectorField::coordinate(E13, 3) * x + VectorField::coordinate(E13, 4);
  std::vector<Rational> ez2(6, Rational(0));
  ez2[4] = Rational(1);
  CHECK(evaluate(z2f, PointQ::origin(E13)) == ez2);
}

TEST_CASE("apply examples") {
  const Polynomial x = Polynomial::variable(XY, 0);
  const Polynomial y = Polynomial::variable(XY, 1);
  CHECK(apply(VectorField::coordinate(XY, 0), x * x) == x * Rational(2));
  CHECK(apply(VectorField::coordinate(XY, 1) * x, y) == x);

  // rank-3 product chart of 8.2 type: D_x contains w1 d/dw, so D_x(w^2) = 2 w w1
  const Chart pc{"x", "w", "w1"};
  const VectorField dxw = VectorField::coordinate(pc, 0) +
                          VectorField::coordinate(pc, 1) * Polynomial::variable(pc, 2);
  const Polynomial w = Polynomial::variable(pc, 1);
  CHECK(apply(dxw, w * w) == w * Polynomial::variable(pc, 2) * Rational(2));
}

TEST_CASE("jacobi identity on random fields") {
  Rng rng(20240901);
  const std::vector<Chart> charts{XY, Chart{"x", "y", "z"}, E13};
  for (const Chart& c : charts) {
    for (int trial = 0; trial < 6; ++trial) {
      const VectorField a = tanaka::test::random_field(rng, c, 2);
      const VectorField b = tanaka::test::random_field(rng, c, 2);
      const VectorField d = tanaka::test::random_field(rng, c, 2);
      const VectorField jac = lie_bracket(lie_bracket(a, b), d) +
                              lie_bracket(lie_bracket(b, d), a) +
                              lie_bracket(lie_bracket(d, a), b);
      CHECK(jac.is_zero());
    }
  }
}

TEST_CASE("leibniz rule for brackets") {
  Rng rng(77);
  for (int trial = 0; trial < 8; ++trial) {
    const VectorField a = tanaka::test::random_field(rng, XY, 2);
    const VectorField b = tanaka::test::random_field(rng, XY, 2);
    const Polynomial f = tanaka::test::random_polynomial(rng, XY, 2);
    const VectorField lhs = lie_bracket(a, b * f);
    const VectorField rhs = lie_bracket(a, b) * f + b * apply(a, f);
    CHECK(lhs == rhs);
  }
}

static Polynomial translate(const Polynomial& p, const std::vector<Rational>& shift) {
  // p(x + shift) expanded via repeated single-variable shifts
  Polynomial r = p;
  const Chart& c = p.chart();
  for (size_t i = 0; i < c.size(); ++i) {
    if (shift[i].is_zero()) continue;
    Polynomial acc(c);
    const Polynomial xi = Polynomial::variable(c, i) + Polynomial::constant(c, shift[i]);
    for (const auto& [e, coeff] : r.terms()) {
      Exponents rest = e;
      const int k = rest[i];
      rest[i] = 0;
      acc += Polynomial::monomial(c, rest, coeff) * xi.pow(static_cast<unsigned>(k));
    }
    r = acc;
  }
  return r;
}

TEST_CASE("bracket evaluation is translation equivariant") {
  Rng rng(4242);
  const Chart c{"x", "y", "z"};
  for (int trial = 0; trial < 6; ++trial) {
    const VectorField a = tanaka::test::random_field(rng, c, 2);
    const VectorField b = tanaka::test::random_field(rng, c, 2);
    PointQ p{c, {tanaka::test::random_rational(rng), tanaka::test::random_rational(rng),
                 tanaka::test::random_rational(rng)}};
    const std::vector<Rational> direct = evaluate(lie_bracket(a, b), p);

    auto shift_field = [&](const VectorField& v) {
      std::vector<Polynomial> comps;
      for (const Polynomial& q : v.components()) comps.push_back(translate(q, p.values));
      return VectorField(c, comps);
    };
    const std::vector<Rational> shifted =
        evaluate(lie_bracket(shift_field(a), shift_field(b)), PointQ::origin(c));
    CHECK(direct == shifted);
  }
}

TEST_CASE("rref, nullspace, solve") {
  Matrix<Rational> m(3, 4);
  // rows: (1,2,0,1), (2,4,1,0), (3,6,1,1)  -> rank 2
  const long rows[3][4] = {{1, 2, 0, 1}, {2, 4, 1, 0}, {3, 6, 1, 1}};
  for (size_t i = 0; i < 3; ++i)
    for (size_t j = 0; j < 4; ++j) m.at(i, j) = Rational(rows[i][j]);

  CHECK(rank(m) == 2);
  const auto ns = nullspace(m);
  CHECK(ns.size() == 2);
  for (const auto& v : ns) {
    for (size_t i = 0; i < 3; ++i) {
      Rational acc(0);
      for (size_t j = 0; j < 4; ++j) acc += m.at(i, j) * v[j];
      CHECK(acc.is_zero());
    }
  }

  const std::vector<Rational> b{Rational(1), Rational(2), Rational(3)};
  const auto x = solve(m, b);
  REQUIRE(x.has_value());
  for (size_t i = 0; i < 3; ++i) {
    Rational acc(0);
    for (size_t j = 0; j < 4; ++j) acc += m.at(i, j) * (*x)[j];
    CHECK(acc == b[i]);
  }

  // inconsistent system
  Matrix<Rational> a(2, 1);
  a.at(0, 0) = Rational(1);
  a.at(1, 0) = Rational(1);
  CHECK(!solve(a, {Rational(0), Rational(1)}).has_value());
}

TEST_CASE("image_of_kernel agrees with explicit kernel image") {
  Rng rng(9001);
  for (int trial = 0; trial < 10; ++trial) {
    const size_t cols = 6;
    Matrix<Rational> c(3, cols), a(4, cols);
    for (size_t i = 0; i < c.rows(); ++i)
      for (size_t j = 0; j < cols; ++j) c.at(i, j) = Rational(rng.pick(-2, 2));
    for (size_t i = 0; i < a.rows(); ++i)
      for (size_t j = 0; j < cols; ++j) a.at(i, j) = Rational(rng.pick(-2, 2));

    const auto fast = image_of_kernel(c, a);

    Matrix<Rational> explicit_img;
    for (const auto& k : nullspace(c)) {
      std::vector<Rational> w(a.rows(), Rational(0));
      for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < cols; ++j) w[i] += a.at(i, j) * k[j];
      explicit_img.append_row(w);
    }
    const size_t expect_rank = explicit_img.rows() == 0 ? 0 : rank(explicit_img);
    CHECK(fast.size() == expect_rank);
    for (const auto& v : fast) CHECK(in_row_span(explicit_img, v));
  }
}

TEST_CASE("incremental basis keeps first independent vectors") {
  IncrementalBasis<Rational> basis(3);
  CHECK(basis.add({Rational(1), Rational(0), Rational(0)}));
  CHECK(!basis.add({Rational(2), Rational(0), Rational(0)}));
  CHECK(basis.add({Rational(1), Rational(1), Rational(0)}));
  CHECK(basis.size() == 2);
  const auto coords = basis.coordinates({Rational(3), Rational(2), Rational(0)});
  REQUIRE(coords.has_value());
  CHECK((*coords)[0] == Rational(1));
  CHECK((*coords)[1] == Rational(2));
  CHECK(!basis.coordinates({Rational(0), Rational(0), Rational(1)}).has_value());
}
