#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "tanaka/errors.hpp"
#include "tanaka/flag.hpp"

using namespace tanaka;

namespace {

const Chart E13{"x", "y", "z", "z1", "z2", "z3"};

std::vector<VectorField> e13_frame() {
  const Polynomial z1 = Polynomial::variable(E13, 3);
  const Polynomial z2 = Polynomial::variable(E13, 4);
  const Polynomial z3 = Polynomial::variable(E13, 5);
  VectorField d = VectorField::coordinate(E13, 0);
  d = d + VectorField::coordinate(E13, 1) * (z3 * z3);
  d = d + VectorField::coordinate(E13, 2) * z1;
  d = d + VectorField::coordinate(E13, 3) * z2;
  d = d + VectorField::coordinate(E13, 4) * z3;
  return {d, VectorField::coordinate(E13, 5)};
}

// Cartan distribution C_k on J^k(R,R): chart (x, y0..yk)
std::vector<VectorField> goursat_frame(int k) {
  Chart c{"x"};
  for (int i = 0; i <= k; ++i) c.push_back("y" + std::to_string(i));
  VectorField d = VectorField::coordinate(c, 0);
  for (int i = 0; i < k; ++i)
    d = d + VectorField::coordinate(c, static_cast<size_t>(i) + 1) *
                Polynomial::variable(c, static_cast<size_t>(i) + 2);
  return {d, VectorField::coordinate(c, static_cast<size_t>(k) + 1)};
}

std::vector<VectorField> heisenberg_frame() {
  const Chart c{"x", "y", "z"};
  return {VectorField::coordinate(c, 0),
          VectorField::coordinate(c, 1) +
              VectorField::coordinate(c, 2) * Polynomial::variable(c, 0)};
}

} // namespace

TEST_CASE("integrable frame stabilizes at level 1") {
  const Chart c{"x", "y"};
  const auto df = derived_flag({VectorField::coordinate(c, 0), VectorField::coordinate(c, 1)});
  CHECK(df.depth() == 1);
  CHECK(!df.capped);
}

TEST_CASE("E13 flag has four levels") {
  const auto df = derived_flag(e13_frame());
  CHECK(df.depth() == 4);
  CHECK(!df.capped);
}

TEST_CASE("Goursat C_3 flag has four levels") {
  const auto df = derived_flag(goursat_frame(3));
  CHECK(df.depth() == 4);
}

TEST_CASE("flag_at growth vectors") {
  SUBCASE("E13 at origin: growth (2,1,2,1), kappa 4") {
    const auto df = derived_flag(e13_frame());
    const auto fp = flag_at(df, PointQ::origin(E13));
    CHECK(fp.growth == std::vector<int>{2, 1, 2, 1});
    CHECK(fp.cumulative == std::vector<int>{2, 3, 5, 6});
    CHECK(fp.kappa == 4);
    CHECK(is_bracket_generating(fp));
  }
  SUBCASE("Heisenberg at origin: growth (2,1)") {
    const auto df = derived_flag(heisenberg_frame());
    const auto fp = flag_at(df, PointQ::origin(Chart{"x", "y", "z"}));
    CHECK(fp.growth == std::vector<int>{2, 1});
    CHECK(fp.kappa == 2);
  }
  SUBCASE("C_2 at origin: growth (2,1,1)") {
    const auto df = derived_flag(goursat_frame(2));
    const auto fp = flag_at(df, PointQ::origin(df.chart()));
    CHECK(fp.growth == std::vector<int>{2, 1, 1});
  }
}

TEST_CASE("bracket generation verdicts") {
  const Chart c{"x", "y"};
  SUBCASE("single straight field is not generating") {
    const auto df = derived_flag({VectorField::coordinate(c, 0)});
    CHECK(!is_bracket_generating(flag_at(df, PointQ::origin(c))));
  }
  SUBCASE("<d/dx, x d/dy> generates at the origin via one bracket") {
    const auto df = derived_flag(
        {VectorField::coordinate(c, 0), VectorField::coordinate(c, 1) * Polynomial::variable(c, 0)});
    const auto fp = flag_at(df, PointQ::origin(c));
    CHECK(is_bracket_generating(fp));
    CHECK(fp.growth == std::vector<int>{1, 1});
  }
}

TEST_CASE("adapted bases are nested and representatives recorded") {
  const auto df = derived_flag(e13_frame());
  const auto fp = flag_at(df, PointQ::origin(E13));
  REQUIRE(fp.adapted.rows() == 6);
  // block of level i sits directly after the block of level i-1
  int prev_end = 0;
  for (int lev = 1; lev <= fp.kappa; ++lev) {
    const auto [b, e] = fp.block(lev);
    CHECK(b == prev_end);
    CHECK(e - b == fp.growth[static_cast<size_t>(lev) - 1]);
    prev_end = e;
  }
  // each representative field evaluates to the corresponding adapted row
  for (size_t r = 0; r < fp.adapted.rows(); ++r) {
    const auto [lev, idx] = fp.representative[r];
    const auto val =
        evaluate(df.levels[static_cast<size_t>(lev)][static_cast<size_t>(idx)], fp.point);
    CHECK(val == fp.adapted.row(r));
  }
}

TEST_CASE("regularity probe") {
  SUBCASE("E13 growth is constant at seeded samples") {
    const auto df = derived_flag(e13_frame());
    const auto pts = default_probe_points(E13, 5, 7);
    const auto probe = regularity_probe(df, pts);
    CHECK(probe.regular_at_samples);
    for (const auto& g : probe.growth) CHECK(g == std::vector<int>{2, 1, 2, 1});
  }
  SUBCASE("rank jump of <d/dx, x d/dy> is flagged") {
    const Chart c{"x", "y"};
    const auto df = derived_flag(
        {VectorField::coordinate(c, 0), VectorField::coordinate(c, 1) * Polynomial::variable(c, 0)});
    PointQ q{c, {Rational(1), Rational(0)}};
    const auto probe = regularity_probe(df, {PointQ::origin(c), q});
    CHECK(!probe.regular_at_samples);
    CHECK(probe.growth[0] == std::vector<int>{1, 1});
    CHECK(probe.growth[1] == std::vector<int>{2});
  }
  SUBCASE("single point is trivially regular") {
    const auto df = derived_flag(heisenberg_frame());
    const auto probe = regularity_probe(df, {PointQ::origin(Chart{"x", "y", "z"})});
    CHECK(probe.regular_at_samples);
    CHECK(probe.points.size() == 1);
  }
}

namespace {

bool contains_direction(const std::vector<std::vector<Rational>>& space,
                        const std::vector<Rational>& v) {
  Matrix<Rational> m;
  for (const auto& row : space) m.append_row(row);
  if (m.rows() == 0) return false;
  return in_row_span(m, v);
}

} // namespace

TEST_CASE("cauchy characteristic spaces") {
  SUBCASE("C_3: Delta_2 has the vertical characteristic d/dy3") {
    const auto df = derived_flag(goursat_frame(3));
    const auto space = cauchy_characteristic_space(df, 2, PointQ::origin(df.chart()));
    REQUIRE(!space.empty());
    std::vector<Rational> dy3(df.chart().size(), Rational(0));
    dy3.back() = Rational(1);
    CHECK(contains_direction(space, dy3));
  }
  SUBCASE("E13: Delta_2 has no characteristic at the origin") {
    const auto df = derived_flag(e13_frame());
    CHECK(cauchy_characteristic_space(df, 2, PointQ::origin(E13)).empty());
  }
  SUBCASE("integrable plane field: everything is characteristic") {
    const Chart c{"x", "y"};
    const auto df =
        derived_flag({VectorField::coordinate(c, 0), VectorField::coordinate(c, 1)});
    const auto space = cauchy_characteristic_space(df, 1, PointQ::origin(c));
    CHECK(space.size() == 2);
  }
}

TEST_CASE("kappa cap: still-growing flags are reported capped, stabilized ones are not") {
  const auto frame = goursat_frame(4); // genuine depth 5
  const auto short_df = derived_flag(frame, 2);
  CHECK(short_df.capped);
  CHECK(short_df.depth() == 2);

  const Chart c{"x", "y"};
  const auto flat = derived_flag({VectorField::coordinate(c, 0), VectorField::coordinate(c, 1)}, 1);
  CHECK(!flat.capped); // stabilized exactly at the cap

  const auto exact = derived_flag(goursat_frame(2), 3);
  CHECK(!exact.capped); // reaches TM at depth 3 = cap
  CHECK(exact.depth() == 3);
}

TEST_CASE("Goursat growth for the Cartan models C_k") {
  for (int k = 1; k <= 5; ++k) {
    const auto df = derived_flag(goursat_frame(k));
    const auto fp = flag_at(df, PointQ::origin(df.chart()));
    std::vector<int> want{2};
    for (int i = 0; i < k; ++i) want.push_back(1);
    CHECK(fp.growth == want);
  }
}

TEST_CASE("de-prolongation criterion matches growth shape on samples") {
  // growth (2,1,1,...) <=> Delta_2 has a characteristic inside Delta
  struct Case {
    std::vector<VectorField> frame;
    bool expect;
  };
  const std::vector<Case> cases{{goursat_frame(3), true}, {e13_frame(), false}};
  for (const auto& c : cases) {
    const auto df = derived_flag(c.frame);
    const PointQ origin = PointQ::origin(df.chart());
    const auto fp = flag_at(df, origin);
    const bool shape =
        fp.growth.size() >= 3 && fp.growth[0] == 2 && fp.growth[1] == 1 && fp.growth[2] == 1;
    const auto space = cauchy_characteristic_space(df, 2, origin);
    // dim( span(space) /\ Delta(p) ) via inclusion-exclusion of row spans
    Matrix<Rational> joint;
    for (const auto& v : space) joint.append_row(v);
    const size_t dim_space = joint.rows() == 0 ? 0 : rank(joint);
    for (int i = 0; i < fp.growth[0]; ++i) joint.append_row(fp.adapted.row(static_cast<size_t>(i)));
    const size_t dim_joint = rank(joint);
    const bool inside_delta =
        dim_space + static_cast<size_t>(fp.growth[0]) > dim_joint;
    CHECK(shape == c.expect);
    CHECK(inside_delta == c.expect);
  }
}
