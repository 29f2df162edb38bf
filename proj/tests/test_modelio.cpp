#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "json.hpp"
#include "tanaka/errors.hpp"
#include "tanaka/modelio.hpp"
#include "tanaka/models.hpp"

using namespace tanaka;

TEST_CASE("parse a minimal model") {
  const Model m = parse_model("coords x y\n"
                              "field U = d/dx\n"
                              "field V = x d/dy\n"
                              "distribution D = [U, V]\n");
  CHECK(m.chart == Chart{"x", "y"});
  CHECK(m.distribution == std::vector<std::string>{"U", "V"});
  CHECK(m.fields.at("U") == VectorField::coordinate(m.chart, 0));
  CHECK(m.fields.at("V") ==
        VectorField::coordinate(m.chart, 1) * Polynomial::variable(m.chart, 0));
}

TEST_CASE("parse the full Monge source") {
  const std::string src =
      "model e13\n"
      "coords x y z z1 z2 z3\n"
      "# the total derivative along the equation\n"
      "field Dx = d/dx + z3^2 d/dy + z1 d/dz + z2 d/dz1 + z3 d/dz2\n"
      "field V = d/dz3\n"
      "distribution D = [Dx, V]\n"
      "marked section = V\n"
      "point 0 0 0 0 0 0\n";
  const Model m = parse_model(src);
  const JetModel ref = monge(1, 3);
  CHECK(m.chart == ref.model.chart);
  CHECK(m.fields.at("Dx") == ref.model.fields.at("Dx"));
  CHECK(m.fields.at("V") == ref.model.fields.at("V"));
  REQUIRE(m.base_point.has_value());
  CHECK(*m.base_point == PointQ::origin(m.chart));
}

TEST_CASE("parse errors carry locations") {
  SUBCASE("unknown coordinate in a basis token") {
    try {
      parse_model("coords x y\nfield W = d/dq\ndistribution D = [W]\n");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line == 2);
      CHECK(std::string(e.what()).find("unknown coordinate") != std::string::npos);
    }
  }
  SUBCASE("undefined field reference") {
    CHECK_THROWS_AS(parse_model("coords x\nfield U = d/dx\ndistribution D = [U, V]\n"),
                    ParseError);
  }
  SUBCASE("non-rational literal") {
    CHECK_THROWS_AS(parse_model("coords x y\nfield U = 1.5 d/dx\ndistribution D = [U]\n"),
                    ParseError);
  }
  SUBCASE("scalar expression cannot define a field") {
    CHECK_THROWS_AS(parse_model("coords x y\nfield U = x^2\ndistribution D = [U]\n"),
                    ParseError);
  }
  SUBCASE("duplicate coordinates") {
    CHECK_THROWS_AS(parse_model("coords x x\nfield U = d/dx\ndistribution D = [U]\n"),
                    ParseError);
  }
  SUBCASE("missing distribution") {
    CHECK_THROWS_AS(parse_model("coords x\nfield U = d/dx\n"), ParseError);
  }
}

TEST_CASE("expression features") {
  const Model m = parse_model(
      "coords x y z\n"
      "field A = d/dx + 2 x y d/dy - 3/2 z^2 d/dz\n"
      "field B = (x^2 + y) d/dz\n"
      "field C = A + x * B\n"
      "field E = -d/dx\n"
      "distribution D = [A, B, C, E]\n");
  const Polynomial x = Polynomial::variable(m.chart, 0);
  const Polynomial y = Polynomial::variable(m.chart, 1);
  const Polynomial z = Polynomial::variable(m.chart, 2);
  VectorField a = VectorField::coordinate(m.chart, 0);
  a = a + VectorField::coordinate(m.chart, 1) * (x * y * Rational(2));
  a = a - VectorField::coordinate(m.chart, 2) * (z * z * Rational(3, 2));
  CHECK(m.fields.at("A") == a);
  CHECK(m.fields.at("B") == VectorField::coordinate(m.chart, 2) * (x * x + y));
  CHECK(m.fields.at("C") == a + m.fields.at("B") * x);
  CHECK(m.fields.at("E") == -VectorField::coordinate(m.chart, 0));
}

TEST_CASE("round trips") {
  SUBCASE("constructed models survive print -> parse") {
    const auto check_roundtrip = [](const Model& m) {
      const Model back = parse_model(print_model(m));
      CHECK(back == m);
    };
    check_roundtrip(monge(1, 3).model);
    check_roundtrip(cartan_jet(3).model);
    check_roundtrip(mixed_jet(1, 2).model);
    check_roundtrip(e13_with_symmetries().first.model);
    check_roundtrip(product_with_jets(monge(1, 2), 2).model);
    check_roundtrip(prolong_rank2(monge(1, 2).model));
    Model r3 = mixed_jet(1, 1).model;
    r3.marked = {{"X", "Dx"}, {"Y", "Vy"}, {"Z", "Vz"}};
    check_roundtrip(prolong_rank3(r3, Rank3Type::II));
  }
  SUBCASE("negative rational coefficients print exactly") {
    Model m;
    m.chart = {"x", "y"};
    m.field_order = {"U"};
    m.fields["U"] = VectorField::coordinate(m.chart, 1) *
                    (Polynomial::variable(m.chart, 0) * Rational(-3, 2));
    m.distribution = {"U"};
    const std::string printed = print_model(m);
    CHECK(printed.find("-3/2 x d/dy") != std::string::npos);
    CHECK(parse_model(printed) == m);
  }
  SUBCASE("no marked section is omitted") {
    Model m;
    m.chart = {"x"};
    m.field_order = {"U"};
    m.fields["U"] = VectorField::coordinate(m.chart, 0);
    m.distribution = {"U"};
    CHECK(print_model(m).find("marked") == std::string::npos);
    CHECK(parse_model(print_model(m)) == m);
  }
}

TEST_CASE("parse_field_expression uses the model scope") {
  const auto [jm, syms] = e13_with_symmetries();
  const VectorField v = parse_field_expression(jm.model, "d/dz3");
  CHECK(v == VectorField::coordinate(jm.model.chart, 5));
  const VectorField s2 = parse_field_expression(jm.model, "S2");
  CHECK(s2 == jm.model.fields.at("S2"));
  CHECK_THROWS_AS(parse_field_expression(jm.model, "nosuch"), ParseError);
}

TEST_CASE("parse_point") {
  const Chart c{"x", "y", "z"};
  const PointQ p = parse_point(c, "1/2, -3, 0");
  CHECK(p.values == std::vector<Rational>{Rational(1, 2), Rational(-3), Rational(0)});
  CHECK_THROWS_AS(parse_point(c, "1 2"), ParseError);
}

TEST_CASE("report JSON shape and determinism") {
  const JetModel jm = monge(1, 3);
  Config cfg;
  cfg.probe_samples = 2;
  const FinitenessReport rep = finiteness_report(jm.model, std::nullopt, cfg);
  const std::string a = emit_report(rep);
  const std::string b = emit_report(finiteness_report(jm.model, std::nullopt, cfg));
  CHECK(a == b);

  const auto j = nlohmann::json::parse(a);
  CHECK(j["growth_incremental"] == nlohmann::json({2, 1, 2, 1}));
  CHECK(j["growth_cumulative"] == nlohmann::json({2, 3, 5, 6}));
  CHECK(j["tanaka"]["dims"] == nlohmann::json({3, 2, 0}));
  CHECK(j["tanaka"]["total"] == 11);
  CHECK(j["theorem1_bound"] == 11);
  CHECK(j["h0_dim"] == 0);
  CHECK(j["char_variety"]["verdict"] == "empty");
  CHECK(j["finiteness_verdict"] == "finite_char_variety");
  CHECK(j["theorem2_finite"] == true);
  CHECK(j["version"] == kVersion);
  CHECK(j["seed"] == 0);
  CHECK(j.contains("config"));

  // key order is fixed: model first, version last
  CHECK(a.find("\"model\"") < a.find("\"point\""));
  CHECK(a.find("\"samples\"") < a.find("\"seed\""));
  CHECK(a.rfind("\"version\"") > a.rfind("\"config\""));
}

TEST_CASE("undecided char-variety verdicts serialize with their stage") {
  FinitenessReport r;
  r.model_name = "synthetic";
  r.point = PointQ::origin(Chart{"x"});
  r.char_verdict.kind = CharVerdict::Kind::undecided;
  r.char_verdict.stage = "groebner";
  const auto j = nlohmann::json::parse(emit_report(r));
  CHECK(j["char_variety"]["verdict"] == "undecided");
  CHECK(j["char_variety"]["stage"] == "groebner");
  CHECK(j["char_variety"]["witness_p"].is_null());
  CHECK(j["tanaka"]["total"].is_null());
  CHECK(j["theorem1_bound"].is_null());
}

TEST_CASE("render_text mentions the essentials") {
  const JetModel jm = monge(1, 3);
  Config cfg;
  cfg.probe_samples = 1;
  const std::string text = render_text(finiteness_report(jm.model, std::nullopt, cfg));
  CHECK(text.find("growth") != std::string::npos);
  CHECK(text.find("verdict: finite_char_variety") != std::string::npos);
}

TEST_CASE("gnla JSON includes labels and brackets") {
  const GNLA a = free_gnla(2, 2);
  const auto j = nlohmann::json::parse(gnla_to_json(a));
  CHECK(j["dims"] == nlohmann::json({2, 1}));
  CHECK(j["labels"].size() == 3);
  CHECK(j["brackets"].size() == 1);
}
