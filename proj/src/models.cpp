#include "tanaka/models.hpp"

#include <algorithm>

#include "tanaka/errors.hpp"

namespace tanaka {

namespace {

std::string fresh_coordinate(const Chart& chart, const std::string& stem) {
  if (std::find(chart.begin(), chart.end(), stem) == chart.end()) return stem;
  for (int i = 1;; ++i) {
    const std::string c = stem + std::to_string(i);
    if (std::find(chart.begin(), chart.end(), c) == chart.end()) return c;
  }
}

VectorField on_bigger_chart(const VectorField& f, const Chart& big) {
  // the original chart must be a prefix of the bigger one
  std::vector<Polynomial> comps;
  comps.reserve(big.size());
  for (size_t i = 0; i < big.size(); ++i) {
    Polynomial p(big);
    if (i < f.chart().size()) {
      for (const auto& [e, c] : f.component(i).terms()) {
        Exponents ee = e;
        ee.resize(big.size(), 0);
        p += Polynomial::monomial(big, ee, c);
      }
    }
    comps.push_back(std::move(p));
  }
  return VectorField(big, comps);
}

} // namespace

JetModel cartan_jet(int k) {
  if (k < 1) throw InputError("cartan_jet: k >= 1 required");
  Chart chart{"x"};
  for (int i = 0; i <= k; ++i) chart.push_back("y" + std::to_string(i));

  VectorField d = VectorField::coordinate(chart, 0);
  for (int i = 0; i < k; ++i)
    d = d + VectorField::coordinate(chart, static_cast<size_t>(i) + 1) *
                Polynomial::variable(chart, static_cast<size_t>(i) + 2);

  Model m;
  m.name = "cartan_jet_" + std::to_string(k);
  m.chart = chart;
  m.field_order = {"Dx", "V"};
  m.fields["Dx"] = d;
  m.fields["V"] = VectorField::coordinate(chart, static_cast<size_t>(k) + 1);
  m.distribution = {"Dx", "V"};
  m.marked["section"] = "V";
  m.base_point = PointQ::origin(chart);
  return JetModel{JetModel::Kind::cartan_jet, {k}, std::move(m), "Cartan distribution on J^k(R,R)"};
}

JetModel monge(int m_ord, int n_ord) {
  if (m_ord < 1 || n_ord < 1) throw InputError("monge: m, n >= 1 required");
  Chart chart{"x"};
  chart.push_back("y");
  for (int i = 1; i < m_ord; ++i) chart.push_back("y" + std::to_string(i));
  chart.push_back("z");
  for (int i = 1; i <= n_ord; ++i) chart.push_back("z" + std::to_string(i));

  const size_t y0 = 1;
  const size_t z0 = y0 + static_cast<size_t>(m_ord);
  const size_t zn = z0 + static_cast<size_t>(n_ord);

  VectorField d = VectorField::coordinate(chart, 0);
  for (size_t i = 0; i + 1 < static_cast<size_t>(m_ord); ++i)
    d = d + VectorField::coordinate(chart, y0 + i) * Polynomial::variable(chart, y0 + i + 1);
  const Polynomial top = Polynomial::variable(chart, zn);
  d = d + VectorField::coordinate(chart, y0 + static_cast<size_t>(m_ord) - 1) * (top * top);
  for (size_t i = 0; i < static_cast<size_t>(n_ord); ++i)
    d = d + VectorField::coordinate(chart, z0 + i) * Polynomial::variable(chart, z0 + i + 1);

  Model m;
  m.name = "monge_" + std::to_string(m_ord) + "_" + std::to_string(n_ord);
  m.chart = chart;
  m.field_order = {"Dx", "V"};
  m.fields["Dx"] = d;
  m.fields["V"] = VectorField::coordinate(chart, zn);
  m.distribution = {"Dx", "V"};
  m.marked["section"] = "V";
  m.base_point = PointQ::origin(chart);
  return JetModel{JetModel::Kind::monge, {m_ord, n_ord}, std::move(m),
                  "Monge model y^(m) = (z^(n))^2"};
}

JetModel mixed_jet(int m_ord, int n_ord) {
  if (m_ord < 0 || n_ord < 0 || (m_ord == 0 && n_ord == 0))
    throw InputError("mixed_jet: need m, n >= 0, not both zero");
  Chart chart{"x"};
  for (int i = 0; i <= m_ord; ++i) chart.push_back("y" + std::to_string(i));
  for (int i = 0; i <= n_ord; ++i) chart.push_back("z" + std::to_string(i));
  const size_t y0 = 1;
  const size_t z0 = y0 + static_cast<size_t>(m_ord) + 1;

  VectorField d = VectorField::coordinate(chart, 0);
  for (int i = 0; i < m_ord; ++i)
    d = d + VectorField::coordinate(chart, y0 + static_cast<size_t>(i)) *
                Polynomial::variable(chart, y0 + static_cast<size_t>(i) + 1);
  for (int i = 0; i < n_ord; ++i)
    d = d + VectorField::coordinate(chart, z0 + static_cast<size_t>(i)) *
                Polynomial::variable(chart, z0 + static_cast<size_t>(i) + 1);

  Model m;
  m.name = "mixed_jet_" + std::to_string(m_ord) + "_" + std::to_string(n_ord);
  m.chart = chart;
  m.field_order = {"Dx", "Vy", "Vz"};
  m.fields["Dx"] = d;
  m.fields["Vy"] = VectorField::coordinate(chart, y0 + static_cast<size_t>(m_ord));
  m.fields["Vz"] = VectorField::coordinate(chart, z0 + static_cast<size_t>(n_ord));
  m.distribution = {"Dx", "Vy", "Vz"};
  m.base_point = PointQ::origin(chart);
  return JetModel{JetModel::Kind::mixed_jet, {m_ord, n_ord}, std::move(m),
                  "Cartan distribution on J^{m,n}(R,R^2)"};
}

JetModel product_with_jets(const JetModel& base, int l) {
  if (base.kind != JetModel::Kind::monge)
    throw InputError("product_with_jets: base must be a Monge model");
  if (l < 1) throw InputError("product_with_jets: l >= 1 required");

  Chart chart = base.model.chart;
  chart.push_back("w");
  for (int i = 1; i <= l; ++i) chart.push_back("w" + std::to_string(i));
  const size_t w0 = base.model.chart.size();

  VectorField d = on_bigger_chart(base.model.fields.at("Dx"), chart);
  for (int i = 0; i < l; ++i)
    d = d + VectorField::coordinate(chart, w0 + static_cast<size_t>(i)) *
                Polynomial::variable(chart, w0 + static_cast<size_t>(i) + 1);

  Model m;
  m.name = base.model.name + "_x_jet" + std::to_string(l);
  m.chart = chart;
  m.field_order = {"Dx", "Vz", "Vw"};
  m.fields["Dx"] = d;
  m.fields["Vz"] = on_bigger_chart(base.model.fields.at("V"), chart);
  m.fields["Vw"] = VectorField::coordinate(chart, w0 + static_cast<size_t>(l));
  m.distribution = {"Dx", "Vz", "Vw"};
  m.base_point = PointQ::origin(chart);
  JetModel out{JetModel::Kind::product_with_jets, base.params, std::move(m),
               "Monge model times J^l(R,R)"};
  out.params.push_back(l);
  return out;
}

std::pair<JetModel, std::vector<GradedField>> e13_with_symmetries() {
  JetModel jm = monge(1, 3);
  const Chart& c = jm.model.chart; // (x, y, z, z1, z2, z3)

  const Polynomial x = Polynomial::variable(c, 0);
  const Polynomial y = Polynomial::variable(c, 1);
  const Polynomial z = Polynomial::variable(c, 2);
  const Polynomial z1 = Polynomial::variable(c, 3);
  const Polynomial z2 = Polynomial::variable(c, 4);
  const Polynomial z3 = Polynomial::variable(c, 5);
  const auto D = [&](size_t i) { return VectorField::coordinate(c, i); };
  const VectorField dx = D(0), dy = D(1), dz = D(2), dz1 = D(3), dz2 = D(4), dz3 = D(5);

  std::vector<GradedField> fields;
  fields.push_back({"Z0", -4, dz});
  fields.push_back({"Z1", -3, dz * x + dz1});
  fields.push_back({"Y0", -3, dy});
  fields.push_back({"Z2", -2, dz * (x.pow(2) * Rational(1, 2)) + dz1 * x + dz2});
  fields.push_back({"Z3", -1,
                    dz * (x.pow(3) * Rational(1, 6)) + dz1 * (x.pow(2) * Rational(1, 2)) +
                        dz2 * x + dz3 + dy * (z2 * Rational(2))});
  fields.push_back({"S0", -1, dx});
  fields.push_back({"Z4", 0,
                    dz * (x.pow(4) * Rational(1, 24)) + dz1 * (x.pow(3) * Rational(1, 6)) +
                        dz2 * (x.pow(2) * Rational(1, 2)) + dz3 * x +
                        dy * ((x * z2 - z1) * Rational(2))});
  fields.push_back({"S1", 0,
                    dx * x + dz * (z * Rational(5, 2)) + dz1 * (z1 * Rational(3, 2)) +
                        dz2 * (z2 * Rational(1, 2)) - dz3 * (z3 * Rational(1, 2))});
  fields.push_back({"R", 0,
                    dy * y + dz * (z * Rational(1, 2)) + dz1 * (z1 * Rational(1, 2)) +
                        dz2 * (z2 * Rational(1, 2)) + dz3 * (z3 * Rational(1, 2))});
  fields.push_back({"Z5", 1,
                    dz * (x.pow(5) * Rational(1, 120)) + dz1 * (x.pow(4) * Rational(1, 24)) +
                        dz2 * (x.pow(3) * Rational(1, 6)) + dz3 * (x.pow(2) * Rational(1, 2)) +
                        dy * ((x.pow(2) * z2 - x * z1 * Rational(2) + z * Rational(2)))});
  fields.push_back({"S2", 1,
                    dx * x.pow(2) + dy * (z2.pow(2) * Rational(9)) + dz * (x * z * Rational(5)) +
                        dz1 * (z * Rational(5) + x * z1 * Rational(3)) +
                        dz2 * (z1 * Rational(8) + x * z2) +
                        dz3 * (z2 * Rational(9) - x * z3)});

  for (const GradedField& g : fields) {
    jm.model.fields[g.name] = g.field;
    jm.model.field_order.push_back(g.name);
  }
  jm.model.marked["symmetry"] = "S2";
  return {std::move(jm), std::move(fields)};
}

Model prolong_rank2(const Model& base) {
  const auto it = base.marked.find("section");
  if (it == base.marked.end())
    throw InputError("prolong_rank2: the base model must mark a section");
  if (base.distribution.size() != 2)
    throw InputError("prolong_rank2: the base frame must have rank 2");
  const std::string& vname = it->second;
  std::string uname;
  for (const std::string& n : base.distribution)
    if (n != vname) uname = n;
  if (uname.empty()) throw InputError("prolong_rank2: marked section is not in the frame");

  Chart chart = base.chart;
  const std::string t = fresh_coordinate(chart, "t");
  chart.push_back(t);
  const size_t ti = chart.size() - 1;

  const VectorField u = on_bigger_chart(base.fields.at(uname), chart);
  const VectorField v = on_bigger_chart(base.fields.at(vname), chart);

  Model m;
  m.name = base.name + "_prolonged";
  m.chart = chart;
  m.field_order = {"U", "V"};
  m.fields["U"] = u + v * Polynomial::variable(chart, ti);
  m.fields["V"] = VectorField::coordinate(chart, ti);
  m.distribution = {"U", "V"};
  m.marked["section"] = "V";
  m.base_point = PointQ::origin(chart);
  return m;
}

Model prolong_rank3(const Model& base, Rank3Type type) {
  for (const char* role : {"X", "Y", "Z"})
    if (!base.marked.count(role))
      throw InputError("prolong_rank3: the base model must mark fields X, Y, Z");

  Chart chart = base.chart;
  Model m;
  m.name = base.name + "_prolonged3";

  if (type == Rank3Type::II) {
    const std::string u = fresh_coordinate(chart, "u");
    chart.push_back(u);
    const std::string v = fresh_coordinate(chart, "v");
    chart.push_back(v);
    const size_t ui = chart.size() - 2, vi = chart.size() - 1;
    const VectorField xf = on_bigger_chart(base.fields.at(base.marked.at("X")), chart);
    const VectorField yf = on_bigger_chart(base.fields.at(base.marked.at("Y")), chart);
    const VectorField zf = on_bigger_chart(base.fields.at(base.marked.at("Z")), chart);
    m.chart = chart;
    m.field_order = {"U", "V", "W"};
    m.fields["U"] = VectorField::coordinate(chart, ui);
    m.fields["V"] = VectorField::coordinate(chart, vi);
    m.fields["W"] = zf + xf * Polynomial::variable(chart, ui) + yf * Polynomial::variable(chart, vi);
    m.distribution = {"U", "V", "W"};
  } else {
    const std::string t = fresh_coordinate(chart, "t");
    chart.push_back(t);
    const size_t ti = chart.size() - 1;
    const VectorField xf = on_bigger_chart(base.fields.at(base.marked.at("X")), chart);
    const VectorField yf = on_bigger_chart(base.fields.at(base.marked.at("Y")), chart);
    const VectorField zf = on_bigger_chart(base.fields.at(base.marked.at("Z")), chart);
    m.chart = chart;
    m.field_order = {"A", "T", "W"};
    m.fields["A"] = type == Rank3Type::Ia ? yf : xf;
    m.fields["T"] = VectorField::coordinate(chart, ti);
    m.fields["W"] = zf + (type == Rank3Type::Ia ? xf : yf) * Polynomial::variable(chart, ti);
    m.distribution = {"A", "T", "W"};
  }
  m.base_point = PointQ::origin(m.chart);
  return m;
}

bool goursat_test(const DerivedFlag& df, const PointQ& p) {
  if (df.frame.size() != 2) throw InputError("goursat_test: rank-2 frame required");
  const FlagAtPoint fp = flag_at(df, p);
  if (!fp.bracket_generating) return false;
  if (fp.growth.empty() || fp.growth[0] != 2) return false;
  for (size_t i = 1; i < fp.growth.size(); ++i)
    if (fp.growth[i] != 1) return false;
  return true;
}

DeprolongationWitness deprolongation_witness(const DerivedFlag& df, const PointQ& p) {
  if (df.frame.size() != 2) throw InputError("deprolongation_witness: rank-2 frame required");
  DeprolongationWitness out;
  const FlagAtPoint fp = flag_at(df, p);
  if (fp.kappa <= 2 && fp.bracket_generating) {
    // Delta_2 = TM: every Delta-direction is characteristic
    out.degenerate_length2 = true;
    out.direction = fp.adapted.row(0);
    return out;
  }
  const int level = std::min(2, fp.kappa);
  const auto space = cauchy_characteristic_space(df, level, p);
  if (space.empty()) return out;

  // intersect span(space) with Delta(p): solve for a combination lying in the
  // Delta block of the adapted coordinates
  const int n1 = fp.growth.empty() ? 0 : fp.growth[0];
  const size_t n = df.chart().size();
  Matrix<Rational> sys(0, space.size());
  // rows: adapted coordinates beyond block 1 of each generator, transposed
  std::vector<std::vector<Rational>> coords;
  for (const auto& v : space) coords.push_back(fp.adapted_coordinates(v));
  for (size_t r = static_cast<size_t>(n1); r < fp.adapted.rows(); ++r) {
    std::vector<Rational> row(space.size());
    for (size_t c = 0; c < space.size(); ++c) row[c] = coords[c][r];
    sys.append_row(row);
  }
  const auto kernel = nullspace(sys);
  if (kernel.empty()) return out;
  std::vector<Rational> dir(n, Rational(0));
  for (size_t c = 0; c < space.size(); ++c)
    for (size_t i = 0; i < n; ++i) dir[i] += kernel.front()[c] * space[c][i];
  bool zero = true;
  for (const auto& r : dir) zero &= r.is_zero();
  if (!zero) out.direction = dir;
  return out;
}

} // namespace tanaka
