// tanaka: exact analysis of polynomial vector distributions.
//
// Subcommands: analyze, prolong, fintype, freedim, check-sym, model.
// Text output is a human summary; the JSON report is the stable contract.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "tanaka/errors.hpp"
#include "tanaka/fintype.hpp"
#include "tanaka/modelio.hpp"
#include "tanaka/models.hpp"
#include "tanaka/symcheck.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNotGenerating = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw tanaka::InputError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& data) {
  if (path == "-") {
    std::cout << data;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw tanaka::InputError("cannot write file: " + path);
  out << data;
}

struct CommonOpts {
  std::string point;
  std::string json_path;
  bool quiet = false;
  tanaka::Config cfg;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--point", o.point, "base point, comma separated rationals");
  cmd->add_option("--max-degree", o.cfg.max_degree, "prolongation level cap");
  cmd->add_option("--samples", o.cfg.probe_samples, "random probe points");
  cmd->add_option("--seed", o.cfg.seed, "probe/grid seed (or env TANAKA_SEED)");
  cmd->add_option("--groebner-budget", o.cfg.groebner_budget, "reduction step budget");
  cmd->add_option("--json", o.json_path, "write the JSON report to a path ('-' = stdout)");
  cmd->add_flag("--quiet", o.quiet, "suppress the text summary");
}

void apply_seed_env(CommonOpts& o, bool seed_given) {
  if (seed_given) return;
  if (const char* env = std::getenv("TANAKA_SEED")) o.cfg.seed = std::strtoull(env, nullptr, 10);
}

tanaka::FinitenessReport run_pipeline(const std::string& file, const CommonOpts& o) {
  const tanaka::Model m = tanaka::parse_model(read_file(file));
  std::optional<tanaka::PointQ> pt;
  if (!o.point.empty()) pt = tanaka::parse_point(m.chart, o.point);
  return tanaka::finiteness_report(m, pt, o.cfg);
}

int cmd_analyze(const std::string& file, const CommonOpts& o) {
  const tanaka::FinitenessReport rep = run_pipeline(file, o);
  if (!o.quiet) std::cout << tanaka::render_text(rep);
  if (!o.json_path.empty()) write_output(o.json_path, tanaka::emit_report(rep));
  return kExitOk;
}

int cmd_prolong(const std::string& file, const CommonOpts& o) {
  const tanaka::FinitenessReport rep = run_pipeline(file, o);
  if (!o.quiet) {
    std::cout << "growth (incremental):";
    for (int g : rep.growth) std::cout << " " << g;
    std::cout << "\ntanaka dims:";
    for (int d : rep.tanaka_dims) std::cout << " " << d;
    std::cout << (rep.tanaka_terminated ? "   (terminated)" : "   (capped)");
    if (rep.tanaka_total) std::cout << "   total: " << *rep.tanaka_total;
    std::cout << "\n";
  }
  if (!o.json_path.empty()) write_output(o.json_path, tanaka::emit_report(rep));
  return kExitOk;
}

int cmd_fintype(const std::string& file, const CommonOpts& o) {
  const tanaka::FinitenessReport rep = run_pipeline(file, o);
  if (!o.quiet) {
    std::cout << "h0 dim: " << rep.h0_dim << "\n";
    std::cout << "char variety: "
              << (rep.char_verdict.kind == tanaka::CharVerdict::Kind::empty
                      ? "empty"
                      : rep.char_verdict.kind == tanaka::CharVerdict::Kind::nonempty
                            ? "nonempty"
                            : "undecided")
              << " [stage " << rep.char_verdict.stage << "]\n";
    std::cout << "growth criterion: " << (rep.theorem2 ? "finite" : "not applicable") << "\n";
    std::cout << "verdict: "
              << (rep.verdict == tanaka::FinitenessReport::Verdict::finite_char_variety
                      ? "finite_char_variety"
                      : rep.verdict == tanaka::FinitenessReport::Verdict::finite_theorem2
                            ? "finite_theorem2"
                            : "inconclusive")
              << "\n";
  }
  if (!o.json_path.empty()) write_output(o.json_path, tanaka::emit_report(rep));
  return kExitOk;
}

int cmd_freedim(int n, int k) {
  std::cout << "n=" << n << " k=" << k << "\n";
  std::cout << "witt dims:";
  for (int j = 1; j <= k; ++j) std::cout << " " << tanaka::witt_dim(n, j);
  std::cout << "\nfree nilpotent total: " << tanaka::free_total_dim(n, k) << "\n";
  if (k >= 2) {
    const auto bound = tanaka::symmetry_bound_free(n, k);
    if (bound)
      std::cout << "symmetry dimension bound: " << *bound << "\n";
    else
      std::cout << "symmetry dimension bound: infinite (contact)\n";
  } else {
    std::cout << "symmetry dimension bound: none (k = 1 is integrable)\n";
  }
  return kExitOk;
}

int cmd_check_sym(const std::string& file, const std::string& field_arg, const CommonOpts& o) {
  const tanaka::Model m = tanaka::parse_model(read_file(file));
  tanaka::VectorField x = m.find_field(field_arg)
                              ? *m.find_field(field_arg)
                              : tanaka::parse_field_expression(m, field_arg);
  const tanaka::PointQ base = o.point.empty()
                                  ? (m.base_point ? *m.base_point
                                                  : tanaka::PointQ::origin(m.chart))
                                  : tanaka::parse_point(m.chart, o.point);
  const auto frame = m.frame();
  const bool sym = tanaka::is_symmetry(x, frame, base);
  if (!sym) {
    std::cout << field_arg << ": not a symmetry\n";
    return kExitOk;
  }
  const tanaka::DerivedFlag df =
      tanaka::derived_flag(frame, o.cfg.kappa_cap,
                           tanaka::default_probe_points(m.chart, o.cfg.probe_samples, o.cfg.seed));
  const tanaka::FiltrationDegree deg = tanaka::filtration_degree(x, df, base);
  std::cout << field_arg << ": symmetry, filtration degree ";
  if (deg.at_cap) {
    std::cout << ">= " << deg.value << "\n";
    return kExitOk;
  }
  std::cout << deg.value << "\n";
  const tanaka::GNLA a = tanaka::gnla_at(df, base);
  const tanaka::Prolongation pro = tanaka::tanaka_prolongation(a, o.cfg.max_degree);
  if (deg.value < pro.levels_computed()) {
    const tanaka::GradedSymbol s = tanaka::graded_symbol(x, df, pro, base);
    if (deg.value < 0) {
      std::cout << "symbol class in g_" << deg.value << ":";
      for (const auto& c : s.class_coords) std::cout << " " << c.str();
      std::cout << "\n";
    } else {
      std::cout << "symbol in g_" << deg.value << " certified (coordinates:";
      for (const auto& c : s.membership) std::cout << " " << c.str();
      std::cout << ")\n";
    }
  }
  return kExitOk;
}

int cmd_model(const std::string& kind, const std::vector<int>& params) {
  using tanaka::JetModel;
  JetModel jm = [&]() -> JetModel {
    if (kind == "cartan-jet") {
      if (params.size() != 1) throw tanaka::InputError("model cartan-jet K");
      return tanaka::cartan_jet(params[0]);
    }
    if (kind == "monge") {
      if (params.size() != 2) throw tanaka::InputError("model monge M N");
      return tanaka::monge(params[0], params[1]);
    }
    if (kind == "mixed-jet") {
      if (params.size() != 2) throw tanaka::InputError("model mixed-jet M N");
      return tanaka::mixed_jet(params[0], params[1]);
    }
    if (kind == "product-jets") {
      if (params.size() != 3) throw tanaka::InputError("model product-jets M N L");
      return tanaka::product_with_jets(tanaka::monge(params[0], params[1]), params[2]);
    }
    if (kind == "e13") {
      if (!params.empty()) throw tanaka::InputError("model e13 takes no parameters");
      return tanaka::e13_with_symmetries().first;
    }
    throw tanaka::InputError("unknown model kind: " + kind);
  }();
  std::cout << tanaka::print_model(jm.model);
  return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact Tanaka-prolongation analysis of polynomial distributions"};
  app.require_subcommand(1);

  CommonOpts o;
  std::string file, field_arg, model_kind;
  std::vector<int> model_params;
  int fn = 0, fk = 0;

  CLI::App* analyze = app.add_subcommand("analyze", "full finiteness pipeline");
  analyze->add_option("model", file, "model file (.tk)")->required();
  add_common(analyze, o);

  CLI::App* prolong = app.add_subcommand("prolong", "growth vector and Tanaka dimensions");
  prolong->add_option("model", file)->required();
  add_common(prolong, o);

  CLI::App* fintype = app.add_subcommand("fintype", "finite-type verdicts only");
  fintype->add_option("model", file)->required();
  add_common(fintype, o);

  CLI::App* freedim = app.add_subcommand("freedim", "free-algebra dimension table");
  freedim->add_option("n", fn, "rank")->required();
  freedim->add_option("k", fk, "step")->required();

  CLI::App* checksym = app.add_subcommand("check-sym", "certify a symmetry field");
  checksym->add_option("model", file)->required();
  checksym->add_option("field", field_arg, "field name or expression")->required();
  add_common(checksym, o);

  CLI::App* model = app.add_subcommand("model", "emit a built-in model as DSL");
  model->add_option("kind", model_kind, "cartan-jet | monge | mixed-jet | product-jets | e13")
      ->required();
  model->add_option("params", model_params, "integer parameters");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? kExitInput : kExitOk;
  }

  try {
    for (CLI::App* sub : {analyze, prolong, fintype, checksym})
      apply_seed_env(o, sub->count("--seed") > 0);
    if (analyze->parsed()) return cmd_analyze(file, o);
    if (prolong->parsed()) return cmd_prolong(file, o);
    if (fintype->parsed()) return cmd_fintype(file, o);
    if (freedim->parsed()) {
      if (fn < 2 || fk < 1) throw tanaka::InputError("freedim: need n >= 2, k >= 1");
      return cmd_freedim(fn, fk);
    }
    if (checksym->parsed()) return cmd_check_sym(file, field_arg, o);
    if (model->parsed()) return cmd_model(model_kind, model_params);
  } catch (const tanaka::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitInput;
  } catch (const tanaka::InputError& e) {
    const std::string msg = e.what();
    std::cerr << "error: " << msg << "\n";
    if (msg.find("not bracket-generating") != std::string::npos) return kExitNotGenerating;
    return kExitInput;
  } catch (const tanaka::CapError& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
