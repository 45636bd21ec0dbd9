// Command-line front end: p-adic arithmetic, algebra validation, jet lifts,
// Mahler expansions, formal group laws, Diophantine tangent spaces, and chart
// transitions, all wired to the JSON file formats described in the README.
//
// Exit codes: 0 success, 1 check/verification failure, 2 input error.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <random>

#include "weiljets/batch.hpp"
#include "weiljets/json_io.hpp"

using namespace weiljets;

namespace {

struct Options {
  std::int64_t prime = 5;
  int precision = kDefaultPrecision;
  std::string out_path;
  int exit_code = 0;

  void emit(const std::string& text) const {
    if (out_path.empty()) {
      std::cout << text << "\n";
      return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::invalid_argument("cannot write " + out_path);
    out << text << "\n";
  }
  void emit(const Json& j) const { emit(j.dump(2)); }
};

PadicNumber parse_padic(const std::string& text, const Options& opt) {
  return PadicNumber::from_rational(parse_rational(text), opt.prime, opt.precision);
}

std::vector<PadicNumber> parse_padic_list(const std::string& text, const Options& opt) {
  std::vector<PadicNumber> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    std::string item =
        comma == std::string::npos ? text.substr(start) : text.substr(start, comma - start);
    if (item.empty()) throw std::invalid_argument("empty entry in list \"" + text + "\"");
    out.push_back(parse_padic(item, opt));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::vector<BigInt> parse_int_list(const std::string& text) {
  std::vector<BigInt> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    std::string item =
        comma == std::string::npos ? text.substr(start) : text.substr(start, comma - start);
    out.push_back(BigInt(item));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

WeilElement parse_dual_jet(const std::string& text, const AlgebraPtr& dual,
                           const Options& opt) {
  auto parts = parse_padic_list(text, opt);
  if (parts.size() != 2)
    throw std::invalid_argument("dual jets are written as \"z0,z1\": got \"" + text + "\"");
  return WeilElement(dual, {parts[0], parts[1]});
}

Json residuals_to_json(const std::vector<long>& valuations) {
  Json out = Json::array();
  for (long v : valuations) out.push_back(valuation_to_json(v));
  return out;
}

std::string jet_display(const WeilElement& e) {
  std::ostringstream out;
  out << padic_display(e.coeff(0)) << " + " << padic_display(e.coeff(1)) << "*eps (mod "
      << e.algebra()->prime() << "^" << e.algebra()->precision() << ")";
  return out.str();
}

std::string element_display(const WeilElement& e) {
  if (e.algebra()->dim() == 2) return jet_display(e);
  std::ostringstream out;
  for (int j = 0; j < e.algebra()->dim(); ++j) {
    if (j) out << " + ";
    out << padic_display(e.coeff(j));
    if (j == 1) out << "*eps";
    if (j > 1) out << "*eps^" << j;
  }
  return out.str();
}

void add_padic_commands(CLI::App& app, Options& opt) {
  auto* padic = app.add_subcommand("padic", "exact Q_p arithmetic on rational literals");
  padic->require_subcommand(1);
  static std::string lhs, rhs, sole;

  auto binary = [&opt](const std::string& name, auto fn) {
    return [name, fn, &opt]() {
      auto x = parse_padic(lhs, opt);
      auto y = parse_padic(rhs, opt);
      PadicNumber r = fn(x, y);
      opt.emit(padic_display(r) + " (norm " + format_rational(r.norm()) + ")");
    };
  };

  for (auto [name, fn] : std::initializer_list<
           std::pair<const char*, PadicNumber (*)(const PadicNumber&, const PadicNumber&)>>{
           {"add", [](const PadicNumber& a, const PadicNumber& b) { return a + b; }},
           {"sub", [](const PadicNumber& a, const PadicNumber& b) { return a - b; }},
           {"mul", [](const PadicNumber& a, const PadicNumber& b) { return a * b; }},
           {"div", [](const PadicNumber& a, const PadicNumber& b) { return a / b; }}}) {
    auto* cmd = padic->add_subcommand(name, std::string(name) + " two rationals in Q_p");
    cmd->add_option("lhs", lhs, "first operand, as \"a/b\"")->required();
    cmd->add_option("rhs", rhs, "second operand, as \"a/b\"")->required();
    cmd->callback(binary(name, fn));
  }

  auto* norm = padic->add_subcommand("norm", "p-adic absolute value");
  norm->add_option("value", sole, "operand, as \"a/b\"")->required();
  norm->callback([&opt]() { opt.emit(format_rational(parse_padic(sole, opt).norm())); });

  auto* digits = padic->add_subcommand("digits", "base-p digit expansion (needs v >= 0)");
  digits->add_option("value", sole, "operand, as \"a/b\"")->required();
  digits->callback([&opt]() {
    auto ds = parse_padic(sole, opt).digit_expansion();
    std::ostringstream line;
    for (std::size_t i = 0; i < ds.size(); ++i) line << (i ? " " : "") << ds[i];
    opt.emit(line.str());
  });
}

void add_algebra_commands(CLI::App& app, Options& opt) {
  auto* algebra = app.add_subcommand("algebra", "Weil algebra utilities");
  algebra->require_subcommand(1);
  static std::string file;
  auto* check = algebra->add_subcommand("check", "validate a structure-constant file");
  check->add_option("file", file, "algebra JSON file")->required();
  check->callback([&opt]() {
    Json report;
    try {
      auto a = algebra_from_json(load_json_file(file));
      report["valid"] = true;
      report["prime"] = a->prime();
      report["dim"] = a->dim();
      report["nilpotency_index"] = a->nilpotency_index();
      opt.emit(report);
    } catch (const AlgebraError& e) {
      report["valid"] = false;
      report["error"] = e.what();
      opt.emit(report);
      opt.exit_code = 1;
    }
  });
}

void add_lift_command(CLI::App& app, Options& opt) {
  auto* lift = app.add_subcommand("lift", "jet-lift a series at an infinitely near point");
  static std::string series_file, point_file;
  static bool check_diagram = false;
  lift->add_option("--series", series_file, "series JSON file")->required();
  lift->add_option("--point", point_file, "point JSON file")->required();
  lift->add_flag("--check-diagram", check_diagram,
                 "also verify pr(lift) = eval(projected point)");
  lift->callback([&opt]() {
    auto f = series_from_json(load_json_file(series_file), opt.prime, opt.precision);
    auto point = point_from_json(load_json_file(point_file),
                                 std::filesystem::path(point_file).parent_path());
    auto rows = point.rows();
    auto lifted = lift_series(f, rows);
    Json out = element_to_json(lifted);
    out["display"] = element_display(lifted);
    if (check_diagram) {
      auto base = point.project();
      bool pass = lifted.project() == series_eval(f, base);
      out["diagram_check"] = pass ? "pass" : "fail";
      opt.emit(out);
      if (!pass) opt.exit_code = 1;
      return;
    }
    opt.emit(out);
  });
}

void add_mahler_commands(CLI::App& app, Options& opt) {
  auto* mahler = app.add_subcommand("mahler", "Mahler expansions of Z_p samples");
  mahler->require_subcommand(1);
  static std::string samples_file, coeffs_file, x_text;
  static long threshold = -1;

  auto* fit = mahler->add_subcommand("fit", "coefficients from samples f(0..K)");
  fit->add_option("--samples", samples_file, "samples JSON file")->required();
  fit->callback([&opt]() {
    std::int64_t p = 0;
    int n = 0;
    auto samples = padic_list_from_json(load_json_file(samples_file), "samples", p, n);
    opt.emit(mahler_to_json(mahler_coefficients(samples)));
  });

  auto* eval = mahler->add_subcommand("eval", "evaluate a Mahler expansion");
  eval->add_option("--coeffs", coeffs_file, "coefficients JSON file")->required();
  eval->add_option("--x", x_text, "evaluation point in Z_p, as \"a/b\"")->required();
  eval->callback([&opt]() {
    auto coeffs = mahler_from_json(load_json_file(coeffs_file));
    Options file_ctx = opt;
    file_ctx.prime = coeffs.prime;
    file_ctx.precision = coeffs.precision;
    auto value = mahler_eval(coeffs, parse_padic(x_text, file_ctx));
    Json out;
    out["value"] = padic_display(value);
    opt.emit(out);
  });

  auto* check = mahler->add_subcommand("check", "decay report for the coefficients");
  check->add_option("--coeffs", coeffs_file, "coefficients JSON file")->required();
  check->add_option("--threshold", threshold, "valuation target (default: the precision)");
  check->callback([&opt]() {
    auto coeffs = mahler_from_json(load_json_file(coeffs_file));
    auto report = mahler_continuity_check(
        coeffs, threshold >= 0 ? std::optional<long>(threshold) : std::nullopt);
    Json out;
    out["decays"] = report.decays;
    out["threshold"] = report.threshold;
    out["tail_window"] = report.tail_window;
    Json profile = Json::array();
    for (const auto& entry : report.profile) {
      Json e;
      e["n"] = entry.n;
      e["valuation"] = entry.valuation ? Json(*entry.valuation) : Json("inf");
      e["ratio_valuation"] =
          entry.ratio_valuation ? Json(*entry.ratio_valuation) : Json(nullptr);
      profile.push_back(e);
    }
    out["profile"] = profile;
    opt.emit(out);
    if (!report.decays) opt.exit_code = 1;
  });
}

void add_fgl_commands(CLI::App& app, Options& opt) {
  auto* fgl = app.add_subcommand("fgl", "formal group laws of Weierstrass curves");
  fgl->require_subcommand(1);
  static std::string curve_file, x_text, y_text, inverse_out, invariant_out;
  static int degree = 6;

  auto load_curve = [&opt]() {
    return curve_from_json(load_json_file(curve_file), opt.prime, opt.precision);
  };

  auto* build = fgl->add_subcommand("build", "expand F(z,w) to a total degree");
  build->add_option("--curve", curve_file, "curve JSON file")->required();
  build->add_option("--D", degree, "truncation degree (default 6)");
  build->add_option("--inverse-out", inverse_out, "also write the formal inverse i(z)");
  build->add_option("--invariant-out", invariant_out,
                    "also write the invariant density P(z)");
  build->callback([&opt, load_curve]() {
    auto law = FormalGroupLaw::build(load_curve(), degree);
    if (!inverse_out.empty()) {
      std::ofstream out(inverse_out);
      out << series_to_json(law.inverse_series()).dump(2) << "\n";
    }
    if (!invariant_out.empty()) {
      std::ofstream out(invariant_out);
      out << series_to_json(law.invariant_coeff()).dump(2) << "\n";
    }
    opt.emit(series_to_json(law.sum()));
  });

  auto* add = fgl->add_subcommand("add", "add two dual-number jets under the law");
  add->add_option("--curve", curve_file, "curve JSON file")->required();
  add->add_option("--D", degree, "truncation degree (default 6)");
  add->add_option("--x", x_text, "first jet \"z0,z1\"")->required();
  add->add_option("--y", y_text, "second jet \"w0,w1\"")->required();
  add->callback([&opt, load_curve]() {
    auto law = FormalGroupLaw::build(load_curve(), degree);
    auto dual = WeilAlgebra::dual_numbers(opt.prime, opt.precision);
    auto sum = jet_group_add(law, parse_dual_jet(x_text, dual, opt),
                             parse_dual_jet(y_text, dual, opt));
    Json out;
    out["base"] = padic_display(sum.coeff(0));
    out["eps"] = padic_display(sum.coeff(1));
    out["display"] = jet_display(sum);
    opt.emit(out);
  });

  auto* verify = fgl->add_subcommand("verify", "run the coefficientwise axiom suite");
  verify->add_option("--curve", curve_file, "curve JSON file")->required();
  verify->add_option("--D", degree, "truncation degree (default 6)");
  verify->callback([&opt, load_curve]() {
    auto law = FormalGroupLaw::build(load_curve(), degree);
    auto report = verify_fgl_axioms(law);
    auto verdict = [](bool b) { return b ? "pass" : "fail"; };
    Json out;
    out["identity"] = verdict(report.identity);
    out["commutativity"] = verdict(report.commutativity);
    out["associativity"] = verdict(report.associativity);
    out["inverse_law"] = verdict(report.inverse_law);
    out["axioms"] = verdict(report.all());
    opt.emit(out);
    if (!report.all()) opt.exit_code = 1;
  });
}

void add_dioph_commands(CLI::App& app, Options& opt) {
  auto* dioph = app.add_subcommand("dioph", "infinitesimal solutions of polynomial systems");
  dioph->require_subcommand(1);
  static std::string system_file, base_text, seed_text, vector_text;
  static int samples = 20;
  static unsigned long rng_seed = 0;

  auto load_system = [&]() { return system_from_json(load_json_file(system_file)); };
  auto system_ctx = [&opt](const DiophantineSystem& s) {
    Options ctx = opt;
    ctx.prime = s.prime;
    ctx.precision = s.precision;
    return ctx;
  };

  auto* tangent = dioph->add_subcommand("tangent", "kernel of the Jacobian at a solution");
  tangent->add_option("--system", system_file, "system JSON file")->required();
  tangent->add_option("--base", base_text, "base point \"a/b,a/b,...\"")->required();
  tangent->callback([&]() {
    auto system = load_system();
    auto base = parse_padic_list(base_text, system_ctx(system));
    auto t = tangent_space(system, base);
    Json out;
    Json base_json = Json::array();
    for (const auto& b : t.base) base_json.push_back(padic_display(b));
    out["base"] = base_json;
    out["residual_valuations"] = residuals_to_json(t.residual_valuations);
    out["rank"] = t.rank;
    out["pivot_valuations"] = t.pivot_valuations;
    Json kernel = Json::array();
    for (const auto& v : t.kernel_basis) {
      Json vec = Json::array();
      for (const auto& entry : v) vec.push_back(padic_display(entry));
      kernel.push_back(vec);
    }
    out["kernel"] = kernel;
    opt.emit(out);
  });

  auto* hensel = dioph->add_subcommand("hensel", "Newton-lift a seed solution mod p");
  hensel->add_option("--system", system_file, "system JSON file")->required();
  hensel->add_option("--seed", seed_text, "seed residues \"s1,s2,...\"")->required();
  hensel->callback([&]() {
    auto system = load_system();
    auto seed = parse_int_list(seed_text);
    auto lifted = hensel_lift(system, seed);
    Json out;
    Json solution = Json::array();
    for (const auto& x : lifted.solution) solution.push_back(padic_display(x));
    out["solution"] = solution;
    Json canonical = Json::array();
    for (const auto& x : lifted.solution) canonical.push_back(x.to_string());
    out["solution_canonical"] = canonical;
    out["residual_valuations"] = residuals_to_json(lifted.residual_history);
    out["iterations"] = lifted.residual_history.size() - 1;
    opt.emit(out);
  });

  auto* points = dioph->add_subcommand("points", "verify infinitesimal solutions over a base");
  points->add_option("--system", system_file, "system JSON file")->required();
  points->add_option("--base", base_text, "base point \"a/b,a/b,...\"")->required();
  points->add_option("--vector", vector_text, "check one tangent candidate instead of sampling");
  points->add_option("--samples", samples, "random kernel combinations to verify (default 20)");
  points->add_option("--seed-rng", rng_seed, "sampling seed (default 0)");
  points->callback([&]() {
    auto system = load_system();
    auto ctx = system_ctx(system);
    auto base = parse_padic_list(base_text, ctx);
    auto dual = WeilAlgebra::dual_numbers(system.prime, system.precision);
    auto family = infinitesimal_points(system, base, dual);

    Json out;
    out["kernel_dimension"] = family.kernel_basis.size();
    Json checks = Json::array();
    bool all_ok = true;
    auto record = [&](const WeilPoint& jet, const std::string& label) {
      auto verdict = verify_infinitesimal(system, jet);
      Json c;
      c["kind"] = label;
      c["base_valuations"] = residuals_to_json(verdict.base_valuations);
      c["eps_valuations"] = residuals_to_json(verdict.eps_valuations);
      c["ok"] = verdict.ok;
      checks.push_back(c);
      all_ok = all_ok && verdict.ok;
    };

    if (!vector_text.empty()) {
      record(family.jet_for_vector(parse_padic_list(vector_text, ctx)), "vector");
    } else {
      std::mt19937_64 rng(rng_seed);
      for (int i = 0; i < samples; ++i) {
        std::vector<PadicNumber> combo;
        for (std::size_t r = 0; r < family.kernel_basis.size(); ++r)
          combo.push_back(PadicNumber::from_integer(static_cast<long>(rng() % 625),
                                                    system.prime, system.precision));
        record(family.jet(combo), "sample");
      }
    }
    out["checks"] = checks;
    out["status"] = all_ok ? "pass" : "fail";
    opt.emit(out);
    if (!all_ok) opt.exit_code = 1;
  });
}

void add_chart_commands(CLI::App& app, Options& opt) {
  auto* chart = app.add_subcommand("chart", "chart transitions on the Weil bundle");
  chart->require_subcommand(1);
  static std::string transition_file, point_file;
  static bool cocycle = false;
  static int samples = 100;
  static unsigned long rng_seed = 0;

  auto* transit = chart->add_subcommand("transit", "apply a chart transition to a point");
  transit->add_option("--transition", transition_file, "transition JSON file (component list)");
  transit->add_option("--point", point_file, "point JSON file");
  transit->add_flag("--cocycle", cocycle, "run the built-in P^1 triple-overlap suite");
  transit->add_option("--samples", samples, "cocycle sample count (default 100)");
  transit->add_option("--seed-rng", rng_seed, "cocycle sampling seed (default 0)");
  transit->callback([&]() {
    if (cocycle) {
      const long threshold = opt.precision - 4;
      std::mt19937_64 rng(rng_seed);
      auto dual = WeilAlgebra::dual_numbers(opt.prime, opt.precision);
      long min_val = kInfiniteValuation;
      for (int i = 0; i < samples; ++i) {
        long residue = 1 + static_cast<long>(rng() % (opt.prime - 1));
        auto center = PadicNumber::from_integer(residue, opt.prime, opt.precision);
        auto charts = p1_charts(opt.prime, opt.precision, opt.precision + 5, center);
        BigInt depth = BigInt(rng()) % 100000;
        auto y0 = center + PadicNumber::from_integer(opt.prime, opt.prime, opt.precision) *
                               PadicNumber::from_integer(depth, opt.prime, opt.precision);
        auto y1 = PadicNumber::from_integer(BigInt(rng()) % 100000, opt.prime, opt.precision);
        WeilPoint xi(dual, {{y0, y1}});
        auto via = transition_lift(charts.t12, transition_lift(charts.t01, xi));
        auto direct = transition_lift(charts.t02, xi);
        for (int j = 0; j < dual->dim(); ++j) {
          PadicNumber diff = via.coords()[0][j] - direct.coords()[0][j];
          min_val = std::min(min_val, diff.valuation());
        }
      }
      Json out;
      out["samples"] = samples;
      out["min_discrepancy_valuation"] = valuation_to_json(min_val);
      out["threshold"] = threshold;
      out["status"] = (min_val >= threshold) ? "pass" : "fail";
      opt.emit(out);
      if (min_val < threshold) opt.exit_code = 1;
      return;
    }
    if (transition_file.empty() || point_file.empty())
      throw std::invalid_argument("chart transit needs --transition and --point (or --cocycle)");
    auto tj = load_json_file(transition_file);
    auto dir = std::filesystem::path(transition_file).parent_path();
    ChartTransition transition;
    for (const auto& entry : tj) {
      if (entry.is_string()) {
        std::filesystem::path p = entry.get<std::string>();
        if (p.is_relative() && std::filesystem::exists(dir / p)) p = dir / p;
        transition.components.push_back(
            series_from_json(load_json_file(p), opt.prime, opt.precision));
      } else {
        transition.components.push_back(series_from_json(entry, opt.prime, opt.precision));
      }
    }
    auto point = point_from_json(load_json_file(point_file),
                                 std::filesystem::path(point_file).parent_path());
    opt.emit(point_to_json(transition_lift(transition, point)));
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weiljets: p-adic jet calculus on Weil bundles"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("--p", opt.prime, "prime (default 5)")->check(CLI::PositiveNumber);
  app.add_option("--N", opt.precision, "working precision in digits (default 20)");
  app.add_option("--out", opt.out_path, "write output to a file instead of stdout");

  add_padic_commands(app, opt);
  add_algebra_commands(app, opt);
  add_lift_command(app, opt);
  add_mahler_commands(app, opt);
  add_fgl_commands(app, opt);
  add_dioph_commands(app, opt);
  add_chart_commands(app, opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const ConvergenceError& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return opt.exit_code;
}
