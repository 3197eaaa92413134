#include "elab/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "elab/critical.hpp"
#include "elab/drop.hpp"
#include "elab/elastica.hpp"
#include "elab/error.hpp"
#include "elab/harness.hpp"
#include "elab/io.hpp"
#include "elab/minimize.hpp"
#include "elab/quartic.hpp"

namespace elab::cli {

namespace {

using Json = nlohmann::ordered_json;

const double kPiCubed = std::pow(std::numbers::pi, 3);
const double kDiscValue = 3.0 * std::numbers::pi * std::pow(2.0, -2.0 / 3.0);

// Writes the artifacts of one command into the output directory.
class Artifacts {
 public:
  explicit Artifacts(const RunConfig& cfg) : cfg_(cfg) {}

  bool wants(const std::string& format) const {
    return !cfg_.output_dir.empty() && cfg_.formats.count(format) > 0;
  }

  void json(const std::string& stem, const Json& j) const {
    if (wants("json")) io::write_text_file(path(stem + ".json"), j.dump(2) + "\n");
  }

  void curve_csv(const std::string& stem, const curve::PlanarCurve& c) const {
    if (!wants("csv")) return;
    std::ostringstream s;
    io::write_curve_csv(s, c);
    io::write_text_file(path(stem + ".csv"), s.str());
  }

  void table_csv(const std::string& stem, const std::vector<std::string>& header,
                 const std::vector<std::vector<double>>& rows) const {
    if (!wants("csv")) return;
    std::ostringstream s;
    io::write_table_csv(s, header, rows);
    io::write_text_file(path(stem + ".csv"), s.str());
  }

  void svg(const std::string& stem, const std::vector<io::SvgCurve>& curves,
           const std::string& title) const {
    if (!wants("svg")) return;
    std::ostringstream s;
    io::write_svg(s, curves, title);
    io::write_text_file(path(stem + ".svg"), s.str());
  }

 private:
  std::filesystem::path path(const std::string& name) const {
    return std::filesystem::path(cfg_.output_dir) / name;
  }
  const RunConfig& cfg_;
};

Json metrics_json(const curve::ShapeMetrics& m) {
  return {{"E", m.E},
          {"A", m.A},
          {"L", m.Lperim},
          {"EEA", m.EEA},
          {"gage_ratio", m.gage_ratio},
          {"circumradius", m.circumradius}};
}

Json residuals_json(const drop::OptimalityResiduals& r) {
  return {{"B1", r.B1}, {"B2", r.B2}, {"B3", r.B3}, {"B4", r.B4}};
}

Json drop_json(const drop::DropSolution& sol) {
  Json j;
  j["C_star"] = sol.C_star;
  j["s_m"] = sol.s_m;
  j["s_M"] = sol.s_M;
  j["k_m"] = sol.k_m;
  j["k_M"] = sol.k_M;
  j["turning"] = sol.turning;
  j["E"] = sol.E;
  j["A"] = sol.A;
  j["E_plus_A"] = sol.E + sol.A;
  j["identity_gap"] = std::abs(2.0 * sol.A - sol.E) / sol.E;
  j["Q_x"] = sol.Q.x;
  j["Q_y"] = sol.Q.y;
  j["residuals"] = residuals_json(sol.residuals);
  return j;
}

int drop_solve(const RunConfig& cfg, std::ostream& out) {
  const drop::DropSolution sol = drop::solve_drop(cfg.tol, cfg.grid_n);
  const Json j = drop_json(sol);
  out << j.dump(2) << '\n';
  const Artifacts art(cfg);
  art.json("drop", j);
  art.curve_csv("drop", sol.curve);
  art.svg("drop", {{&sol.curve, "optimal drop"}}, "optimal drop");
  return j["identity_gap"].get<double>() <= 1e-6 ? kExitOk : kExitViolation;
}

int drop_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const drop::DropSolution sol = drop::solve_drop(cfg.tol, cfg.grid_n);
  const drop::OptimalityResiduals r = drop::verify_optimality(sol);
  const drop::DropBounds b = drop::drop_bounds_report(sol);
  Json j = drop_json(sol);
  j["residuals"] = residuals_json(r);
  j["bounds"] = {{"E_plus_A", b.E_plus_A},
                 {"disc_value", b.disc_value},
                 {"length", b.length},
                 {"corner_radius", b.corner_radius},
                 {"H", b.H},
                 {"exceeds_pi", b.exceeds_pi},
                 {"exceeds_half_disc", b.exceeds_half_disc},
                 {"two_drops_exceed_disc", b.two_drops_exceed_disc},
                 {"energy_lower_bound", b.energy_lower_bound},
                 {"length_at_most_146", b.length_at_most_146},
                 {"length_vs_corner_radius", b.length_vs_corner_radius},
                 {"H_at_least_22_3", b.H_at_least_22_3}};
  const bool residuals_ok = r.B1 <= 1e-5 && r.B2 <= 1e-8 && r.B3 <= 1e-8 && r.B4 <= 1e-8;
  j["passed"] = residuals_ok && b.all();
  out << j.dump(2) << '\n';
  Artifacts(cfg).json("drop_verify", j);
  if (!residuals_ok) err << "drop verify: optimality residuals above tolerance\n";
  if (!b.all()) err << "drop verify: a stated bound fails\n";
  return residuals_ok && b.all() ? kExitOk : kExitViolation;
}

int critical_cmd(const RunConfig& cfg, int periods, std::ostream& out, std::ostream& err) {
  Json j;
  j["n_periods"] = periods;
  const Artifacts art(cfg);
  critical::ClosedCritical crit;
  try {
    crit = critical::solve_closed_critical(periods, cfg.grid_n);
  } catch (const InfeasibleError& e) {
    const critical::TurningRange range = critical::observed_turning_range();
    j["feasible"] = false;
    j["target_turning"] = 2.0 * std::numbers::pi / periods;
    j["turning_at_c_min"] = range.at_c_min;
    j["turning_at_c_max"] = range.at_c_max;
    j["c_max"] = range.c_max;
    j["message"] = e.what();
    out << j.dump(2) << '\n';
    art.json("critical_" + std::to_string(periods), j);
    return kExitOk;
  }
  const critical::SurgeryResult surgery = critical::surgery_compare(crit);
  const double star = critical::star_shapedness(crit);
  j["feasible"] = true;
  j["C"] = crit.C;
  j["period_length"] = crit.period_length;
  j["period_turning"] = crit.period_turning;
  j["closure_gap"] = crit.curve.position_gap();
  j["metrics"] = metrics_json(crit.metrics);
  j["E_plus_A"] = crit.metrics.E + crit.metrics.A;
  j["disc_value"] = kDiscValue;
  j["Q_x"] = crit.Q.x;
  j["Q_y"] = crit.Q.y;
  j["star_shapedness"] = star;
  j["surgery"] = {{"dE", surgery.dE},
                  {"dA", surgery.dA},
                  {"cap_half_length", surgery.cap_half_length},
                  {"competitor", metrics_json(surgery.competitor_metrics)}};
  const bool above_disc = crit.metrics.E + crit.metrics.A > kDiscValue;
  const bool surgery_ok =
      surgery.dE <= 1e-9 && surgery.dA <= 1e-9 && surgery.dE + surgery.dA < -1e-6;
  j["passed"] = above_disc && surgery_ok;
  out << j.dump(2) << '\n';
  const std::string stem = "critical_" + std::to_string(periods);
  art.json(stem, j);
  art.curve_csv(stem, crit.curve);
  art.curve_csv(stem + "_competitor", surgery.competitor);
  art.svg(stem, {{&crit.curve, "critical curve"}, {&surgery.competitor, "competitor"}},
          std::to_string(periods) + "-period critical curve");
  if (!above_disc) err << "critical: E + A does not exceed the disc value\n";
  if (!surgery_ok) err << "critical: surgery does not decrease E and A\n";
  return above_disc && surgery_ok ? kExitOk : kExitViolation;
}

int verify_cmd(const RunConfig& cfg, const std::string& family, int samples,
               std::optional<double> aspect, bool serial, bool timing, std::ostream& out,
               std::ostream& err) {
  harness::SweepOptions opts;
  opts.ellipse_aspect = aspect;
  opts.execution = serial ? harness::Execution::serial : harness::Execution::parallel;
  const harness::Report rep =
      harness::verify_family(harness::parse_family(family), samples, cfg.seed, opts);
  const Json j = harness::to_json(rep, timing);
  out << j.dump(2) << '\n';
  Artifacts(cfg).json("verify_" + family, j);
  if (!rep.violations.empty()) {
    err << "verify: " << rep.violations.size() << " violation(s)\n";
    return kExitViolation;
  }
  return kExitOk;
}

int counterexample_cmd(const RunConfig& cfg, const std::string& kind_name,
                       const std::vector<double>& sweep, std::ostream& out, std::ostream& err) {
  const harness::Counterexample kind = harness::parse_counterexample(kind_name);
  const std::vector<harness::SweepRow> rows = harness::counterexample_sweep(kind, sweep);
  Json j;
  j["kind"] = kind_name;
  Json arr = Json::array();
  std::vector<std::vector<double>> table;
  for (const harness::SweepRow& r : rows) {
    Json row{{"param", r.param}, {"E", r.E}, {"A", r.A}, {"EEA", r.EEA}};
    std::vector<double> cells{r.param, r.E, r.A, r.EEA};
    if (r.L) {
      row["L"] = *r.L;
      row["gage_ratio"] = *r.gage_ratio;
      cells.push_back(*r.L);
      cells.push_back(*r.gage_ratio);
    }
    arr.push_back(row);
    table.push_back(cells);
  }
  j["rows"] = arr;
  bool ok = true;
  std::vector<std::string> header{"param", "E", "A", "EEA"};
  if (kind == harness::Counterexample::dumbbell) {
    header.insert(header.end(), {"L", "gage_ratio"});
    for (std::size_t i = 0; i < rows.size(); ++i) {
      ok = ok && rows[i].E + rows[i].A <= 50.0;
      ok = ok && (i == 0 || *rows[i].L > *rows[i - 1].L);
    }
    j["bounded_and_lengthening"] = ok;
  } else {
    ok = harness::eea_strictly_decreasing(rows);
    j["strictly_decreasing"] = ok;
  }
  out << j.dump(2) << '\n';
  const Artifacts art(cfg);
  art.json("counterexample_" + kind_name, j);
  art.table_csv("counterexample_" + kind_name, header, table);
  if (!ok) err << "counterexample: sweep does not behave as stated\n";
  return ok ? kExitOk : kExitViolation;
}

int minimize_cmd(const RunConfig& cfg, const std::string& init, int nodes, int max_iter,
                 std::ostream& out, std::ostream& err) {
  minimize::OptimState start;
  if (init == "circle") {
    start = minimize::circle_state(nodes, 1.0);
  } else if (init == "fourier") {
    start = minimize::state_from_curve(curve::fourier_shape(cfg.seed, 4, 0.2), nodes);
  } else {
    start = minimize::state_from_curve(curve::ellipse(3.0, 1.0), nodes);
  }
  const minimize::OptimResult res = minimize::minimize_energy(start, max_iter);
  Json j;
  j["init"] = init;
  j["nodes"] = nodes;
  j["converged"] = res.converged;
  j["iterations"] = res.iterations;
  j["gradient_norm"] = res.gradient_norm;
  j["violation"] = res.violation;
  j["metrics"] = metrics_json(res.metrics);
  j["EEA_relative_to_pi_cubed"] = res.metrics.EEA / kPiCubed - 1.0;
  j["curvature_stddev"] = res.curvature_stddev;
  j["stationarity_residual"] = res.stationarity_residual;
  j["L"] = res.state.L;
  out << j.dump(2) << '\n';
  const Artifacts art(cfg);
  art.json("minimize_" + init, j);
  const curve::PlanarCurve c = minimize::curve_of(res.state);
  art.curve_csv("minimize_" + init, c);
  art.svg("minimize_" + init, {{&c, "minimizer"}}, "E + A minimizer");
  std::vector<std::vector<double>> log;
  log.reserve(res.log.size());
  for (const auto& l : res.log) {
    log.push_back({double(l.iter), l.objective, l.E, l.A, l.violation, l.step});
  }
  art.table_csv("minimize_" + init + "_log", {"iter", "objective", "E", "A", "violation", "step"},
                log);
  if (res.converged && res.metrics.EEA < kPiCubed - 1e-6) {
    err << "minimize: converged below pi^3\n";
    return kExitViolation;
  }
  if (!res.converged) err << "minimize: not converged after " << res.iterations << " iterations\n";
  return kExitOk;
}

int ode_cmd(const RunConfig& cfg, double C, double s_end, double step, std::ostream& out) {
  const quartic::QuarticRoots r = quartic::roots(C);
  const elastica::OdeTrace trace = elastica::integrate_ode(C, r.k_M, 0.0, s_end, step);
  const elastica::PeriodData pd = elastica::period_data(C);
  Json j;
  j["C"] = C;
  j["s_end"] = s_end;
  j["step"] = step;
  j["k_m"] = r.k_m;
  j["k_M"] = r.k_M;
  j["drift"] = trace.drift;
  j["extrema"] = trace.extrema.size();
  j["quadrature_period"] = pd.T;
  if (const auto p = trace.measured_period()) {
    j["measured_period"] = *p;
    j["period_relative_difference"] = std::abs(*p - pd.T) / pd.T;
  } else {
    j["measured_period"] = nullptr;
  }
  out << j.dump(2) << '\n';
  const Artifacts art(cfg);
  art.json("ode", j);
  std::vector<std::vector<double>> rows;
  rows.reserve(trace.samples.size());
  for (const auto& s : trace.samples) rows.push_back({s.s, s.k, s.kp});
  art.table_csv("ode", {"s", "k", "kp"}, rows);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  if (const char* env = std::getenv("ELAB_OUTPUT_DIR")) cfg.output_dir = env;

  CLI::App app{"Numerical laboratory for the elastic energy isoperimetric inequality", "elab"};
  app.fallthrough();
  app.require_subcommand(1);
  std::vector<std::string> formats;
  app.add_option("--grid-n", cfg.grid_n, "Grid intervals for drop and critical curves")
      ->check(CLI::Range(64, 1 << 22));
  app.add_option("--tol", cfg.tol, "Shooting tolerance on C")->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "Base seed");
  app.add_option("--output-dir", cfg.output_dir, "Directory for CSV/JSON/SVG artifacts");
  app.add_option("--formats", formats, "Artifact formats")
      ->delimiter(',')
      ->check(CLI::IsMember({"csv", "json", "svg"}));

  auto* drop_cmd = app.add_subcommand("drop", "Optimal drop");
  drop_cmd->fallthrough();
  drop_cmd->require_subcommand(1);
  auto* drop_solve_cmd = drop_cmd->add_subcommand("solve", "Solve for C* and build the drop");
  auto* drop_verify_cmd = drop_cmd->add_subcommand("verify", "Residuals and bounds");
  drop_solve_cmd->fallthrough();
  drop_verify_cmd->fallthrough();

  int periods = 0;
  auto* crit_cmd = app.add_subcommand("critical", "Closed critical curves");
  crit_cmd->fallthrough();
  crit_cmd->add_option("--periods", periods, "Number of periods")
      ->required()
      ->check(CLI::Range(1, 3));

  std::string family;
  int samples = 0;
  std::optional<double> aspect;
  bool serial = false;
  bool timing = false;
  auto* verify = app.add_subcommand("verify", "Inequality sweep over a shape family");
  verify->fallthrough();
  verify->add_option("--family", family)
      ->required()
      ->check(CLI::IsMember({"fourier", "ellipse", "dumbbell"}));
  verify->add_option("--samples", samples)->required()->check(CLI::PositiveNumber);
  verify->add_option("--aspect", aspect, "Fixed a/b for the ellipse family")
      ->check(CLI::Range(1.0, 100.0));
  verify->add_flag("--serial", serial, "Run the serial reference path");
  verify->add_flag("--timing", timing, "Include runtime in the report");

  std::string kind;
  std::vector<double> sweep;
  auto* counter = app.add_subcommand("counterexample", "Counterexample sweeps");
  counter->fallthrough();
  counter->add_option("kind", kind)
      ->required()
      ->check(CLI::IsMember({"ring", "gaussian", "dumbbell"}));
  counter->add_option("--sweep", sweep)->required()->delimiter(',');

  std::string init = "circle";
  int nodes = 256;
  int max_iter = 100000;
  auto* mini = app.add_subcommand("minimize", "Direct minimization of E + A");
  mini->fallthrough();
  mini->add_option("--init", init)->check(CLI::IsMember({"circle", "fourier", "ellipse"}));
  mini->add_option("--nodes", nodes)->check(CLI::Range(64, 1 << 16));
  mini->add_option("--max-iter", max_iter)->check(CLI::PositiveNumber);

  double C = 0.0;
  double s_end = 0.0;
  double step = 1e-4;
  auto* ode = app.add_subcommand("ode", "Integrate the curvature ODE from k_M");
  ode->fallthrough();
  ode->add_option("--C", C)->required();
  ode->add_option("--s-end", s_end)->required()->check(CLI::PositiveNumber);
  ode->add_option("--step", step)->check(CLI::PositiveNumber);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  if (!formats.empty()) cfg.formats = {formats.begin(), formats.end()};

  try {
    if (drop_solve_cmd->parsed()) {
      cfg.subcommand = "drop solve";
      return drop_solve(cfg, out);
    }
    if (drop_verify_cmd->parsed()) {
      cfg.subcommand = "drop verify";
      return drop_verify(cfg, out, err);
    }
    if (crit_cmd->parsed()) {
      cfg.subcommand = "critical";
      return critical_cmd(cfg, periods, out, err);
    }
    if (verify->parsed()) {
      cfg.subcommand = "verify";
      return verify_cmd(cfg, family, samples, aspect, serial, timing, out, err);
    }
    if (counter->parsed()) {
      cfg.subcommand = "counterexample";
      return counterexample_cmd(cfg, kind, sweep, out, err);
    }
    if (mini->parsed()) {
      cfg.subcommand = "minimize";
      return minimize_cmd(cfg, init, nodes, max_iter, out, err);
    }
    if (ode->parsed()) {
      cfg.subcommand = "ode";
      return ode_cmd(cfg, C, s_end, step, out);
    }
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitViolation;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace elab::cli
