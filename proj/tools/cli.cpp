#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <type_traits>
#include <utility>
#include <variant>

#include "impact_game/asymptotics.hpp"
#include "impact_game/closed_form.hpp"
#include "impact_game/continuous_time.hpp"
#include "impact_game/costs.hpp"
#include "impact_game/dense.hpp"
#include "impact_game/equilibrium.hpp"
#include "impact_game/parallel.hpp"

namespace impact_game::cli {

namespace {

using Cell = std::variant<double, long long, std::string, bool>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  nlohmann::ordered_json summary = nlohmann::ordered_json::object();

  void add(std::vector<Cell> row) { rows.push_back(std::move(row)); }
};

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_cell(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, double>) {
          return format_double(v);
        } else if constexpr (std::is_same_v<V, long long>) {
          return std::to_string(v);
        } else if constexpr (std::is_same_v<V, bool>) {
          return v ? "true" : "false";
        } else {
          return v;
        }
      },
      c);
}

nlohmann::ordered_json json_cell(const Cell& c) {
  return std::visit([](const auto& v) { return nlohmann::ordered_json(v); }, c);
}

const char* command_name(Command c) {
  switch (c) {
    case Command::equilibrium: return "equilibrium";
    case Command::sweep: return "sweep";
    case Command::limits: return "limits";
    case Command::continuous: return "continuous";
    case Command::montecarlo: return "montecarlo";
    case Command::tax: return "tax";
    case Command::verify: return "verify";
  }
  return "?";
}

nlohmann::ordered_json meta_of(const RunConfig& cfg) {
  const GameParams& p = cfg.params;
  nlohmann::ordered_json m;
  m["command"] = command_name(cfg.command);
  m["version"] = kVersion;
  m["rho"] = p.rho;
  m["T"] = p.T;
  m["N"] = p.N;
  m["theta"] = p.theta;
  m["x"] = p.x;
  m["y"] = p.y;
  m["dt"] = p.dt();
  m["alpha"] = p.alpha();
  m["kappa"] = p.kappa();
  if (cfg.n_list) m["n_list"] = *cfg.n_list;
  m["format"] = cfg.format == Format::json ? "json" : "csv";
  switch (cfg.command) {
    case Command::verify: m["grid"] = cfg.grid; break;
    case Command::limits:
      m["curves"] = cfg.curves;
      m["t_points"] = cfg.t_points;
      break;
    case Command::continuous: m["n_grid"] = cfg.n_grid; break;
    case Command::montecarlo:
      m["samples"] = cfg.sim.n_samples;
      m["seed"] = cfg.sim.seed;
      m["price_model"] =
          cfg.sim.price_model == PriceModel::random_walk ? "random_walk" : "constant_zero";
      m["walk_scale"] = cfg.sim.walk_scale;
      break;
    default: break;
  }
  return m;
}

void emit(const RunConfig& cfg, const Table& table, std::ostream& out) {
  if (cfg.format == Format::csv) {
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
      out << (i ? "," : "") << table.columns[i];
    }
    out << '\n';
    for (const auto& row : table.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_cell(row[i]);
      out << '\n';
    }
    return;
  }
  nlohmann::ordered_json doc;
  doc["meta"] = meta_of(cfg);
  if (!table.summary.empty()) doc["summary"] = table.summary;
  auto data = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj;
    for (std::size_t i = 0; i < row.size(); ++i) obj[table.columns[i]] = json_cell(row[i]);
    data.push_back(std::move(obj));
  }
  doc["data"] = std::move(data);
  out << doc.dump(2) << '\n';
}

// --- commands -------------------------------------------------------------

Table run_equilibrium(const RunConfig& cfg) {
  const GameParams& p = cfg.params;
  const EquilibriumSolution sol = equilibrium_strategies(p);
  const CostBreakdown cb = cost_decomposition(sol);
  Table t;
  t.columns = {"k", "t_k", "v_k", "w_k", "xi_k", "eta_k"};
  const double dt = p.dt();
  for (std::size_t k = 0; k < p.size(); ++k) {
    t.add({static_cast<long long>(k), static_cast<double>(k) * dt, sol.v[k], sol.w[k],
           sol.xi_star[k], sol.eta_star[k]});
  }
  auto& s = t.summary;
  s["nu_sum"] = sol.nu_sum;
  s["omega_sum"] = sol.omega_sum;
  s["foc_deviation"] = sol.foc_deviation;
  s["foc_scale"] = sol.foc_scale;
  s["min_component_v"] = sol.oscillation.min_component_v;
  s["min_component_w"] = sol.oscillation.min_component_w;
  s["sign_changes_v"] = sol.oscillation.sign_changes_v;
  s["sign_changes_w"] = sol.oscillation.sign_changes_w;
  s["cost_xi"] = cb.cost_xi;
  s["cost_eta"] = cb.cost_eta;
  s["tax_revenue"] = cb.tax_revenue;
  s["taxation_cost"] = cb.taxation_cost;
  return t;
}

Table run_sweep(const RunConfig& cfg) {
  const ConvergenceStudy study = convergence_study(cfg.params, *cfg.n_list);
  Table t;
  t.columns = {"N", "expected_cost", "limit", "abs_error", "tax_revenue", "taxation_cost"};
  for (const ConvergenceRow& r : study.rows) {
    t.add({static_cast<long long>(r.N), r.expected_cost, r.limit, r.abs_error, r.tax_revenue,
           r.taxation_cost});
  }
  t.summary["error_decreased"] = study.error_decreased;
  t.summary["monotone_fraction"] = study.monotone_fraction;
  return t;
}

Table run_tax(const RunConfig& cfg) {
  const std::vector<std::size_t> ns = cfg.n_list.value_or(std::vector<std::size_t>{cfg.params.N});
  std::vector<TaxMetrics> metrics(ns.size());
  for (std::size_t n : ns) cfg.params.with_N(n).validate();
  parallel_for(ns.size(), [&](std::size_t i) { metrics[i] = tax_metrics(cfg.params.with_N(ns[i])); });
  const LimitBundle lim = limit_bundle(cfg.params);
  Table t;
  t.columns = {"N", "tax_revenue", "taxation_cost", "total_cost", "total_cost_free", "tr_minus_tc"};
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const TaxMetrics& m = metrics[i];
    t.add({static_cast<long long>(ns[i]), m.tax_revenue, m.taxation_cost, m.total_cost,
           m.total_cost_free, m.tax_revenue - m.taxation_cost});
  }
  t.summary["tr_limit"] = lim.tr_limit;
  t.summary["tr_minus_tc_liminf"] = lim.tr_minus_tc_liminf;
  return t;
}

Table run_limits(const RunConfig& cfg) {
  const LimitBundle lim = limit_bundle(cfg.params);
  Table t;
  if (cfg.curves) {
    if (cfg.t_points < 2) throw ParameterError("t-points must be >= 2");
    t.columns = {"t",         "v_limit",  "w_limit",  "f_plus",   "f_minus",  "g_plus",
                 "g_minus",   "phi_plus", "phi_minus", "psi_plus", "psi_minus"};
    const double T = cfg.params.T;
    for (std::size_t i = 0; i < cfg.t_points; ++i) {
      const double s = i + 1 == cfg.t_points ? T : T * static_cast<double>(i) / (cfg.t_points - 1);
      t.add({s, lim.v_limit(s), lim.w_limit(s), lim.f_plus(s), lim.f_minus(s), lim.g_plus(s),
             lim.g_minus(s), lim.phi_plus(s), lim.phi_minus(s), lim.psi_plus(s),
             lim.psi_minus(s)});
    }
    return t;
  }
  const CostComparison cmp = cost_comparison_predicate(cfg.params.rhoT(), cfg.params.x, cfg.params.y);
  t.columns = {"quantity", "value"};
  t.add({std::string("cost_limit_pos"), lim.cost_limit_pos});
  t.add({std::string("cost_limit_even"), lim.cost_limit_even});
  t.add({std::string("cost_limit_odd"), lim.cost_limit_odd});
  t.add({std::string("tr_limit"), lim.tr_limit});
  t.add({std::string("tr_minus_tc_liminf"), lim.tr_minus_tc_liminf});
  t.add({std::string("comparison_margin"), cmp.margin});
  t.add({std::string("comparison_threshold_rhoT"), cost_comparison_threshold()});
  t.summary["comparison_holds"] = cmp.holds;
  return t;
}

Table run_continuous(const RunConfig& cfg) {
  const GameParams& p = cfg.params;
  const ContinuousEquilibrium eq = continuous_equilibrium(p.rho, p.T, p.x, p.y);
  const FredholmReport rep = fredholm_residual(p.rho, p.T, p.x, p.y, p.theta, cfg.n_grid);
  const LimitBundle lim = limit_bundle(p);
  Table t;
  t.columns = {"t", "X", "Y", "fredholm_agent1", "fredholm_agent2"};
  for (std::size_t i = 0; i < cfg.n_grid; ++i) {
    const double s = i + 1 == cfg.n_grid ? p.T : p.T * static_cast<double>(i) / (cfg.n_grid - 1);
    t.add({s, eq.X.value(s), eq.Y.value(s), fredholm_lhs(eq.X, eq.Y, p.rho, p.theta, s),
           fredholm_lhs(eq.Y, eq.X, p.rho, p.theta, s)});
  }
  auto& sm = t.summary;
  sm["continuous_cost"] = continuous_cost(p.rho, p.T, p.x, p.y);
  sm["cost_limit_pos"] = lim.cost_limit_pos;
  sm["jump_at_0_X"] = eq.X.jump_at_0;
  sm["jump_at_T_X"] = eq.X.jump_at_T;
  sm["fredholm_constant_agent1"] = rep.constant_estimate_agent1;
  sm["fredholm_constant_agent2"] = rep.constant_estimate_agent2;
  sm["reference_constant_agent1"] = rep.reference_constant_agent1;
  sm["reference_constant_agent2"] = rep.reference_constant_agent2;
  sm["fredholm_max_deviation"] = rep.max_abs_deviation;
  return t;
}

Table run_montecarlo(const RunConfig& cfg) {
  const GameParams& p = cfg.params;
  const EquilibriumSolution sol = equilibrium_strategies(p);
  const SimResult r = simulate_cost(p, sol.xi_star, sol.eta_star, cfg.sim);
  const double fx = expected_cost(p, sol.xi_star, sol.eta_star);
  const double fe = expected_cost(p, sol.eta_star, sol.xi_star);
  auto z = [](double mean, double ref, double se) {
    return se > 0.0 ? (mean - ref) / se : (mean == ref ? 0.0 : INFINITY);
  };
  Table t;
  t.columns = {"agent", "mean", "stderr", "formula", "z_score"};
  t.add({std::string("xi"), r.mean_xi_cost, r.stderr_xi, fx, z(r.mean_xi_cost, fx, r.stderr_xi)});
  t.add({std::string("eta"), r.mean_eta_cost, r.stderr_eta, fe,
         z(r.mean_eta_cost, fe, r.stderr_eta)});
  return t;
}

// --- verify ---------------------------------------------------------------

struct PointCheck {
  double solver_nu = 0.0;
  double solver_omega = 0.0;
  double nu_res = 0.0;
  double omega_res = 0.0;
  double foc = 0.0;
  double decomposition = 0.0;
  double normalization = 0.0;
};

double rel_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num = std::max(num, std::abs(a[i] - b[i]));
    den = std::max(den, std::abs(b[i]));
  }
  return den > 0.0 ? num / den : num;
}

PointCheck check_point(const GameParams& p) {
  PointCheck c;
  const auto nu_d = dense::solve_nu(p);
  const auto nu_s = solve_nu(p);
  const auto nu_c = nu_closed_form(p);
  const auto om_d = dense::solve_omega(p);
  const auto om_s = solve_omega(p);
  const auto om_c = omega_closed_form(p);
  c.solver_nu = std::max({rel_diff(nu_s, nu_d), rel_diff(nu_c, nu_d), rel_diff(nu_c, nu_s)});
  c.solver_omega = std::max({rel_diff(om_s, om_d), rel_diff(om_c, om_d), rel_diff(om_c, om_s)});
  c.nu_res = nu_residual(p, nu_s);
  c.omega_res = omega_residual(p, om_s);
  const EquilibriumSolution sol = equilibrium_strategies(p);
  c.foc = sol.foc_scale > 0.0 ? sol.foc_deviation / sol.foc_scale : sol.foc_deviation;
  const CostBreakdown cb = cost_decomposition(sol);
  const double scale = std::max(std::abs(cb.cost_xi), 1e-300);
  c.decomposition = std::abs(cb.decomposition_cost_xi - cb.cost_xi) / scale;
  double sv = 0.0;
  double sw = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    sv += sol.v[k];
    sw += sol.w[k];
  }
  c.normalization = std::max(std::abs(sv - 1.0), std::abs(sw - 1.0));
  return c;
}

Table run_verify(const RunConfig& cfg, bool& all_pass) {
  std::vector<std::size_t> ns;
  std::vector<double> thetas;
  if (cfg.grid == "small") {
    ns = {2, 3, 5, 10, 50};
    thetas = {0.0, 0.25, 1.0};
  } else if (cfg.grid == "full") {
    ns = {2, 3, 5, 10, 50, 200};
    thetas = {0.0, 0.05, 0.24, 0.25, 1.0};
  } else {
    throw ParameterError("grid must be 'small' or 'full'");
  }
  const std::vector<double> rhoTs = {0.1, 1.0, 10.0};
  std::vector<GameParams> points;
  for (std::size_t n : ns) {
    for (double th : thetas) {
      for (double rt : rhoTs) {
        GameParams p = cfg.params;
        p.T = 1.0;
        p.rho = rt;
        p.N = n;
        p.theta = th;
        points.push_back(p);
      }
    }
  }
  std::vector<PointCheck> results(points.size());
  parallel_for(points.size(), [&](std::size_t i) { results[i] = check_point(points[i]); });

  PointCheck worst;
  for (const PointCheck& c : results) {
    worst.solver_nu = std::max(worst.solver_nu, c.solver_nu);
    worst.solver_omega = std::max(worst.solver_omega, c.solver_omega);
    worst.nu_res = std::max(worst.nu_res, c.nu_res);
    worst.omega_res = std::max(worst.omega_res, c.omega_res);
    worst.foc = std::max(worst.foc, c.foc);
    worst.decomposition = std::max(worst.decomposition, c.decomposition);
    worst.normalization = std::max(worst.normalization, c.normalization);
  }
  Table t;
  t.columns = {"check", "worst", "tolerance", "pass"};
  all_pass = true;
  auto row = [&](const char* name, double value, double tol) {
    const bool ok = value <= tol;
    all_pass = all_pass && ok;
    t.add({std::string(name), value, tol, ok});
  };
  row("solver_agreement_nu", worst.solver_nu, 1e-8);
  row("solver_agreement_omega", worst.solver_omega, 1e-8);
  row("nu_residual", worst.nu_res, 1e-10);
  row("omega_residual", worst.omega_res, 1e-12);
  row("foc_relative", worst.foc, 1e-9);
  row("cost_decomposition_relative", worst.decomposition, 1e-9);
  row("normalization", worst.normalization, 1e-12);
  t.summary["points"] = points.size();
  t.summary["all_pass"] = all_pass;
  return t;
}

}  // namespace

std::vector<std::size_t> parse_n_list(const std::string& text) {
  auto to_size = [&](const std::string& s) -> std::size_t {
    std::size_t pos = 0;
    long long v = 0;
    try {
      v = std::stoll(s, &pos);
    } catch (const std::exception&) {
      throw ParameterError("n-list: '" + s + "' is not an integer");
    }
    if (pos != s.size() || v < 0) throw ParameterError("n-list: '" + s + "' is not a valid N");
    return static_cast<std::size_t>(v);
  };
  std::vector<std::size_t> out;
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
    if (parts.size() < 2 || parts.size() > 3) {
      throw ParameterError("n-list range must be a:b or a:b:step");
    }
    const std::size_t a = to_size(parts[0]);
    const std::size_t b = to_size(parts[1]);
    const std::size_t step = parts.size() == 3 ? to_size(parts[2]) : 1;
    if (step == 0) throw ParameterError("n-list step must be >= 1");
    if (a > b) throw ParameterError("n-list range must be ascending");
    for (std::size_t n = a; n <= b; n += step) out.push_back(n);
  } else {
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ',');) out.push_back(to_size(part));
  }
  if (out.empty()) throw ParameterError("n-list is empty");
  if (!std::is_sorted(out.begin(), out.end())) {
    throw ParameterError("n-list must be sorted ascending");
  }
  for (std::size_t n : out) {
    if (n < 2) throw ParameterError("n-list entries must be >= 2");
  }
  return out;
}

std::optional<RunConfig> parse(int argc, const char* const* argv) {
  RunConfig cfg;
  CLI::App app{"Two-agent market impact game: equilibria, limits and checks"};
  app.set_version_flag("--version", kVersion);
  app.set_config("--config", "", "key=value configuration file (flags override it)");
  app.require_subcommand(1, 1);
  app.fallthrough();

  GameParams& p = cfg.params;
  app.add_option("--rho", p.rho, "resilience rate (> 0)")->capture_default_str();
  app.add_option("--T", p.T, "time horizon (> 0)")->capture_default_str();
  app.add_option("--N", p.N, "number of grid steps (>= 2)")->capture_default_str();
  app.add_option("--theta", p.theta, "transaction cost weight (>= 0)")->capture_default_str();
  app.add_option("--x", p.x, "inventory of agent 1")->capture_default_str();
  app.add_option("--y", p.y, "inventory of agent 2")->capture_default_str();
  std::string n_list;
  app.add_option("--n-list", n_list, "N values: a:b[:step] or comma list");
  app.add_option("--output", cfg.output_path, "output file, - for stdout")->capture_default_str();
  std::string format = "json";
  app.add_option("--format", format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_option("--grid", cfg.grid, "verify grid: small or full")
      ->check(CLI::IsMember({"small", "full"}))
      ->capture_default_str();
  app.add_flag("--curves", cfg.curves, "limits: emit limit curves on a t grid");
  app.add_option("--t-points", cfg.t_points, "limits: number of curve points")
      ->capture_default_str();
  app.add_option("--n-grid", cfg.n_grid, "continuous: number of evaluation points")
      ->capture_default_str();
  app.add_option("--samples", cfg.sim.n_samples, "montecarlo: sample count")
      ->capture_default_str();
  app.add_option("--seed", cfg.sim.seed, "montecarlo: RNG seed")->capture_default_str();
  std::string price_model = "constant_zero";
  app.add_option("--price-model", price_model, "montecarlo: constant_zero or random_walk")
      ->check(CLI::IsMember({"constant_zero", "random_walk"}))
      ->capture_default_str();
  app.add_option("--walk-scale", cfg.sim.walk_scale, "montecarlo: per-step price stddev")
      ->capture_default_str();

  const std::pair<const char*, Command> commands[] = {
      {"equilibrium", Command::equilibrium}, {"sweep", Command::sweep},
      {"limits", Command::limits},           {"continuous", Command::continuous},
      {"montecarlo", Command::montecarlo},   {"tax", Command::tax},
      {"verify", Command::verify}};
  const char* help[] = {"equilibrium strategies on the grid",
                        "expected cost against N with its limit",
                        "high-frequency limit values or curves",
                        "continuous-time equilibrium and first-order condition",
                        "Monte Carlo check of the expected costs",
                        "tax revenues and taxation costs against N",
                        "cross-check all solvers and identities"};
  std::vector<CLI::App*> subs;
  for (std::size_t i = 0; i < std::size(commands); ++i) {
    subs.push_back(app.add_subcommand(commands[i].first, help[i]));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    app.exit(e);
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    std::ostringstream os;
    os << e.what();
    throw ParameterError(os.str());
  }
  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (subs[i]->parsed()) cfg.command = commands[i].second;
  }
  cfg.format = format == "csv" ? Format::csv : Format::json;
  cfg.sim.price_model =
      price_model == "random_walk" ? PriceModel::random_walk : PriceModel::constant_zero;
  if (!n_list.empty()) cfg.n_list = parse_n_list(n_list);
  if (cfg.command == Command::sweep && !cfg.n_list) {
    throw ParameterError("sweep requires --n-list");
  }
  return cfg;
}

int run(const RunConfig& cfg, std::ostream& err) {
  try {
    cfg.params.validate();
    if (cfg.command == Command::montecarlo) cfg.sim.validate();
    Table table;
    bool pass = true;
    switch (cfg.command) {
      case Command::equilibrium: table = run_equilibrium(cfg); break;
      case Command::sweep: table = run_sweep(cfg); break;
      case Command::limits: table = run_limits(cfg); break;
      case Command::continuous: table = run_continuous(cfg); break;
      case Command::montecarlo: table = run_montecarlo(cfg); break;
      case Command::tax: table = run_tax(cfg); break;
      case Command::verify: table = run_verify(cfg, pass); break;
    }
    if (cfg.output_path == "-") {
      emit(cfg, table, std::cout);
      std::cout.flush();
    } else {
      std::ofstream out(cfg.output_path, std::ios::binary);
      if (!out) throw ParameterError("cannot open output file '" + cfg.output_path + "'");
      emit(cfg, table, out);
      if (!out) throw ParameterError("failed writing '" + cfg.output_path + "'");
    }
    if (!pass) {
      err << "verify: tolerance breach (see output)\n";
      return 2;
    }
    return 0;
  } catch (const ParameterError& e) {
    err << "parameter error: " << e.what() << '\n';
    return 1;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return 2;
  }
}

int main_entry(int argc, const char* const* argv) {
  std::optional<RunConfig> cfg;
  try {
    cfg = parse(argc, argv);
  } catch (const ParameterError& e) {
    std::cerr << "parameter error: " << e.what() << '\n';
    return 1;
  }
  if (!cfg) return 0;
  return run(*cfg, std::cerr);
}

}  // namespace impact_game::cli
