#include "argmin/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "argmin/chain.hpp"
#include "argmin/errors.hpp"
#include "argmin/harness.hpp"
#include "argmin/laws.hpp"
#include "argmin/numerics.hpp"
#include "argmin/pathsim.hpp"
#include "argmin/renewal.hpp"

namespace argmin {

namespace {

using ordered_json = nlohmann::ordered_json;

struct GlobalOpts {
  std::string format = "json";
  int precision = 12;
  int threads = 1;
  std::uint64_t seed = 42;
  double dt = 1e-3;
  std::size_t samples = 0;
};

std::string fmt_num(double v, int precision) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", precision, v);
  return buf;
}

ordered_json json_num(double v, int precision) {
  return ordered_json(std::strtod(fmt_num(v, precision).c_str(), nullptr));
}

ordered_json json_array(const std::vector<double>& values, int precision) {
  ordered_json arr = ordered_json::array();
  for (double v : values) arr.push_back(json_num(v, precision));
  return arr;
}

std::string rational_str(const Rational& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

void emit(const ordered_json& doc) { std::cout << doc.dump(2) << "\n"; }

// One row of named columns, shared by the csv writers.
using Row = std::vector<std::pair<std::string, std::string>>;

void emit_csv(const std::vector<Row>& rows) {
  if (rows.empty()) return;
  std::string header;
  for (const auto& [key, value] : rows.front()) {
    (void)value;
    header += header.empty() ? key : "," + key;
  }
  std::cout << header << "\n";
  for (const Row& row : rows) {
    std::string line;
    for (const auto& [key, value] : row) {
      (void)key;
      line += line.empty() ? value : "," + value;
    }
    std::cout << line << "\n";
  }
}

int run_simulate(const GlobalOpts& global, const std::string& model, double horizon,
                 std::size_t steps, double alpha, double beta, const std::string& out) {
  SampledPath path;
  const SeedSpec seed{global.seed, 0};
  if (model == "brownian") {
    path = simulate_brownian(horizon, global.dt, seed);
  } else if (model == "cauchy") {
    path = simulate_stable(1.0, 0.0, horizon, global.dt, seed);
  } else if (model == "stable") {
    path = simulate_stable(alpha, beta, horizon, global.dt, seed);
  } else if (model == "gaussian-walk") {
    path = simulate_walk(IncrementModel::gaussian_model(), steps, seed);
  } else if (model == "rademacher-walk") {
    path = simulate_walk(IncrementModel::rademacher_model(), steps, seed);
  } else {
    throw DomainError("unknown model: " + model);
  }
  if (!out.empty()) {
    std::ofstream file(out, std::ios::binary);
    if (!file) throw DomainError("cannot open output file: " + out);
    write_path(path, file);
    std::cerr << "wrote " << path.values.size() << " samples to " << out << "\n";
    return 0;
  }
  if (global.format == "json") {
    ordered_json doc;
    doc["model"] = model;
    doc["t0"] = json_num(path.t0, global.precision);
    doc["dt"] = json_num(path.dt, global.precision);
    doc["values"] = json_array(path.values, global.precision);
    emit(doc);
  } else {
    std::vector<Row> rows;
    rows.reserve(path.values.size());
    for (std::size_t k = 0; k < path.values.size(); ++k) {
      const double t = path.t0 + static_cast<double>(k) * path.dt;
      rows.push_back({{"t", fmt_num(t, global.precision)},
                      {"value", fmt_num(path.values[k], global.precision)}});
    }
    emit_csv(rows);
  }
  return 0;
}

int run_kernel(const GlobalOpts& global, double x, double t, std::optional<double> alpha,
               std::optional<double> beta, std::size_t points, bool with_mass,
               const std::string& atoms_out) {
  MixedKernel kernel;
  std::optional<double> rho;
  if (alpha || beta) {
    const StableParams params(alpha.value_or(2.0), beta.value_or(0.0));
    kernel = stable_transition_kernel(params, x, t);
    rho = params.rho;
  } else {
    kernel = transition_kernel(x, t);
  }
  const KernelTabulation tab = tabulate_kernel(kernel, points);

  ordered_json atom = nullptr;
  if (kernel.atom) {
    atom = ordered_json{{"location", json_num(kernel.atom->location, global.precision)},
                        {"mass", json_num(kernel.atom->mass, global.precision)}};
  }
  if (global.format == "json") {
    ordered_json doc;
    doc["x"] = json_num(x, global.precision);
    doc["t"] = json_num(t, global.precision);
    if (rho) doc["rho"] = json_num(*rho, global.precision);
    doc["support"] = {json_num(kernel.support_lo, global.precision),
                      json_num(kernel.support_hi, global.precision)};
    doc["atom"] = atom;
    if (with_mass) doc["total_mass"] = json_num(kernel_mass(kernel, 1e-8), global.precision);
    doc["y"] = json_array(tab.y, global.precision);
    doc["density"] = json_array(tab.density, global.precision);
    emit(doc);
  } else {
    // CSV carries only the continuous part; the atom goes to a side channel.
    if (!atoms_out.empty()) {
      std::ofstream file(atoms_out);
      if (!file) throw DomainError("cannot open atom output file: " + atoms_out);
      file << atom.dump(2) << "\n";
    } else if (kernel.atom) {
      std::cerr << "warning: atom " << atom.dump() << " omitted from csv; use --atoms-out\n";
    }
    std::vector<Row> rows;
    rows.reserve(tab.y.size());
    for (std::size_t i = 0; i < tab.y.size(); ++i)
      rows.push_back({{"y", fmt_num(tab.y[i], global.precision)},
                      {"density", fmt_num(tab.density[i], global.precision)}});
    emit_csv(rows);
    if (with_mass)
      std::cerr << "total mass: " << fmt_num(kernel_mass(kernel, 1e-8), global.precision)
                << "\n";
  }
  return 0;
}

int run_renewal(const GlobalOpts& global, double a, double b, double horizon) {
  const RenewalLaw law = build_renewal_law(a, b, horizon, global.dt);
  if (global.format == "json") {
    ordered_json doc;
    doc["a"] = json_num(a, global.precision);
    doc["b"] = json_num(b, global.precision);
    doc["horizon"] = json_num(horizon, global.precision);
    doc["dt"] = json_num(global.dt, global.precision);
    doc["n_terms_used"] = law.n_terms_used;
    doc["h"] = json_array(law.h.values, global.precision);
    doc["g"] = json_array(law.g.values, global.precision);
    doc["f_delay"] = json_array(law.f_delay.values, global.precision);
    emit(doc);
  } else {
    std::vector<Row> rows;
    rows.reserve(law.h.size());
    for (std::size_t k = 0; k < law.h.size(); ++k)
      rows.push_back({{"t", fmt_num(law.h.time_at(k), global.precision)},
                      {"h", fmt_num(law.h.values[k], global.precision)},
                      {"g", fmt_num(law.g.values[k], global.precision)},
                      {"f_delay", fmt_num(law.f_delay.values[k], global.precision)}});
    emit_csv(rows);
  }
  return 0;
}

double transform_by_name(const std::string& law, double lambda, DeltaForm form) {
  if (law == "J") return phi_J(lambda);
  if (law == "T1") return phi_T1(lambda);
  if (law == "Delta") return phi_Delta(lambda, form);
  if (law == "DG") return phi_DG(lambda);
  throw DomainError("unknown law: " + law);
}

int run_laplace(const GlobalOpts& global, const std::string& law,
                const std::vector<double>& lambdas, const std::string& form_name) {
  DeltaForm form = DeltaForm::closed;
  if (form_name == "series")
    form = DeltaForm::series;
  else if (form_name == "decomposition")
    form = DeltaForm::decomposition;
  else if (form_name != "closed")
    throw DomainError("unknown delta form: " + form_name);

  const std::vector<std::string> laws =
      law.empty() ? std::vector<std::string>{"J", "T1", "Delta", "DG"}
                  : std::vector<std::string>{law};
  std::vector<Row> rows;
  for (double lambda : lambdas) {
    Row row{{"lambda", fmt_num(lambda, global.precision)}};
    for (const auto& name : laws)
      row.push_back({"phi_" + name,
                     fmt_num(transform_by_name(name, lambda, form), global.precision)});
    rows.push_back(std::move(row));
  }
  if (global.format == "json") {
    ordered_json arr = ordered_json::array();
    for (const Row& row : rows) {
      ordered_json obj;
      for (const auto& [key, value] : row)
        obj[key] = ordered_json(std::strtod(value.c_str(), nullptr));
      arr.push_back(std::move(obj));
    }
    emit(arr);
  } else {
    emit_csv(rows);
  }
  return 0;
}

int run_identities(const GlobalOpts& global, const std::vector<double>& lambdas, double tol) {
  bool all_pass = true;
  std::vector<Row> rows;
  ordered_json arr = ordered_json::array();
  for (double lambda : lambdas) {
    const double d1 = verify_identity(IdentityKind::ident, lambda);
    const double d2 = verify_identity(IdentityKind::pdagree2, lambda);
    const double closed = phi_Delta(lambda, DeltaForm::closed);
    const double spread =
        std::max(std::abs(closed - phi_Delta(lambda, DeltaForm::series)),
                 std::abs(closed - phi_Delta(lambda, DeltaForm::decomposition)));
    const bool pass = d1 <= tol && d2 <= tol && spread <= tol;
    all_pass = all_pass && pass;
    if (global.format == "json") {
      ordered_json obj;
      obj["lambda"] = json_num(lambda, global.precision);
      obj["ident_defect"] = json_num(d1, global.precision);
      obj["pdagree2_defect"] = json_num(d2, global.precision);
      obj["delta_forms_spread"] = json_num(spread, global.precision);
      obj["pass"] = pass;
      arr.push_back(std::move(obj));
    } else {
      rows.push_back({{"lambda", fmt_num(lambda, global.precision)},
                      {"ident_defect", fmt_num(d1, global.precision)},
                      {"pdagree2_defect", fmt_num(d2, global.precision)},
                      {"delta_forms_spread", fmt_num(spread, global.precision)},
                      {"pass", pass ? "true" : "false"}});
    }
  }
  if (global.format == "json")
    emit(arr);
  else
    emit_csv(rows);
  return all_pass ? 0 : 1;
}

int run_chain(const GlobalOpts& global, std::size_t N, std::optional<double> theta, bool ssrw,
              bool exact, bool compare, std::size_t simulate_steps) {
  if (static_cast<bool>(theta) == ssrw)
    throw DomainError("chain: pick exactly one of --theta and --ssrw");
  if (exact && !ssrw) throw DomainError("chain: --exact needs --ssrw");

  ordered_json doc;
  doc["N"] = N;
  std::vector<Row> rows;

  if (exact) {
    const RationalChainLaw law = chain_law_ssrw_exact(N);
    doc["mode"] = "ssrw-exact";
    ordered_json pi = ordered_json::array();
    for (const auto& v : law.pi) pi.push_back(rational_str(v));
    doc["pi"] = std::move(pi);
    ordered_json pmat = ordered_json::array();
    for (const auto& row : law.P) {
      ordered_json jrow = ordered_json::array();
      for (const auto& v : row) jrow.push_back(rational_str(v));
      pmat.push_back(std::move(jrow));
    }
    doc["P"] = std::move(pmat);
    Row pi_row{{"row", "pi"}};
    for (std::size_t k = 0; k < law.pi.size(); ++k)
      pi_row.push_back({"c" + std::to_string(k), rational_str(law.pi[k])});
    rows.push_back(std::move(pi_row));
    for (std::size_t i = 0; i < law.P.size(); ++i) {
      Row row{{"row", "P" + std::to_string(i)}};
      for (std::size_t j = 0; j < law.P[i].size(); ++j)
        row.push_back({"c" + std::to_string(j), rational_str(law.P[i][j])});
      rows.push_back(std::move(row));
    }
  } else {
    const ChainLaw law = ssrw ? chain_law_ssrw(N) : chain_law_theta(*theta, N);
    doc["mode"] = ssrw ? "ssrw" : "theta";
    if (theta) doc["theta"] = json_num(*theta, global.precision);
    doc["p"] = json_array(law.p, global.precision);
    doc["p_tilde"] = json_array(law.p_tilde, global.precision);
    doc["pi"] = json_array(law.pi, global.precision);
    ordered_json pmat = ordered_json::array();
    for (const auto& row : law.P) pmat.push_back(json_array(row, global.precision));
    doc["P"] = std::move(pmat);
    Row pi_row{{"row", "pi"}};
    for (std::size_t k = 0; k < law.pi.size(); ++k)
      pi_row.push_back({"c" + std::to_string(k), fmt_num(law.pi[k], global.precision)});
    rows.push_back(std::move(pi_row));
    for (std::size_t i = 0; i < law.P.size(); ++i) {
      Row row{{"row", "P" + std::to_string(i)}};
      for (std::size_t j = 0; j < law.P[i].size(); ++j)
        row.push_back({"c" + std::to_string(j), fmt_num(law.P[i][j], global.precision)});
      rows.push_back(std::move(row));
    }
  }

  if (compare) {
    if (!ssrw) throw DomainError("chain: --compare needs --ssrw");
    const SsrwClosedFormReport rep = compare_ssrw_closed_forms(N);
    ordered_json jrep;
    jrep["pi_max_diff_below_N"] = json_num(rep.pi_max_diff_below_N, global.precision);
    jrep["pi_diff_at_N"] = json_num(rep.pi_diff_at_N, global.precision);
    jrep["pi_at_N_ratio"] = json_num(rep.pi_at_N_ratio, global.precision);
    jrep["interior_max_diff_direct"] = json_num(rep.interior_max_diff_direct, global.precision);
    jrep["interior_max_diff_swapped"] = json_num(rep.interior_max_diff_swapped, global.precision);
    jrep["last_row_diff"] = json_num(rep.last_row_diff, global.precision);
    jrep["origin_row_max_diff"] = json_num(rep.origin_row_max_diff, global.precision);
    jrep["corner_diff"] = json_num(rep.corner_diff, global.precision);
    if (N <= 14) {
      const RationalChainLaw oracle = enumerate_ssrw_oracle(N);
      const RationalChainLaw analytic = chain_law_ssrw_exact(N);
      jrep["oracle_matches_recursion"] =
          oracle.pi == analytic.pi && oracle.P == analytic.P;
    } else {
      jrep["oracle_matches_recursion"] = nullptr;
    }
    doc["closed_form_report"] = std::move(jrep);
  }

  if (simulate_steps > 0) {
    const auto model = ssrw ? IncrementModel::rademacher_model() : IncrementModel::gaussian_model();
    if (!ssrw && std::abs(*theta - 0.5) > 1e-12)
      throw DomainError("chain: --simulate supports --ssrw or --theta 0.5");
    const ChainLaw empirical = simulate_chain(model, N, simulate_steps, {global.seed, 0});
    doc["empirical_pi"] = json_array(empirical.pi, global.precision);
    ordered_json pmat = ordered_json::array();
    for (const auto& row : empirical.P) pmat.push_back(json_array(row, global.precision));
    doc["empirical_P"] = std::move(pmat);
    const ChainLaw analytic = ssrw ? chain_law_ssrw(N) : chain_law_theta(0.5, N);
    double tv = 0.0;
    for (std::size_t k = 0; k <= N; ++k) tv += std::abs(empirical.pi[k] - analytic.pi[k]);
    doc["pi_total_variation"] = json_num(0.5 * tv, global.precision);
  }

  if (global.format == "json")
    emit(doc);
  else
    emit_csv(rows);
  return 0;
}

int run_verify(const GlobalOpts& global, const std::vector<std::string>& experiments,
               bool timings) {
  SuiteConfig config;
  config.experiments = experiments;
  config.master_seed = global.seed;
  config.dt = global.dt;
  config.samples = global.samples;
  config.threads = global.threads;
  config.timings = timings;
  const SuiteReport report = run_suite(config);
  if (global.format == "json") {
    std::cout << suite_report_json(report, global.precision, timings);
  } else {
    std::vector<Row> rows;
    for (const Experiment& exp : report.experiments)
      for (const CheckResult& check : exp.checks)
        rows.push_back({{"experiment", exp.name},
                        {"check", '"' + check.description + '"'},
                        {"statistic", statistic_name_label(check.report.statistic_name)},
                        {"value", fmt_num(check.report.value, global.precision)},
                        {"sample_size", std::to_string(check.report.sample_size)},
                        {"threshold", fmt_num(check.report.threshold, global.precision)},
                        {"pass", check.report.pass ? "true" : "false"}});
    emit_csv(rows);
  }
  return report.all_passed ? 0 : 1;
}

int run_invert(const GlobalOpts& global, const std::string& law, const std::vector<double>& ts,
               int order) {
  std::vector<Row> rows;
  ordered_json arr = ordered_json::array();
  for (double t : ts) {
    double value, spread = 0.0;
    if (law == "J") {
      value = density_J(t, order);  // closed form below 1, inversion beyond
    } else {
      const auto transform = [&](double l) { return transform_by_name(law, l, DeltaForm::closed); };
      const InversionResult res = laplace_invert(transform, t, order);
      value = res.value;
      spread = res.spread;
    }
    if (global.format == "json") {
      ordered_json obj;
      obj["t"] = json_num(t, global.precision);
      obj["value"] = json_num(value, global.precision);
      obj["spread"] = json_num(spread, global.precision);
      arr.push_back(std::move(obj));
    } else {
      rows.push_back({{"t", fmt_num(t, global.precision)},
                      {"value", fmt_num(value, global.precision)},
                      {"spread", fmt_num(spread, global.precision)}});
    }
  }
  if (global.format == "json")
    emit(arr);
  else
    emit_csv(rows);
  return 0;
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"Argmin-process laboratory: kernels, renewal laws, transforms, chains"};
  app.require_subcommand(0, 1);
  app.set_config("--config", "", "INI-style key=value option file");
  app.allow_config_extras(CLI::config_extras_mode::error);

  GlobalOpts global;
  app.add_option("--format", global.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_option("--precision", global.precision, "Significant digits in output")
      ->check(CLI::Range(1, 17))
      ->capture_default_str();
  app.add_option("--threads", global.threads, "Worker threads for the verify suite")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--seed", global.seed, "Master seed")->capture_default_str();
  app.add_option("--dt", global.dt, "Grid step for simulation")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--samples", global.samples,
                 "Sample-count override for the verify suite (0 = defaults)")
      ->capture_default_str();

  auto* sim = app.add_subcommand("simulate", "Sample one path and dump or print it");
  std::string sim_model = "brownian";
  double sim_horizon = 10.0, sim_alpha = 1.5, sim_beta = 0.0;
  std::size_t sim_steps = 1000;
  std::string sim_out;
  sim->add_option("--model", sim_model, "Path model")
      ->check(CLI::IsMember({"brownian", "cauchy", "stable", "gaussian-walk", "rademacher-walk"}))
      ->capture_default_str();
  sim->add_option("--horizon", sim_horizon, "Time horizon")->capture_default_str();
  sim->add_option("--steps", sim_steps, "Steps for walk models")->capture_default_str();
  sim->add_option("--alpha", sim_alpha, "Stable index")->capture_default_str();
  sim->add_option("--beta", sim_beta, "Stable skewness")->capture_default_str();
  sim->add_option("--out", sim_out, "Binary dump file (omit for stdout table)");

  auto* ker = app.add_subcommand("kernel", "Tabulate the argmin transition kernel");
  double ker_x = 0.5, ker_t = 0.25;
  std::optional<double> ker_alpha, ker_beta;
  std::size_t ker_points = 512;
  bool ker_mass = false;
  std::string ker_atoms_out;
  ker->add_option("--x", ker_x, "Current argmin location")->capture_default_str();
  ker->add_option("--t", ker_t, "Elapsed time")->capture_default_str();
  ker->add_option("--alpha", ker_alpha, "Stable index (switches to the stable kernel)");
  ker->add_option("--beta", ker_beta, "Stable skewness");
  ker->add_option("--points", ker_points, "Tabulation points")->capture_default_str();
  ker->add_flag("--mass", ker_mass, "Also report total kernel mass");
  ker->add_option("--atoms-out", ker_atoms_out, "File for the atom in csv mode");

  auto* ren = app.add_subcommand("renewal", "Tabulate the (a,b)-minima renewal law");
  double ren_a = 1.0, ren_b = 1.0, ren_horizon = 30.0;
  ren->add_option("--a", ren_a, "Backward window")->capture_default_str();
  ren->add_option("--b", ren_b, "Forward window")->capture_default_str();
  ren->add_option("--horizon", ren_horizon, "Grid horizon")->capture_default_str();

  auto* lap = app.add_subcommand("laplace", "Evaluate the gap transforms");
  std::string lap_law;
  std::vector<double> lap_lambdas{0.5, 1.0, 2.0, 5.0, 10.0};
  std::string lap_form = "closed";
  lap->add_option("--law", lap_law, "One of J, T1, Delta, DG (omit for all)")
      ->check(CLI::IsMember({"J", "T1", "Delta", "DG"}));
  lap->add_option("--lambda,--lambda-grid", lap_lambdas, "Transform arguments")
      ->capture_default_str();
  lap->add_option("--delta-form", lap_form, "Evaluation route for Delta")
      ->check(CLI::IsMember({"closed", "series", "decomposition"}))
      ->capture_default_str();

  auto* ident = app.add_subcommand("identities", "Check the integral identities");
  std::vector<double> ident_lambdas{0.5, 1.0, 2.0, 5.0, 10.0};
  double ident_tol = 1e-9;
  ident->add_option("--lambda,--lambda-grid", ident_lambdas, "Probe points")
      ->capture_default_str();
  ident->add_option("--tol", ident_tol, "Defect tolerance")->capture_default_str();

  auto* chn = app.add_subcommand("chain", "Windowed last-argmin chain of a walk");
  std::size_t chn_N = 4;
  std::optional<double> chn_theta;
  bool chn_ssrw = false, chn_exact = false, chn_compare = false;
  std::size_t chn_sim = 0;
  std::string chn_model;
  chn->add_option("--N", chn_N, "Window length")->capture_default_str();
  chn->add_option("--theta", chn_theta, "Common positivity probability");
  chn->add_flag("--ssrw", chn_ssrw, "Simple symmetric walk");
  chn->add_option("--model", chn_model, "Alternative model spelling: ssrw or theta")
      ->check(CLI::IsMember({"ssrw", "theta"}));
  chn->add_flag("--exact", chn_exact, "Rational arithmetic (ssrw)");
  chn->add_flag("--compare", chn_compare, "Report the closed-form shortcut comparison");
  chn->add_option("--simulate", chn_sim, "Also tally an empirical law over this many steps");

  auto* ver = app.add_subcommand("verify", "Run the Monte Carlo verification suite");
  std::vector<std::string> ver_experiments{"default"};
  bool ver_timings = false;
  ver->add_option("--experiments,--suite", ver_experiments, "Experiment names or 'default'")
      ->capture_default_str();
  ver->add_flag("--timings", ver_timings, "Include wall-clock timings in the report");

  auto* inv = app.add_subcommand("invert", "Gaver-Stehfest inversion of a transform");
  std::string inv_law = "J";
  std::vector<double> inv_ts{1.5};
  int inv_order = 16;
  inv->add_option("--law", inv_law, "Transform to invert")
      ->check(CLI::IsMember({"J", "T1", "Delta", "DG"}))
      ->capture_default_str();
  inv->add_option("--t", inv_ts, "Evaluation times")->capture_default_str();
  inv->add_option("--order", inv_order, "Stehfest order (even, 8..20)")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(sim))
      return run_simulate(global, sim_model, sim_horizon, sim_steps, sim_alpha, sim_beta,
                          sim_out);
    if (app.got_subcommand(ker))
      return run_kernel(global, ker_x, ker_t, ker_alpha, ker_beta, ker_points, ker_mass,
                        ker_atoms_out);
    if (app.got_subcommand(ren)) return run_renewal(global, ren_a, ren_b, ren_horizon);
    if (app.got_subcommand(lap)) return run_laplace(global, lap_law, lap_lambdas, lap_form);
    if (app.got_subcommand(ident)) return run_identities(global, ident_lambdas, ident_tol);
    if (app.got_subcommand(chn)) {
      if (chn_model == "ssrw") chn_ssrw = true;
      if (chn_model == "theta" && !chn_theta)
        throw DomainError("chain: --model theta needs --theta VALUE");
      return run_chain(global, chn_N, chn_theta, chn_ssrw, chn_exact, chn_compare, chn_sim);
    }
    if (app.got_subcommand(ver)) return run_verify(global, ver_experiments, ver_timings);
    if (app.got_subcommand(inv)) return run_invert(global, inv_law, inv_ts, inv_order);
    std::cout << app.help();
    return 0;
  } catch (const UnstableInversion& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const NonConvergence& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace argmin
