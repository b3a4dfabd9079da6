// Command-line driver: dispersion scans, linear decay checks, instability
// certificates, nonlinear torus experiments, and the named verification
// suites. Exit codes: 0 pass, 1 usage/config error, 2 assertion failure,
// 3 numeric abort.

#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "vspectra/config.hpp"
#include "vspectra/dispersion.hpp"
#include "vspectra/instability.hpp"
#include "vspectra/io.hpp"
#include "vspectra/nonlinear.hpp"
#include "vspectra/semigroup.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace vspectra;

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out_dir = ".";
};

struct Loaded {
  Config cfg;
  ModelParams params;
  DerivedCoeffs coeffs;
};

Loaded load(const CommonArgs& args) {
  Loaded l{Config::parse_file(args.config_path), {}, {}};
  l.params = model_from_config(l.cfg);
  l.coeffs = derive_coeffs(l.params);
  return l;
}

RunManifest start_manifest(const std::string& command, const Loaded& l) {
  RunManifest m;
  m.command = command;
  m.config_echo = l.cfg.echo();
  m.started_at = iso8601_now();
  return m;
}

void finish_manifest(RunManifest& m, const std::string& dir, bool pass,
                     const std::string& summary) {
  m.finished_at = iso8601_now();
  m.pass = pass;
  m.summary = summary;
  write_manifest(dir, m);
}

std::string ensure_dir(const std::string& dir) {
  fs::create_directories(dir);
  return dir;
}

json growth_json(const GrowthSummary& g) {
  json j;
  j["stability"] = to_string(g.regime);
  j["attained"] = g.attained;
  if (g.regime == Stability::Unstable) {
    j["Theta"] = g.Theta;
    j["xi0"] = g.xi0;
    j["branch_index"] = g.branch_index;
  } else {
    j["band_sup"] = g.Theta;  // negative in the stable regime
    j["at_r"] = g.xi0;
  }
  return j;
}

json model_json(const Loaded& l) {
  json j;
  j["alpha"] = l.params.alpha;
  j["beta"] = l.params.beta;
  j["mu"] = l.params.mu;
  j["nu"] = l.params.nu;
  j["gamma"] = l.params.gamma;
  j["rho_bar"] = l.params.rho_bar;
  j["pressure"] = l.params.pressure.describe();
  j["a"] = l.coeffs.a;
  j["b"] = l.coeffs.b;
  j["discriminant"] = l.coeffs.discriminant;
  j["stability"] = to_string(classify_stability(l.coeffs, l.params.nu));
  return j;
}

int cmd_dispersion_scan(const CommonArgs& args, double r_min, double r_max, int n) {
  const Loaded l = load(args);
  RunManifest man = start_manifest("dispersion scan", l);
  const std::string dir = ensure_dir(args.out_dir);

  const SpectralBranch br = build_branches(l.coeffs, l.params, log_grid(r_min, r_max, n));
  CsvWriter csv({"r", "re_lambda1", "im_lambda1", "re_lambda2", "im_lambda2",
                 "re_lambda3", "im_lambda3", "min_gap", "degenerate"});
  for (std::size_t i = 0; i < br.grid.size(); ++i) {
    const cplx l1 = br.by_low_label(1)[i];
    const cplx l2 = br.by_low_label(2)[i];
    const cplx l3 = br.by_low_label(3)[i];
    csv.add_row({fmt_double(br.grid[i]), fmt_double(l1.real()), fmt_double(l1.imag()),
                 fmt_double(l2.real()), fmt_double(l2.imag()), fmt_double(l3.real()),
                 fmt_double(l3.imag()), fmt_double(br.points[i].min_gap),
                 br.points[i].degenerate ? "1" : "0"});
  }
  csv.write(dir + "/scan.csv");
  man.outputs = {"scan.csv"};
  finish_manifest(man, dir, true, "scan of " + std::to_string(n) + " wavenumbers");
  return 0;
}

int cmd_dispersion_growth(const CommonArgs& args, double r_min, double r_max,
                          int coarse_n) {
  const Loaded l = load(args);
  RunManifest man = start_manifest("dispersion growth", l);
  const std::string dir = ensure_dir(args.out_dir);

  SearchWindow w;
  w.r_min = r_min;
  if (r_max > 0.0) w.r_max = r_max;
  w.coarse_n = coarse_n;
  const GrowthSummary g = find_growth_max(l.coeffs, l.params, w);

  json j = growth_json(g);
  j["model"] = model_json(l);
  atomic_write_text(dir + "/growth.json", j.dump(2) + "\n");
  man.outputs = {"growth.json"};
  finish_manifest(man, dir, true, "growth summary (" + std::string(to_string(g.regime)) + ")");
  return 0;
}

RadialProfile default_lowfreq_profile() {
  return make_cutoff_profile(RadialGrid::log_linear(1e-6, 1.0, 2.0, 4096, 4096),
                             {1.0, 0.5, 0.3});
}

int cmd_semigroup_decay(const CommonArgs& args, double t_lo, double t_hi) {
  const Loaded l = load(args);
  RunManifest man = start_manifest("semigroup decay", l);
  const std::string dir = ensure_dir(args.out_dir);

  const LinearEvolver evolver(default_lowfreq_profile().low_part(), l.coeffs, l.params);
  const int n_t = static_cast<int>(std::round(40.0 * std::log10(t_hi / t_lo))) + 1;
  CsvWriter csv({"t", "component", "k", "norm"});
  const char* names[3] = {"rho", "d", "phi"};
  for (int i = 0; i < n_t; ++i) {
    const double t = t_lo * std::pow(t_hi / t_lo, static_cast<double>(i) / (n_t - 1));
    const RadialProfile p = evolver.at(t);
    for (int k = 0; k <= 3; ++k)
      for (int c = 0; c < 3; ++c)
        csv.add_row({fmt_double(t), names[c], std::to_string(k),
                     fmt_double(p.norm(c, k))});
  }
  csv.write(dir + "/decay.csv");
  man.outputs = {"decay.csv"};
  finish_manifest(man, dir, true, "linear decay series");
  return 0;
}

json decay_check_json(const DecayCheck& chk) {
  json entries = json::array();
  const char* names[3] = {"rho", "d", "phi"};
  for (const auto& e : chk.entries) {
    entries.push_back({{"component", names[e.component]},
                       {"k", e.k},
                       {"exponent_fitted", e.fit.exponent},
                       {"exponent_expected", e.expected},
                       {"abs_error", std::abs(e.fit.exponent - e.expected)},
                       {"r2", e.fit.r_squared},
                       {"pass", e.pass}});
  }
  json j;
  j["entries"] = entries;
  j["high_freq_rate"] = chk.high_freq_rate;
  j["high_freq_envelope"] = chk.high_freq_envelope;
  j["high_freq_pass"] = chk.high_freq_pass;
  j["pass"] = chk.pass;
  return j;
}

int cmd_semigroup_check(const CommonArgs& args) {
  const Loaded l = load(args);
  RunManifest man = start_manifest("semigroup check", l);
  const std::string dir = ensure_dir(args.out_dir);

  const DecayCheck chk = decay_envelope_check(l.coeffs, l.params, default_lowfreq_profile());
  json j = decay_check_json(chk);
  j["model"] = model_json(l);
  atomic_write_text(dir + "/check.json", j.dump(2) + "\n");
  man.outputs = {"check.json"};
  finish_manifest(man, dir, chk.pass, chk.pass ? "decay exponents match" : "decay exponents off");
  return chk.pass ? 0 : 2;
}

int cmd_instability_certify(const CommonArgs& args, double theta_bar, double t_max) {
  const Loaded l = load(args);
  RunManifest man = start_manifest("instability certify", l);
  const std::string dir = ensure_dir(args.out_dir);

  const GrowthSummary g = find_growth_max(l.coeffs, l.params);
  if (g.regime != Stability::Unstable)
    throw std::domain_error("instability certify: config is not in the unstable regime");
  if (theta_bar <= 0.0) theta_bar = g.Theta / 4.0;
  if (t_max <= 0.0 || t_max * g.Theta > 40.0) t_max = 40.0 / g.Theta;

  const BumpData bump = build_bump(g, l.coeffs, l.params, theta_bar);
  std::vector<double> times;
  for (int i = 0; i <= 20; ++i) times.push_back(t_max * i / 20.0);
  const SandwichReport rep = sandwich_check(bump, l.coeffs, l.params, times);

  json j;
  j["Theta"] = g.Theta;
  j["xi0"] = g.xi0;
  j["theta_bar"] = theta_bar;
  j["zeta_bar"] = bump.zeta_bar;
  j["pass"] = rep.pass;
  j["worst_ratio"] = std::max(1.0 - rep.worst_lower, rep.worst_upper - 1.0);
  j["worst_lower"] = rep.worst_lower;
  j["worst_upper"] = rep.worst_upper;
  j["worst_t"] = rep.worst_t;
  j["cross_check_error"] = rep.cross_check_error;
  j["model"] = model_json(l);
  atomic_write_text(dir + "/certificate.json", j.dump(2) + "\n");
  man.outputs = {"certificate.json"};
  finish_manifest(man, dir, rep.pass, rep.pass ? "growth sandwich certified" : "sandwich violated");
  return rep.pass ? 0 : 2;
}

std::vector<double> parse_delta_sweep(const std::string& spec) {
  const std::size_t colon = spec.find(':');
  if (colon == std::string::npos)
    return {std::stod(spec)};
  const double from = std::stod(spec.substr(0, colon));
  const double to = std::stod(spec.substr(colon + 1));
  if (!(from > 0.0) || !(to > 0.0))
    throw std::invalid_argument("delta sweep: values must be > 0");
  const int decades = static_cast<int>(std::lround(std::abs(std::log10(from / to))));
  std::vector<double> out;
  for (int i = 0; i <= decades; ++i)
    out.push_back(from * std::pow(to > from ? 10.0 : 0.1, i));
  return out;
}

int cmd_simulate(const CommonArgs& args, int dim, int n, double L, double dt,
                 double t_max, double amplitude, const std::string& delta_sweep,
                 std::uint64_t seed, double epsilon0) {
  const Loaded l = load(args);
  RunManifest man = start_manifest("simulate", l);

  const std::string run_id =
      "run-" + iso8601_now() + "-" + content_hash(l.cfg.echo() + delta_sweep +
                                                  std::to_string(seed) + std::to_string(n));
  const std::string dir = ensure_dir(args.out_dir + "/" + run_id);

  json meta;
  meta["model"] = model_json(l);
  meta["code_version"] = version_string();
  meta["dim"] = dim;
  meta["n"] = n;
  meta["seed"] = seed;
  meta["config"] = l.cfg.echo();

  const Stability regime = classify_stability(l.coeffs, l.params.nu);
  bool pass = true;
  std::string summary;

  if (!delta_sweep.empty()) {
    if (regime != Stability::Unstable)
      throw std::domain_error("simulate: delta sweep requires the unstable regime");
    const GrowthSummary g = find_growth_max(l.coeffs, l.params);
    if (epsilon0 <= 0.0) epsilon0 = 0.05 * l.params.rho_bar;
    EscapeOptions opts;
    if (n > 0) opts.n = n;
    if (dt > 0.0) opts.dt = dt;
    if (t_max > 0.0) opts.t_max = t_max;
    const EscapeExperiment exp = run_escape_experiment(
        l.params, l.coeffs, g, parse_delta_sweep(delta_sweep), epsilon0, opts);

    CsvWriter csv({"t", "field", "k", "norm"});
    for (const auto& run : exp.runs) {
      const std::string field = "rho@delta=" + fmt_double(run.delta);
      for (std::size_t i = 0; i < run.times.size(); ++i)
        csv.add_row({fmt_double(run.times[i]), field, "0", fmt_double(run.rho_norm[i])});
    }
    csv.write(dir + "/norms.csv");

    json esc;
    esc["epsilon0"] = exp.epsilon0;
    esc["Theta"] = exp.Theta;
    esc["slope"] = exp.slope;
    esc["expected_slope"] = exp.expected_slope;
    esc["conclusive"] = exp.conclusive;
    json entries = json::array();
    for (const auto& run : exp.runs)
      entries.push_back({{"delta", run.delta},
                         {"T_delta", run.T_measured},
                         {"crossed", run.crossed}});
    esc["runs"] = entries;
    atomic_write_text(dir + "/escape.json", esc.dump(2) + "\n");

    meta["mode"] = "escape";
    meta["n"] = opts.n;
    meta["L"] = TorusGrid::resonant_1d(opts.n, g.xi0, opts.harmonic).L;
    pass = exp.conclusive &&
           std::abs(exp.slope - exp.expected_slope) <= 0.1 * exp.expected_slope;
    summary = pass ? "escape-time scaling confirmed" : "escape sweep inconclusive (try smaller epsilon0)";
    man.outputs = {"norms.csv", "escape.json", "meta.json"};
  } else {
    if (regime != Stability::Stable)
      throw std::domain_error("simulate: decay run requires the stable regime");
    DecayOptions opts;
    opts.dim = dim;
    if (n > 0) opts.n = n;
    if (L > 0.0) opts.L = L;
    if (dt > 0.0) opts.dt = dt;
    if (t_max <= 0.0) t_max = 60.0;
    const DecayExperiment exp =
        run_decay_experiment(l.params, l.coeffs, amplitude, t_max, seed, opts);

    CsvWriter csv({"t", "field", "k", "norm"});
    const char* names[3] = {"rho", "v", "phi"};
    for (std::size_t i = 0; i < exp.times.size(); ++i) {
      for (int f = 0; f < 3; ++f)
        for (int k = 0; k <= 3; ++k)
          csv.add_row({fmt_double(exp.times[i]), names[f], std::to_string(k),
                       fmt_double(exp.norms[static_cast<std::size_t>(f)]
                                           [static_cast<std::size_t>(k)][i])});
      csv.add_row({fmt_double(exp.times[i]), "M", "0", fmt_double(exp.M_series[i])});
    }
    csv.write(dir + "/norms.csv");

    json dec;
    dec["fitted_rate"] = exp.fitted_rate;
    dec["expected_rate"] = exp.expected_rate;
    dec["rate_pass"] = exp.rate_pass;
    dec["fits"] = json::array({{{"field", "rho"},
                                {"k", 0},
                                {"model", "exponential"},
                                {"exponent", exp.fitted_rate},
                                {"expected", exp.expected_rate},
                                {"pass", exp.rate_pass},
                                {"r2", exp.fit_r2},
                                {"window", {5.0 / l.params.alpha, t_max}}}});
    atomic_write_text(dir + "/decay.json", dec.dump(2) + "\n");

    meta["mode"] = "decay";
    meta["n"] = opts.n;
    meta["L"] = opts.L;
    meta["amplitude"] = amplitude;
    pass = exp.rate_pass;
    summary = pass ? "torus decay matches least-damped mode" : "torus decay rate off";
    man.outputs = {"norms.csv", "decay.json", "meta.json"};
  }

  atomic_write_text(dir + "/meta.json", meta.dump(2) + "\n");
  finish_manifest(man, dir, pass, summary);
  std::cout << dir << "\n";
  return pass ? 0 : 2;
}

int cmd_verify(const CommonArgs& args, const std::string& suite) {
  const Loaded l = load(args);
  RunManifest man = start_manifest("verify " + suite, l);
  const std::string dir = ensure_dir(args.out_dir);

  json report;
  report["suite"] = suite;
  report["model"] = model_json(l);
  bool pass = false;

  if (suite == "asymptotics") {
    const double eta1 = default_eta1(l.coeffs, l.params);
    const SpectralBranch low =
        build_branches(l.coeffs, l.params, log_grid(eta1 / 100.0, eta1, 64));
    const LowFreqReport lf = verify_low_freq_expansion(low, l.coeffs, l.params);
    pass = true;
    json fits = json::array();
    for (const auto& f : lf.fits) {
      const bool ok = f.expected == 0.0 ? f.rel_error <= 1e-3 : f.rel_error <= 0.01;
      pass = pass && ok;
      fits.push_back({{"branch", f.branch_label},
                      {"quantity", f.quantity},
                      {"fitted", f.fitted},
                      {"expected", f.expected},
                      {"rel_error", f.rel_error},
                      {"pass", ok}});
    }
    const double r_hi = 100.0 * std::max({1.0, l.coeffs.a, l.params.alpha,
                                          l.params.nu, 1.0 / l.params.mu});
    const SpectralBranch high =
        build_branches(l.coeffs, l.params, log_grid(r_hi, 100.0 * r_hi, 64));
    const HighFreqReport hf = verify_high_freq_expansion(high, l.coeffs, l.params);
    const bool hf_ok = std::abs(hf.slope_pair + 1.0) <= 0.2 &&
                       std::abs(hf.slope_parabola + 2.0) <= 0.2;
    pass = pass && hf_ok;
    report["low_freq"] = {{"alpha_eq_nu", lf.alpha_eq_nu}, {"fits", fits}};
    report["high_freq"] = {{"slope_pair", hf.slope_pair},
                           {"slope_parabola", hf.slope_parabola},
                           {"pass", hf_ok}};
  } else if (suite == "sandwich") {
    const GrowthSummary g = find_growth_max(l.coeffs, l.params);
    if (g.regime != Stability::Unstable)
      throw std::domain_error("verify sandwich: requires an unstable config");
    pass = true;
    json runs = json::array();
    for (double frac : {0.1, 0.25, 0.4}) {
      const BumpData bump = build_bump(g, l.coeffs, l.params, frac * g.Theta);
      std::vector<double> times;
      for (int i = 0; i <= 20; ++i) times.push_back(20.0 / g.Theta * i / 20.0);
      const SandwichReport rep = sandwich_check(bump, l.coeffs, l.params, times);
      pass = pass && rep.pass;
      runs.push_back({{"theta_bar", frac * g.Theta},
                      {"zeta_bar", bump.zeta_bar},
                      {"worst_lower", rep.worst_lower},
                      {"worst_upper", rep.worst_upper},
                      {"pass", rep.pass}});
    }
    report["Theta"] = g.Theta;
    report["xi0"] = g.xi0;
    report["runs"] = runs;
  } else if (suite == "decay") {
    const DecayCheck chk =
        decay_envelope_check(l.coeffs, l.params, default_lowfreq_profile());
    report["linear_r3"] = decay_check_json(chk);
    DecayOptions opts;
    const DecayExperiment torus =
        run_decay_experiment(l.params, l.coeffs, 1e-3, 60.0, 12345, opts);
    report["torus"] = {{"fitted_rate", torus.fitted_rate},
                       {"expected_rate", torus.expected_rate},
                       {"pass", torus.rate_pass}};
    pass = chk.pass && torus.rate_pass;
  } else if (suite == "escape") {
    const GrowthSummary g = find_growth_max(l.coeffs, l.params);
    if (g.regime != Stability::Unstable)
      throw std::domain_error("verify escape: requires an unstable config");
    const double epsilon0 = 0.05 * l.params.rho_bar;
    const EscapeExperiment exp = run_escape_experiment(
        l.params, l.coeffs, g, {1e-4, 1e-5, 1e-6, 1e-7}, epsilon0, {});
    pass = exp.conclusive &&
           std::abs(exp.slope - exp.expected_slope) <= 0.1 * exp.expected_slope;
    report["slope"] = exp.slope;
    report["expected_slope"] = exp.expected_slope;
    report["conclusive"] = exp.conclusive;
  } else {
    throw std::invalid_argument("verify: unknown suite '" + suite + "'");
  }

  report["pass"] = pass;
  atomic_write_text(dir + "/verify_" + suite + ".json", report.dump(2) + "\n");
  man.outputs = {"verify_" + suite + ".json"};
  finish_manifest(man, dir, pass, suite + (pass ? " passed" : " failed"));
  return pass ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectral stability toolkit for the hyperbolic-parabolic vasculogenesis model"};
  app.require_subcommand(1);

  CommonArgs common;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("-c,--config", common.config_path, "model config file")->required();
    sub->add_option("-o,--out", common.out_dir, "output directory");
  };

  // dispersion
  auto* disp = app.add_subcommand("dispersion", "symbol eigenvalue analysis");
  disp->require_subcommand(1);
  double r_min = 1e-4, r_max = 1e3;
  int scan_n = 1000, coarse_n = 4096;
  auto* disp_scan = disp->add_subcommand("scan", "eigenvalue branches CSV");
  add_common(disp_scan);
  disp_scan->add_option("--r-min", r_min);
  disp_scan->add_option("--r-max", r_max);
  disp_scan->add_option("-n,--n", scan_n);
  auto* disp_growth = disp->add_subcommand("growth", "growth maximum summary");
  add_common(disp_growth);
  double growth_rmax = 0.0;
  disp_growth->add_option("--r-min", r_min);
  disp_growth->add_option("--r-max", growth_rmax);
  disp_growth->add_option("--coarse-n", coarse_n);

  // semigroup
  auto* semi = app.add_subcommand("semigroup", "linear R^3 evolution");
  semi->require_subcommand(1);
  double t_lo = 1e2, t_hi = 1e4;
  auto* semi_decay = semi->add_subcommand("decay", "norm time-series CSV");
  add_common(semi_decay);
  semi_decay->add_option("--t-lo", t_lo);
  semi_decay->add_option("--t-hi", t_hi);
  auto* semi_check = semi->add_subcommand("check", "decay-exponent report");
  add_common(semi_check);

  // instability
  auto* inst = app.add_subcommand("instability", "unstable-solution certificates");
  inst->require_subcommand(1);
  double theta_bar = 0.0, cert_tmax = 0.0;
  auto* inst_cert = inst->add_subcommand("certify", "growth sandwich certificate");
  add_common(inst_cert);
  inst_cert->add_option("--theta-bar", theta_bar, "margin in (0, Theta/2); default Theta/4");
  inst_cert->add_option("--t-max", cert_tmax, "certificate horizon (default 40/Theta)");

  // simulate
  auto* sim = app.add_subcommand("simulate", "nonlinear torus experiments");
  add_common(sim);
  int sim_dim = 1, sim_n = 0;
  double sim_L = 0.0, sim_dt = 0.0, sim_tmax = 0.0, sim_amp = 1e-3, sim_eps0 = 0.0;
  std::string delta_sweep;
  std::uint64_t seed = 0;
  sim->add_option("--dim", sim_dim)->check(CLI::IsMember({1, 3}));
  sim->add_option("-n,--n", sim_n, "points per axis (default: 1024 escape, 256 decay)");
  sim->add_option("-L,--L", sim_L);
  sim->add_option("--dt", sim_dt);
  sim->add_option("--t-max", sim_tmax);
  sim->add_option("--amplitude", sim_amp);
  sim->add_option("--delta-sweep", delta_sweep, "e.g. 1e-4:1e-7 (decade steps)");
  sim->add_option("--seed", seed);
  sim->add_option("--epsilon0", sim_eps0, "escape threshold (default 0.05*rho_bar)");

  // verify
  auto* ver = app.add_subcommand("verify", "named acceptance batteries");
  add_common(ver);
  std::string suite;
  ver->add_option("--suite", suite, "asymptotics|sandwich|decay|escape")
      ->required()
      ->check(CLI::IsMember({"asymptotics", "sandwich", "decay", "escape"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }

  try {
    if (disp_scan->parsed()) return cmd_dispersion_scan(common, r_min, r_max, scan_n);
    if (disp_growth->parsed())
      return cmd_dispersion_growth(common, r_min, growth_rmax, coarse_n);
    if (semi_decay->parsed()) return cmd_semigroup_decay(common, t_lo, t_hi);
    if (semi_check->parsed()) return cmd_semigroup_check(common);
    if (inst_cert->parsed()) return cmd_instability_certify(common, theta_bar, cert_tmax);
    if (sim->parsed())
      return cmd_simulate(common, sim_dim, sim_n, sim_L, sim_dt, sim_tmax, sim_amp,
                          delta_sweep, seed, sim_eps0);
    if (ver->parsed()) return cmd_verify(common, suite);
    std::cerr << "no subcommand\n";
    return 1;
  } catch (const VacuumError& e) {
    std::cerr << "numeric abort: " << e.what() << "\n";
    return 3;
  } catch (const StepError& e) {
    std::cerr << "numeric abort: " << e.what() << "\n";
    return 3;
  } catch (const ConfigError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return 2;
  }
}
