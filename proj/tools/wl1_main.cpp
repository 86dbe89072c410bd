#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wl1/error.hpp"
#include "wl1/exact_geometry.hpp"
#include "wl1/experiments.hpp"
#include "wl1/exponents.hpp"
#include "wl1/io.hpp"
#include "wl1/model.hpp"
#include "wl1/recovery.hpp"
#include "wl1/thresholds.hpp"

namespace {

using nlohmann::json;

int default_jobs() {
  if (const char* env = std::getenv("WL1_JOBS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 1;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt_list(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += fmt(v[i]);
  }
  return s;
}

wl1::SparsityModel make_model(const std::vector<double>& gamma,
                              const std::vector<double>& p,
                              std::vector<double> omega) {
  if (omega.empty()) omega.assign(gamma.size(), 1.0);
  if (gamma.size() != p.size() || gamma.size() != omega.size()) {
    throw wl1::DomainError(
        "class parameter lists must all have the same length");
  }
  std::vector<wl1::SignalClass> classes;
  classes.reserve(gamma.size());
  for (std::size_t i = 0; i < gamma.size(); ++i) {
    classes.push_back({gamma[i], p[i], omega[i]});
  }
  return wl1::SparsityModel(classes);
}

void emit_outputs(const std::string& tool_cmd, const json& params,
                  std::uint64_t seed, wl1::CsvTable table,
                  const std::string& csv_path,
                  const std::string& manifest_path) {
  wl1::RunManifest manifest;
  manifest.tool = "wl1";
  manifest.command = tool_cmd;
  manifest.params = params;
  manifest.seed = seed;
  if (!csv_path.empty()) {
    table.meta = {{"tool", "wl1"},
                  {"version", wl1::kVersion},
                  {"command", tool_cmd},
                  {"params", params.dump()},
                  {"seed", std::to_string(seed)}};
    const std::string digest = wl1::write_csv(table, csv_path);
    manifest.outputs.push_back({csv_path, "fnv1a64:" + digest});
  }
  if (!manifest_path.empty()) {
    wl1::write_manifest(manifest, manifest_path);
  }
}

struct ModelOpts {
  std::vector<double> gamma;
  std::vector<double> p;
  std::vector<double> omega;

  void attach(CLI::App* cmd, bool with_omega = true) {
    cmd->add_option("--gamma", gamma, "class fractions (comma separated)")
        ->delimiter(',')
        ->required();
    cmd->add_option("--p", p, "within-class support densities")
        ->delimiter(',')
        ->required();
    if (with_omega) {
      cmd->add_option("--omega", omega, "per-class weights (default all 1)")
          ->delimiter(',');
    }
  }

  wl1::SparsityModel model() const { return make_model(gamma, p, omega); }

  json params() const {
    return json{{"gamma", gamma}, {"p", p}, {"omega", omega}};
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weighted l1 recovery: thresholds, polytope angles, and "
               "simulation"};
  app.require_subcommand(1);

  // ---- threshold ----------------------------------------------------
  auto* c_thr = app.add_subcommand(
      "threshold", "critical measurement fraction of a sparsity model");
  ModelOpts thr_model;
  thr_model.attach(c_thr);
  std::string thr_kind = "weak";
  int thr_grid = 64;
  double thr_tol = 1e-6;
  std::string thr_csv, thr_manifest;
  c_thr->add_option("--kind", thr_kind, "weak | sectional | strong");
  c_thr->add_option("--grid", thr_grid, "scan resolution per axis");
  c_thr->add_option("--tol", thr_tol, "bisection tolerance");
  c_thr->add_option("--csv", thr_csv, "write the result as CSV");
  c_thr->add_option("--manifest", thr_manifest, "write a run manifest");
  c_thr->callback([&] {
    const auto model = thr_model.model();
    const auto kind = wl1::threshold_kind_from_string(thr_kind);
    const auto res = wl1::delta_c(model, kind, thr_grid, thr_tol);
    std::cout << "delta_c: " << fmt(res.delta_c) << '\n'
              << "kind: " << wl1::to_string(res.kind) << '\n'
              << "witness_tau: " << fmt_list(res.witness_tau) << '\n'
              << "grid: " << res.grid_resolution << '\n'
              << "tol: " << fmt(res.refine_tol) << '\n';
    json params = thr_model.params();
    params["kind"] = thr_kind;
    params["grid"] = thr_grid;
    params["tol"] = thr_tol;
    wl1::CsvTable table;
    table.header = "kind,delta_c,witness_tau,grid,tol";
    table.rows.push_back(thr_kind + ',' + fmt(res.delta_c) + ",\"" +
                         fmt_list(res.witness_tau) + "\"," +
                         std::to_string(thr_grid) + ',' + fmt(thr_tol));
    emit_outputs("threshold", params, 0, std::move(table), thr_csv,
                 thr_manifest);
  });

  // ---- optimal-weight ------------------------------------------------
  auto* c_ow = app.add_subcommand(
      "optimal-weight", "weight minimizing the two-class threshold");
  double ow_gamma1 = 0.5, ow_p1 = 0.0, ow_p2 = 0.0;
  std::string ow_kind = "weak";
  double ow_lo = 1.0, ow_hi = 10.0, ow_tol = 1e-3;
  int ow_points = 17, ow_grid = 56;
  std::string ow_csv, ow_manifest;
  c_ow->add_option("--gamma1", ow_gamma1, "fraction of the first class");
  c_ow->add_option("--p1", ow_p1, "first-class density")->required();
  c_ow->add_option("--p2", ow_p2, "second-class density")->required();
  c_ow->add_option("--kind", ow_kind, "weak | sectional | strong");
  c_ow->add_option("--omega-min", ow_lo, "lower end of the weight range");
  c_ow->add_option("--omega-max", ow_hi, "upper end of the weight range");
  c_ow->add_option("--search-tol", ow_tol, "weight search tolerance");
  c_ow->add_option("--points", ow_points, "curve sample count");
  c_ow->add_option("--grid", ow_grid, "scan resolution per axis");
  c_ow->add_option("--csv", ow_csv, "write the sampled curve as CSV");
  c_ow->add_option("--manifest", ow_manifest, "write a run manifest");
  c_ow->callback([&] {
    const auto kind = wl1::threshold_kind_from_string(ow_kind);
    const auto res =
        wl1::optimal_weight(ow_gamma1, ow_p1, ow_p2, kind, {ow_lo, ow_hi},
                            ow_tol, ow_points, ow_grid);
    std::cout << "omega_star: " << fmt(res.omega_star) << '\n'
              << "delta_star: " << fmt(res.delta_star) << '\n';
    for (const auto& pt : res.curve) {
      std::cout << "curve: " << fmt(pt.omega) << ' ' << fmt(pt.delta_c)
                << '\n';
    }
    json params{{"gamma1", ow_gamma1}, {"p1", ow_p1},       {"p2", ow_p2},
                {"kind", ow_kind},     {"omega_min", ow_lo}, {"omega_max", ow_hi},
                {"search_tol", ow_tol}, {"points", ow_points}, {"grid", ow_grid}};
    wl1::CsvTable table;
    table.header = "omega,delta_c";
    for (const auto& pt : res.curve) {
      table.rows.push_back(fmt(pt.omega) + ',' + fmt(pt.delta_c));
    }
    table.rows.push_back(fmt(res.omega_star) + ',' + fmt(res.delta_star));
    emit_outputs("optimal-weight", params, 0, std::move(table), ow_csv,
                 ow_manifest);
  });

  // ---- exponents -----------------------------------------------------
  auto* c_exp = app.add_subcommand(
      "exponents", "decay exponents of a model at a face fraction");
  ModelOpts exp_model;
  exp_model.attach(c_exp);
  std::vector<double> exp_tau;
  std::string exp_kind = "weak";
  c_exp->add_option("--tau", exp_tau, "per-class off-support fractions")
      ->delimiter(',')
      ->required();
  c_exp->add_option("--kind", exp_kind, "weak | sectional | strong");
  c_exp->callback([&] {
    const auto model = exp_model.model();
    const auto kind = wl1::threshold_kind_from_string(exp_kind);
    const auto pt = wl1::psi_tot(model, exp_tau, kind);
    std::cout << "psi_com: " << fmt(pt.psi_com) << '\n'
              << "psi_int: " << fmt(pt.psi_int) << '\n'
              << "psi_ext: " << fmt(pt.psi_ext) << '\n'
              << "psi_tot: " << fmt(pt.psi_tot) << '\n'
              << "x0: " << fmt(pt.witness.x0) << '\n'
              << "s_star: " << fmt(pt.witness.s_star) << '\n'
              << "y: " << fmt(pt.witness.y) << '\n';
  });

  // ---- angles ----------------------------------------------------------
  auto* c_ang = app.add_subcommand(
      "angles", "external and internal angles of a weighted face pair");
  wl1::FacePair ang_pair;
  int ang_mc = 0;
  std::uint64_t ang_seed = 0;
  c_ang->add_option("--k1", ang_pair.k1, "support size in block 1")->required();
  c_ang->add_option("--k2", ang_pair.k2, "support size in block 2")->required();
  c_ang->add_option("--t1", ang_pair.t1, "face size in block 1")->required();
  c_ang->add_option("--t2", ang_pair.t2, "face size in block 2")->required();
  c_ang->add_option("--n1", ang_pair.n1, "block 1 size")->required();
  c_ang->add_option("--n2", ang_pair.n2, "block 2 size")->required();
  c_ang->add_option("--w1", ang_pair.w1, "block 1 weight");
  c_ang->add_option("--w2", ang_pair.w2, "block 2 weight");
  auto* ang_mc_opt = c_ang->add_option(
      "--mc-samples", ang_mc, "internal-angle sample count (0 = skip)");
  auto* ang_seed_opt =
      c_ang->add_option("--seed", ang_seed, "random seed for the estimate");
  ang_mc_opt->needs(ang_seed_opt);
  c_ang->callback([&] {
    const auto ext = wl1::external_angle(ang_pair);
    std::cout << "external: " << fmt(ext.value) << '\n'
              << "log_external: " << fmt(ext.log_value) << '\n';
    if (ang_mc > 0) {
      const auto in = wl1::internal_angle(ang_pair, ang_mc, ang_seed);
      std::cout << "internal: " << fmt(in.estimate) << '\n'
                << "internal_std_err: " << fmt(in.std_err) << '\n'
                << "log_internal: " << fmt(in.log_estimate) << '\n';
    }
  });

  // ---- bound -----------------------------------------------------------
  auto* c_bnd = app.add_subcommand(
      "bound", "face-counting bound on the failure probability");
  wl1::FiniteModel bnd_fm;
  int bnd_mc = 20000;
  std::uint64_t bnd_seed = 0;
  bool bnd_parity = false;
  std::string bnd_csv, bnd_manifest;
  c_bnd->add_option("--n1", bnd_fm.n1, "block 1 size")->required();
  c_bnd->add_option("--n2", bnd_fm.n2, "block 2 size")->required();
  c_bnd->add_option("--k1", bnd_fm.k1, "block 1 support")->required();
  c_bnd->add_option("--k2", bnd_fm.k2, "block 2 support")->required();
  c_bnd->add_option("--m", bnd_fm.m, "measurement count")->required();
  c_bnd->add_option("--w1", bnd_fm.w1, "block 1 weight");
  c_bnd->add_option("--w2", bnd_fm.w2, "block 2 weight");
  c_bnd->add_option("--mc-samples", bnd_mc, "samples per internal angle");
  c_bnd->add_option("--seed", bnd_seed, "random seed")->required();
  c_bnd->add_flag("--parity-restricted", bnd_parity,
                  "keep every other face size only");
  c_bnd->add_option("--csv", bnd_csv, "write the term table as CSV");
  c_bnd->add_option("--manifest", bnd_manifest, "write a run manifest");
  c_bnd->callback([&] {
    bnd_fm.n = bnd_fm.n1 + bnd_fm.n2;
    const auto res =
        wl1::failure_bound(bnd_fm, bnd_mc, bnd_seed, bnd_parity);
    std::cout << "bound: " << fmt(res.bound) << '\n'
              << "raw: " << fmt(res.raw) << '\n'
              << "clamped: " << (res.clamped ? "yes" : "no") << '\n'
              << "terms: " << res.terms.size() << '\n';
    json params{{"n1", bnd_fm.n1}, {"n2", bnd_fm.n2}, {"k1", bnd_fm.k1},
                {"k2", bnd_fm.k2}, {"m", bnd_fm.m},   {"w1", bnd_fm.w1},
                {"w2", bnd_fm.w2}, {"mc_samples", bnd_mc},
                {"parity_restricted", bnd_parity}};
    wl1::CsvTable table;
    table.header =
        "t1,t2,log_coeff,log_internal,log_external,log_term,term,"
        "internal_rel_err";
    for (const auto& t : res.terms) {
      table.rows.push_back(std::to_string(t.t1) + ',' + std::to_string(t.t2) +
                           ',' + fmt(t.log_coeff) + ',' + fmt(t.log_internal) +
                           ',' + fmt(t.log_external) + ',' + fmt(t.log_term) +
                           ',' + fmt(t.term) + ',' + fmt(t.internal_rel_err));
    }
    emit_outputs("bound", params, bnd_seed, std::move(table), bnd_csv,
                 bnd_manifest);
  });

  // ---- simulate ----------------------------------------------------------
  auto* c_sim = app.add_subcommand(
      "simulate", "empirical recovery rates over an (omega, delta) grid");
  ModelOpts sim_model;
  sim_model.attach(c_sim, false);
  std::vector<double> sim_omegas, sim_deltas;
  int sim_n = 0, sim_trials = 0, sim_jobs = default_jobs();
  std::uint64_t sim_seed = 0;
  std::string sim_csv, sim_manifest;
  c_sim->add_option("--omegas", sim_omegas, "weights for the later classes")
      ->delimiter(',')
      ->required();
  c_sim->add_option("--deltas", sim_deltas, "measurement fractions")
      ->delimiter(',')
      ->required();
  c_sim->add_option("--n", sim_n, "signal length")->required();
  c_sim->add_option("--trials", sim_trials, "trials per cell")->required();
  c_sim->add_option("--seed", sim_seed, "master seed")->required();
  c_sim->add_option("--jobs", sim_jobs, "worker threads");
  c_sim->add_option("--csv", sim_csv, "write per-cell rates as CSV");
  c_sim->add_option("--manifest", sim_manifest, "write a run manifest");
  c_sim->callback([&] {
    const auto model = sim_model.model();
    const auto res = wl1::run_phase_grid(model, sim_omegas, sim_deltas, sim_n,
                                         sim_trials, sim_seed, sim_jobs);
    wl1::CsvTable table;
    table.header = "omega,delta,m,trials,successes,rate";
    for (const auto& cell : res.cells) {
      const double rate = static_cast<double>(cell.successes) / cell.trials;
      std::cout << "cell: omega=" << fmt(cell.omega)
                << " delta=" << fmt(cell.delta) << " rate=" << fmt(rate)
                << '\n';
      table.rows.push_back(fmt(cell.omega) + ',' + fmt(cell.delta) + ',' +
                           std::to_string(cell.m) + ',' +
                           std::to_string(cell.trials) + ',' +
                           std::to_string(cell.successes) + ',' + fmt(rate));
    }
    json params = sim_model.params();
    params["omegas"] = sim_omegas;
    params["deltas"] = sim_deltas;
    params["n"] = sim_n;
    params["trials"] = sim_trials;
    emit_outputs("simulate", params, sim_seed, std::move(table), sim_csv,
                 sim_manifest);
  });

  // ---- p1-sweep ------------------------------------------------------
  auto* c_p1 = app.add_subcommand(
      "p1-sweep", "recovery rate against the dense-class fraction");
  double p1s_p2 = 0.0;
  std::vector<double> p1s_omegas, p1s_values;
  int p1s_n = 0, p1s_m = 0, p1s_trials = 0, p1s_jobs = default_jobs();
  std::uint64_t p1s_seed = 0;
  std::string p1s_csv, p1s_manifest;
  c_p1->add_option("--p2", p1s_p2, "second-class density")->required();
  c_p1->add_option("--omegas", p1s_omegas, "candidate second-class weights")
      ->delimiter(',')
      ->required();
  c_p1->add_option("--p1s", p1s_values, "first-class densities to sweep")
      ->delimiter(',')
      ->required();
  c_p1->add_option("--n", p1s_n, "signal length")->required();
  c_p1->add_option("--m", p1s_m, "measurement count")->required();
  c_p1->add_option("--trials", p1s_trials, "trials per cell")->required();
  c_p1->add_option("--seed", p1s_seed, "master seed")->required();
  c_p1->add_option("--jobs", p1s_jobs, "worker threads");
  c_p1->add_option("--csv", p1s_csv, "write per-cell rates as CSV");
  c_p1->add_option("--manifest", p1s_manifest, "write a run manifest");
  c_p1->callback([&] {
    const auto res = wl1::run_p1_sweep(p1s_p2, p1s_omegas, p1s_n, p1s_m,
                                       p1s_values, p1s_trials, p1s_seed,
                                       p1s_jobs);
    wl1::CsvTable table;
    table.header = "p1,omega,trials,successes,rate";
    for (const auto& cell : res.cells) {
      const double rate = static_cast<double>(cell.successes) / cell.trials;
      std::cout << "cell: p1=" << fmt(cell.p1) << " omega=" << fmt(cell.omega)
                << " rate=" << fmt(rate) << '\n';
      table.rows.push_back(fmt(cell.p1) + ',' + fmt(cell.omega) + ',' +
                           std::to_string(cell.trials) + ',' +
                           std::to_string(cell.successes) + ',' + fmt(rate));
    }
    json params{{"p2", p1s_p2}, {"omegas", p1s_omegas}, {"p1s", p1s_values},
                {"n", p1s_n},   {"m", p1s_m},           {"trials", p1s_trials}};
    emit_outputs("p1-sweep", params, p1s_seed, std::move(table), p1s_csv,
                 p1s_manifest);
  });

  // ---- reweighted ------------------------------------------------------
  auto* c_rw = app.add_subcommand(
      "reweighted", "two-pass recovery against plain minimization");
  int rw_n = 0, rw_m = 0, rw_trials = 0, rw_jobs = default_jobs();
  std::vector<int> rw_ks;
  std::string rw_dist = "gaussian";
  double rw_omega = 3.0;
  std::uint64_t rw_seed = 0;
  std::string rw_csv, rw_manifest;
  c_rw->add_option("--n", rw_n, "signal length")->required();
  c_rw->add_option("--m", rw_m, "measurement count")->required();
  c_rw->add_option("--ks", rw_ks, "support sizes to sweep")
      ->delimiter(',')
      ->required();
  c_rw->add_option("--dist", rw_dist,
                   "nonzero distribution: gaussian | uniform | rayleigh | "
                   "sqrt-chi2-4 | sqrt-chi2-6");
  c_rw->add_option("--omega", rw_omega, "off-estimate weight");
  c_rw->add_option("--trials", rw_trials, "trials per support size")
      ->required();
  c_rw->add_option("--seed", rw_seed, "master seed")->required();
  c_rw->add_option("--jobs", rw_jobs, "worker threads");
  c_rw->add_option("--csv", rw_csv, "write per-k rates as CSV");
  c_rw->add_option("--manifest", rw_manifest, "write a run manifest");
  c_rw->callback([&] {
    const auto dist = wl1::nonzero_dist_from_string(rw_dist);
    wl1::CsvTable table;
    table.header = "k,trials,plain_successes,reweighted_successes,"
                   "plain_rate,reweighted_rate";
    for (int k : rw_ks) {
      wl1::ReweightedConfig cfg{rw_n, rw_m, k, dist, rw_omega, rw_trials};
      const auto res = wl1::run_reweighted(cfg, rw_seed, rw_jobs);
      const double pr = static_cast<double>(res.plain_successes) / rw_trials;
      const double rr =
          static_cast<double>(res.reweighted_successes) / rw_trials;
      std::cout << "k=" << k << " plain=" << fmt(pr)
                << " reweighted=" << fmt(rr) << '\n';
      table.rows.push_back(std::to_string(k) + ',' +
                           std::to_string(rw_trials) + ',' +
                           std::to_string(res.plain_successes) + ',' +
                           std::to_string(res.reweighted_successes) + ',' +
                           fmt(pr) + ',' + fmt(rr));
    }
    json params{{"n", rw_n},       {"m", rw_m},         {"ks", rw_ks},
                {"dist", rw_dist}, {"omega", rw_omega}, {"trials", rw_trials}};
    emit_outputs("reweighted", params, rw_seed, std::move(table), rw_csv,
                 rw_manifest);
  });

  // ---- noisy -----------------------------------------------------------
  auto* c_noisy = app.add_subcommand(
      "noisy", "output SNR under signal perturbation before measurement");
  ModelOpts noisy_model;
  noisy_model.attach(c_noisy, false);
  std::vector<double> noisy_omegas, noisy_snrs;
  int noisy_n = 0, noisy_m = 0, noisy_trials = 0, noisy_jobs = default_jobs();
  std::uint64_t noisy_seed = 0;
  std::string noisy_csv, noisy_manifest;
  c_noisy->add_option("--omegas", noisy_omegas, "weights for later classes")
      ->delimiter(',')
      ->required();
  c_noisy->add_option("--snrs", noisy_snrs, "input SNR values in dB")
      ->delimiter(',')
      ->required();
  c_noisy->add_option("--n", noisy_n, "signal length")->required();
  c_noisy->add_option("--m", noisy_m, "measurement count")->required();
  c_noisy->add_option("--trials", noisy_trials, "trials per cell")->required();
  c_noisy->add_option("--seed", noisy_seed, "master seed")->required();
  c_noisy->add_option("--jobs", noisy_jobs, "worker threads");
  c_noisy->add_option("--csv", noisy_csv, "write per-cell SNR as CSV");
  c_noisy->add_option("--manifest", noisy_manifest, "write a run manifest");
  c_noisy->callback([&] {
    const auto model = noisy_model.model();
    const auto res =
        wl1::run_noisy_snr(model, noisy_omegas, noisy_n, noisy_m, noisy_snrs,
                           noisy_trials, noisy_seed, noisy_jobs);
    wl1::CsvTable table;
    table.header = "omega,input_snr_db,trials,mean_output_snr_db";
    for (const auto& cell : res.cells) {
      std::cout << "cell: omega=" << fmt(cell.omega)
                << " input_snr_db=" << fmt(cell.input_snr_db)
                << " output_snr_db=" << fmt(cell.mean_output_snr_db) << '\n';
      table.rows.push_back(fmt(cell.omega) + ',' + fmt(cell.input_snr_db) +
                           ',' + std::to_string(cell.trials) + ',' +
                           fmt(cell.mean_output_snr_db));
    }
    json params = noisy_model.params();
    params["omegas"] = noisy_omegas;
    params["snrs"] = noisy_snrs;
    params["n"] = noisy_n;
    params["m"] = noisy_m;
    params["trials"] = noisy_trials;
    emit_outputs("noisy", params, noisy_seed, std::move(table), noisy_csv,
                 noisy_manifest);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const wl1::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const wl1::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
