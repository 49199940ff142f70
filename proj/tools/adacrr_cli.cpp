#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "adacrr/io.hpp"

namespace {

using namespace adacrr;

NoiseSpec parse_noise(const std::string& s) {
  if (s == "none") return NoiseSpec::none();
  auto colon = s.find(':');
  if (colon == std::string::npos) throw CLI::ValidationError("--noise", "expected kind:params");
  const std::string kind = s.substr(0, colon);
  const std::string args = s.substr(colon + 1);
  if (kind == "gauss") return NoiseSpec::gaussian(std::stod(args));
  if (kind == "cauchy") return NoiseSpec::cauchy(std::stod(args));
  if (kind == "t") {
    auto comma = args.find(',');
    if (comma == std::string::npos) throw CLI::ValidationError("--noise", "t needs dof,scale");
    return NoiseSpec::student_t(std::stod(args.substr(0, comma)),
                                std::stod(args.substr(comma + 1)));
  }
  throw CLI::ValidationError("--noise", "unknown kind " + kind);
}

std::vector<double> parse_grid(const std::string& s) {
  auto c1 = s.find(':');
  auto c2 = s.find(':', c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos)
    throw CLI::ValidationError("--grid", "expected lo:hi:step");
  const double lo = std::stod(s.substr(0, c1));
  const double hi = std::stod(s.substr(c1 + 1, c2 - c1 - 1));
  const double step = std::stod(s.substr(c2 + 1));
  if (!(step > 0.0)) throw CLI::ValidationError("--grid", "step must be positive");
  std::vector<double> grid;
  for (double v = lo; v <= hi + 1e-12; v += step) grid.push_back(v);
  return grid;
}

CorruptionSpec parse_scheme(const std::string& scheme, double alpha) {
  if (alpha == 0.0) return CorruptionSpec::none();
  if (scheme == "noisy") return CorruptionSpec::paper_noisy(alpha);
  if (scheme == "noiseless") return CorruptionSpec::paper_noiseless(alpha);
  if (scheme.rfind("uniform:", 0) == 0) {
    const std::string args = scheme.substr(8);
    auto comma = args.find(',');
    if (comma == std::string::npos)
      throw CLI::ValidationError("--scheme", "uniform needs lo,hi");
    return CorruptionSpec::uniform(alpha, std::stod(args.substr(0, comma)),
                                   std::stod(args.substr(comma + 1)));
  }
  throw CLI::ValidationError("--scheme", "unknown scheme " + scheme);
}

int cmd_generate(std::size_t n, std::size_t p, double alpha, const std::string& noise_str,
                 const std::string& scheme, double kappa, std::uint64_t seed,
                 std::size_t k_star, const std::string& out, const std::string& truth_out) {
  NoiseSpec noise = parse_noise(noise_str);
  SigmaSpec sigma = kappa > 1.0 ? SigmaSpec::conditioned(kappa) : SigmaSpec::identity();
  CorruptionSpec corr = parse_scheme(scheme, alpha);
  Vector w_star = gen_sparse_truth(p, k_star == 0 ? p : k_star, mix_seed(seed, 0xA11ull));
  auto [data, truth] = gen_dataset(n, p, w_star, sigma, noise, corr, seed);
  io::write_file(out, io::dataset_to_csv(data));
  if (!truth_out.empty()) io::write_file(truth_out, io::truth_to_json(truth));
  std::printf("wrote %zu samples (p=%zu) to %s\n", data.n(), data.p(), out.c_str());
  return 0;
}

int cmd_fit(const std::string& data_path, const std::string& estimator,
            const std::string& config_path, const std::string& truth_path,
            const std::string& out) {
  Dataset data = io::dataset_from_csv(io::read_file(data_path));
  GroundTruth truth;
  const GroundTruth* truth_ptr = nullptr;
  if (!truth_path.empty()) {
    truth = io::truth_from_json(io::read_file(truth_path));
    truth_ptr = &truth;
  }
  const std::string config_echo = config_path.empty() ? "" : io::read_file(config_path);

  EstimatorKind kind = parse_estimator_kind(estimator);
  FitResult fit;
  std::uint64_t seed = 0;
  switch (kind) {
    case EstimatorKind::adacrr_fc:
    case EstimatorKind::adacrr_gd:
    case EstimatorKind::adacrr_hd: {
      AdaCrrConfig cfg =
          config_echo.empty() ? AdaCrrConfig{} : io::adacrr_config_from_json(config_echo);
      // the estimator flag pins the update family
      if (kind == EstimatorKind::adacrr_fc && cfg.update.kind != UpdateKind::fully_corrective)
        cfg.update = UpdateSpec::fully_corrective();
      if (kind == EstimatorKind::adacrr_gd && cfg.update.kind != UpdateKind::gradient_descent)
        cfg.update = UpdateSpec::gradient_descent(cfg.update.eta, std::max<std::size_t>(cfg.update.steps, 1));
      if (kind == EstimatorKind::adacrr_hd && cfg.update.kind != UpdateKind::sparse_iht)
        throw CLI::ValidationError("--config", "adacrr-hd needs a sparse_iht update block");
      seed = cfg.seed;
      fit = cfg.schedule.mode == ScheduleMode::heavy_tailed ? heavy_fit(data, cfg, truth_ptr)
                                                            : adacrr_fit(data, cfg, truth_ptr);
      break;
    }
    case EstimatorKind::ols:
      fit = ols_fit(data, truth_ptr);
      break;
    case EstimatorKind::torrent: {
      TorrentConfig cfg = config_echo.empty() ? TorrentConfig{}
                                              : io::torrent_config_from_json(config_echo);
      fit = torrent_fit(data, cfg, nullptr, truth_ptr);
      break;
    }
    case EstimatorKind::huber: {
      HuberConfig cfg =
          config_echo.empty() ? HuberConfig{} : io::huber_config_from_json(config_echo);
      fit = huber_fit(data, cfg, truth_ptr);
      break;
    }
  }
  io::write_file(out, io::fit_result_to_json(fit, config_echo, seed));
  if (!fit.errors_sigma_norm.empty())
    std::printf("final sigma-norm error: %.6g\n", fit.errors_sigma_norm.back());
  std::printf("wrote %s (%zu iterations, %.1f ms)\n", out.c_str(), fit.iterations,
              fit.wall_time_ms);
  return 0;
}

int cmd_experiment(const std::string& spec_path, const std::string& out) {
  ExperimentSpec spec = io::experiment_spec_from_json(io::read_file(spec_path));
  std::vector<TrialRecord> records = run_experiment(spec);
  const std::string path = out.empty() ? spec.outputs : out;
  if (path.empty()) throw CLI::ValidationError("--out", "no output path given");
  io::write_file(path, records_to_csv(records));
  std::printf("wrote %zu records to %s\n", records.size(), path.c_str());
  return 0;
}

int cmd_torrent_demo(std::size_t n, double alpha, const std::string& grid_str,
                     std::size_t iters, std::uint64_t seed, const std::string& out) {
  auto grid = parse_grid(grid_str);
  auto traj = torrent_fixed_point_trajectory(n, alpha, grid, iters, seed);
  std::string csv = "w_init,w_converged\n";
  char buf[96];
  for (const auto& [w0, w1] : traj) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", w0, w1);
    csv += buf;
  }
  io::write_file(out, csv);
  std::printf("wrote %zu trajectory points to %s\n", traj.size(), out.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"adaptive-threshold robust regression toolkit"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "generate a synthetic dataset");
  std::size_t g_n = 1000, g_p = 10, g_kstar = 0;
  double g_alpha = 0.0, g_kappa = 1.0;
  std::string g_noise = "none", g_scheme = "noisy", g_out, g_truth;
  std::uint64_t g_seed = 0;
  gen->add_option("--n", g_n, "number of samples")->required();
  gen->add_option("--p", g_p, "dimension")->required();
  gen->add_option("--alpha", g_alpha, "corruption fraction in [0,1)");
  gen->add_option("--noise", g_noise, "none | gauss:sigma | cauchy:scale | t:dof,scale");
  gen->add_option("--scheme", g_scheme, "corruption scheme: noisy | noiseless | uniform:lo,hi");
  gen->add_option("--kappa", g_kappa, "covariance condition number (1 = identity)");
  gen->add_option("--seed", g_seed, "master seed");
  gen->add_option("--k-star", g_kstar, "sparsity of w* (default dense)");
  gen->add_option("--out", g_out, "dataset csv path")->required();
  gen->add_option("--truth", g_truth, "ground-truth sidecar json path");

  // fit
  auto* fit = app.add_subcommand("fit", "fit one estimator to a dataset");
  std::string f_data, f_est, f_cfg, f_truth, f_out;
  fit->add_option("--data", f_data, "dataset csv")->required();
  fit->add_option("--estimator", f_est, "adacrr-fc|adacrr-gd|adacrr-hd|ols|torrent|huber")
      ->required()
      ->check(CLI::IsMember({"adacrr-fc", "adacrr-gd", "adacrr-hd", "ols", "torrent", "huber"}));
  fit->add_option("--config", f_cfg, "estimator config json");
  fit->add_option("--truth", f_truth, "ground-truth sidecar json");
  fit->add_option("--out", f_out, "result json path")->required();

  // experiment
  auto* exp = app.add_subcommand("experiment", "run a sweep from a spec file");
  std::string e_spec, e_out;
  exp->add_option("--spec", e_spec, "experiment spec json")->required();
  exp->add_option("--out", e_out, "results csv path (defaults to spec's outputs)");

  // torrent-demo
  auto* demo = app.add_subcommand("torrent-demo", "fixed-point map of hard thresholding");
  std::size_t d_n = 100000, d_iters = 30;
  double d_alpha = 0.8;
  std::string d_grid = "0:1:0.05", d_out;
  std::uint64_t d_seed = 0;
  demo->add_option("--n", d_n, "sample count");
  demo->add_option("--alpha", d_alpha, "corruption fraction");
  demo->add_option("--grid", d_grid, "initial points lo:hi:step");
  demo->add_option("--iters", d_iters, "iterations per start");
  demo->add_option("--seed", d_seed, "instance seed");
  demo->add_option("--out", d_out, "trajectory csv path")->required();

  CLI11_PARSE(app, argc, argv);
  try {
    if (gen->parsed())
      return cmd_generate(g_n, g_p, g_alpha, g_noise, g_scheme, g_kappa, g_seed, g_kstar, g_out,
                          g_truth);
    if (fit->parsed()) return cmd_fit(f_data, f_est, f_cfg, f_truth, f_out);
    if (exp->parsed()) return cmd_experiment(e_spec, e_out);
    if (demo->parsed()) return cmd_torrent_demo(d_n, d_alpha, d_grid, d_iters, d_seed, d_out);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
