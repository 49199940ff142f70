#include "adacrr/experiment.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "adacrr/rng.hpp"

namespace adacrr {

std::pair<double, double> param_error(const Vector& w_hat, const GroundTruth& truth) {
  if (w_hat.size() != truth.w_star.size()) throw std::invalid_argument("dimension mismatch");
  Vector d = sub(w_hat, truth.w_star);
  return {sigma_norm(d, truth.sigma), norm2(d)};
}

const char* estimator_kind_name(EstimatorKind k) {
  switch (k) {
    case EstimatorKind::adacrr_fc: return "adacrr-fc";
    case EstimatorKind::adacrr_gd: return "adacrr-gd";
    case EstimatorKind::adacrr_hd: return "adacrr-hd";
    case EstimatorKind::ols: return "ols";
    case EstimatorKind::torrent: return "torrent";
    case EstimatorKind::huber: return "huber";
  }
  return "?";
}

EstimatorKind parse_estimator_kind(const std::string& s) {
  if (s == "adacrr-fc") return EstimatorKind::adacrr_fc;
  if (s == "adacrr-gd") return EstimatorKind::adacrr_gd;
  if (s == "adacrr-hd") return EstimatorKind::adacrr_hd;
  if (s == "ols") return EstimatorKind::ols;
  if (s == "torrent") return EstimatorKind::torrent;
  if (s == "huber") return EstimatorKind::huber;
  throw std::invalid_argument("unknown estimator: " + s);
}

namespace {

Vector make_w_star(const WStarSpec& spec, std::size_t p, std::uint64_t seed) {
  switch (spec.kind) {
    case WStarSpec::Kind::pm1: {
      std::size_t k = spec.k_star == 0 ? p : spec.k_star;
      return gen_sparse_truth(p, k, seed);
    }
    case WStarSpec::Kind::explicit_values:
      if (spec.values.size() != p) throw std::invalid_argument("w_star length mismatch");
      return spec.values;
  }
  throw std::logic_error("unreachable");
}

FitResult run_one(const EstimatorSpec& est, const Dataset& data, const GroundTruth& truth,
                  std::uint64_t fit_seed) {
  switch (est.kind) {
    case EstimatorKind::adacrr_fc:
    case EstimatorKind::adacrr_gd:
    case EstimatorKind::adacrr_hd: {
      AdaCrrConfig cfg = est.adacrr;
      cfg.seed = fit_seed;
      if (est.kind == EstimatorKind::adacrr_gd &&
          cfg.update.kind == UpdateKind::fully_corrective)
        cfg.update = UpdateSpec::gradient_descent(cfg.update.eta, std::max<std::size_t>(cfg.update.steps, 1));
      return cfg.schedule.mode == ScheduleMode::heavy_tailed ? heavy_fit(data, cfg, &truth)
                                                             : adacrr_fit(data, cfg, &truth);
    }
    case EstimatorKind::ols:
      return ols_fit(data, &truth);
    case EstimatorKind::torrent:
      return torrent_fit(data, est.torrent, nullptr, &truth);
    case EstimatorKind::huber:
      return huber_fit(data, est.huber, &truth);
  }
  throw std::logic_error("unreachable");
}

}  // namespace

std::vector<TrialRecord> run_experiment(const ExperimentSpec& spec) {
  if (spec.estimators.empty()) throw std::invalid_argument("no estimators");
  if (spec.seeds.empty()) throw std::invalid_argument("no seeds");
  if (spec.sweep_values.empty()) throw std::invalid_argument("no sweep values");

  std::vector<TrialRecord> records;
  for (std::size_t sv = 0; sv < spec.sweep_values.size(); ++sv) {
    InstanceSpec inst = spec.instance;
    std::size_t trial_T = 0;  // vary_iter override
    switch (spec.sweep) {
      case SweepKind::vary_n:
        inst.n = static_cast<std::size_t>(spec.sweep_values[sv]);
        break;
      case SweepKind::vary_alpha:
        inst.corruption.alpha = spec.sweep_values[sv];
        break;
      case SweepKind::vary_iter:
        trial_T = static_cast<std::size_t>(spec.sweep_values[sv]);
        break;
    }

    for (std::size_t ei = 0; ei < spec.estimators.size(); ++ei) {
      const EstimatorSpec& est = spec.estimators[ei];
      for (std::size_t si = 0; si < spec.seeds.size(); ++si) {
        const std::uint64_t trial_seed = spec.seeds[si];
        // estimators at the same (sweep, seed) see the same instance;
        // fit streams additionally fold in the estimator index
        const std::uint64_t data_seed = mix_seed(spec.master_seed, sv, trial_seed);
        const std::uint64_t fit_seed = mix_seed(spec.master_seed, ei, sv, trial_seed);

        TrialRecord rec;
        rec.estimator = est.name.empty() ? estimator_kind_name(est.kind) : est.name;
        rec.n = inst.n;
        rec.p = inst.p;
        rec.alpha = inst.corruption.alpha;
        rec.seed = trial_seed;
        try {
          Vector w_star = make_w_star(inst.w_star, inst.p, data_seed);
          auto [data, truth] =
              gen_dataset(inst.n, inst.p, w_star, inst.sigma, inst.noise, inst.corruption,
                          data_seed);
          EstimatorSpec est_run = est;
          if (trial_T > 0) est_run.adacrr.T = trial_T;
          FitResult fit = run_one(est_run, data, truth, fit_seed);
          auto [es, el] = param_error(fit.w_final, truth);
          rec.err_sigma = es;
          rec.err_l2 = el;
          rec.iters = fit.iterations;
          rec.ms = static_cast<std::int64_t>(fit.wall_time_ms);
        } catch (const std::exception&) {
          rec.failed = true;
          rec.err_sigma = rec.err_l2 = std::nan("");
        }
        records.push_back(std::move(rec));
      }
    }
  }
  return records;
}

std::string records_to_csv(const std::vector<TrialRecord>& records) {
  std::string out = "estimator,n,p,alpha,seed,err_sigma,err_l2,iters,ms\n";
  char buf[512];
  for (const auto& r : records) {
    std::snprintf(buf, sizeof buf, "%s,%zu,%zu,%.17g,%llu,%.17g,%.17g,%zu,%lld\n",
                  r.estimator.c_str(), r.n, r.p, r.alpha,
                  static_cast<unsigned long long>(r.seed), r.err_sigma, r.err_l2, r.iters,
                  static_cast<long long>(r.ms));
    out += buf;
  }
  return out;
}

std::vector<TrialRecord> records_from_csv(const std::string& csv) {
  std::vector<TrialRecord> out;
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line)) return out;
  if (line != "estimator,n,p,alpha,seed,err_sigma,err_l2,iters,ms")
    throw std::invalid_argument("unexpected csv header");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string f;
    TrialRecord r;
    std::getline(ls, r.estimator, ',');
    std::getline(ls, f, ',');
    r.n = std::stoull(f);
    std::getline(ls, f, ',');
    r.p = std::stoull(f);
    std::getline(ls, f, ',');
    r.alpha = std::stod(f);
    std::getline(ls, f, ',');
    r.seed = std::stoull(f);
    std::getline(ls, f, ',');
    r.err_sigma = std::stod(f);
    std::getline(ls, f, ',');
    r.err_l2 = std::stod(f);
    std::getline(ls, f, ',');
    r.iters = std::stoull(f);
    std::getline(ls, f, ',');
    r.ms = std::stoll(f);
    r.failed = std::isnan(r.err_sigma);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace adacrr
