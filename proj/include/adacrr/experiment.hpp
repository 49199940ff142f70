#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "adacrr/baselines.hpp"
#include "adacrr/datagen.hpp"
#include "adacrr/estimator.hpp"

namespace adacrr {

/// (||w_hat - w*||_Sigma, ||w_hat - w*||_2)
std::pair<double, double> param_error(const Vector& w_hat, const GroundTruth& truth);

enum class EstimatorKind { adacrr_fc, adacrr_gd, adacrr_hd, ols, torrent, huber };

const char* estimator_kind_name(EstimatorKind);
EstimatorKind parse_estimator_kind(const std::string&);

struct EstimatorSpec {
  std::string name;
  EstimatorKind kind = EstimatorKind::adacrr_fc;
  AdaCrrConfig adacrr;
  TorrentConfig torrent;
  HuberConfig huber;
};

enum class SweepKind { vary_n, vary_alpha, vary_iter };

struct WStarSpec {
  enum class Kind { pm1, explicit_values } kind = Kind::pm1;
  std::size_t k_star = 0;  // 0 means dense (k_star = p)
  Vector values;
};

struct InstanceSpec {
  std::size_t n = 0;  // overridden by vary_n sweeps
  std::size_t p = 1;
  SigmaSpec sigma;
  NoiseSpec noise;
  CorruptionSpec corruption;
  WStarSpec w_star;
};

struct ExperimentSpec {
  std::vector<EstimatorSpec> estimators;
  SweepKind sweep = SweepKind::vary_n;
  std::vector<double> sweep_values;
  InstanceSpec instance;
  std::vector<std::uint64_t> seeds;
  std::uint64_t master_seed = 0;
  std::string outputs;
};

struct TrialRecord {
  std::string estimator;
  std::size_t n = 0;
  std::size_t p = 0;
  double alpha = 0.0;
  std::uint64_t seed = 0;
  double err_sigma = 0.0;
  double err_l2 = 0.0;
  std::size_t iters = 0;
  std::int64_t ms = 0;
  bool failed = false;  // serialized as nan error columns

  bool operator==(const TrialRecord&) const = default;
};

/// One trial per (sweep value x estimator x seed), emitted in that order.
/// Estimators at the same (sweep value, seed) share the data instance; a
/// failing trial is recorded with nan errors and the run continues.
std::vector<TrialRecord> run_experiment(const ExperimentSpec& spec);

std::string records_to_csv(const std::vector<TrialRecord>& records);
std::vector<TrialRecord> records_from_csv(const std::string& csv);

}  // namespace adacrr
