#pragma once

#include <string>

#include "adacrr/baselines.hpp"
#include "adacrr/datagen.hpp"
#include "adacrr/estimator.hpp"
#include "adacrr/experiment.hpp"

namespace adacrr::io {

// dataset CSV: header "x1,...,xp,y", one row per sample
std::string dataset_to_csv(const Dataset& data);
Dataset dataset_from_csv(const std::string& csv);

// ground-truth sidecar JSON: w_star, sigma_diag, corrupted_indices, noise, seed
std::string truth_to_json(const GroundTruth& truth);
GroundTruth truth_from_json(const std::string& text);

// estimator configs, field names mirror the config structs
AdaCrrConfig adacrr_config_from_json(const std::string& text);
TorrentConfig torrent_config_from_json(const std::string& text);
HuberConfig huber_config_from_json(const std::string& text);

// fit result JSON: w_final, errors (when truth supplied), set sizes,
// config echo, seed, wall_time_ms
std::string fit_result_to_json(const FitResult& fit, const std::string& config_echo,
                               std::uint64_t seed);

ExperimentSpec experiment_spec_from_json(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace adacrr::io
