#include "adacrr/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace adacrr::io {

using nlohmann::json;

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json noise_to_json(const NoiseSpec& n) {
  switch (n.kind) {
    case NoiseKind::none: return {{"kind", "none"}};
    case NoiseKind::gaussian: return {{"kind", "gaussian"}, {"sigma", n.sigma}};
    case NoiseKind::cauchy: return {{"kind", "cauchy"}, {"scale", n.scale}};
    case NoiseKind::student_t:
      return {{"kind", "student_t"}, {"dof", n.dof}, {"scale", n.scale}};
  }
  throw std::logic_error("unreachable");
}

NoiseSpec noise_from_json(const json& j) {
  const std::string kind = j.at("kind");
  if (kind == "none") return NoiseSpec::none();
  if (kind == "gaussian") return NoiseSpec::gaussian(j.at("sigma").get<double>());
  if (kind == "cauchy") return NoiseSpec::cauchy(j.at("scale").get<double>());
  if (kind == "student_t")
    return NoiseSpec::student_t(j.at("dof").get<double>(), j.at("scale").get<double>());
  throw std::invalid_argument("unknown noise kind: " + kind);
}

SigmaSpec sigma_from_json(const json& j) {
  const std::string kind = j.at("kind");
  if (kind == "identity") return SigmaSpec::identity();
  if (kind == "diagonal_conditioned") return SigmaSpec::conditioned(j.at("kappa").get<double>());
  if (kind == "explicit_diagonal")
    return SigmaSpec::explicit_diag(j.at("values").get<Vector>());
  throw std::invalid_argument("unknown sigma kind: " + kind);
}

CorruptionSpec corruption_from_json(const json& j) {
  CorruptionSpec c;
  c.alpha = j.at("alpha").get<double>();
  const std::string scheme = j.at("scheme");
  if (scheme == "paper_noisy") {
    c.scheme = CorruptionScheme::paper_noisy;
  } else if (scheme == "paper_noiseless") {
    c.scheme = CorruptionScheme::paper_noiseless;
  } else if (scheme == "uniform_range") {
    c.scheme = CorruptionScheme::uniform_range;
    c.lo = j.at("lo").get<double>();
    c.hi = j.at("hi").get<double>();
  } else if (scheme == "explicit_values") {
    c.scheme = CorruptionScheme::explicit_values;
    c.values = j.at("values").get<Vector>();
  } else {
    throw std::invalid_argument("unknown corruption scheme: " + scheme);
  }
  return c;
}

ScheduleSpec schedule_from_json(const json& j) {
  ScheduleSpec s;
  const std::string mode = j.value("mode", "practical");
  if (mode == "theoretical") s.mode = ScheduleMode::theoretical;
  else if (mode == "practical") s.mode = ScheduleMode::practical;
  else if (mode == "heavy_tailed") s.mode = ScheduleMode::heavy_tailed;
  else throw std::invalid_argument("unknown schedule mode: " + mode);
  s.sigma_hat = j.value("sigma_hat", 0.0);
  s.d0_hat = j.value("d0_hat", 0.0);
  s.beta = j.value("beta", 0.98);
  s.rho = j.value("rho", 0.0);
  return s;
}

UpdateSpec update_from_json(const json& j) {
  UpdateSpec u;
  const std::string kind = j.value("kind", "fully_corrective");
  double eta = 0.0;
  if (j.contains("eta") && !j.at("eta").is_string()) eta = j.at("eta").get<double>();
  if (kind == "fully_corrective") {
    u = UpdateSpec::fully_corrective();
  } else if (kind == "gradient_descent") {
    u = UpdateSpec::gradient_descent(eta, j.value("steps", std::size_t{1}));
  } else if (kind == "sparse_iht") {
    u = UpdateSpec::sparse_iht(j.at("k").get<std::size_t>(),
                               j.value("iht_iters", std::size_t{300}), eta);
  } else {
    throw std::invalid_argument("unknown update kind: " + kind);
  }
  return u;
}

D0Spec d0_from_json(const json& j) {
  const std::string kind = j.value("kind", "estimate_ols");
  if (kind == "given") return D0Spec::given(j.at("value").get<double>());
  if (kind == "estimate_ols") return D0Spec::estimate_ols();
  if (kind == "estimate_signal") return D0Spec::estimate_signal();
  throw std::invalid_argument("unknown d0 source: " + kind);
}

AdaCrrConfig adacrr_config_from(const json& j) {
  AdaCrrConfig c;
  c.T = j.value("T", std::size_t{10});
  if (j.contains("update")) c.update = update_from_json(j.at("update"));
  c.a = j.value("a", 1.0 / 18.0);
  c.gamma = j.value("gamma", 4.0);
  if (j.contains("schedule")) c.schedule = schedule_from_json(j.at("schedule"));
  if (j.contains("d0_source")) c.d0 = d0_from_json(j.at("d0_source"));
  c.seed = j.value("seed", std::uint64_t{0});
  c.reuse_all_data = j.value("reuse_all_data", false);
  c.fc_gd_steps = j.value("fc_gd_steps", std::size_t{0});
  return c;
}

WStarSpec wstar_from_json(const json& j) {
  WStarSpec w;
  const std::string kind = j.value("kind", "pm1");
  if (kind == "pm1") {
    w.kind = WStarSpec::Kind::pm1;
    w.k_star = j.value("k_star", std::size_t{0});
  } else if (kind == "explicit_values") {
    w.kind = WStarSpec::Kind::explicit_values;
    w.values = j.at("values").get<Vector>();
  } else {
    throw std::invalid_argument("unknown w_star kind: " + kind);
  }
  return w;
}

}  // namespace

std::string dataset_to_csv(const Dataset& data) {
  std::string out;
  for (std::size_t j = 0; j < data.p(); ++j) {
    out += "x" + std::to_string(j + 1) + ",";
  }
  out += "y\n";
  for (std::size_t i = 0; i < data.n(); ++i) {
    const double* r = data.x.row(i);
    for (std::size_t j = 0; j < data.p(); ++j) {
      out += fmt(r[j]);
      out += ',';
    }
    out += fmt(data.y[i]);
    out += '\n';
  }
  return out;
}

Dataset dataset_from_csv(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("empty dataset csv");
  std::size_t p = 0;
  {
    std::istringstream hs(line);
    std::string col;
    std::vector<std::string> cols;
    while (std::getline(hs, col, ',')) cols.push_back(col);
    if (cols.empty() || cols.back() != "y") throw std::invalid_argument("last column must be y");
    p = cols.size() - 1;
  }
  std::vector<double> flat;
  Vector y;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string f;
    for (std::size_t j = 0; j < p; ++j) {
      if (!std::getline(ls, f, ',')) throw std::invalid_argument("short row");
      flat.push_back(std::stod(f));
    }
    if (!std::getline(ls, f, ',')) throw std::invalid_argument("missing response");
    y.push_back(std::stod(f));
  }
  Matrix x(y.size(), p);
  std::copy(flat.begin(), flat.end(), x.data());
  return Dataset{std::move(x), std::move(y)};
}

std::string truth_to_json(const GroundTruth& truth) {
  json j;
  j["w_star"] = truth.w_star;
  Vector diag(truth.sigma.rows());
  for (std::size_t i = 0; i < diag.size(); ++i) diag[i] = truth.sigma(i, i);
  j["sigma_diag"] = diag;
  j["corrupted_indices"] = truth.corrupted_indices;
  j["noise"] = noise_to_json(truth.noise);
  j["seed"] = truth.seed;
  return j.dump(2);
}

GroundTruth truth_from_json(const std::string& text) {
  json j = json::parse(text);
  GroundTruth t;
  t.w_star = j.at("w_star").get<Vector>();
  Vector diag = j.at("sigma_diag").get<Vector>();
  t.sigma = Matrix::diagonal(diag);
  t.corrupted_indices = j.at("corrupted_indices").get<std::vector<std::size_t>>();
  t.noise = noise_from_json(j.at("noise"));
  t.seed = j.value("seed", std::uint64_t{0});
  return t;
}

AdaCrrConfig adacrr_config_from_json(const std::string& text) {
  return adacrr_config_from(json::parse(text));
}

TorrentConfig torrent_config_from_json(const std::string& text) {
  json j = json::parse(text);
  TorrentConfig c;
  c.alpha = j.at("alpha").get<double>();
  c.max_iters = j.value("max_iters", std::size_t{100});
  c.tol = j.value("tol", 1e-9);
  return c;
}

HuberConfig huber_config_from_json(const std::string& text) {
  json j = json::parse(text);
  HuberConfig c;
  c.delta = j.value("delta", 1.345);
  c.max_iters = j.value("max_iters", std::size_t{100});
  c.tol = j.value("tol", 1e-9);
  return c;
}

std::string fit_result_to_json(const FitResult& fit, const std::string& config_echo,
                               std::uint64_t seed) {
  json j;
  j["w_final"] = fit.w_final;
  if (!fit.errors_sigma_norm.empty()) j["errors_sigma_norm"] = fit.errors_sigma_norm;
  j["set_sizes"] = fit.set_sizes;
  if (!fit.flagged_iterations.empty()) j["flagged_iterations"] = fit.flagged_iterations;
  j["iterations"] = fit.iterations;
  j["seed"] = seed;
  j["wall_time_ms"] = fit.wall_time_ms;
  if (!config_echo.empty()) {
    j["config"] = json::parse(config_echo, nullptr, false);
    if (j["config"].is_discarded()) j["config"] = config_echo;
  }
  return j.dump(2);
}

ExperimentSpec experiment_spec_from_json(const std::string& text) {
  json j = json::parse(text);
  ExperimentSpec spec;
  for (const auto& je : j.at("estimators")) {
    EstimatorSpec e;
    e.kind = parse_estimator_kind(je.at("estimator").get<std::string>());
    e.name = je.value("name", std::string(estimator_kind_name(e.kind)));
    switch (e.kind) {
      case EstimatorKind::adacrr_fc:
      case EstimatorKind::adacrr_gd:
      case EstimatorKind::adacrr_hd:
        if (je.contains("config")) e.adacrr = adacrr_config_from(je.at("config"));
        if (e.kind == EstimatorKind::adacrr_gd &&
            e.adacrr.update.kind == UpdateKind::fully_corrective)
          e.adacrr.update = UpdateSpec::gradient_descent(0.0, 1);
        break;
      case EstimatorKind::torrent: {
        const json& jc = je.value("config", json::object());
        e.torrent.alpha = jc.value("alpha", 0.0);
        e.torrent.max_iters = jc.value("max_iters", std::size_t{100});
        e.torrent.tol = jc.value("tol", 1e-9);
        break;
      }
      case EstimatorKind::huber: {
        const json& jc = je.value("config", json::object());
        e.huber.delta = jc.value("delta", 1.345);
        e.huber.max_iters = jc.value("max_iters", std::size_t{100});
        e.huber.tol = jc.value("tol", 1e-9);
        break;
      }
      case EstimatorKind::ols:
        break;
    }
    spec.estimators.push_back(std::move(e));
  }
  const std::string sweep = j.at("sweep").at("kind").get<std::string>();
  if (sweep == "vary_n") spec.sweep = SweepKind::vary_n;
  else if (sweep == "vary_alpha") spec.sweep = SweepKind::vary_alpha;
  else if (sweep == "vary_iter") spec.sweep = SweepKind::vary_iter;
  else throw std::invalid_argument("unknown sweep kind: " + sweep);
  spec.sweep_values = j.at("sweep").at("values").get<std::vector<double>>();

  const json& ji = j.at("instance");
  spec.instance.n = ji.value("n", std::size_t{0});
  spec.instance.p = ji.at("p").get<std::size_t>();
  spec.instance.sigma = ji.contains("sigma") ? sigma_from_json(ji.at("sigma")) : SigmaSpec::identity();
  spec.instance.noise = ji.contains("noise") ? noise_from_json(ji.at("noise")) : NoiseSpec::none();
  spec.instance.corruption =
      ji.contains("corruption") ? corruption_from_json(ji.at("corruption")) : CorruptionSpec::none();
  if (ji.contains("w_star")) spec.instance.w_star = wstar_from_json(ji.at("w_star"));

  spec.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
  spec.master_seed = j.value("master_seed", std::uint64_t{0});
  spec.outputs = j.value("outputs", std::string{});
  return spec;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

}  // namespace adacrr::io
