#include "gvflab/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "gvflab/gridpen.hpp"
#include "gvflab/metrics.hpp"
#include "gvflab/network.hpp"
#include "gvflab/rng.hpp"

namespace gvflab {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

namespace {

std::string trial_file_name(int trial) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "trial_%04d.csv", trial);
  return buf;
}

std::string vignette_file_name(int trial) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "vignettes_%04d.csv", trial);
  return buf;
}

void append_row(std::vector<MetricRow>& rows, int trial, std::int64_t step,
                std::string gvf, std::string metric, double value) {
  rows.push_back({trial, step, std::move(gvf), std::move(metric), value});
}

// ---------------------------------------------------------------------------
// synthetic-pulse trial: two reference estimators scored against the
// buffered empirical return, on the normalized scale.

std::vector<MetricRow> run_pulse_trial(const ExperimentConfig& cfg, int trial) {
  std::vector<MetricRow> rows;
  const PulseConfig& pc = cfg.pulse;
  const double norm = 1.0 - pc.gamma;

  ReturnBuffer track_buf(cfg.return_buffer);
  ReturnBuffer antic_buf(cfg.return_buffer);
  ReturnErrorAccum track_err;
  ReturnErrorAccum antic_err;

  for (std::int64_t t = 1; t <= cfg.steps; ++t) {
    const ReferenceEstimates est = reference_estimates(t, pc);
    track_buf.add_prediction(t, est.tracking);
    antic_buf.add_prediction(t, est.anticipatory);

    const double c = pulse_cumulant(t + 1, pc);
    const auto track_m = track_buf.add_pair(c, pc.gamma);
    const auto antic_m = antic_buf.add_pair(c, pc.gamma);

    if (track_m) track_err.add(return_error(norm * track_m->g_tilde, track_m->prediction));
    if (antic_m) antic_err.add(return_error(norm * antic_m->g_tilde, antic_m->prediction));

    if (t % cfg.cadence == 0 || t == cfg.steps) {
      append_row(rows, trial, t, "tracking", "estimate", est.tracking);
      append_row(rows, trial, t, "anticipatory", "estimate", est.anticipatory);
      if (track_m) {
        append_row(rows, trial, t, "return", "g_tilde_norm", norm * track_m->g_tilde);
        append_row(rows, trial, t, "tracking", "return_err_sq_cum", track_err.sum_squared);
        append_row(rows, trial, t, "anticipatory", "return_err_sq_cum", antic_err.sum_squared);
      }
    }
  }
  return rows;
}

// ---------------------------------------------------------------------------
// gridpen-touch trial: two networks over one shared transition stream.

NetworkConfig make_network_config(const ExperimentConfig& cfg, Rng& rng) {
  PixelSubsampler sampler =
      PixelSubsampler::random(rng, kImageRows, kImageCols, cfg.subsample_count);
  TileCoderConfig l1 = TileCoderConfig::uniform(cfg.subsample_count + 1, cfg.tilings,
                                                cfg.tiles_per_dim, cfg.hash_size, rng.next_u64());
  TileCoderConfig l2 = TileCoderConfig::uniform(cfg.subsample_count + 2, cfg.tilings,
                                                cfg.tiles_per_dim, cfg.hash_size, rng.next_u64());
  return NetworkConfig{std::move(sampler), std::move(l1), std::move(l2),
                       cfg.lambda,  cfg.learner,  cfg.theta,
                       cfg.tau,     cfg.alpha_init, cfg.rupee_beta0};
}

void emit_network_rows(std::vector<MetricRow>& rows, int trial, std::int64_t step,
                       GvfNetwork& net, const std::vector<NodeReport>& reports) {
  const std::string suffix = std::string("@") + variant_name(net.variant());
  for (const NodeReport& rep : reports) {
    const std::string id = rep.node->id + suffix;
    append_row(rows, trial, step, id, "prediction", rep.outcome.prediction);
    append_row(rows, trial, step, id, "rupee", rep.rupee);
    append_row(rows, trial, step, id, "rupee_cum", rep.rupee_cum);
    append_row(rows, trial, step, id, "alpha_active", net.node_mean_active_alpha(*rep.node));
    append_row(rows, trial, step, id, "relevance", rep.relevance);
  }
}

struct VignetteRow {
  int trial = 0;
  int vignette = 0;
  int step = 0;
  std::string gvf_id;
  double value = 0.0;
};

constexpr const char* kVignetteHeader = "trial,vignette,step,gvf_id,value";

// Approach-and-turn trajectories from each wall, learning frozen.
void collect_vignettes(const GvfNetwork& net, int trial, std::vector<VignetteRow>& out) {
  const std::string suffix = std::string("@") + variant_name(net.variant());
  const Heading walls[4] = {Heading::North, Heading::East, Heading::South, Heading::West};
  for (int v = 0; v < 4; ++v) {
    const VignetteScript script = script_approach_and_turn(walls[v], /*lateral=*/7);
    const VignetteTrace trace = net.vignette_eval(script.spawn, script.actions);
    for (std::size_t k = 0; k < trace.touch.size(); ++k)
      out.push_back({trial, v, static_cast<int>(k), "env-touch" + suffix,
                     static_cast<double>(trace.touch[k])});
    for (const auto& [id, preds] : trace.predictions)
      for (std::size_t k = 0; k < preds.size(); ++k)
        out.push_back({trial, v, static_cast<int>(k), id + suffix, preds[k]});
  }
}

std::vector<MetricRow> run_gridpen_trial(const ExperimentConfig& cfg, int trial,
                                         std::vector<VignetteRow>* vignettes) {
  Rng rng(derive_trial_seed(cfg.master_seed, trial));
  NetworkConfig net_cfg = make_network_config(cfg, rng);

  GvfNetwork tile_net = build_touch_network(NetworkVariant::TileCoded, net_cfg);
  GvfNetwork bias_net = build_touch_network(NetworkVariant::BiasBit, net_cfg);

  std::vector<MetricRow> rows;
  GridPenState state;
  Observation obs = observe(state);

  for (std::int64_t t = 1; t <= cfg.steps; ++t) {
    const auto [action, prob] = behavior_policy(rng, state);
    auto [next_state, next_obs] = gridpen_step(state, action);
    const Transition tr{std::move(obs), action, next_obs, prob};

    const auto tile_reports = tile_net.step(tr);
    const auto bias_reports = bias_net.step(tr);

    if (t % cfg.cadence == 0 || t == cfg.steps) {
      emit_network_rows(rows, trial, t, tile_net, tile_reports);
      emit_network_rows(rows, trial, t, bias_net, bias_reports);
    }

    state = next_state;
    obs = std::move(next_obs);
  }

  if (vignettes) {
    collect_vignettes(tile_net, trial, *vignettes);
    collect_vignettes(bias_net, trial, *vignettes);
  }
  return rows;
}

std::vector<MetricRow> run_rows(const ExperimentConfig& cfg, int trial,
                                std::vector<VignetteRow>* vignettes = nullptr) {
  switch (cfg.kind) {
    case ExperimentKind::SyntheticPulse: return run_pulse_trial(cfg, trial);
    case ExperimentKind::GridpenTouch: return run_gridpen_trial(cfg, trial, vignettes);
  }
  throw ConfigError("invalid experiment kind");
}

void write_rows_csv(const fs::path& file, const std::vector<MetricRow>& rows) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + file.string() + "'");
  out << kTrialHeader << '\n';
  for (const MetricRow& r : rows)
    out << r.trial << ',' << r.step << ',' << r.gvf_id << ',' << r.metric << ','
        << format_value(r.value) << '\n';
  if (!out) throw ConfigError("failed writing '" + file.string() + "'");
}

void write_vignette_csv(const fs::path& file, const std::vector<VignetteRow>& rows) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + file.string() + "'");
  out << kVignetteHeader << '\n';
  for (const VignetteRow& r : rows)
    out << r.trial << ',' << r.vignette << ',' << r.step << ',' << r.gvf_id << ','
        << format_value(r.value) << '\n';
}

}  // namespace

std::vector<MetricRow> run_trial_rows(const ExperimentConfig& config, int trial) {
  return run_rows(config, trial);
}

RunResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  RunResult result;
  result.dir = config.output_dir;
  std::error_code ec;
  fs::create_directories(result.dir, ec);
  if (ec) throw ConfigError("cannot create output directory '" + result.dir.string() + "'");

  result.trial_files.resize(config.trials);
  std::vector<std::exception_ptr> failures(config.trials);

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const int workers = config.workers > 0
                          ? config.workers
                          : static_cast<int>(std::min<unsigned>(hw, config.trials));

  const bool with_vignettes = config.kind == ExperimentKind::GridpenTouch;
  std::atomic<int> next{0};
  auto work = [&]() {
    for (;;) {
      const int trial = next.fetch_add(1);
      if (trial >= config.trials) return;
      try {
        const fs::path file = result.dir / trial_file_name(trial);
        std::vector<VignetteRow> vignettes;
        write_rows_csv(file, run_rows(config, trial, with_vignettes ? &vignettes : nullptr));
        if (with_vignettes)
          write_vignette_csv(result.dir / vignette_file_name(trial), vignettes);
        result.trial_files[trial] = file;
      } catch (...) {
        failures[trial] = std::current_exception();
      }
    }
  };

  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int i = 0; i < workers; ++i) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  for (auto& f : failures)
    if (f) std::rethrow_exception(f);

  json manifest;
  manifest["version"] = 1;
  manifest["experiment"] = experiment_name(config.kind);
  manifest["config_hash"] = config.hash();
  manifest["master_seed"] = config.master_seed;
  json trials = json::array();
  for (int trial = 0; trial < config.trials; ++trial) {
    json entry = {{"trial", trial},
                  {"seed", derive_trial_seed(config.master_seed, trial)},
                  {"file", trial_file_name(trial)}};
    if (with_vignettes) entry["vignettes"] = vignette_file_name(trial);
    trials.push_back(std::move(entry));
  }
  manifest["trials"] = trials;
  // The only mutable field; excluded from the determinism contract.
  manifest["created_unix"] =
      std::chrono::duration_cast<std::chrono::seconds>(
          std::chrono::system_clock::now().time_since_epoch())
          .count();

  result.manifest = result.dir / "manifest.json";
  std::ofstream mout(result.manifest, std::ios::binary);
  mout << manifest.dump(2) << '\n';
  if (!mout) throw ConfigError("failed writing manifest");
  return result;
}

std::vector<MetricRow> read_trial_csv(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot open '" + file.string() + "'");
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("empty CSV '" + file.string() + "'");
  if (line != kTrialHeader)
    throw ConfigError("'" + file.string() + "' is not a trial CSV (unexpected header)");
  std::vector<MetricRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    MetricRow r;
    std::istringstream ls(line);
    std::string field;
    std::getline(ls, field, ',');
    r.trial = std::stoi(field);
    std::getline(ls, field, ',');
    r.step = std::stoll(field);
    std::getline(ls, r.gvf_id, ',');
    std::getline(ls, r.metric, ',');
    std::getline(ls, field, ',');
    r.value = std::stod(field);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<SummaryRow> aggregate(const fs::path& run_dir) {
  const fs::path manifest_path = run_dir / "manifest.json";
  std::ifstream min(manifest_path);
  if (!min) throw ConfigError("no manifest.json in '" + run_dir.string() + "'");
  json manifest = json::parse(min);

  struct Key {
    std::int64_t step;
    std::string gvf;
    std::string metric;
    auto operator<=>(const Key&) const = default;
  };
  std::map<Key, std::vector<double>> groups;

  const auto& trials = manifest.at("trials");
  if (trials.empty()) throw ConfigError("manifest lists no trials");
  for (const auto& t : trials) {
    const fs::path file = run_dir / t.at("file").get<std::string>();
    for (MetricRow& r : read_trial_csv(file))
      groups[Key{r.step, std::move(r.gvf_id), std::move(r.metric)}].push_back(r.value);
  }

  std::vector<SummaryRow> out;
  out.reserve(groups.size());
  for (const auto& [key, values] : groups) {
    SummaryRow s;
    s.step = key.step;
    s.gvf_id = key.gvf;
    s.metric = key.metric;
    s.trials = static_cast<int>(values.size());
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    s.mean = mean;
    if (values.size() > 1) {
      double ss = 0.0;
      for (double v : values) ss += (v - mean) * (v - mean);
      const double var = ss / static_cast<double>(values.size() - 1);
      s.stderr_ = std::sqrt(var / static_cast<double>(values.size()));
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::filesystem::path write_summary(const fs::path& run_dir) {
  const auto rows = aggregate(run_dir);
  const fs::path file = run_dir / "summary.csv";
  std::ofstream out(file, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + file.string() + "'");
  out << kSummaryHeader << '\n';
  for (const SummaryRow& r : rows)
    out << r.step << ',' << r.gvf_id << ',' << r.metric << ',' << format_value(r.mean) << ','
        << format_value(r.stderr_) << ',' << r.trials << '\n';
  if (!out) throw ConfigError("failed writing '" + file.string() + "'");
  return file;
}

std::vector<SummaryRow> read_summary_csv(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot open '" + file.string() + "'");
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("empty CSV '" + file.string() + "'");
  if (line != kSummaryHeader)
    throw ConfigError("'" + file.string() + "' is not a summary CSV (unexpected header)");
  std::vector<SummaryRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    SummaryRow r;
    std::istringstream ls(line);
    std::string field;
    std::getline(ls, field, ',');
    r.step = std::stoll(field);
    std::getline(ls, r.gvf_id, ',');
    std::getline(ls, r.metric, ',');
    std::getline(ls, field, ',');
    r.mean = std::stod(field);
    std::getline(ls, field, ',');
    r.stderr_ = std::stod(field);
    std::getline(ls, field, ',');
    r.trials = std::stoi(field);
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace gvflab
