#include "gvflab/learner_io.hpp"

#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

#include "gvflab/errors.hpp"

namespace gvflab {

using nlohmann::json;

std::string snapshot_to_json(const AutoStepGtdState& state) {
  json j;
  j["w"] = state.w;
  j["e"] = state.e;
  j["h"] = state.h;
  j["alpha"] = state.alpha;
  j["omega"] = state.omega;
  j["eta"] = state.eta;
  j["xi"] = state.xi;
  j["lambda"] = state.lambda;
  j["theta"] = state.theta;
  j["tau"] = state.tau;
  j["steps_done"] = state.steps_done;
  return j.dump();
}

AutoStepGtdState snapshot_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("snapshot: invalid JSON: ") + e.what());
  }
  AutoStepGtdState s;
  try {
    j.at("w").get_to(s.w);
    j.at("e").get_to(s.e);
    j.at("h").get_to(s.h);
    j.at("alpha").get_to(s.alpha);
    j.at("omega").get_to(s.omega);
    j.at("eta").get_to(s.eta);
    j.at("xi").get_to(s.xi);
    s.lambda = j.at("lambda").get<double>();
    s.theta = j.at("theta").get<double>();
    s.tau = j.at("tau").get<double>();
    s.steps_done = j.at("steps_done").get<std::uint64_t>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("snapshot: missing or mistyped field: ") + e.what());
  }
  const std::size_t n = s.w.size();
  if (s.e.size() != n || s.h.size() != n || s.alpha.size() != n || s.omega.size() != n ||
      s.eta.size() != n || s.xi.size() != n)
    throw ConfigError("snapshot: vector length mismatch");

  s.e_flag.assign(n, 0);
  s.e_active.clear();
  for (std::size_t i = 0; i < n; ++i) {
    if (s.e[i] != 0.0) {
      s.e_flag[i] = 1;
      s.e_active.push_back(static_cast<std::uint32_t>(i));
    }
  }
  return s;
}

void save_snapshot(const AutoStepGtdState& state, const std::filesystem::path& file) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + file.string() + "'");
  out << snapshot_to_json(state) << '\n';
}

AutoStepGtdState load_snapshot(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw ConfigError("cannot open '" + file.string() + "'");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return snapshot_from_json(text);
}

}  // namespace gvflab
