#include "gvflab/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <locale>
#include <set>
#include <sstream>

namespace gvflab {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

// Strip a trailing comment, respecting double-quoted strings.
std::string strip_comment(const std::string& line) {
  bool in_string = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') in_string = !in_string;
    else if (line[i] == '#' && !in_string) return line.substr(0, i);
  }
  return line;
}

class Reader {
 public:
  explicit Reader(ConfigTable table) : table_(std::move(table)) {}

  bool has(const std::string& sect, const std::string& key) const {
    auto s = table_.find(sect);
    return s != table_.end() && s->second.count(key) > 0;
  }

  std::string raw(const std::string& sect, const std::string& key) {
    consumed_.insert(sect + "\r" + key);
    return table_.at(sect).at(key);
  }

  template <typename T>
  void read_int(const std::string& sect, const std::string& key, T& out) {
    if (!has(sect, key)) return;
    const std::string v = raw(sect, key);
    long long parsed = 0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), parsed);
    if (ec != std::errc{} || p != v.data() + v.size())
      throw ConfigError("config field " + label(sect, key) + " must be an integer, got '" + v + "'");
    out = static_cast<T>(parsed);
  }

  void read_u64(const std::string& sect, const std::string& key, std::uint64_t& out) {
    if (!has(sect, key)) return;
    const std::string v = raw(sect, key);
    unsigned long long parsed = 0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), parsed);
    if (ec != std::errc{} || p != v.data() + v.size())
      throw ConfigError("config field " + label(sect, key) + " must be an unsigned integer, got '" + v + "'");
    out = parsed;
  }

  void read_double(const std::string& sect, const std::string& key, double& out) {
    if (!has(sect, key)) return;
    const std::string v = raw(sect, key);
    try {
      std::size_t pos = 0;
      const double parsed = std::stod(v, &pos);
      if (pos != v.size()) throw std::invalid_argument(v);
      out = parsed;
    } catch (const std::exception&) {
      throw ConfigError("config field " + label(sect, key) + " must be a number, got '" + v + "'");
    }
  }

  void read_string(const std::string& sect, const std::string& key, std::string& out) {
    if (!has(sect, key)) return;
    std::string v = raw(sect, key);
    if (v.size() >= 2 && v.front() == '"' && v.back() == '"') v = v.substr(1, v.size() - 2);
    out = v;
  }

  void reject_unconsumed() const {
    for (const auto& [sect, kv] : table_)
      for (const auto& [key, value] : kv)
        if (!consumed_.count(sect + "\r" + key))
          throw ConfigError("unknown config field " + label(sect, key));
  }

 private:
  static std::string label(const std::string& sect, const std::string& key) {
    return sect.empty() ? "'" + key + "'" : "'" + sect + "." + key + "'";
  }

  ConfigTable table_;
  std::set<std::string> consumed_;
};

}  // namespace

const char* experiment_name(ExperimentKind k) {
  return k == ExperimentKind::SyntheticPulse ? "synthetic-pulse" : "gridpen-touch";
}

ConfigTable parse_config_text(const std::string& text, const std::string& origin) {
  ConfigTable table;
  std::string section;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string body = trim(strip_comment(line));
    if (body.empty()) continue;
    if (body.front() == '[') {
      if (body.back() != ']')
        throw ConfigError(origin + ":" + std::to_string(lineno) + ": malformed section header");
      section = trim(body.substr(1, body.size() - 2));
      if (section.empty())
        throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty section name");
      table[section];
      continue;
    }
    const auto eq = body.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected key = value");
    if (table[section].count(key))
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": duplicate key '" + key + "'");
    table[section][key] = value;
  }
  return table;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();

  Reader r(parse_config_text(buf.str(), path.filename().string()));
  ExperimentConfig cfg;

  std::string kind;
  r.read_string("", "experiment", kind);
  if (!kind.empty()) {
    if (kind == "synthetic-pulse") cfg.kind = ExperimentKind::SyntheticPulse;
    else if (kind == "gridpen-touch") cfg.kind = ExperimentKind::GridpenTouch;
    else throw ConfigError("config field 'experiment' must be synthetic-pulse or gridpen-touch");
  }
  r.read_int("", "steps", cfg.steps);
  r.read_int("", "trials", cfg.trials);
  r.read_u64("", "seed", cfg.master_seed);
  r.read_int("", "cadence", cfg.cadence);
  r.read_int("", "workers", cfg.workers);
  r.read_string("", "output", cfg.output_dir);

  r.read_int("pulse", "period", cfg.pulse.period);
  r.read_int("pulse", "width", cfg.pulse.width);
  r.read_double("pulse", "gamma", cfg.pulse.gamma);
  r.read_int("pulse", "lead", cfg.pulse.lead);

  r.read_int("return", "buffer", cfg.return_buffer);

  r.read_int("coder", "tilings", cfg.tilings);
  r.read_int("coder", "tiles_per_dim", cfg.tiles_per_dim);
  std::uint64_t hash_size = cfg.hash_size;
  r.read_u64("coder", "hash_size", hash_size);
  if (hash_size == 0 || hash_size > (1ull << 26))
    throw ConfigError("config field 'coder.hash_size' must be in [1, 2^26]");
  cfg.hash_size = static_cast<std::uint32_t>(hash_size);
  r.read_int("coder", "subsample_count", cfg.subsample_count);

  std::string learner;
  r.read_string("learner", "kind", learner);
  if (!learner.empty()) {
    if (learner == "autostep-gtd") cfg.learner = LearnerKind::AutostepGtd;
    else if (learner == "gtd-fixed-alpha") cfg.learner = LearnerKind::GtdFixedAlpha;
    else throw ConfigError("config field 'learner.kind' must be autostep-gtd or gtd-fixed-alpha");
  }
  r.read_double("learner", "lambda", cfg.lambda);
  r.read_double("learner", "theta", cfg.theta);
  r.read_double("learner", "tau", cfg.tau);
  r.read_double("learner", "alpha_init", cfg.alpha_init);

  r.read_double("rupee", "beta0", cfg.rupee_beta0);

  r.reject_unconsumed();
  cfg.validate();
  return cfg;
}

void ExperimentConfig::validate() const {
  if (steps < 1) throw ConfigError("config field 'steps' must be >= 1");
  if (trials < 1) throw ConfigError("config field 'trials' must be >= 1");
  if (cadence < 1) throw ConfigError("config field 'cadence' must be >= 1");
  if (workers < 0) throw ConfigError("config field 'workers' must be >= 0");
  if (output_dir.empty()) throw ConfigError("config field 'output' must not be empty");
  pulse.validate();
  if (return_buffer < 1) throw ConfigError("config field 'return.buffer' must be >= 1");
  if (tilings < 1) throw ConfigError("config field 'coder.tilings' must be >= 1");
  if (tiles_per_dim < 1) throw ConfigError("config field 'coder.tiles_per_dim' must be >= 1");
  if (hash_size < static_cast<std::uint32_t>(tilings))
    throw ConfigError("config field 'coder.hash_size' must be >= tilings");
  if (subsample_count < 1) throw ConfigError("config field 'coder.subsample_count' must be >= 1");
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw ConfigError("config field 'learner.lambda' must be in [0,1]");
  if (theta < 0.0) throw ConfigError("config field 'learner.theta' must be >= 0");
  if (!(tau > 0.0)) throw ConfigError("config field 'learner.tau' must be > 0");
  if (alpha_init < 0.0) throw ConfigError("config field 'learner.alpha_init' must be >= 0");
  if (!(rupee_beta0 > 0.0 && rupee_beta0 < 1.0))
    throw ConfigError("config field 'rupee.beta0' must be in (0,1)");
}

std::string ExperimentConfig::canonical() const {
  std::ostringstream out;
  out.imbue(std::locale::classic());
  out.precision(17);
  out << "cadence=" << cadence << '\n'
      << "coder.hash_size=" << hash_size << '\n'
      << "coder.subsample_count=" << subsample_count << '\n'
      << "coder.tiles_per_dim=" << tiles_per_dim << '\n'
      << "coder.tilings=" << tilings << '\n'
      << "experiment=" << experiment_name(kind) << '\n'
      << "learner.alpha_init=" << alpha_init << '\n'
      << "learner.kind=" << (learner == LearnerKind::AutostepGtd ? "autostep-gtd" : "gtd-fixed-alpha") << '\n'
      << "learner.lambda=" << lambda << '\n'
      << "learner.tau=" << tau << '\n'
      << "learner.theta=" << theta << '\n'
      << "pulse.gamma=" << pulse.gamma << '\n'
      << "pulse.lead=" << pulse.lead << '\n'
      << "pulse.period=" << pulse.period << '\n'
      << "pulse.width=" << pulse.width << '\n'
      << "return.buffer=" << return_buffer << '\n'
      << "rupee.beta0=" << rupee_beta0 << '\n'
      << "seed=" << master_seed << '\n'
      << "steps=" << steps << '\n'
      << "trials=" << trials << '\n';
  return out.str();
}

std::string ExperimentConfig::hash() const {
  const std::string text = canonical();
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  char buf[19];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace gvflab
