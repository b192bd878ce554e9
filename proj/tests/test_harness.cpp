#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "gvflab/cli.hpp"
#include "gvflab/config.hpp"
#include "gvflab/harness.hpp"
#include "gvflab/plot.hpp"

using namespace gvflab;
namespace fs = std::filesystem;

namespace {

fs::path make_temp_dir(const std::string& tag) {
  static int counter = 0;
  const fs::path dir =
      fs::temp_directory_path() / ("gvflab-test-" + tag + "-" + std::to_string(counter++));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

ExperimentConfig small_gridpen(const fs::path& out) {
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::GridpenTouch;
  cfg.steps = 300;
  cfg.trials = 2;
  cfg.master_seed = 42;
  cfg.cadence = 50;
  cfg.hash_size = 1u << 12;
  cfg.output_dir = out.string();
  return cfg;
}

// Minimal well-formedness scan: every tag closes, attributes stay quoted.
bool xml_well_formed(const std::string& text) {
  std::vector<std::string> stack;
  std::size_t i = 0;
  if (text.find('<') == std::string::npos) return false;
  while (i < text.size()) {
    if (text[i] != '<') {
      ++i;
      continue;
    }
    std::size_t close = i + 1;
    bool in_quote = false;
    while (close < text.size() && (text[close] != '>' || in_quote)) {
      if (text[close] == '"') in_quote = !in_quote;
      ++close;
    }
    if (close == text.size()) return false;
    std::string tag = text.substr(i + 1, close - i - 1);
    if (!tag.empty() && tag.front() == '?') {
      i = close + 1;
      continue;
    }
    const bool closing = !tag.empty() && tag.front() == '/';
    const bool self_closing = !tag.empty() && tag.back() == '/';
    std::string name = closing ? tag.substr(1) : tag;
    name = name.substr(0, name.find_first_of(" \t\n/"));
    if (closing) {
      if (stack.empty() || stack.back() != name) return false;
      stack.pop_back();
    } else if (!self_closing) {
      stack.push_back(name);
    }
    i = close + 1;
  }
  return stack.empty();
}

}  // namespace

TEST_CASE("config: loads a full file and rejects bad input") {
  const fs::path dir = make_temp_dir("config");
  const fs::path file = dir / "exp.toml";
  write_file(file,
             "experiment = \"synthetic-pulse\"\n"
             "steps = 1600   # ten pulse periods and change\n"
             "trials = 1\n"
             "seed = 7\n"
             "output = \"" + (dir / "out").string() + "\"\n"
             "\n"
             "[pulse]\n"
             "period = 80\n"
             "width = 20\n"
             "gamma = 0.3\n"
             "lead = 3\n"
             "\n"
             "[return]\n"
             "buffer = 100\n");
  const ExperimentConfig cfg = load_config(file);
  CHECK(cfg.kind == ExperimentKind::SyntheticPulse);
  CHECK(cfg.steps == 1600);
  CHECK(cfg.master_seed == 7);
  CHECK(cfg.pulse.gamma == doctest::Approx(0.3));
  CHECK(cfg.return_buffer == 100);

  SUBCASE("missing file names the path") {
    const fs::path missing = dir / "missing.toml";
    CHECK_THROWS_WITH_AS(load_config(missing), doctest::Contains("missing.toml"), ConfigError);
  }
  SUBCASE("unknown keys are named") {
    write_file(dir / "bad.toml", "stepz = 10\n");
    CHECK_THROWS_WITH_AS(load_config(dir / "bad.toml"), doctest::Contains("stepz"), ConfigError);
  }
  SUBCASE("type errors are named") {
    write_file(dir / "bad2.toml", "steps = fast\n");
    CHECK_THROWS_WITH_AS(load_config(dir / "bad2.toml"), doctest::Contains("steps"), ConfigError);
  }
  SUBCASE("invalid values are rejected after parsing") {
    write_file(dir / "bad3.toml", "[pulse]\nwidth = 200\n");
    CHECK_THROWS_AS(load_config(dir / "bad3.toml"), ConfigError);
  }
  fs::remove_all(dir);
}

TEST_CASE("pulse run emits cumulative return-error rows for both estimators") {
  const fs::path dir = make_temp_dir("pulse");
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::SyntheticPulse;
  cfg.steps = 1000;
  cfg.trials = 1;
  cfg.cadence = 50;
  cfg.output_dir = (dir / "run").string();
  const RunResult res = run_experiment(cfg);

  const auto rows = read_trial_csv(res.trial_files.at(0));
  int track = 0, antic = 0;
  for (const auto& r : rows) {
    if (r.metric != "return_err_sq_cum") continue;
    if (r.gvf_id == "tracking") ++track;
    if (r.gvf_id == "anticipatory") ++antic;
  }
  CHECK(track > 0);
  CHECK(antic > 0);
  fs::remove_all(dir);
}

TEST_CASE("identical config and seed produce byte-identical runs, serial or parallel") {
  const fs::path dir = make_temp_dir("determinism");
  ExperimentConfig serial = small_gridpen(dir / "a");
  serial.workers = 1;
  ExperimentConfig parallel = small_gridpen(dir / "b");
  parallel.workers = 4;

  const RunResult ra = run_experiment(serial);
  const RunResult rb = run_experiment(parallel);
  REQUIRE(ra.trial_files.size() == rb.trial_files.size());
  for (std::size_t i = 0; i < ra.trial_files.size(); ++i)
    CHECK(slurp(ra.trial_files[i]) == slurp(rb.trial_files[i]));

  // run the serial config again into a third directory
  ExperimentConfig again = small_gridpen(dir / "c");
  again.workers = 1;
  const RunResult rc = run_experiment(again);
  for (std::size_t i = 0; i < ra.trial_files.size(); ++i)
    CHECK(slurp(ra.trial_files[i]) == slurp(rc.trial_files[i]));
  fs::remove_all(dir);
}

TEST_CASE("aggregate: mean and standard error across trials") {
  const fs::path dir = make_temp_dir("aggregate");
  fs::create_directories(dir / "run");
  write_file(dir / "run" / "manifest.json",
             R"({"version":1,"trials":[{"trial":0,"file":"trial_0000.csv"},)"
             R"({"trial":1,"file":"trial_0001.csv"}]})");
  write_file(dir / "run" / "trial_0000.csv",
             "trial,step,gvf_id,metric,value\n0,50,touch@tile,rupee,1\n");
  write_file(dir / "run" / "trial_0001.csv",
             "trial,step,gvf_id,metric,value\n1,50,touch@tile,rupee,3\n");

  const auto rows = aggregate(dir / "run");
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].mean == doctest::Approx(2.0));
  CHECK(rows[0].stderr_ == doctest::Approx(1.0));
  CHECK(rows[0].trials == 2);

  SUBCASE("single trial yields stderr 0") {
    fs::create_directories(dir / "run1");
    write_file(dir / "run1" / "manifest.json",
               R"({"version":1,"trials":[{"trial":0,"file":"trial_0000.csv"}]})");
    write_file(dir / "run1" / "trial_0000.csv",
               "trial,step,gvf_id,metric,value\n0,50,touch@tile,rupee,1.5\n");
    const auto single = aggregate(dir / "run1");
    REQUIRE(single.size() == 1);
    CHECK(single[0].mean == doctest::Approx(1.5));
    CHECK(single[0].stderr_ == 0.0);
  }

  SUBCASE("aggregating a summary is rejected") {
    const fs::path summary = write_summary(dir / "run");
    fs::create_directories(dir / "run2");
    fs::copy_file(summary, dir / "run2" / "trial_0000.csv");
    write_file(dir / "run2" / "manifest.json",
               R"({"version":1,"trials":[{"trial":0,"file":"trial_0000.csv"}]})");
    CHECK_THROWS_WITH_AS(aggregate(dir / "run2"), doctest::Contains("header"), ConfigError);
  }
  fs::remove_all(dir);
}

TEST_CASE("plot: renders well-formed SVG and rejects unknown metrics") {
  std::vector<SummaryRow> summary;
  for (int step = 50; step <= 500; step += 50) {
    summary.push_back({step, "touch@tile", "rupee_cum", 0.01 * step, 0.001 * step, 5});
    summary.push_back({step, "touch@bias", "rupee_cum", 0.005 * step, 0.0005 * step, 5});
  }

  PlotSpec spec;
  spec.metric = "rupee_cum";
  const std::string svg = render_plot_svg(summary, spec);
  CHECK(xml_well_formed(svg));
  CHECK(svg.find("touch@tile") != std::string::npos);
  CHECK(svg.find("touch@bias") != std::string::npos);

  PlotSpec missing;
  missing.metric = "nope";
  CHECK_THROWS_WITH_AS(render_plot_svg(summary, missing), doctest::Contains("rupee_cum"),
                       ConfigError);
  PlotSpec empty;
  CHECK_THROWS_AS(render_plot_svg(summary, empty), ConfigError);
}

TEST_CASE("cli: exit codes for missing files and unknown subcommands") {
  const char* missing[] = {"gvflab", "run", "/nonexistent/missing.toml"};
  CHECK(run_cli(3, missing) == 1);

  const char* unknown[] = {"gvflab", "frobnicate"};
  CHECK(run_cli(2, unknown) == 2);

  const char* no_sub[] = {"gvflab"};
  CHECK(run_cli(1, no_sub) == 2);

  const char* bad_oracle[] = {"gvflab", "oracle", "nope"};
  CHECK(run_cli(3, bad_oracle) == 1);

  const char* good_oracle[] = {"gvflab", "oracle", "pulse-return"};
  CHECK(run_cli(3, good_oracle) == 0);
}

TEST_CASE("cli: seed override is deterministic end to end") {
  const fs::path dir = make_temp_dir("cli-run");
  const fs::path cfgfile = dir / "exp.toml";
  write_file(cfgfile,
             "experiment = \"gridpen-touch\"\nsteps = 200\ntrials = 1\nseed = 1\n"
             "[coder]\nhash_size = 4096\n");

  const std::string out_a = (dir / "a").string();
  const std::string out_b = (dir / "b").string();
  const std::string cfg_s = cfgfile.string();
  const char* argv_a[] = {"gvflab", "run", cfg_s.c_str(), "--seed", "7", "--out", out_a.c_str()};
  const char* argv_b[] = {"gvflab", "run", cfg_s.c_str(), "--seed", "7", "--out", out_b.c_str()};
  CHECK(run_cli(7, argv_a) == 0);
  CHECK(run_cli(7, argv_b) == 0);
  CHECK(slurp(dir / "a" / "trial_0000.csv") == slurp(dir / "b" / "trial_0000.csv"));
  fs::remove_all(dir);
}
