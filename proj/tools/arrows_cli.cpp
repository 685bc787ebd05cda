// Benchmark front end: single trials, multi-seed scaling sweeps, and robust
// noise-scale estimation, with machine-readable CSV/JSON outputs.

#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "arrows/arrows.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace arrows;

namespace {

struct Options {
  std::string mode = "trial";
  std::string algo = "arrows";
  std::string gen = "hybrid";
  long long n = 4096;
  std::string n_grid;
  double sigma = 1.0;
  double delta = 0.1;
  std::optional<double> beta;
  std::string seeds = "1";
  std::string out_dir = ".";
  std::string input;
  double eps = 0.05;
  double offset = 0.38;
  std::string levels = "0,1";
  std::string breaks;
  double slope = 2.0;
  double const_value = 0.0;
  int knots = 8;
  double gap_ratio = 0.7;
  double amplitude = 1.0;
  int threads = 0;
  std::string config_file;
};

std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<long long> parse_longs(const std::string& text,
                                   const std::string& what) {
  std::vector<long long> out;
  for (const std::string& item : split_csv(text)) {
    try {
      out.push_back(std::stoll(item));
    } catch (const std::exception&) {
      throw std::invalid_argument("cannot parse " + what + ": '" + item + "'");
    }
  }
  return out;
}

std::vector<double> parse_doubles(const std::string& text,
                                  const std::string& what) {
  std::vector<double> out;
  for (const std::string& item : split_csv(text)) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw std::invalid_argument("cannot parse " + what + ": '" + item + "'");
    }
  }
  return out;
}

// "--seeds 5" means seeds 0..4; a comma list gives explicit seeds.
std::vector<std::uint64_t> resolve_seeds(const std::string& text) {
  std::vector<std::uint64_t> out;
  if (text.find(',') == std::string::npos) {
    const long long count = std::stoll(text);
    if (count < 1) throw std::invalid_argument("--seeds count must be >= 1");
    for (long long s = 0; s < count; ++s) out.push_back(std::uint64_t(s));
    return out;
  }
  for (long long s : parse_longs(text, "--seeds")) {
    if (s < 0) throw std::invalid_argument("seeds must be non-negative");
    out.push_back(std::uint64_t(s));
  }
  if (out.empty()) throw std::invalid_argument("--seeds list is empty");
  return out;
}

seq::GroundTruth make_truth(const Options& opt, long long n) {
  if (opt.gen == "doppler") return seq::gen_doppler(n, opt.eps, opt.offset);
  if (opt.gen == "hybrid") {
    return seq::gen_hybrid(n, {opt.knots, opt.gap_ratio, opt.amplitude},
                           opt.eps);
  }
  if (opt.gen == "linear") return seq::gen_linear(n, opt.slope);
  if (opt.gen == "constant") {
    return seq::gen_step(n, std::vector<double>{opt.const_value},
                         std::vector<long long>{});
  }
  if (opt.gen == "step") {
    const auto levels = parse_doubles(opt.levels, "--levels");
    std::vector<long long> breaks;
    if (!opt.breaks.empty()) {
      breaks = parse_longs(opt.breaks, "--breaks");
    } else {
      // evenly spaced level changes when none are given
      for (std::size_t j = 1; j < levels.size(); ++j) {
        breaks.push_back(1 + static_cast<long long>(
                                 j * static_cast<unsigned long long>(n) /
                                 levels.size()));
      }
    }
    return seq::gen_step(n, levels, breaks);
  }
  throw std::invalid_argument("unknown --gen: " + opt.gen +
                              " (doppler|hybrid|step|linear|constant)");
}

struct RunResult {
  TrialTrace trace;
  json algo_params;
  double wallclock_ms = 0.0;
};

RunResult run_algo(const std::string& algo, const Options& opt,
                   const seq::GroundTruth& truth,
                   const std::vector<double>& ys, std::uint64_t seed) {
  const long long n = truth.n();
  RunResult result;
  const auto started = std::chrono::steady_clock::now();
  if (algo == "arrows") {
    policy::ArrowsConfig cfg{n, opt.sigma, opt.delta, opt.beta};
    policy::ArrowsForecaster forecaster(cfg);
    if (forecaster.sigma_zero_warning()) {
      std::cerr << "warning: sigma = 0 makes the restart trigger fire on any "
                   "nonzero coefficient\n";
    }
    result.trace = policy::run_horizon(forecaster, ys);
    result.algo_params["delta"] = cfg.delta;
    result.algo_params["lambda"] = cfg.lambda();
    if (const auto beta = cfg.effective_beta()) {
      result.algo_params["beta"] = *beta;
    } else {
      result.algo_params["beta"] = nullptr;
    }
  } else if (algo == "ogd-tv") {
    const long long batch = baselines::ogd_batch_size_tv(n, opt.sigma, truth.tv);
    result.trace = baselines::run_ogd({batch, n}, ys);
    result.trace.algo = "ogd-tv";
    result.algo_params["batch_size"] = batch;
  } else if (algo == "ogd-sobolev") {
    const long long batch =
        baselines::ogd_batch_size_sobolev(n, opt.sigma, truth.sobolev);
    result.trace = baselines::run_ogd({batch, n}, ys);
    result.trace.algo = "ogd-sobolev";
    result.algo_params["batch_size"] = batch;
  } else if (algo == "ma-tv") {
    const long long window = baselines::ma_window_tv(n, opt.sigma, truth.tv);
    result.trace = baselines::run_ma({window, n}, ys);
    result.trace.algo = "ma-tv";
    result.algo_params["window"] = window;
  } else {
    throw std::invalid_argument(
        "unknown --algo: " + algo + " (arrows|ogd-tv|ogd-sobolev|ma-tv)");
  }
  result.wallclock_ms =
      std::chrono::duration<double, std::milli>(
          std::chrono::steady_clock::now() - started)
          .count();
  eval::score_against(result.trace, truth.theta);
  result.trace.seed = seed;
  return result;
}

json config_echo(const Options& opt) {
  json cfg;
  cfg["mode"] = opt.mode;
  cfg["algo"] = opt.algo;
  cfg["gen"] = opt.gen;
  cfg["n"] = opt.n;
  if (!opt.n_grid.empty()) cfg["n_grid"] = opt.n_grid;
  cfg["sigma"] = opt.sigma;
  cfg["delta"] = opt.delta;
  if (opt.beta) {
    cfg["beta"] = *opt.beta;
  } else {
    cfg["beta"] = nullptr;
  }
  cfg["seeds"] = opt.seeds;
  cfg["out_dir"] = opt.out_dir;
  if (!opt.input.empty()) cfg["input"] = opt.input;
  cfg["eps"] = opt.eps;
  cfg["offset"] = opt.offset;
  cfg["levels"] = opt.levels;
  if (!opt.breaks.empty()) cfg["breaks"] = opt.breaks;
  cfg["slope"] = opt.slope;
  cfg["const_value"] = opt.const_value;
  cfg["knots"] = opt.knots;
  cfg["gap_ratio"] = opt.gap_ratio;
  cfg["amplitude"] = opt.amplitude;
  cfg["threads"] = opt.threads;
  return cfg;
}

json generator_echo(const seq::GroundTruth& truth) {
  json g;
  g["label"] = truth.label;
  g["tv"] = truth.tv;
  g["sobolev"] = truth.sobolev;
  g["sup"] = truth.sup;
  return g;
}

void write_json(const fs::path& path, const json& value) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << value.dump(2) << '\n';
  if (!out.flush()) throw std::runtime_error("failed writing: " + path.string());
}

int run_trial(const Options& opt) {
  const auto seeds = resolve_seeds(opt.seeds);
  const std::uint64_t seed = seeds.front();
  const auto truth = make_truth(opt, opt.n);
  const auto ys = seq::add_noise(truth, {opt.sigma, seed});
  const auto result = run_algo(opt.algo, opt, truth, ys, seed);

  fs::create_directories(opt.out_dir);
  const fs::path trace_path = fs::path(opt.out_dir) / "trace.csv";
  io::write_trace_csv(trace_path.string(), result.trace);

  json summary;
  summary["mode"] = "trial";
  summary["algo"] = result.trace.algo;
  summary["n"] = opt.n;
  summary["seed"] = seed;
  summary["generator"] = generator_echo(truth);
  summary["total_regret"] = eval::dynamic_regret(result.trace);
  summary["num_bins"] = result.trace.num_bins;
  summary["beta"] = result.algo_params.contains("beta")
                        ? result.algo_params["beta"]
                        : json(nullptr);
  summary["lambda"] = result.algo_params.contains("lambda")
                          ? result.algo_params["lambda"]
                          : json(nullptr);
  summary["algo_params"] = result.algo_params;
  summary["wallclock_ms"] = result.wallclock_ms;
  summary["config"] = config_echo(opt);
  summary["trace_csv"] = "trace.csv";
  write_json(fs::path(opt.out_dir) / "summary.json", summary);

  std::cout << result.trace.algo << " n=" << opt.n << " seed=" << seed
            << " regret=" << io::fmt_real(eval::dynamic_regret(result.trace))
            << " bins=" << result.trace.num_bins << '\n';
  return 0;
}

int run_sweep(const Options& opt) {
  const auto algos = split_csv(opt.algo);
  if (algos.empty()) throw std::invalid_argument("--algo list is empty");
  auto grid = parse_longs(opt.n_grid, "--n-grid");
  if (grid.size() < 3) {
    throw std::invalid_argument("--n-grid needs at least 3 points");
  }
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (grid[i] <= grid[i - 1]) {
      throw std::invalid_argument("--n-grid must be strictly increasing");
    }
  }
  const auto seeds = resolve_seeds(opt.seeds);

  std::map<long long, seq::GroundTruth> truths;
  for (long long n : grid) truths.emplace(n, make_truth(opt, n));

  struct Task {
    std::string algo;
    long long n;
    std::uint64_t seed;
  };
  std::vector<Task> tasks;
  for (const auto& algo : algos) {
    for (long long n : grid) {
      for (std::uint64_t seed : seeds) tasks.push_back({algo, n, seed});
    }
  }

  std::vector<io::SweepRow> rows(tasks.size());
  std::vector<TrialTrace> traces(tasks.size());
  std::atomic<std::size_t> cursor{0};
  auto worker = [&] {
    for (std::size_t i; (i = cursor.fetch_add(1)) < tasks.size();) {
      const Task& task = tasks[i];
      const auto& truth = truths.at(task.n);
      const auto ys = seq::add_noise(truth, {opt.sigma, task.seed});
      auto result = run_algo(task.algo, opt, truth, ys, task.seed);
      rows[i] = {task.algo,
                 task.n,
                 task.seed,
                 eval::dynamic_regret(result.trace),
                 result.trace.num_bins,
                 result.wallclock_ms};
      traces[i] = std::move(result.trace);
    }
  };
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t pool_size =
      std::min<std::size_t>(opt.threads > 0 ? unsigned(opt.threads) : hw,
                            tasks.size());
  std::vector<std::thread> pool;
  for (std::size_t i = 0; i < pool_size; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  fs::create_directories(opt.out_dir);
  io::write_scaling_csv((fs::path(opt.out_dir) / "scaling.csv").string(), rows);

  json report;
  report["mode"] = "sweep";
  report["config"] = config_echo(opt);
  json per_algo;
  for (const auto& algo : algos) {
    json entry;
    std::vector<eval::ScalingRow> slope_rows;
    json per_n = json::array();
    for (long long n : grid) {
      std::vector<TrialTrace> cell;
      for (std::size_t i = 0; i < tasks.size(); ++i) {
        if (tasks[i].algo == algo && tasks[i].n == n) {
          cell.push_back(traces[i]);
        }
      }
      const auto rep = eval::aggregate_seeds(cell);
      slope_rows.push_back({n, rep.mean_regret});
      json cell_json;
      cell_json["n"] = n;
      cell_json["mean_regret"] = rep.mean_regret;
      cell_json["std_regret"] = rep.std_regret;
      cell_json["mean_bins"] = rep.mean_bins;
      per_n.push_back(cell_json);
    }
    entry["slope"] = eval::scaling_slope(slope_rows);
    entry["per_n"] = per_n;
    per_algo[algo] = entry;
    std::cout << algo << " slope=" << io::fmt_real(entry["slope"].get<double>())
              << '\n';
  }
  report["algos"] = per_algo;
  write_json(fs::path(opt.out_dir) / "report.json", report);
  return 0;
}

int run_estimate_sigma(const Options& opt) {
  std::vector<double> ys;
  std::string source;
  if (!opt.input.empty()) {
    std::ifstream in(opt.input);
    if (!in) throw std::runtime_error("cannot open --input: " + opt.input);
    double v = 0.0;
    while (in >> v) ys.push_back(v);
    source = opt.input;
  } else {
    const auto truth = make_truth(opt, opt.n);
    const auto seeds = resolve_seeds(opt.seeds);
    ys = seq::add_noise(truth, {opt.sigma, seeds.front()});
    source = truth.label;
  }
  const double sigma_hat = haar::estimate_sigma_mad(ys);
  std::cout << "sigma_hat " << io::fmt_real(sigma_hat) << '\n';

  fs::create_directories(opt.out_dir);
  json out;
  out["mode"] = "estimate-sigma";
  out["sigma_hat"] = sigma_hat;
  out["n_observations"] = ys.size();
  out["source"] = source;
  out["config"] = config_echo(opt);
  write_json(fs::path(opt.out_dir) / "sigma.json", out);
  return 0;
}

// Values from the config file fill any option the command line left untouched.
void apply_config_file(const Options& defaults, Options& opt, CLI::App& app) {
  if (opt.config_file.empty()) return;
  std::ifstream in(opt.config_file);
  if (!in) {
    throw std::runtime_error("cannot open --config: " + opt.config_file);
  }
  json cfg = json::parse(in);
  auto untouched = [&](const std::string& flag) {
    const CLI::Option* o = app.get_option(flag);
    return o != nullptr && o->count() == 0;
  };
  auto load_str = [&](const char* key, const char* flag, std::string& field) {
    if (cfg.contains(key) && untouched(flag)) field = cfg[key].get<std::string>();
  };
  auto load_ll = [&](const char* key, const char* flag, long long& field) {
    if (cfg.contains(key) && untouched(flag)) field = cfg[key].get<long long>();
  };
  auto load_int = [&](const char* key, const char* flag, int& field) {
    if (cfg.contains(key) && untouched(flag)) field = cfg[key].get<int>();
  };
  auto load_dbl = [&](const char* key, const char* flag, double& field) {
    if (cfg.contains(key) && untouched(flag)) field = cfg[key].get<double>();
  };
  (void)defaults;
  load_str("mode", "--mode", opt.mode);
  load_str("algo", "--algo", opt.algo);
  load_str("gen", "--gen", opt.gen);
  load_ll("n", "--n", opt.n);
  load_str("n_grid", "--n-grid", opt.n_grid);
  load_dbl("sigma", "--sigma", opt.sigma);
  load_dbl("delta", "--delta", opt.delta);
  if (cfg.contains("beta") && untouched("--beta") && !cfg["beta"].is_null()) {
    opt.beta = cfg["beta"].get<double>();
  }
  load_str("seeds", "--seeds", opt.seeds);
  load_str("out_dir", "--out-dir", opt.out_dir);
  load_str("input", "--input", opt.input);
  load_dbl("eps", "--eps", opt.eps);
  load_dbl("offset", "--offset", opt.offset);
  load_str("levels", "--levels", opt.levels);
  load_str("breaks", "--breaks", opt.breaks);
  load_dbl("slope", "--slope", opt.slope);
  load_dbl("const_value", "--const-value", opt.const_value);
  load_int("knots", "--knots", opt.knots);
  load_dbl("gap_ratio", "--gap-ratio", opt.gap_ratio);
  load_dbl("amplitude", "--amplitude", opt.amplitude);
  load_int("threads", "--threads", opt.threads);
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  const Options defaults = opt;
  CLI::App app{"Streaming forecasting benchmark: adaptive wavelet-shrinkage "
               "restarts against tuned linear baselines"};
  app.add_option("--mode", opt.mode, "trial | sweep | estimate-sigma");
  app.add_option("--algo", opt.algo,
                 "arrows | ogd-tv | ogd-sobolev | ma-tv (comma list in sweep)");
  app.add_option("--gen", opt.gen, "doppler | hybrid | step | linear | constant");
  app.add_option("--n", opt.n, "horizon for trial / estimate-sigma");
  app.add_option("--n-grid", opt.n_grid, "comma list of horizons for sweep");
  app.add_option("--sigma", opt.sigma, "noise standard deviation");
  app.add_option("--delta", opt.delta, "confidence parameter in (0, 1]");
  app.add_option("--beta", opt.beta,
                 "shrinkage exponent override (default: 24 + 8 ln(8/delta)/ln n)");
  app.add_option("--seeds", opt.seeds, "count (seeds 0..k-1) or comma list");
  app.add_option("--out-dir", opt.out_dir, "output directory");
  app.add_option("--input", opt.input, "observation file for estimate-sigma");
  app.add_option("--eps", opt.eps, "doppler/hybrid epsilon");
  app.add_option("--offset", opt.offset, "doppler pole offset");
  app.add_option("--levels", opt.levels, "step generator levels (comma list)");
  app.add_option("--breaks", opt.breaks, "step generator breakpoints");
  app.add_option("--slope", opt.slope, "linear generator total slope");
  app.add_option("--const-value", opt.const_value, "constant generator value");
  app.add_option("--knots", opt.knots, "hybrid spline knot count");
  app.add_option("--gap-ratio", opt.gap_ratio, "hybrid spline knot-gap ratio");
  app.add_option("--amplitude", opt.amplitude, "hybrid spline amplitude");
  app.add_option("--threads", opt.threads, "sweep worker threads (0 = auto)");
  app.add_option("--config", opt.config_file,
                 "JSON config file; explicit flags win");
  CLI11_PARSE(app, argc, argv);

  try {
    apply_config_file(defaults, opt, app);
    if (opt.mode == "trial") return run_trial(opt);
    if (opt.mode == "sweep") return run_sweep(opt);
    if (opt.mode == "estimate-sigma") return run_estimate_sigma(opt);
    throw std::invalid_argument("unknown --mode: " + opt.mode +
                                " (trial|sweep|estimate-sigma)");
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 1;
  }
}
