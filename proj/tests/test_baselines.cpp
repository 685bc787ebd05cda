#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "arrows/baselines.hpp"

using namespace arrows;
using Catch::Approx;

namespace {

std::vector<double> predictions(const TrialTrace& trace) {
  std::vector<double> out;
  out.reserve(trace.rows.size());
  for (const auto& row : trace.rows) out.push_back(row.x);
  return out;
}

}  // namespace

TEST_CASE("tuned sizes match the closed forms") {
  REQUIRE(baselines::ogd_batch_size_tv(10000, 1.0, 1.0) == 303);
  REQUIRE(baselines::ma_window_tv(10000, 1.0, 1.0) == 100);
  REQUIRE(baselines::ogd_batch_size_sobolev(10000, 1.0, 1.0) == 45);
}

TEST_CASE("tuned sizes clamp to [1, n]") {
  REQUIRE(baselines::ogd_batch_size_tv(100, 0.0, 1.0) == 1);
  REQUIRE(baselines::ogd_batch_size_sobolev(100, 0.0, 1.0) == 1);
  REQUIRE(baselines::ogd_batch_size_tv(100, 1.0, 1e9) == 1);
  REQUIRE(baselines::ogd_batch_size_sobolev(100, 1.0, 1e9) == 1);
  REQUIRE(baselines::ma_window_tv(100, 1.0, 1e9) == 1);
  REQUIRE(baselines::ma_window_tv(4, 2.0, 1.0) == 4);  // ceiling clamp
  REQUIRE_THROWS_AS(baselines::ogd_batch_size_tv(100, 1.0, 0.0),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(baselines::ogd_batch_size_sobolev(100, 1.0, -1.0),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(baselines::ma_window_tv(100, 1.0, 0.0),
                    std::invalid_argument);
}

TEST_CASE("run_ogd plays batch online averages") {
  {
    const std::vector<double> ys(5, 7.0);
    const auto trace = baselines::run_ogd({5, 5}, ys);
    REQUIRE(predictions(trace) == std::vector<double>{0.0, 7.0, 7.0, 7.0, 7.0});
    REQUIRE(trace.num_bins == 1);
  }
  {
    const std::vector<double> ys{1.0, 3.0, 5.0, 7.0};
    const auto trace = baselines::run_ogd({1, 4}, ys);
    REQUIRE(predictions(trace) == std::vector<double>{0.0, 1.0, 3.0, 5.0});
  }
  {
    const std::vector<double> ys{1.0, 3.0, 5.0, 7.0};
    const auto trace = baselines::run_ogd({2, 4}, ys);
    REQUIRE(predictions(trace) == std::vector<double>{0.0, 1.0, 3.0, 5.0});
    REQUIRE(trace.num_bins == 2);
  }
  REQUIRE_THROWS_AS(baselines::run_ogd({2, 4}, std::vector<double>{1.0}),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(baselines::run_ogd({0, 4}, std::vector<double>(4, 0.0)),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(baselines::run_ogd({5, 4}, std::vector<double>(4, 0.0)),
                    std::invalid_argument);
}

TEST_CASE("run_ma plays window means with an expanding warm-up") {
  {
    const std::vector<double> ys{2.0, 4.0, 6.0};
    const auto trace = baselines::run_ma({1, 3}, ys);
    REQUIRE(predictions(trace) == std::vector<double>{0.0, 2.0, 4.0});
  }
  {
    const std::vector<double> ys{2.0, 4.0, 6.0};
    const auto trace = baselines::run_ma({2, 3}, ys);
    REQUIRE(predictions(trace) == std::vector<double>{0.0, 2.0, 3.0});
  }
  {
    const std::vector<double> ys(6, 2.5);
    const auto trace = baselines::run_ma({3, 6}, ys);
    const auto x = predictions(trace);
    REQUIRE(x[0] == 0.0);
    for (std::size_t i = 1; i < x.size(); ++i) REQUIRE(x[i] == Approx(2.5));
  }
  REQUIRE_THROWS_AS(baselines::run_ma({2, 4}, std::vector<double>{1.0}),
                    std::invalid_argument);
}

TEST_CASE("both baselines are exactly linear forecasters") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> val(-4.0, 4.0);
  const long long n = 512;
  std::vector<double> ya(n), yb(n), mix(n);
  for (long long i = 0; i < n; ++i) {
    ya[i] = val(rng);
    yb[i] = val(rng);
  }
  const double a = 1.7, b = -0.6;
  for (long long i = 0; i < n; ++i) mix[i] = a * ya[i] + b * yb[i];

  {
    const baselines::OgdConfig cfg{7, n};
    const auto xa = predictions(baselines::run_ogd(cfg, ya));
    const auto xb = predictions(baselines::run_ogd(cfg, yb));
    const auto xm = predictions(baselines::run_ogd(cfg, mix));
    for (long long i = 0; i < n; ++i) {
      REQUIRE(xm[i] == Approx(a * xa[i] + b * xb[i]).margin(1e-12));
    }
  }
  {
    const baselines::MaConfig cfg{9, n};
    const auto xa = predictions(baselines::run_ma(cfg, ya));
    const auto xb = predictions(baselines::run_ma(cfg, yb));
    const auto xm = predictions(baselines::run_ma(cfg, mix));
    for (long long i = 0; i < n; ++i) {
      REQUIRE(xm[i] == Approx(a * xa[i] + b * xb[i]).margin(1e-12));
    }
  }
}

TEST_CASE("ma incremental window matches a from-scratch mean") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> val(0.0, 10.0);  // same-sign drift
  const long long n = 5000, m = 37;
  std::vector<double> ys(n);
  for (double& v : ys) v = val(rng);
  const auto x = predictions(baselines::run_ma({m, n}, ys));
  for (long long t = 2; t <= n; ++t) {
    const long long lo = std::max<long long>(0, t - 1 - m);
    long double s = 0.0L;
    for (long long i = lo; i < t - 1; ++i) s += ys[i];
    const double want = static_cast<double>(s / (t - 1 - lo));
    REQUIRE(x[t - 1] == Approx(want).margin(1e-12));
  }
}

TEST_CASE("ogd batch boundaries ignore the observations") {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> val(-9.0, 9.0);
  const long long n = 100, L = 7;
  std::vector<double> ya(n), yb(n);
  for (long long i = 0; i < n; ++i) {
    ya[i] = val(rng);
    yb[i] = val(rng);
  }
  const auto ta = baselines::run_ogd({L, n}, ya);
  const auto tb = baselines::run_ogd({L, n}, yb);
  for (long long i = 0; i < n; ++i) {
    REQUIRE(ta.rows[i].restart == tb.rows[i].restart);
    const long long t = i + 1;
    REQUIRE(ta.rows[i].restart == (t % L == 0 && t < n));
  }
}
