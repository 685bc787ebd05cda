#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "arrows/sequences.hpp"

using namespace arrows;
using Catch::Approx;

namespace {

void check_norm_bookkeeping(const seq::GroundTruth& g) {
  REQUIRE(g.tv == Approx(seq::total_variation(g.theta)).margin(1e-9));
  REQUIRE(g.sobolev == Approx(seq::sobolev_norm(g.theta)).margin(1e-9));
  REQUIRE(g.sup == Approx(seq::sup_norm(g.theta)).margin(1e-9));
  // embedding chain ||D theta||_2 <= ||D theta||_1 <= sqrt(n-1) ||D theta||_2
  REQUIRE(g.sobolev <= g.tv + 1e-12);
  if (g.n() > 1) {
    REQUIRE(g.tv <=
            std::sqrt(double(g.n() - 1)) * g.sobolev + 1e-9);
  }
}

}  // namespace

TEST_CASE("doppler generator hits the worked values") {
  const auto g = seq::gen_doppler(1, 0.0, 0.38);
  REQUIRE(g.theta.size() == 1);
  REQUIRE(g.theta[0] == Approx(-0.9873296559154696).margin(1e-12));

  const auto big = seq::gen_doppler(5000, 0.05, 0.38);
  for (double v : big.theta) REQUIRE(std::abs(v) <= 1.0);
  check_norm_bookkeeping(big);

  REQUIRE_THROWS_AS(seq::gen_doppler(10, 0.05, 0.0), std::invalid_argument);
  REQUIRE_THROWS_AS(seq::gen_doppler(10, 0.05, -1.0), std::invalid_argument);
  REQUIRE_THROWS_AS(seq::gen_doppler(0, 0.05, 0.38), std::invalid_argument);
}

TEST_CASE("doppler offset 0.01 norm ratios at the benchmark scales") {
  // Deterministic characterization of the generator family: the ratio
  // ||D theta||_2 / ||D theta||_1 follows ~0.64 / sqrt(n * offset).
  const auto big = seq::gen_doppler(1 << 17, 0.05, 0.01);
  check_norm_bookkeeping(big);
  REQUIRE(big.sobolev / big.tv == Approx(0.0178).margin(0.002));

  const auto small = seq::gen_doppler(1 << 13, 0.05, 0.01);
  REQUIRE(small.sobolev / small.tv == Approx(0.0519).margin(0.004));
}

TEST_CASE("step generator sums its jumps") {
  {
    const auto g = seq::gen_step(10, std::vector<double>{4.0},
                                 std::vector<long long>{});
    REQUIRE(g.tv == 0.0);
    for (double v : g.theta) REQUIRE(v == 4.0);
  }
  {
    const auto g = seq::gen_step(10, std::vector<double>{0.0, 1.0},
                                 std::vector<long long>{5});
    REQUIRE(g.tv == Approx(1.0));
    REQUIRE(g.theta[3] == 0.0);
    REQUIRE(g.theta[4] == 1.0);  // level switches at the breakpoint index
  }
  {
    const auto g = seq::gen_step(9, std::vector<double>{0.0, 3.0, 1.0},
                                 std::vector<long long>{3, 6});
    REQUIRE(g.tv == Approx(5.0));  // |3-0| + |1-3|
    check_norm_bookkeeping(g);
  }
  REQUIRE_THROWS_AS(seq::gen_step(10, std::vector<double>{0.0, 1.0},
                                  std::vector<long long>{}),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(seq::gen_step(10, std::vector<double>{0.0, 1.0, 2.0},
                                  std::vector<long long>{7, 4}),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(seq::gen_step(10, std::vector<double>{0.0, 1.0},
                                  std::vector<long long>{11}),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(seq::gen_step(10, std::vector<double>{},
                                  std::vector<long long>{}),
                    std::invalid_argument);
}

TEST_CASE("linear generator has tv equal to the total slope") {
  {
    const auto g = seq::gen_linear(7, 0.0);
    REQUIRE(g.tv == 0.0);
    for (double v : g.theta) REQUIRE(v == 0.0);
  }
  {
    const auto g = seq::gen_linear(5, 2.0);
    REQUIRE(g.theta == std::vector<double>{0.0, 0.5, 1.0, 1.5, 2.0});
    REQUIRE(g.tv == Approx(2.0));
  }
  for (double slope : {-3.5, 0.25, 11.0}) {
    const auto g = seq::gen_linear(100, slope);
    REQUIRE(g.tv == Approx(std::abs(slope)).margin(1e-12));
    check_norm_bookkeeping(g);
  }
  REQUIRE_THROWS_AS(seq::gen_linear(1, 2.0), std::invalid_argument);
}

TEST_CASE("hybrid generator: bounded doppler half, additive tv, gated range") {
  const long long n = 1 << 14;
  const auto g = seq::gen_hybrid(n);
  check_norm_bookkeeping(g);
  const long long half = n / 2;
  for (long long i = half; i < n; ++i) REQUIRE(std::abs(g.theta[i]) <= 1.0);

  // tv of a concatenation: first half + junction jump + second half
  const double tv_first = seq::total_variation(
      std::span<const double>(g.theta).subspan(0, half));
  const double tv_second = seq::total_variation(
      std::span<const double>(g.theta).subspan(half));
  const double jump = std::abs(g.theta[half] - g.theta[half - 1]);
  REQUIRE(g.tv == Approx(tv_first + jump + tv_second).margin(1e-9));

  // recorded tv for the default parametrization sits inside the gate
  REQUIRE(g.tv > 10.0);
  REQUIRE(g.tv < 25.0);

  REQUIRE_THROWS_AS(seq::gen_hybrid(3), std::invalid_argument);
  REQUIRE_THROWS_AS(seq::gen_hybrid(100, {1, 0.7, 1.0}), std::invalid_argument);
  REQUIRE_THROWS_AS(seq::gen_hybrid(100, {8, 0.0, 1.0}), std::invalid_argument);
}

TEST_CASE("noise channel is seeded and exact at sigma zero") {
  const auto g = seq::gen_linear(64, 1.0);
  const auto clean = seq::add_noise(g, {0.0, 99});
  REQUIRE(clean == g.theta);

  const auto a = seq::add_noise(g, {1.5, 42});
  const auto b = seq::add_noise(g, {1.5, 42});
  REQUIRE(a == b);
  const auto c = seq::add_noise(g, {1.5, 43});
  REQUIRE(a != c);
}

TEST_CASE("noise empirical scale matches sigma within two percent") {
  const long long n = 100000;
  const double sigma = 2.0;
  const auto g = seq::gen_step(n, std::vector<double>{0.0},
                               std::vector<long long>{});
  const auto ys = seq::add_noise(g, {sigma, 7});
  long double sum = 0.0L, ss = 0.0L;
  for (long long i = 0; i < n; ++i) {
    const double z = ys[i] - g.theta[i];
    sum += z;
    ss += static_cast<long double>(z) * z;
  }
  const double mean = double(sum / n);
  const double sd = std::sqrt(double(ss / n) - mean * mean);
  REQUIRE(sd == Approx(sigma).epsilon(0.02));
}
