#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>

#include "arrows/trace.hpp"

namespace arrows::baselines {

/// Restarting online-averaging OGD with a fixed batch schedule.
struct OgdConfig {
  long long batch_size = 1;  // L
  long long n = 1;

  void validate() const {
    if (n < 1) throw std::invalid_argument("OgdConfig: n must be >= 1");
    if (batch_size < 1 || batch_size > n) {
      throw std::invalid_argument("OgdConfig: need 1 <= L <= n");
    }
  }

  std::string describe() const {
    std::ostringstream os;
    os << "ogd(n=" << n << ",L=" << batch_size << ")";
    return os.str();
  }
};

/// Moving average with a fixed window.
struct MaConfig {
  long long window = 1;  // m
  long long n = 1;

  void validate() const {
    if (n < 1) throw std::invalid_argument("MaConfig: n must be >= 1");
    if (window < 1 || window > n) {
      throw std::invalid_argument("MaConfig: need 1 <= m <= n");
    }
  }

  std::string describe() const {
    std::ostringstream os;
    os << "ma(n=" << n << ",m=" << window << ")";
    return os.str();
  }
};

namespace detail {
inline long long clamp_round(double value, long long n) {
  if (!std::isfinite(value)) value = 0.0;
  const long long r = std::llround(value);
  return std::clamp(r, 1LL, n);
}
}  // namespace detail

/// TV-class tuning: round(sqrt(n ln n) * sigma / C_n), clamped to [1, n].
inline long long ogd_batch_size_tv(long long n, double sigma, double c_n) {
  if (n < 1) throw std::invalid_argument("ogd_batch_size_tv: n must be >= 1");
  if (!(sigma >= 0.0)) {
    throw std::invalid_argument("ogd_batch_size_tv: sigma must be >= 0");
  }
  if (!(c_n > 0.0)) {
    throw std::invalid_argument("ogd_batch_size_tv: C_n must be > 0");
  }
  const double nn = static_cast<double>(n);
  return detail::clamp_round(std::sqrt(nn * std::log(nn)) * sigma / c_n, n);
}

/// Sobolev-class tuning: round(sigma^{2/3} (n ln n)^{1/3} / C'_n^{2/3}).
inline long long ogd_batch_size_sobolev(long long n, double sigma,
                                        double c_n_prime) {
  if (n < 1) {
    throw std::invalid_argument("ogd_batch_size_sobolev: n must be >= 1");
  }
  if (!(sigma >= 0.0)) {
    throw std::invalid_argument("ogd_batch_size_sobolev: sigma must be >= 0");
  }
  if (!(c_n_prime > 0.0)) {
    throw std::invalid_argument("ogd_batch_size_sobolev: C'_n must be > 0");
  }
  const double nn = static_cast<double>(n);
  const double value = std::pow(sigma, 2.0 / 3.0) *
                       std::cbrt(nn * std::log(nn)) /
                       std::pow(c_n_prime, 2.0 / 3.0);
  return detail::clamp_round(value, n);
}

/// TV-class tuning: round(sigma sqrt(n) / C_n), clamped to [1, n].
inline long long ma_window_tv(long long n, double sigma, double c_n) {
  if (n < 1) throw std::invalid_argument("ma_window_tv: n must be >= 1");
  if (!(sigma >= 0.0)) {
    throw std::invalid_argument("ma_window_tv: sigma must be >= 0");
  }
  if (!(c_n > 0.0)) {
    throw std::invalid_argument("ma_window_tv: C_n must be > 0");
  }
  return detail::clamp_round(
      sigma * std::sqrt(static_cast<double>(n)) / c_n, n);
}

/// Online averages within fixed batches of length L. At each batch start the
/// prediction is the previous observation (0 at t = 1). The restart flag at
/// step t marks that a new batch begins at t + 1.
inline TrialTrace run_ogd(const OgdConfig& config, std::span<const double> ys) {
  config.validate();
  if (static_cast<long long>(ys.size()) != config.n) {
    throw std::invalid_argument("run_ogd: |ys| must equal n");
  }
  TrialTrace trace;
  trace.algo = "ogd";
  trace.config = config.describe();
  trace.rows.reserve(ys.size());
  const long long L = config.batch_size;
  long double batch_sum = 0.0L;
  long long batch_count = 0;
  for (long long t = 1; t <= config.n; ++t) {
    TraceRow row;
    row.t = t;
    row.y = ys[t - 1];
    if ((t - 1) % L == 0) {
      row.x = t == 1 ? 0.0 : ys[t - 2];
      batch_sum = 0.0L;
      batch_count = 0;
    } else {
      row.x = static_cast<double>(batch_sum /
                                  static_cast<long double>(batch_count));
    }
    batch_sum += ys[t - 1];
    ++batch_count;
    row.restart = (t % L == 0) && t < config.n;
    trace.rows.push_back(row);
  }
  trace.num_bins = (config.n + L - 1) / L;
  return trace;
}

/// Mean of the previous m observations; an expanding mean over all past
/// observations while t <= m, and 0 at t = 1.
inline TrialTrace run_ma(const MaConfig& config, std::span<const double> ys) {
  config.validate();
  if (static_cast<long long>(ys.size()) != config.n) {
    throw std::invalid_argument("run_ma: |ys| must equal n");
  }
  TrialTrace trace;
  trace.algo = "ma";
  trace.config = config.describe();
  trace.rows.reserve(ys.size());
  const long long m = config.window;
  long double window_sum = 0.0L;
  for (long long t = 1; t <= config.n; ++t) {
    TraceRow row;
    row.t = t;
    row.y = ys[t - 1];
    if (t == 1) {
      row.x = 0.0;
    } else {
      const long long width = std::min(t - 1, m);
      row.x = static_cast<double>(window_sum /
                                  static_cast<long double>(width));
    }
    window_sum += ys[t - 1];
    if (t > m) window_sum -= ys[t - 1 - m];
    trace.rows.push_back(row);
  }
  trace.num_bins = 0;
  return trace;
}

}  // namespace arrows::baselines
