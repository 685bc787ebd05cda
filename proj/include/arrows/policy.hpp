#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "arrows/errors.hpp"
#include "arrows/streaming_haar.hpp"
#include "arrows/trace.hpp"

namespace arrows::policy {

/// Forecaster inputs: horizon n, noise scale sigma, confidence delta.
/// The effective shrinkage exponent is beta_override when present, else
/// 24 + 8 ln(8/delta) / ln(n).
struct ArrowsConfig {
  long long n = 1;
  double sigma = 1.0;
  double delta = 0.1;
  std::optional<double> beta_override;

  void validate() const {
    if (n < 1) throw std::invalid_argument("ArrowsConfig: n must be >= 1");
    if (!(sigma >= 0.0)) {
      throw std::invalid_argument("ArrowsConfig: sigma must be >= 0");
    }
    if (!(delta > 0.0 && delta <= 1.0)) {
      throw std::invalid_argument("ArrowsConfig: delta must be in (0, 1]");
    }
    if (beta_override && !(*beta_override > 0.0)) {
      throw std::invalid_argument("ArrowsConfig: beta_override must be > 0");
    }
  }

  /// beta * ln(n). The default beta expands to 24 ln n + 8 ln(8/delta),
  /// which stays well defined at n == 1 where the ratio form does not.
  double beta_log_n() const {
    const double log_n = std::log(static_cast<double>(n));
    if (beta_override) return *beta_override * log_n;
    return 24.0 * log_n + 8.0 * std::log(8.0 / delta);
  }

  /// Shrinkage threshold lambda = sigma * sqrt(beta * ln n).
  double lambda() const { return sigma * std::sqrt(beta_log_n()); }

  /// Effective beta; unavailable for the default formula at n == 1.
  std::optional<double> effective_beta() const {
    if (beta_override) return beta_override;
    if (n == 1) return std::nullopt;
    const double log_n = std::log(static_cast<double>(n));
    return 24.0 + 8.0 * std::log(8.0 / delta) / log_n;
  }

  std::string describe() const {
    std::ostringstream os;
    os << "arrows(n=" << n << ",sigma=" << sigma << ",delta=" << delta;
    if (beta_override) os << ",beta=" << *beta_override;
    os << ")";
    return os.str();
  }
};

struct StepOutcome {
  bool restarted = false;
  double statistic = 0.0;
};

struct BinInterval {
  long long start = 0;
  long long end = 0;
};

/// The online forecaster: predicts the previous observation at a bin start
/// and the bin's running average otherwise; a restart closes the bin when
/// the shrunk statistic exceeds sigma. predict/observe alternate strictly.
class ArrowsForecaster {
 public:
  explicit ArrowsForecaster(ArrowsConfig config)
      : config_(config), lambda_(config.lambda()), haar_(config.lambda()) {
    config_.validate();
    // sigma == 0 makes the trigger "statistic > 0"; permitted, but outside
    // the theory's sigma > 0 assumption.
    sigma_zero_warning_ = config_.sigma == 0.0;
  }

  /// Prediction for the current step. Depends only on the configuration and
  /// the observations seen so far; only protocol bookkeeping is touched.
  double predict() const {
    if (awaiting_observe_) {
      throw protocol_error("predict: called twice without an observe");
    }
    if (t_ > config_.n) {
      throw horizon_error("predict: past the declared horizon");
    }
    awaiting_observe_ = true;
    if (new_bin_) return last_y_;
    return static_cast<double>(bin_sum_ /
                               static_cast<long double>(t_ - bin_start_));
  }

  StepOutcome observe(double y) {
    if (!awaiting_observe_) {
      throw protocol_error("observe: no preceding predict for this step");
    }
    if (t_ > config_.n) {
      throw horizon_error("observe: past the declared horizon");
    }
    if (!std::isfinite(y)) {
      throw std::invalid_argument("observe: non-finite observation");
    }
    awaiting_observe_ = false;
    new_bin_ = false;
    haar_.append(y);
    bin_sum_ += y;
    const double stat = haar_.statistic();
    StepOutcome out{stat > config_.sigma, stat};
    if (out.restarted) {
      closed_bins_.push_back({bin_start_, t_});
      bin_start_ = t_ + 1;
      new_bin_ = true;
      haar_ = haar::HaarState(lambda_);
      bin_sum_ = 0.0L;
    }
    last_y_ = y;
    ++t_;
    return out;
  }

  const ArrowsConfig& config() const { return config_; }
  double lambda() const { return lambda_; }
  long long current_time() const { return t_; }
  long long bin_start() const { return bin_start_; }
  bool in_new_bin() const { return new_bin_; }
  bool sigma_zero_warning() const { return sigma_zero_warning_; }
  const haar::HaarState& haar_state() const { return haar_; }
  const std::vector<BinInterval>& closed_bins() const { return closed_bins_; }

  /// Bins so far, including the open one when it holds any observation.
  long long num_bins() const {
    return static_cast<long long>(closed_bins_.size()) +
           (bin_start_ < t_ ? 1 : 0);
  }

  /// Closed bins plus the final open bin; after a full horizon these
  /// partition [1, n].
  std::vector<BinInterval> bins() const {
    std::vector<BinInterval> out = closed_bins_;
    if (bin_start_ < t_) out.push_back({bin_start_, t_ - 1});
    return out;
  }

 private:
  ArrowsConfig config_;
  double lambda_ = 0.0;
  haar::HaarState haar_;
  long long t_ = 1;
  long long bin_start_ = 1;
  bool new_bin_ = true;
  mutable bool awaiting_observe_ = false;
  double last_y_ = 0.0;  // y_0 = 0
  long double bin_sum_ = 0.0L;
  bool sigma_zero_warning_ = false;
  std::vector<BinInterval> closed_bins_;
};

/// Drives a fresh forecaster across the whole horizon. theta and loss stay
/// unscored; evaluation fills them downstream.
inline TrialTrace run_horizon(ArrowsForecaster& forecaster,
                              std::span<const double> ys) {
  const long long n = forecaster.config().n;
  if (static_cast<long long>(ys.size()) != n) {
    throw std::invalid_argument("run_horizon: |ys| must equal the horizon n");
  }
  if (forecaster.current_time() != 1) {
    throw std::invalid_argument("run_horizon: forecaster must be fresh");
  }
  TrialTrace trace;
  trace.algo = "arrows";
  trace.config = forecaster.config().describe();
  trace.rows.reserve(ys.size());
  for (long long t = 1; t <= n; ++t) {
    const double x = forecaster.predict();
    const StepOutcome outcome = forecaster.observe(ys[t - 1]);
    TraceRow row;
    row.t = t;
    row.y = ys[t - 1];
    row.x = x;
    row.restart = outcome.restarted;
    trace.rows.push_back(row);
  }
  trace.num_bins = forecaster.num_bins();
  return trace;
}

inline TrialTrace run_horizon(ArrowsConfig config, std::span<const double> ys) {
  ArrowsForecaster forecaster(config);
  return run_horizon(forecaster, ys);
}

}  // namespace arrows::policy
