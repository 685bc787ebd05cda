#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "arrows/trace.hpp"

namespace arrows::eval {

/// Fills theta and loss = (x - theta)^2 on every row.
inline void score_against(TrialTrace& trace, std::span<const double> theta) {
  if (theta.size() != trace.rows.size()) {
    throw std::invalid_argument("score_against: theta length != trace length");
  }
  long double total = 0.0L;
  for (std::size_t i = 0; i < trace.rows.size(); ++i) {
    TraceRow& row = trace.rows[i];
    row.theta = theta[i];
    const double err = row.x - row.theta;
    row.loss = err * err;
    total += row.loss;
  }
  trace.total_loss = static_cast<double>(total);
  trace.scored = true;
}

/// Cumulative squared error; under quadratic loss the comparator term is 0,
/// so this is the dynamic regret.
inline double dynamic_regret(const TrialTrace& trace) {
  if (!trace.scored) {
    throw std::invalid_argument("dynamic_regret: trace not scored yet");
  }
  long double total = 0.0L;
  for (const TraceRow& row : trace.rows) total += row.loss;
  return static_cast<double>(total);
}

struct ScalingRow {
  long long n = 0;
  double mean_regret = 0.0;
};

/// Least-squares slope of ln(regret) against ln(n).
inline double scaling_slope(std::span<const ScalingRow> rows) {
  if (rows.size() < 3) {
    throw std::invalid_argument("scaling_slope: need at least 3 rows");
  }
  long long prev_n = 0;
  for (const ScalingRow& row : rows) {
    if (row.n <= prev_n) {
      throw std::invalid_argument("scaling_slope: n must be strictly increasing");
    }
    if (!(row.mean_regret > 0.0)) {
      throw std::invalid_argument("scaling_slope: regrets must be positive");
    }
    prev_n = row.n;
  }
  long double sx = 0.0L, sy = 0.0L, sxx = 0.0L, sxy = 0.0L;
  for (const ScalingRow& row : rows) {
    const long double x = std::log(static_cast<long double>(row.n));
    const long double y = std::log(static_cast<long double>(row.mean_regret));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const long double count = static_cast<long double>(rows.size());
  return static_cast<double>((count * sxy - sx * sy) /
                             (count * sxx - sx * sx));
}

/// Aggregate over seeds of one (algo, config, n) cell.
struct RegretReport {
  std::string algo;
  std::string config;
  long long n = 0;
  std::size_t num_trials = 0;
  double mean_regret = 0.0;
  double std_regret = 0.0;  // sample std; 0 for a single trial
  double mean_bins = 0.0;
  double wallclock_ms = 0.0;
};

inline RegretReport aggregate_seeds(std::span<const TrialTrace> traces) {
  if (traces.empty()) {
    throw std::invalid_argument("aggregate_seeds: no traces");
  }
  const TrialTrace& first = traces.front();
  for (const TrialTrace& t : traces) {
    if (t.algo != first.algo || t.config != first.config ||
        t.n() != first.n()) {
      throw std::invalid_argument("aggregate_seeds: heterogeneous traces");
    }
  }
  RegretReport report;
  report.algo = first.algo;
  report.config = first.config;
  report.n = first.n();
  report.num_trials = traces.size();
  long double sum = 0.0L, bins = 0.0L;
  std::vector<double> regrets;
  regrets.reserve(traces.size());
  for (const TrialTrace& t : traces) {
    regrets.push_back(dynamic_regret(t));
    sum += regrets.back();
    bins += static_cast<long double>(t.num_bins);
  }
  report.mean_regret = static_cast<double>(sum / regrets.size());
  report.mean_bins = static_cast<double>(bins / regrets.size());
  if (regrets.size() > 1) {
    long double ss = 0.0L;
    for (double r : regrets) {
      const long double d = r - report.mean_regret;
      ss += d * d;
    }
    report.std_regret =
        static_cast<double>(std::sqrt(static_cast<double>(ss / (regrets.size() - 1))));
  }
  return report;
}

}  // namespace arrows::eval
