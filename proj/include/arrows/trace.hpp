#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace arrows {

/// One step of a trial. theta and loss stay NaN until the trace is scored
/// against a ground truth. restart is true when a restart fired after this
/// step's observation (for OGD runs: a new batch starts at t+1).
struct TraceRow {
  long long t = 0;
  double theta = std::numeric_limits<double>::quiet_NaN();
  double y = 0.0;
  double x = 0.0;
  double loss = std::numeric_limits<double>::quiet_NaN();
  bool restart = false;
};

struct TrialTrace {
  std::string algo;
  std::string config;  // resolved configuration snapshot
  std::uint64_t seed = 0;
  long long num_bins = 0;
  std::vector<TraceRow> rows;
  bool scored = false;
  double total_loss = std::numeric_limits<double>::quiet_NaN();

  long long n() const { return static_cast<long long>(rows.size()); }
};

}  // namespace arrows
