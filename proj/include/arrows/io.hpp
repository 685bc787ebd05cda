#pragma once

#include <cstdio>
#include <fstream>
#include <span>
#include <stdexcept>
#include <string>

#include "arrows/trace.hpp"

namespace arrows::io {

/// 17 significant digits, '.' decimal point, locale-free: round-trippable.
inline std::string fmt_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

/// trace.csv columns: t,theta,y,x,loss,restart (restart in {0,1}).
inline void write_trace_csv(const std::string& path, const TrialTrace& trace) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << "t,theta,y,x,loss,restart\n";
  for (const TraceRow& row : trace.rows) {
    out << row.t << ',' << fmt_real(row.theta) << ',' << fmt_real(row.y)
        << ',' << fmt_real(row.x) << ',' << fmt_real(row.loss) << ','
        << (row.restart ? 1 : 0) << '\n';
  }
  if (!out.flush()) throw std::runtime_error("failed writing: " + path);
}

struct SweepRow {
  std::string algo;
  long long n = 0;
  std::uint64_t seed = 0;
  double regret = 0.0;
  long long bins = 0;
  double wallclock_ms = 0.0;
};

/// scaling.csv columns: algo,n,seed,regret,bins,wallclock_ms.
inline void write_scaling_csv(const std::string& path,
                              std::span<const SweepRow> rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << "algo,n,seed,regret,bins,wallclock_ms\n";
  for (const SweepRow& row : rows) {
    out << row.algo << ',' << row.n << ',' << row.seed << ','
        << fmt_real(row.regret) << ',' << row.bins << ','
        << fmt_real(row.wallclock_ms) << '\n';
  }
  if (!out.flush()) throw std::runtime_error("failed writing: " + path);
}

}  // namespace arrows::io
