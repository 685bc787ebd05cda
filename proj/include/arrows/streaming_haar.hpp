#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "arrows/haar.hpp"

namespace arrows::haar {

/// Shrinkage threshold lambda = sigma * sqrt(beta * ln n).
struct ThresholdConfig {
  double sigma = 1.0;
  double beta = 2.0;
  long long n = 1;

  double lambda() const {
    if (!(sigma >= 0.0)) {
      throw std::invalid_argument("ThresholdConfig: sigma must be >= 0");
    }
    if (!(beta > 0.0)) {
      throw std::invalid_argument("ThresholdConfig: beta must be > 0");
    }
    if (n < 1) {
      throw std::invalid_argument("ThresholdConfig: n must be >= 1");
    }
    return sigma * std::sqrt(beta * std::log(static_cast<double>(n)));
  }
};

/// Incremental Haar engine for the observations of one bin.
///
/// Maintains the coefficients of pad_and_recenter(raw) together with the
/// soft-thresholded restart statistic. Appending within the current pivot
/// touches only the scaling coefficient and the one wavelet per level whose
/// support contains the new position: wavelets fully inside the occupied
/// prefix are mean-invariant and wavelets past it are zero. Affected
/// coefficients are re-evaluated exactly from prefix sums, so no incremental
/// drift accumulates in them. When the count outgrows the pivot, the pivot
/// doubles and the whole transform is recomputed from scratch, which also
/// rebases the statistic; total coefficient writes stay O(n log n).
class HaarState {
 public:
  explicit HaarState(double lambda) : lambda_(lambda) {
    if (!(lambda >= 0.0)) {
      throw std::invalid_argument("HaarState: lambda must be >= 0");
    }
    prefix_.push_back(0.0);
  }

  explicit HaarState(const ThresholdConfig& config)
      : HaarState(config.lambda()) {}

  void append(double y) {
    if (!std::isfinite(y)) {
      throw std::invalid_argument("HaarState::append: non-finite observation");
    }
    raw_.push_back(y);
    prefix_.push_back(prefix_.back() + y);
    const std::size_t q = raw_.size();
    if (q > pivot_) {
      pivot_ = pivot_ == 0 ? 1 : pivot_ * 2;
      recompute_all();
      return;
    }
    const int levels = log2_exact(pivot_);
    for (int l = 0; l < levels; ++l) {
      const std::size_t support = pivot_ >> l;
      const std::size_t j = (q - 1) / support;  // 0-based within level l
      set_coef((std::size_t{1} << l) + j, detail_from_prefix(l, j));
    }
    set_scaling();
  }

  double statistic() const { return stat_; }
  double lambda() const { return lambda_; }
  std::size_t count() const { return raw_.size(); }
  std::size_t pivot() const { return pivot_; }
  double running_sum() const { return prefix_.back(); }
  double mean() const { return prefix_.back() / static_cast<double>(count()); }
  const std::vector<double>& raw() const { return raw_; }

  HaarCoefficients coeffs() const { return HaarCoefficients{alpha_}; }

  /// Instrumentation: coefficient assignments performed so far.
  std::uint64_t coefficient_writes() const { return writes_; }

 private:
  double shrunk_contribution(std::size_t idx, double value) const {
    if (idx == 0) return 0.0;
    const double mag = std::abs(value) - lambda_;
    return mag > 0.0 ? std::exp2(0.5 * level_of(idx)) * mag : 0.0;
  }

  void set_coef(std::size_t idx, double value) {
    stat_ += shrunk_contribution(idx, value) - shrunk_contribution(idx, alpha_[idx]);
    alpha_[idx] = value;
    ++writes_;
  }

  void set_scaling() {
    const std::size_t q = raw_.size();
    const double mu = prefix_[q] / static_cast<double>(q);
    alpha_[0] = (prefix_[q] - mu * static_cast<double>(q)) /
                std::sqrt(static_cast<double>(pivot_));
    ++writes_;
  }

  // Sum of the recentered-padded vector over 1-based positions [a, b].
  double segment_sum(std::size_t a, std::size_t b) const {
    const std::size_t q = raw_.size();
    const std::size_t hi = std::min(b, q);
    if (hi < a) return 0.0;
    const double mu = prefix_[q] / static_cast<double>(q);
    return (prefix_[hi] - prefix_[a - 1]) - mu * static_cast<double>(hi - a + 1);
  }

  double detail_from_prefix(int l, std::size_t j) const {
    const std::size_t support = pivot_ >> l;
    const std::size_t a = j * support + 1;
    const std::size_t mid = a + support / 2 - 1;
    return std::sqrt(static_cast<double>(std::size_t{1} << l) /
                     static_cast<double>(pivot_)) *
           (segment_sum(a, mid) - segment_sum(mid + 1, a + support - 1));
  }

  void recompute_all() {
    const HaarCoefficients fresh = haar_forward(pad_and_recenter(raw_));
    alpha_ = fresh.alpha;
    writes_ += alpha_.size();
    stat_ = 0.0;
    for (std::size_t idx = 1; idx < alpha_.size(); ++idx) {
      stat_ += shrunk_contribution(idx, alpha_[idx]);
    }
  }

  double lambda_;
  std::vector<double> raw_;
  std::vector<double> prefix_;  // prefix_[i] = raw_[0] + ... + raw_[i-1]
  std::size_t pivot_ = 0;
  std::vector<double> alpha_;
  double stat_ = 0.0;
  std::uint64_t writes_ = 0;
};

/// Convenience: append under a ThresholdConfig, which must agree with the
/// threshold the state was built with.
inline void incremental_append(HaarState& state, double y,
                               const ThresholdConfig& config) {
  if (config.lambda() != state.lambda()) {
    throw std::invalid_argument(
        "incremental_append: threshold differs from the state's threshold");
  }
  state.append(y);
}

}  // namespace arrows::haar
