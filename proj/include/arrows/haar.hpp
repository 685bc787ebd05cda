#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

namespace arrows::haar {

/// Smallest power of two >= max(x, 1).
inline std::size_t next_pow2(std::size_t x) {
  return std::bit_ceil(std::max<std::size_t>(x, 1));
}

inline bool is_pow2(std::size_t x) { return x != 0 && (x & (x - 1)) == 0; }

/// log2 of a power of two.
inline int log2_exact(std::size_t p) { return std::countr_zero(p); }

/// Level of the detail coefficient stored at array index idx >= 1.
/// Block l occupies indices [2^l, 2^{l+1}) and holds 2^l coefficients;
/// l = 0 is the coarsest detail (full-support wavelet).
inline int level_of(std::size_t idx) {
  return static_cast<int>(std::bit_width(idx)) - 1;
}

/// A re-centered observation vector zero-padded to a power-of-two length.
///
/// values[0..original_len) hold the observations minus their sample mean;
/// the remaining entries are exactly zero.
struct PaddedVector {
  std::vector<double> values;
  std::size_t original_len = 0;
  double mean = 0.0;

  std::size_t size() const { return values.size(); }
};

/// Orthonormal Haar coefficients of a length-k (power of two) vector.
///
/// alpha[0] is the scaling coefficient. Detail blocks run coarse to fine:
/// block l at indices [2^l, 2^{l+1}). The sign convention is
/// left-half-sum minus right-half-sum, scaled by sqrt(2^l / k).
struct HaarCoefficients {
  std::vector<double> alpha;

  std::size_t size() const { return alpha.size(); }
};

inline PaddedVector pad_and_recenter(std::span<const double> raw) {
  if (raw.empty()) {
    throw std::invalid_argument("pad_and_recenter: empty input");
  }
  long double sum = 0.0L;
  for (double v : raw) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("pad_and_recenter: non-finite entry");
    }
    sum += v;
  }
  PaddedVector out;
  out.original_len = raw.size();
  out.mean = static_cast<double>(sum / static_cast<long double>(raw.size()));
  out.values.assign(next_pow2(raw.size()), 0.0);
  for (std::size_t i = 0; i < raw.size(); ++i) {
    out.values[i] = raw[i] - out.mean;
  }
  return out;
}

/// Fast orthonormal Haar analysis, O(k).
inline HaarCoefficients haar_forward(const PaddedVector& x) {
  const std::size_t k = x.size();
  if (!is_pow2(k)) {
    throw std::invalid_argument("haar_forward: length must be a power of two");
  }
  HaarCoefficients out;
  out.alpha.assign(k, 0.0);
  std::vector<double> smooth(x.values.begin(), x.values.end());
  std::size_t len = k;
  int level = log2_exact(k) - 1;  // finest block first
  while (len > 1) {
    const std::size_t half = len / 2;
    for (std::size_t j = 0; j < half; ++j) {
      const double a = smooth[2 * j];
      const double b = smooth[2 * j + 1];
      out.alpha[(std::size_t{1} << level) + j] = (a - b) / std::numbers::sqrt2;
      smooth[j] = (a + b) / std::numbers::sqrt2;
    }
    len = half;
    --level;
  }
  out.alpha[0] = smooth[0];
  return out;
}

/// sign(v) * max(|v| - lambda, 0)
inline double soft_threshold_value(double v, double lambda) {
  const double mag = std::abs(v) - lambda;
  return mag > 0.0 ? std::copysign(mag, v) : 0.0;
}

inline HaarCoefficients soft_threshold(const HaarCoefficients& coeffs,
                                       double lambda) {
  if (!(lambda >= 0.0)) {
    throw std::invalid_argument("soft_threshold: lambda must be >= 0");
  }
  HaarCoefficients out = coeffs;
  for (double& v : out.alpha) {
    v = soft_threshold_value(v, lambda);
  }
  return out;
}

/// Level-weighted l1 norm of the detail blocks:
///   S = sum_l 2^{l/2} * ||shrunk[l]||_1.
/// The restart trigger compares S against sigma directly; the common
/// 1/sqrt(k) factor on both sides of the rule cancels. k == 1 has no
/// detail blocks and yields 0.
inline double restart_statistic(const HaarCoefficients& shrunk) {
  const std::size_t k = shrunk.size();
  if (k == 0) {
    throw std::invalid_argument("restart_statistic: empty coefficients");
  }
  double s = 0.0;
  for (int l = 0; (std::size_t{1} << l) < k; ++l) {
    const double w = std::exp2(0.5 * l);
    const std::size_t begin = std::size_t{1} << l;
    const std::size_t end = begin << 1;
    double block = 0.0;
    for (std::size_t idx = begin; idx < end; ++idx) {
      block += std::abs(shrunk.alpha[idx]);
    }
    s += w * block;
  }
  return s;
}

/// Robust noise-scale estimate: median absolute finest-scale Haar detail
/// coefficient, divided by the Gaussian consistency constant 0.6745.
/// The finest-scale coefficients are (y_{2i-1} - y_{2i}) / sqrt(2) over
/// disjoint pairs; a trailing unpaired observation is ignored.
inline double estimate_sigma_mad(std::span<const double> observations) {
  if (observations.size() < 2) {
    throw std::invalid_argument("estimate_sigma_mad: need at least 2 points");
  }
  std::vector<double> mags;
  mags.reserve(observations.size() / 2);
  for (std::size_t i = 0; i + 1 < observations.size(); i += 2) {
    if (!std::isfinite(observations[i]) || !std::isfinite(observations[i + 1])) {
      throw std::invalid_argument("estimate_sigma_mad: non-finite entry");
    }
    mags.push_back(std::abs(observations[i] - observations[i + 1]) /
                   std::numbers::sqrt2);
  }
  std::sort(mags.begin(), mags.end());
  const std::size_t m = mags.size();
  const double median = (m % 2 == 1)
                            ? mags[m / 2]
                            : 0.5 * (mags[m / 2 - 1] + mags[m / 2]);
  return median / 0.6745;
}

}  // namespace arrows::haar
