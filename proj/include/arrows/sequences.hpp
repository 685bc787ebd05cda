#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace arrows::seq {

/// A ground-truth sequence with its exact norm bookkeeping:
/// tv = ||D theta||_1, sobolev = ||D theta||_2, sup = max |theta_i|.
struct GroundTruth {
  std::vector<double> theta;
  double tv = 0.0;
  double sobolev = 0.0;
  double sup = 0.0;
  std::string label;

  long long n() const { return static_cast<long long>(theta.size()); }
};

inline double total_variation(std::span<const double> theta) {
  long double tv = 0.0L;
  for (std::size_t i = 1; i < theta.size(); ++i) {
    tv += std::abs(theta[i] - theta[i - 1]);
  }
  return static_cast<double>(tv);
}

inline double sobolev_norm(std::span<const double> theta) {
  long double s = 0.0L;
  for (std::size_t i = 1; i < theta.size(); ++i) {
    const double d = theta[i] - theta[i - 1];
    s += static_cast<long double>(d) * d;
  }
  return static_cast<double>(std::sqrt(static_cast<double>(s)));
}

inline double sup_norm(std::span<const double> theta) {
  double s = 0.0;
  for (double v : theta) s = std::max(s, std::abs(v));
  return s;
}

inline GroundTruth finalize(std::vector<double> theta, std::string label) {
  GroundTruth g;
  g.tv = total_variation(theta);
  g.sobolev = sobolev_norm(theta);
  g.sup = sup_norm(theta);
  g.theta = std::move(theta);
  g.label = std::move(label);
  return g;
}

/// theta_i = sin(2 pi (1 + eps) / (i/n + offset)), i = 1..n.
inline GroundTruth gen_doppler(long long n, double eps = 0.05,
                               double offset = 0.38) {
  if (n < 1) throw std::invalid_argument("gen_doppler: n must be >= 1");
  if (!(offset > 0.0)) {
    throw std::invalid_argument("gen_doppler: offset must be > 0");
  }
  std::vector<double> theta(static_cast<std::size_t>(n));
  const double nn = static_cast<double>(n);
  for (long long i = 1; i <= n; ++i) {
    theta[i - 1] = std::sin(2.0 * std::numbers::pi * (1.0 + eps) /
                            (static_cast<double>(i) / nn + offset));
  }
  std::ostringstream label;
  label << "doppler(n=" << n << ",eps=" << eps << ",offset=" << offset << ")";
  return finalize(std::move(theta), label.str());
}

/// Piecewise-constant trend. breakpoints[j] is the first index (1-based) at
/// which levels[j + 1] applies; levels[0] covers the prefix.
inline GroundTruth gen_step(long long n, std::span<const double> levels,
                            std::span<const long long> breakpoints) {
  if (n < 1) throw std::invalid_argument("gen_step: n must be >= 1");
  if (levels.empty()) throw std::invalid_argument("gen_step: no levels");
  if (breakpoints.size() != levels.size() - 1) {
    throw std::invalid_argument("gen_step: need one breakpoint per level change");
  }
  long long prev = 0;
  for (long long b : breakpoints) {
    if (b <= prev || b < 1 || b > n) {
      throw std::invalid_argument("gen_step: breakpoints must be strictly "
                                  "increasing within [1, n]");
    }
    prev = b;
  }
  std::vector<double> theta(static_cast<std::size_t>(n));
  std::size_t seg = 0;
  for (long long i = 1; i <= n; ++i) {
    while (seg < breakpoints.size() && i >= breakpoints[seg]) ++seg;
    theta[i - 1] = levels[seg];
  }
  std::ostringstream label;
  label << "step(n=" << n << ",levels=" << levels.size() << ")";
  return finalize(std::move(theta), label.str());
}

/// theta_i = slope_total * (i - 1) / (n - 1); tv = |slope_total|.
inline GroundTruth gen_linear(long long n, double slope_total) {
  if (n < 2) throw std::invalid_argument("gen_linear: n must be >= 2");
  std::vector<double> theta(static_cast<std::size_t>(n));
  for (long long i = 1; i <= n; ++i) {
    theta[i - 1] = slope_total * static_cast<double>(i - 1) /
                   static_cast<double>(n - 1);
  }
  std::ostringstream label;
  label << "linear(n=" << n << ",slope=" << slope_total << ")";
  return finalize(std::move(theta), label.str());
}

namespace detail {

/// Natural cubic spline through (x_j, v_j): second derivative zero at both
/// ends, tridiagonal solve for the interior curvatures.
class NaturalCubicSpline {
 public:
  NaturalCubicSpline(std::vector<double> xs, std::vector<double> vs)
      : xs_(std::move(xs)), vs_(std::move(vs)) {
    const std::size_t k = xs_.size();
    if (k < 2 || vs_.size() != k) {
      throw std::invalid_argument("NaturalCubicSpline: need >= 2 knots");
    }
    for (std::size_t j = 1; j < k; ++j) {
      if (!(xs_[j] > xs_[j - 1])) {
        throw std::invalid_argument("NaturalCubicSpline: knots must increase");
      }
    }
    m_.assign(k, 0.0);
    if (k == 2) return;
    // Thomas algorithm on the interior second-derivative system.
    const std::size_t interior = k - 2;
    std::vector<double> diag(interior), rhs(interior), upper(interior, 0.0);
    for (std::size_t j = 0; j < interior; ++j) {
      const double h0 = xs_[j + 1] - xs_[j];
      const double h1 = xs_[j + 2] - xs_[j + 1];
      diag[j] = 2.0 * (h0 + h1);
      upper[j] = h1;
      rhs[j] = 6.0 * ((vs_[j + 2] - vs_[j + 1]) / h1 -
                      (vs_[j + 1] - vs_[j]) / h0);
    }
    for (std::size_t j = 1; j < interior; ++j) {
      const double lower = xs_[j + 1] - xs_[j];
      const double w = lower / diag[j - 1];
      diag[j] -= w * upper[j - 1];
      rhs[j] -= w * rhs[j - 1];
    }
    m_[interior] = rhs[interior - 1] / diag[interior - 1];
    for (std::size_t j = interior - 1; j >= 1; --j) {
      m_[j] = (rhs[j - 1] - upper[j - 1] * m_[j + 1]) / diag[j - 1];
    }
  }

  double eval(double x) const {
    const std::size_t k = xs_.size();
    std::size_t j = 0;
    while (j + 2 < k && x > xs_[j + 1]) ++j;
    const double h = xs_[j + 1] - xs_[j];
    const double a = (xs_[j + 1] - x) / h;
    const double b = (x - xs_[j]) / h;
    return a * vs_[j] + b * vs_[j + 1] +
           ((a * a * a - a) * m_[j] + (b * b * b - b) * m_[j + 1]) *
               (h * h) / 6.0;
  }

 private:
  std::vector<double> xs_, vs_, m_;
};

}  // namespace detail

/// Spline half of the hybrid signal: knots at geometrically shrinking gaps
/// toward the midpoint, control values alternating +-amplitude.
struct HybridSplineParams {
  int knots = 8;
  double gap_ratio = 0.7;
  double amplitude = 1.0;
};

/// First floor(n/2) points from the natural cubic spline, the rest from the
/// Doppler family with offset 0.38 rescaled to the half-interval.
inline GroundTruth gen_hybrid(long long n, HybridSplineParams params = {},
                              double doppler_eps = 0.05) {
  if (n < 4) throw std::invalid_argument("gen_hybrid: n must be >= 4");
  if (params.knots < 2) {
    throw std::invalid_argument("gen_hybrid: need at least 2 knots");
  }
  if (!(params.gap_ratio > 0.0)) {
    throw std::invalid_argument("gen_hybrid: gap_ratio must be > 0");
  }
  const long long half = n / 2;
  std::vector<double> xs(static_cast<std::size_t>(params.knots));
  std::vector<double> vs(static_cast<std::size_t>(params.knots));
  double cum = 0.0;
  std::vector<double> gaps(static_cast<std::size_t>(params.knots - 1));
  for (std::size_t j = 0; j < gaps.size(); ++j) {
    gaps[j] = std::pow(params.gap_ratio, static_cast<double>(j));
    cum += gaps[j];
  }
  xs[0] = 0.0;
  for (std::size_t j = 0; j < gaps.size(); ++j) {
    xs[j + 1] = xs[j] + gaps[j] / cum;
  }
  xs.back() = 1.0;
  for (std::size_t j = 0; j < vs.size(); ++j) {
    vs[j] = (j % 2 == 0) ? params.amplitude : -params.amplitude;
  }
  detail::NaturalCubicSpline spline(xs, vs);

  std::vector<double> theta(static_cast<std::size_t>(n));
  for (long long i = 1; i <= half; ++i) {
    const double x = static_cast<double>(i - 1) / static_cast<double>(half - 1);
    theta[i - 1] = spline.eval(x);
  }
  const double rest = static_cast<double>(n - half);
  for (long long i = half + 1; i <= n; ++i) {
    const double s = static_cast<double>(i - half) / rest;
    theta[i - 1] = std::sin(2.0 * std::numbers::pi * (1.0 + doppler_eps) /
                            (s + 0.38));
  }
  std::ostringstream label;
  label << "hybrid(n=" << n << ",knots=" << params.knots
        << ",ratio=" << params.gap_ratio << ",amp=" << params.amplitude
        << ",eps=" << doppler_eps << ")";
  return finalize(std::move(theta), label.str());
}

/// Seeded noise channel. kind is an extension point; only Gaussian noise is
/// generated today.
struct NoiseSpec {
  enum class Kind { gaussian };
  double sigma = 1.0;
  std::uint64_t seed = 0;
  Kind kind = Kind::gaussian;
};

/// Deterministic standard-Gaussian stream: mt19937_64 driving Box-Muller.
/// Uniforms are (counter + 0.5) * 2^-53 over the top 53 bits, so the log
/// never sees zero. Identical seeds give identical streams on any platform.
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed) : engine_(seed) {}

  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(angle);
    have_spare_ = true;
    return r * std::cos(angle);
  }

 private:
  double uniform01() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// y_i = theta_i + sigma * g_i with g_i i.i.d. standard Gaussian.
inline std::vector<double> add_noise(const GroundTruth& truth,
                                     const NoiseSpec& spec) {
  if (!(spec.sigma >= 0.0)) {
    throw std::invalid_argument("add_noise: sigma must be >= 0");
  }
  std::vector<double> ys(truth.theta.size());
  GaussianStream stream(spec.seed);
  for (std::size_t i = 0; i < ys.size(); ++i) {
    ys[i] = truth.theta[i] + spec.sigma * stream.next();
  }
  return ys;
}

}  // namespace arrows::seq
