#pragma once

#include <Eigen/Core>
#include <cmath>
#include <cstdint>

namespace dualcert {

// Counter-based sampling RNG. Each (seed, stream, index) triple seeds an
// independent SplitMix64 sequence, so per-sample draws are reproducible
// regardless of evaluation order. All primitives are implemented from the
// raw 64-bit output (no std::*_distribution) so the byte-level determinism
// of certificates does not depend on the standard library.
class SampleRng {
 public:
  SampleRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index)
      : state_(mix(seed + 0x9E3779B97F4A7C15ULL * (stream + 1) +
                   0xBF58476D1CE4E5B9ULL * (index + 1))) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix(state_);
  }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform in (0, 1]; safe as a log() argument.
  double uniform_open() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform_open();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * M_PI * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

  Eigen::VectorXd normal_vector(Eigen::Index n) {
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = normal();
    return v;
  }

  /// Uniform point in the closed euclidean ball: direction uniform on the
  /// sphere, radius r * U^(1/n).
  Eigen::VectorXd ball_point(const Eigen::VectorXd& center, double radius) {
    const Eigen::Index n = center.size();
    Eigen::VectorXd dir = normal_vector(n);
    const double norm = dir.norm();
    if (norm == 0.0) return center;
    const double r = radius * std::pow(uniform(), 1.0 / static_cast<double>(n));
    return center + dir * (r / norm);
  }

  /// Uniform point in the axis-aligned box center +- radius per coordinate.
  Eigen::VectorXd box_point(const Eigen::VectorXd& center, double radius) {
    Eigen::VectorXd v(center.size());
    for (Eigen::Index i = 0; i < center.size(); ++i)
      v[i] = center[i] + radius * (2.0 * uniform() - 1.0);
    return v;
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace dualcert
