#pragma once

#include <cmath>
#include <string>

#include <Eigen/Core>

#include "photonent/errors.hpp"

namespace photonent {

/// Uniform midpoint discretization of [lo, hi] (frequencies in units of the
/// scale frequency Omega). Point j sits at lo + (j + 1/2) * step.
class FrequencyGrid {
 public:
  FrequencyGrid(double lo, double hi, int n) : lo_(lo), hi_(hi), n_(n) {
    detail::require(std::isfinite(lo) && std::isfinite(hi), "FrequencyGrid: bounds must be finite");
    detail::require(hi > lo, "FrequencyGrid: hi must exceed lo");
    detail::require(n >= 2, "FrequencyGrid: need at least two points");
  }

  /// Symmetric grid [-cutoff, cutoff].
  static FrequencyGrid symmetric(double cutoff, int n) { return FrequencyGrid(-cutoff, cutoff, n); }

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  int size() const { return n_; }
  double step() const { return (hi_ - lo_) / n_; }
  double center() const { return 0.5 * (lo_ + hi_); }
  double point(int j) const { return lo_ + (j + 0.5) * step(); }

  Eigen::VectorXd points() const {
    Eigen::VectorXd p(n_);
    for (int j = 0; j < n_; ++j) p(j) = point(j);
    return p;
  }

  bool operator==(const FrequencyGrid&) const = default;

 private:
  double lo_;
  double hi_;
  int n_;
};

}  // namespace photonent
