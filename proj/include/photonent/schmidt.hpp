#pragma once

#include <cmath>
#include <vector>

#include "photonent/numerics.hpp"

namespace photonent {

/// Schmidt coefficients lambda_k (descending, summing to one) and, when known,
/// the paired mode functions: psi = sum_k sqrt(lambda_k) h_k (x) v_k.
///
/// Modes are stored column-wise. For decompositions of a discrete amplitude
/// matrix they are unit vectors; pairsource rescales them to continuum
/// normalization on its grids.
struct SchmidtData {
  RealVector lambdas;
  ComplexMatrix h_modes;
  ComplexMatrix v_modes;

  Index rank() const { return lambdas.size(); }
  bool has_modes() const { return h_modes.cols() == lambdas.size() && h_modes.cols() > 0; }

  /// Coefficients only. Rejects negative entries or a sum away from one by
  /// more than 1e-10.
  static SchmidtData from_coefficients(std::vector<double> lambdas) {
    RealVector l(static_cast<Index>(lambdas.size()));
    for (std::size_t k = 0; k < lambdas.size(); ++k) l(static_cast<Index>(k)) = lambdas[k];
    return from_coefficients(l);
  }

  static SchmidtData from_coefficients(const RealVector& lambdas) {
    detail::require(lambdas.size() > 0, "SchmidtData: no coefficients");
    for (Index k = 0; k < lambdas.size(); ++k)
      detail::require(std::isfinite(lambdas(k)) && lambdas(k) >= 0.0, "SchmidtData: coefficients must be >= 0");
    detail::require(std::abs(lambdas.sum() - 1.0) <= 1e-10, "SchmidtData: coefficients must sum to 1");
    SchmidtData out;
    const auto order = detail::descending_order(lambdas);
    out.lambdas.resize(lambdas.size());
    for (Index k = 0; k < lambdas.size(); ++k) out.lambdas(k) = lambdas(order[static_cast<std::size_t>(k)]);
    return out;
  }
};

/// Schmidt decomposition of a unit-Frobenius amplitude matrix via SVD.
/// Coefficients below kZeroThreshold are dropped and the rest renormalized.
inline SchmidtData schmidt_decompose(const ComplexMatrix& amplitudes) {
  const SingularDecomposition d = svd(amplitudes);
  Index kept = 0;
  while (kept < d.values.size() && d.values(kept) * d.values(kept) >= kZeroThreshold) ++kept;
  detail::require(kept > 0, "schmidt_decompose: zero amplitude");

  SchmidtData out;
  out.lambdas = d.values.head(kept).array().square();
  out.lambdas /= out.lambdas.sum();
  out.h_modes = d.left.leftCols(kept);
  out.v_modes = d.right.leftCols(kept).conjugate();
  return out;
}

/// -sum lambda log2 lambda with 0 log 0 = 0.
inline double shannon_entropy_bits(const RealVector& probabilities) {
  double e = 0.0;
  for (Index k = 0; k < probabilities.size(); ++k) {
    const double p = probabilities(k);
    if (p > 0.0) e -= p * std::log2(p);
  }
  return e;
}

/// 2 log2(sum_k sqrt(lambda_k)): logarithmic negativity of a pure state.
inline double log_negativity_pure(const SchmidtData& schmidt) {
  detail::require(std::abs(schmidt.lambdas.sum() - 1.0) <= 1e-10, "log_negativity_pure: coefficients must sum to 1");
  double s = 0.0;
  for (Index k = 0; k < schmidt.lambdas.size(); ++k) s += std::sqrt(std::max(schmidt.lambdas(k), 0.0));
  return 2.0 * std::log2(s);
}

}  // namespace photonent
