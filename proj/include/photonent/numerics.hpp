#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "photonent/errors.hpp"
#include "photonent/grid.hpp"

namespace photonent {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Eigenvalues/singular values below this (relative to unit trace) are zeros.
inline constexpr double kZeroThreshold = 1e-12;

namespace detail {

inline bool all_finite(const ComplexMatrix& m) {
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
  return true;
}

inline double max_abs(const ComplexMatrix& m) {
  double best = 0.0;
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i) best = std::max(best, std::abs(m(i, j)));
  return best;
}

// Indices that sort `values` descending; equal values keep their original order.
inline std::vector<Index> descending_order(const RealVector& values) {
  std::vector<Index> order(static_cast<std::size_t>(values.size()));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Index a, Index b) { return values(a) > values(b); });
  return order;
}

}  // namespace detail

/// Square complex matrix equal to its conjugate transpose up to 1e-12 of its
/// largest entry.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(ComplexMatrix entries) : m_(std::move(entries)) {
    detail::require(m_.rows() == m_.cols() && m_.rows() > 0, "HermitianMatrix: must be square and non-empty");
    detail::require(detail::all_finite(m_), "HermitianMatrix: non-finite entry");
    const double tol = 1e-12 * std::max(detail::max_abs(m_), 1e-300);
    for (Index j = 0; j < m_.cols(); ++j)
      for (Index i = j; i < m_.rows(); ++i)
        detail::require(std::abs(m_(i, j) - std::conj(m_(j, i))) <= tol, "HermitianMatrix: not Hermitian");
  }

  static HermitianMatrix identity(Index n) { return HermitianMatrix(ComplexMatrix::Identity(n, n)); }

  Index dim() const { return m_.rows(); }
  const ComplexMatrix& matrix() const { return m_; }
  cplx operator()(Index i, Index j) const { return m_(i, j); }
  cplx trace() const { return m_.trace(); }

 private:
  ComplexMatrix m_;
};

/// Real eigenvalues in descending order, optionally with matching orthonormal
/// eigenvectors stored column-wise.
struct Spectrum {
  RealVector values;
  std::optional<ComplexMatrix> vectors;
};

/// Hermitian eigendecomposition. Ties in the descending order are broken by
/// the solver's original index, so identical input bits give identical output.
inline Spectrum eigh(const HermitianMatrix& a, bool compute_vectors = true) {
  const ComplexMatrix& m = a.matrix();
  const Index n = m.rows();

  bool diagonal = true;
  for (Index j = 0; j < n && diagonal; ++j)
    for (Index i = 0; i < n; ++i)
      if (i != j && m(i, j) != cplx(0.0)) {
        diagonal = false;
        break;
      }

  RealVector raw(n);
  ComplexMatrix raw_vectors;
  if (diagonal) {
    for (Index i = 0; i < n; ++i) raw(i) = m(i, i).real();
    if (compute_vectors) raw_vectors = ComplexMatrix::Identity(n, n);
  } else {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(
        m, compute_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw InvalidInput("eigh: eigensolver did not converge");
    raw = solver.eigenvalues();
    if (compute_vectors) raw_vectors = solver.eigenvectors();
  }

  const auto order = detail::descending_order(raw);
  Spectrum out;
  out.values.resize(n);
  for (Index k = 0; k < n; ++k) out.values(k) = raw(order[static_cast<std::size_t>(k)]);
  if (compute_vectors) {
    ComplexMatrix v(n, n);
    for (Index k = 0; k < n; ++k) v.col(k) = raw_vectors.col(order[static_cast<std::size_t>(k)]);
    out.vectors = std::move(v);
  }
  return out;
}

inline RealVector eigvalsh(const HermitianMatrix& a) { return eigh(a, false).values; }

/// a = sum_k s_k u_k v_k^dagger with s_k >= 0 descending.
struct SingularDecomposition {
  RealVector values;
  ComplexMatrix left;   // columns u_k
  ComplexMatrix right;  // columns v_k
};

inline SingularDecomposition svd(const ComplexMatrix& a) {
  detail::require(a.rows() > 0 && a.cols() > 0, "svd: empty matrix");
  detail::require(detail::all_finite(a), "svd: non-finite entry");
  Eigen::BDCSVD<ComplexMatrix> solver(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return {solver.singularValues(), solver.matrixU(), solver.matrixV()};
}

inline RealVector singular_values(const ComplexMatrix& a) {
  detail::require(a.rows() > 0 && a.cols() > 0, "singular_values: empty matrix");
  detail::require(detail::all_finite(a), "singular_values: non-finite entry");
  Eigen::BDCSVD<ComplexMatrix> solver(a);
  return solver.singularValues();
}

/// Rectangle rule: step * sum_j f_j, summed left to right.
inline cplx quadrature(std::span<const cplx> samples, double step) {
  cplx sum{0.0, 0.0};
  for (const cplx& f : samples) sum += f;
  return step * sum;
}

inline cplx grid_quadrature(const FrequencyGrid& grid, std::span<const cplx> samples) {
  if (static_cast<int>(samples.size()) != grid.size())
    throw InvalidInput("grid_quadrature: sample count does not match grid size");
  return quadrature(samples, grid.step());
}

inline cplx grid_quadrature(const FrequencyGrid& grid, const ComplexVector& samples) {
  return grid_quadrature(grid, std::span<const cplx>(samples.data(), static_cast<std::size_t>(samples.size())));
}

}  // namespace photonent
