#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "photonent/numerics.hpp"

namespace photonent {

/// Single-photon spectral amplitude on a grid, continuum-normalized:
/// step * sum_j |psi_j|^2 = 1.
class PurePacket {
 public:
  PurePacket(FrequencyGrid grid, ComplexVector amplitudes, double center = 0.0, double sigma = 0.0)
      : grid_(grid), amplitudes_(std::move(amplitudes)), center_(center), sigma_(sigma) {
    detail::require(amplitudes_.size() == grid_.size(), "PurePacket: amplitude count does not match grid");
    detail::require(detail::all_finite(amplitudes_), "PurePacket: non-finite amplitude");
    detail::require(std::abs(grid_.step() * amplitudes_.squaredNorm() - 1.0) <= 1e-10, "PurePacket: not normalized");
  }

  /// Normalizes arbitrary nonzero samples.
  static PurePacket from_samples(FrequencyGrid grid, ComplexVector samples) {
    const double norm2 = grid.step() * samples.squaredNorm();
    detail::require(norm2 > 0.0 && std::isfinite(norm2), "PurePacket: samples must be nonzero and finite");
    samples /= std::sqrt(norm2);
    return PurePacket(grid, std::move(samples));
  }

  const FrequencyGrid& grid() const { return grid_; }
  const ComplexVector& amplitudes() const { return amplitudes_; }
  double center() const { return center_; }
  double sigma() const { return sigma_; }

  /// Unit vector in the discrete l2 sense (amplitudes * sqrt(step)).
  ComplexVector discrete() const { return std::sqrt(grid_.step()) * amplitudes_; }

 private:
  FrequencyGrid grid_;
  ComplexVector amplitudes_;
  double center_;
  double sigma_;
};

/// <a|b> under the step-weighted inner product.
inline cplx overlap(const PurePacket& a, const PurePacket& b) {
  if (!(a.grid() == b.grid())) throw BasisMismatch("overlap: packets live on different grids");
  return a.grid().step() * a.amplitudes().dot(b.amplitudes());
}

/// psi(omega) ~ exp(-(omega - center)^2 / sigma^2), centered on the grid.
inline PurePacket gaussian_packet(const FrequencyGrid& grid, double sigma) {
  detail::require(std::isfinite(sigma) && sigma > 0.0, "gaussian_packet: sigma must be > 0");
  const double c = grid.center();
  ComplexVector psi(grid.size());
  for (int j = 0; j < grid.size(); ++j) {
    const double x = (grid.point(j) - c) / sigma;
    psi(j) = std::exp(-x * x);
  }
  const double norm2 = grid.step() * psi.squaredNorm();
  detail::require(norm2 > 0.0, "gaussian_packet: packet underflows on this grid");
  psi /= std::sqrt(norm2);
  return PurePacket(grid, std::move(psi), c, sigma);
}

/// psi_tau(omega) = psi(omega) exp(-i omega tau).
inline PurePacket delayed(const PurePacket& packet, double tau) {
  detail::require(std::isfinite(tau), "delayed: tau must be finite");
  ComplexVector psi = packet.amplitudes();
  for (int j = 0; j < psi.size(); ++j) psi(j) *= std::polar(1.0, -packet.grid().point(j) * tau);
  return PurePacket(packet.grid(), std::move(psi), packet.center(), packet.sigma());
}

/// Gaussian arrival-time jitter P(tau) ~ exp(-tau^2 / sigma_tau^2), sampled on
/// `count` uniform nodes over [-2 sigma_tau, 2 sigma_tau] with weights
/// renormalized to sum to one. sigma_tau = 0 collapses to the single node tau = 0.
class JitterModel {
 public:
  struct Node {
    double tau;
    double weight;
  };

  JitterModel(double sigma_tau, int count = 41) : sigma_tau_(sigma_tau), count_(count) {
    detail::require(std::isfinite(sigma_tau) && sigma_tau >= 0.0, "JitterModel: sigma_tau must be >= 0");
    detail::require(count >= 1 && count % 2 == 1, "JitterModel: node count must be odd");
  }

  double sigma_tau() const { return sigma_tau_; }
  int count() const { return count_; }

  std::vector<Node> nodes() const {
    if (sigma_tau_ == 0.0 || count_ == 1) return {{0.0, 1.0}};
    std::vector<Node> out(static_cast<std::size_t>(count_));
    const int half = count_ / 2;
    const double h = 2.0 * sigma_tau_ / half;
    double total = 0.0;
    for (int t = 0; t < count_; ++t) {
      const double tau = (t - half) * h;
      const double x = tau / sigma_tau_;
      out[static_cast<std::size_t>(t)] = {tau, std::exp(-x * x)};
      total += out[static_cast<std::size_t>(t)].weight;
    }
    for (auto& n : out) n.weight /= total;
    return out;
  }

 private:
  double sigma_tau_;
  int count_;
};

/// Mixed single-photon state as a continuum-normalized kernel rho(omega_j, omega_k)
/// with step * trace = 1. The discrete density is step * kernel.
class SinglePhotonKernel {
 public:
  SinglePhotonKernel(FrequencyGrid grid, HermitianMatrix kernel) : grid_(grid), kernel_(std::move(kernel)) {
    detail::require(kernel_.dim() == grid_.size(), "SinglePhotonKernel: kernel size does not match grid");
    detail::require(std::abs(grid_.step() * kernel_.trace().real() - 1.0) <= 1e-10,
                    "SinglePhotonKernel: kernel must have unit trace");
    const RealVector ev = eigvalsh(HermitianMatrix(grid_.step() * kernel_.matrix()));
    detail::require(ev(ev.size() - 1) >= -1e-12, "SinglePhotonKernel: kernel is not positive semidefinite");
  }

  const FrequencyGrid& grid() const { return grid_; }
  const HermitianMatrix& kernel() const { return kernel_; }
  ComplexMatrix discrete() const { return grid_.step() * kernel_.matrix(); }

 private:
  FrequencyGrid grid_;
  HermitianMatrix kernel_;
};

namespace detail {

// Exactly Hermitian copy (upper triangle mirrored) with unit step-weighted trace.
inline ComplexMatrix hermitize_unit_trace(ComplexMatrix k, double step) {
  for (Index j = 0; j < k.cols(); ++j) {
    k(j, j) = cplx(k(j, j).real(), 0.0);
    for (Index i = j + 1; i < k.rows(); ++i) k(i, j) = std::conj(k(j, i));
  }
  const double tr = step * k.trace().real();
  detail::require(tr > 0.0, "kernel: zero trace");
  return k / tr;
}

}  // namespace detail

struct WeightedPacket {
  double weight;
  PurePacket packet;
};

/// sum_i w_i |psi_i><psi_i| over packets on one grid; weights must sum to 1.
inline SinglePhotonKernel kernel_from_mixture(const std::vector<WeightedPacket>& parts) {
  detail::require(!parts.empty(), "kernel_from_mixture: no packets");
  const FrequencyGrid grid = parts.front().packet.grid();
  double total = 0.0;
  ComplexMatrix k = ComplexMatrix::Zero(grid.size(), grid.size());
  for (const auto& p : parts) {
    if (!(p.packet.grid() == grid)) throw BasisMismatch("kernel_from_mixture: packets on different grids");
    detail::require(std::isfinite(p.weight) && p.weight >= 0.0, "kernel_from_mixture: weights must be >= 0");
    total += p.weight;
    k.noalias() += p.weight * (p.packet.amplitudes() * p.packet.amplitudes().adjoint());
  }
  detail::require(std::abs(total - 1.0) <= 1e-12, "kernel_from_mixture: weights must sum to 1");
  return {grid, HermitianMatrix(detail::hermitize_unit_trace(std::move(k), grid.step()))};
}

inline SinglePhotonKernel pure_kernel(const PurePacket& packet) { return kernel_from_mixture({{1.0, packet}}); }

/// kernel(w, w') = sum_t w_t psi(w) psi*(w') exp(-i (w - w') tau_t), trace renormalized.
inline SinglePhotonKernel jitter_kernel(const PurePacket& packet, const JitterModel& jitter) {
  const FrequencyGrid& grid = packet.grid();
  const int n = grid.size();
  const auto nodes = jitter.nodes();
  const ComplexVector& psi = packet.amplitudes();
  ComplexMatrix k = ComplexMatrix::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    for (int l = j; l < n; ++l) {
      const double dw = grid.point(j) - grid.point(l);
      cplx phase{0.0, 0.0};
      for (const auto& node : nodes) phase += node.weight * std::polar(1.0, -dw * node.tau);
      k(j, l) = psi(j) * std::conj(psi(l)) * phase;
    }
  }
  return {grid, HermitianMatrix(detail::hermitize_unit_trace(std::move(k), grid.step()))};
}

/// step^2 * sum_jk |kernel_jk|^2 = Tr rho^2.
inline double kernel_purity(const SinglePhotonKernel& k) {
  const double step = k.grid().step();
  return step * step * k.kernel().matrix().squaredNorm();
}

/// rho_1 = sum_k p_k |1_k><1_k| with orthonormal, continuum-normalized modes.
struct KernelModes {
  RealVector probabilities;  // descending, sum to one
  std::vector<PurePacket> modes;
};

/// Eigenpairs with p_k < 1e-12 are dropped and the rest renormalized.
inline KernelModes diagonalize_kernel(const SinglePhotonKernel& k) {
  const Spectrum s = eigh(HermitianMatrix(k.discrete()));
  const double scale = 1.0 / std::sqrt(k.grid().step());
  KernelModes out;
  Index kept = 0;
  while (kept < s.values.size() && s.values(kept) >= kZeroThreshold) ++kept;
  out.probabilities = s.values.head(kept);
  out.probabilities /= out.probabilities.sum();
  out.modes.reserve(static_cast<std::size_t>(kept));
  for (Index m = 0; m < kept; ++m) out.modes.emplace_back(k.grid(), scale * s.vectors->col(m));
  return out;
}

}  // namespace photonent
