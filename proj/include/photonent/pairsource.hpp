#pragma once

#include <cmath>
#include <complex>

#include "photonent/numerics.hpp"
#include "photonent/schmidt.hpp"
#include "photonent/wavepacket.hpp"

namespace photonent {

/// Dimensionless phase-matching slopes a_o = (k'_o - k'_p) L Omega and
/// a_e = (k'_e - k'_p) L Omega.
struct PhaseMatchParams {
  double a_o = 2.25;
  double a_e = 0.63;

  void validate() const {
    detail::require(std::isfinite(a_o) && std::isfinite(a_e), "PhaseMatchParams: slopes must be finite");
  }
};

/// sin(x)/x with sinc(0) = 1.
inline double sinc(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }

/// Two-photon spectral amplitude psi(nu_o, nu_e) (rows: ordinary photon,
/// columns: extraordinary photon), continuum-normalized:
/// step_o * step_e * sum |psi|^2 = 1.
class JointAmplitude {
 public:
  JointAmplitude(FrequencyGrid grid_o, FrequencyGrid grid_e, ComplexMatrix psi, double sigma_pump = 0.0,
                 bool is_real = false)
      : grid_o_(grid_o), grid_e_(grid_e), psi_(std::move(psi)), sigma_pump_(sigma_pump), is_real_(is_real) {
    detail::require(psi_.rows() == grid_o_.size() && psi_.cols() == grid_e_.size(),
                    "JointAmplitude: amplitude shape does not match grids");
    detail::require(detail::all_finite(psi_), "JointAmplitude: non-finite amplitude");
    detail::require(std::abs(weight() * psi_.squaredNorm() - 1.0) <= 1e-10, "JointAmplitude: not normalized");
  }

  /// Normalizes arbitrary nonzero samples.
  static JointAmplitude from_samples(FrequencyGrid grid_o, FrequencyGrid grid_e, ComplexMatrix samples) {
    const double norm2 = grid_o.step() * grid_e.step() * samples.squaredNorm();
    detail::require(norm2 > 0.0 && std::isfinite(norm2), "JointAmplitude: samples must be nonzero and finite");
    samples /= std::sqrt(norm2);
    return {grid_o, grid_e, std::move(samples)};
  }

  const FrequencyGrid& grid_o() const { return grid_o_; }
  const FrequencyGrid& grid_e() const { return grid_e_; }
  const ComplexMatrix& psi() const { return psi_; }
  double sigma_pump() const { return sigma_pump_; }
  bool is_real() const { return is_real_; }

  /// Unit-Frobenius matrix sqrt(step_o step_e) * psi: the amplitude on the
  /// discrete modes (one per grid point).
  ComplexMatrix discrete() const { return std::sqrt(weight()) * psi_; }

 private:
  double weight() const { return grid_o_.step() * grid_e_.step(); }

  FrequencyGrid grid_o_;
  FrequencyGrid grid_e_;
  ComplexMatrix psi_;
  double sigma_pump_;
  bool is_real_;
};

/// Pump envelope times phase matching:
/// psi = exp(-(nu_o + nu_e)^2 / sigma_pump^2) * sinc(a_o nu_o + a_e nu_e), normalized.
inline JointAmplitude joint_amplitude(const FrequencyGrid& grid_o, const FrequencyGrid& grid_e, double sigma_pump,
                                      const PhaseMatchParams& params = {}) {
  detail::require(std::isfinite(sigma_pump) && sigma_pump > 0.0, "joint_amplitude: sigma_pump must be > 0");
  params.validate();
  ComplexMatrix psi(grid_o.size(), grid_e.size());
  for (int j = 0; j < grid_o.size(); ++j) {
    const double nu_o = grid_o.point(j);
    for (int k = 0; k < grid_e.size(); ++k) {
      const double nu_e = grid_e.point(k);
      const double s = (nu_o + nu_e) / sigma_pump;
      psi(j, k) = std::exp(-s * s) * sinc(params.a_o * nu_o + params.a_e * nu_e);
    }
  }
  const double norm2 = grid_o.step() * grid_e.step() * psi.squaredNorm();
  detail::require(norm2 > 0.0, "joint_amplitude: amplitude underflows on this grid");
  psi /= std::sqrt(norm2);
  return {grid_o, grid_e, std::move(psi), sigma_pump, true};
}

inline JointAmplitude joint_amplitude(const FrequencyGrid& grid, double sigma_pump, const PhaseMatchParams& params = {}) {
  return joint_amplitude(grid, grid, sigma_pump, params);
}

namespace detail {

inline void to_continuum(SchmidtData& sd, const JointAmplitude& ja) {
  sd.h_modes /= std::sqrt(ja.grid_o().step());
  sd.v_modes /= std::sqrt(ja.grid_e().step());
}

}  // namespace detail

/// Discrete Schmidt decomposition via SVD of the weighted amplitude.
/// Modes come back continuum-normalized on the respective grids.
inline SchmidtData schmidt(const JointAmplitude& ja) {
  SchmidtData sd = schmidt_decompose(ja.discrete());
  detail::to_continuum(sd, ja);
  return sd;
}

/// Second route: diagonalize the reduced kernels
///   rho_A(w, w') = int dw'' psi(w, w'') psi*(w', w'')
///   rho_B(w, w') = int dw'' psi(w'', w) psi*(w'', w')
/// separately. Each v mode gets the phase that makes <h_k v_k|psi> real and
/// positive; within degenerate eigenspaces the pairing is not unique.
inline SchmidtData schmidt_via_reduced_kernel(const JointAmplitude& ja) {
  const ComplexMatrix a = ja.discrete();
  const Spectrum sa = eigh(HermitianMatrix(detail::hermitize_unit_trace(a * a.adjoint(), 1.0)));
  const Spectrum sb = eigh(HermitianMatrix(detail::hermitize_unit_trace(a.transpose() * a.conjugate(), 1.0)));

  Index kept = 0;
  while (kept < sa.values.size() && sa.values(kept) >= kZeroThreshold) ++kept;
  detail::require(kept > 0, "schmidt_via_reduced_kernel: zero amplitude");
  detail::require(kept <= sb.values.size(), "schmidt_via_reduced_kernel: reduced kernels disagree in rank");

  SchmidtData sd;
  sd.lambdas = sa.values.head(kept);
  sd.lambdas /= sd.lambdas.sum();
  sd.h_modes = sa.vectors->leftCols(kept);
  sd.v_modes = sb.vectors->leftCols(kept);
  // <h v|psi> = h^dag A conj(v); v -> v e^{i arg c} makes it real positive.
  for (Index k = 0; k < kept; ++k) {
    const cplx c = (sd.h_modes.col(k).adjoint() * a * sd.v_modes.col(k).conjugate())(0, 0);
    if (std::abs(c) > 0.0) sd.v_modes.col(k) *= c / std::abs(c);
  }
  detail::to_continuum(sd, ja);
  return sd;
}

struct PairEntanglement {
  double entropy;
  double log_negativity;
};

/// E = -sum lambda log2 lambda and E_N = 2 log2 sum sqrt(lambda).
inline PairEntanglement pre_splitter_entanglement(const SchmidtData& sd) {
  return {shannon_entropy_bits(sd.lambdas), log_negativity_pure(sd)};
}

/// psi_tau(nu_o, nu_e) = psi(nu_o, nu_e) exp(-i (nu_o + nu_e) tau).
inline JointAmplitude delayed_joint(const JointAmplitude& ja, double tau) {
  detail::require(std::isfinite(tau), "delayed_joint: tau must be finite");
  ComplexMatrix psi = ja.psi();
  for (int j = 0; j < psi.rows(); ++j)
    for (int k = 0; k < psi.cols(); ++k)
      psi(j, k) *= std::polar(1.0, -(ja.grid_o().point(j) + ja.grid_e().point(k)) * tau);
  return {ja.grid_o(), ja.grid_e(), std::move(psi), ja.sigma_pump(), tau == 0.0 && ja.is_real()};
}

}  // namespace photonent
