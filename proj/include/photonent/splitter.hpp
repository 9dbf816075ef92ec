#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "photonent/fockspace.hpp"
#include "photonent/pairsource.hpp"
#include "photonent/wavepacket.hpp"

namespace photonent {

// 50/50 beam splitter, input ports a (left in) and b (right in), output ports
// c (left) and d (right). One photon: a^dag -> (c^dag + d^dag)/sqrt2. For the
// orthogonally polarized pair the output is
//   1/2 |2~>_c|0>_d - 1/2 |0>_c|2~>_d + 1/2 sum_k sqrt(l_k) (v_ck h_dk - h_ck v_dk)|v>
// i.e. signs (+cc, +cV dH, -cH dV, -dd).

namespace detail {

inline void require_probability(double p, const char* where) {
  require(std::isfinite(p) && p >= 0.0 && p <= 1.0, std::string(where) + ": p must lie in [0, 1]");
}

inline std::vector<BasisLabel> mode_labels(int count, Polarization pol, bool with_vacuum) {
  std::vector<BasisLabel> out;
  if (with_vacuum) out.push_back(BasisLabel::vacuum());
  for (int k = 0; k < count; ++k) out.push_back(BasisLabel::one_photon(k, pol));
  return out;
}

// {vac, H 0..nh-1, V 0..nv-1, pair 0..np-1}; matches canonical label order.
inline std::vector<BasisLabel> two_photon_side(int nh, int nv, int np) {
  std::vector<BasisLabel> out{BasisLabel::vacuum()};
  for (int k = 0; k < nh; ++k) out.push_back(BasisLabel::one_photon(k, Polarization::h));
  for (int k = 0; k < nv; ++k) out.push_back(BasisLabel::one_photon(k, Polarization::v));
  for (int m = 0; m < np; ++m) out.push_back(BasisLabel::two_photon(m));
  return out;
}

// Columns of the eigenvectors of a PSD matrix with eigenvalue >= kZeroThreshold.
inline ComplexMatrix dominant_eigenvectors(const ComplexMatrix& r) {
  const Spectrum s = eigh(HermitianMatrix(0.5 * (r + r.adjoint())));
  Index kept = 0;
  while (kept < s.values.size() && s.values(kept) >= kZeroThreshold) ++kept;
  require(kept > 0, "two-photon compression: zero amplitude");
  return s.vectors->leftCols(kept);
}

}  // namespace detail

// ---------------------------------------------------------------- single photon

/// (|1,0> + |0,1>)/sqrt2 on {vac, 1} per side.
inline BipartiteState split_single_pure() {
  const double r = 1.0 / std::sqrt(2.0);
  ComplexMatrix a = ComplexMatrix::Zero(2, 2);
  a(1, 0) = r;
  a(0, 1) = r;
  return {BipartiteBasis::qubits(), a};
}

/// rho_out = sum_k p_k/2 (|1_k 0> + |0 1_k>)(h.c.) on {vac, 1_k}^2.
inline BipartiteDensity split_single_mixed(const SinglePhotonKernel& kernel) {
  const KernelModes km = diagonalize_kernel(kernel);
  const int n = static_cast<int>(km.probabilities.size());
  BipartiteBasis basis(detail::mode_labels(n, Polarization::none, true), detail::mode_labels(n, Polarization::none, true));
  const double r = 1.0 / std::sqrt(2.0);
  std::vector<EnsembleMember> members;
  for (int k = 0; k < n; ++k) {
    ComplexMatrix a = ComplexMatrix::Zero(n + 1, n + 1);
    a(k + 1, 0) = r;
    a(0, k + 1) = r;
    members.push_back({km.probabilities(k), std::move(a)});
  }
  return BipartiteDensity::normalized_from_ensemble(std::move(basis), std::move(members));
}

/// sqrt(1-p)|00> + sqrt(p/2)(|10> + |01>).
inline BipartiteState split_single_vac_pure(double p) {
  detail::require_probability(p, "split_single_vac_pure");
  ComplexMatrix a = ComplexMatrix::Zero(2, 2);
  a(0, 0) = std::sqrt(1.0 - p);
  a(1, 0) = std::sqrt(p / 2.0);
  a(0, 1) = std::sqrt(p / 2.0);
  return {BipartiteBasis::qubits(), a};
}

/// (1-p)|00><00| + p/2 sum_k p_k (|01_k> + |1_k0>)(h.c.).
inline BipartiteDensity split_single_vac_mixed(double p, const SinglePhotonKernel& kernel) {
  detail::require_probability(p, "split_single_vac_mixed");
  const KernelModes km = diagonalize_kernel(kernel);
  const int n = static_cast<int>(km.probabilities.size());
  BipartiteBasis basis(detail::mode_labels(n, Polarization::none, true), detail::mode_labels(n, Polarization::none, true));
  std::vector<EnsembleMember> members;
  ComplexMatrix vac = ComplexMatrix::Zero(n + 1, n + 1);
  vac(0, 0) = 1.0;
  members.push_back({1.0 - p, std::move(vac)});
  const double r = 1.0 / std::sqrt(2.0);
  for (int k = 0; k < n; ++k) {
    ComplexMatrix a = ComplexMatrix::Zero(n + 1, n + 1);
    a(k + 1, 0) = r;
    a(0, k + 1) = r;
    members.push_back({p * km.probabilities(k), std::move(a)});
  }
  return BipartiteDensity::normalized_from_ensemble(std::move(basis), std::move(members));
}

// ---------------------------------------------------------------- pure pair

/// sqrt(1-p)|00> + sqrt(p) |2_out> on {vac, h_k, v_k, 2~} per side.
inline BipartiteState split_two_vac_pure(double p, const SchmidtData& sd) {
  detail::require_probability(p, "split_two_vac_pure");
  const int k = static_cast<int>(sd.rank());
  detail::require(k > 0, "split_two_vac_pure: empty Schmidt data");
  const auto labels = detail::two_photon_side(k, k, 1);
  const Index d = static_cast<Index>(labels.size());
  const Index pair = 1 + 2 * k;
  const double s = std::sqrt(p);
  ComplexMatrix a = ComplexMatrix::Zero(d, d);
  a(0, 0) = std::sqrt(1.0 - p);
  a(pair, 0) = 0.5 * s;
  a(0, pair) = -0.5 * s;
  for (int j = 0; j < k; ++j) {
    const double c = 0.5 * s * std::sqrt(sd.lambdas(j));
    a(1 + k + j, 1 + j) = c;   // v_j on c, h_j on d
    a(1 + j, 1 + k + j) = -c;  // h_j on c, v_j on d
  }
  return {BipartiteBasis(labels, labels), a};
}

inline BipartiteState split_two_pure(const SchmidtData& sd) { return split_two_vac_pure(1.0, sd); }

/// Input sqrt(1-p)|00> + sqrt(p) sum_k sqrt(l_k)|h_k>|v_k>; the vacuum label is
/// present only for p < 1.
inline BipartiteState two_photon_vac_input(double p, const SchmidtData& sd) {
  detail::require_probability(p, "two_photon_vac_input");
  const int k = static_cast<int>(sd.rank());
  const bool vac = p < 1.0;
  const Index off = vac ? 1 : 0;
  ComplexMatrix a = ComplexMatrix::Zero(k + off, k + off);
  if (vac) a(0, 0) = std::sqrt(1.0 - p);
  for (int j = 0; j < k; ++j) a(off + j, off + j) = std::sqrt(p * sd.lambdas(j));
  return {BipartiteBasis(detail::mode_labels(k, Polarization::h, vac), detail::mode_labels(k, Polarization::v, vac)), a};
}

// ---------------------------------------------------------------- mixed pair

/// Size of the compressed per-side basis: 1 + n_h + n_v + n_pair.
struct TwoPhotonBasisPlan {
  int n_h = 0;
  int n_v = 0;
  int n_pair = 0;
  bool includes_vacuum = false;

  int side_dim() const { return 1 + n_h + n_v + n_pair; }
};

/// Jitter-averaged pair, rho = sum_t w_t |psi_tau_t><psi_tau_t|, compressed
/// once and then split for any vacuum fraction p.
///
/// Single-photon modes: eigenvectors of sum_t w_t A_t A_t^dag (H side) and
/// sum_t w_t A_t^T conj(A_t) (V side). Pair states |2~(tau)>: orthonormalized
/// through the weighted Gram matrix sqrt(w_t w_t') <A_t|A_t'>. Directions
/// below kZeroThreshold are dropped and the trace renormalized.
class TwoPhotonMixture {
 public:
  TwoPhotonMixture(const JointAmplitude& ja, const JitterModel& jitter) {
    const auto nodes = jitter.nodes();
    const Index t_count = static_cast<Index>(nodes.size());
    std::vector<ComplexMatrix> amps;
    amps.reserve(nodes.size());
    for (const auto& node : nodes) {
      weights_.push_back(node.weight);
      amps.push_back(delayed_joint(ja, node.tau).discrete());
    }
    const Index no = amps.front().rows();
    const Index ne = amps.front().cols();

    ComplexMatrix rh = ComplexMatrix::Zero(no, no);
    ComplexMatrix rv = ComplexMatrix::Zero(ne, ne);
    for (Index t = 0; t < t_count; ++t) {
      const double w = weights_[static_cast<std::size_t>(t)];
      rh.noalias() += w * (amps[t] * amps[t].adjoint());
      rv.noalias() += w * (amps[t].transpose() * amps[t].conjugate());
    }
    const ComplexMatrix uh = detail::dominant_eigenvectors(rh);
    const ComplexMatrix uv = detail::dominant_eigenvectors(rv);

    ComplexMatrix raw(no * ne, t_count);
    for (Index t = 0; t < t_count; ++t) raw.col(t) = detail::flatten(amps[t]);
    ComplexMatrix scaled = raw;
    for (Index t = 0; t < t_count; ++t) scaled.col(t) *= std::sqrt(weights_[static_cast<std::size_t>(t)]);
    const Spectrum g = eigh(HermitianMatrix(0.5 * (scaled.adjoint() * scaled + (scaled.adjoint() * scaled).adjoint())));
    Index n_pair = 0;
    while (n_pair < g.values.size() && g.values(n_pair) >= kZeroThreshold) ++n_pair;
    detail::require(n_pair > 0, "TwoPhotonMixture: zero amplitude");
    ComplexMatrix pairs = scaled * g.vectors->leftCols(n_pair);
    for (Index m = 0; m < n_pair; ++m) pairs.col(m) /= std::sqrt(g.values(m));
    const ComplexMatrix c = pairs.adjoint() * raw;  // c(m, t) = <P_m|A_t>

    plan_.n_h = static_cast<int>(uh.cols());
    plan_.n_v = static_cast<int>(uv.cols());
    plan_.n_pair = static_cast<int>(n_pair);
    for (Index t = 0; t < t_count; ++t) {
      singles_.push_back(uh.adjoint() * amps[t] * uv.conjugate());
      pair_coeffs_.push_back(c.col(t));
    }
  }

  const TwoPhotonBasisPlan& plan() const { return plan_; }
  const std::vector<double>& weights() const { return weights_; }

  /// Jitter-averaged output of sqrt(1-p)|00> + sqrt(p)|2_in(tau)>.
  BipartiteDensity output(double p = 1.0) const {
    detail::require_probability(p, "TwoPhotonMixture::output");
    const int nh = plan_.n_h, nv = plan_.n_v, np = plan_.n_pair;
    const auto labels = detail::two_photon_side(nh, nv, np);
    const Index d = plan_.side_dim();
    const Index ih = 1, iv = 1 + nh, ip = 1 + nh + nv;
    const double h = 0.5 * std::sqrt(p);
    std::vector<EnsembleMember> members;
    members.reserve(weights_.size());
    for (std::size_t t = 0; t < weights_.size(); ++t) {
      ComplexMatrix s = ComplexMatrix::Zero(d, d);
      s(0, 0) = std::sqrt(1.0 - p);
      s.block(ip, 0, np, 1) = h * pair_coeffs_[t];
      s.block(0, ip, 1, np) = -h * pair_coeffs_[t].transpose();
      s.block(iv, ih, nv, nh) = h * singles_[t].transpose();
      s.block(ih, iv, nh, nv) = -h * singles_[t];
      members.push_back({weights_[t], std::move(s)});
    }
    return BipartiteDensity::normalized_from_ensemble(BipartiteBasis(labels, labels), std::move(members));
  }

  /// The matching input mixture over H modes (left) x V modes (right), with a
  /// vacuum label on both sides when p < 1.
  BipartiteDensity input(double p = 1.0) const {
    detail::require_probability(p, "TwoPhotonMixture::input");
    const bool vac = p < 1.0;
    const Index off = vac ? 1 : 0;
    std::vector<EnsembleMember> members;
    for (std::size_t t = 0; t < weights_.size(); ++t) {
      ComplexMatrix s = ComplexMatrix::Zero(plan_.n_h + off, plan_.n_v + off);
      if (vac) s(0, 0) = std::sqrt(1.0 - p);
      s.block(off, off, plan_.n_h, plan_.n_v) = std::sqrt(p) * singles_[t];
      members.push_back({weights_[t], std::move(s)});
    }
    BipartiteBasis basis(detail::mode_labels(plan_.n_h, Polarization::h, vac),
                         detail::mode_labels(plan_.n_v, Polarization::v, vac));
    return BipartiteDensity::normalized_from_ensemble(std::move(basis), std::move(members));
  }

 private:
  TwoPhotonBasisPlan plan_;
  std::vector<double> weights_;
  std::vector<ComplexMatrix> singles_;      // U_H^dag A_t conj(U_V)
  std::vector<ComplexVector> pair_coeffs_;  // <P_m|A_t>
};

inline BipartiteDensity split_two_mixed(const JointAmplitude& ja, const JitterModel& jitter) {
  return TwoPhotonMixture(ja, jitter).output(1.0);
}

inline BipartiteDensity split_two_vac_mixed(double p, const JointAmplitude& ja, const JitterModel& jitter) {
  detail::require_probability(p, "split_two_vac_mixed");
  return TwoPhotonMixture(ja, jitter).output(p);
}

// ---------------------------------------------------------------- parity filter

struct ParityBranches {
  double p_even = 0.0;
  std::optional<BipartiteDensity> even;
  double p_odd = 0.0;
  std::optional<BipartiteDensity> odd;
};

/// Photon-number parity measured on the left port. Even = {vacuum, two-photon}
/// labels, odd = one-photon labels. A branch of probability 0 is empty.
inline ParityBranches parity_filter(const BipartiteDensity& rho) {
  const SideBasis& left = rho.basis().left();
  std::vector<char> even(static_cast<std::size_t>(left.size()));
  for (Index i = 0; i < left.size(); ++i) {
    const int n = left.label(i).photon_number();
    detail::require(n >= 0, "parity_filter: basis labels carry no photon number");
    even[static_cast<std::size_t>(i)] = n % 2 == 0;
  }

  ParityBranches out;
  for (int parity = 0; parity < 2; ++parity) {
    std::vector<EnsembleMember> members;
    double prob = 0.0;
    for (const auto& m : rho.members()) {
      ComplexMatrix a = m.amplitudes;
      for (Index i = 0; i < a.rows(); ++i)
        if (static_cast<bool>(even[static_cast<std::size_t>(i)]) != (parity == 0)) a.row(i).setZero();
      const double w = m.weight * a.squaredNorm();
      if (w == 0.0) continue;
      prob += w;
      members.push_back({m.weight, std::move(a)});
    }
    std::optional<BipartiteDensity> branch;
    if (prob > 0.0) branch = BipartiteDensity::normalized_from_ensemble(rho.basis(), std::move(members));
    if (parity == 0) {
      out.p_even = prob;
      out.even = std::move(branch);
    } else {
      out.p_odd = prob;
      out.odd = std::move(branch);
    }
  }
  return out;
}

inline ParityBranches parity_filter(const BipartiteState& s) { return parity_filter(density_from_pure(s)); }

/// p_even E_N(rho_even) + p_odd E_N(rho_odd).
inline double filtered_negativity(const BipartiteDensity& rho) {
  const ParityBranches b = parity_filter(rho);
  double total = 0.0;
  if (b.even) total += b.p_even * log_negativity(*b.even);
  if (b.odd) total += b.p_odd * log_negativity(*b.odd);
  return total;
}

inline double filtered_negativity(const BipartiteState& s) { return filtered_negativity(density_from_pure(s)); }

// ---------------------------------------------------------------- scenarios

enum class ScenarioKind {
  single_pure,
  single_mixed,
  single_vac_pure,
  single_vac_mixed,
  two_pure,
  two_mixed,
  two_vac_pure,
  two_vac_mixed,
};

/// One beam-splitter experiment. Required sources:
///   single_mixed, single_vac_mixed: kernel
///   two_pure, two_vac_pure: schmidt
///   two_mixed, two_vac_mixed: joint + jitter
/// p is used by the *_vac_* kinds only.
struct SplitterScenario {
  ScenarioKind kind = ScenarioKind::single_pure;
  double p = 1.0;
  std::optional<SinglePhotonKernel> kernel;
  std::optional<SchmidtData> schmidt;
  std::optional<JointAmplitude> joint;
  std::optional<JitterModel> jitter;

  void validate() const {
    detail::require_probability(p, "SplitterScenario");
    switch (kind) {
      case ScenarioKind::single_pure:
      case ScenarioKind::single_vac_pure: break;
      case ScenarioKind::single_mixed:
      case ScenarioKind::single_vac_mixed:
        detail::require(kernel.has_value(), "SplitterScenario: kernel required");
        break;
      case ScenarioKind::two_pure:
      case ScenarioKind::two_vac_pure:
        detail::require(schmidt.has_value() && schmidt->rank() > 0, "SplitterScenario: Schmidt data required");
        break;
      case ScenarioKind::two_mixed:
      case ScenarioKind::two_vac_mixed:
        detail::require(joint.has_value() && jitter.has_value(), "SplitterScenario: joint amplitude and jitter required");
        break;
    }
  }
};

struct SplitResult {
  BipartiteDensity input;   // port a (left) vs port b (right); two-photon: H vs V
  BipartiteDensity output;  // port c (left) vs port d (right)
};

namespace detail {

inline BipartiteDensity single_input(double p_photon, const RealVector& probs) {
  const int n = static_cast<int>(probs.size());
  BipartiteBasis basis(mode_labels(n, Polarization::none, true), {BasisLabel::vacuum()});
  std::vector<EnsembleMember> members;
  ComplexMatrix vac = ComplexMatrix::Zero(n + 1, 1);
  vac(0, 0) = 1.0;
  if (p_photon < 1.0) members.push_back({1.0 - p_photon, std::move(vac)});
  for (int k = 0; k < n; ++k) {
    ComplexMatrix a = ComplexMatrix::Zero(n + 1, 1);
    a(k + 1, 0) = 1.0;
    members.push_back({p_photon * probs(k), std::move(a)});
  }
  return BipartiteDensity::normalized_from_ensemble(std::move(basis), std::move(members));
}

}  // namespace detail

inline SplitResult run_scenario(const SplitterScenario& sc) {
  sc.validate();
  switch (sc.kind) {
    case ScenarioKind::single_pure: {
      ComplexMatrix a = ComplexMatrix::Zero(2, 1);
      a(1, 0) = 1.0;
      BipartiteBasis basis({BasisLabel::vacuum(), BasisLabel::one_photon(0)}, {BasisLabel::vacuum()});
      return {density_from_pure(BipartiteState(std::move(basis), a)), density_from_pure(split_single_pure())};
    }
    case ScenarioKind::single_vac_pure: {
      ComplexMatrix a = ComplexMatrix::Zero(2, 1);
      a(0, 0) = std::sqrt(1.0 - sc.p);
      a(1, 0) = std::sqrt(sc.p);
      BipartiteBasis basis({BasisLabel::vacuum(), BasisLabel::one_photon(0)}, {BasisLabel::vacuum()});
      return {density_from_pure(BipartiteState(std::move(basis), a)), density_from_pure(split_single_vac_pure(sc.p))};
    }
    case ScenarioKind::single_mixed:
      return {detail::single_input(1.0, diagonalize_kernel(*sc.kernel).probabilities), split_single_mixed(*sc.kernel)};
    case ScenarioKind::single_vac_mixed:
      return {detail::single_input(sc.p, diagonalize_kernel(*sc.kernel).probabilities),
              split_single_vac_mixed(sc.p, *sc.kernel)};
    case ScenarioKind::two_pure:
      return {density_from_pure(two_photon_vac_input(1.0, *sc.schmidt)), density_from_pure(split_two_pure(*sc.schmidt))};
    case ScenarioKind::two_vac_pure:
      return {density_from_pure(two_photon_vac_input(sc.p, *sc.schmidt)),
              density_from_pure(split_two_vac_pure(sc.p, *sc.schmidt))};
    case ScenarioKind::two_mixed: {
      const TwoPhotonMixture mix(*sc.joint, *sc.jitter);
      return {mix.input(1.0), mix.output(1.0)};
    }
    case ScenarioKind::two_vac_mixed: {
      const TwoPhotonMixture mix(*sc.joint, *sc.jitter);
      return {mix.input(sc.p), mix.output(sc.p)};
    }
  }
  throw InvalidInput("run_scenario: unknown scenario kind");
}

}  // namespace photonent
