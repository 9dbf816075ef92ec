#pragma once

#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "photonent/fockspace.hpp"
#include "photonent/pairsource.hpp"
#include "photonent/reference.hpp"
#include "photonent/splitter.hpp"
#include "photonent/wavepacket.hpp"

namespace photonent::figures {

/// Bad command-line or config values; the CLI maps it to exit code 2.
class UsageError : public std::runtime_error {
 public:
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

/// lo:hi:step, inclusive of hi when it lands on the lattice.
struct Sweep {
  double lo = 0.0;
  double hi = 1.0;
  double step = 0.1;

  void validate() const {
    if (!(std::isfinite(lo) && std::isfinite(hi) && std::isfinite(step))) throw UsageError("sweep: non-finite value");
    if (!(lo < hi)) throw UsageError("sweep: lo must be < hi");
    if (!(step > 0.0)) throw UsageError("sweep: step must be > 0");
  }

  int count() const { return static_cast<int>(std::floor((hi - lo) / step + 1e-9)) + 1; }
  double value(int i) const { return lo + i * step; }

  static Sweep parse(const std::string& text) {
    Sweep s;
    char tail = 0;
    if (std::sscanf(text.c_str(), "%lf:%lf:%lf%c", &s.lo, &s.hi, &s.step, &tail) != 3)
      throw UsageError("sweep: expected lo:hi:step, got '" + text + "'");
    s.validate();
    return s;
  }
};

enum class Command { single, two, vacuum, purity_scan, check };

struct RunConfig {
  Command command = Command::check;
  double sigma = 1.0;      // pump / packet width, units of Omega
  double sigma_tau = 1.0;  // jitter width, units of 1/Omega
  double p = 0.5;
  int grid_n = 64;
  int tau_n = 41;
  double cutoff = 2.0;
  std::optional<Sweep> sweep;
  bool mixed = false;  // `two`: sweep sigma_tau instead of sigma
  std::string out;     // empty = stdout

  void validate() const {
    if (grid_n < 8) throw UsageError("--grid-n must be >= 8");
    if (tau_n < 3 || tau_n % 2 == 0) throw UsageError("--tau-n must be odd and >= 3");
    if (!(std::isfinite(cutoff) && cutoff > 0.0)) throw UsageError("--cutoff must be > 0");
    if (!(std::isfinite(sigma) && sigma > 0.0)) throw UsageError("--sigma must be > 0");
    if (!(std::isfinite(sigma_tau) && sigma_tau >= 0.0)) throw UsageError("--sigma-tau must be >= 0");
    if (!(std::isfinite(p) && p >= 0.0 && p <= 1.0)) throw UsageError("--p must lie in [0, 1]");
    if (sweep) sweep->validate();
  }

  Sweep effective_sweep() const {
    if (sweep) return *sweep;
    if (command == Command::two && !mixed) return {0.1, 3.0, 0.1};
    if (command == Command::vacuum) return {0.0, 1.0, 0.05};
    return {0.0, 3.0, 0.1};
  }

  FrequencyGrid grid() const { return FrequencyGrid::symmetric(cutoff, grid_n); }
  JitterModel jitter(double st) const { return JitterModel(st, tau_n); }
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

/// 12 significant digits; negative zero written as 0.
inline std::string format_number(double x) {
  if (x == 0.0) x = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

inline std::string to_csv(const CsvTable& t) {
  std::string s = "# photon-ent v1\n";
  for (std::size_t i = 0; i < t.header.size(); ++i) s += (i ? "," : "") + t.header[i];
  s += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) s += (i ? "," : "") + format_number(row[i]);
    s += '\n';
  }
  return s;
}

/// Single photon with Gaussian jitter, swept over sigma_tau.
inline CsvTable cmd_single(const RunConfig& cfg) {
  cfg.validate();
  const Sweep sw = cfg.effective_sweep();
  const PurePacket packet = gaussian_packet(cfg.grid(), cfg.sigma);
  CsvTable t{{"sigma_tau", "purity_numeric", "purity_analytic", "ln_numeric", "ln_analytic", "purity_model",
              "ln_purity_relation"},
             {}};
  for (int i = 0; i < sw.count(); ++i) {
    const double st = sw.value(i);
    const SinglePhotonKernel k = jitter_kernel(packet, cfg.jitter(st));
    const double pur = kernel_purity(k);
    t.rows.push_back({st, pur, reference::purity_gauss_jitter(cfg.sigma, st), log_negativity(split_single_mixed(k)),
                      reference::ln_gauss_jitter(cfg.sigma, st), reference::purity_gauss_jitter_model(cfg.sigma, st),
                      reference::ln_single_mixed(std::min(pur, 1.0))});
  }
  return t;
}

struct PurePairPoint {
  double e_in, e_out, ln_in, ln_out;
};

inline PurePairPoint pure_pair_point(const FrequencyGrid& grid, double sigma) {
  const SchmidtData sd = schmidt(joint_amplitude(grid, sigma));
  const PairEntanglement in = pre_splitter_entanglement(sd);
  const BipartiteState out = split_two_pure(sd);
  return {in.entropy, entropy_of_entanglement(out), in.log_negativity, log_negativity(out)};
}

struct MixedPairPoint {
  double ln_out, ln_in, ln_pure_relation, ln_filtered, purity;
};

inline MixedPairPoint mixed_pair_point(const TwoPhotonMixture& mix, double p) {
  const BipartiteDensity out = mix.output(p);
  const double ln_in = log_negativity(mix.input(p));
  const double rel = 2.0 * std::log2(std::exp2(0.5 * ln_in) + 1.0 - std::sqrt(1.0 - p));
  return {log_negativity(out), ln_in, rel, filtered_negativity(out), purity(out)};
}

/// Pure pair swept over sigma, or (mixed) jittered pair swept over sigma_tau.
inline CsvTable cmd_two(const RunConfig& cfg) {
  cfg.validate();
  const Sweep sw = cfg.effective_sweep();
  const FrequencyGrid grid = cfg.grid();
  CsvTable t;
  if (!cfg.mixed) {
    t.header = {"sigma", "E_in", "E_out", "LN_in", "LN_out", "E_relation_residual", "LN_relation_residual"};
    for (int i = 0; i < sw.count(); ++i) {
      const double s = sw.value(i);
      if (!(s > 0.0)) throw UsageError("two: sigma sweep must stay > 0");
      const PurePairPoint r = pure_pair_point(grid, s);
      t.rows.push_back({s, r.e_in, r.e_out, r.ln_in, r.ln_out, r.e_out - (2.0 + 0.5 * r.e_in),
                        std::exp2(0.5 * r.ln_out) - (1.0 + std::exp2(0.5 * r.ln_in))});
    }
    return t;
  }
  t.header = {"sigma_tau", "LN_out_numeric", "LN_out_pure_relation", "LN_filtered", "purity"};
  const JointAmplitude ja = joint_amplitude(grid, cfg.sigma);
  for (int i = 0; i < sw.count(); ++i) {
    const double st = sw.value(i);
    if (st < 0.0) throw UsageError("two: sigma_tau sweep must stay >= 0");
    const MixedPairPoint r = mixed_pair_point(TwoPhotonMixture(ja, cfg.jitter(st)), 1.0);
    t.rows.push_back({st, r.ln_out, r.ln_pure_relation, r.ln_filtered, r.purity});
  }
  return t;
}

/// Jittered pair plus vacuum, swept over p at fixed sigma, sigma_tau.
inline CsvTable cmd_vacuum(const RunConfig& cfg) {
  cfg.validate();
  const Sweep sw = cfg.effective_sweep();
  const TwoPhotonMixture mix(joint_amplitude(cfg.grid(), cfg.sigma), cfg.jitter(cfg.sigma_tau));
  CsvTable t{{"p", "LN_out", "LN_pure_relation", "LN_filtered"}, {}};
  for (int i = 0; i < sw.count(); ++i) {
    const double p = sw.value(i);
    if (p < -1e-12 || p > 1.0 + 1e-12) throw UsageError("vacuum: p sweep must stay inside [0, 1]");
    const MixedPairPoint r = mixed_pair_point(mix, std::clamp(p, 0.0, 1.0));
    t.rows.push_back({p, r.ln_out, r.ln_pure_relation, r.ln_filtered});
  }
  return t;
}

/// Single and pair entanglement against their purities, swept over sigma_tau.
inline CsvTable cmd_purity_scan(const RunConfig& cfg) {
  cfg.validate();
  const Sweep sw = cfg.effective_sweep();
  const FrequencyGrid grid = cfg.grid();
  const PurePacket packet = gaussian_packet(grid, cfg.sigma);
  const JointAmplitude ja = joint_amplitude(grid, cfg.sigma);
  CsvTable t{{"sigma_tau", "purity_single", "LN_single", "purity_two", "LN_two"}, {}};
  for (int i = 0; i < sw.count(); ++i) {
    const double st = sw.value(i);
    if (st < 0.0) throw UsageError("purity-scan: sigma_tau sweep must stay >= 0");
    const SinglePhotonKernel k = jitter_kernel(packet, cfg.jitter(st));
    const BipartiteDensity two = TwoPhotonMixture(ja, cfg.jitter(st)).output(1.0);
    t.rows.push_back({st, kernel_purity(k), log_negativity(split_single_mixed(k)), purity(two), log_negativity(two)});
  }
  return t;
}

// ---------------------------------------------------------------- check

/// Polarization singlet, classically mixed over two colors.
/// Per side: H and V photons of color 0 (green) and 1 (blue).
inline BipartiteDensity color_mixed_singlet() {
  const std::vector<BasisLabel> side{
      BasisLabel::one_photon(0, Polarization::h), BasisLabel::one_photon(1, Polarization::h),
      BasisLabel::one_photon(0, Polarization::v), BasisLabel::one_photon(1, Polarization::v)};
  const BipartiteBasis basis(side, side);
  std::vector<EnsembleMember> members;
  const double r = 1.0 / std::sqrt(2.0);
  for (int color = 0; color < 2; ++color) {
    const BasisLabel h = BasisLabel::one_photon(color, Polarization::h);
    const BasisLabel v = BasisLabel::one_photon(color, Polarization::v);
    const BipartiteState s = BipartiteState::from_terms(basis, {{h, v, r}, {v, h, -r}});
    members.push_back({0.5, s.amplitudes()});
  }
  return BipartiteDensity::from_ensemble(basis, std::move(members));
}

/// Delocalized photon (|0>|1> + |1>|0>)/sqrt2, equally mixed over two colors.
inline BipartiteDensity two_color_delocalized_photon() {
  const std::vector<BasisLabel> side{BasisLabel::vacuum(), BasisLabel::one_photon(0), BasisLabel::one_photon(1)};
  const BipartiteBasis basis(side, side);
  const double r = 1.0 / std::sqrt(2.0);
  std::vector<WeightedDensity> parts;
  for (int color = 0; color < 2; ++color) {
    const BasisLabel one = BasisLabel::one_photon(color);
    parts.push_back({0.5, density_from_pure(BipartiteState::from_terms(
                              basis, {{BasisLabel::vacuum(), one, r}, {one, BasisLabel::vacuum(), r}}))});
  }
  return mix(parts);
}

enum class Verdict { pass, fail, warning };

struct CheckLine {
  Verdict verdict;
  std::string name;
  std::string detail;
};

namespace detail {

inline std::string fmt(double x, int digits = 12) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

inline std::string sci(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

inline CheckLine within(const std::string& name, double got, double want, double tol) {
  const double err = std::abs(got - want);
  return {err <= tol ? Verdict::pass : Verdict::fail, name,
          "got " + fmt(got) + " want " + fmt(want) + " |diff| " + sci(err) + " tol " + sci(tol)};
}

// Kernel with random spectrum over `modes` orthonormal grid vectors.
inline SinglePhotonKernel random_kernel(std::mt19937_64& rng, const FrequencyGrid& grid, int modes) {
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> uni(0.05, 1.0);
  ComplexMatrix x(grid.size(), modes);
  for (Index j = 0; j < x.cols(); ++j)
    for (Index i = 0; i < x.rows(); ++i) x(i, j) = cplx(gauss(rng), gauss(rng));
  const ComplexMatrix q = Eigen::HouseholderQR<ComplexMatrix>(x).householderQ() * ComplexMatrix::Identity(grid.size(), modes);
  RealVector p(modes);
  for (int k = 0; k < modes; ++k) p(k) = uni(rng);
  p /= p.sum();
  ComplexMatrix k = q * p.asDiagonal() * q.adjoint() / grid.step();
  k = 0.5 * (k + k.adjoint()).eval();
  k /= grid.step() * k.trace().real();
  return {grid, HermitianMatrix(k)};
}

}  // namespace detail

/// Cross-checks of the constructive pipeline against closed forms on small grids.
inline std::vector<CheckLine> collect_checks() {
  using detail::within;
  std::vector<CheckLine> out;

  {
    const BipartiteDensity rho = color_mixed_singlet();
    const RealVector ev = pt_spectrum(rho);
    int plus = 0, minus = 0, zero = 0;
    double worst = 0.0;
    for (Index k = 0; k < ev.size(); ++k) {
      if (std::abs(ev(k)) < kZeroThreshold) {
        ++zero;
      } else if (ev(k) > 0) {
        ++plus;
        worst = std::max(worst, std::abs(ev(k) - 0.25));
      } else {
        ++minus;
        worst = std::max(worst, std::abs(ev(k) + 0.25));
      }
    }
    const bool ok = plus == 6 && minus == 2 && worst <= 1e-12;
    out.push_back({ok ? Verdict::pass : Verdict::fail, "color_singlet_pt_spectrum",
                   std::to_string(plus) + "x(+1/4) " + std::to_string(minus) + "x(-1/4) " + std::to_string(zero) +
                       "x0 max dev " + detail::sci(worst)});
    const double en = log_negativity(rho);
    out.push_back({std::abs(en - 1.0) <= 1e-12 ? Verdict::pass : Verdict::fail, "color_singlet_log_negativity",
                   "E_N = " + detail::fmt(en)});
  }

  out.push_back(within("delocalized_photon_log_negativity", log_negativity(two_color_delocalized_photon()),
                       std::log2(1.0 + std::sqrt(0.5)), 1e-10));

  {
    std::mt19937_64 rng(20240611);
    const FrequencyGrid grid = FrequencyGrid::symmetric(2.0, 32);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      const SinglePhotonKernel k = detail::random_kernel(rng, grid, 2 + trial % 15);
      const double en = log_negativity(split_single_mixed(k));
      worst = std::max(worst, std::abs(en - reference::ln_single_mixed(kernel_purity(k))));
    }
    out.push_back({worst <= 1e-8 ? Verdict::pass : Verdict::fail, "single_mixed_ln_vs_purity",
                   "20 random kernels, max |diff| " + detail::sci(worst)});
  }

  {
    const FrequencyGrid grid = FrequencyGrid::symmetric(2.0, 64);
    const PurePacket packet = gaussian_packet(grid, 1.0);
    const double pur = kernel_purity(jitter_kernel(packet, JitterModel(1.0, 41)));
    const double quoted = reference::purity_gauss_jitter(1.0, 1.0);
    out.push_back({std::abs(pur - quoted) <= 1e-6 ? Verdict::pass : Verdict::warning, "gauss_jitter_purity_quoted",
                   "numeric " + detail::fmt(pur) + " quoted closed form " + detail::fmt(quoted)});
    const double pur0 = kernel_purity(jitter_kernel(packet, JitterModel(0.0, 41)));
    out.push_back(within("gauss_jitter_purity_pure_limit", pur0, 1.0, 1e-10));
  }

  for (double p : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    const BipartiteState s = split_single_vac_pure(p);
    out.push_back(within("vac1_ln p=" + detail::fmt(p, 2), log_negativity(density_from_pure(s)), reference::ln_vac1(p),
                         1e-10));
    out.push_back(within("vac1_entropy p=" + detail::fmt(p, 2), entropy_of_entanglement(s), reference::e_vac1(p), 1e-8));
  }

  {
    const FrequencyGrid grid = FrequencyGrid::symmetric(2.0, 32);
    const SinglePhotonKernel k = jitter_kernel(gaussian_packet(grid, 1.0), JitterModel(1.0, 41));
    const double kp = kernel_purity(k);
    for (double p : {0.25, 0.75}) {
      const BipartiteDensity rho = split_single_vac_mixed(p, k);
      out.push_back(within("vac1_mixed_purity p=" + detail::fmt(p, 2), purity(rho),
                           reference::purity_vac1_mixed(p, kp), 1e-10));
      out.push_back(within("vac1_mixed_ln p=" + detail::fmt(p, 2), log_negativity(rho),
                           reference::ln_vac1_mixed(p, kp), 1e-8));
    }
  }

  {
    const FrequencyGrid grid = FrequencyGrid::symmetric(2.0, 32);
    for (double s : {0.5, 1.0, 2.0}) {
      const PurePairPoint r = pure_pair_point(grid, s);
      const reference::Measures rel = reference::pair_out_relations(r.e_in, r.ln_in);
      out.push_back(within("pair_entropy_relation sigma=" + detail::fmt(s, 1), r.e_out, rel.entropy, 1e-8));
      out.push_back(within("pair_ln_relation sigma=" + detail::fmt(s, 1), r.ln_out, rel.log_negativity, 1e-8));
    }
  }

  {
    const SchmidtData sd = schmidt(joint_amplitude(FrequencyGrid::symmetric(2.0, 32), 1.0));
    for (double p : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      const reference::Vac2Measures m = reference::vac2_measures(p, sd.lambdas);
      const BipartiteState in = two_photon_vac_input(p, sd);
      const BipartiteState st = split_two_vac_pure(p, sd);
      const std::string tag = " p=" + detail::fmt(p, 2);
      out.push_back(within("vac2_entropy_in" + tag, entropy_of_entanglement(in), m.e_in, 1e-8));
      out.push_back(within("vac2_entropy_out" + tag, entropy_of_entanglement(st), m.e_out, 1e-8));
      const double ln_in = log_negativity(in);
      const double ln_out = log_negativity(st);
      out.push_back(within("vac2_ln_out" + tag, ln_out, m.ln_out, 1e-8));
      out.push_back(within("vac2_ln_diff" + tag, std::exp2(0.5 * ln_out) - std::exp2(0.5 * ln_in), m.ln_diff, 1e-10));
      const double diff = m.e_out - 0.5 * m.e_in;
      const double quoted = reference::e_diff_vac2_quoted(p);
      out.push_back(within("vac2_entropy_diff_consistent" + tag, diff, reference::e_diff_vac2_consistent(p), 1e-10));
      out.push_back({std::abs(diff - quoted) <= 1e-10 ? Verdict::pass : Verdict::warning,
                     "vac2_entropy_diff_quoted" + tag,
                     "E_out - E_in/2 = " + detail::fmt(diff) + " quoted form " + detail::fmt(quoted)});
    }
  }

  {
    const RealVector half = RealVector::Constant(2, 0.5);
    const SchmidtData sd = SchmidtData::from_coefficients(half);
    for (double p : {0.5, 1.0}) {
      const double direct = filtered_negativity(split_two_vac_pure(p, sd));
      const std::string tag = " p=" + detail::fmt(p, 2);
      out.push_back(within("filter_direct" + tag, direct, reference::filter_average_direct(p, half), 1e-8));
      const double quoted = reference::filter_average_paper(p, half);
      out.push_back({std::abs(direct - quoted) <= 1e-8 ? Verdict::pass : Verdict::warning, "filter_quoted" + tag,
                     "constructed " + detail::fmt(direct) + " quoted form " + detail::fmt(quoted)});
    }
  }

  {
    const FrequencyGrid grid = FrequencyGrid::symmetric(2.0, 24);
    const JointAmplitude ja = joint_amplitude(grid, 1.0);
    const double pure = log_negativity(split_two_pure(schmidt(ja)));
    const BipartiteDensity zero = TwoPhotonMixture(ja, JitterModel(0.0, 41)).output(1.0);
    out.push_back(within("pair_mixed_pure_limit", log_negativity(zero), pure, 1e-8));
    const TwoPhotonMixture mixd(ja, JitterModel(1.0, 41));
    const BipartiteDensity in = mixd.input(1.0);
    const BipartiteDensity o = mixd.output(1.0);
    out.push_back(within("pair_mixed_unitarity", purity(o), purity(in), 1e-8));
    const double ln_o = log_negativity(o);
    const double bound = 2.0 * std::log2(1.0 + std::exp2(0.5 * log_negativity(in)));
    out.push_back({ln_o <= bound + 1e-8 ? Verdict::pass : Verdict::fail, "pair_mixed_below_pure_relation",
                   "LN_out " + detail::fmt(ln_o) + " relation " + detail::fmt(bound)});
    const double filt = filtered_negativity(o);
    out.push_back({filt <= ln_o + 1e-8 ? Verdict::pass : Verdict::fail, "pair_mixed_filter_bound",
                   "filtered " + detail::fmt(filt) + " unfiltered " + detail::fmt(ln_o)});
  }
  return out;
}

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::pass: return "PASS";
    case Verdict::fail: return "FAIL";
    case Verdict::warning: return "WARNING";
  }
  return "?";
}

/// Prints one line per check; true iff nothing failed (warnings allowed).
inline bool run_checks(std::ostream& os) {
  bool ok = true;
  for (const CheckLine& c : collect_checks()) {
    char head[64];
    std::snprintf(head, sizeof head, "%-8s", verdict_name(c.verdict));
    os << head << c.name << "  " << c.detail << '\n';
    ok = ok && c.verdict != Verdict::fail;
  }
  os << (ok ? "all checks passed" : "some checks FAILED") << '\n';
  return ok;
}

}  // namespace photonent::figures
