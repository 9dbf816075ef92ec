#pragma once

#include <array>
#include <cmath>
#include <string_view>

#include "photonent/numerics.hpp"
#include "photonent/schmidt.hpp"

namespace photonent::reference {

enum class FormulaId {
  LN_single_mixed,
  purity_gauss_jitter,
  LN_gauss_jitter,
  E_vac1,
  LN_vac1,
  Pur_vac1_mixed,
  LN_vac1_mixed,
  E_pair,
  LN_pair,
  E_out_pair,
  LN_out_pair,
  E_vac2_in,
  LN_vac2_in,
  E_vac2_out,
  LN_vac2_out,
  E_diff_vac2,
  LN_diff_vac2,
  LN_filter_paper,
  LN_filter_direct,
};

inline constexpr std::array<FormulaId, 19> kAllFormulas{
    FormulaId::LN_single_mixed, FormulaId::purity_gauss_jitter, FormulaId::LN_gauss_jitter, FormulaId::E_vac1,
    FormulaId::LN_vac1,         FormulaId::Pur_vac1_mixed,      FormulaId::LN_vac1_mixed,   FormulaId::E_pair,
    FormulaId::LN_pair,         FormulaId::E_out_pair,          FormulaId::LN_out_pair,     FormulaId::E_vac2_in,
    FormulaId::LN_vac2_in,      FormulaId::E_vac2_out,          FormulaId::LN_vac2_out,     FormulaId::E_diff_vac2,
    FormulaId::LN_diff_vac2,    FormulaId::LN_filter_paper,     FormulaId::LN_filter_direct,
};

inline std::string_view name(FormulaId id) {
  switch (id) {
    case FormulaId::LN_single_mixed: return "LN_single_mixed";
    case FormulaId::purity_gauss_jitter: return "purity_gauss_jitter";
    case FormulaId::LN_gauss_jitter: return "LN_gauss_jitter";
    case FormulaId::E_vac1: return "E_vac1";
    case FormulaId::LN_vac1: return "LN_vac1";
    case FormulaId::Pur_vac1_mixed: return "Pur_vac1_mixed";
    case FormulaId::LN_vac1_mixed: return "LN_vac1_mixed";
    case FormulaId::E_pair: return "E_pair";
    case FormulaId::LN_pair: return "LN_pair";
    case FormulaId::E_out_pair: return "E_out_pair";
    case FormulaId::LN_out_pair: return "LN_out_pair";
    case FormulaId::E_vac2_in: return "E_vac2_in";
    case FormulaId::LN_vac2_in: return "LN_vac2_in";
    case FormulaId::E_vac2_out: return "E_vac2_out";
    case FormulaId::LN_vac2_out: return "LN_vac2_out";
    case FormulaId::E_diff_vac2: return "E_diff_vac2";
    case FormulaId::LN_diff_vac2: return "LN_diff_vac2";
    case FormulaId::LN_filter_paper: return "LN_filter_paper";
    case FormulaId::LN_filter_direct: return "LN_filter_direct";
  }
  return "?";
}

namespace detail {

// -x log2 x with 0 log 0 = 0.
inline double h(double x) { return x > 0.0 ? -x * std::log2(x) : 0.0; }

inline void require_p(double p, const char* where) {
  photonent::detail::require(std::isfinite(p) && p >= 0.0 && p <= 1.0, std::string(where) + ": p must lie in [0, 1]");
}

inline SchmidtData checked(const RealVector& lambdas) { return SchmidtData::from_coefficients(lambdas); }

inline double sum_sqrt(const RealVector& lambdas) { return lambdas.cwiseMax(0.0).cwiseSqrt().sum(); }

}  // namespace detail

/// log2(1 + sqrt(purity)), purity in (0, 1].
inline double ln_single_mixed(double purity) {
  photonent::detail::require(std::isfinite(purity) && purity > 0.0 && purity <= 1.0,
                             "ln_single_mixed: purity must lie in (0, 1]");
  return std::log2(1.0 + std::sqrt(purity));
}

/// Quoted closed form (1 + 4 sigma^2 sigma_tau^2)^(-1/2).
inline double purity_gauss_jitter(double sigma, double sigma_tau) {
  photonent::detail::require(std::isfinite(sigma) && std::isfinite(sigma_tau) && sigma >= 0.0 && sigma_tau >= 0.0,
                             "purity_gauss_jitter: sigma and sigma_tau must be >= 0");
  return 1.0 / std::sqrt(1.0 + 4.0 * sigma * sigma * sigma_tau * sigma_tau);
}

/// Continuum purity of psi ~ exp(-nu^2/sigma^2) under P(tau) ~ exp(-tau^2/sigma_tau^2)
/// with psi_tau = psi e^{-i nu tau}: (1 + sigma^2 sigma_tau^2 / 2)^(-1/2).
inline double purity_gauss_jitter_model(double sigma, double sigma_tau) {
  photonent::detail::require(std::isfinite(sigma) && std::isfinite(sigma_tau) && sigma >= 0.0 && sigma_tau >= 0.0,
                             "purity_gauss_jitter_model: sigma and sigma_tau must be >= 0");
  return 1.0 / std::sqrt(1.0 + 0.5 * sigma * sigma * sigma_tau * sigma_tau);
}

/// log2[1 + (1 + 4 sigma^2 sigma_tau^2)^(-1/4)].
inline double ln_gauss_jitter(double sigma, double sigma_tau) {
  return ln_single_mixed(purity_gauss_jitter(sigma, sigma_tau));
}

/// Entropy of sqrt(1-p)|00> + sqrt(p/2)(|10> + |01>).
inline double e_vac1(double p) {
  detail::require_p(p, "e_vac1");
  const double s = std::sqrt(1.0 - p * p);
  const double a = (1.0 + s) > 0.0 ? (1.0 + s) * std::log2(1.0 + s) : 0.0;
  const double b = (1.0 - s) > 0.0 ? (1.0 - s) * std::log2(1.0 - s) : 0.0;
  return 1.0 - 0.5 * (a + b);
}

inline double ln_vac1(double p) {
  detail::require_p(p, "ln_vac1");
  return std::log2(1.0 + p);
}

/// (1-p)^2 + p^2 sum lambda^2 = (1-p)^2 + p^2 * kernel_purity.
inline double purity_vac1_mixed(double p, double kernel_purity) {
  detail::require_p(p, "purity_vac1_mixed");
  photonent::detail::require(std::isfinite(kernel_purity) && kernel_purity > 0.0 && kernel_purity <= 1.0,
                             "purity_vac1_mixed: kernel purity must lie in (0, 1]");
  return (1.0 - p) * (1.0 - p) + p * p * kernel_purity;
}

/// log2(p + sqrt((1-p)^2 + p^2 sum lambda^2)).
inline double ln_vac1_mixed(double p, double kernel_purity) {
  return std::log2(p + std::sqrt(purity_vac1_mixed(p, kernel_purity)));
}

struct Measures {
  double entropy;
  double log_negativity;
};

/// E = -sum l log2 l, E_N = 2 log2 sum sqrt(l).
inline Measures pair_measures(const RealVector& lambdas) {
  const SchmidtData sd = detail::checked(lambdas);
  return {shannon_entropy_bits(sd.lambdas), log_negativity_pure(sd)};
}

/// E_out = 2 + E_in/2, E_N,out = 2 log2(1 + 2^(E_N,in / 2)).
inline Measures pair_out_relations(double e_in, double ln_in) {
  photonent::detail::require(std::isfinite(e_in) && std::isfinite(ln_in), "pair_out_relations: non-finite input");
  return {2.0 + 0.5 * e_in, 2.0 * std::log2(1.0 + std::exp2(0.5 * ln_in))};
}

struct Vac2Measures {
  double e_in;
  double ln_in;
  double e_out;
  double ln_out;
  double e_diff;   // E_out - E_in/2 in its quoted form
  double ln_diff;  // 2^(E_N,out/2) - 2^(E_N,in/2)
};

/// The two eigenvalues [(1 - p/2) +- sqrt(1-p)] / 2 of the {vac, 2~} block.
inline std::array<double, 2> vac2_block_eigenvalues(double p) {
  detail::require_p(p, "vac2_block_eigenvalues");
  const double a = 1.0 - 0.5 * p;
  const double r = std::sqrt(1.0 - p);
  return {0.5 * (a + r), std::max(0.0, 0.5 * (a - r))};
}

/// Quoted E_out - E_in/2 = binary + (1-p)/2 log2((1-p)/2) + 1.
inline double e_diff_vac2_quoted(double p) {
  const auto e = vac2_block_eigenvalues(p);
  const double q = 0.5 * (1.0 - p);
  return detail::h(e[0]) + detail::h(e[1]) - detail::h(q) + 1.0;
}

/// E_out - E_in/2 as implied by the E_in and E_out expressions:
/// binary + p + (1-p)/2 log2(1-p).
inline double e_diff_vac2_consistent(double p) {
  const auto e = vac2_block_eigenvalues(p);
  return detail::h(e[0]) + detail::h(e[1]) + p - 0.5 * detail::h(1.0 - p);
}

inline Vac2Measures vac2_measures(double p, const RealVector& lambdas) {
  detail::require_p(p, "vac2_measures");
  const SchmidtData sd = detail::checked(lambdas);
  const double e_lambda = shannon_entropy_bits(sd.lambdas);
  const double s = detail::sum_sqrt(sd.lambdas);
  const auto e = vac2_block_eigenvalues(p);

  Vac2Measures out{};
  out.e_in = detail::h(1.0 - p) + detail::h(p) + p * e_lambda;
  out.ln_in = 2.0 * std::log2(std::sqrt(1.0 - p) + std::sqrt(p) * s);
  out.e_out = detail::h(e[0]) + detail::h(e[1]) + p + 0.5 * detail::h(p) + 0.5 * p * e_lambda;
  out.ln_out = 2.0 * std::log2(1.0 + std::sqrt(p) * s);
  out.e_diff = e_diff_vac2_quoted(p);
  out.ln_diff = 1.0 - std::sqrt(1.0 - p);
  return out;
}

/// Quoted average p + p log2 sum sqrt(l) - (1 - p/2) log2(1 - p/2).
inline double filter_average_paper(double p, const RealVector& lambdas) {
  detail::require_p(p, "filter_average_paper");
  const SchmidtData sd = detail::checked(lambdas);
  return p + p * std::log2(detail::sum_sqrt(sd.lambdas)) - (1.0 - 0.5 * p) * std::log2(1.0 - 0.5 * p);
}

/// Branch-by-branch average: (1 - p/2)(-log2(1 - p/2)) + (p/2)(1 + 2 log2 sum sqrt(l)).
inline double filter_average_direct(double p, const RealVector& lambdas) {
  detail::require_p(p, "filter_average_direct");
  const SchmidtData sd = detail::checked(lambdas);
  const double even = 1.0 - 0.5 * p;
  return -even * std::log2(even) + 0.5 * p * (1.0 + 2.0 * std::log2(detail::sum_sqrt(sd.lambdas)));
}

}  // namespace photonent::reference
