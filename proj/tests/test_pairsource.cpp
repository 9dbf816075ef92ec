#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "photonent/fockspace.hpp"
#include "photonent/pairsource.hpp"

using namespace photonent;

namespace {

// Continuum reconstruction sum_k sqrt(l_k) h_k(x) v_k(y).
ComplexMatrix rebuild(const SchmidtData& sd) {
  return sd.h_modes * sd.lambdas.cwiseSqrt().cast<cplx>().asDiagonal() * sd.v_modes.transpose();
}

JointAmplitude mehler(double a, double b, const FrequencyGrid& g) {
  ComplexMatrix s(g.size(), g.size());
  for (int i = 0; i < g.size(); ++i)
    for (int j = 0; j < g.size(); ++j) {
      const double x = g.point(i), y = g.point(j);
      s(i, j) = std::exp(-a * (x + y) * (x + y) - b * (x - y) * (x - y));
    }
  return JointAmplitude::from_samples(g, g, s);
}

}  // namespace

TEST(JointAmplitude, PeakAtOriginOnOddGrid) {
  const FrequencyGrid g = FrequencyGrid::symmetric(2.0, 65);
  const JointAmplitude ja = joint_amplitude(g, 1.0);
  Index r = 0, c = 0;
  ja.psi().cwiseAbs().maxCoeff(&r, &c);
  EXPECT_EQ(r, 32);
  EXPECT_EQ(c, 32);
  EXPECT_EQ(g.point(32), 0.0);
}

TEST(JointAmplitude, SincZeroAlongOrdinaryAxis) {
  const FrequencyGrid g = FrequencyGrid::symmetric(2.0, 65);
  const JointAmplitude ja = joint_amplitude(g, 1.0);
  const double zero = M_PI / 2.25;
  int crossings = 0;
  for (int j = 32; j + 1 < 65; ++j) {
    const double a = ja.psi()(j, 32).real(), b = ja.psi()(j + 1, 32).real();
    if (a > 0.0 && b < 0.0) {
      ++crossings;
      EXPECT_LE(g.point(j), zero);
      EXPECT_GE(g.point(j + 1), zero);
    }
  }
  EXPECT_EQ(crossings, 1);
}

TEST(JointAmplitude, RealAndNormalized) {
  const FrequencyGrid g = FrequencyGrid::symmetric(2.0, 48);
  const JointAmplitude ja = joint_amplitude(g, 0.7);
  EXPECT_TRUE(ja.is_real());
  EXPECT_EQ(ja.psi().imag().cwiseAbs().maxCoeff(), 0.0);
  EXPECT_NEAR(ja.discrete().squaredNorm(), 1.0, 1e-12);
  EXPECT_EQ(ja.sigma_pump(), 0.7);
}

TEST(JointAmplitude, RejectsBadInput) {
  const FrequencyGrid g = FrequencyGrid::symmetric(2.0, 16);
  EXPECT_THROW(joint_amplitude(g, 0.0), InvalidInput);
  EXPECT_THROW(joint_amplitude(g, -1.0), InvalidInput);
  EXPECT_THROW(JointAmplitude(g, g, ComplexMatrix::Ones(16, 16)), InvalidInput);
  EXPECT_THROW(JointAmplitude::from_samples(g, g, ComplexMatrix::Ones(16, 15)), InvalidInput);
  EXPECT_THROW(JointAmplitude::from_samples(g, g, ComplexMatrix::Zero(16, 16)), InvalidInput);
  PhaseMatchParams bad;
  bad.a_o = std::nan("");
  EXPECT_THROW(joint_amplitude(g, 1.0, bad), InvalidInput);
}

TEST(Schmidt, SeparableAmplitudeHasOneMode) {
  const FrequencyGrid g = FrequencyGrid::symmetric(3.0, 48);
  ComplexMatrix s(48, 48);
  for (int i = 0; i < 48; ++i)
    for (int j = 0; j < 48; ++j) s(i, j) = std::exp(-g.point(i) * g.point(i)) * std::exp(-2.0 * g.point(j) * g.point(j));
  const SchmidtData sd = schmidt(JointAmplitude::from_samples(g, g, s));
  ASSERT_EQ(sd.rank(), 1);
  EXPECT_NEAR(sd.lambdas(0), 1.0, 1e-12);
  const PairEntanglement e = pre_splitter_entanglement(sd);
  EXPECT_NEAR(e.entropy, 0.0, 1e-12);
  EXPECT_NEAR(e.log_negativity, 0.0, 1e-12);
}

TEST(Schmidt, GaussianGeometricSpectrum) {
  const FrequencyGrid g = FrequencyGrid::symmetric(6.0, 160);
  const double a = 1.0, b = 0.25;
  const double mu = std::pow((std::sqrt(a) - std::sqrt(b)) / (std::sqrt(a) + std::sqrt(b)), 2);
  for (const SchmidtData& sd : {schmidt(mehler(a, b, g)), schmidt_via_reduced_kernel(mehler(a, b, g))}) {
    ASSERT_GE(sd.rank(), 8);
    for (Index n = 0; n < 8; ++n) EXPECT_NEAR(sd.lambdas(n), (1.0 - mu) * std::pow(mu, static_cast<double>(n)), 1e-10);
  }
}

TEST(Schmidt, TwoRoutesAgree) {
  const FrequencyGrid g = FrequencyGrid::symmetric(2.0, 48);
  for (double sigma : {0.3, 0.7, 1.0, 1.5, 2.5}) {
    const JointAmplitude ja = joint_amplitude(g, sigma);
    const SchmidtData a = schmidt(ja), b = schmidt_via_reduced_kernel(ja);
    const Index n = std::min(a.rank(), b.rank());
    for (Index k = 0; k < n; ++k) EXPECT_NEAR(a.lambdas(k), b.lambdas(k), 1e-10) << "sigma " << sigma << " k " << k;
    EXPECT_NEAR(pre_splitter_entanglement(a).entropy, pre_splitter_entanglement(b).entropy, 1e-8);
  }
}

TEST(Schmidt, ModesRebuildAmplitude) {
  const FrequencyGrid g = FrequencyGrid::symmetric(2.0, 48);
  for (double sigma : {0.5, 1.0, 2.0}) {
    const JointAmplitude ja = joint_amplitude(g, sigma);
    const double scale = ja.psi().cwiseAbs().maxCoeff();
    // coefficients under 1e-12 are dropped, each worth ~1e-6 in amplitude
    EXPECT_LE((rebuild(schmidt(ja)) - ja.psi()).cwiseAbs().maxCoeff(), 1e-5 * scale);
    EXPECT_LE((rebuild(schmidt_via_reduced_kernel(ja)) - ja.psi()).cwiseAbs().maxCoeff(), 1e-5 * scale);
  }
}

TEST(Schmidt, ModesContinuumNormalized) {
  const FrequencyGrid g = FrequencyGrid::symmetric(2.0, 48);
  const SchmidtData sd = schmidt(joint_amplitude(g, 1.0));
  const ComplexMatrix gh = g.step() * sd.h_modes.adjoint() * sd.h_modes;
  const ComplexMatrix gv = g.step() * sd.v_modes.adjoint() * sd.v_modes;
  const Index r = sd.rank();
  EXPECT_LE((gh - ComplexMatrix::Identity(r, r)).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_LE((gv - ComplexMatrix::Identity(r, r)).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Schmidt, CoefficientsSumToOneWithinRank) {
  const FrequencyGrid g = FrequencyGrid::symmetric(2.0, 32);
  for (double sigma : {0.2, 1.0, 3.0}) {
    const SchmidtData sd = schmidt(joint_amplitude(g, sigma));
    EXPECT_NEAR(sd.lambdas.sum(), 1.0, 1e-12);
    EXPECT_LE(sd.rank(), 32);
    EXPECT_GE(sd.lambdas.minCoeff(), 1e-12);
    for (Index k = 1; k < sd.rank(); ++k) EXPECT_GE(sd.lambdas(k - 1), sd.lambdas(k));
  }
}

TEST(Entanglement, SchmidtExamples) {
  auto e = pre_splitter_entanglement(SchmidtData::from_coefficients(std::vector<double>{1.0}));
  EXPECT_EQ(e.entropy, 0.0);
  EXPECT_EQ(e.log_negativity, 0.0);
  e = pre_splitter_entanglement(SchmidtData::from_coefficients(std::vector<double>{0.5, 0.5}));
  EXPECT_NEAR(e.entropy, 1.0, 1e-15);
  EXPECT_NEAR(e.log_negativity, 1.0, 1e-15);
  e = pre_splitter_entanglement(SchmidtData::from_coefficients(std::vector<double>{0.25, 0.25, 0.25, 0.25}));
  EXPECT_NEAR(e.entropy, 2.0, 1e-15);
  EXPECT_NEAR(e.log_negativity, 2.0, 1e-15);
  e = pre_splitter_entanglement(SchmidtData::from_coefficients(std::vector<double>{0.9, 0.1}));
  EXPECT_GT(e.log_negativity, e.entropy);
}

TEST(Entanglement, MatchesDiscreteStateEntropy) {
  const FrequencyGrid g = FrequencyGrid::symmetric(2.0, 32);
  const JointAmplitude ja = joint_amplitude(g, 0.8);
  const BipartiteState s(BipartiteBasis::opaque(32, 32), ja.discrete());
  const PairEntanglement e = pre_splitter_entanglement(schmidt(ja));
  EXPECT_NEAR(e.entropy, entropy_of_entanglement(s), 1e-12);
  // the Schmidt route drops coefficients under 1e-12; the dense route keeps them
  EXPECT_NEAR(e.log_negativity, log_negativity(density_from_pure(s)), 1e-5);
  EXPECT_NEAR(log_negativity(s), log_negativity(density_from_pure(s)), 1e-10);
}

TEST(Entanglement, FallsAsPumpWidens) {
  const FrequencyGrid g = FrequencyGrid::symmetric(2.0, 64);
  double prev = 1e9;
  for (int i = 1; i <= 12; ++i) {
    const double e = pre_splitter_entanglement(schmidt(joint_amplitude(g, 0.25 * i))).entropy;
    EXPECT_LE(e, prev + 1e-9) << "sigma " << 0.25 * i;
    prev = e;
  }
}

TEST(Entanglement, GridConverged) {
  const double e48 = pre_splitter_entanglement(schmidt(joint_amplitude(FrequencyGrid::symmetric(2.0, 48), 1.0))).entropy;
  const double e64 = pre_splitter_entanglement(schmidt(joint_amplitude(FrequencyGrid::symmetric(2.0, 64), 1.0))).entropy;
  EXPECT_LT(std::abs(e48 - e64), 1e-3);
}

TEST(Delay, ZeroDelayIsIdentity) {
  const JointAmplitude ja = joint_amplitude(FrequencyGrid::symmetric(2.0, 32), 1.0);
  const JointAmplitude d = delayed_joint(ja, 0.0);
  EXPECT_EQ(d.psi(), ja.psi());
  EXPECT_TRUE(d.is_real());
}

TEST(Delay, KeepsNormAndSchmidtCoefficients) {
  const JointAmplitude ja = joint_amplitude(FrequencyGrid::symmetric(2.0, 32), 1.0);
  const SchmidtData s0 = schmidt(ja);
  for (double tau : {-1.3, 0.4, 2.0}) {
    const JointAmplitude d = delayed_joint(ja, tau);
    EXPECT_FALSE(d.is_real());
    EXPECT_NEAR(d.discrete().squaredNorm(), 1.0, 1e-12);
    const SchmidtData st = schmidt(d);
    const Index n = std::min(st.rank(), s0.rank());
    for (Index k = 0; k < n; ++k) EXPECT_NEAR(st.lambdas(k), s0.lambdas(k), 1e-12);
  }
  EXPECT_THROW(delayed_joint(ja, std::nan("")), InvalidInput);
}

TEST(Delay, Composes) {
  const JointAmplitude ja = joint_amplitude(FrequencyGrid::symmetric(2.0, 32), 1.0);
  const JointAmplitude a = delayed_joint(delayed_joint(ja, 0.3), 0.9);
  const JointAmplitude b = delayed_joint(ja, 1.2);
  EXPECT_LE((a.psi() - b.psi()).cwiseAbs().maxCoeff(), 1e-13);
}
