// Walk through the main objects: a down-converted pair, its Schmidt spectrum,
// the beam-splitter output, and the effect of arrival-time jitter.

#include <cstdio>

#include "photonent/photonent.hpp"

using namespace photonent;

int main() {
  const FrequencyGrid grid = FrequencyGrid::symmetric(2.0, 32);

  const JointAmplitude ja = joint_amplitude(grid, 1.0);
  const SchmidtData sd = schmidt(ja);
  const PairEntanglement in = pre_splitter_entanglement(sd);
  std::printf("pair: Schmidt rank %ld, E = %.6f, E_N = %.6f\n", static_cast<long>(sd.rank()), in.entropy,
              in.log_negativity);

  const BipartiteState out = split_two_pure(sd);
  std::printf("after splitter: E = %.6f (2 + E/2 = %.6f)\n", entropy_of_entanglement(out), 2.0 + in.entropy / 2);

  for (double st : {0.0, 0.5, 1.0}) {
    const TwoPhotonMixture mix(ja, JitterModel(st, 21));
    const BipartiteDensity rho = mix.output();
    std::printf("sigma_tau = %.1f: basis %d per side, purity %.6f, E_N = %.6f, filtered %.6f\n", st,
                mix.plan().side_dim(), purity(rho), log_negativity(rho), filtered_negativity(rho));
  }

  const SinglePhotonKernel k = jitter_kernel(gaussian_packet(grid, 1.0), JitterModel(1.0, 41));
  std::printf("single photon, sigma_tau = 1: purity %.6f, E_N = %.6f\n", kernel_purity(k),
              log_negativity(split_single_mixed(k)));
}
