#pragma once

#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "pst/certify.hpp"
#include "pst/chain.hpp"
#include "pst/spectral.hpp"

namespace pst {

// Throws std::invalid_argument unless the chain certifies perfect.
PstCertificate require_perfect(const ChainSpec& chain);

// |+>|0...0>|+> evolved for fraction * t0. Density matrices are on sites
// (0, N-1) with site 0 as the least significant bit.
struct EntanglementReport {
  double t = 0.0;
  Eigen::Matrix4cd rho;            // as evolved
  Eigen::Matrix4cd rho_corrected;  // after diag(1, conj(phi)) on both ends
  double entropy_bits = 0.0;       // of either end marginal
  double target_fidelity = 0.0;    // <target|rho_corrected|target>, target = (|00>+|01>+|10>-|11>)/2
};
EntanglementReport entanglement_generation(const ChainSpec& chain, double fraction = 1.0);

// Dual-rail input alpha|01> + beta|10> on sites (0, 1), junk[i] on site i + 2.
// Decoded by an X measurement on site N-2 and a conditional Z on site N-1.
struct InitFreeReport {
  Eigen::Matrix2cd rho[2];  // output qubit for X outcome + and -, after correction
  double probability[2] = {0.0, 0.0};
  double fidelity[2] = {0.0, 0.0};
  double min_fidelity = 0.0;
};
InitFreeReport initfree_transfer(const ChainSpec& chain, cplx alpha, cplx beta, const std::vector<int>& junk);

// Inputs go in at site 0 at times j * t_r, t_r = 2 t0 / N, and are read back
// from site 0 on a revival, each at the earliest time after the previous
// event. `order` lists input indices in removal order. Local phases of the
// single-particle revival are corrected on each output.
struct StorageEvent {
  double time = 0.0;
  int input = 0;
  bool insert = true;
};
struct StorageReport {
  double t0 = 0.0;
  double t_r = 0.0;
  std::vector<StorageEvent> events;
  Eigen::VectorXcd output;  // bit j = output qubit of input j
  std::vector<std::pair<int, int>> controlled_phases;
  std::vector<double> fidelities;     // of each output marginal with its input
  double pattern_deviation = 0.0;     // |output - CZ pattern applied to inputs|
};
// Checks the chain is a sequential-storage chain: evenly spaced spectrum with
// gamma_1(m t_r) = 0 for m = 1..N-1. Returns t0.
double storage_t0(const ChainSpec& chain);
StorageReport sequential_storage_sim(const ChainSpec& chain, const std::vector<Eigen::Vector2cd>& inputs,
                                     const std::vector<int>& order);
std::vector<int> same_order(int k);
std::vector<int> reverse_order(int k);

// k-qubit state tested against a GHZ state after |+-i> -> |0>,|1> on each qubit.
struct GhzReport {
  std::vector<double> single_entropies;
  double fidelity = 0.0;
};
GhzReport ghz_check(const Eigen::VectorXcd& state, int qubits);

// Alice's ancilla (uncoupled) shares (|00> + |11>)/sqrt2 with site 0; at time
// t Bob holds site N-1.
struct BellReport {
  double t = 0.0;
  cplx gamma_n{0.0, 0.0};
  double raw_fidelity = 0.0;        // |1 + gamma_N|^2 / 4
  double corrected_fidelity = 0.0;  // after Bob's phase correction
};
BellReport entanglement_distribution(const ChainSpec& chain, double t);
BellReport entanglement_distribution_sim(const ChainSpec& chain);

}  // namespace pst
