#pragma once

#include <vector>

#include <Eigen/Dense>

#include "pst/chain.hpp"
#include "pst/kernels.hpp"
#include "pst/spectral.hpp"

namespace pst {

// Domain-wall amplifier H_amp = sum_n J_n K_{n+1}, K_m = X_m (1 - Z_{m-1} Z_{m+1}) / 2
// with Z_{N+1} = 1. Basis state n of the (N+1)-dim wall basis is |1^n 0^(N-n)>;
// n = 0 is an isolated zero-energy level.
struct AmplifierCurves {
  std::vector<double> times;
  Eigen::MatrixXd probability;  // rows: times, columns: wall index 0..N
  std::vector<double> target;   // probability of |~N>
  std::vector<double> signal;   // sum_n n p_n / N
  std::vector<double> majority; // sum_{n > N/2} p_n
};
AmplifierCurves amplifier_sim(const ChainSpec& chain, const Eigen::VectorXcd& input, const std::vector<double>& times);
Eigen::VectorXcd wall_state(int n_sites, int wall);
// Full 2^N operator; spin m (1-based) is bit m-1. Requires N within the dense cap.
kernels::Csr amplifier_hamiltonian(const ChainSpec& chain);
// 2^N state with the wall amplitudes placed on |1^n 0^(N-n)>.
Eigen::VectorXcd embed_walls(const Eigen::VectorXcd& walls);

// H_comp = sum_n J_n |n+1><n| (x) U_n + h.c. + sum_n B_n |n><n| (x) 1.
struct ClockProgram {
  ChainSpec chain;
  std::vector<Eigen::MatrixXcd> gates;  // U_1..U_{N-1}, all d x d
};
void validate(const ClockProgram& prog);
// Index n * d + r for clock state n (0-based) and register state r.
kernels::Csr clock_hamiltonian(const ClockProgram& prog);

struct ClockRun {
  double t0 = 0.0;
  Eigen::VectorXcd output;    // register state on the last clock site
  Eigen::VectorXcd expected;  // U_{N-1}...U_1 psi
  double fidelity = 0.0;      // |<expected|output>|^2
  double clock_population = 0.0;  // weight on the last clock site
  bool dense_checked = false;
  double dense_deviation = 0.0;
};
ClockRun clock_computer(const ClockProgram& prog, const Eigen::VectorXcd& psi);

}  // namespace pst
