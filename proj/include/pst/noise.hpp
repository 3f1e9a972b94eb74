#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "pst/chain.hpp"
#include "pst/spectral.hpp"

namespace pst {

// Z on each site with probability p, applied once at time t, then the
// evolution finishes at t0. Fidelity is averaged over input states with the
// arrival phase corrected.
struct DephasingReport {
  double p = 0.0;
  double t = 0.0;
  double t0 = 0.0;
  double fidelity = 0.0;
  double lower = 0.0;  // 1 - 2p(2-p)/3 + 2p(1-p)/(3N)
  double upper = 0.0;  // 1 - 2p/3
  double sum_gamma4 = 0.0;
};
DephasingReport dephasing_avg_fidelity(const ChainSpec& chain, double p, double t);

// Each chain site n couples to its own bath of zero-energy spins, with
// couplings raw[n][m], or to a single effective bath site with strength G.
struct BathSpec {
  ChainSpec chain;
  double G = 0.0;
  std::optional<std::vector<std::vector<double>>> raw;
};

struct BathModel {
  Eigen::MatrixXd effective;  // 2N x 2N, [[H1, G I], [G I, 0]]
  SpectralDecomposition sd;
  std::vector<double> lambda;         // bare chain spectrum
  std::vector<double> closed_form;    // (lambda +- sqrt(lambda^2 + 4G^2)) / 2, ascending
  double max_deviation = 0.0;         // |closed_form - sd eigenvalues|
};
// G_n = |raw[n]| when raw couplings are given; they must all agree.
double effective_coupling(const BathSpec& b);
BathModel bath_model(const BathSpec& b);

// System plus raw baths, single excitation: sites 0..N-1, then bath spin m of
// site n at N + offset(n) + m.
Eigen::MatrixXd raw_bath_operator(const BathSpec& b);

struct BathCurves {
  std::vector<double> times;
  std::vector<cplx> exact;   // <N| exp(-i H_eff t) |1>
  std::vector<cplx> bare;    // gamma_N(t)
  std::vector<cplx> strong;  // cos(G t) gamma_N(t / 2)
  double max_strong_deviation = 0.0;
  double max_bare_deviation = 0.0;
};
BathCurves bath_transfer_amplitude(const BathSpec& b, const std::vector<double>& times);

}  // namespace pst
