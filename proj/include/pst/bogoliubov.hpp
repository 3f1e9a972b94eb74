#pragma once

#include <vector>

#include <Eigen/Dense>

#include "pst/chain.hpp"
#include "pst/spectral.hpp"

namespace pst {

// H = sum A_nm a_n^dag a_m + 1/2 B_nm (a_m^dag a_n^dag + a_n a_m)
struct QuadraticFermionHamiltonian {
  Eigen::MatrixXd A;  // symmetric
  Eigen::MatrixXd B;  // antisymmetric

  int n() const { return static_cast<int>(A.rows()); }
};

void validate(const QuadraticFermionHamiltonian& h);

// [[0, A+B], [A-B, 0]]
Eigen::MatrixXd block_matrix(const QuadraticFermionHamiltonian& h);

// Mode k: c_k^dag = sum_n g_kn a_n^dag + h_kn a_n, with eta = (g + h)/sqrt2,
// chi = (g - h)/sqrt2 and (eta_k; chi_k) a unit eigenvector of the block
// matrix with eigenvalue mu_k >= 0. Rows of eta/chi are modes.
struct BogoliubovModes {
  Eigen::VectorXd mu;  // ascending
  Eigen::MatrixXd eta;
  Eigen::MatrixXd chi;

  Eigen::MatrixXd g() const;
  Eigen::MatrixXd h() const;
};

BogoliubovModes bogoliubov_modes(const QuadraticFermionHamiltonian& h);

// max deviation of eta eta^T + chi chi^T from I and of eta eta^T - chi chi^T from 0
double canonical_residual(const BogoliubovModes& m);

// Transverse Ising sum J_n X_n X_{n+1} + 1/2 sum B_n (1 - Z_n), from a
// 2N-site chain K with B_n = K_{2n-1}, J_n = K_{2n} / 2.
struct IsingTransfer {
  std::vector<double> fields;
  std::vector<double> couplings;
  QuadraticFermionHamiltonian hamiltonian;
  double t0 = 0.0;
  cplx phase{0.0, 0.0};
  // |<e_N + e_2N| exp(-i M t0) |e_1 + e_{N+1}>|^2 / 4
  double fidelity = 0.0;
};

QuadraticFermionHamiltonian ising_hamiltonian(const std::vector<double>& fields, const std::vector<double>& couplings);
IsingTransfer ising_from_pst(const ChainSpec& chain2n);

}  // namespace pst
