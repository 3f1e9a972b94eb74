#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "pst/chain.hpp"
#include "pst/kernels.hpp"

// Brute-force 2^N state-vector simulation. Bit k of a basis index is site k,
// so |10> on sites (0, 1) is index 1.
namespace pst {

using DenseState = Eigen::VectorXcd;

// PST_DENSE_CAP overrides the default of 12 sites.
int dense_cap();
void require_dense(int n);

// 1/2 sum J (XX + YY) + 1/2 sum B (1 - Z); the vacuum has energy 0.
kernels::Csr xx_hamiltonian(const ChainSpec& chain);

DenseState dense_evolve(const ChainSpec& chain, const DenseState& state, double t, bool parallel = true);
DenseState dense_evolve(const kernels::Csr& h, const DenseState& state, double t, bool parallel = true);

DenseState basis_state(int n, std::uint64_t bits);

// Reduced density matrix on `keep`; keep[0] becomes the least significant bit.
Eigen::MatrixXcd reduced_density(const DenseState& state, int n, const std::vector<int>& keep);

double entropy_bits(const Eigen::MatrixXcd& rho);

}  // namespace pst
