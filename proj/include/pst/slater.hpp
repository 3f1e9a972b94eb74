#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "pst/chain.hpp"
#include "pst/dense.hpp"
#include "pst/spectral.hpp"

namespace pst {

// A wedge product of k single-particle orbitals, phase * (q_1 ^ q_2 ^ ... ^ q_k),
// with orthonormal columns q_i stored in insertion order. The amplitude of
// the occupation set S = {s_1 < ... < s_k} is phase * det(orbitals[S, :]).
struct SlaterState {
  Eigen::MatrixXcd orbitals;  // N x k
  cplx phase{1.0, 0.0};
  bool zero = false;          // orbitals were linearly dependent
  double raw_norm = 1.0;      // norm of the wedge of the vectors as given

  int sites() const { return static_cast<int>(orbitals.rows()); }
  int particles() const { return static_cast<int>(orbitals.cols()); }
};

// Orthonormalises by QR; the triangular factor's determinant becomes
// raw_norm * phase. Dependent vectors give a flagged zero state.
SlaterState make_slater(const std::vector<Eigen::VectorXcd>& vectors);
SlaterState occupation_state(int n, const std::vector<int>& sites);

// |a ^ b|^2 for arbitrary vectors: the Gram determinant.
double wedge_norm_squared(const std::vector<Eigen::VectorXcd>& vectors);

SlaterState evolve_slater(const ChainSpec& chain, const SlaterState& s, double t);
SlaterState evolve_slater(const SpectralDecomposition& sd, const SlaterState& s, double t);

// Prepend an orbital: a^dagger(v) applied to s.
SlaterState add_orbital(const SlaterState& s, const Eigen::VectorXcd& v);
SlaterState swap_orbitals(const SlaterState& s, int i, int j);

// Reorders orbitals by the site of their largest component (leftmost first)
// and folds the permutation sign into the phase.
SlaterState normal_order(const SlaterState& s);

cplx amplitude(const SlaterState& s, const std::vector<int>& occupied_ascending);
cplx overlap(const SlaterState& a, const SlaterState& b);

// Nonzero amplitudes over all C(N, k) occupation sets, keyed by bitmask.
std::vector<std::pair<std::uint64_t, cplx>> slater_amplitudes(const SlaterState& s, double cutoff = 0.0);
DenseState slater_to_dense(const SlaterState& s);

// Two free bosons created by a^dagger(u) a^dagger(v) (unnormalised product).
// Returns the symmetric amplitude matrix psi(i, j) after time t, normalised
// so that sum_{i<=j} |amplitude of |i j>|^2 = 1.
Eigen::MatrixXcd two_boson_evolve(const ChainSpec& chain, int site_a, int site_b, double t);

}  // namespace pst
