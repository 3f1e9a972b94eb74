#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "pst/chain.hpp"

namespace pst {

using cplx = std::complex<double>;

// Eigenvalues ascending; column k of eigenvectors belongs to eigenvalues(k).
// Sign convention: the first component larger than kSignTol times the
// column's largest entry is positive (smaller entries are rounding noise).
struct SpectralDecomposition {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;
  bool degenerate = false;
  double min_gap = 0.0;

  int dimension() const { return static_cast<int>(eigenvalues.size()); }
  std::vector<double> spectrum() const;
};

inline constexpr double kSignTol = 1e-10;

// Gaps below this fraction of the spectral spread count as degenerate.
inline constexpr double kDegeneracyTol = 1e-9;

SpectralDecomposition diagonalize(const Tridiagonal& m);
SpectralDecomposition diagonalize(const ChainSpec& chain);
// Dense symmetric fallback. Throws std::invalid_argument if asymmetric beyond 1e-12.
SpectralDecomposition diagonalize(const Eigen::MatrixXd& m);

// exp(-i H t) v
Eigen::VectorXcd propagate(const SpectralDecomposition& sd, const Eigen::VectorXcd& v, double t);
Eigen::MatrixXcd propagator(const SpectralDecomposition& sd, double t);

// <target| exp(-i H t) |source>
cplx gamma(const SpectralDecomposition& sd, int source, int target, double t);
std::vector<cplx> gamma(const SpectralDecomposition& sd, int source, int target,
                        const std::vector<double>& times);

std::vector<double> linspace(double a, double b, int points);

}  // namespace pst
