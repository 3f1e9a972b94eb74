#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "pst/chain.hpp"

namespace pst {

// J_n = sqrt(n (N - n)) / 2, B = 0, t0 = pi.
ChainSpec analytic_chain(int n);
// J_n^2 = n^2 (N - n)(N + n) / ((2n - 1)(2n + 1)), spectrum {-N+1, -N+3, ..., N-1}.
ChainSpec sequential_storage_chain(int n);

struct TargetSpectrum {
  std::vector<double> eigenvalues;
  bool antisymmetric = false;
};

// Throws std::invalid_argument unless strictly ascending and, when flagged,
// paired lambda_k = -lambda_{N+1-k} to 1e-12 of the spread.
TargetSpectrum make_target(std::vector<double> eigenvalues, bool antisymmetric = false);

// Jacobi matrix with the given spectrum and first-site weights (Lanczos).
ChainSpec chain_from_spectral_data(const std::vector<double>& eigenvalues,
                                   const std::vector<double>& weights);
// Mirror-symmetric chain with the given spectrum.
ChainSpec chain_from_spectrum(const TargetSpectrum& target);

struct NearUniformResult {
  ChainSpec chain;
  std::vector<double> spectrum;
  double unit = 0.0;  // pi / t0 lattice spacing
  double t0 = 0.0;
  double max_deviation = 0.0;  // max |J_n - 1|
};

NearUniformResult near_uniform_chain(int n, double slack);

struct ParametrizedFamily {
  int parameters = 0;
  int dimension = 0;
  std::function<Eigen::MatrixXd(const Eigen::VectorXd&)> evaluate;
  std::function<Eigen::MatrixXd(const Eigen::VectorXd&, int)> derivative;
};

// r = couplings, B = 0.
ParametrizedFamily tridiagonal_coupling_family(int n);
// r = (J_1..J_{N-1}, K) with a uniform next-nearest-neighbour coupling K.
ParametrizedFamily next_nearest_family(int n);

// Max |analytic - central difference| over all parameters at probe.
double derivative_check(const ParametrizedFamily& family, const Eigen::VectorXd& probe,
                        double step = 1e-6);

struct NewtonOptions {
  int max_iter = 50;
  double tol = 1e-10;
  bool parallel = true;
};

struct NewtonResult {
  Eigen::VectorXd r;
  int iterations = 0;
  std::vector<double> errors;  // max eigenvalue error before each step, then final
};

NewtonResult newton_iep(const ParametrizedFamily& family, const TargetSpectrum& target,
                        const Eigen::VectorXd& r0, const NewtonOptions& opts = {});

}  // namespace pst
