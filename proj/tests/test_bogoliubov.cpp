#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "pst/bogoliubov.hpp"
#include "pst/design.hpp"
#include "test_support.hpp"

using namespace pst;

namespace {

QuadraticFermionHamiltonian random_quadratic(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g;
  QuadraticFermionHamiltonian h;
  h.A = Eigen::MatrixXd::NullaryExpr(n, n, [&] { return g(rng); });
  h.A = (h.A + h.A.transpose()).eval() / 2;
  h.B = Eigen::MatrixXd::NullaryExpr(n, n, [&] { return g(rng); });
  h.B = (h.B - h.B.transpose()).eval() / 2;
  return h;
}

oracle::Mat dense_quadratic(const QuadraticFermionHamiltonian& h) {
  const int n = h.n();
  std::vector<oracle::Mat> c;
  for (int i = 0; i < n; ++i) c.push_back(oracle::creation(i, n));
  oracle::Mat out = oracle::Mat::Zero(1 << n, 1 << n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      out += h.A(i, j) * c[i] * c[j].adjoint();
      out += 0.5 * h.B(i, j) * (c[j] * c[i] + c[i].adjoint() * c[j].adjoint());
    }
  return out;
}

oracle::Mat mode_creation(const BogoliubovModes& m, int k) {
  const int n = static_cast<int>(m.mu.size());
  const Eigen::MatrixXd g = m.g(), h = m.h();
  oracle::Mat c = oracle::Mat::Zero(1 << n, 1 << n);
  for (int i = 0; i < n; ++i) {
    const oracle::Mat a = oracle::creation(i, n);
    c += g(k, i) * a + h(k, i) * a.adjoint();
  }
  return c;
}

}  // namespace

TEST_CASE("no pairing gives the hopping spectrum") {
  const auto chain = analytic_chain(5);
  QuadraticFermionHamiltonian h;
  h.A = oracle::tridiagonal(chain.couplings, chain.fields).real();
  h.B = Eigen::MatrixXd::Zero(5, 5);
  const auto m = bogoliubov_modes(h);
  std::vector<double> expect{0, 1, 1, 2, 2};
  for (int k = 0; k < 5; ++k) CHECK(m.mu(k) == doctest::Approx(expect[k]).epsilon(1e-12));

  QuadraticFermionHamiltonian one{Eigen::MatrixXd::Constant(1, 1, -0.7), Eigen::MatrixXd::Zero(1, 1)};
  CHECK(bogoliubov_modes(one).mu(0) == doctest::Approx(0.7));
}

TEST_CASE("Ising couplings from a perfect chain") {
  const auto four = ising_from_pst(analytic_chain(4));
  REQUIRE(four.fields.size() == 2);
  CHECK(four.fields[0] == doctest::Approx(std::sqrt(3.0) / 2));
  CHECK(four.fields[1] == doctest::Approx(std::sqrt(3.0) / 2));
  REQUIRE(four.couplings.size() == 1);
  CHECK(four.couplings[0] == doctest::Approx(0.5));

  for (int n : {2, 4, 6, 8}) {
    const auto chain = analytic_chain(n);
    const auto rep = ising_from_pst(chain);
    CHECK(rep.fidelity > 1 - 1e-10);
    CHECK(rep.t0 == doctest::Approx(std::numbers::pi));

    // mu is the non-negative half of the 2N hopping spectrum
    const auto mu = bogoliubov_modes(rep.hamiltonian).mu;
    auto lam = diagonalize(chain).spectrum();
    std::sort(lam.begin(), lam.end());
    for (int k = 0; k < n / 2; ++k) CHECK(std::abs(mu(k) - lam[n / 2 + k]) < 1e-10);
  }
}

TEST_CASE("modes are canonical eigenvectors of the block matrix") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + trial % 7;
    const auto h = random_quadratic(rng, n);
    const auto m = bogoliubov_modes(h);
    CHECK(canonical_residual(m) < 1e-10);
    const Eigen::MatrixXd M = block_matrix(h);
    for (int k = 0; k < n; ++k) {
      CHECK(m.mu(k) >= 0);
      if (k > 0) CHECK(m.mu(k) >= m.mu(k - 1));
      Eigen::VectorXd x(2 * n);
      x << m.eta.row(k).transpose(), m.chi.row(k).transpose();
      CHECK((M * x - m.mu(k) * x).norm() < 1e-10 * std::max(1.0, m.mu(k)));
    }
  }
}

TEST_CASE("mode operators diagonalise the dense Hamiltonian") {
  std::mt19937_64 rng(32);
  for (int n : {1, 2, 3, 4}) {
    const auto h = random_quadratic(rng, n);
    const auto m = bogoliubov_modes(h);
    const oracle::Mat H = dense_quadratic(h);
    for (int k = 0; k < n; ++k) {
      const oracle::Mat c = mode_creation(m, k);
      CHECK((H * c - c * H - m.mu(k) * c).cwiseAbs().maxCoeff() < 1e-10);
      const oracle::Mat anti = c * c.adjoint() + c.adjoint() * c;
      CHECK((anti - oracle::Mat::Identity(1 << n, 1 << n)).cwiseAbs().maxCoeff() < 1e-10);
    }
    Eigen::SelfAdjointEigenSolver<oracle::Mat> es(H);
    std::vector<double> sums;
    for (int s = 0; s < (1 << n); ++s) {
      double e = 0;
      for (int k = 0; k < n; ++k)
        if (s >> k & 1) e += m.mu(k);
      sums.push_back(e);
    }
    std::sort(sums.begin(), sums.end());
    const double e0 = es.eigenvalues()(0);
    for (int s = 0; s < (1 << n); ++s) CHECK(std::abs(es.eigenvalues()(s) - e0 - sums[s]) < 1e-10);
  }
}

TEST_CASE("Ising spin form equals its quadratic form") {
  const std::vector<double> B{0.3, -1.1, 0.8, 0.5}, J{0.7, -0.4, 1.2};
  const int n = 4;
  oracle::Mat spin = oracle::Mat::Zero(1 << n, 1 << n);
  for (int k = 0; k + 1 < n; ++k)
    spin += J[k] * oracle::product_op(n, {{k, oracle::pauli('X')}, {k + 1, oracle::pauli('X')}});
  for (int k = 0; k < n; ++k)
    spin += 0.5 * B[k] * (oracle::Mat::Identity(1 << n, 1 << n) - oracle::site_op(oracle::pauli('Z'), k, n));
  const oracle::Mat quad = dense_quadratic(ising_hamiltonian(B, J));
  CHECK((spin - quad).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("Ising chain transfers the first fermion to the last") {
  const auto rep = ising_from_pst(analytic_chain(8));
  const int n = 4;
  const oracle::Mat H = dense_quadratic(rep.hamiltonian);
  const oracle::Mat U = oracle::expm(H, rep.t0);
  const oracle::Mat moved = U.adjoint() * oracle::creation(0, n) * U;
  const oracle::Mat last = oracle::creation(n - 1, n);
  const oracle::cplx overlap = (last.adjoint() * moved).trace() / static_cast<double>(1 << (n - 1));
  CHECK(std::abs(overlap) > 1 - 1e-10);
  CHECK((moved - overlap * last).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("Bogoliubov input validation") {
  QuadraticFermionHamiltonian bad{Eigen::MatrixXd::Zero(2, 2), Eigen::MatrixXd::Zero(2, 2)};
  bad.A(0, 1) = 1.0;
  CHECK_THROWS_AS(bogoliubov_modes(bad), std::invalid_argument);
  bad.A(1, 0) = 1.0;
  bad.B(0, 1) = 1.0;
  CHECK_THROWS_AS(bogoliubov_modes(bad), std::invalid_argument);
  CHECK_THROWS_AS(bogoliubov_modes({Eigen::MatrixXd::Zero(2, 2), Eigen::MatrixXd::Zero(3, 3)}), std::invalid_argument);
  CHECK_THROWS_AS(ising_hamiltonian({1.0, 1.0}, {}), std::invalid_argument);
  CHECK_THROWS_AS(ising_from_pst(analytic_chain(5)), std::invalid_argument);
  CHECK_THROWS_AS(ising_from_pst(uniform_chain(6)), std::invalid_argument);
  CHECK_THROWS_AS(ising_from_pst(make_chain({1.0, 1.0, 1.0}, {0.1, 0, 0, 0.1})), std::invalid_argument);
}
