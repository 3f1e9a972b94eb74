#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "pst/dense.hpp"
#include "pst/design.hpp"
#include "pst/gadgets.hpp"
#include "model_oracles.hpp"

using namespace pst;
using std::numbers::pi;

namespace {

ChainSpec sqrt_chain(int n, double scale) {
  std::vector<double> J;
  for (int k = 1; k < n; ++k) J.push_back(scale * std::sqrt(static_cast<double>(k * (n - k))));
  return make_chain(J, std::vector<double>(n, 0.0));
}

}  // namespace

TEST_CASE("amplifier perfect amplification and revival") {
  const auto chain = analytic_chain(6);
  const auto c = amplifier_sim(chain, wall_state(6, 1), {pi, 2 * pi, 3 * pi});
  CHECK(c.target[0] > 1 - 1e-8);
  CHECK(c.probability(1, 1) > 1 - 1e-8);
  CHECK(c.target[2] > 1 - 1e-8);
  CHECK(c.signal[0] == doctest::Approx(1.0));
  CHECK(c.majority[0] == doctest::Approx(1.0));

  // |~0> does not move
  const auto still = amplifier_sim(chain, wall_state(6, 0), {0.7, pi});
  CHECK(still.probability(0, 0) == doctest::Approx(1.0));
  CHECK(still.signal[1] == doctest::Approx(0.0));
}

TEST_CASE("two-spin amplifier is a Rabi flop") {
  const auto chain = make_chain({0.5}, {0, 0});
  const auto c = amplifier_sim(chain, wall_state(2, 1), linspace(0, 2 * pi, 9));
  for (size_t k = 0; k < c.times.size(); ++k)
    CHECK(c.target[k] == doctest::Approx(std::pow(std::sin(0.5 * c.times[k]), 2)));
}

TEST_CASE("amplifier wall basis matches the full spin Hamiltonian") {
  const auto chain = analytic_chain(8);
  const oracle::Mat h = oracle::amp_oracle(chain);
  CHECK((amplifier_hamiltonian(chain).dense() - h).cwiseAbs().maxCoeff() < 1e-14);

  // walls are never mapped outside the wall span
  for (int w = 0; w <= 8; ++w) {
    const oracle::Vec v = embed_walls(wall_state(8, w));
    const oracle::Vec hv = h * v;
    for (Eigen::Index i = 0; i < hv.size(); ++i) {
      const bool is_wall = ((i + 1) & i) == 0;
      if (!is_wall) CHECK(std::abs(hv(i)) < 1e-14);
    }
  }

  std::mt19937_64 rng(61);
  const oracle::Vec input = oracle::random_state(rng, 9);
  for (double t : {0.4, 1.7, pi}) {
    const oracle::Vec full = oracle::expm(h, t) * embed_walls(input);
    const auto c = amplifier_sim(chain, input, {t});
    for (int w = 0; w <= 8; ++w)
      CHECK(std::abs(std::norm(full((Eigen::Index{1} << w) - 1)) - c.probability(0, w)) < 1e-9);
  }
}

TEST_CASE("amplifier curves for a long chain") {
  const auto chain = sqrt_chain(100, 1.0);
  const auto c = amplifier_sim(chain, wall_state(100, 1), {pi / 2, pi, 3 * pi / 2});
  CHECK(c.target[0] > 1 - 1e-8);
  CHECK(c.probability(1, 1) > 1 - 1e-8);
  CHECK(c.target[2] > 1 - 1e-8);
}

TEST_CASE("amplifier errors") {
  CHECK_THROWS_AS(amplifier_sim(make_chain({1.0}, {0.1, 0.0}), wall_state(2, 1), {1.0}), std::invalid_argument);
  CHECK_THROWS_AS(amplifier_sim(analytic_chain(3), wall_state(2, 1), {1.0}), std::invalid_argument);
  CHECK_THROWS_AS(wall_state(3, 4), std::out_of_range);
  CHECK_THROWS_AS(amplifier_hamiltonian(sqrt_chain(20, 1.0)), std::invalid_argument);
}

TEST_CASE("clock computer") {
  std::mt19937_64 rng(62);
  const auto clock4 = analytic_chain(4);
  const oracle::Vec psi = oracle::random_state(rng, 2);

  ClockProgram idle{clock4, std::vector<Eigen::MatrixXcd>(3, Eigen::MatrixXcd::Identity(2, 2))};
  auto run = clock_computer(idle, psi);
  CHECK(run.fidelity > 1 - 1e-8);
  CHECK((run.expected - psi).norm() < 1e-14);

  const auto u = oracle::random_unitary(rng, 2);
  const ClockProgram one{make_chain({0.5}, {0, 0}), {u}};
  run = clock_computer(one, psi);
  CHECK(run.dense_checked);
  // four-dimensional dense check by hand
  oracle::Mat h = oracle::Mat::Zero(4, 4);
  h.block(2, 0, 2, 2) = 0.5 * u;
  h.block(0, 2, 2, 2) = 0.5 * u.adjoint();
  oracle::Vec in = oracle::Vec::Zero(4);
  in.head(2) = psi;
  const oracle::Vec out = oracle::expm(h, pi) * in;
  CHECK(std::abs(std::abs(out.tail(2).dot(u * psi)) - 1.0) < 1e-10);
  CHECK((out.tail(2) - run.output).norm() < 1e-10);

  const double r = 1 / std::sqrt(2.0);
  Eigen::MatrixXcd had(2, 2), phase(2, 2);
  had << r, r, r, -r;
  phase << 1, 0, 0, std::polar(1.0, 0.7);
  run = clock_computer({clock4, {had, phase, had}}, psi);
  CHECK(run.fidelity > 1 - 1e-8);
  CHECK((run.expected - had * phase * had * psi).norm() < 1e-12);
  CHECK(run.dense_deviation < 1e-10);
}

TEST_CASE("clock computer equals direct gate composition") {
  std::mt19937_64 rng(63);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + trial % 5;
    const int d = 1 + trial % 4;
    ClockProgram prog{analytic_chain(n), {}};
    Eigen::MatrixXcd product = Eigen::MatrixXcd::Identity(d, d);
    for (int k = 0; k + 1 < n; ++k) {
      prog.gates.push_back(oracle::random_unitary(rng, d));
      product = prog.gates.back() * product;
    }
    const oracle::Vec psi = oracle::random_state(rng, d);
    const auto run = clock_computer(prog, psi);
    CHECK(run.dense_checked);
    CHECK(run.fidelity > 1 - 1e-8);
    CHECK((run.expected - product * psi).norm() < 1e-10);
  }
}

TEST_CASE("clock errors") {
  Eigen::MatrixXcd bad = Eigen::MatrixXcd::Identity(2, 2);
  bad(0, 0) = 1.1;
  CHECK_THROWS_AS(clock_computer({analytic_chain(2), {bad}}, Eigen::Vector2cd(1, 0)), std::invalid_argument);
  CHECK_THROWS_AS(clock_computer({uniform_chain(4), std::vector<Eigen::MatrixXcd>(3, Eigen::MatrixXcd::Identity(2, 2))},
                                 Eigen::Vector2cd(1, 0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(clock_computer({analytic_chain(3), {Eigen::MatrixXcd::Identity(2, 2)}}, Eigen::Vector2cd(1, 0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(clock_computer({analytic_chain(2), {Eigen::MatrixXcd::Identity(2, 2)}}, Eigen::Vector3cd(1, 0, 0)),
                  std::invalid_argument);
}
