#include "pst/gadgets.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "pst/dense.hpp"
#include "pst/error.hpp"
#include "pst/protocols.hpp"

namespace pst {

namespace {

void require_zero_fields(const ChainSpec& chain) {
  validate(chain);
  for (double b : chain.fields)
    if (b != 0.0) throw std::invalid_argument("amplifier supports zero fields only");
}

}  // namespace

Eigen::VectorXcd wall_state(int n_sites, int wall) {
  if (wall < 0 || wall > n_sites) throw std::out_of_range("wall index out of range");
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n_sites + 1);
  v(wall) = 1.0;
  return v;
}

AmplifierCurves amplifier_sim(const ChainSpec& chain, const Eigen::VectorXcd& input, const std::vector<double>& times) {
  require_zero_fields(chain);
  const int n = chain.n();
  if (input.size() != n + 1) throw std::invalid_argument("input must live in the N+1 wall basis");
  if (std::abs(input.norm() - 1.0) > 1e-10) throw std::invalid_argument("input is not normalised");
  const auto sd = diagonalize(chain);
  AmplifierCurves c;
  c.times = times;
  c.probability.resize(static_cast<Eigen::Index>(times.size()), n + 1);
  const Eigen::VectorXcd moving = input.tail(n);
  for (size_t k = 0; k < times.size(); ++k) {
    const Eigen::VectorXcd out = propagate(sd, moving, times[k]);
    c.probability(k, 0) = std::norm(input(0));
    for (int w = 1; w <= n; ++w) c.probability(k, w) = std::norm(out(w - 1));
    double mean = 0, major = 0;
    for (int w = 0; w <= n; ++w) {
      mean += w * c.probability(k, w);
      if (2 * w > n) major += c.probability(k, w);
    }
    c.target.push_back(c.probability(k, n));
    c.signal.push_back(mean / n);
    c.majority.push_back(major);
  }
  return c;
}

kernels::Csr amplifier_hamiltonian(const ChainSpec& chain) {
  require_zero_fields(chain);
  const int n = chain.n();
  require_dense(n);
  const std::int64_t dim = std::int64_t{1} << n;
  auto z = [&](std::int64_t s, int m) { return m > n ? 1 : (s >> (m - 1) & 1 ? -1 : 1); };
  std::vector<kernels::Entry> entries;
  for (std::int64_t s = 0; s < dim; ++s) {
    for (int k = 1; k < n; ++k) {
      const int m = k + 1;  // K_{k+1} with weight J_k
      if (z(s, m - 1) * z(s, m + 1) == -1)
        entries.push_back({static_cast<int>(s ^ (std::int64_t{1} << (m - 1))), static_cast<int>(s), chain.couplings[k - 1]});
    }
  }
  return kernels::csr_from_entries(static_cast<int>(dim), std::move(entries));
}

Eigen::VectorXcd embed_walls(const Eigen::VectorXcd& walls) {
  const int n = static_cast<int>(walls.size()) - 1;
  require_dense(n);
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(Eigen::Index{1} << n);
  for (int w = 0; w <= n; ++w) v((Eigen::Index{1} << w) - 1) = walls(w);
  return v;
}

void validate(const ClockProgram& prog) {
  validate(prog.chain);
  const int n = prog.chain.n();
  if (n < 2) throw std::invalid_argument("clock needs at least two states");
  if (static_cast<int>(prog.gates.size()) != n - 1) throw std::invalid_argument("clock needs N-1 gates");
  const auto d = prog.gates.front().rows();
  if (d < 1) throw std::invalid_argument("empty register");
  for (size_t k = 0; k < prog.gates.size(); ++k) {
    const auto& u = prog.gates[k];
    if (u.rows() != d || u.cols() != d) throw std::invalid_argument("gates must share one square dimension");
    if (!u.allFinite()) throw std::invalid_argument("gate entries must be finite");
    if ((u.adjoint() * u - Eigen::MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-12)
      throw std::invalid_argument("gate " + std::to_string(k + 1) + " is not unitary");
  }
}

kernels::Csr clock_hamiltonian(const ClockProgram& prog) {
  validate(prog);
  const int n = prog.chain.n();
  const int d = static_cast<int>(prog.gates.front().rows());
  std::vector<kernels::Entry> entries;
  for (int c = 0; c < n; ++c)
    for (int r = 0; r < d; ++r) entries.push_back({c * d + r, c * d + r, prog.chain.fields[c]});
  for (int c = 0; c + 1 < n; ++c) {
    const double j = prog.chain.couplings[c];
    const auto& u = prog.gates[c];
    for (int r = 0; r < d; ++r)
      for (int q = 0; q < d; ++q) {
        if (u(r, q) == cplx(0.0)) continue;
        entries.push_back({(c + 1) * d + r, c * d + q, j * u(r, q)});
        entries.push_back({c * d + q, (c + 1) * d + r, j * std::conj(u(r, q))});
      }
  }
  return kernels::csr_from_entries(n * d, std::move(entries));
}

ClockRun clock_computer(const ClockProgram& prog, const Eigen::VectorXcd& psi) {
  validate(prog);
  const int n = prog.chain.n();
  const auto d = prog.gates.front().rows();
  if (psi.size() != d) throw std::invalid_argument("register state has the wrong dimension");
  if (std::abs(psi.norm() - 1.0) > 1e-10) throw std::invalid_argument("register state is not normalised");
  const auto cert = require_perfect(prog.chain);
  ClockRun run;
  run.t0 = *cert.t0;

  // W (H1 (x) 1) W^dag with W = sum_n |n><n| (x) U_{n-1}..U_1
  std::vector<Eigen::VectorXcd> partial{psi};
  for (const auto& u : prog.gates) partial.push_back(u * partial.back());
  run.expected = partial.back();
  const auto sd = diagonalize(prog.chain);
  Eigen::VectorXcd clock = Eigen::VectorXcd::Zero(n);
  clock(0) = 1.0;
  const Eigen::VectorXcd amp = propagate(sd, clock, run.t0);
  run.output = amp(n - 1) * run.expected;
  run.clock_population = std::norm(amp(n - 1));
  run.fidelity = std::norm(run.expected.dot(run.output));

  if (n * d <= 512) {
    Eigen::VectorXcd full = Eigen::VectorXcd::Zero(n * d);
    full.head(d) = psi;
    const Eigen::VectorXcd direct = kernels::expm_apply(clock_hamiltonian(prog), full, run.t0);
    double dev = 0;
    for (int c = 0; c < n; ++c)
      dev = std::max(dev, (direct.segment(c * d, d) - amp(c) * partial[c]).cwiseAbs().maxCoeff());
    run.dense_checked = true;
    run.dense_deviation = dev;
    if (dev > 1e-8) throw NumericalError("clock evolution disagrees with the direct Hamiltonian");
  }
  return run;
}

}  // namespace pst
