#include "pst/protocols.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>

#include "pst/error.hpp"
#include "pst/slater.hpp"

namespace pst {

namespace {

using Sparse = std::map<std::uint64_t, cplx>;

void accumulate(Sparse& into, const SlaterState& s, cplx weight) {
  for (const auto& [mask, a] : slater_amplitudes(s)) into[mask] += weight * a;
}

// Reduced density matrix of `keep` (keep[0] least significant) from a sparse state.
Eigen::MatrixXcd reduce(const Sparse& state, const std::vector<int>& keep) {
  std::uint64_t kept = 0;
  for (int s : keep) kept |= std::uint64_t{1} << s;
  const Eigen::Index dk = Eigen::Index{1} << keep.size();
  std::map<std::uint64_t, Eigen::VectorXcd> groups;
  for (const auto& [mask, a] : state) {
    auto [it, fresh] = groups.try_emplace(mask & ~kept, Eigen::VectorXcd::Zero(dk));
    Eigen::Index local = 0;
    for (size_t b = 0; b < keep.size(); ++b)
      if (mask >> keep[b] & 1) local |= Eigen::Index{1} << b;
    it->second(local) += a;
  }
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dk, dk);
  for (const auto& [rest, v] : groups) rho += v * v.adjoint();
  return rho;
}

Eigen::Matrix2cd single_qubit(const Eigen::VectorXcd& state, int qubits, int q) {
  Eigen::Matrix2cd rho = Eigen::Matrix2cd::Zero();
  const Eigen::Index bit = Eigen::Index{1} << q;
  for (Eigen::Index i = 0; i < (Eigen::Index{1} << qubits); ++i) {
    if (i & bit) continue;
    const cplx a0 = state(i), a1 = state(i | bit);
    rho(0, 0) += a0 * std::conj(a0);
    rho(0, 1) += a0 * std::conj(a1);
    rho(1, 0) += a1 * std::conj(a0);
    rho(1, 1) += a1 * std::conj(a1);
  }
  return rho;
}

}  // namespace

PstCertificate require_perfect(const ChainSpec& chain) {
  auto cert = certify_pst(chain);
  if (cert.verdict != Verdict::perfect)
    throw std::invalid_argument(std::string("chain is not a perfect transfer chain: ") + cert.reason);
  return cert;
}

EntanglementReport entanglement_generation(const ChainSpec& chain, double fraction) {
  const auto cert = require_perfect(chain);
  if (chain.statistics == Statistics::bosonic) throw std::invalid_argument("protocol needs fermionic statistics");
  const int n = chain.n();
  const auto sd = diagonalize(chain);
  EntanglementReport rep;
  rep.t = fraction * *cert.t0;
  const Eigen::VectorXcd first = propagate(sd, Eigen::VectorXcd::Unit(n, 0), rep.t);
  const Eigen::VectorXcd last = propagate(sd, Eigen::VectorXcd::Unit(n, n - 1), rep.t);
  Sparse state;
  state[0] += 0.5;
  accumulate(state, make_slater({first}), 0.5);
  accumulate(state, make_slater({last}), 0.5);
  accumulate(state, make_slater({first, last}), 0.5);
  rep.rho = reduce(state, {0, n - 1});
  Eigen::Matrix4cd fix = Eigen::Matrix4cd::Identity();
  const cplx c = std::conj(cert.arrival_phase);
  fix(1, 1) = c;
  fix(2, 2) = c;
  fix(3, 3) = c * c;
  rep.rho_corrected = fix * rep.rho * fix.adjoint();
  Eigen::Matrix2cd marginal;
  marginal << rep.rho(0, 0) + rep.rho(2, 2), rep.rho(0, 1) + rep.rho(2, 3),
      rep.rho(1, 0) + rep.rho(3, 2), rep.rho(1, 1) + rep.rho(3, 3);
  rep.entropy_bits = entropy_bits(marginal);
  Eigen::Vector4cd target(0.5, 0.5, 0.5, -0.5);
  rep.target_fidelity = (target.adjoint() * rep.rho_corrected * target)(0, 0).real();
  return rep;
}

InitFreeReport initfree_transfer(const ChainSpec& chain, cplx alpha, cplx beta, const std::vector<int>& junk) {
  const auto cert = require_perfect(chain);
  const int n = chain.n();
  if (n < 3) throw std::invalid_argument("initialisation-free transfer needs n >= 3");
  if (std::abs(std::norm(alpha) + std::norm(beta) - 1.0) > 1e-10)
    throw std::invalid_argument("|alpha|^2 + |beta|^2 must be 1");
  if (static_cast<int>(junk.size()) != n - 2) throw std::invalid_argument("junk string must have N-2 bits");

  std::vector<Eigen::VectorXcd> orbitals;
  Eigen::VectorXcd rail = Eigen::VectorXcd::Zero(n);
  rail(0) = beta;
  rail(1) = alpha;
  orbitals.push_back(rail);
  for (int i = 0; i < n - 2; ++i) {
    if (junk[i] != 0 && junk[i] != 1) throw std::invalid_argument("junk bits must be 0 or 1");
    if (junk[i]) orbitals.push_back(Eigen::VectorXcd::Unit(n, i + 2));
  }
  const auto out = evolve_slater(chain, make_slater(orbitals), *cert.t0);
  Sparse state;
  accumulate(state, out, 1.0);

  InitFreeReport rep;
  rep.min_fidelity = 1.0;
  const std::uint64_t mbit = std::uint64_t{1} << (n - 2);
  const Eigen::Vector2cd psi(alpha, beta);
  for (int outcome = 0; outcome < 2; ++outcome) {
    const double sign = outcome == 0 ? 1.0 : -1.0;
    Sparse projected;
    for (const auto& [mask, a] : state) {
      const double s = (mask & mbit) ? sign : 1.0;
      cplx amp = s * a / std::sqrt(2.0);
      // conditional Z on the last site for the minus outcome
      if (outcome == 1 && (mask >> (n - 1) & 1)) amp = -amp;
      projected[mask & ~mbit] += amp;
    }
    const Eigen::MatrixXcd rho = reduce(projected, {n - 1});
    rep.probability[outcome] = rho.trace().real();
    rep.rho[outcome] = rho / rep.probability[outcome];
    rep.fidelity[outcome] = (psi.adjoint() * rep.rho[outcome] * psi)(0, 0).real();
    rep.min_fidelity = std::min(rep.min_fidelity, rep.fidelity[outcome]);
  }
  return rep;
}

double storage_t0(const ChainSpec& chain) {
  validate(chain);
  const int n = chain.n();
  if (n < 2) throw std::invalid_argument("storage needs n >= 2");
  const auto sd = diagonalize(chain);
  const double spacing = (sd.eigenvalues(n - 1) - sd.eigenvalues(0)) / (n - 1);
  for (int k = 1; k < n; ++k)
    if (std::abs(sd.eigenvalues(k) - sd.eigenvalues(k - 1) - spacing) > 1e-8 * spacing)
      throw std::invalid_argument("spectrum is not evenly spaced; not a sequential-storage chain");
  const double t0 = std::numbers::pi / spacing;
  const double tr = 2 * t0 / n;
  for (int m = 1; m < n; ++m)
    if (std::abs(gamma(sd, 0, 0, m * tr)) > 1e-8)
      throw std::invalid_argument("gamma_1 does not vanish at multiples of t_r; not a sequential-storage chain");
  return t0;
}

std::vector<int> same_order(int k) {
  std::vector<int> o(k);
  for (int i = 0; i < k; ++i) o[i] = i;
  return o;
}

std::vector<int> reverse_order(int k) {
  std::vector<int> o(k);
  for (int i = 0; i < k; ++i) o[i] = k - 1 - i;
  return o;
}

StorageReport sequential_storage_sim(const ChainSpec& chain, const std::vector<Eigen::Vector2cd>& inputs,
                                     const std::vector<int>& order) {
  if (chain.statistics == Statistics::bosonic) throw std::invalid_argument("protocol needs fermionic statistics");
  const int n = chain.n();
  const int k = static_cast<int>(inputs.size());
  if (k < 1) throw std::invalid_argument("at least one input is needed");
  if (k > n) throw std::invalid_argument("more inputs than sites");
  if (k > 20) throw std::invalid_argument("at most 20 inputs are simulated");
  if (static_cast<int>(order.size()) != k) throw std::invalid_argument("readout order must list every input once");
  std::vector<bool> seen(k, false);
  for (int j : order) {
    if (j < 0 || j >= k || seen[j]) throw std::invalid_argument("readout order must be a permutation of the inputs");
    seen[j] = true;
  }
  for (const auto& v : inputs)
    if (std::abs(v.norm() - 1.0) > 1e-10) throw std::invalid_argument("inputs must be normalised");

  StorageReport rep;
  rep.t0 = storage_t0(chain);
  rep.t_r = 2 * rep.t0 / n;
  const auto sd = diagonalize(chain);
  const double eps = 1e-9 * rep.t0;

  for (int j = 0; j < k; ++j) rep.events.push_back({j * rep.t_r, j, true});
  double last = (k - 1) * rep.t_r;
  // removal of input j: revival phase seen on site 0 and the exchange partners
  std::vector<cplx> revival(k);
  std::vector<std::vector<int>> partners(k);
  std::vector<bool> on_chain(k, true);
  for (int j : order) {
    const double tj = j * rep.t_r;
    long long cycles = static_cast<long long>(std::floor((last + eps - tj) / (2 * rep.t0))) + 1;
    if (cycles < 1) cycles = 1;
    const double tau = tj + 2 * rep.t0 * static_cast<double>(cycles);
    rep.events.push_back({tau, j, false});
    last = tau;
    for (int i = 0; i < k; ++i) {
      if (!on_chain[i]) continue;
      const cplx c = gamma(sd, 0, 0, tau - i * rep.t_r);
      if (i == j) {
        if (std::abs(c) < 1 - 1e-8) throw NumericalError("input " + std::to_string(j) + " has not revived at site 1");
        // the receiver corrects by the revival phase exp(-i lambda_1 2 t0 l)
        const double arg = -sd.eigenvalues(0) * 2 * rep.t0 * static_cast<double>(cycles);
        revival[j] = c / std::polar(1.0, arg);
      } else if (std::abs(c) > 1e-8) {
        throw NumericalError("input " + std::to_string(i) + " still occupies site 1 at a readout");
      }
    }
    // orbitals sit in reverse insertion order, so the exchange sign counts
    // later inputs still on the chain
    for (int i = j + 1; i < k; ++i)
      if (on_chain[i]) partners[j].push_back(i);
    on_chain[j] = false;
  }
  for (int j = 0; j < k; ++j)
    for (int i : partners[j]) rep.controlled_phases.push_back({j, i});

  const Eigen::Index dim = Eigen::Index{1} << k;
  rep.output = Eigen::VectorXcd::Zero(dim);
  Eigen::VectorXcd predicted(dim);
  for (Eigen::Index s = 0; s < dim; ++s) {
    cplx amp = 1.0;
    cplx ideal = 1.0;
    for (int j = 0; j < k; ++j) {
      if (s >> j & 1) {
        int sign = 1;
        for (int i : partners[j])
          if (s >> i & 1) sign = -sign;
        amp *= inputs[j](1) * revival[j] * static_cast<double>(sign);
        ideal *= inputs[j](1) * static_cast<double>(sign);
      } else {
        amp *= inputs[j](0);
        ideal *= inputs[j](0);
      }
    }
    rep.output(s) = amp;
    predicted(s) = ideal;
  }
  rep.pattern_deviation = (rep.output - predicted).cwiseAbs().maxCoeff();
  for (int j = 0; j < k; ++j) {
    const Eigen::Matrix2cd rho = single_qubit(rep.output, k, j);
    rep.fidelities.push_back((inputs[j].adjoint() * rho * inputs[j])(0, 0).real());
  }
  return rep;
}

GhzReport ghz_check(const Eigen::VectorXcd& state, int qubits) {
  if (state.size() != (Eigen::Index{1} << qubits)) throw std::invalid_argument("state dimension is not 2^k");
  GhzReport rep;
  for (int q = 0; q < qubits; ++q) rep.single_entropies.push_back(entropy_bits(single_qubit(state, qubits, q)));
  // |+i> -> |0>, |-i> -> |1>
  Eigen::Matrix2cd u;
  u << 1, cplx(0, -1), 1, cplx(0, 1);
  u /= std::sqrt(2.0);
  Eigen::VectorXcd v = state;
  for (int q = 0; q < qubits; ++q) {
    const Eigen::Index bit = Eigen::Index{1} << q;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      if (i & bit) continue;
      const cplx a0 = v(i), a1 = v(i | bit);
      v(i) = u(0, 0) * a0 + u(0, 1) * a1;
      v(i | bit) = u(1, 0) * a0 + u(1, 1) * a1;
    }
  }
  const double a = std::abs(v(0)) + std::abs(v(v.size() - 1));
  rep.fidelity = a * a / 2;
  return rep;
}

BellReport entanglement_distribution(const ChainSpec& chain, double t) {
  validate(chain);
  const int n = chain.n();
  BellReport rep;
  rep.t = t;
  rep.gamma_n = gamma(diagonalize(chain), 0, n - 1, t);
  rep.raw_fidelity = std::norm(1.0 + rep.gamma_n) / 4;
  const double g = std::abs(rep.gamma_n);
  rep.corrected_fidelity = (1 + g) * (1 + g) / 4;
  return rep;
}

BellReport entanglement_distribution_sim(const ChainSpec& chain) {
  const auto cert = require_perfect(chain);
  return entanglement_distribution(chain, *cert.t0);
}

}  // namespace pst
