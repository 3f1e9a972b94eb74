#include "pst/networks.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include "pst/dense.hpp"
#include "pst/protocols.hpp"

namespace pst {

void validate(const NetworkSpec& net) {
  if (net.vertices < 1) throw std::invalid_argument("network needs at least one vertex");
  if (static_cast<int>(net.potentials.size()) != net.vertices)
    throw std::invalid_argument("one potential per vertex");
  for (double p : net.potentials)
    if (!std::isfinite(p)) throw std::invalid_argument("potentials must be finite");
  std::map<std::pair<int, int>, cplx> seen;
  for (const auto& e : net.edges) {
    if (e.u < 0 || e.v < 0 || e.u >= net.vertices || e.v >= net.vertices)
      throw std::out_of_range("edge vertex out of range");
    if (e.u == e.v) throw std::invalid_argument("self-loops belong in the potentials");
    if (!std::isfinite(e.w.real()) || !std::isfinite(e.w.imag())) throw std::invalid_argument("edge weights must be finite");
    const auto key = std::minmax(e.u, e.v);
    const cplx w = e.u < e.v ? e.w : std::conj(e.w);
    const auto [it, fresh] = seen.emplace(key, w);
    if (!fresh && std::abs(it->second - w) > 1e-12 * std::max(1.0, std::abs(w)))
      throw std::invalid_argument("edge " + std::to_string(e.u) + "-" + std::to_string(e.v) + " is not Hermitian");
  }
  for (int v : net.inputs)
    if (v < 0 || v >= net.vertices) throw std::out_of_range("input vertex out of range");
  for (int v : net.outputs)
    if (v < 0 || v >= net.vertices) throw std::out_of_range("output vertex out of range");
}

namespace {

// Edges with both directions listed are counted once.
std::map<std::pair<int, int>, cplx> upper_entries(const NetworkSpec& net) {
  std::map<std::pair<int, int>, cplx> out;
  for (const auto& e : net.edges) out.emplace(std::minmax(e.u, e.v), e.u < e.v ? e.w : std::conj(e.w));
  return out;
}

}  // namespace

Eigen::MatrixXcd network_matrix(const NetworkSpec& net) {
  validate(net);
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(net.vertices, net.vertices);
  for (int v = 0; v < net.vertices; ++v) h(v, v) = net.potentials[v];
  for (const auto& [key, w] : upper_entries(net)) {
    h(key.first, key.second) = w;
    h(key.second, key.first) = std::conj(w);
  }
  return h;
}

kernels::Csr network_csr(const NetworkSpec& net) {
  validate(net);
  std::vector<kernels::Entry> entries;
  for (int v = 0; v < net.vertices; ++v) entries.push_back({v, v, net.potentials[v]});
  for (const auto& [key, w] : upper_entries(net)) {
    entries.push_back({key.first, key.second, w});
    entries.push_back({key.second, key.first, std::conj(w)});
  }
  return kernels::csr_from_entries(net.vertices, std::move(entries));
}

NetworkSpec chain_network(const ChainSpec& chain) {
  validate(chain);
  NetworkSpec net;
  net.vertices = chain.n();
  net.potentials = chain.fields;
  for (int k = 0; k + 1 < chain.n(); ++k) net.edges.push_back({k, k + 1, chain.couplings[k]});
  net.inputs = {0};
  net.outputs = {chain.n() - 1};
  return net;
}

Eigen::VectorXcd evolve_network(const NetworkSpec& net, const Eigen::VectorXcd& state, double t) {
  if (state.size() != net.vertices) throw std::invalid_argument("state dimension does not match the network");
  return kernels::expm_apply(network_csr(net), state, t);
}

double network_fidelity(const NetworkSpec& net, int from, int to, double t) {
  if (from < 0 || to < 0 || from >= net.vertices || to >= net.vertices) throw std::out_of_range("vertex out of range");
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(net.vertices);
  v(from) = 1.0;
  return std::norm(evolve_network(net, v, t)(to));
}

ProductNetwork product_network(const ChainSpec& a, const ChainSpec& b) {
  for (const auto* c : {&a, &b}) {
    validate(*c);
    for (double f : c->fields)
      if (f != 0.0) throw std::invalid_argument("product networks need zero fields");
  }
  const double ta = *require_perfect(a).t0;
  const double tb = *require_perfect(b).t0;
  if (std::abs(ta - tb) > 1e-9 * std::max(ta, tb))
    throw std::invalid_argument("chains have different transfer times");
  const int n = a.n(), m = b.n();
  ProductNetwork out;
  out.t0 = ta;
  auto& net = out.net;
  net.vertices = n * m;
  net.potentials.assign(n * m, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) {
      if (i + 1 < n) net.edges.push_back({i * m + j, (i + 1) * m + j, a.couplings[i]});
      if (j + 1 < m) net.edges.push_back({i * m + j, i * m + j + 1, b.couplings[j]});
    }
  net.inputs = {0};
  net.outputs = {n * m - 1};
  return out;
}

NetworkSpec hypercube(int d) {
  if (d < 1 || d > 12) throw std::invalid_argument("hypercube dimension must lie in [1, 12]");
  NetworkSpec net;
  net.vertices = 1 << d;
  net.potentials.assign(net.vertices, 0.0);
  for (int v = 0; v < net.vertices; ++v)
    for (int k = d - 1; k >= 0; --k)
      if (!(v >> k & 1)) net.edges.push_back({v, v | 1 << k, 0.5});
  net.inputs = {0};
  net.outputs = {net.vertices - 1};
  return net;
}

StarNetwork star_network(const ChainSpec& branch, int M) {
  if (M < 1) throw std::invalid_argument("star needs at least one branch");
  const auto cert = require_perfect(branch);
  const int n = branch.n();
  StarNetwork out;
  out.t0 = *cert.t0;
  auto& net = out.net;
  net.vertices = 1 + M * (n - 1);
  net.potentials.assign(net.vertices, 0.0);
  net.potentials[0] = branch.fields[0];
  auto at = [&](int a, int site) { return 1 + a * (n - 1) + (site - 1); };  // site is 0-based, >= 1
  for (int a = 0; a < M; ++a) {
    net.edges.push_back({0, at(a, 1), branch.couplings[0] / std::sqrt(static_cast<double>(M))});
    for (int s = 1; s < n; ++s) {
      net.potentials[at(a, s)] = branch.fields[s];
      if (s + 1 < n) net.edges.push_back({at(a, s), at(a, s + 1), branch.couplings[s]});
    }
    net.outputs.push_back(at(a, n - 1));
  }
  net.inputs = {0};
  out.symmetric_projector = Eigen::MatrixXd::Zero(net.vertices, n);
  out.symmetric_projector(0, 0) = 1.0;
  for (int s = 1; s < n; ++s)
    for (int a = 0; a < M; ++a) out.symmetric_projector(at(a, s), s) = 1 / std::sqrt(static_cast<double>(M));
  return out;
}

ThetaEntangler theta_entangler(const ChainSpec& chain, double theta) {
  validate(chain);
  if (chain.n() % 2 == 0 || chain.n() < 3) throw std::invalid_argument("theta entangler needs an odd chain of length >= 3");
  if (!(theta > 0 && theta < std::acos(-1.0) / 2)) throw std::invalid_argument("theta must lie in (0, pi/2)");
  const auto cert = require_perfect(chain);
  const int half = chain.n() / 2;
  ThetaEntangler out;
  out.theta = theta;
  out.t0 = *cert.t0;
  out.phase = cert.arrival_phase;
  out.chain = chain;
  out.chain.couplings[half - 1] *= std::sqrt(2.0) * std::cos(theta);
  out.chain.couplings[half] *= std::sqrt(2.0) * std::sin(theta);
  const auto sd = diagonalize(out.chain);
  out.first = gamma(sd, 0, 0, out.t0) / out.phase;
  out.last = gamma(sd, 0, chain.n() - 1, out.t0) / out.phase;
  out.max_deviation = std::max(std::abs(out.first - std::cos(2 * theta)), std::abs(out.last - std::sin(2 * theta)));
  return out;
}

}  // namespace pst
