#include "pst/noise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pst/protocols.hpp"

namespace pst {

DephasingReport dephasing_avg_fidelity(const ChainSpec& chain, double p, double t) {
  if (!(p >= 0 && p <= 1)) throw std::invalid_argument("p must lie in [0,1]");
  const auto cert = require_perfect(chain);
  const double t0 = *cert.t0;
  if (!(t >= 0 && t <= t0 * (1 + 1e-12))) throw std::invalid_argument("kick time must lie in [0, t0]");
  const int n = chain.n();
  const auto sd = diagonalize(chain);
  Eigen::VectorXcd e0 = Eigen::VectorXcd::Zero(n);
  e0(0) = 1.0;
  const Eigen::VectorXcd g = propagate(sd, e0, t);
  DephasingReport r;
  r.p = p;
  r.t = t;
  r.t0 = t0;
  for (Eigen::Index i = 0; i < g.size(); ++i) r.sum_gamma4 += std::pow(std::norm(g(i)), 2);
  r.fidelity = 1 - 2 * p * (2 - p) / 3 + 2 * p * (1 - p) / 3 * r.sum_gamma4;
  r.lower = 1 - 2 * p * (2 - p) / 3 + 2 * p * (1 - p) / (3.0 * n);
  r.upper = 1 - 2 * p / 3;
  if (r.fidelity < r.lower - 1e-12 || r.fidelity > r.upper + 1e-12)
    throw std::logic_error("dephasing fidelity outside its bounds");
  return r;
}

double effective_coupling(const BathSpec& b) {
  validate(b.chain);
  if (!b.raw) {
    if (!(b.G >= 0) || !std::isfinite(b.G)) throw std::invalid_argument("G must be finite and non-negative");
    return b.G;
  }
  const auto& raw = *b.raw;
  if (static_cast<int>(raw.size()) != b.chain.n()) throw std::invalid_argument("one bath per chain site");
  double G = -1;
  for (const auto& g : raw) {
    double s = 0;
    for (double x : g) {
      if (!std::isfinite(x)) throw std::invalid_argument("bath couplings must be finite");
      s += x * x;
    }
    s = std::sqrt(s);
    if (G < 0) G = s;
    else if (std::abs(s - G) > 1e-12 * std::max(1.0, G)) throw std::invalid_argument("bath couplings G_n differ");
  }
  return G;
}

BathModel bath_model(const BathSpec& b) {
  const double G = effective_coupling(b);
  const int n = b.chain.n();
  BathModel m;
  m.effective = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  m.effective.topLeftCorner(n, n) = build_h1(b.chain).dense();
  m.effective.topRightCorner(n, n) = G * Eigen::MatrixXd::Identity(n, n);
  m.effective.bottomLeftCorner(n, n) = G * Eigen::MatrixXd::Identity(n, n);
  m.sd = diagonalize(m.effective);
  m.lambda = diagonalize(b.chain).spectrum();
  for (double l : m.lambda) {
    const double root = std::sqrt(l * l + 4 * G * G);
    m.closed_form.push_back((l - root) / 2);
    m.closed_form.push_back((l + root) / 2);
  }
  std::sort(m.closed_form.begin(), m.closed_form.end());
  for (int k = 0; k < 2 * n; ++k)
    m.max_deviation = std::max(m.max_deviation, std::abs(m.closed_form[k] - m.sd.eigenvalues(k)));
  return m;
}

Eigen::MatrixXd raw_bath_operator(const BathSpec& b) {
  if (!b.raw) throw std::invalid_argument("raw bath couplings required");
  effective_coupling(b);
  const int n = b.chain.n();
  int dim = n;
  for (const auto& g : *b.raw) dim += static_cast<int>(g.size());
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  h.topLeftCorner(n, n) = build_h1(b.chain).dense();
  int at = n;
  for (int s = 0; s < n; ++s)
    for (double g : (*b.raw)[s]) {
      h(s, at) = h(at, s) = g;
      ++at;
    }
  return h;
}

BathCurves bath_transfer_amplitude(const BathSpec& b, const std::vector<double>& times) {
  const auto model = bath_model(b);
  const double G = effective_coupling(b);
  const int n = b.chain.n();
  const auto bare = diagonalize(b.chain);
  BathCurves c;
  c.times = times;
  c.exact = gamma(model.sd, 0, n - 1, times);
  c.bare = gamma(bare, 0, n - 1, times);
  std::vector<double> half(times.size());
  for (size_t k = 0; k < times.size(); ++k) half[k] = times[k] / 2;
  c.strong = gamma(bare, 0, n - 1, half);
  for (size_t k = 0; k < times.size(); ++k) {
    c.strong[k] *= std::cos(G * times[k]);
    c.max_strong_deviation = std::max(c.max_strong_deviation, std::abs(c.exact[k] - c.strong[k]));
    c.max_bare_deviation = std::max(c.max_bare_deviation, std::abs(c.exact[k] - c.bare[k]));
  }
  return c;
}

}  // namespace pst
