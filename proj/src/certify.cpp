#include "pst/certify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "pst/rational.hpp"
#include "pst/spectral.hpp"

namespace pst {

namespace {

constexpr double kTransferTol = 1e-8;

PstCertificate reject(PstCertificate cert, std::string reason) {
  cert.verdict = Verdict::imperfect;
  cert.t0.reset();
  cert.reason = std::move(reason);
  return cert;
}

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::perfect: return "perfect";
    case Verdict::imperfect: return "imperfect";
    case Verdict::degenerate_spectrum: return "degenerate-spectrum";
  }
  return "unknown";
}

PstCertificate certify_pst(const ChainSpec& chain, const CertifyOptions& opts) {
  validate(chain);
  if (opts.tol <= 0 || opts.max_denominator < 1) throw std::invalid_argument("tol and max_denominator must be positive");
  const int n = chain.n();
  PstCertificate cert;
  if (n < 2) return reject(cert, "a single site has nowhere to transfer to");

  const auto sd = diagonalize(chain);
  cert.spectrum = sd.spectrum();
  cert.end_weights.resize(n);
  for (int k = 0; k < n; ++k) cert.end_weights[k] = sd.eigenvectors(0, k) * sd.eigenvectors(0, k);
  for (int k = 1; k < n; ++k) cert.gaps.push_back(cert.spectrum[k] - cert.spectrum[k - 1]);

  if (has_zero_coupling(chain)) return reject(cert, "zero coupling disconnects the chain");

  ChainSpec gauge = chain;
  for (double& j : gauge.couplings) j = std::abs(j);
  double scale = 0.0;
  for (double j : gauge.couplings) scale = std::max(scale, j);
  for (double b : gauge.fields) scale = std::max(scale, std::abs(b));
  const auto mirror = mirror_symmetry_check(gauge, opts.mirror_tol * scale);
  cert.mirror_violation = mirror.max_violation;
  if (!mirror.symmetric) return reject(cert, "chain is not mirror symmetric");

  if (sd.degenerate) {
    cert.verdict = Verdict::degenerate_spectrum;
    cert.reason = "spectrum is degenerate";
    return cert;
  }

  const double gmin = *std::min_element(cert.gaps.begin(), cert.gaps.end());
  std::vector<Fraction> ratios;
  long long common = 1;
  for (size_t k = 0; k < cert.gaps.size(); ++k) {
    const auto f = rationalize(cert.gaps[k] / gmin, opts.max_denominator, opts.tol);
    if (!f) {
      cert.offending_gap = static_cast<int>(k);
      return reject(cert, "gap " + std::to_string(k + 1) + " is not commensurate with the smallest gap");
    }
    const auto l = lcm_bounded(common, f->q, opts.max_denominator);
    if (!l) {
      cert.offending_gap = static_cast<int>(k);
      return reject(cert, "common denominator exceeds max_denominator");
    }
    common = *l;
    ratios.push_back(*f);
  }
  std::vector<long long> a(ratios.size());
  long long g = 0;
  for (size_t k = 0; k < ratios.size(); ++k) {
    a[k] = ratios[k].p * (common / ratios[k].q);
    g = gcd_ll(g, a[k]);
  }
  double num = 0.0, den = 0.0;
  cert.gap_multipliers.resize(a.size());
  for (size_t k = 0; k < a.size(); ++k) {
    cert.gap_multipliers[k] = a[k] / g;
    const auto c = static_cast<double>(cert.gap_multipliers[k]);
    num += cert.gaps[k] * c;
    den += c * c;
  }
  const double unit = num / den;
  double residual = 0.0;
  for (size_t k = 0; k < a.size(); ++k)
    residual = std::max(residual, std::abs(cert.gaps[k] / unit - static_cast<double>(cert.gap_multipliers[k])));
  cert.worst_gap_residual = residual;
  if (residual > opts.tol) return reject(cert, "gap residual above tolerance");

  for (size_t k = 0; k < a.size(); ++k) {
    if (cert.gap_multipliers[k] % 2 == 0) {
      cert.offending_gap = static_cast<int>(k);
      return reject(cert, "gap " + std::to_string(k + 1) + " is an even multiple of pi/t0");
    }
  }
  for (long long c : cert.gap_multipliers) cert.odd_integers.push_back((c - 1) / 2);

  // Eigenvector k (ascending) of a mirror-symmetric Jacobi matrix has
  // reflection parity (-1)^(n-1-k).
  const auto sdg = diagonalize(gauge);
  for (int k = 0; k < n; ++k) {
    const Eigen::VectorXd v = sdg.eigenvectors.col(k);
    const double parity = (n - 1 - k) % 2 == 0 ? 1.0 : -1.0;
    if ((v - parity * v.reverse()).cwiseAbs().maxCoeff() > 1e-6) {
      cert.odd_integers.clear();
      return reject(cert, "eigenvector " + std::to_string(k + 1) + " breaks the alternating symmetry pattern");
    }
  }

  const double t0 = std::numbers::pi / unit;
  const cplx arrive = gamma(sd, 0, n - 1, t0);
  const cplx revive = gamma(sd, 0, 0, 2 * t0);
  if (std::abs(arrive) < 1 - kTransferTol || std::abs(revive) < 1 - kTransferTol) {
    cert.odd_integers.clear();
    return reject(cert, "direct propagation check failed");
  }
  cert.verdict = Verdict::perfect;
  cert.t0 = t0;
  cert.arrival_phase = arrive / std::abs(arrive);
  return cert;
}

std::vector<double> end_weights(const std::vector<double>& spectrum) {
  const int n = static_cast<int>(spectrum.size());
  if (n == 0) throw std::invalid_argument("empty spectrum");
  for (int k = 1; k < n; ++k)
    if (!(spectrum[k] > spectrum[k - 1])) throw std::invalid_argument("spectrum must be strictly ascending");
  const double spread = spectrum.back() - spectrum.front();
  for (int k = 1; k < n; ++k)
    if (spectrum[k] - spectrum[k - 1] < kDegeneracyTol * spread)
      throw std::invalid_argument("degenerate spectrum");
  std::vector<double> logw(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int m = 0; m < n; ++m)
      if (m != i) logw[i] -= std::log(std::abs(spectrum[i] - spectrum[m]));
  const double top = *std::max_element(logw.begin(), logw.end());
  double total = 0.0;
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i) total += (w[i] = std::exp(logw[i] - top));
  for (double& x : w) x /= total;
  return w;
}

RateReport rate_condition(const std::vector<double>& spectrum, const std::vector<double>& weights,
                          double t0, int M) {
  if (M < 1) throw std::invalid_argument("M must be at least 1");
  if (spectrum.size() != weights.size() || spectrum.empty())
    throw std::invalid_argument("spectrum and weights must have equal, nonzero length");
  if (!(t0 > 0)) throw std::invalid_argument("t0 must be positive");
  RateReport r;
  r.M = M;
  r.residue_sums.assign(M, 0.0);
  for (size_t i = 0; i < spectrum.size(); ++i) {
    const double x = t0 / std::numbers::pi * (spectrum[i] - spectrum[0]);
    const double rounded = std::round(x);
    if (std::abs(x - rounded) > 1e-6)
      throw std::invalid_argument("spectrum is not commensurate with t0");
    const auto k = static_cast<long long>(rounded);
    r.residue_sums[((k % M) + M) % M] += weights[i];
  }
  const double hi = *std::max_element(r.residue_sums.begin(), r.residue_sums.end());
  const double lo = *std::min_element(r.residue_sums.begin(), r.residue_sums.end());
  double scale = 0.0;
  for (double x : r.residue_sums) scale = std::max(scale, std::abs(x));
  r.equal = hi - lo <= 1e-9 * scale;
  if (r.equal) r.achievable_rate = M / (2 * t0);
  for (int m = 1; m < M; ++m) {
    const double t = 2.0 * m * t0 / M;
    cplx g = 0.0;
    for (size_t i = 0; i < spectrum.size(); ++i)
      g += weights[i] * cplx(std::cos(spectrum[i] * t), -std::sin(spectrum[i] * t));
    r.max_direct_overlap = std::max(r.max_direct_overlap, std::abs(g));
  }
  r.direct_check_consistent = r.equal == (r.max_direct_overlap <= 1e-8);
  return r;
}

RateReport rate_condition(const PstCertificate& cert, int M) {
  if (cert.verdict != Verdict::perfect || !cert.t0)
    throw std::invalid_argument("rate condition needs a perfect certificate");
  return rate_condition(cert.spectrum, cert.end_weights, *cert.t0, M);
}

OptimalityReport optimality_report(const ChainSpec& chain, const PstCertificate& cert) {
  validate(chain);
  if (cert.verdict != Verdict::perfect || !cert.t0)
    throw std::invalid_argument("optimality report needs a perfect certificate");
  const int n = chain.n();
  const double t0 = *cert.t0;
  OptimalityReport r;
  for (double j : chain.couplings) r.j_max = std::max(r.j_max, std::abs(j));
  if (n % 2 == 0) {
    r.j_half = std::abs(chain.couplings[n / 2 - 1]);
    r.j_half_bound = n / 4.0 * std::numbers::pi / t0;
    r.bound_holds = *r.j_half >= *r.j_half_bound - 1e-9;
    r.saturated = std::abs(r.j_max - *r.j_half_bound) <= 1e-12 * std::max(1.0, *r.j_half_bound);
  }
  const double j1 = std::abs(chain.couplings[0]);
  const double b1 = chain.fields[0];
  r.margolus_bound = std::numbers::pi / (2 * j1);
  r.margolus_holds = t0 >= r.margolus_bound * (1 - 1e-12);
  r.timing_sensitivity = j1 * j1 + b1 * b1;
  return r;
}

double timing_window(const ChainSpec& chain, const PstCertificate& cert, double epsilon) {
  if (!(epsilon > 0 && epsilon < 1)) throw std::invalid_argument("epsilon must lie in (0,1)");
  if (cert.verdict != Verdict::perfect || !cert.t0)
    throw std::invalid_argument("timing window needs a perfect certificate");
  const auto sd = diagonalize(chain);
  const int n = chain.n();
  const double t0 = *cert.t0;
  const double spread = sd.eigenvalues(n - 1) - sd.eigenvalues(0);
  const double step = std::numbers::pi / (20 * spread);
  auto ok = [&](double t) { return std::norm(gamma(sd, 0, n - 1, t)) >= 1 - epsilon; };
  double half = INFINITY;
  for (double dir : {1.0, -1.0}) {
    double inside = 0.0;
    double outside = step;
    while (outside < t0 && ok(t0 + dir * outside)) {
      inside = outside;
      outside += step;
    }
    if (outside >= t0) outside = t0;
    for (int it = 0; it < 200 && outside - inside > 1e-13 * t0; ++it) {
      const double mid = 0.5 * (inside + outside);
      (ok(t0 + dir * mid) ? inside : outside) = mid;
    }
    half = std::min(half, inside);
  }
  return 2 * half;
}

}  // namespace pst
