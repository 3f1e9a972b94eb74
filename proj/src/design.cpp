#include "pst/design.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "pst/certify.hpp"
#include "pst/error.hpp"
#include "pst/spectral.hpp"

namespace pst {

namespace {

void require_n(int n) {
  if (n < 2) throw std::invalid_argument("n must be at least 2");
}

double spread_of(const std::vector<double>& v) { return v.back() - v.front(); }

// Nearest x' = residue (mod modulus), ties toward zero.
long long nearest_in_class(double x, long long residue, long long modulus) {
  const double shifted = (x - static_cast<double>(residue)) / static_cast<double>(modulus);
  const auto lo = static_cast<long long>(std::floor(shifted)) * modulus + residue;
  const long long hi = lo + modulus;
  const double dlo = x - static_cast<double>(lo);
  const double dhi = static_cast<double>(hi) - x;
  if (dlo < dhi) return lo;
  if (dhi < dlo) return hi;
  return std::llabs(lo) <= std::llabs(hi) ? lo : hi;
}

long long mod(long long a, long long m) { return ((a % m) + m) % m; }

double max_error(const std::vector<double>& a, const std::vector<double>& b) {
  double e = 0.0;
  for (size_t i = 0; i < a.size(); ++i) e = std::max(e, std::abs(a[i] - b[i]));
  return e;
}

}  // namespace

ChainSpec analytic_chain(int n) {
  require_n(n);
  std::vector<double> j(n - 1);
  for (int k = 1; k < n; ++k) j[k - 1] = 0.5 * std::sqrt(static_cast<double>(k) * (n - k));
  return make_chain(std::move(j), std::vector<double>(n, 0.0));
}

ChainSpec sequential_storage_chain(int n) {
  require_n(n);
  std::vector<double> j(n - 1);
  for (int k = 1; k < n; ++k) {
    const double kk = k;
    j[k - 1] = std::sqrt(kk * kk * (n - kk) * (n + kk) / ((2 * kk - 1) * (2 * kk + 1)));
  }
  return make_chain(std::move(j), std::vector<double>(n, 0.0));
}

TargetSpectrum make_target(std::vector<double> eigenvalues, bool antisymmetric) {
  if (eigenvalues.empty()) throw std::invalid_argument("empty spectrum");
  for (double x : eigenvalues)
    if (!std::isfinite(x)) throw std::invalid_argument("spectrum must be finite");
  for (size_t k = 1; k < eigenvalues.size(); ++k)
    if (!(eigenvalues[k] > eigenvalues[k - 1]))
      throw std::invalid_argument("spectrum must be strictly ascending");
  if (antisymmetric) {
    const size_t n = eigenvalues.size();
    const double tol = 1e-12 * std::max(1.0, spread_of(eigenvalues));
    for (size_t k = 0; k < n; ++k)
      if (std::abs(eigenvalues[k] + eigenvalues[n - 1 - k]) > tol)
        throw std::invalid_argument("spectrum is not antisymmetric");
  }
  return TargetSpectrum{std::move(eigenvalues), antisymmetric};
}

ChainSpec chain_from_spectral_data(const std::vector<double>& eigenvalues,
                                   const std::vector<double>& weights) {
  const int n = static_cast<int>(eigenvalues.size());
  if (n == 0 || weights.size() != eigenvalues.size())
    throw std::invalid_argument("eigenvalues and weights must have equal, nonzero length");
  if (n == 1) return make_chain({}, {eigenvalues[0]});
  const bool full_reorth = n > 24;
  Eigen::Map<const Eigen::VectorXd> lam(eigenvalues.data(), n);
  Eigen::MatrixXd Q = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    if (!(weights[i] > 0)) throw std::invalid_argument("weights must be positive");
    Q(i, 0) = std::sqrt(weights[i]);
  }
  Q.col(0).normalize();
  std::vector<double> alpha(n), beta(n - 1);
  for (int k = 0; k < n; ++k) {
    Eigen::VectorXd v = lam.cwiseProduct(Q.col(k));
    if (k > 0) v -= beta[k - 1] * Q.col(k - 1);
    alpha[k] = Q.col(k).dot(v);
    v -= alpha[k] * Q.col(k);
    if (k == n - 1) break;
    if (full_reorth) {
      for (int pass = 0; pass < 2; ++pass) {
        const auto basis = Q.leftCols(k + 1);
        v -= basis * (basis.transpose() * v);
      }
    }
    beta[k] = v.norm();
    if (!(beta[k] > 0)) throw NumericalError("Lanczos breakdown at step " + std::to_string(k + 1));
    Q.col(k + 1) = v / beta[k];
  }
  return make_chain(std::move(beta), std::move(alpha));
}

ChainSpec chain_from_spectrum(const TargetSpectrum& target) {
  const auto& lam = target.eigenvalues;
  const auto w = end_weights(lam);
  ChainSpec chain = chain_from_spectral_data(lam, w);
  const int n = chain.n();
  if (n == 1) return chain;
  const double spread = spread_of(lam);
  const auto got = diagonalize(chain).spectrum();
  const double err = max_error(got, lam);
  if (err > 1e-8 * spread) {
    std::ostringstream os;
    os << "reconstructed spectrum off by " << err << " (spread " << spread << ")";
    throw NumericalError(os.str());
  }
  if (target.antisymmetric) {
    for (double b : chain.fields)
      if (std::abs(b) > 1e-9 * spread) throw NumericalError("antisymmetric target produced nonzero fields");
  }
  return chain;
}

NearUniformResult near_uniform_chain(int n, double slack) {
  require_n(n);
  if (!(slack > 0 && slack <= 1)) throw std::invalid_argument("slack must lie in (0,1]");
  NearUniformResult out;
  if (n <= 3) {
    out.chain = uniform_chain(n);
    const auto cert = certify_pst(out.chain);
    out.spectrum = cert.spectrum;
    out.t0 = *cert.t0;
    out.unit = std::numbers::pi / out.t0;
    return out;
  }
  std::vector<double> uniform(n);
  for (int k = 1; k <= n; ++k) uniform[k - 1] = -2 * std::cos(k * std::numbers::pi / (n + 1));
  double delta = INFINITY;
  for (int k = 1; k < n; ++k) delta = std::min(delta, uniform[k] - uniform[k - 1]);
  const double u = slack * delta;

  std::vector<double> lam(n, 0.0);
  // Odd n: integers k * u around a zero centre. Even n: odd o * u / 2, with
  // consecutive o differing by 2 mod 4 so every gap is an odd multiple of u.
  const bool odd = n % 2 == 1;
  const int first = odd ? (n - 1) / 2 + 1 : n / 2;
  const double scale = odd ? u : u / 2;
  long long prev = 0;
  for (int i = first; i < n; ++i) {
    const double x = uniform[i] / scale;
    long long pick;
    if (odd) pick = nearest_in_class(x, mod(prev + 1, 2), 2);
    else if (i == first) pick = nearest_in_class(x, 1, 2);
    else pick = nearest_in_class(x, mod(prev + 2, 4), 4);
    if (pick <= prev) {
      std::ostringstream os;
      os << "lattice snapping is not monotone at eigenvalue " << i + 1 << " (slack " << slack
         << ", unit " << u << "); try a smaller slack";
      throw NumericalError(os.str());
    }
    lam[i] = static_cast<double>(pick) * scale;
    lam[n - 1 - i] = -lam[i];
    prev = pick;
  }
  for (int k = 1; k < n; ++k)
    if (!(lam[k] > lam[k - 1])) throw NumericalError("lattice snapping produced a degenerate spectrum");

  out.chain = chain_from_spectrum(make_target(lam, true));
  const auto cert = certify_pst(out.chain);
  if (cert.verdict != Verdict::perfect)
    throw NumericalError("near-uniform design failed certification: " + cert.reason);
  out.spectrum = lam;
  out.t0 = *cert.t0;
  out.unit = std::numbers::pi / out.t0;
  for (double j : out.chain.couplings) out.max_deviation = std::max(out.max_deviation, std::abs(j - 1.0));
  return out;
}

ParametrizedFamily tridiagonal_coupling_family(int n) {
  require_n(n);
  ParametrizedFamily f;
  f.parameters = n - 1;
  f.dimension = n;
  f.evaluate = [n](const Eigen::VectorXd& r) {
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
    for (int k = 0; k + 1 < n; ++k) h(k, k + 1) = h(k + 1, k) = r(k);
    return h;
  };
  f.derivative = [n](const Eigen::VectorXd&, int j) {
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
    d(j, j + 1) = d(j + 1, j) = 1.0;
    return d;
  };
  return f;
}

ParametrizedFamily next_nearest_family(int n) {
  if (n < 3) throw std::invalid_argument("next-nearest family needs n >= 3");
  ParametrizedFamily f;
  f.parameters = n;
  f.dimension = n;
  f.evaluate = [n](const Eigen::VectorXd& r) {
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
    for (int k = 0; k + 1 < n; ++k) h(k, k + 1) = h(k + 1, k) = r(k);
    for (int k = 0; k + 2 < n; ++k) h(k, k + 2) = h(k + 2, k) = r(n - 1);
    return h;
  };
  f.derivative = [n](const Eigen::VectorXd&, int j) {
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
    if (j < n - 1) {
      d(j, j + 1) = d(j + 1, j) = 1.0;
    } else {
      for (int k = 0; k + 2 < n; ++k) d(k, k + 2) = d(k + 2, k) = 1.0;
    }
    return d;
  };
  return f;
}

double derivative_check(const ParametrizedFamily& family, const Eigen::VectorXd& probe, double step) {
  if (probe.size() != family.parameters) throw std::invalid_argument("probe has wrong length");
  double worst = 0.0;
  for (int j = 0; j < family.parameters; ++j) {
    Eigen::VectorXd up = probe, down = probe;
    up(j) += step;
    down(j) -= step;
    const Eigen::MatrixXd fd = (family.evaluate(up) - family.evaluate(down)) / (2 * step);
    worst = std::max(worst, (fd - family.derivative(probe, j)).cwiseAbs().maxCoeff());
  }
  return worst;
}

NewtonResult newton_iep(const ParametrizedFamily& family, const TargetSpectrum& target,
                        const Eigen::VectorXd& r0, const NewtonOptions& opts) {
  const int n = family.dimension;
  const int p = family.parameters;
  if (static_cast<int>(target.eigenvalues.size()) != n) throw std::invalid_argument("target has wrong length");
  if (r0.size() != p) throw std::invalid_argument("r0 has wrong length");
  if (derivative_check(family, r0) > 1e-5) throw std::invalid_argument("family derivative fails finite-difference check");

  NewtonResult res;
  res.r = r0;
  auto sd = diagonalize(family.evaluate(res.r));
  if (sd.degenerate) throw std::invalid_argument("starting point has a degenerate spectrum");
  double err = max_error(sd.spectrum(), target.eigenvalues);
  res.errors.push_back(err);
  int increases = 0;
  while (err > opts.tol) {
    if (res.iterations == opts.max_iter) {
      std::ostringstream os;
      os << "no convergence after " << opts.max_iter << " iterations (error " << err << ")";
      throw NumericalError(os.str());
    }
    Eigen::VectorXd b(n);
    for (int i = 0; i < n; ++i) b(i) = target.eigenvalues[i] - sd.eigenvalues(i);
    Eigen::MatrixXd M(n, p);
    const Eigen::MatrixXd& U = sd.eigenvectors;
    if (opts.parallel) {
#pragma omp parallel for schedule(static)
      for (int j = 0; j < p; ++j)
        M.col(j) = (U.transpose() * family.derivative(res.r, j) * U).diagonal();
    } else {
      for (int j = 0; j < p; ++j)
        M.col(j) = (U.transpose() * family.derivative(res.r, j) * U).diagonal();
    }
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod;
    cod.setThreshold(1e-8);
    cod.compute(M);
    Eigen::VectorXd dr = cod.solve(b);
    double floor = 0.0;
    for (double x : target.eigenvalues) floor = std::max(floor, std::abs(x));
    if ((M * dr - b).norm() > 1e-6 * b.norm() + 1e-13 * n * floor) {
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
      const auto& s = svd.singularValues();
      std::ostringstream os;
      os << "singular Newton system (condition estimate " << s(0) / s(s.size() - 1) << ")";
      throw NumericalError(os.str());
    }
    Eigen::VectorXd trial = res.r + dr;
    auto trial_sd = diagonalize(family.evaluate(trial));
    double trial_err = max_error(trial_sd.spectrum(), target.eigenvalues);
    for (int h = 0; h < 10 && trial_err > err; ++h) {
      dr *= 0.5;
      trial = res.r + dr;
      trial_sd = diagonalize(family.evaluate(trial));
      trial_err = max_error(trial_sd.spectrum(), target.eigenvalues);
    }
    increases = trial_err > err ? increases + 1 : 0;
    if (increases >= 2) throw NumericalError("Newton iteration diverged");
    res.r = trial;
    sd = std::move(trial_sd);
    err = trial_err;
    ++res.iterations;
    res.errors.push_back(err);
  }
  return res;
}

}  // namespace pst
