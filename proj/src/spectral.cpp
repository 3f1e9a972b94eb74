#include "pst/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "pst/kernels.hpp"

namespace pst {

namespace {

void finish(SpectralDecomposition& sd) {
  const int n = sd.dimension();
  for (int k = 0; k < n; ++k) {
    auto col = sd.eigenvectors.col(k);
    const double tiny = kSignTol * col.cwiseAbs().maxCoeff();
    for (int i = 0; i < n; ++i) {
      if (std::abs(col(i)) > tiny) {
        if (col(i) < 0) col *= -1.0;
        break;
      }
    }
  }
  sd.min_gap = n > 1 ? INFINITY : 0.0;
  for (int k = 1; k < n; ++k)
    sd.min_gap = std::min(sd.min_gap, sd.eigenvalues(k) - sd.eigenvalues(k - 1));
  const double spread = n > 1 ? sd.eigenvalues(n - 1) - sd.eigenvalues(0) : 0.0;
  sd.degenerate = n > 1 && (spread == 0.0 || sd.min_gap < kDegeneracyTol * spread);
}

void check_site(const SpectralDecomposition& sd, int site) {
  if (site < 0 || site >= sd.dimension())
    throw std::out_of_range("site " + std::to_string(site) + " out of range");
}

}  // namespace

std::vector<double> SpectralDecomposition::spectrum() const {
  return std::vector<double>(eigenvalues.data(), eigenvalues.data() + eigenvalues.size());
}

SpectralDecomposition diagonalize(const Tridiagonal& m) {
  const int n = m.dimension();
  if (n == 0) throw std::invalid_argument("empty matrix");
  SpectralDecomposition sd;
  if (n == 1) {
    sd.eigenvalues = Eigen::VectorXd::Constant(1, m.diagonal[0]);
    sd.eigenvectors = Eigen::MatrixXd::Identity(1, 1);
  } else {
    Eigen::VectorXd d = Eigen::Map<const Eigen::VectorXd>(m.diagonal.data(), n);
    Eigen::VectorXd e = Eigen::Map<const Eigen::VectorXd>(m.offdiagonal.data(), n - 1);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(d, e, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) throw std::runtime_error("tridiagonal eigensolver failed");
    sd.eigenvalues = solver.eigenvalues();
    sd.eigenvectors = solver.eigenvectors();
  }
  finish(sd);
  return sd;
}

SpectralDecomposition diagonalize(const ChainSpec& chain) { return diagonalize(build_h1(chain)); }

SpectralDecomposition diagonalize(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols() || m.rows() == 0) throw std::invalid_argument("matrix must be square");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw std::invalid_argument("matrix is not symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  if (solver.info() != Eigen::Success) throw std::runtime_error("dense eigensolver failed");
  SpectralDecomposition sd;
  sd.eigenvalues = solver.eigenvalues();
  sd.eigenvectors = solver.eigenvectors();
  finish(sd);
  return sd;
}

Eigen::VectorXcd propagate(const SpectralDecomposition& sd, const Eigen::VectorXcd& v, double t) {
  if (v.size() != sd.dimension()) throw std::invalid_argument("dimension mismatch");
  const Eigen::MatrixXd& V = sd.eigenvectors;
  Eigen::VectorXcd c = V.transpose().cast<cplx>() * v;
  for (int k = 0; k < c.size(); ++k)
    c(k) *= cplx(std::cos(sd.eigenvalues(k) * t), -std::sin(sd.eigenvalues(k) * t));
  return V.cast<cplx>() * c;
}

Eigen::MatrixXcd propagator(const SpectralDecomposition& sd, double t) {
  const int n = sd.dimension();
  Eigen::VectorXcd phase(n);
  for (int k = 0; k < n; ++k)
    phase(k) = cplx(std::cos(sd.eigenvalues(k) * t), -std::sin(sd.eigenvalues(k) * t));
  const Eigen::MatrixXcd V = sd.eigenvectors.cast<cplx>();
  return V * phase.asDiagonal() * V.transpose();
}

cplx gamma(const SpectralDecomposition& sd, int source, int target, double t) {
  check_site(sd, source);
  check_site(sd, target);
  cplx acc = 0.0;
  for (int k = 0; k < sd.dimension(); ++k) {
    const double w = sd.eigenvectors(target, k) * sd.eigenvectors(source, k);
    acc += w * cplx(std::cos(sd.eigenvalues(k) * t), -std::sin(sd.eigenvalues(k) * t));
  }
  return acc;
}

std::vector<cplx> gamma(const SpectralDecomposition& sd, int source, int target,
                        const std::vector<double>& times) {
  check_site(sd, source);
  check_site(sd, target);
  const int n = sd.dimension();
  std::vector<double> weight(n);
  for (int k = 0; k < n; ++k) weight[k] = sd.eigenvectors(target, k) * sd.eigenvectors(source, k);
  std::vector<cplx> out;
  kernels::gamma_grid(sd.spectrum(), weight, times, out);
  return out;
}

std::vector<double> linspace(double a, double b, int points) {
  if (points < 1) throw std::invalid_argument("need at least one point");
  std::vector<double> t(points);
  for (int k = 0; k < points; ++k) t[k] = points == 1 ? a : a + (b - a) * k / (points - 1);
  return t;
}

}  // namespace pst
