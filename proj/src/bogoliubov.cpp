#include "pst/bogoliubov.hpp"

#include <cmath>
#include <stdexcept>

#include "pst/protocols.hpp"

namespace pst {

void validate(const QuadraticFermionHamiltonian& h) {
  const auto n = h.A.rows();
  if (n < 1 || h.A.cols() != n || h.B.rows() != n || h.B.cols() != n)
    throw std::invalid_argument("A and B must be square and of equal size");
  if (!h.A.allFinite() || !h.B.allFinite()) throw std::invalid_argument("A and B must be finite");
  const double scale = std::max({1.0, h.A.cwiseAbs().maxCoeff(), h.B.cwiseAbs().maxCoeff()});
  if ((h.A - h.A.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) throw std::invalid_argument("A is not symmetric");
  if ((h.B + h.B.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw std::invalid_argument("B is not antisymmetric");
}

Eigen::MatrixXd block_matrix(const QuadraticFermionHamiltonian& h) {
  validate(h);
  const int n = h.n();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  m.topRightCorner(n, n) = h.A + h.B;
  m.bottomLeftCorner(n, n) = h.A - h.B;
  return m;
}

Eigen::MatrixXd BogoliubovModes::g() const { return (eta + chi) / std::sqrt(2.0); }
Eigen::MatrixXd BogoliubovModes::h() const { return (eta - chi) / std::sqrt(2.0); }

BogoliubovModes bogoliubov_modes(const QuadraticFermionHamiltonian& h) {
  validate(h);
  const int n = h.n();
  // With C = A + B = U S V^T, (u_k; v_k)/sqrt2 is an eigenvector of the block
  // matrix for +s_k and (u_k; -v_k)/sqrt2 for -s_k. Zero modes pair up the
  // same way, which fixes the split between the two halves.
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(h.A + h.B, Eigen::ComputeFullU | Eigen::ComputeFullV);
  BogoliubovModes m;
  m.mu.resize(n);
  m.eta.resize(n, n);
  m.chi.resize(n, n);
  for (int k = 0; k < n; ++k) {
    const int src = n - 1 - k;  // singular values come descending
    Eigen::VectorXd u = svd.matrixU().col(src);
    Eigen::VectorXd v = svd.matrixV().col(src);
    const double big = u.cwiseAbs().maxCoeff();
    for (int i = 0; i < n; ++i) {
      if (std::abs(u(i)) > 1e-10 * big) {
        if (u(i) < 0) {
          u = -u;
          v = -v;
        }
        break;
      }
    }
    m.mu(k) = svd.singularValues()(src);
    m.eta.row(k) = u.transpose() / std::sqrt(2.0);
    m.chi.row(k) = v.transpose() / std::sqrt(2.0);
  }
  return m;
}

double canonical_residual(const BogoliubovModes& m) {
  const Eigen::MatrixXd ee = m.eta * m.eta.transpose();
  const Eigen::MatrixXd cc = m.chi * m.chi.transpose();
  const auto n = ee.rows();
  const double plus = (ee + cc - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
  const double minus = (ee - cc).cwiseAbs().maxCoeff();
  return std::max(plus, minus);
}

QuadraticFermionHamiltonian ising_hamiltonian(const std::vector<double>& fields, const std::vector<double>& couplings) {
  const int n = static_cast<int>(fields.size());
  if (n < 1 || static_cast<int>(couplings.size()) != n - 1)
    throw std::invalid_argument("Ising chain needs N fields and N-1 couplings");
  QuadraticFermionHamiltonian h;
  h.A = Eigen::MatrixXd::Zero(n, n);
  h.B = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) h.A(i, i) = fields[i];
  for (int i = 0; i + 1 < n; ++i) {
    h.A(i, i + 1) = h.A(i + 1, i) = couplings[i];
    h.B(i, i + 1) = -couplings[i];
    h.B(i + 1, i) = couplings[i];
  }
  return h;
}

IsingTransfer ising_from_pst(const ChainSpec& chain2n) {
  validate(chain2n);
  if (chain2n.n() % 2) throw std::invalid_argument("the hopping chain must have even length 2N");
  for (double b : chain2n.fields)
    if (b != 0.0) throw std::invalid_argument("the hopping chain must have zero fields");
  const auto cert = require_perfect(chain2n);
  const int n = chain2n.n() / 2;
  IsingTransfer out;
  for (int i = 0; i < n; ++i) out.fields.push_back(chain2n.couplings[2 * i]);
  for (int i = 0; i + 1 < n; ++i) out.couplings.push_back(chain2n.couplings[2 * i + 1] / 2);
  out.hamiltonian = ising_hamiltonian(out.fields, out.couplings);
  out.t0 = *cert.t0;

  const auto sd = diagonalize(block_matrix(out.hamiltonian));
  Eigen::VectorXcd in = Eigen::VectorXcd::Zero(2 * n);
  in(0) = in(n) = 1.0 / std::sqrt(2.0);
  Eigen::VectorXcd target = Eigen::VectorXcd::Zero(2 * n);
  target(n - 1) = target(2 * n - 1) = 1.0 / std::sqrt(2.0);
  const Eigen::VectorXcd evolved = propagate(sd, in, out.t0);
  const cplx overlap = target.dot(evolved);
  out.fidelity = std::norm(overlap);
  out.phase = overlap / std::abs(overlap);
  return out;
}

}  // namespace pst
