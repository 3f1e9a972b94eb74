#include "pst/slater.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace pst {

namespace {

constexpr double kDependenceTol = 1e-12;

void check_sites(int n, int site) {
  if (site < 0 || site >= n) throw std::out_of_range("site index out of range");
}

}  // namespace

double wedge_norm_squared(const std::vector<Eigen::VectorXcd>& vectors) {
  const int k = static_cast<int>(vectors.size());
  Eigen::MatrixXcd gram(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) gram(i, j) = vectors[i].dot(vectors[j]);
  return std::max(0.0, gram.determinant().real());
}

SlaterState make_slater(const std::vector<Eigen::VectorXcd>& vectors) {
  if (vectors.empty()) throw std::invalid_argument("a Slater state needs at least one orbital");
  const auto n = vectors.front().size();
  for (const auto& v : vectors)
    if (v.size() != n) throw std::invalid_argument("orbitals must share one length");
  if (static_cast<Eigen::Index>(vectors.size()) > n) {
    SlaterState s;
    s.orbitals = Eigen::MatrixXcd::Zero(n, static_cast<Eigen::Index>(vectors.size()));
    s.zero = true;
    s.raw_norm = 0.0;
    return s;
  }
  Eigen::MatrixXcd a(n, static_cast<Eigen::Index>(vectors.size()));
  double scale = 1.0;
  for (size_t j = 0; j < vectors.size(); ++j) {
    a.col(static_cast<Eigen::Index>(j)) = vectors[j];
    scale *= vectors[j].norm();
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
  const Eigen::Index k = a.cols();
  Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(n, k);
  const Eigen::MatrixXcd r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  cplx det = 1.0;
  for (Eigen::Index i = 0; i < k; ++i) det *= r(i, i);
  SlaterState s;
  s.orbitals = std::move(q);
  s.raw_norm = std::abs(det);
  if (scale == 0.0 || s.raw_norm <= kDependenceTol * scale) {
    s.zero = true;
    s.raw_norm = 0.0;
    return s;
  }
  s.phase = det / s.raw_norm;
  return s;
}

SlaterState occupation_state(int n, const std::vector<int>& sites) {
  std::vector<Eigen::VectorXcd> v;
  for (int site : sites) {
    check_sites(n, site);
    v.push_back(Eigen::VectorXcd::Unit(n, site));
  }
  return make_slater(v);
}

SlaterState evolve_slater(const SpectralDecomposition& sd, const SlaterState& s, double t) {
  if (sd.dimension() != s.sites()) throw std::invalid_argument("orbital length does not match the chain");
  SlaterState out = s;
  if (s.zero) return out;
  for (int j = 0; j < s.particles(); ++j) out.orbitals.col(j) = propagate(sd, s.orbitals.col(j), t);
  return out;
}

SlaterState evolve_slater(const ChainSpec& chain, const SlaterState& s, double t) {
  validate(chain);
  if (chain.statistics == Statistics::bosonic)
    throw std::invalid_argument("Slater evolution needs fermionic statistics; use two_boson_evolve");
  return evolve_slater(diagonalize(chain), s, t);
}

SlaterState add_orbital(const SlaterState& s, const Eigen::VectorXcd& v) {
  if (v.size() != s.sites()) throw std::invalid_argument("orbital length does not match the state");
  std::vector<Eigen::VectorXcd> cols{v};
  for (int j = 0; j < s.particles(); ++j) cols.push_back(s.orbitals.col(j));
  SlaterState out = make_slater(cols);
  // the existing orbitals are orthonormal, so only their phase carries over
  out.phase *= s.phase;
  out.raw_norm *= s.raw_norm;
  out.zero = out.zero || s.zero;
  return out;
}

SlaterState swap_orbitals(const SlaterState& s, int i, int j) {
  if (i < 0 || j < 0 || i >= s.particles() || j >= s.particles()) throw std::out_of_range("orbital index out of range");
  SlaterState out = s;
  if (i == j) return out;
  out.orbitals.col(i).swap(out.orbitals.col(j));
  out.phase = -out.phase;
  return out;
}

SlaterState normal_order(const SlaterState& s) {
  const int k = s.particles();
  std::vector<int> key(k);
  for (int j = 0; j < k; ++j) s.orbitals.col(j).cwiseAbs().maxCoeff(&key[j]);
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(), [&](int a, int b) { return key[a] < key[b]; });
  SlaterState out = s;
  int inversions = 0;
  for (int a = 0; a < k; ++a) {
    out.orbitals.col(a) = s.orbitals.col(perm[a]);
    for (int b = a + 1; b < k; ++b)
      if (perm[a] > perm[b]) ++inversions;
  }
  if (inversions % 2) out.phase = -out.phase;
  return out;
}

cplx amplitude(const SlaterState& s, const std::vector<int>& occupied) {
  if (static_cast<int>(occupied.size()) != s.particles()) return 0.0;
  if (s.zero) return 0.0;
  Eigen::MatrixXcd sub(s.particles(), s.particles());
  for (int a = 0; a < s.particles(); ++a) {
    check_sites(s.sites(), occupied[a]);
    if (a > 0 && occupied[a] <= occupied[a - 1]) throw std::invalid_argument("occupied sites must be ascending");
    sub.row(a) = s.orbitals.row(occupied[a]);
  }
  return s.phase * sub.determinant();
}

cplx overlap(const SlaterState& a, const SlaterState& b) {
  if (a.sites() != b.sites()) throw std::invalid_argument("states live on different chains");
  if (a.particles() != b.particles() || a.zero || b.zero) return 0.0;
  return std::conj(a.phase) * b.phase * (a.orbitals.adjoint() * b.orbitals).determinant();
}

std::vector<std::pair<std::uint64_t, cplx>> slater_amplitudes(const SlaterState& s, double cutoff) {
  const int n = s.sites();
  const int k = s.particles();
  if (n > 62) throw std::invalid_argument("too many sites to enumerate occupations");
  double count = 1.0;
  for (int i = 0; i < k; ++i) count = count * (n - i) / (i + 1);
  if (count > 1 << 22) throw std::invalid_argument("too many occupation sets to enumerate");
  std::vector<std::pair<std::uint64_t, cplx>> out;
  if (s.zero) return out;
  if (k == 0) {
    out.push_back({0, s.phase});
    return out;
  }
  std::vector<int> occ(k);
  std::iota(occ.begin(), occ.end(), 0);
  while (true) {
    const cplx a = amplitude(s, occ);
    if (std::abs(a) > cutoff) {
      std::uint64_t mask = 0;
      for (int site : occ) mask |= std::uint64_t{1} << site;
      out.push_back({mask, a});
    }
    int i = k - 1;
    while (i >= 0 && occ[i] == n - k + i) --i;
    if (i < 0) break;
    ++occ[i];
    for (int j = i + 1; j < k; ++j) occ[j] = occ[j - 1] + 1;
  }
  return out;
}

DenseState slater_to_dense(const SlaterState& s) {
  require_dense(s.sites());
  DenseState v = DenseState::Zero(Eigen::Index{1} << s.sites());
  for (const auto& [mask, a] : slater_amplitudes(s)) v(static_cast<Eigen::Index>(mask)) = a;
  return v;
}

Eigen::MatrixXcd two_boson_evolve(const ChainSpec& chain, int site_a, int site_b, double t) {
  validate(chain);
  const int n = chain.n();
  check_sites(n, site_a);
  check_sites(n, site_b);
  const auto sd = diagonalize(chain);
  const Eigen::VectorXcd u = propagate(sd, Eigen::VectorXcd::Unit(n, site_a), t);
  const Eigen::VectorXcd v = propagate(sd, Eigen::VectorXcd::Unit(n, site_b), t);
  const double norm = site_a == site_b ? std::sqrt(2.0) : 1.0;
  Eigen::MatrixXcd psi(n, n);
  for (int i = 0; i < n; ++i) {
    psi(i, i) = std::sqrt(2.0) * u(i) * v(i) / norm;
    for (int j = i + 1; j < n; ++j) psi(i, j) = psi(j, i) = (u(i) * v(j) + u(j) * v(i)) / norm;
  }
  return psi;
}

}  // namespace pst
