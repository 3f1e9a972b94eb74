#include "pst/dense.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace pst {

int dense_cap() {
  const char* env = std::getenv("PST_DENSE_CAP");
  if (env == nullptr || *env == '\0') return 12;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1 || v > 30) throw std::invalid_argument("PST_DENSE_CAP must be an integer in [1, 30]");
  return static_cast<int>(v);
}

void require_dense(int n) {
  if (n < 1) throw std::invalid_argument("dense simulation needs at least one site");
  if (n > dense_cap())
    throw std::invalid_argument("N=" + std::to_string(n) + " exceeds the dense cap of " + std::to_string(dense_cap()));
}

kernels::Csr xx_hamiltonian(const ChainSpec& chain) {
  validate(chain);
  const int n = chain.n();
  require_dense(n);
  const std::int64_t dim = std::int64_t{1} << n;
  std::vector<kernels::Entry> entries;
  entries.reserve(static_cast<size_t>(dim) * n);
  for (std::int64_t s = 0; s < dim; ++s) {
    double diag = 0.0;
    for (int k = 0; k < n; ++k)
      if (s >> k & 1) diag += chain.fields[k];
    entries.push_back({static_cast<int>(s), static_cast<int>(s), diag});
    for (int k = 0; k + 1 < n; ++k) {
      if (((s >> k) & 1) != ((s >> (k + 1)) & 1)) {
        const std::int64_t flipped = s ^ (std::int64_t{3} << k);
        entries.push_back({static_cast<int>(flipped), static_cast<int>(s), chain.couplings[k]});
      }
    }
  }
  return kernels::csr_from_entries(static_cast<int>(dim), std::move(entries));
}

DenseState dense_evolve(const kernels::Csr& h, const DenseState& state, double t, bool parallel) {
  if (state.size() != h.rows) throw std::invalid_argument("state dimension does not match the Hamiltonian");
  if (std::abs(state.norm() - 1.0) > 1e-10) throw std::invalid_argument("dense state is not normalised");
  return kernels::expm_apply(h, state, t, parallel);
}

DenseState dense_evolve(const ChainSpec& chain, const DenseState& state, double t, bool parallel) {
  return dense_evolve(xx_hamiltonian(chain), state, t, parallel);
}

DenseState basis_state(int n, std::uint64_t bits) {
  require_dense(n);
  if (bits >> n) throw std::out_of_range("basis index has bits beyond site count");
  DenseState v = DenseState::Zero(std::int64_t{1} << n);
  v(static_cast<Eigen::Index>(bits)) = 1.0;
  return v;
}

Eigen::MatrixXcd reduced_density(const DenseState& state, int n, const std::vector<int>& keep) {
  if (state.size() != (std::int64_t{1} << n)) throw std::invalid_argument("state dimension is not 2^n");
  const int k = static_cast<int>(keep.size());
  std::uint64_t kept_mask = 0;
  for (int s : keep) {
    if (s < 0 || s >= n) throw std::out_of_range("site index out of range");
    if (kept_mask >> s & 1) throw std::invalid_argument("duplicate site");
    kept_mask |= std::uint64_t{1} << s;
  }
  const Eigen::Index dk = Eigen::Index{1} << k;
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dk, dk);
  // group amplitudes by the traced-out configuration
  const std::uint64_t rest_mask = ((std::uint64_t{1} << n) - 1) & ~kept_mask;
  const std::uint64_t rest_count = std::uint64_t{1} << (n - k);
  std::vector<std::uint64_t> rest_bits;
  for (int s = 0; s < n; ++s)
    if (rest_mask >> s & 1) rest_bits.push_back(s);
  Eigen::VectorXcd column(dk);
  for (std::uint64_t r = 0; r < rest_count; ++r) {
    std::uint64_t base = 0;
    for (size_t b = 0; b < rest_bits.size(); ++b)
      if (r >> b & 1) base |= std::uint64_t{1} << rest_bits[b];
    for (Eigen::Index a = 0; a < dk; ++a) {
      std::uint64_t idx = base;
      for (int b = 0; b < k; ++b)
        if (a >> b & 1) idx |= std::uint64_t{1} << keep[b];
      column(a) = state(static_cast<Eigen::Index>(idx));
    }
    rho += column * column.adjoint();
  }
  return rho;
}

double entropy_bits(const Eigen::MatrixXcd& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double p = es.eigenvalues()(i);
    if (p > 1e-15) s -= p * std::log2(p);
  }
  return s;
}

}  // namespace pst
