#include "pst/chain.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace pst {

namespace {

void require_finite(const std::vector<double>& v, const char* what) {
  for (double x : v) {
    if (!std::isfinite(x)) throw std::invalid_argument(std::string(what) + " must be finite");
  }
}

}  // namespace

void validate(const ChainSpec& chain) {
  if (chain.fields.empty()) throw std::invalid_argument("chain needs at least one site");
  if (chain.couplings.size() + 1 != chain.fields.size())
    throw std::invalid_argument("couplings must have length n-1 (got " +
                                std::to_string(chain.couplings.size()) + " for n=" +
                                std::to_string(chain.fields.size()) + ")");
  require_finite(chain.couplings, "couplings");
  require_finite(chain.fields, "fields");
}

ChainSpec make_chain(std::vector<double> couplings, std::vector<double> fields,
                     Statistics statistics) {
  ChainSpec c{std::move(couplings), std::move(fields), statistics};
  validate(c);
  return c;
}

ChainSpec uniform_chain(int n, double coupling) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  return make_chain(std::vector<double>(n - 1, coupling), std::vector<double>(n, 0.0));
}

bool has_zero_coupling(const ChainSpec& chain) {
  return std::any_of(chain.couplings.begin(), chain.couplings.end(),
                     [](double j) { return j == 0.0; });
}

Eigen::MatrixXd Tridiagonal::dense() const {
  const int n = dimension();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = diagonal[i];
  for (int i = 0; i + 1 < n; ++i) m(i, i + 1) = m(i + 1, i) = offdiagonal[i];
  return m;
}

Tridiagonal build_h1(const ChainSpec& chain) {
  validate(chain);
  return Tridiagonal{chain.fields, chain.couplings};
}

void validate(const HeisenbergSpec& h) {
  if (h.fields.empty()) throw std::invalid_argument("chain needs at least one site");
  if (h.couplings.size() + 1 != h.fields.size() || h.anisotropies.size() != h.couplings.size())
    throw std::invalid_argument("couplings and anisotropies must have length n-1");
  require_finite(h.couplings, "couplings");
  require_finite(h.anisotropies, "anisotropies");
  require_finite(h.fields, "fields");
}

Tridiagonal heisenberg_to_h1(const HeisenbergSpec& h) {
  validate(h);
  const int n = h.n();
  Tridiagonal t{h.fields, h.couplings};
  for (int i = 0; i < n; ++i) {
    double shift = 0.0;
    if (i < n - 1) shift += h.couplings[i] * h.anisotropies[i];
    if (i > 0) shift += h.couplings[i - 1] * h.anisotropies[i - 1];
    t.diagonal[i] -= 0.5 * shift;
  }
  return t;
}

MirrorReport mirror_symmetry_check(const ChainSpec& chain, double tol) {
  validate(chain);
  if (tol < 0) throw std::invalid_argument("tol must be non-negative");
  const int n = chain.n();
  double worst = 0.0;
  for (int i = 0; i < n - 1; ++i)
    worst = std::max(worst, std::abs(chain.couplings[i] - chain.couplings[n - 2 - i]));
  for (int i = 0; i < n; ++i)
    worst = std::max(worst, std::abs(chain.fields[i] - chain.fields[n - 1 - i]));
  return MirrorReport{worst <= tol, worst};
}

}  // namespace pst
