#pragma once

#include <vector>

#include <Eigen/Dense>

namespace pst {

enum class Statistics { fermionic, bosonic };

// XX chain: couplings J_1..J_{N-1}, fields B_1..B_N. Sites are 0-based here.
struct ChainSpec {
  std::vector<double> couplings;
  std::vector<double> fields;
  Statistics statistics = Statistics::fermionic;

  int n() const { return static_cast<int>(fields.size()); }
};

// Throws std::invalid_argument on shape errors or non-finite entries.
void validate(const ChainSpec& chain);
ChainSpec make_chain(std::vector<double> couplings, std::vector<double> fields,
                     Statistics statistics = Statistics::fermionic);
ChainSpec uniform_chain(int n, double coupling = 1.0);
bool has_zero_coupling(const ChainSpec& chain);

// Symmetric tridiagonal single-excitation matrix H1.
struct Tridiagonal {
  std::vector<double> diagonal;
  std::vector<double> offdiagonal;

  int dimension() const { return static_cast<int>(diagonal.size()); }
  Eigen::MatrixXd dense() const;
};

Tridiagonal build_h1(const ChainSpec& chain);

struct HeisenbergSpec {
  std::vector<double> couplings;
  std::vector<double> anisotropies;
  std::vector<double> fields;

  int n() const { return static_cast<int>(fields.size()); }
};

void validate(const HeisenbergSpec& h);
// Effective fields B_n = b_n - (J_n D_n + J_{n-1} D_{n-1}) / 2 with J_0 = J_N = 0.
Tridiagonal heisenberg_to_h1(const HeisenbergSpec& h);

struct MirrorReport {
  bool symmetric = false;
  double max_violation = 0.0;
};

MirrorReport mirror_symmetry_check(const ChainSpec& chain, double tol);

}  // namespace pst
