#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

// Data-parallel kernels. Each has an OpenMP version and a serial reference
// with identical arithmetic; tests and pst_bench compare the two.
namespace pst::kernels {

using cplx = std::complex<double>;

// out[k] = sum_n weight[n] * exp(-i lambda[n] t[k])
void gamma_grid(const std::vector<double>& lambda, const std::vector<double>& weight,
                const std::vector<double>& times, std::vector<cplx>& out);
void gamma_grid_serial(const std::vector<double>& lambda, const std::vector<double>& weight,
                       const std::vector<double>& times, std::vector<cplx>& out);

// Compressed sparse row matrix, complex entries.
struct Csr {
  int rows = 0;
  std::vector<std::int64_t> row_ptr{0};
  std::vector<int> col;
  std::vector<cplx> val;

  // max column sum of |entries|
  double norm1() const;
  Eigen::MatrixXcd dense() const;
};

struct Entry {
  int row;
  int col;
  cplx value;
};

// Duplicates are summed, explicit zeros dropped.
Csr csr_from_entries(int rows, std::vector<Entry> entries);

void csr_matvec(const Csr& a, const cplx* x, cplx* y);
void csr_matvec_serial(const Csr& a, const cplx* x, cplx* y);

// exp(-i H t) v by a truncated Taylor series over ceil(norm1 * |t|) substeps.
Eigen::VectorXcd expm_apply(const Csr& h, const Eigen::VectorXcd& v, double t,
                            bool parallel = true);

}  // namespace pst::kernels
