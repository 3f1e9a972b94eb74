#include "pst/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pst::kernels {

namespace {

inline cplx gamma_at(const std::vector<double>& lambda, const std::vector<double>& weight,
                     double t) {
  cplx acc = 0.0;
  for (size_t n = 0; n < lambda.size(); ++n)
    acc += weight[n] * cplx(std::cos(lambda[n] * t), -std::sin(lambda[n] * t));
  return acc;
}

void check_sizes(const std::vector<double>& lambda, const std::vector<double>& weight) {
  if (lambda.size() != weight.size()) throw std::invalid_argument("lambda/weight size mismatch");
}

}  // namespace

void gamma_grid(const std::vector<double>& lambda, const std::vector<double>& weight,
                const std::vector<double>& times, std::vector<cplx>& out) {
  check_sizes(lambda, weight);
  out.resize(times.size());
  const auto nt = static_cast<std::int64_t>(times.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t k = 0; k < nt; ++k) out[k] = gamma_at(lambda, weight, times[k]);
}

void gamma_grid_serial(const std::vector<double>& lambda, const std::vector<double>& weight,
                       const std::vector<double>& times, std::vector<cplx>& out) {
  check_sizes(lambda, weight);
  out.resize(times.size());
  for (size_t k = 0; k < times.size(); ++k) out[k] = gamma_at(lambda, weight, times[k]);
}

double Csr::norm1() const {
  std::vector<double> colsum(rows, 0.0);
  for (size_t k = 0; k < col.size(); ++k) colsum[col[k]] += std::abs(val[k]);
  double m = 0.0;
  for (double c : colsum) m = std::max(m, c);
  return m;
}

Eigen::MatrixXcd Csr::dense() const {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(rows, rows);
  for (int r = 0; r < rows; ++r)
    for (auto k = row_ptr[r]; k < row_ptr[r + 1]; ++k) m(r, col[k]) += val[k];
  return m;
}

Csr csr_from_entries(int rows, std::vector<Entry> entries) {
  for (const auto& e : entries)
    if (e.row < 0 || e.row >= rows || e.col < 0 || e.col >= rows)
      throw std::out_of_range("sparse entry outside matrix");
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  Csr m;
  m.rows = rows;
  m.row_ptr.assign(rows + 1, 0);
  for (size_t i = 0; i < entries.size();) {
    size_t j = i;
    cplx sum = 0.0;
    while (j < entries.size() && entries[j].row == entries[i].row && entries[j].col == entries[i].col)
      sum += entries[j++].value;
    if (sum != cplx(0.0)) {
      m.col.push_back(entries[i].col);
      m.val.push_back(sum);
      ++m.row_ptr[entries[i].row + 1];
    }
    i = j;
  }
  for (int r = 0; r < rows; ++r) m.row_ptr[r + 1] += m.row_ptr[r];
  return m;
}

void csr_matvec(const Csr& a, const cplx* x, cplx* y) {
#pragma omp parallel for schedule(static)
  for (int r = 0; r < a.rows; ++r) {
    cplx acc = 0.0;
    for (auto k = a.row_ptr[r]; k < a.row_ptr[r + 1]; ++k) acc += a.val[k] * x[a.col[k]];
    y[r] = acc;
  }
}

void csr_matvec_serial(const Csr& a, const cplx* x, cplx* y) {
  for (int r = 0; r < a.rows; ++r) {
    cplx acc = 0.0;
    for (auto k = a.row_ptr[r]; k < a.row_ptr[r + 1]; ++k) acc += a.val[k] * x[a.col[k]];
    y[r] = acc;
  }
}

Eigen::VectorXcd expm_apply(const Csr& h, const Eigen::VectorXcd& v, double t, bool parallel) {
  if (v.size() != h.rows) throw std::invalid_argument("dimension mismatch");
  const double scale = h.norm1() * std::abs(t);
  const int steps = std::max(1, static_cast<int>(std::ceil(scale)));
  const double dt = t / steps;
  Eigen::VectorXcd out = v;
  Eigen::VectorXcd term(v.size()), next(v.size());
  const cplx factor(0.0, -dt);
  for (int s = 0; s < steps; ++s) {
    term = out;
    const double ref = std::max(out.norm(), 1e-300);
    // Each substep has |H dt| <= 1, so the series converges fast.
    for (int k = 1; k < 60; ++k) {
      if (parallel) csr_matvec(h, term.data(), next.data());
      else csr_matvec_serial(h, term.data(), next.data());
      term = next * (factor / static_cast<double>(k));
      out += term;
      if (term.norm() <= 1e-17 * ref) break;
    }
  }
  return out;
}

}  // namespace pst::kernels
