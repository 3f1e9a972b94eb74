#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "pst/chain.hpp"

namespace pst {

enum class Verdict { perfect, imperfect, degenerate_spectrum };

const char* to_string(Verdict v);

struct CertifyOptions {
  double tol = 1e-9;
  long long max_denominator = 1000000;
  // relative to the largest |J|, |B|
  double mirror_tol = 1e-9;
};

struct PstCertificate {
  Verdict verdict = Verdict::imperfect;
  std::optional<double> t0;
  std::complex<double> arrival_phase{1.0, 0.0};
  std::vector<double> spectrum;
  std::vector<double> gaps;
  // gap k = gap_multipliers[k] * pi / t0 = (2 m_k + 1) * pi / t0
  std::vector<long long> gap_multipliers;
  std::vector<long long> odd_integers;
  std::vector<double> end_weights;
  double worst_gap_residual = 0.0;
  double mirror_violation = 0.0;
  int offending_gap = -1;
  std::string reason;
};

PstCertificate certify_pst(const ChainSpec& chain, const CertifyOptions& opts = {});

// |alpha_n|^2 from the spectrum alone: (1/|B'(lambda_n)|) normalised.
// Valid for mirror-symmetric chains.
std::vector<double> end_weights(const std::vector<double>& spectrum);

struct RateReport {
  int M = 1;
  std::vector<double> residue_sums;
  bool equal = false;
  std::optional<double> achievable_rate;
  // max_m |gamma_1(2 m t0 / M)|, m = 1..M-1
  double max_direct_overlap = 0.0;
  bool direct_check_consistent = true;
};

RateReport rate_condition(const PstCertificate& cert, int M);
// For revival systems that are not mirror symmetric.
RateReport rate_condition(const std::vector<double>& spectrum, const std::vector<double>& weights,
                          double t0, int M);

struct OptimalityReport {
  double j_max = 0.0;
  std::optional<double> j_half;
  std::optional<double> j_half_bound;
  bool bound_holds = true;
  bool saturated = false;
  double margolus_bound = 0.0;
  bool margolus_holds = true;
  double timing_sensitivity = 0.0;
};

OptimalityReport optimality_report(const ChainSpec& chain, const PstCertificate& cert);

// Largest w with |gamma_N(t)|^2 >= 1 - epsilon on |t - t0| <= w/2.
double timing_window(const ChainSpec& chain, const PstCertificate& cert, double epsilon);

}  // namespace pst
