#include "pst/rational.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace pst {

std::vector<Fraction> convergents(double x, long long max_den) {
  if (!std::isfinite(x)) throw std::invalid_argument("cannot rationalize a non-finite value");
  if (max_den < 1) throw std::invalid_argument("max_den must be positive");
  std::vector<Fraction> out;
  long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double r = x;
  for (int iter = 0; iter < 64; ++iter) {
    const double a = std::floor(r);
    if (std::abs(a) > 9e15) break;
    const auto ai = static_cast<long long>(a);
    const long long p2 = ai * p1 + p0;
    const long long q2 = ai * q1 + q0;
    if (q2 > max_den) break;
    out.push_back({p2, q2});
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    const double frac = r - a;
    if (frac < 1e-300) break;
    r = 1.0 / frac;
  }
  return out;
}

std::optional<Fraction> rationalize(double x, long long max_den, double tol) {
  for (const auto& f : convergents(x, max_den)) {
    if (std::abs(x * static_cast<double>(f.q) - static_cast<double>(f.p)) <= tol)
      return f;
  }
  return std::nullopt;
}

long long gcd_ll(long long a, long long b) {
  a = std::llabs(a);
  b = std::llabs(b);
  while (b != 0) {
    const long long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::optional<long long> lcm_bounded(long long a, long long b, long long limit) {
  const long long g = gcd_ll(a, b);
  if (g == 0) return 0;
  const __int128 l = static_cast<__int128>(a / g) * b;
  if (l > limit) return std::nullopt;
  return static_cast<long long>(l);
}

}  // namespace pst
