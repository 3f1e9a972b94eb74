#pragma once

#include <optional>
#include <vector>

namespace pst {

struct Fraction {
  long long p = 0;
  long long q = 1;
};

// Continued-fraction convergents of x with denominator <= max_den.
std::vector<Fraction> convergents(double x, long long max_den);

// First convergent p/q with |x q - p| <= tol.
std::optional<Fraction> rationalize(double x, long long max_den, double tol);

long long gcd_ll(long long a, long long b);
// Least common multiple, or nullopt when it would exceed limit.
std::optional<long long> lcm_bounded(long long a, long long b, long long limit);

}  // namespace pst
