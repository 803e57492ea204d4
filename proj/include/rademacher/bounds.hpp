#pragma once

#include "rademacher/blocks.hpp"

#include <cmath>

namespace rademacher {

/// max(0, 1 - 1/q): the Chebyshev lower bound for P(|S_n| <= xi*sqrt(n)).
inline Rational chebyshev_bound(const Xi& xi) {
  Rational v = 1 - Rational(1) / xi.q;
  return v < 0 ? Rational(0) : v;
}

// Smallest odd candidate for the minimizing block end: n_2 = 2*ceil(2/q) - 1.
// Always odd, and >= 3 for q <= 1.
inline std::int64_t n2_from_xi(const Xi& xi) {
  const std::int64_t n2 = to_int64(2 * ceil_rational(Rational(2) / xi.q) - 1, "n2_from_xi");
  // 4/(n2+1) <= q < 4/(n2-1) pins n2; guard the arithmetic above against drift
  if (Rational(4, n2 + 1) > xi.q || (n2 > 1 && xi.q >= Rational(4, n2 - 1))) {
    throw std::logic_error("n2_from_xi: bracket check failed");
  }
  return n2;
}

/// Start of block 1 recovered from n_2 alone: n_1 = 2*ceil((n_2 - 3)/8).
inline std::int64_t n1_from_n2(std::int64_t n2) {
  if (n2 < 3 || n2 % 2 == 0) throw std::domain_error("n1_from_n2: n2 must be odd and >= 3");
  return 2 * ((n2 + 4) / 8);  // = 2*ceil((n2-3)/8)
}

// 2*Phi(xi) - 1 = erf(xi/sqrt(2)), the n -> infinity limit of
// P(|S_n| <= xi*sqrt(n)), via the alternating Maclaurin series
//   erf(x) = (2/sqrt(pi)) * sum_{m>=0} (-1)^m x^(2m+1) / (m! (2m+1)).
// Once m + 1 > x^2 the terms decrease, so the truncated tail is bounded by the
// first omitted term; we stop when that bound drops below 10^-(digits+2).
inline double normal_limit(const Xi& xi, int digits = 12) {
  if (digits < 1 || digits > 15) throw std::domain_error("normal_limit: digits must be in [1,15]");
  const long double q = numerator(xi.q).convert_to<long double>() /
                        denominator(xi.q).convert_to<long double>();
  const long double x = std::sqrt(q / 2.0L);  // xi / sqrt(2)
  if (x >= 7.0L) return 1.0;                  // erf(7) differs from 1 by < 1e-21
  const long double x2 = x * x;
  const long double tol = std::pow(10.0L, static_cast<long double>(-digits - 2));

  long double term = x;  // x^(2m+1) / m!
  long double sum = 0.0L;
  for (int m = 0;; ++m) {
    const long double contrib = term / (2 * m + 1);
    sum += (m % 2 == 0) ? contrib : -contrib;
    term = term * x2 / (m + 1);
    if (term / (2 * m + 3) < tol && static_cast<long double>(m + 1) > x2) break;
  }
  const long double inv_sqrt_pi = 0.564189583547756286948079451560772586L;
  return static_cast<double>(sum * 2.0L * inv_sqrt_pi);
}

struct BoundReport {
  Rational q;
  std::int64_t n1;
  std::int64_t n2;
  Probability sharp_bound;   // C(n2-1, (n2-1)/2) / 2^(n2-1), attained at n = n2-1
  Rational chebyshev;
  double normal_limit;       // 2*Phi(xi) - 1
  int normal_limit_digits;
};

// The sharp lower bound min_n P(|S_n| <= xi*sqrt(n)) for 0 < q <= 1, attained
// at n = n2 - 1 and valid for all n >= n1.
inline BoundReport sharp_lower_bound(const Xi& xi, int digits = 12) {
  if (xi.q > 1) {
    throw std::domain_error("sharp_lower_bound: only the regime q = xi^2 <= 1 is supported");
  }
  const std::int64_t n2 = n2_from_xi(xi);
  const std::int64_t n1 = n1_from_n2(n2);
  const std::int64_t m = n2 - 1;  // even
  Probability sharp(Rational(binomial(m, m / 2), BigInt(1) << static_cast<unsigned>(m)));
  return BoundReport{xi.q,       n1, n2, sharp, chebyshev_bound(xi),
                     normal_limit(xi, digits), digits};
}

}  // namespace rademacher
