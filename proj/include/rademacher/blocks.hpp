#pragma once

#include "rademacher/dist.hpp"

#include <algorithm>

namespace rademacher {

// Threshold class for P(|S_n| <= xi*sqrt(n)). Only q = xi^2 is stored, as an
// exact rational; every comparison against xi*sqrt(n) is done by squaring, so
// xi itself never needs to be represented.
struct Xi {
  Rational q;
  bool guaranteed_regime;  // q <= 1, where the block-minimum structure is proven

  explicit Xi(Rational q_squared) : q(std::move(q_squared)), guaranteed_regime(q <= 1) {
    if (q <= 0) throw std::domain_error("Xi: q = xi^2 must be positive");
  }
};

/// kappa(n) = 2*floor((n + xi*sqrt(n))/2) - n: the threshold index at n.
inline std::int64_t kappa(std::int64_t n, const Xi& xi) {
  return 2 * floor_half_n_plus_xi_sqrt_n(n, xi.q) - n;
}

// n_k = 2*ceil((k^2/q + k)/2) - k - 1: the first n whose block index is k,
// equivalently the minimal n with kappa(n+1) >= k.
inline std::int64_t n_k(std::int64_t k, const Xi& xi) {
  if (k < 1) throw std::domain_error("n_k: k must be >= 1");
  const BigInt& p = numerator(xi.q);
  const BigInt& s = denominator(xi.q);
  const BigInt num = BigInt(k) * k * s + BigInt(k) * p;  // (k^2/q + k) * p
  const BigInt den = 2 * p;
  BigInt c = num / den;
  if (c * den != num) ++c;
  return to_int64(2 * c - k - 1, "n_k");
}

// Q_k^- : the value of P(|S_n| <= xi*sqrt(n)) at the right end of block k,
// i.e. at n = n_{k+1} - 1, where the threshold index is k - 1.
inline Probability q_minus(std::int64_t k, const Xi& xi) {
  if (k < 0) throw std::domain_error("q_minus: k must be >= 0");
  const std::int64_t n_next = n_k(k + 1, xi);
  if (n_next < 1) {
    throw std::domain_error("q_minus: undefined for k = 0 when block 0 is empty (n_1 = 0)");
  }
  return interval_prob(n_next - 1, k - 1);
}

struct Block {
  std::int64_t k;
  std::int64_t n_lo;            // n_k
  std::int64_t n_hi_exclusive;  // n_{k+1}
  Probability q_minus;          // value at n_hi_exclusive - 1
};

/// The block [n_k, n_{k+1}) containing n; block 0 is [0, n_1).
inline Block block_of(std::int64_t n, const Xi& xi) {
  if (n < 0) throw std::domain_error("block_of: n must be nonnegative");
  const std::int64_t n1 = n_k(1, xi);
  if (n < n1) return Block{0, 0, n1, q_minus(0, xi)};

  // seed near floor(xi*sqrt(n+1)) and walk; n_k is strictly increasing in k
  const BigInt bound = (numerator(xi.q) * (n + 1)) / denominator(xi.q);
  std::int64_t k = std::max<std::int64_t>(1, to_int64(isqrt(bound), "block_of"));
  while (k > 1 && n_k(k, xi) > n) --k;
  while (n_k(k + 1, xi) <= n) ++k;
  return Block{k, n_k(k, xi), n_k(k + 1, xi), q_minus(k, xi)};
}

}  // namespace rademacher
