#pragma once

#include "rademacher/exact.hpp"

#include <bit>
#include <cstdlib>
#include <future>
#include <thread>
#include <vector>

namespace rademacher {

/// An exact probability; construction checks the [0,1] range.
struct Probability {
  Rational value;

  Probability() : value(0) {}
  explicit Probability(Rational v) : value(std::move(v)) {
    if (value < 0 || value > 1) throw std::domain_error("Probability: value outside [0,1]");
  }

  friend bool operator==(const Probability& a, const Probability& b) { return a.value == b.value; }
  friend bool operator!=(const Probability& a, const Probability& b) { return a.value != b.value; }
  friend bool operator<(const Probability& a, const Probability& b) { return a.value < b.value; }
  friend bool operator>(const Probability& a, const Probability& b) { return a.value > b.value; }
  friend bool operator<=(const Probability& a, const Probability& b) { return a.value <= b.value; }
  friend bool operator>=(const Probability& a, const Probability& b) { return a.value >= b.value; }
};

// Worker cap for the enumeration routines. RADEMACHER_THREADS overrides; the
// result of every computation is independent of the thread count.
inline unsigned thread_budget() {
  if (const char* env = std::getenv("RADEMACHER_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) return static_cast<unsigned>(v > 64 ? 64 : v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : (hw > 8 ? 8 : hw);
}

// 2^n * P(|S_n| <= k) as an integer: the sum of C(n, j) over the consecutive
// atoms j in [ceil((n-k)/2), floor((n+k)/2)]. Consecutive atoms are produced
// incrementally (multiply by (n-j)/(j+1)) so a k-atom window costs one
// binomial plus k cheap updates even when n is large.
inline BigInt interval_weight(std::int64_t n, std::int64_t k) {
  if (n < 0) throw std::domain_error("interval_weight: n must be nonnegative");
  if (k < 0) return BigInt(0);
  if (k >= n) return BigInt(1) << static_cast<unsigned>(n);
  const std::int64_t j_lo = (n - k + 1) / 2;
  const std::int64_t j_hi = (n + k) / 2;
  if (j_lo > j_hi) return BigInt(0);  // k = 0 with n odd: no atom has |2j - n| = 0
  BigInt atom = binomial(n, j_lo);
  BigInt sum = atom;
  for (std::int64_t j = j_lo; j < j_hi; ++j) {
    atom *= n - j;
    atom /= j + 1;
    sum += atom;
  }
  return sum;
}

/// P(S_n = k) for a sum of n independent +-1 signs.
inline Probability pmf(std::int64_t n, std::int64_t k) {
  if (n < 0) throw std::domain_error("pmf: n must be nonnegative");
  if (k < -n || k > n || ((n + k) & 1) != 0) return Probability(Rational(0));
  return Probability(Rational(binomial(n, (n + k) / 2), BigInt(1) << static_cast<unsigned>(n)));
}

/// P(|S_n| <= k). Negative k yields 0, k >= n yields 1.
inline Probability interval_prob(std::int64_t n, std::int64_t k) {
  return Probability(Rational(interval_weight(n, k), BigInt(1) << static_cast<unsigned>(n)));
}

// Largest k with the same parity as n and k <= xi*sqrt(n), i.e. k^2 <= q*n;
// -1 when n is odd and q*n < 1. This is the membership-test route to the
// threshold index; blocks.hpp computes the same value through the floor form.
inline std::int64_t xi_threshold_index(std::int64_t n, const Rational& q) {
  if (q <= 0) throw std::domain_error("xi_threshold_index: q must be positive");
  if (n < 0) throw std::domain_error("xi_threshold_index: n must be nonnegative");
  const BigInt bound = (numerator(q) * n) / denominator(q);  // floor(q*n)
  const std::int64_t u = to_int64(isqrt(bound), "xi_threshold_index");
  return ((n - u) % 2 == 0) ? u : u - 1;
}

/// P(|S_n| <= xi*sqrt(n)) with q = xi^2 held exactly.
inline Probability xi_prob(std::int64_t n, const Rational& q) {
  return interval_prob(n, xi_threshold_index(n, q));
}

// Literal enumeration of all 2^n sign vectors, counting those with
// (sum eps_i)^2 <= q*n. Kept free of binomial coefficients on purpose: this is
// the independent cross-check for the interval machinery above.
inline Probability brute_force_xi_prob(std::int64_t n, const Rational& q) {
  if (n < 0) throw std::domain_error("brute_force_xi_prob: n must be nonnegative");
  if (n > 24) throw std::domain_error("brute_force_xi_prob: enumeration budget is n <= 24");

  // admissibility of a vector depends only on its popcount j: sum = 2j - n
  std::vector<char> admissible(static_cast<std::size_t>(n) + 1);
  for (std::int64_t j = 0; j <= n; ++j) {
    const BigInt sum = 2 * j - n;
    admissible[static_cast<std::size_t>(j)] = sum * sum * denominator(q) <= numerator(q) * n;
  }

  const std::uint64_t total = std::uint64_t{1} << n;
  const auto count_range = [&](std::uint64_t lo, std::uint64_t hi) {
    std::uint64_t c = 0;
    for (std::uint64_t mask = lo; mask < hi; ++mask) {
      c += static_cast<std::uint64_t>(admissible[static_cast<std::size_t>(std::popcount(mask))]);
    }
    return c;
  };

  std::uint64_t count = 0;
  const unsigned workers = n >= 18 ? thread_budget() : 1;
  if (workers <= 1) {
    count = count_range(0, total);
  } else {
    std::vector<std::future<std::uint64_t>> parts;
    const std::uint64_t chunk = total / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::uint64_t lo = w * chunk;
      const std::uint64_t hi = (w + 1 == workers) ? total : lo + chunk;
      parts.push_back(std::async(std::launch::async, count_range, lo, hi));
    }
    for (auto& p : parts) count += p.get();
  }
  return Probability(Rational(BigInt(count), BigInt(1) << static_cast<unsigned>(n)));
}

struct WeightedSignSum {
  Probability probability;  // P(|sum a_i eps_i| <= t)
  Rational norm_sq;         // sum a_i^2
};

// Exhaustive check of one instance of the weighted sign-sum question:
// enumerate all 2^len sign vectors for rational weights a and report
// P(|sum a_i eps_i| <= t) exactly, together with sum a_i^2. A Gray-code walk
// keeps the running sum to one update per vector.
inline WeightedSignSum tomaszewski_count(const std::vector<Rational>& weights, const Rational& t) {
  if (weights.size() > 24) {
    throw std::domain_error("tomaszewski_count: enumeration budget is 24 weights");
  }
  const int n = static_cast<int>(weights.size());

  Rational norm_sq(0);
  for (const Rational& w : weights) norm_sq += w * w;

  if (t < 0) return {Probability(Rational(0)), norm_sq};

  BigInt common_den(1);
  for (const Rational& w : weights) {
    common_den = boost::multiprecision::lcm(common_den, denominator(w));
  }
  std::vector<BigInt> scaled, doubled;
  scaled.reserve(weights.size());
  doubled.reserve(weights.size());
  for (const Rational& w : weights) {
    scaled.push_back(numerator(w) * (common_den / denominator(w)));
    doubled.push_back(scaled.back() * 2);
  }

  // |sum| <= t*common_den  <=>  |sum| * den(t) <= num(t) * common_den
  const BigInt rhs = numerator(t) * common_den;
  const BigInt& t_den = denominator(t);
  const auto admissible = [&](const BigInt& s) {
    return boost::multiprecision::abs(s) * t_den <= rhs;
  };

  BigInt sum(0);
  for (const BigInt& w : scaled) sum += w;

  std::uint64_t count = admissible(sum) ? 1 : 0;
  const std::uint64_t total = std::uint64_t{1} << n;
  std::uint64_t negated = 0;  // bit set = that weight currently enters with minus
  for (std::uint64_t i = 1; i < total; ++i) {
    const int b = std::countr_zero(i);
    const std::uint64_t bit = std::uint64_t{1} << b;
    if (negated & bit) sum += doubled[static_cast<std::size_t>(b)];
    else sum -= doubled[static_cast<std::size_t>(b)];
    negated ^= bit;
    if (admissible(sum)) ++count;
  }
  return {Probability(Rational(BigInt(count), BigInt(1) << static_cast<unsigned>(n))), norm_sq};
}

}  // namespace rademacher
