#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace rademacher {

// All probabilities and thresholds in this library are exact rationals on top
// of arbitrary-precision integers. No operation in the core ever rounds.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::int64_t to_int64(const BigInt& v, const char* what) {
  if (v < (std::numeric_limits<std::int64_t>::min)() ||
      v > (std::numeric_limits<std::int64_t>::max)()) {
    throw std::domain_error(std::string(what) + ": value does not fit in 64 bits");
  }
  return v.convert_to<std::int64_t>();
}

/// Integer square root: the unique u >= 0 with u*u <= m < (u+1)*(u+1).
inline BigInt isqrt(const BigInt& m) {
  if (m < 0) throw std::domain_error("isqrt: negative input");
  return boost::multiprecision::sqrt(m);
}

/// Smallest integer >= r.
inline BigInt ceil_rational(const Rational& r) {
  const BigInt& num = numerator(r);
  const BigInt& den = denominator(r);  // canonical form keeps den > 0
  BigInt q = num / den;                // truncates toward zero
  if (num > 0 && q * den != num) ++q;
  return q;
}

// floor((n + sqrt(q*n)) / 2) for q = p/s > 0, evaluated without rounding.
//
// With u = isqrt(p*n*s) the result is floor((n*s + u) / (2*s)): if p*n*s is a
// perfect square the floor argument is hit exactly, and otherwise sqrt(p*n*s)
// is irrational, so no multiple of 2s lies in (n*s + u, n*s + sqrt(p*n*s)).
inline std::int64_t floor_half_n_plus_xi_sqrt_n(std::int64_t n, const Rational& q) {
  if (q <= 0) throw std::domain_error("floor_half_n_plus_xi_sqrt_n: q must be positive");
  if (n < 0) throw std::domain_error("floor_half_n_plus_xi_sqrt_n: n must be nonnegative");
  const BigInt& p = numerator(q);
  const BigInt& s = denominator(q);
  const BigInt u = isqrt(p * n * s);
  return to_int64((n * s + u) / (2 * s), "floor_half_n_plus_xi_sqrt_n");
}

/// C(n, j); zero outside 0 <= j <= n.
inline BigInt binomial(std::int64_t n, std::int64_t j) {
  if (n < 0) throw std::domain_error("binomial: n must be nonnegative");
  if (j < 0 || j > n) return BigInt(0);
  if (j > n - j) j = n - j;
  BigInt result(1);
  for (std::int64_t i = 1; i <= j; ++i) {
    result *= n - j + i;  // running value is C(n-j+i, i), so the division is exact
    result /= i;
  }
  return result;
}

/// Parses "p/q", an integer, or a finite decimal ("1.21" -> 121/100). Exact.
inline Rational parse_rational(std::string_view text) {
  const auto fail = [&]() -> Rational {
    throw std::invalid_argument("parse_rational: cannot parse '" + std::string(text) + "'");
  };

  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  }
  const auto scan_digits = [&](std::string& out) {
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') out += text[pos++];
  };

  std::string head;
  scan_digits(head);

  Rational value;
  if (pos < text.size() && text[pos] == '/') {
    ++pos;
    std::string den;
    scan_digits(den);
    if (head.empty() || den.empty() || pos != text.size()) return fail();
    BigInt d(den);
    if (d == 0) return fail();
    value = Rational(BigInt(head), d);
  } else if (pos < text.size() && text[pos] == '.') {
    ++pos;
    std::string frac;
    scan_digits(frac);
    if ((head.empty() && frac.empty()) || pos != text.size()) return fail();
    BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(frac.size()));
    BigInt whole = head.empty() ? BigInt(0) : BigInt(head);
    BigInt part = frac.empty() ? BigInt(0) : BigInt(frac);
    value = Rational(whole * scale + part, scale);
  } else {
    if (head.empty() || pos != text.size()) return fail();
    value = Rational(BigInt(head));
  }
  return negative ? Rational(-value) : value;
}

/// Canonical exact form: "num/den", or just "num" for integers.
inline std::string to_fraction_string(const Rational& r) {
  std::string out = numerator(r).str();
  if (denominator(r) != 1) {
    out += '/';
    out += denominator(r).str();
  }
  return out;
}

// Decimal rendering with a fixed number of significant digits, rounded
// half-to-even on the exact value. Deterministic; used for all human-facing
// output next to the authoritative exact form.
inline std::string to_decimal_string(const Rational& r, int significant_digits = 12) {
  if (significant_digits < 1 || significant_digits > 40) {
    throw std::domain_error("to_decimal_string: significant_digits out of range");
  }
  if (r == 0) return "0";

  BigInt n = numerator(r);
  const bool negative = n < 0;
  if (negative) n = -n;
  const BigInt& d = denominator(r);

  const auto pow10 = [](std::int64_t k) -> BigInt {
    return boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(k));
  };
  const auto at_least_pow = [&](std::int64_t e) {
    // n/d >= 10^e ?
    return e >= 0 ? n >= d * pow10(e) : n * pow10(-e) >= d;
  };

  // exponent e with 10^e <= n/d < 10^(e+1); the digit-count estimate is off by at most one
  std::int64_t e = static_cast<std::int64_t>(n.str().size()) -
                   static_cast<std::int64_t>(d.str().size());
  if (!at_least_pow(e)) --e;
  if (at_least_pow(e + 1)) ++e;

  const std::int64_t shift = significant_digits - 1 - e;
  BigInt a = n;
  BigInt b = d;
  if (shift >= 0) a *= pow10(shift); else b *= pow10(-shift);
  BigInt digits = a / b;
  const BigInt twice_rem = (a % b) * 2;
  if (twice_rem > b || (twice_rem == b && boost::multiprecision::bit_test(digits, 0))) ++digits;
  if (digits == pow10(significant_digits)) {
    digits = pow10(significant_digits - 1);
    ++e;
  }

  std::string body = digits.str();
  std::string out;
  if (e < 0) {
    out = "0.";
    out.append(static_cast<std::size_t>(-e - 1), '0');
    out += body;
  } else if (e + 1 >= static_cast<std::int64_t>(body.size())) {
    out = body;
    out.append(static_cast<std::size_t>(e + 1 - static_cast<std::int64_t>(body.size())), '0');
  } else {
    out = body.substr(0, static_cast<std::size_t>(e + 1)) + "." +
          body.substr(static_cast<std::size_t>(e + 1));
  }
  return negative ? "-" + out : out;
}

}  // namespace rademacher
