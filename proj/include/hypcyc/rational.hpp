#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hypcyc {

// Exact rational scalar used everywhere. No floating point in the core:
// all homology dimensions, norms and empirical constants are exact.
using Rat = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                          boost::multiprecision::et_off>;
using Int = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                          boost::multiprecision::et_off>;

inline Rat rat_abs(const Rat& x) { return x < 0 ? Rat(-x) : x; }

// x^k for integer k (k may be negative when x != 0).
inline Rat rat_pow(const Rat& x, long k) {
  if (k < 0) {
    if (x == 0) throw std::domain_error("rat_pow: 0^negative");
    return Rat(1) / rat_pow(x, -k);
  }
  Rat r(1), base(x);
  while (k > 0) {
    if (k & 1) r *= base;
    base *= base;
    k >>= 1;
  }
  return r;
}

inline Rat factorial(long n) {
  Rat r(1);
  for (long i = 2; i <= n; ++i) r *= i;
  return r;
}

// Parses "p", "-p" or "p/q". Used by the config layer; q must be positive.
inline Rat parse_rat(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(s));
    Int p(s.substr(0, slash)), q(s.substr(slash + 1));
    if (q <= 0) throw std::invalid_argument("parse_rat: nonpositive denominator");
    return Rat(p) / Rat(q);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("parse_rat: malformed rational '" + s + "'");
  }
}

inline std::string rat_str(const Rat& x) {
  if (denominator(x) == 1) return numerator(x).str();
  return numerator(x).str() + "/" + denominator(x).str();
}

// Error taxonomy shared by all modules.
struct invalid_input_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct resource_limit_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct boundary_truncation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct margin_exhausted_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct internal_consistency_error : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace hypcyc
