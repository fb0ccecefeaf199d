#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace charmom {

using Q = mpq_class;

inline Q make_q(long num, long den = 1) {
  Q r(num, den);
  r.canonicalize();
  return r;
}

// Accepts "3", "-3/4" or a decimal literal such as "0.3".
inline Q parse_q(const std::string& s) {
  auto dot = s.find('.');
  if (dot == std::string::npos) {
    Q r(s);
    r.canonicalize();
    return r;
  }
  std::string digits = s.substr(0, dot) + s.substr(dot + 1);
  std::size_t scale = s.size() - dot - 1;
  if (digits.empty() || digits == "-" || digits == "+")
    throw std::invalid_argument("bad rational literal: " + s);
  if (digits[0] == '+') digits.erase(0, 1);
  mpz_class den = 1;
  for (std::size_t i = 0; i < scale; ++i) den *= 10;
  Q r(mpz_class(digits), den);
  r.canonicalize();
  return r;
}

inline std::string to_string(const Q& q) { return q.get_str(); }

inline Q qpow(const Q& base, long e) {
  if (e < 0) {
    if (sgn(base) == 0) throw std::domain_error("zero to a negative power");
    Q inv = 1 / base;
    return qpow(inv, -e);
  }
  Q r = 1, b = base;
  while (e > 0) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

inline Q factorial_q(long n) {
  mpz_class r = 1;
  for (long i = 2; i <= n; ++i) r *= i;
  return Q(r);
}

inline bool is_integer(const Q& q) { return q.get_den() == 1; }

}  // namespace charmom
