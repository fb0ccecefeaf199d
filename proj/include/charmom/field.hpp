#pragma once

// Uniform access to the three coefficient fields used by the engines.

#include <cmath>
#include <complex>

#include "ratfunc.hpp"

namespace charmom {

template <class F>
struct Field;

template <>
struct Field<Q> {
  static Q from_q(const Q& q) { return q; }
  static bool is_zero(const Q& x) { return sgn(x) == 0; }
  static double to_double(const Q& x) { return x.get_d(); }
  static std::string str(const Q& x) { return x.get_str(); }
};

template <>
struct Field<double> {
  static double from_q(const Q& q) { return q.get_d(); }
  static bool is_zero(double x) { return x == 0.0; }
  static double to_double(double x) { return x; }
  static std::string str(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
  }
};

template <>
struct Field<std::complex<double>> {
  static std::complex<double> from_q(const Q& q) { return q.get_d(); }
  static bool is_zero(const std::complex<double>& x) { return x == 0.0; }
};

template <>
struct Field<RationalFunction> {
  static RationalFunction from_q(const Q& q) { return RationalFunction(q); }
  static bool is_zero(const RationalFunction& x) { return x.is_zero(); }
  static std::string str(const RationalFunction& x) { return x.str(); }
};

}  // namespace charmom
