#pragma once

#include <cmath>
#include <string>
#include <variant>

#include "rational.hpp"

namespace charmom {

// A float together with its absolute error budget.
struct Approx {
  double value = 0;
  double err = 0;
};

class Scalar {
 public:
  Scalar() : v_(Q(0)) {}
  Scalar(const Q& q) : v_(q) {}  // NOLINT
  Scalar(long n) : v_(Q(n)) {}   // NOLINT
  Scalar(double x, double err) : v_(Approx{x, err}) {}
  static Scalar approx(double x, double err = 0) { return Scalar(x, err); }

  bool exact() const { return std::holds_alternative<Q>(v_); }
  const Q& q() const { return std::get<Q>(v_); }
  double value() const { return exact() ? q().get_d() : std::get<Approx>(v_).value; }
  double error() const { return exact() ? 0.0 : std::get<Approx>(v_).err; }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    if (a.exact() && b.exact()) return Scalar(Q(a.q() + b.q()));
    return Scalar(a.value() + b.value(), a.error() + b.error() + ulp(a.value() + b.value()));
  }
  friend Scalar operator-(const Scalar& a, const Scalar& b) {
    if (a.exact() && b.exact()) return Scalar(Q(a.q() - b.q()));
    return Scalar(a.value() - b.value(), a.error() + b.error() + ulp(a.value() - b.value()));
  }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    if (a.exact() && b.exact()) return Scalar(Q(a.q() * b.q()));
    double x = a.value() * b.value();
    double e = std::abs(a.value()) * b.error() + std::abs(b.value()) * a.error() + a.error() * b.error();
    return Scalar(x, e + ulp(x));
  }
  friend Scalar operator/(const Scalar& a, const Scalar& b) {
    if (b.exact() && sgn(b.q()) == 0) throw std::domain_error("division by zero");
    if (a.exact() && b.exact()) return Scalar(Q(a.q() / b.q()));
    double bv = b.value();
    if (std::abs(bv) <= b.error()) throw std::domain_error("division by a value indistinguishable from zero");
    double x = a.value() / bv;
    double e = (a.error() + std::abs(x) * b.error()) / (std::abs(bv) - b.error());
    return Scalar(x, e + ulp(x));
  }

  std::string str() const {
    if (exact()) return q().get_str();
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", value());
    return buf;
  }

 private:
  std::variant<Q, Approx> v_;
  static double ulp(double x) { return std::abs(x) * 2.3e-16; }
};

}  // namespace charmom
