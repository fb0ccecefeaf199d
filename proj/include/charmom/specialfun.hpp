#pragma once

// Gamma, q-gamma, Pochhammer symbols, q-brackets and the moment constants.

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <utility>

#include "rational.hpp"

namespace charmom {

// (a;q)_inf, truncated once |a q^R| < tol (1-|q|)
template <class T>
T q_pochhammer_inf(const T& a, double q, double tol = 1e-17) {
  if (std::abs(q) >= 1) throw std::domain_error("q-Pochhammer needs |q| < 1");
  T r = T(1), aq = a;
  for (int k = 0; k < 100000; ++k) {
    if (std::abs(aq) < tol * (1 - std::abs(q))) break;
    r *= T(1) - aq;
    aq *= q;
  }
  return r;
}

// (a;q)_n for integer n >= 0
template <class T>
T q_pochhammer(const T& a, const T& q, int n) {
  T r = T(1), aq = a;
  for (int k = 0; k < n; ++k) {
    r *= T(1) - aq;
    aq *= q;
  }
  return r;
}

// log|Gamma_q(x)| and its sign, 0 < q < 1
inline std::pair<double, int> lgamma_q(double x, double q, double tol = 1e-17) {
  if (!(q > 0 && q < 1)) throw std::domain_error("q-gamma needs 0 < q < 1");
  double lq = std::log(q);
  double s = (1 - x) * std::log1p(-q);
  int sign = 1;
  for (int r = 0;; ++r) {
    double e1 = std::exp((r + 1) * lq), ex = std::exp((x + r) * lq);
    if (x + r <= 0 && std::abs(x + r - std::round(x + r)) < 1e-14) throw std::domain_error("q-gamma pole");
    s += std::log1p(-e1);
    double f = 1 - ex;
    if (f < 0) sign = -sign;
    s -= (x + r < 0) ? std::log(std::abs(f)) : std::log1p(-ex);
    if (x + r > 0 && ex < tol && e1 < tol) break;
  }
  return {s, sign};
}

inline double q_gamma(double x, double q) {
  auto [l, s] = lgamma_q(x, q);
  return s * std::exp(l);
}

// [x]_q = (1-q^x)/(1-q)
template <class T>
T q_bracket(const T& x, const T& q) {
  if constexpr (std::is_same_v<T, Q>) {
    T r = 0, p = 1;
    long n = x.get_num().get_si();
    for (long i = 0; i < n; ++i, p *= q) r += p;
    return r;
  } else {
    return std::expm1(x * std::log(q)) / std::expm1(std::log(q));
  }
}

template <class T>
T q_factorial(int n, const T& q) {
  T r = T(1);
  for (int j = 1; j <= n; ++j) r *= q_bracket(T(j), q);
  return r;
}

// [2k-1]_q!! = [1]_q [3]_q ... [2k-1]_q
template <class T>
T q_double_factorial_odd(int k, const T& q) {
  T r = T(1);
  for (int j = 1; j <= k; ++j) r *= q_bracket(T(2 * j - 1), q);
  return r;
}

// (a)_n rising factorial
template <class T>
T pochhammer(const T& a, int n) {
  T r = T(1);
  for (int i = 0; i < n; ++i) r *= a + T(i);
  return r;
}

// n!! with (-1)!! = 0!! = 1
inline Q double_factorial(int n) {
  if (n < -1) throw std::domain_error("double factorial of n < -1");
  Q r = 1;
  for (int k = n; k > 1; k -= 2) r *= k;
  return r;
}

inline double lgamma_checked(double x) {
  if (x <= 0 && x == std::round(x)) throw std::domain_error("gamma pole");
  return std::lgamma(x);
}

// n -> Gamma(n+a) / (Gamma(n) n^a)
inline std::function<double(double)> gamma_ratio_asymptotic(double a) {
  return [a](double n) {
    if (a == 0) return 1.0;
    return std::exp(lgamma_checked(n + a) - lgamma_checked(n) - a * std::log(n));
  };
}

// F(m; k1,k2,k3) = prod_{j<m} sqrt(pi) / (2^{k1+2k2+j k3 - 1} Gamma(k1+k2+1/2+j k3))
inline double script_F(int m, double k1, double k2, double k3) {
  double l = 0;
  for (int j = 0; j < m; ++j)
    l += 0.5 * std::log(M_PI) - (k1 + 2 * k2 + j * k3 - 1) * std::log(2.0) - lgamma_checked(k1 + k2 + 0.5 + j * k3);
  return std::exp(l);
}

// F^q_beta(k): the Gamma_t ratio with t = q^{beta/2}, and the q-factorial closed form.
// For beta = 4 the closed form exists only for even k; otherwise it is NaN.
inline std::pair<double, double> script_F_beta_q(int k, int beta, double q) {
  double t = std::pow(q, beta / 2.0);
  double def = 0;
  for (int i = 0; i < k; ++i)
    def += lgamma_q(2.0 * (i + 1) / beta, t).first - lgamma_q(2.0 * (k + i + 1) / beta, t).first;
  def = std::exp(def);
  double closed = std::nan("");
  if (beta == 2) {
    closed = 1;
    for (int j = 0; j < k; ++j) closed *= q_factorial(j, q) / q_factorial(j + k, q);
  } else if (beta == 1) {
    double s = std::sqrt(q);
    closed = 1;
    for (int j = 0; j < k; ++j) closed *= q_factorial(2 * j + 1, s) / q_factorial(2 * k + 2 * j + 1, s);
  } else if (beta == 4 && k % 2 == 0) {
    int h = k / 2;
    closed = std::pow(q_bracket(2.0, q), 2.0 * h * h) / q_double_factorial_odd(h, q);
    for (int j = 1; j <= 2 * h - 1; ++j) closed *= q_factorial(j, q) / q_factorial(2 * j, q);
  }
  return {def, closed};
}

// both sides of Gamma_q(2x) Gamma_{q^2}(1/2) = (1+q)^{2x-1} Gamma_{q^2}(x) Gamma_{q^2}(x+1/2)
inline std::pair<double, double> q_duplication_sides(double x, double q) {
  double q2 = q * q;
  double lhs = q_gamma(2 * x, q) * q_gamma(0.5, q2);
  double rhs = std::pow(1 + q, 2 * x - 1) * q_gamma(x, q2) * q_gamma(x + 0.5, q2);
  return {lhs, rhs};
}

inline std::pair<double, double> duplication_sides(double a) {
  return {std::tgamma(2 * a), std::pow(2.0, 2 * a - 1) / std::sqrt(M_PI) * std::tgamma(a) * std::tgamma(a + 0.5)};
}

}  // namespace charmom
