#pragma once

// Kaneko's 2Phi1 (Macdonald) and 2F1 (Jack) series in finitely many variables.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "symfun.hpp"

namespace charmom {

struct SeriesResult {
  double value = 0;
  bool terminating = false;
  bool converged = false;
  int degree = 0;     // last degree summed
  double tail = 0;    // size of the last nonzero degree block
};

struct SeriesOptions {
  int cap = 10;  // beyond n = 1 the cost is that of all partitions of the degree
  double tol = 1e-14;
};

namespace detail {

// k if a = q^{-k} for a nonnegative integer k (to 1e-12), else -1
inline int q_termination_index(double a, double q) {
  if (a <= 0) return -1;
  double k = -std::log(a) / std::log(q);
  double r = std::round(k);
  return (r >= 0 && std::abs(k - r) < 1e-12 * std::max(1.0, r)) ? static_cast<int>(r) : -1;
}

inline int termination_index(double a) {
  double r = std::round(-a);
  return (r >= 0 && std::abs(a + r) < 1e-12 * std::max(1.0, r)) ? static_cast<int>(r) : -1;
}

// [u]_lambda^{(alpha)} = prod_s (u - l'(s)/alpha + a'(s))
inline double jack_gen_factorial(double u, const Partition& lam, double alpha) {
  double r = 1;
  for (auto& s : lam.cells()) r *= u - s.lp / alpha + s.ap;
  return r;
}

// c'_lambda(alpha) = prod_s (alpha (a(s)+1) + l(s))
inline double jack_c_prime(const Partition& lam, double alpha) {
  double r = 1;
  for (auto& s : lam.cells()) r *= alpha * (s.a + 1) + s.l;
  return r;
}

// P_lambda at x; one variable needs no engine
template <class Engine>
double eval_P(Engine& eng, const Partition& lam, const std::vector<double>& x) {
  if (x.size() == 1) return std::pow(x[0], lam.weight());
  return evaluate(eng.P(lam), x);
}

template <class Coef>
SeriesResult sum_series(int n, int kmax, const SeriesOptions& opt, Coef coef) {
  SeriesResult r;
  r.terminating = kmax >= 0;
  int quiet = 0;
  for (int d = 0; d <= opt.cap; ++d) {
    double block = 0;
    bool any = false;
    for (auto& lam : partitions_of(d, n)) {
      if (kmax >= 0 && lam[1] > kmax) continue;
      any = true;
      block += coef(lam);
    }
    r.value += block;
    r.degree = d;
    if (r.terminating && !any && d > 0) {
      r.converged = true;
      return r;
    }
    if (block != 0) r.tail = std::abs(block);
    if (!r.terminating && d > 0) {
      quiet = std::abs(block) <= opt.tol * std::abs(r.value) ? quiet + 1 : 0;
      if (quiet >= 2) {
        r.converged = true;
        return r;
      }
    }
  }
  // a terminating sum with lambda_1 <= k and length <= n ends at degree k n
  r.converged = r.terminating && opt.cap >= kmax * n;
  return r;
}

}  // namespace detail

inline SeriesResult hyper_2phi1_qt(double a, double b, double c, const std::vector<double>& x, double q, double t,
                                   const SeriesOptions& opt = {}) {
  if (!(std::abs(q) < 1 && std::abs(t) < 1)) throw std::domain_error("2Phi1 needs |q|, |t| < 1");
  int ka = detail::q_termination_index(a, q), kb = detail::q_termination_index(b, q);
  int k = ka < 0 ? kb : (kb < 0 ? ka : std::min(ka, kb));
  SymEngine<double> eng(qt_product_d(q, t));
  int n = static_cast<int>(x.size());
  return detail::sum_series(n, k, opt, [&](const Partition& lam) {
    double cc = gen_factorial_qt(c, lam, q, t);
    if (cc == 0) throw std::domain_error("2Phi1: (c)_lambda vanishes at " + lam.str());
    double w = gen_factorial_qt(a, lam, q, t) * gen_factorial_qt(b, lam, q, t) / cc / c_prime_lambda(lam, q, t);
    return w == 0 ? 0.0 : w * detail::eval_P(eng, lam, x);
  });
}

inline SeriesResult hyper_2F1_alpha(double a, double b, double c, const std::vector<double>& x, double alpha,
                                    const SeriesOptions& opt = {}) {
  if (!(alpha > 0)) throw std::domain_error("2F1 needs alpha > 0");
  int ka = detail::termination_index(a), kb = detail::termination_index(b);
  int k = ka < 0 ? kb : (kb < 0 ? ka : std::min(ka, kb));
  SymEngine<double> eng(jack_product(alpha));
  int n = static_cast<int>(x.size());
  return detail::sum_series(n, k, opt, [&](const Partition& lam) {
    double cc = detail::jack_gen_factorial(c, lam, alpha);
    if (cc == 0) throw std::domain_error("2F1: [c]_lambda vanishes at " + lam.str());
    double w = detail::jack_gen_factorial(a, lam, alpha) * detail::jack_gen_factorial(b, lam, alpha) / cc *
               std::pow(alpha, lam.weight()) / detail::jack_c_prime(lam, alpha);
    return w == 0 ? 0.0 : w * detail::eval_P(eng, lam, x);
  });
}

}  // namespace charmom
