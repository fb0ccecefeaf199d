#pragma once

// Both sides of the strong Szego limit for the (q,t) circular weight, with the
// Jack and Toeplitz reductions.

#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "ensembles.hpp"
#include "montecarlo.hpp"
#include "numerics.hpp"
#include "scalar.hpp"
#include "specialfun.hpp"

namespace charmom {

// phi(z) = exp(sum_k c(k) z^k), c stored on a finite range
struct SzegoSymbol {
  std::map<int, cplx> c;
  double tail = 0;  // bound on the dropped sum_k |c(k)|

  cplx coefficient(int k) const {
    auto it = c.find(k);
    return it == c.end() ? cplx(0) : it->second;
  }
  cplx log_eval(double theta) const {
    cplx s = 0;
    for (auto& [k, v] : c) s += v * std::polar(1.0, k * theta);
    return s;
  }
  cplx eval(double theta) const { return std::exp(log_eval(theta)); }
  // real part; the symbol is real when c(-k) = conj c(k)
  double eval_real(double theta) const { return eval(theta).real(); }
  bool conjugate_symmetric(double tol = 1e-15) const {
    for (auto& [k, v] : c)
      if (std::abs(coefficient(-k) - std::conj(v)) > tol * std::max(1.0, std::abs(v))) return false;
    return true;
  }
};

// |1 + eta z|^{2 gamma}, |eta| < 1
inline SzegoSymbol power_symbol(cplx eta, double gamma, double tol = 1e-18) {
  double a = std::abs(eta);
  if (a >= 1) throw std::domain_error("power symbol needs |eta| < 1");
  SzegoSymbol s;
  if (a == 0 || gamma == 0) return s;
  cplx ek = 1;
  for (int k = 1; k < 10000; ++k) {
    ek *= eta;
    cplx ck = (k % 2 ? 1.0 : -1.0) * ek * gamma / static_cast<double>(k);
    if (std::abs(ck) < tol) {
      s.tail = std::abs(gamma) * std::pow(a, k) / (k * (1 - a)) * 2;
      break;
    }
    s.c[k] = ck;
    s.c[-k] = std::conj(ck);
  }
  return s;
}

struct SzegoLimit {
  double value = 0;
  bool converged = false;
  int terms = 0;
};

namespace detail {

template <class Ratio>
SzegoLimit szego_sum(const SzegoSymbol& s, Ratio ratio, double tol) {
  cplx sum = 0;
  int kmax = 0;
  for (auto& [k, v] : s.c) kmax = std::max(kmax, k);
  SzegoLimit r;
  double last = 0;
  for (int k = 1; k <= kmax; ++k) {
    cplx term = static_cast<double>(k) * s.coefficient(k) * s.coefficient(-k) * ratio(k);
    sum += term;
    last = std::abs(term);
    r.terms = k;
  }
  // a series of k|c(k)|^2 whose last stored term is negligible is taken as summed
  r.converged = last <= tol * std::max(1.0, std::abs(sum)) && s.tail < 1e-6;
  r.value = std::exp(sum.real());
  return r;
}

}  // namespace detail

inline SzegoLimit szego_rhs(const SzegoSymbol& s, double q, double t, double tol = 1e-12) {
  if (!(std::abs(t) < 1) || !(std::abs(q) < 1)) throw std::domain_error("szego_rhs needs |q|, |t| < 1");
  return detail::szego_sum(s, [&](int k) { return (1 - std::pow(q, k)) / (1 - std::pow(t, k)); }, tol);
}

inline SzegoLimit szego_rhs_jack(const SzegoSymbol& s, double beta, double tol = 1e-12) {
  if (!(beta > 0)) throw std::domain_error("beta must be positive");
  return detail::szego_sum(s, [&](int) { return 2 / beta; }, tol);
}

// limit of <|Psi(z; eta)|^{2 gamma}>_n
inline double moment_limit(double eta_abs, double gamma, double q, double t) {
  double a = eta_abs * eta_abs;
  return std::pow(q_pochhammer_inf(q * a, t) / q_pochhammer_inf(a, t), gamma * gamma);
}

inline double moment_limit_jack(double eta_abs, double gamma, double beta) {
  return std::pow(1 - eta_abs * eta_abs, -2 * gamma * gamma / beta);
}

enum class SzegoMethod { toeplitz, quadrature, montecarlo };

inline std::string to_string(SzegoMethod m) {
  switch (m) {
    case SzegoMethod::toeplitz: return "toeplitz";
    case SzegoMethod::quadrature: return "quadrature";
    case SzegoMethod::montecarlo: return "montecarlo";
  }
  return "?";
}

inline SzegoMethod parse_szego_method(const std::string& s) {
  if (s == "toeplitz") return SzegoMethod::toeplitz;
  if (s == "quadrature") return SzegoMethod::quadrature;
  if (s == "montecarlo" || s == "mc") return SzegoMethod::montecarlo;
  throw std::invalid_argument("unknown szego method: " + s);
}

struct SzegoTerm {
  int n = 0;
  double value = 0;
  double error = 0;
};

// e^{-n c(0)} <prod_j phi(z_j)>_n over the CBETA or MACDONALD weight
inline std::vector<SzegoTerm> szego_lhs_sequence(const SzegoSymbol& s, const EnsembleSpec& e, const std::vector<int>& ns,
                                                 SzegoMethod method, const MCOptions& mc = {}) {
  if (e.family == Family::BC) throw std::invalid_argument("szego needs a type A or Macdonald weight");
  double c0 = s.coefficient(0).real();
  std::vector<SzegoTerm> out;
  for (int n : ns) {
    if (n < 0) throw std::invalid_argument("n must be nonnegative");
    SzegoTerm r{n, 1, 0};
    if (n == 0) {
      out.push_back(r);
      continue;
    }
    double damp = std::exp(-n * c0);
    switch (method) {
      case SzegoMethod::toeplitz: {
        if (e.family != Family::A || e.beta != 2) throw std::invalid_argument("toeplitz method needs beta = 2");
        int M = std::max(4096, 8 * n);
        cplx d = toeplitz_det([&](double th) { return s.eval(th); }, n, M);
        r.value = damp * d.real();
        r.error = std::abs(d.imag()) + 1e-12 * std::abs(r.value);
        break;
      }
      case SzegoMethod::quadrature: {
        if (n > 3) throw std::invalid_argument("quadrature method is limited to n <= 3");
        auto w = ensemble_density(e);
        TorusGrid g{n};
        g.kink = e.family == Family::A && !(is_integer(e.beta) && e.beta.get_num().get_si() % 2 == 0);
        g.tol = n >= 3 ? 1e-9 : 1e-12;
        if (n >= 3) g.n0 = 32;
        auto prod = [&](const std::vector<double>& th) {
          double p = 1;
          for (double x : th) p *= s.eval_real(x);
          return p;
        };
        auto num = torus_integrate([&](const std::vector<double>& th) { return w(th) * prod(th); }, g);
        auto den = torus_integrate(w, g);
        double v = num.value / den.value;
        r.value = damp * v;
        r.error = damp * (num.error + std::abs(v) * den.error) / den.value;
        break;
      }
      case SzegoMethod::montecarlo: {
        auto ch = ensemble_chain(e, n, mc);
        auto est = estimate_average(ch.samples, [&](const std::vector<double>& th) {
          double p = 1;
          for (double x : th) p *= s.eval_real(x);
          return p;
        });
        r.value = damp * est.mean;
        r.error = damp * est.se;
        break;
      }
    }
    out.push_back(r);
  }
  return out;
}

// |LHS_n - RHS| strictly decreasing along the sequence
inline bool gap_strictly_decreasing(const std::vector<SzegoTerm>& seq, double rhs) {
  for (std::size_t i = 1; i < seq.size(); ++i)
    if (!(std::abs(seq[i].value - rhs) < std::abs(seq[i - 1].value - rhs))) return false;
  return true;
}

}  // namespace charmom
