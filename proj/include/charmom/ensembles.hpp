#pragma once

// Ensemble catalog, closed-form averages and moments, oracles, and the
// verification harness that compares them.

#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "bcjacobi.hpp"
#include "hypergeometric.hpp"
#include "montecarlo.hpp"
#include "numerics.hpp"
#include "report.hpp"
#include "specialfun.hpp"
#include "symfun.hpp"

namespace charmom {

enum class Family { A, BC, Macdonald };

struct EnsembleSpec {
  std::string label;
  Family family = Family::A;
  Q beta = 2;                       // type A
  std::optional<BCParameters> bc;   // BC type
  double q = 0, t = 0;              // Macdonald
  int mult = 1;                     // multiplicity of each z_j among the eigenvalues
  int rho = 0;                      // deterministic eigenvalues equal to 1
  int r = 0;

  const BCParameters& k() const {
    if (!bc) throw std::logic_error(label + " is not a BC-type ensemble");
    return *bc;
  }
  int matrix_dim(int n) const { return family == Family::BC ? rho + 2 * mult * n : mult * n; }
  // exponent of (1+x) in det(I+xM)^{1/mult}
  int prefactor_power() const { return rho / mult; }
};

inline EnsembleSpec make_ensemble(const std::string& text) {
  std::string name = text, arg;
  auto lp = text.find('(');
  if (lp != std::string::npos) {
    if (text.back() != ')') throw std::invalid_argument("bad ensemble label: " + text);
    name = text.substr(0, lp);
    arg = text.substr(lp + 1, text.size() - lp - 2);
  }
  auto int_arg = [&]() {
    if (arg.empty()) return 0;
    std::size_t pos = 0;
    int v = std::stoi(arg, &pos);
    if (pos != arg.size() || v < 0) throw std::invalid_argument("bad ensemble argument: " + text);
    return v;
  };
  EnsembleSpec s;
  if (name == "CUE" || name == "COE" || name == "CSE" || name == "CBETA") {
    s.family = Family::A;
    s.beta = name == "CUE" ? Q(2) : name == "COE" ? Q(1) : name == "CSE" ? Q(4) : parse_q(arg);
    if (name == "CBETA" && !(s.beta > 0)) throw std::invalid_argument("CBETA needs beta > 0");
    s.mult = name == "CSE" ? 2 : 1;
    s.label = name == "CBETA" ? "CBETA(" + s.beta.get_str() + ")" : name;
    return s;
  }
  if (name == "MACDONALD") {
    auto comma = arg.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("MACDONALD needs (q,t)");
    s.family = Family::Macdonald;
    s.q = std::stod(arg.substr(0, comma));
    s.t = std::stod(arg.substr(comma + 1));
    if (!(std::abs(s.q) < 1 && std::abs(s.t) < 1)) throw std::invalid_argument("MACDONALD needs |q|,|t| < 1");
    s.label = "MACDONALD(" + arg + ")";
    return s;
  }
  s.family = Family::BC;
  const Q h(1, 2);
  if (name == "B") {
    s.bc = BCParameters(1, 0, 1);
    s.rho = 1;
  } else if (name == "C") {
    s.bc = BCParameters(0, 1, 1);
  } else if (name == "D") {
    s.bc = BCParameters(0, 0, 1);
  } else if (name == "AIII") {
    s.r = int_arg();
    s.bc = BCParameters(s.r, h, 1);
    s.rho = s.r;
  } else if (name == "BDI") {
    s.r = int_arg();
    Q k1(s.r, 2);
    k1.canonicalize();
    s.bc = BCParameters(k1, 0, h);
    s.rho = s.r;
  } else if (name == "CI") {
    s.bc = BCParameters(0, h, h);
  } else if (name == "CII") {
    s.r = int_arg();
    s.bc = BCParameters(2 * s.r, Q(3, 2), 2);
    s.rho = 2 * s.r;
    s.mult = 2;
  } else if (name == "DIII_odd") {
    s.bc = BCParameters(2, h, 2);
    s.rho = 2;
    s.mult = 2;
  } else if (name == "DIII_even") {
    s.bc = BCParameters(0, h, 2);
    s.mult = 2;
  } else {
    throw std::invalid_argument("unknown ensemble: " + text);
  }
  bool takes_r = name == "AIII" || name == "BDI" || name == "CII";
  if (!takes_r && !arg.empty()) throw std::invalid_argument(name + " takes no argument");
  s.label = takes_r ? name + "(" + std::to_string(s.r) + ")" : name;
  return s;
}

// the BC ensembles audited by the suite
inline std::vector<EnsembleSpec> bc_catalog() {
  std::vector<EnsembleSpec> v;
  for (auto l : {"B", "C", "D", "AIII(0)", "AIII(1)", "BDI(0)", "BDI(1)", "CI", "CII(0)", "CII(1)", "DIII_odd",
                 "DIII_even"})
    v.push_back(make_ensemble(l));
  return v;
}

// BC ensembles whose literal closed form is known to disagree with the oracles (k1 != 0)
inline bool expected_literal_mismatch(const EnsembleSpec& s) {
  return s.family == Family::BC && sgn(s.k().k1) != 0;
}

// ---- type A ------------------------------------------------------------------

namespace detail {

inline std::string key_of(const Q& x) { return x.get_str(); }
inline std::string key_of(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

template <class F>
SymEngine<F>& cached_engine(const std::string& key, const std::function<PowerSumProduct<F>()>& make) {
  static std::mutex mu;
  static std::map<std::string, std::unique_ptr<SymEngine<F>>> engines;
  std::lock_guard<std::mutex> lock(mu);
  auto& e = engines[key];
  if (!e) e = std::make_unique<SymEngine<F>>(make());
  return *e;
}

template <class F>
SymEngine<F>& jack_engine_at(const F& alpha) {
  return cached_engine<F>("jack" + key_of(alpha), [&] { return jack_product(alpha); });
}

inline SymEngine<double>& macdonald_engine_at(double q, double t) {
  return cached_engine<double>("mac" + key_of(q) + "," + key_of(t), [&] { return qt_product_d(q, t); });
}

// Gamma(x) / sqrt(pi)^[x half-odd], x in Z/2, x > 0
inline Q gamma_half_rational(const Q& x) {
  if (!(x > 0)) throw std::domain_error("gamma pole");
  if (is_integer(x)) return factorial_q(x.get_num().get_si() - 1);
  Q twice = 2 * x;
  if (!is_integer(twice)) throw std::domain_error("exact gamma needs a half-integer argument");
  long j = (twice.get_num().get_si() - 1) / 2;  // x = j + 1/2
  return double_factorial(static_cast<int>(2 * j - 1)) / qpow(Q(2), j);
}

inline double log_dfac(int k) {
  double s = 0;
  for (int i = k; i > 1; i -= 2) s += std::log(static_cast<double>(i));
  return s;
}

}  // namespace detail

// <prod_{l<=L} Psi(z^-1; 1/eta_l) prod_{k<=K} Psi(z; eta_{L+k})>_{n,beta} = (eta_1..eta_L)^{-n} P^Jack_{(n^L)}(eta; beta/2)
template <class F>
F typeA_average_product(const F& beta, int n, int L, int K, const std::vector<F>& eta) {
  if (static_cast<int>(eta.size()) != L + K) throw std::invalid_argument("need L+K points");
  if (!(beta > 0)) throw std::domain_error("beta must be positive");
  F pre = F(1);
  for (int l = 0; l < L; ++l) {
    if (eta[l] == F(0)) throw std::domain_error("zero eta among the first L points");
    for (int j = 0; j < n; ++j) pre /= eta[l];
  }
  if (L == 0 || n == 0) return F(1);
  F alpha = beta / F(2);
  auto P = detail::jack_engine_at(alpha).P(Partition::rectangle(L, n));
  return pre * evaluate(P, eta);
}

// (q,t) version: (eta_1..eta_L)^{-n} P^Mac_{(n^L)}(eta; t, q), parameters swapped
template <class T>
T qt_average_product(int n, int L, int K, const std::vector<T>& eta, double q, double t) {
  if (static_cast<int>(eta.size()) != L + K) throw std::invalid_argument("need L+K points");
  if (!(std::abs(q) < 1 && std::abs(t) < 1)) throw std::domain_error("need |q|,|t| < 1");
  T pre = T(1);
  for (int l = 0; l < L; ++l) {
    if (eta[l] == T(0)) throw std::domain_error("zero eta among the first L points");
    for (int j = 0; j < n; ++j) pre /= eta[l];
  }
  if (L == 0 || n == 0) return T(1);
  auto P = detail::macdonald_engine_at(t, q).P(Partition::rectangle(L, n));
  return pre * evaluate(P, eta);
}

inline double qt_moment_product(int n, int k, double q, double t) {
  double v = 1;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < n; ++j) v *= (1 - std::pow(q, k + i + 1) * std::pow(t, j)) / (1 - std::pow(q, i + 1) * std::pow(t, j));
  return v;
}

// t = q^{beta/2}
inline double qt_moment_gamma(int n, int k, double q, double beta) {
  double t = std::pow(q, beta / 2), l = 0, b = 2 / beta;
  for (int i = 0; i < k; ++i)
    l += lgamma_q(b * (i + 1), t).first + lgamma_q(n + b * (k + i + 1), t).first -
         lgamma_q(b * (k + i + 1), t).first - lgamma_q(n + b * (i + 1), t).first;
  return std::exp(l);
}

inline SeriesResult qt_moment_2phi1(int n, int k, double q, double t) {
  std::vector<double> x;
  for (int j = 0; j < n; ++j) x.push_back(std::pow(q, 2 * k + 1) * std::pow(t, j));
  double a = std::pow(q, -k);
  SeriesOptions opt;
  opt.cap = k * n;
  return hyper_2phi1_qt(a, a, q * std::pow(t, n - 1), x, q, t, opt);
}

// <|Psi(z; xi)|^{2k}>_{n,beta}, |xi| = 1
inline double typeA_moment(double beta, int n, int k) {
  double b = 2 / beta, l = 0;
  for (int i = 0; i < k; ++i)
    l += lgamma_checked(b * (i + 1)) + lgamma_checked(n + b * (k + i + 1)) - lgamma_checked(b * (k + i + 1)) -
         lgamma_checked(n + b * (i + 1));
  return std::exp(l);
}

// exact when every gamma argument is a half-integer (beta in {1, 2, 4} and friends)
inline Q typeA_moment_exact(const Q& beta, int n, int k) {
  Q b = 2 / beta, v = 1;
  for (int i = 0; i < k; ++i) {
    v *= detail::gamma_half_rational(Q(b * (i + 1))) * detail::gamma_half_rational(Q(n + b * (k + i + 1)));
    v /= detail::gamma_half_rational(Q(b * (k + i + 1))) * detail::gamma_half_rational(Q(n + b * (i + 1)));
  }
  return v;
}

inline std::pair<double, double> typeA_moment_asymptotic(double beta, int k) {
  double b = 2 / beta, l = 0;
  for (int i = 0; i < k; ++i) l += lgamma_checked(b * (i + 1)) - lgamma_checked(b * (k + i + 1));
  return {std::exp(l), 2.0 * k * k / beta};
}

// prod_{j<m} j! (n+j+m)! / ((j+m)! (n+j)!)
inline Q cue_moment_product(int n, int m) {
  Q v = 1;
  for (int j = 0; j < m; ++j) v *= factorial_q(j) * factorial_q(n + j + m) / (factorial_q(j + m) * factorial_q(n + j));
  return v;
}

// <|Psi(z;eta)|^{2 gamma}> = 2F1^{(2/beta)}(-gamma, -gamma; beta(n-1)/2 + 1; |eta|^2, ..., |eta|^2)
inline SeriesResult typeA_moment_2F1(double beta, int n, double gamma, double eta_abs, const SeriesOptions& opt = {}) {
  std::vector<double> x(n, eta_abs * eta_abs);
  return hyper_2F1_alpha(-gamma, -gamma, beta * (n - 1) / 2 + 1, x, 2 / beta, opt);
}

// moment <|det(I + xi M)|^{2m}> of a type-A ensemble, in units of the Psi power
inline int typeA_psi_power(const EnsembleSpec& s, int m) { return s.mult * m; }

// ---- BC closed forms -----------------------------------------------------------

enum class BCForm { literal, sign_adjusted, dual_corrected };

inline std::string to_string(BCForm f) {
  switch (f) {
    case BCForm::literal: return "literal";
    case BCForm::sign_adjusted: return "sign_adjusted";
    case BCForm::dual_corrected: return "dual_corrected";
  }
  return "?";
}

inline BCParameters dual_params(const EnsembleSpec& s, BCForm f) {
  return f == BCForm::dual_corrected ? tilde_params_corrected(s.k()) : tilde_params(s.k());
}

// prod (1+x_i)^{rho/mult} prod x_i^n * [sign] P_{(n^m)}(+-x; k~)
struct BCClosedForm {
  EnsembleSpec spec;
  int n = 0, m = 0;
  BCForm form = BCForm::literal;
  BCParameters kt{0, 0, 1};
  const HOJacobiPolynomial* P = nullptr;

  bool exact() const { return P->mode == HOMode::exact; }

  template <class T>
  T eval(const std::vector<T>& x) const {
    if (static_cast<int>(x.size()) != m) throw std::invalid_argument("need m points");
    T v = T(1);
    std::vector<T> arg = x;
    bool flip = form != BCForm::literal;
    for (int i = 0; i < m; ++i) {
      if (x[i] == T(0)) throw std::domain_error("closed form evaluated through P needs x != 0");
      for (int p = 0; p < spec.prefactor_power(); ++p) v *= T(1) + x[i];
      for (int j = 0; j < n; ++j) v *= x[i];
      if (flip) arg[i] = -x[i];
    }
    v *= P->eval(arg);
    if (flip && (n * m) % 2) v = -v;
    return v;
  }

  // explicit polynomial in x_1..x_m (exact mode only)
  Laurent<Q> polynomial() const {
    if (!exact()) throw std::logic_error("explicit polynomial needs exact parameters");
    bool flip = form != BCForm::literal;
    Laurent<Q> L(m), base = P->exact.to_laurent();
    for (auto& [e, c] : base.terms()) {
      int deg = 0;
      LExp f = e;
      for (int i = 0; i < m; ++i) {
        deg += e[i];
        f[i] = static_cast<int16_t>(f[i] + n);
      }
      Q coef = c;
      if (flip && ((deg % 2 + 2) % 2)) coef = -coef;
      if (flip && (n * m) % 2) coef = -coef;
      L.add(f, coef);
    }
    Laurent<Q> one(m, Q(1));
    for (int i = 0; i < m; ++i) L *= (one + Laurent<Q>::var(m, i)).pow(spec.prefactor_power());
    return L;
  }
};

inline BCClosedForm bc_closed_form(const EnsembleSpec& s, int n, int m, BCForm form) {
  BCClosedForm c;
  c.spec = s;
  c.n = n;
  c.m = m;
  c.form = form;
  c.kt = dual_params(s, form);
  c.P = &ho_jacobi_P(Partition::rectangle(m, n), c.kt, m);
  return c;
}

inline double bc_average_product(const EnsembleSpec& s, int n, const std::vector<double>& x, BCForm form) {
  return bc_closed_form(s, n, static_cast<int>(x.size()), form).eval(x);
}

namespace detail {
// 2^{m rho} prod_j 4^n Gamma(n+a1+2a2+j a3) Gamma(n+a1+a2+1/2+j a3) / (Gamma(a1+a2+1/2+j a3) Gamma(2n+a1+2a2+j a3))
inline double log_bc_general(double n, int M, double a1, double a2, double a3) {
  double l = 0;
  for (int j = 0; j < M; ++j)
    l += n * std::log(4.0) + lgamma_checked(n + a1 + 2 * a2 + j * a3) + lgamma_checked(n + a1 + a2 + 0.5 + j * a3) -
         lgamma_checked(a1 + a2 + 0.5 + j * a3) - lgamma_checked(2 * n + a1 + 2 * a2 + j * a3);
  return l;
}
}  // namespace detail

// <det(I+M)^m> at x = 1, exact: 2^{m rho} P_{(n^M)}(1^M) with M = mult m points;
// the sign forms use P(-x; k1,k2,k3) = (-1)^{|lambda|} P(x; -k1, k1+k2, k3)
inline Q bc_moment_exact(const EnsembleSpec& s, int n, int m, BCForm form) {
  BCParameters kt = dual_params(s, form);
  int M = s.mult * m;
  Q pre = qpow(Q(2), static_cast<long>(m) * s.rho);
  if (form == BCForm::literal) return pre * vandiejen_rectangle<Q>(n, M, kt.k1, kt.k2, kt.k3);
  return pre * vandiejen_rectangle<Q>(n, M, Q(-kt.k1), Q(kt.k1 + kt.k2), kt.k3);
}

// 2^{m rho} times the generic gamma-product moment with the standard dual parameters
inline double bc_moment_general(const EnsembleSpec& s, double n, int m) {
  BCParameters kt = tilde_params(s.k());
  return std::exp(m * s.rho * std::log(2.0) + detail::log_bc_general(n, s.mult * m, kt.d1(), kt.d2(), kt.d3()));
}

// the per-ensemble gamma-product displays, evaluated in log space
inline double bc_moment_display(const EnsembleSpec& s, double n, int m) {
  using detail::log_dfac;
  auto lg = [](double x) { return lgamma_checked(x); };
  const double l2 = std::log(2.0);
  std::string name = s.label.substr(0, s.label.find('('));
  int r = s.r;
  double l = 0;
  if (name == "B") {
    l = m * l2;
    for (int j = 0; j < m; ++j) l += lg(2 * n + 2 * j + 2) - j * l2 - log_dfac(2 * j + 1) - lg(2 * n + j + 1);
  } else if (name == "C") {
    for (int j = 0; j < m; ++j) l += lg(2 * n + 2 * j + 3) - (j + 1) * l2 - log_dfac(2 * j + 1) - lg(2 * n + j + 2);
  } else if (name == "D") {
    for (int j = 0; j < m; ++j) l += lg(2 * n + 2 * j) - (j - 1) * l2 - log_dfac(2 * j - 1) - lg(2 * n + j);
  } else if (name == "AIII") {
    l = 0.5 * m * std::log(M_PI);
    for (int j = 0; j < m; ++j)
      l += -j * l2 - lg(r + j + 1) + 2 * lg(n + r + j + 1) - lg(n + (r + j + 1) / 2.0) - lg(n + (r + j) / 2.0 + 1);
  } else if (name == "BDI") {
    l = m * r * l2;
    for (int j = 0; j < m; ++j)
      l += lg(2 * n + 4 * j + 2 * r + 3) - (2 * j + r + 1) * l2 - log_dfac(4 * j + 2 * r + 1) - lg(2 * n + 2 * j + r + 2);
  } else if (name == "CI") {
    for (int j = 0; j < m; ++j)
      l += std::log(n + 2 * j + 3) + lg(2 * n + 4 * j + 5) - (2 * j + 2) * l2 - log_dfac(4 * j + 3) - lg(2 * n + 2 * j + 4);
  } else if (name == "CII") {
    l = (4.0 * m * r + m * m + m) * l2;
    for (int j = 0; j < m; ++j) l -= log_dfac(4 * j + 4 * r + 1);
    for (int p = 1; p <= 4 * m; ++p) l += lg(n + r + (p + 1) / 4.0);
    for (int j = 1; j <= 2 * m; ++j) l -= lg(n + r / 2.0 + j / 4.0) + lg(n + (r + 1) / 2.0 + j / 4.0);
  } else if (name == "DIII_odd") {
    l = (m * m + 5.0 * m) * l2;
    for (int j = 1; j <= m; ++j) l -= log_dfac(4 * j - 1);
    for (int j = 1; j <= 2 * m; ++j) l += lg(n + j / 2.0 + 0.75) + lg(n + j / 2.0) - lg(n + j / 4.0) - lg(n + j / 4.0 + 0.5);
  } else if (name == "DIII_even") {
    l = (m * m + 1.0 * m) * l2;
    for (int j = 1; j <= m - 1; ++j) l -= log_dfac(4 * j - 1);
    for (int j = 0; j < 2 * m; ++j)
      l += lg(n + j / 2.0 + 0.25) + lg(n + (j - 1) / 2.0) - lg(n + (j - 1) / 4.0) - lg(n + (j + 1) / 4.0);
  } else {
    throw std::invalid_argument("no moment display for " + s.label);
  }
  return std::exp(l);
}

inline double bc_moment(const EnsembleSpec& s, int n, int m, BCForm form) {
  return form == BCForm::literal ? bc_moment_display(s, n, m) : bc_moment_exact(s, n, m, form).get_d();
}

// (C, e) from 2^{m rho} F(M; k~) n^{M(k~1+k~2) + M(M-1) k~3 / 2}
inline std::pair<double, double> bc_moment_asymptotic(const EnsembleSpec& s, int m) {
  BCParameters kt = tilde_params(s.k());
  int M = s.mult * m;
  double C = std::pow(2.0, m * s.rho) * script_F(M, kt.d1(), kt.d2(), kt.d3());
  double e = M * (kt.d1() + kt.d2()) + 0.5 * M * (M - 1) * kt.d3();
  return {C, e};
}

// the displayed asymptotic constants and exponents, type A and BC
inline std::pair<double, double> moment_asymptotic_display(const EnsembleSpec& s, int m) {
  using detail::log_dfac;
  const double l2 = std::log(2.0);
  auto lf = [](int k) { return std::lgamma(k + 1.0); };
  std::string name = s.label.substr(0, s.label.find('('));
  int r = s.r;
  double l = 0, e = 0;
  if (name == "CUE") {
    for (int j = 0; j < m; ++j) l += lf(j) - lf(j + m);
    e = m * m;
  } else if (name == "COE") {
    for (int j = 0; j < m; ++j) l += lf(2 * j + 1) - lf(2 * m + 2 * j + 1);
    e = 2.0 * m * m;
  } else if (name == "CSE") {
    l = m * l2 - log_dfac(2 * m - 1);
    for (int j = 1; j <= 2 * m - 1; ++j) l -= log_dfac(2 * j - 1);
    e = 2.0 * m * m;
  } else if (name == "B") {
    l = 2 * m * l2;
    for (int j = 1; j <= m; ++j) l -= log_dfac(2 * j - 1);
    e = (m * m + m) / 2.0;
  } else if (name == "C") {
    for (int j = 1; j <= m; ++j) l -= log_dfac(2 * j - 1);
    e = (m * m + m) / 2.0;
  } else if (name == "D") {
    l = m * l2;
    for (int j = 1; j <= m - 1; ++j) l -= log_dfac(2 * j - 1);
    e = (m * m - m) / 2.0;
  } else if (name == "AIII") {
    l = 0.5 * m * std::log(M_PI) - 0.5 * m * (m - 1) * l2;
    for (int j = 0; j < m; ++j) l -= lf(r + j);
    e = m * m / 2.0 + r * m;
  } else if (name == "BDI") {
    l = m * r * l2;
    for (int j = 0; j < m; ++j) l -= log_dfac(4 * j + 2 * r + 1);
    e = m * m + r * m;
  } else if (name == "CI") {
    l = -m * l2;
    for (int j = 1; j <= m; ++j) l -= log_dfac(4 * j - 1);
    e = m * m + m;
  } else if (name == "CII") {
    l = (4.0 * m * r + m * m + m) * l2;
    for (int j = 0; j < m; ++j) l -= log_dfac(4 * j + 4 * r + 1);
    e = m * m + 2.0 * m * r;
  } else if (name == "DIII_odd") {
    l = (m * m + 5.0 * m) * l2;
    for (int j = 1; j <= m; ++j) l -= log_dfac(4 * j - 1);
    e = m * m + m;
  } else if (name == "DIII_even") {
    l = (m * m + 1.0 * m) * l2;
    for (int j = 1; j <= m - 1; ++j) l -= log_dfac(4 * j - 1);
    e = m * m - m;
  } else {
    throw std::invalid_argument("no asymptotic display for " + s.label);
  }
  return {std::exp(l), e};
}

// ---- oracles -------------------------------------------------------------------

enum class OracleMethod { ct, quadrature, montecarlo };

inline std::string to_string(OracleMethod m) {
  switch (m) {
    case OracleMethod::ct: return "ct";
    case OracleMethod::quadrature: return "quadrature";
    case OracleMethod::montecarlo: return "montecarlo";
  }
  return "?";
}

inline OracleMethod parse_method(const std::string& s) {
  if (s == "ct") return OracleMethod::ct;
  if (s == "quadrature") return OracleMethod::quadrature;
  if (s == "montecarlo" || s == "mc") return OracleMethod::montecarlo;
  throw std::invalid_argument("unknown method: " + s);
}

// scale * prod_j g(z_j); g is a univariate Laurent polynomial
struct Statistic {
  std::map<int, Q> factor;
  Q scale = 1;

  cplx g(double theta) const {
    cplx s = 0;
    for (auto& [e, c] : factor) s += c.get_d() * std::polar(1.0, e * theta);
    return s;
  }
  double on_angles(const std::vector<double>& th) const {
    cplx p = 1;
    for (double x : th) p *= g(x);
    return scale.get_d() * p.real();
  }
};

// prod_{l<=L} Psi(z^-1; 1/eta_l) prod_{k<=K} Psi(z; eta_{L+k})
inline Statistic typeA_statistic(int L, int K, const std::vector<Q>& eta) {
  if (static_cast<int>(eta.size()) != L + K) throw std::invalid_argument("need L+K points");
  Statistic s;
  s.factor = {{0, Q(1)}};
  for (int l = 0; l < L; ++l) s.factor = univariate_mul(s.factor, std::map<int, Q>{{0, Q(1)}, {-1, Q(1 / eta[l])}});
  for (int k = 0; k < K; ++k) s.factor = univariate_mul(s.factor, std::map<int, Q>{{0, Q(1)}, {1, eta[L + k]}});
  return s;
}

// prod_i det(I + x_i M)^{1/mult}
inline Statistic bc_statistic(const EnsembleSpec& spec, const std::vector<Q>& x) {
  Statistic s;
  s.factor = {{0, Q(1)}};
  for (auto& xi : x) {
    s.factor = univariate_mul(s.factor, std::map<int, Q>{{-1, xi}, {0, Q(1 + xi * xi)}, {1, xi}});
    s.scale *= qpow(Q(1 + xi), spec.prefactor_power());
  }
  return s;
}

inline AngleDensity ensemble_density(const EnsembleSpec& s) {
  if (s.family == Family::BC) return ho_weight_callable(s.k());
  if (s.family == Family::Macdonald) {
    double q = s.q, t = s.t;
    return [q, t](const std::vector<double>& th) {
      std::vector<cplx> z;
      for (double x : th) z.push_back(std::polar(1.0, x));
      return macdonald_weight_eval(z, q, t);
    };
  }
  double beta = s.beta.get_d();
  return [beta](const std::vector<double>& th) {
    double w = 1;
    for (std::size_t i = 0; i < th.size(); ++i)
      for (std::size_t j = i + 1; j < th.size(); ++j) w *= std::pow(std::abs(2 * std::sin((th[i] - th[j]) / 2)), beta);
    return w;
  };
}

inline Laurent<Q> typeA_weight_laurent(const Q& beta, int n) {
  if (!is_integer(beta) || beta.get_num().get_si() % 2 != 0)
    throw std::domain_error("constant-term oracle needs an even integer beta");
  long h = beta.get_num().get_si() / 2;
  Laurent<Q> w(n, Q(1)), one(n, Q(1));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) w *= (one - Laurent<Q>::var(n, i) * Laurent<Q>::var(n, j).reflected()).pow(static_cast<int>(h));
  return w;
}

struct MCOptions {
  long samples = 1000000;
  int thin = 10;
  long burn_in = 20000;
  std::uint64_t seed = 1;
};

inline Chain ensemble_chain(const EnsembleSpec& s, int n, const MCOptions& o) {
  ChainConfig cfg;
  cfg.n = n;
  cfg.weight = ensemble_density(s);
  cfg.samples = o.samples;
  cfg.thin = o.thin;
  cfg.burn_in = o.burn_in;
  cfg.seed = o.seed;
  return sample_chain(cfg);
}

struct OracleResult {
  Scalar value;
  std::string method;
};

inline OracleResult oracle_average(const EnsembleSpec& s, int n, const Statistic& f, OracleMethod method,
                                   const MCOptions& mc = {}, const Chain* chain = nullptr) {
  if (n == 0) return {Scalar(f.scale), to_string(method)};
  switch (method) {
    case OracleMethod::ct: {
      Laurent<Q> w;
      if (s.family == Family::BC) {
        if (!s.k().integral()) throw std::invalid_argument("ct oracle needs integer BC parameters");
        w = ho_weight_laurent(s.k(), n);
      } else if (s.family == Family::A) {
        w = typeA_weight_laurent(s.beta, n);
      } else {
        throw std::invalid_argument("ct oracle is not available for the Macdonald weight");
      }
      Q v = f.scale * constant_term_with_factor(w, f.factor) / constant_term(w);
      return {Scalar(v), "ct"};
    }
    case OracleMethod::quadrature: {
      if (s.family == Family::BC) {
        if (n > 2) throw std::invalid_argument("BC quadrature oracle is limited to n <= 2");
        auto stat = [&](const std::vector<double>& X) {
          std::vector<double> th;
          for (double x : X) th.push_back(std::acos(x));
          return f.on_angles(th);
        };
        auto one = [](const std::vector<double>&) { return 1.0; };
        double num = ho_integrate_cos(s.k(), n, stat), den = ho_integrate_cos(s.k(), n, one);
        double coarse = ho_integrate_cos(s.k(), n, stat, 1e-8) / ho_integrate_cos(s.k(), n, one, 1e-8);
        double v = num / den;
        return {Scalar::approx(v, std::max(std::abs(v - coarse), 1e-13 * std::abs(v))), "quadrature"};
      }
      if (n > 3) throw std::invalid_argument("torus quadrature oracle is limited to n <= 3");
      auto w = ensemble_density(s);
      TorusGrid g{n};
      g.kink = s.family == Family::A && !(is_integer(s.beta) && s.beta.get_num().get_si() % 2 == 0);
      g.tol = n >= 3 ? 1e-9 : 1e-12;
      if (n >= 3) g.n0 = 32;
      auto num = torus_integrate([&](const std::vector<double>& th) { return w(th) * f.on_angles(th); }, g);
      auto den = torus_integrate(w, g);
      double v = num.value / den.value;
      return {Scalar::approx(v, (num.error + std::abs(v) * den.error) / den.value), "quadrature"};
    }
    case OracleMethod::montecarlo: {
      Chain local;
      if (!chain) {
        local = ensemble_chain(s, n, mc);
        chain = &local;
      }
      auto e = estimate_average(chain->samples, [&](const std::vector<double>& th) { return f.on_angles(th); });
      return {Scalar::approx(e.mean, e.se), "montecarlo"};
    }
  }
  throw std::logic_error("unreachable");
}

// ---- verification harness -----------------------------------------------------------

inline std::vector<std::vector<Q>> audit_points(int m) {
  const Q a(3, 10), b(7, 10), one(1);
  if (m == 1) return {{a}, {b}, {one}};
  if (m == 2) return {{a, b}, {b, one}, {one, one}};
  std::vector<Q> mixed, ones(m, one);
  for (int i = 0; i < m; ++i) mixed.push_back(i % 3 == 0 ? a : i % 3 == 1 ? b : one);
  return {mixed, ones};
}

namespace detail {
inline std::vector<double> to_doubles(const std::vector<Q>& v) {
  std::vector<double> r;
  for (auto& x : v) r.push_back(x.get_d());
  return r;
}

// an oracle check of a closed value against one oracle result
inline Check make_check(const std::string& form, const std::vector<Q>& x, const Scalar& closed, const OracleResult& o,
                        double tol) {
  Check c;
  c.form = form;
  c.method = o.method;
  c.x = to_doubles(x);
  c.closed = closed.value();
  c.oracle = o.value.value();
  c.error_bar = o.value.error();
  c.exact = closed.exact() && o.value.exact();
  if (c.exact) {
    c.tol = 0;
    c.match = closed.q() == o.value.q();
  } else if (o.method == "montecarlo") {
    c.tol = 3 * o.value.error();
    c.match = c.abs_err() <= c.tol;
  } else {
    c.tol = tol * std::max(1.0, std::abs(c.oracle)) + o.value.error() + closed.error();
    c.match = c.abs_err() <= c.tol;
  }
  return c;
}
}  // namespace detail

struct VerifyOptions {
  std::vector<OracleMethod> methods{OracleMethod::ct, OracleMethod::quadrature, OracleMethod::montecarlo};
  MCOptions mc;
  double tol = 1e-6;
  bool diagnostics = true;  // include the dual_corrected form
};

namespace detail {

inline bool method_applies(const EnsembleSpec& s, int n, OracleMethod m) {
  switch (m) {
    case OracleMethod::ct:
      if (s.family == Family::BC) return s.k().integral();
      if (s.family == Family::A) return is_integer(s.beta) && s.beta.get_num().get_si() % 2 == 0;
      return false;
    case OracleMethod::quadrature:
      return s.family == Family::BC ? n <= 2 : n <= 3;
    case OracleMethod::montecarlo:
      return n >= 1;
  }
  return false;
}

inline std::vector<OracleMethod> applicable(const EnsembleSpec& s, int n, const VerifyOptions& o) {
  std::vector<OracleMethod> r;
  bool have_ct = false;
  for (auto m : o.methods)
    if (m == OracleMethod::ct && method_applies(s, n, m)) have_ct = true;
  for (auto m : o.methods) {
    if (!method_applies(s, n, m)) continue;
    // exact constant terms settle the question; the numeric oracles add nothing there
    if (have_ct && m != OracleMethod::ct) continue;
    r.push_back(m);
  }
  return r;
}

inline std::string summarize(const std::vector<Check>& cs) {
  double worst = 0;
  for (auto& c : cs) worst = std::max(worst, c.abs_err());
  std::ostringstream os;
  os << std::setprecision(3) << worst;
  return os.str();
}

}  // namespace detail

inline VerificationReport verify_bc(const EnsembleSpec& s, int n, int m, const VerifyOptions& o,
                                    const Chain* chain = nullptr) {
  VerificationReport rep;
  rep.label = s.label;
  rep.n = n;
  rep.m = m;
  rep.expected_literal_mismatch = expected_literal_mismatch(s);
  auto methods = detail::applicable(s, n, o);
  if (methods.empty()) throw std::invalid_argument("no oracle applies to " + s.label + " at n = " + std::to_string(n));
  Chain local;
  for (auto meth : methods)
    if (meth == OracleMethod::montecarlo && !chain && n > 0) {
      local = ensemble_chain(s, n, o.mc);
      chain = &local;
    }
  auto pts = audit_points(m);
  std::vector<std::vector<OracleResult>> oracles(pts.size());
  for (std::size_t p = 0; p < pts.size(); ++p)
    for (auto meth : methods) oracles[p].push_back(oracle_average(s, n, bc_statistic(s, pts[p]), meth, o.mc, chain));

  std::vector<BCForm> forms{BCForm::literal, BCForm::sign_adjusted};
  if (o.diagnostics) forms.push_back(BCForm::dual_corrected);
  std::map<BCForm, bool> ok;
  for (auto form : forms) {
    auto cf = bc_closed_form(s, n, m, form);
    bool all = true;
    for (std::size_t p = 0; p < pts.size(); ++p) {
      Scalar closed = cf.exact() ? Scalar(cf.eval(pts[p])) : Scalar::approx(cf.eval(detail::to_doubles(pts[p])), 1e-9);
      for (auto& orc : oracles[p]) {
        auto c = detail::make_check(to_string(form), pts[p], closed, orc, o.tol);
        all = all && c.match;
        rep.checks.push_back(c);
      }
    }
    ok[form] = all;
    std::string v = all ? "match" : "mismatch";
    if (form == BCForm::dual_corrected) v = "diagnostic-" + v;
    rep.verdicts.push_back({to_string(form), v});
  }
  bool k1zero = !rep.expected_literal_mismatch;
  rep.pass = k1zero ? ok[BCForm::literal] && ok[BCForm::sign_adjusted]
                    : ok[BCForm::literal] || ok[BCForm::sign_adjusted];
  std::ostringstream os;
  os << "dual " << tilde_params(s.k()).str() << "; oracles:";
  for (auto meth : methods) os << ' ' << to_string(meth);
  os << "; max |closed-oracle| " << detail::summarize(rep.checks);
  if (rep.expected_literal_mismatch && !ok[BCForm::literal]) os << "; literal mismatch expected (k1 != 0)";
  rep.note = os.str();
  return rep;
}

// type A / Macdonald: the average-product identity at eta = all ones (the moment) and a mixed point
inline VerificationReport verify_typeA(const EnsembleSpec& s, int n, int m, const VerifyOptions& o,
                                       const Chain* chain = nullptr) {
  VerificationReport rep;
  rep.label = s.label;
  rep.n = n;
  rep.m = m;
  int L = m, K = m;
  std::vector<std::vector<Q>> pts{std::vector<Q>(L + K, Q(1))};
  std::vector<Q> mixed;
  const Q left[] = {Q(1), Q(1, 2)}, right[] = {Q(3, 10), Q(7, 10)};
  for (int i = 0; i < L; ++i) mixed.push_back(left[i % 2]);
  for (int i = 0; i < K; ++i) mixed.push_back(right[i % 2]);
  pts.push_back(mixed);
  auto methods = detail::applicable(s, n, o);
  if (methods.empty()) throw std::invalid_argument("no oracle applies to " + s.label + " at n = " + std::to_string(n));
  Chain local;
  for (auto meth : methods)
    if (meth == OracleMethod::montecarlo && !chain && n > 0) {
      local = ensemble_chain(s, n, o.mc);
      chain = &local;
    }
  bool all = true;
  for (auto& p : pts) {
    Scalar closed = s.family == Family::A
                        ? Scalar(typeA_average_product<Q>(s.beta, n, L, K, p))
                        : Scalar::approx(qt_average_product<double>(n, L, K, detail::to_doubles(p), s.q, s.t), 1e-12);
    for (auto meth : methods) {
      auto orc = oracle_average(s, n, typeA_statistic(L, K, p), meth, o.mc, chain);
      auto c = detail::make_check("formula", p, closed, orc, o.tol);
      all = all && c.match;
      rep.checks.push_back(c);
    }
  }
  rep.pass = all;
  rep.verdicts.push_back({"formula", all ? "match" : "mismatch"});
  rep.note = "max |closed-oracle| " + detail::summarize(rep.checks);
  return rep;
}

inline VerificationReport verify_identity(const EnsembleSpec& s, int n, int m, const VerifyOptions& o = {},
                                          const Chain* chain = nullptr) {
  return s.family == Family::BC ? verify_bc(s, n, m, o, chain) : verify_typeA(s, n, m, o, chain);
}

}  // namespace charmom
