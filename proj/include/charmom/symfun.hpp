#pragma once

// Type-A symmetric functions: monomial and power-sum bases, Macdonald and
// Jack polynomials by Gram-Schmidt, hook products and specializations.

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "laurent.hpp"
#include "linalg.hpp"
#include "partition.hpp"

namespace charmom {

enum class Basis { monomialA, powersum };

template <class F>
struct SymmetricElement {
  Basis basis = Basis::monomialA;
  int degree = 0;
  std::map<Partition, F> coeffs;

  F coeff(const Partition& p) const {
    auto it = coeffs.find(p);
    return it == coeffs.end() ? Field<F>::from_q(0) : it->second;
  }
};

// ---- transition matrices between p and m ----------------------------------

struct Transition {
  std::vector<Partition> parts;
  std::map<Partition, int> index;
  Matrix<Q> p_to_m;  // p_rho = sum_mu p_to_m[rho][mu] m_mu
  Matrix<Q> m_to_p;  // m_mu = sum_rho m_to_p[mu][rho] p_rho
};

namespace detail {
inline long count_fillings(const std::vector<int>& rho, std::size_t k, std::vector<int>& room) {
  if (k == rho.size()) {
    for (int r : room)
      if (r) return 0;
    return 1;
  }
  long s = 0;
  for (auto& r : room)
    if (r >= rho[k]) {
      r -= rho[k];
      s += count_fillings(rho, k + 1, room);
      r += rho[k];
    }
  return s;
}
}  // namespace detail

inline const Transition& transition(int d) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<Transition>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[d];
  if (!slot) {
    auto t = std::make_unique<Transition>();
    t->parts = partitions_of(d);
    for (std::size_t i = 0; i < t->parts.size(); ++i) t->index[t->parts[i]] = static_cast<int>(i);
    std::size_t n = t->parts.size();
    t->p_to_m.assign(n, std::vector<Q>(n, Q(0)));
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) {
        std::vector<int> room = t->parts[c].parts();
        t->p_to_m[r][c] = detail::count_fillings(t->parts[r].parts(), 0, room);
      }
    t->m_to_p = inverse(t->p_to_m);
    slot = std::move(t);
  }
  return *slot;
}

template <class F>
SymmetricElement<F> powersum_to_monomial(const SymmetricElement<F>& p) {
  if (p.basis != Basis::powersum) throw std::invalid_argument("expected power-sum basis");
  const auto& T = transition(p.degree);
  SymmetricElement<F> r{Basis::monomialA, p.degree, {}};
  for (auto& [rho, c] : p.coeffs)
    for (std::size_t j = 0; j < T.parts.size(); ++j) {
      const Q& t = T.p_to_m[T.index.at(rho)][j];
      if (sgn(t) == 0) continue;
      F term = c * Field<F>::from_q(t);
      auto [it, fresh] = r.coeffs.try_emplace(T.parts[j], term);
      if (!fresh) it->second += term;
    }
  std::erase_if(r.coeffs, [](auto& kv) { return Field<F>::is_zero(kv.second); });
  return r;
}

template <class F>
SymmetricElement<F> monomial_to_powersum(const SymmetricElement<F>& m) {
  if (m.basis != Basis::monomialA) throw std::invalid_argument("expected monomial basis");
  const auto& T = transition(m.degree);
  SymmetricElement<F> r{Basis::powersum, m.degree, {}};
  for (auto& [mu, c] : m.coeffs)
    for (std::size_t j = 0; j < T.parts.size(); ++j) {
      const Q& t = T.m_to_p[T.index.at(mu)][j];
      if (sgn(t) == 0) continue;
      F term = c * Field<F>::from_q(t);
      auto [it, fresh] = r.coeffs.try_emplace(T.parts[j], term);
      if (!fresh) it->second += term;
    }
  std::erase_if(r.coeffs, [](auto& kv) { return Field<F>::is_zero(kv.second); });
  return r;
}

// ---- small generic helpers ----------------------------------------------

template <class T>
T ipow(const T& x, int k) {
  T r = T(1);
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

template <class T>
T c_lambda(const Partition& lam, const T& q, const T& t) {
  T r = T(1);
  for (auto& s : lam.cells()) r *= T(1) - ipow(q, s.a) * ipow(t, s.l + 1);
  return r;
}

template <class T>
T c_prime_lambda(const Partition& lam, const T& q, const T& t) {
  T r = T(1);
  for (auto& s : lam.cells()) r *= T(1) - ipow(q, s.a + 1) * ipow(t, s.l);
  return r;
}

inline std::pair<RationalFunction, RationalFunction> c_products(const Partition& lam) {
  auto q = RationalFunction::param(params_qt(), "q");
  auto t = RationalFunction::param(params_qt(), "t");
  return {c_lambda(lam, q, t), c_prime_lambda(lam, q, t)};
}

// (a)_lambda^{(q,t)} = prod_s (t^{l'(s)} - q^{a'(s)} a)
template <class T>
T gen_factorial_qt(const T& a, const Partition& lam, const T& q, const T& t) {
  T r = T(1);
  for (auto& s : lam.cells()) r *= ipow(t, s.lp) - ipow(q, s.ap) * a;
  return r;
}

// epsilon_{u,t}: p_r -> (1-u^r)/(1-t^r), f in either basis
template <class F>
F epsilon_specialize(const SymmetricElement<F>& f, const F& u, const F& t) {
  SymmetricElement<F> p = f.basis == Basis::powersum ? f : monomial_to_powersum(f);
  F s = Field<F>::from_q(0);
  for (auto& [rho, c] : p.coeffs) {
    F term = c;
    for (int r : rho.parts()) term *= (F(1) - ipow(u, r)) / (F(1) - ipow(t, r));
    s += term;
  }
  return s;
}

// ---- evaluation in finitely many variables -------------------------------

template <class T>
T monomial_eval(const Partition& mu, const std::vector<T>& x) {
  int n = static_cast<int>(x.size());
  if (mu.length() > n) return T(0);
  std::vector<int> e(n, 0);
  for (int i = 0; i < mu.length(); ++i) e[i] = mu.parts()[i];
  std::sort(e.begin(), e.end());
  T s = T(0);
  do {
    T term = T(1);
    for (int i = 0; i < n; ++i) term *= ipow(x[i], e[i]);
    s += term;
  } while (std::next_permutation(e.begin(), e.end()));
  return s;
}

template <class T, class F, class Conv>
T evaluate(const SymmetricElement<F>& f, const std::vector<T>& x, Conv conv) {
  SymmetricElement<F> m = f.basis == Basis::monomialA ? f : powersum_to_monomial(f);
  T s = T(0);
  for (auto& [mu, c] : m.coeffs) {
    if (mu.length() > static_cast<int>(x.size())) continue;
    s += conv(c) * monomial_eval(mu, x);
  }
  return s;
}

template <class T, class F>
T evaluate(const SymmetricElement<F>& f, const std::vector<T>& x) {
  return evaluate(f, x, [](const F& c) { return T(c); });
}

// restriction to n variables as a Laurent polynomial
template <class F>
Laurent<F> to_laurent(const SymmetricElement<F>& f, int n) {
  SymmetricElement<F> m = f.basis == Basis::monomialA ? f : powersum_to_monomial(f);
  Laurent<F> r(n);
  for (auto& [mu, c] : m.coeffs) {
    if (mu.length() > n) continue;
    std::vector<int> e(n, 0);
    for (int i = 0; i < mu.length(); ++i) e[i] = mu.parts()[i];
    std::sort(e.begin(), e.end());
    do {
      LExp x{};
      for (int i = 0; i < n; ++i) x[i] = static_cast<int16_t>(e[i]);
      r.add(x, c);
    } while (std::next_permutation(e.begin(), e.end()));
  }
  return r;
}

// ---- inner products and the Gram-Schmidt engine --------------------------

// <p_rho, p_rho> = z_rho * prod_i w(rho_i)
template <class F>
struct PowerSumProduct {
  std::function<F(int)> part_weight;

  F weight(const Partition& rho) const {
    F w = Field<F>::from_q(z_lambda(rho));
    for (int r : rho.parts()) w *= part_weight(r);
    return w;
  }
};

inline PowerSumProduct<RationalFunction> qt_product_formal() {
  auto q = RationalFunction::param(params_qt(), "q");
  auto t = RationalFunction::param(params_qt(), "t");
  return {[q, t](int k) { return (RationalFunction(1) - q.pow(k)) / (RationalFunction(1) - t.pow(k)); }};
}

inline PowerSumProduct<RationalFunction> jack_product_formal() {
  auto a = RationalFunction::param(params_alpha(), "alpha");
  return {[a](int) { return a; }};
}

template <class F>
PowerSumProduct<F> qt_product(const F& q, const F& t) {
  return {[q, t](int k) -> F { return (F(1) - ipow(q, k)) / (F(1) - ipow(t, k)); }};
}

inline PowerSumProduct<double> qt_product_d(double q, double t) {
  // 1 - q^k via expm1 keeps precision as q -> 1
  return {[q, t](int k) {
    double a = -std::expm1(k * std::log(q)), b = -std::expm1(k * std::log(t));
    return a / b;
  }};
}

template <class F>
PowerSumProduct<F> jack_product(const F& alpha) {
  return {[alpha](int) { return alpha; }};
}

template <class F>
F inner_product(const SymmetricElement<F>& f, const SymmetricElement<F>& g, const PowerSumProduct<F>& ip) {
  if (f.degree != g.degree) return Field<F>::from_q(0);
  auto fp = f.basis == Basis::powersum ? f : monomial_to_powersum(f);
  auto gp = g.basis == Basis::powersum ? g : monomial_to_powersum(g);
  F s = Field<F>::from_q(0);
  for (auto& [rho, c] : fp.coeffs) {
    auto it = gp.coeffs.find(rho);
    if (it != gp.coeffs.end()) s += c * it->second * ip.weight(rho);
  }
  return s;
}

template <class F>
class SymEngine {
 public:
  explicit SymEngine(PowerSumProduct<F> ip) : ip_(std::move(ip)) {}

  // Coefficients of P_lambda in the monomial basis, indexed like transition(d).parts.
  std::vector<F> P_vector(const Partition& lam) {
    std::lock_guard<std::mutex> lock(mu_);
    return build(lam);
  }

  SymmetricElement<F> P(const Partition& lam) {
    auto v = P_vector(lam);
    const auto& T = transition(lam.weight());
    SymmetricElement<F> r{Basis::monomialA, lam.weight(), {}};
    for (std::size_t i = 0; i < v.size(); ++i)
      if (!Field<F>::is_zero(v[i])) r.coeffs[T.parts[i]] = v[i];
    return r;
  }

  // <P_lambda, P_lambda>
  F norm2(const Partition& lam) {
    std::lock_guard<std::mutex> lock(mu_);
    build(lam);
    return degree(lam.weight()).norm.at(lam);
  }

  const PowerSumProduct<F>& product() const { return ip_; }

 private:
  struct Deg {
    bool gram_ready = false;
    Matrix<F> gram;
    std::map<Partition, std::vector<F>> P;
    std::map<Partition, F> norm;
  };
  PowerSumProduct<F> ip_;
  std::map<int, Deg> cache_;
  std::mutex mu_;

  Deg& degree(int d) {
    Deg& D = cache_[d];
    if (!D.gram_ready) {
      const auto& T = transition(d);
      std::size_t n = T.parts.size();
      std::vector<F> w;
      for (auto& rho : T.parts) w.push_back(ip_.weight(rho));
      D.gram.assign(n, std::vector<F>(n, Field<F>::from_q(0)));
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a; b < n; ++b) {
          F s = Field<F>::from_q(0);
          for (std::size_t r = 0; r < n; ++r) {
            Q c = T.m_to_p[a][r] * T.m_to_p[b][r];
            if (sgn(c) != 0) s += Field<F>::from_q(c) * w[r];
          }
          D.gram[a][b] = s;
          D.gram[b][a] = s;
        }
      D.gram_ready = true;
    }
    return D;
  }

  F gram_form(const Deg& D, const std::vector<F>& a, const std::vector<F>& b) const {
    F s = Field<F>::from_q(0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (Field<F>::is_zero(a[i])) continue;
      F row = Field<F>::from_q(0);
      for (std::size_t j = 0; j < b.size(); ++j)
        if (!Field<F>::is_zero(b[j])) row += D.gram[i][j] * b[j];
      s += a[i] * row;
    }
    return s;
  }

  const std::vector<F>& build(const Partition& lam) {
    int d = lam.weight();
    Deg& D = degree(d);
    auto it = D.P.find(lam);
    if (it != D.P.end()) return it->second;
    const auto& T = transition(d);
    std::size_t n = T.parts.size(), li = T.index.at(lam);
    std::vector<F> v(n, Field<F>::from_q(0));
    v[li] = Field<F>::from_q(1);
    std::vector<F> e = v;
    // classic Gram-Schmidt against the strictly dominated P_mu
    for (std::size_t j = 0; j < li; ++j) {
      const Partition& mu = T.parts[j];
      if (!dominance_leq_A(mu, lam)) continue;
      const std::vector<F>& pm = build(mu);
      F c = gram_form(D, e, pm) / D.norm.at(mu);
      if (Field<F>::is_zero(c)) continue;
      for (std::size_t k = 0; k < n; ++k)
        if (!Field<F>::is_zero(pm[k])) v[k] -= c * pm[k];
    }
    D.norm[lam] = gram_form(D, v, v);
    return D.P[lam] = std::move(v);
  }
};

inline SymEngine<RationalFunction>& macdonald_engine() {
  static SymEngine<RationalFunction> e(qt_product_formal());
  return e;
}

inline SymEngine<RationalFunction>& jack_engine() {
  static SymEngine<RationalFunction> e(jack_product_formal());
  return e;
}

inline SymmetricElement<RationalFunction> macdonald_P(const Partition& lam) { return macdonald_engine().P(lam); }

inline RationalFunction macdonald_norm2(const Partition& lam) { return macdonald_engine().norm2(lam); }

inline SymmetricElement<RationalFunction> jack_P(const Partition& lam) { return jack_engine().P(lam); }

// numeric parameters: Gram-Schmidt in the given field
template <class F>
SymmetricElement<F> macdonald_P(const Partition& lam, const F& q, const F& t) {
  SymEngine<F> e(qt_product(q, t));
  return e.P(lam);
}

template <class F>
SymmetricElement<F> jack_P(const Partition& lam, const F& alpha) {
  SymEngine<F> e(jack_product(alpha));
  return e.P(lam);
}

inline SymmetricElement<RationalFunction> macdonald_Q(const Partition& lam) {
  auto P = macdonald_P(lam);
  auto [c, cp] = c_products(lam);
  RationalFunction f = c / cp;
  for (auto& [mu, v] : P.coeffs) v *= f;
  return P;
}

// Sum_{|lambda|<=cap} P_lambda(x;q,t) P_lambda'(y;t,q) == prod (1 + x_i y_j), degree-truncated.
inline bool dual_cauchy_check(int cap, int nx, int ny) {
  int nv = nx + ny;
  std::vector<int> xmap(nx), ymap(ny);
  for (int i = 0; i < nx; ++i) xmap[i] = i;
  for (int j = 0; j < ny; ++j) ymap[j] = nx + j;
  Laurent<RationalFunction> lhs(nv);
  for (int d = 0; d <= cap; ++d)
    for (auto& lam : partitions_of(d)) {
      if (lam.length() > nx || lam.conjugate().length() > ny) continue;
      auto Px = to_laurent(macdonald_P(lam), nx).embedded(nv, xmap);
      auto Pl = macdonald_P(lam.conjugate());
      for (auto& [mu, c] : Pl.coeffs) c = c.swapped("q", "t");
      auto Py = to_laurent(Pl, ny).embedded(nv, ymap);
      lhs += Px * Py;
    }
  Laurent<RationalFunction> rhs(nv, RationalFunction(1));
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j) {
      Laurent<RationalFunction> f(nv, RationalFunction(1));
      LExp e{};
      e[i] = 1;
      e[nx + j] = 1;
      f.add(e, RationalFunction(1));
      rhs *= f;
    }
  Laurent<RationalFunction> trunc(nv);
  for (auto& [e, c] : rhs.terms()) {
    int deg = 0;
    for (int i = 0; i < nx; ++i) deg += e[i];
    if (deg <= cap) trunc.add(e, c);
  }
  return lhs == trunc;
}

}  // namespace charmom
