#pragma once

// Sparse multivariate polynomials over Q in at most kMaxParams variables,
// with exact division and a recursive primitive-PRS gcd.

#include <algorithm>
#include <array>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "rational.hpp"

namespace charmom {

constexpr int kMaxParams = 4;
using PExp = std::array<int16_t, kMaxParams>;

class Poly {
 public:
  std::map<PExp, Q> terms;

  Poly() = default;
  Poly(const Q& c) {  // NOLINT
    if (sgn(c) != 0) terms[PExp{}] = c;
  }
  Poly(long c) : Poly(Q(c)) {}  // NOLINT

  static Poly var(int v, int power = 1) {
    Poly p;
    PExp e{};
    e[v] = static_cast<int16_t>(power);
    p.terms[e] = 1;
    return p;
  }
  static Poly monomial(const PExp& e, const Q& c) {
    Poly p;
    if (sgn(c) != 0) p.terms[e] = c;
    return p;
  }

  bool is_zero() const { return terms.empty(); }
  bool is_const() const {
    return terms.empty() || (terms.size() == 1 && terms.begin()->first == PExp{});
  }
  Q const_value() const {
    auto it = terms.find(PExp{});
    return it == terms.end() ? Q(0) : it->second;
  }
  const Q& lc() const { return terms.rbegin()->second; }
  const PExp& lexp() const { return terms.rbegin()->first; }

  int degree_in(int v) const {
    int d = -1;
    for (auto& [e, c] : terms) d = std::max<int>(d, e[v]);
    return d;
  }
  int top_var() const {
    int v = -1;
    for (auto& [e, c] : terms)
      for (int i = kMaxParams - 1; i > v; --i)
        if (e[i] != 0) {
          v = i;
          break;
        }
    return v;
  }
  // coefficient of x_v^d, as a polynomial free of x_v
  Poly coeff_in(int v, int d) const {
    Poly r;
    for (auto& [e, c] : terms)
      if (e[v] == d) {
        PExp f = e;
        f[v] = 0;
        r.terms[f] = c;
      }
    return r;
  }

  Poly& operator+=(const Poly& o) {
    for (auto& [e, c] : o.terms) add_term(e, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    for (auto& [e, c] : o.terms) add_term(e, -c);
    return *this;
  }
  Poly& operator*=(const Q& s) {
    if (sgn(s) == 0) {
      terms.clear();
      return *this;
    }
    for (auto& [e, c] : terms) c *= s;
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(Poly a) {
    for (auto& [e, c] : a.terms) c = -c;
    return a;
  }
  friend Poly operator*(Poly a, const Q& s) { return a *= s; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    for (auto& [ea, ca] : a.terms)
      for (auto& [eb, cb] : b.terms) {
        PExp e;
        for (int i = 0; i < kMaxParams; ++i) e[i] = static_cast<int16_t>(ea[i] + eb[i]);
        Q prod = ca * cb;
        r.add_term(e, prod);
      }
    return r;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  friend bool operator==(const Poly& a, const Poly& b) { return a.terms == b.terms; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  Poly shifted(int v, int k) const {
    Poly r;
    for (auto& [e, c] : terms) {
      PExp f = e;
      f[v] = static_cast<int16_t>(f[v] + k);
      r.terms[f] = c;
    }
    return r;
  }

  Poly pow(int k) const {
    Poly r(1), b = *this;
    while (k > 0) {
      if (k & 1) r *= b;
      b *= b;
      k >>= 1;
    }
    return r;
  }

  Poly swapped(int i, int j) const {
    Poly r;
    for (auto& [e, c] : terms) {
      PExp f = e;
      std::swap(f[i], f[j]);
      r.terms[f] = c;
    }
    return r;
  }

  template <class T>
  T eval(const std::vector<T>& pt) const {
    T s = T(0);
    for (auto& [e, c] : terms) {
      T m = to_t<T>(c);
      for (std::size_t i = 0; i < pt.size() && i < kMaxParams; ++i)
        for (int k = 0; k < e[i]; ++k) m *= pt[i];
      s += m;
    }
    return s;
  }

  std::string str(const std::vector<std::string>& names) const {
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
      const auto& [e, c] = *it;
      bool unit = (e != PExp{});
      Q a = abs(c);
      if (first) {
        if (sgn(c) < 0) os << "-";
      } else {
        os << (sgn(c) < 0 ? " - " : " + ");
      }
      first = false;
      bool wrote = false;
      if (!(unit && a == 1)) {
        os << a.get_str();
        wrote = true;
      }
      for (int i = 0; i < kMaxParams; ++i) {
        if (e[i] == 0) continue;
        if (wrote) os << "*";
        os << (i < static_cast<int>(names.size()) ? names[i] : "x" + std::to_string(i));
        if (e[i] != 1) os << "^" << e[i];
        wrote = true;
      }
    }
    return os.str();
  }

 private:
  template <class T>
  static T to_t(const Q& c) {
    if constexpr (std::is_same_v<T, Q>)
      return c;
    else
      return T(c.get_d());
  }
  void add_term(const PExp& e, const Q& c) {
    if (sgn(c) == 0) return;
    auto [it, fresh] = terms.try_emplace(e, c);
    if (!fresh) {
      it->second += c;
      if (sgn(it->second) == 0) terms.erase(it);
    }
  }
};

// Exact quotient a/b; throws when b does not divide a.
inline Poly divexact(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  if (b.is_const()) return a * (1 / b.const_value());
  Poly q, r = a;
  const PExp& be = b.lexp();
  Q bc = b.lc();
  while (!r.is_zero()) {
    PExp re = r.lexp();
    PExp d;
    for (int i = 0; i < kMaxParams; ++i) {
      d[i] = static_cast<int16_t>(re[i] - be[i]);
      if (d[i] < 0) throw std::domain_error("inexact polynomial division");
    }
    Q c = r.lc() / bc;
    Poly t = Poly::monomial(d, c);
    q += t;
    r -= t * b;
  }
  return q;
}

// a/b when b divides a exactly; false otherwise (a is left untouched)
inline bool try_divexact(const Poly& a, const Poly& b, Poly& quot) {
  if (b.is_zero()) return false;
  Poly q, r = a;
  const PExp& be = b.lexp();
  Q bc = b.lc();
  while (!r.is_zero()) {
    PExp re = r.lexp();
    PExp d;
    for (int i = 0; i < kMaxParams; ++i) {
      d[i] = static_cast<int16_t>(re[i] - be[i]);
      if (d[i] < 0) return false;
    }
    Poly t = Poly::monomial(d, r.lc() / bc);
    q += t;
    r -= t * b;
  }
  quot = std::move(q);
  return true;
}

inline Poly monic(const Poly& a) {
  if (a.is_zero()) return a;
  return a * (1 / a.lc());
}

Poly gcd(const Poly& a, const Poly& b);
Poly gcd_prs(const Poly& a, const Poly& b);

inline Poly content_in(const Poly& a, int v) {
  Poly g;
  for (int d = a.degree_in(v); d >= 0; --d) {
    Poly c = a.coeff_in(v, d);
    if (c.is_zero()) continue;
    g = gcd(g, c);
    if (g.is_const()) break;
  }
  return g;
}

// pseudo-remainder of a by b with respect to x_v
inline Poly prem(Poly r, const Poly& b, int v) {
  int db = b.degree_in(v);
  Poly lb = b.coeff_in(v, db);
  while (!r.is_zero()) {
    int dr = r.degree_in(v);
    if (dr < db) break;
    Poly lr = r.coeff_in(v, dr);
    r = lb * r - (lr * b).shifted(v, dr - db);
  }
  return r;
}

inline Poly gcd_prs(const Poly& a, const Poly& b) {
  if (a.is_zero()) return monic(b);
  if (b.is_zero()) return monic(a);
  if (a.is_const() || b.is_const()) return Poly(1);
  int v = std::max(a.top_var(), b.top_var());
  if (a.degree_in(v) <= 0) return gcd(a, content_in(b, v));
  if (b.degree_in(v) <= 0) return gcd(content_in(a, v), b);
  Poly ca = content_in(a, v), cb = content_in(b, v);
  Poly pa = divexact(a, ca), pb = divexact(b, cb);
  Poly c = gcd(ca, cb);
  if (pa.degree_in(v) < pb.degree_in(v)) std::swap(pa, pb);
  Poly g;
  for (;;) {
    Poly r = prem(pa, pb, v);
    if (r.is_zero()) {
      g = pb;
      break;
    }
    if (r.degree_in(v) <= 0) {
      g = Poly(1);
      break;
    }
    pa = std::move(pb);
    pb = monic(divexact(r, content_in(r, v)));
  }
  return monic(c * g);
}


namespace detail {

using UPoly = std::vector<Q>;  // dense, index = degree

inline void trim(UPoly& a) {
  while (!a.empty() && sgn(a.back()) == 0) a.pop_back();
}

inline UPoly upoly(const Poly& p, int v) {
  UPoly r;
  for (auto& [e, c] : p.terms) {
    if (static_cast<int>(r.size()) <= e[v]) r.resize(e[v] + 1, Q(0));
    r[e[v]] = c;
  }
  return r;
}

inline Poly from_upoly(const UPoly& a, int v) {
  Poly r;
  for (std::size_t i = 0; i < a.size(); ++i) {
    PExp e{};
    e[v] = static_cast<int16_t>(i);
    r += Poly::monomial(e, a[i]);
  }
  return r;
}

// monic gcd over Q by Euclid with monic remainders
inline UPoly ugcd(UPoly a, UPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Q inv = 1 / b.back();
    for (auto& c : b) c *= inv;
    while (a.size() >= b.size()) {
      Q f = a.back();
      std::size_t sh = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) a[sh + i] -= f * b[i];
      a.pop_back();
      trim(a);
    }
    std::swap(a, b);
  }
  if (!a.empty()) {
    Q inv = 1 / a.back();
    for (auto& c : a) c *= inv;
  }
  return a;
}

inline Q ueval(const UPoly& a, const Q& x) {
  Q s = 0;
  for (std::size_t i = a.size(); i-- > 0;) s = s * x + a[i];
  return s;
}

// substitute x_v = val
inline Poly eval_var(const Poly& p, int v, const Q& val) {
  Poly r;
  std::vector<Q> pw{Q(1)};
  for (auto& [e, c] : p.terms) {
    while (static_cast<int>(pw.size()) <= e[v]) pw.push_back(pw.back() * val);
    PExp f = e;
    f[v] = 0;
    r += Poly::monomial(f, c * pw[e[v]]);
  }
  return r;
}

// Newton interpolation through (xs[i], ys[i])
inline UPoly interpolate(const std::vector<Q>& xs, std::vector<Q> ys) {
  std::size_t n = xs.size();
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = n - 1; i >= j; --i) ys[i] = (ys[i] - ys[i - 1]) / (xs[i] - xs[i - j]);
  UPoly r{ys[n - 1]};
  for (std::size_t k = n - 1; k-- > 0;) {
    UPoly next(r.size() + 1, Q(0));
    for (std::size_t i = 0; i < r.size(); ++i) {
      next[i + 1] += r[i];
      next[i] -= r[i] * xs[k];
    }
    next[0] += ys[k];
    r = std::move(next);
  }
  trim(r);
  return r;
}

}  // namespace detail

// gcd in Q[x_0..]: dense univariate Euclid, evaluation/interpolation in two
// variables, primitive PRS beyond that. Result is monic in lex order.
inline Poly gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return monic(b);
  if (b.is_zero()) return monic(a);
  if (a.is_const() || b.is_const()) return Poly(1);
  std::vector<int> vars;
  for (int v = 0; v < kMaxParams; ++v)
    if (a.degree_in(v) > 0 || b.degree_in(v) > 0) vars.push_back(v);
  if (vars.size() == 1) {
    int v = vars[0];
    return detail::from_upoly(detail::ugcd(detail::upoly(a, v), detail::upoly(b, v)), v);
  }
  if (vars.size() > 2) return gcd_prs(a, b);
  int x = vars[0], y = vars[1];
  if (a.degree_in(y) <= 0) return gcd(a, content_in(b, y));
  if (b.degree_in(y) <= 0) return gcd(content_in(a, y), b);
  Poly ca = content_in(a, y), cb = content_in(b, y);
  Poly pa = divexact(a, ca), pb = divexact(b, cb);
  Poly c = gcd(ca, cb);
  Poly la = pa.coeff_in(y, pa.degree_in(y)), lb = pb.coeff_in(y, pb.degree_in(y));
  detail::UPoly gam = detail::upoly(gcd(la, lb), x);
  Q gscale = 1 / gam.back();
  for (auto& v : gam) v *= gscale;
  int need = static_cast<int>(gam.size()) - 1 + std::min(pa.degree_in(x), pb.degree_in(x)) + 1;
  int best = std::min(pa.degree_in(y), pb.degree_in(y)) + 1;
  std::vector<Q> xs;
  std::vector<detail::UPoly> images;
  for (int k = 1; k < 4 * need + 40; ++k) {
    Q xv = (k % 2) ? Q((k + 1) / 2) : Q(-(k / 2));
    if (sgn(detail::ueval(detail::upoly(la, x), xv)) == 0 || sgn(detail::ueval(detail::upoly(lb, x), xv)) == 0)
      continue;
    auto g = detail::ugcd(detail::upoly(detail::eval_var(pa, x, xv), y), detail::upoly(detail::eval_var(pb, x, xv), y));
    int dg = static_cast<int>(g.size()) - 1;
    if (dg == 0) return c;  // primitive parts are coprime
    if (dg > best) continue;
    if (dg < best) {
      best = dg;
      xs.clear();
      images.clear();
    }
    Q s = detail::ueval(gam, xv);
    for (auto& v : g) v *= s;
    xs.push_back(xv);
    images.push_back(std::move(g));
    if (static_cast<int>(xs.size()) < need) continue;
    Poly h;
    for (int j = 0; j <= best; ++j) {
      std::vector<Q> ys;
      for (auto& im : images) ys.push_back(im[j]);
      auto cj = detail::interpolate(xs, ys);
      for (std::size_t i = 0; i < cj.size(); ++i) {
        PExp e{};
        e[x] = static_cast<int16_t>(i);
        e[y] = static_cast<int16_t>(j);
        h += Poly::monomial(e, cj[i]);
      }
    }
    h = divexact(h, content_in(h, y));
    Poly qa, qb;
    if (try_divexact(pa, h, qa) && try_divexact(pb, h, qb)) return monic(c * h);
  }
  return gcd_prs(a, b);
}

}  // namespace charmom
