#pragma once

// Multivariate Laurent polynomials with dense exponent keys.

#include <array>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "field.hpp"

namespace charmom {

constexpr int kMaxVars = 8;
using LExp = std::array<int16_t, kMaxVars>;

template <class C>
class Laurent {
 public:
  Laurent() = default;
  explicit Laurent(int nvars) : nvars_(nvars) { check_nvars(); }
  Laurent(int nvars, const C& c) : nvars_(nvars) {
    check_nvars();
    if (!Field<C>::is_zero(c)) terms_[LExp{}] = c;
  }

  static Laurent var(int nvars, int v, int power = 1) {
    Laurent p(nvars);
    LExp e{};
    e[v] = static_cast<int16_t>(power);
    p.terms_[e] = Field<C>::from_q(1);
    return p;
  }
  static Laurent monomial(int nvars, const LExp& e, const C& c) {
    Laurent p(nvars);
    p.add(e, c);
    return p;
  }

  int nvars() const { return nvars_; }
  const std::map<LExp, C>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  void set_names(std::vector<std::string> names) {
    if (static_cast<int>(names.size()) != nvars_) throw std::invalid_argument("name count");
    names_ = std::make_shared<const std::vector<std::string>>(std::move(names));
  }
  std::vector<std::string> names() const {
    if (names_) return *names_;
    std::vector<std::string> r;
    for (int i = 0; i < nvars_; ++i) r.push_back("z" + std::to_string(i + 1));
    return r;
  }

  void add(const LExp& e, const C& c) {
    if (Field<C>::is_zero(c)) return;
    auto [it, fresh] = terms_.try_emplace(e, c);
    if (!fresh) {
      it->second += c;
      if (Field<C>::is_zero(it->second)) terms_.erase(it);
    }
  }

  C coeff(const LExp& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Field<C>::from_q(0) : it->second;
  }
  C constant_term() const { return coeff(LExp{}); }

  Laurent& operator+=(const Laurent& o) {
    check_compatible(o);
    for (auto& [e, c] : o.terms_) add(e, c);
    return *this;
  }
  Laurent& operator-=(const Laurent& o) {
    check_compatible(o);
    for (auto& [e, c] : o.terms_) add(e, -c);
    return *this;
  }
  Laurent& operator*=(const C& s) {
    if (Field<C>::is_zero(s)) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }
  friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
  friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
  friend Laurent operator*(Laurent a, const C& s) { return a *= s; }
  friend Laurent operator*(const Laurent& a, const Laurent& b) {
    a.check_compatible(b);
    Laurent r(a.nvars_);
    r.names_ = a.names_ ? a.names_ : b.names_;
    for (auto& [ea, ca] : a.terms_)
      for (auto& [eb, cb] : b.terms_) {
        LExp e;
        for (int i = 0; i < kMaxVars; ++i) e[i] = static_cast<int16_t>(ea[i] + eb[i]);
        C prod = ca * cb;
        r.add(e, prod);
      }
    return r;
  }
  Laurent& operator*=(const Laurent& o) { return *this = *this * o; }
  friend bool operator==(const Laurent& a, const Laurent& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  Laurent pow(int k) const {
    Laurent r(nvars_, Field<C>::from_q(1)), b = *this;
    r.names_ = names_;
    while (k > 0) {
      if (k & 1) r *= b;
      k >>= 1;
      if (k) b *= b;
    }
    return r;
  }

  // f(z) -> f(z^{-1})
  Laurent reflected() const {
    Laurent r(nvars_);
    r.names_ = names_;
    for (auto& [e, c] : terms_) {
      LExp f;
      for (int i = 0; i < kMaxVars; ++i) f[i] = static_cast<int16_t>(-e[i]);
      r.terms_[f] = c;
    }
    return r;
  }

  // Embed into a larger variable set: variable i goes to slot map[i].
  Laurent embedded(int nvars, const std::vector<int>& map) const {
    Laurent r(nvars);
    for (auto& [e, c] : terms_) {
      LExp f{};
      for (int i = 0; i < nvars_; ++i) f[map[i]] = e[i];
      r.add(f, c);
    }
    return r;
  }

  template <class T>
  T evaluate(const std::vector<T>& pt) const {
    if (static_cast<int>(pt.size()) != nvars_) throw std::invalid_argument("unassigned variable");
    T s = T(0);
    for (auto& [e, c] : terms_) {
      T m = convert<T>(c);
      for (int i = 0; i < nvars_; ++i) {
        if (e[i] == 0) continue;
        if (e[i] < 0 && pt[i] == T(0)) throw std::domain_error("zero value for a variable with negative exponent");
        m *= ipow(pt[i], e[i]);
      }
      s += m;
    }
    return s;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    auto nm = names();
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      if (!first) os << " + ";
      first = false;
      os << "(" << Field<C>::str(it->second) << ")";
      for (int i = 0; i < nvars_; ++i) {
        if (it->first[i] == 0) continue;
        os << "*" << nm[i];
        if (it->first[i] != 1) os << "^" << it->first[i];
      }
    }
    return os.str();
  }

 private:
  int nvars_ = 0;
  std::map<LExp, C> terms_;
  std::shared_ptr<const std::vector<std::string>> names_;

  void check_nvars() const {
    if (nvars_ < 0 || nvars_ > kMaxVars) throw std::invalid_argument("too many Laurent variables");
  }
  void check_compatible(const Laurent& o) const {
    if (nvars_ != o.nvars_) throw std::invalid_argument("variable-set mismatch");
    if (names_ && o.names_ && *names_ != *o.names_) throw std::invalid_argument("variable-set mismatch");
  }
  template <class T>
  static T ipow(const T& x, int e) {
    if (e < 0) return T(1) / ipow(x, -e);
    T r = T(1), b = x;
    while (e > 0) {
      if (e & 1) r *= b;
      e >>= 1;
      if (e) b *= b;
    }
    return r;
  }
  template <class T>
  static T convert(const C& c) {
    if constexpr (std::is_same_v<T, C>)
      return c;
    else if constexpr (std::is_same_v<C, Q>)
      return T(c.get_d());
    else
      return T(c);
  }
};

template <class C>
C constant_term(const Laurent<C>& f) {
  return f.constant_term();
}

// CT[f * g] without forming the product.
template <class C>
C constant_term_of_product(const Laurent<C>& f, const Laurent<C>& g) {
  const Laurent<C>& small = f.size() <= g.size() ? f : g;
  const Laurent<C>& big = f.size() <= g.size() ? g : f;
  C s = Field<C>::from_q(0);
  for (auto& [e, c] : small.terms()) {
    LExp m;
    for (int i = 0; i < kMaxVars; ++i) m[i] = static_cast<int16_t>(-e[i]);
    auto it = big.terms().find(m);
    if (it != big.terms().end()) s += c * it->second;
  }
  return s;
}

// CT[W(z) * prod_j f(z_j)] for a univariate Laurent factor f given as
// exponent -> coefficient; avoids expanding the product.
template <class C>
C constant_term_with_factor(const Laurent<C>& w, const std::map<int, C>& f) {
  C s = Field<C>::from_q(0);
  for (auto& [e, c] : w.terms()) {
    C term = c;
    bool zero = false;
    for (int i = 0; i < w.nvars(); ++i) {
      auto it = f.find(-e[i]);
      if (it == f.end()) {
        zero = true;
        break;
      }
      term *= it->second;
    }
    if (!zero) s += term;
  }
  return s;
}

// univariate helpers: product of factors given as exponent maps
template <class C>
std::map<int, C> univariate_mul(const std::map<int, C>& a, const std::map<int, C>& b) {
  std::map<int, C> r;
  for (auto& [ea, ca] : a)
    for (auto& [eb, cb] : b) {
      C prod = ca * cb;
      auto [it, fresh] = r.try_emplace(ea + eb, prod);
      if (!fresh) it->second += prod;
    }
  for (auto it = r.begin(); it != r.end();) {
    if (Field<C>::is_zero(it->second))
      it = r.erase(it);
    else
      ++it;
  }
  return r;
}

}  // namespace charmom
