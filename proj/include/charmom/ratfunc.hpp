#pragma once

#include <memory>
#include <string>
#include <vector>

#include "poly.hpp"

namespace charmom {

// Named formal parameters of a coefficient field, e.g. {q,t} or {alpha}.
struct ParamSet {
  std::vector<std::string> names;
  int index(const std::string& n) const {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == n) return static_cast<int>(i);
    return -1;
  }
};

inline std::shared_ptr<const ParamSet> make_params(std::vector<std::string> names) {
  if (names.size() > kMaxParams) throw std::invalid_argument("too many formal parameters");
  return std::make_shared<const ParamSet>(ParamSet{std::move(names)});
}
inline const std::shared_ptr<const ParamSet>& params_qt() {
  static auto p = make_params({"q", "t"});
  return p;
}
inline const std::shared_ptr<const ParamSet>& params_alpha() {
  static auto p = make_params({"alpha"});
  return p;
}
inline const std::shared_ptr<const ParamSet>& params_u() {
  static auto p = make_params({"u"});
  return p;
}
inline const std::shared_ptr<const ParamSet>& params_qtu() {
  static auto p = make_params({"q", "t", "u"});
  return p;
}

class RationalFunction {
 public:
  RationalFunction() : den_(1) {}
  RationalFunction(const Q& c) : num_(c), den_(1) {}  // NOLINT
  RationalFunction(long c) : num_(Q(c)), den_(1) {}   // NOLINT
  RationalFunction(Poly num, Poly den, std::shared_ptr<const ParamSet> ps)
      : num_(std::move(num)), den_(std::move(den)), ps_(std::move(ps)) {
    reduce();
  }

  static RationalFunction param(const std::shared_ptr<const ParamSet>& ps, const std::string& n) {
    int i = ps->index(n);
    if (i < 0) throw std::invalid_argument("unknown parameter " + n);
    return RationalFunction(Poly::var(i), Poly(1), ps);
  }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  const std::shared_ptr<const ParamSet>& params() const { return ps_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_const() const { return num_.is_const() && den_.is_const(); }
  Q const_value() const { return num_.const_value() / den_.const_value(); }

  RationalFunction& operator+=(const RationalFunction& o) {
    adopt(o);
    if (o.num_.is_zero()) return *this;
    if (num_.is_zero()) {
      num_ = o.num_;
      den_ = o.den_;
      return *this;
    }
    // both operands are reduced, so only the shared part of the denominators can cancel
    Poly g = den_ == o.den_ ? den_ : gcd(den_, o.den_);
    Poly b1 = divexact(den_, g), d1 = divexact(o.den_, g);
    num_ = num_ * d1 + o.num_ * b1;
    if (num_.is_zero()) {
      den_ = Poly(1);
      return *this;
    }
    Poly h = gcd(num_, g);
    if (!h.is_const()) {
      num_ = divexact(num_, h);
      g = divexact(g, h);
    }
    den_ = b1 * d1 * g;
    normalize();
    return *this;
  }
  RationalFunction& operator-=(const RationalFunction& o) { return *this += -o; }
  RationalFunction& operator*=(const RationalFunction& o) {
    adopt(o);
    // cross-cancel first so the products stay small
    Poly g1 = gcd(num_, o.den_), g2 = gcd(o.num_, den_);
    num_ = divexact(num_, g1) * divexact(o.num_, g2);
    den_ = divexact(den_, g2) * divexact(o.den_, g1);
    normalize();
    return *this;
  }
  RationalFunction& operator/=(const RationalFunction& o) { return *this *= o.inverse(); }

  RationalFunction inverse() const {
    if (num_.is_zero()) throw std::domain_error("rational function division by zero");
    RationalFunction r = *this;
    std::swap(r.num_, r.den_);
    r.normalize();
    return r;
  }

  friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
  friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
  friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
  friend RationalFunction operator/(RationalFunction a, const RationalFunction& b) { return a /= b; }
  friend RationalFunction operator-(RationalFunction a) {
    a.num_ = -a.num_;
    return a;
  }
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }

  RationalFunction pow(int k) const {
    if (k < 0) return inverse().pow(-k);
    RationalFunction r;
    r.num_ = num_.pow(k);
    r.den_ = den_.pow(k);
    r.ps_ = ps_;
    return r;
  }

  // exchange two parameters, e.g. (q,t) -> (t,q)
  RationalFunction swapped(const std::string& a, const std::string& b) const {
    if (!ps_) return *this;
    int i = ps_->index(a), j = ps_->index(b);
    RationalFunction r;
    r.num_ = num_.swapped(i, j);
    r.den_ = den_.swapped(i, j);
    r.ps_ = ps_;
    r.normalize();
    return r;
  }

  template <class T>
  T eval(const std::vector<T>& pt) const {
    T d = den_.eval(pt);
    if (d == T(0)) throw std::domain_error("rational function denominator vanishes at point");
    return num_.eval(pt) / d;
  }
  double eval_d(const std::vector<double>& pt) const { return eval(pt); }

  std::string str() const {
    std::vector<std::string> names = ps_ ? ps_->names : std::vector<std::string>{};
    if (den_.is_const() && den_.const_value() == 1) return num_.str(names);
    std::string n = num_.str(names), d = den_.str(names);
    bool nc = num_.terms.size() > 1, dc = den_.terms.size() > 1;
    return (nc ? "(" + n + ")" : n) + "/" + (dc ? "(" + d + ")" : d);
  }

 private:
  Poly num_, den_;
  std::shared_ptr<const ParamSet> ps_;

  void adopt(const RationalFunction& o) {
    if (!o.ps_) return;
    if (!ps_) {
      ps_ = o.ps_;
    } else if (ps_ != o.ps_ && ps_->names != o.ps_->names) {
      if (!is_const() && !o.is_const()) throw std::invalid_argument("parameter-set mismatch");
      if (is_const()) ps_ = o.ps_;
    }
  }
  void reduce() {
    if (den_.is_zero()) throw std::domain_error("zero denominator");
    if (num_.is_zero()) {
      den_ = Poly(1);
      return;
    }
    if (!den_.is_const()) {
      Poly g = gcd(num_, den_);
      if (!g.is_const()) {
        num_ = divexact(num_, g);
        den_ = divexact(den_, g);
      }
    }
    normalize();
  }
  void normalize() {
    if (num_.is_zero()) {
      den_ = Poly(1);
      return;
    }
    Q s = 1 / den_.lc();
    num_ *= s;
    den_ *= s;
  }
};

}  // namespace charmom
