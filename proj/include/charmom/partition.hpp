#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "rational.hpp"

namespace charmom {

class Partition {
 public:
  Partition() = default;
  Partition(std::initializer_list<int> p) : parts_(p) { canonicalize(); }
  explicit Partition(std::vector<int> p) : parts_(std::move(p)) { canonicalize(); }

  static Partition rectangle(int rows, int cols) { return Partition(std::vector<int>(rows, cols)); }

  const std::vector<int>& parts() const { return parts_; }
  int length() const { return static_cast<int>(parts_.size()); }
  int weight() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }
  bool empty() const { return parts_.empty(); }
  // 1-based, zero beyond the length
  int operator[](int i) const { return i >= 1 && i <= length() ? parts_[i - 1] : 0; }
  int multiplicity(int i) const {
    return static_cast<int>(std::count(parts_.begin(), parts_.end(), i));
  }

  Partition conjugate() const {
    std::vector<int> c;
    if (!parts_.empty())
      for (int j = 1; j <= parts_[0]; ++j) {
        int cnt = 0;
        for (int v : parts_)
          if (v >= j) ++cnt;
        c.push_back(cnt);
      }
    return Partition(c);
  }

  // cell statistics for s = (i,j), 1-based
  int arm(int i, int j) const { return (*this)[i] - j; }
  int arm_co(int, int j) const { return j - 1; }
  int leg(int i, int j) const { return conjugate()[j] - i; }
  int leg_co(int i, int) const { return i - 1; }

  struct Cell {
    int i, j, a, ap, l, lp;
  };
  std::vector<Cell> cells() const {
    std::vector<Cell> r;
    Partition c = conjugate();
    for (int i = 1; i <= length(); ++i)
      for (int j = 1; j <= parts_[i - 1]; ++j) r.push_back({i, j, parts_[i - 1] - j, j - 1, c[j] - i, i - 1});
    return r;
  }

  bool contained_in(const Partition& o) const {
    if (length() > o.length()) return false;
    for (int i = 1; i <= length(); ++i)
      if ((*this)[i] > o[i]) return false;
    return true;
  }

  std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < parts_.size(); ++i) s += (i ? "," : "") + std::to_string(parts_[i]);
    return s + ")";
  }

  friend bool operator==(const Partition& a, const Partition& b) { return a.parts_ == b.parts_; }
  friend bool operator!=(const Partition& a, const Partition& b) { return !(a == b); }
  // plain lexicographic comparison; restricted to a fixed weight it extends dominance
  friend bool operator<(const Partition& a, const Partition& b) { return a.parts_ < b.parts_; }

 private:
  std::vector<int> parts_;
  void canonicalize() {
    while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (parts_[i] < 0) throw std::invalid_argument("negative part");
      if (i && parts_[i] > parts_[i - 1]) throw std::invalid_argument("parts must be weakly decreasing");
    }
  }
};

struct PartitionHash {
  std::size_t operator()(const Partition& p) const {
    std::size_t h = 1469598103934665603ull;
    for (int v : p.parts()) h = (h ^ static_cast<std::size_t>(v)) * 1099511628211ull;
    return h;
  }
};

inline Partition conjugate(const Partition& p) { return p.conjugate(); }

inline bool dominance_leq_BC(const Partition& mu, const Partition& lambda) {
  int n = std::max(mu.length(), lambda.length());
  long sm = 0, sl = 0;
  for (int i = 1; i <= n; ++i) {
    sm += mu[i];
    sl += lambda[i];
    if (sm > sl) return false;
  }
  return true;
}

inline bool dominance_leq_A(const Partition& mu, const Partition& lambda) {
  return mu.weight() == lambda.weight() && dominance_leq_BC(mu, lambda);
}

// all partitions of d, in increasing lexicographic order
inline std::vector<Partition> partitions_of(int d, int max_len = -1) {
  std::vector<Partition> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int left, int maxpart) {
    if (left == 0) {
      out.emplace_back(cur);
      return;
    }
    if (max_len >= 0 && static_cast<int>(cur.size()) >= max_len) return;
    for (int p = std::min(left, maxpart); p >= 1; --p) {
      cur.push_back(p);
      rec(left - p, p);
      cur.pop_back();
    }
  };
  rec(d, d);
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<Partition> partitions_in_rectangle(int m, int n) {
  std::vector<Partition> out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int maxpart) {
    out.emplace_back(cur);
    if (static_cast<int>(cur.size()) >= n) return;
    for (int p = 1; p <= maxpart; ++p) {
      cur.push_back(p);
      rec(p);
      cur.pop_back();
    }
  };
  rec(m);
  std::sort(out.begin(), out.end(), [](const Partition& a, const Partition& b) {
    return a.weight() != b.weight() ? a.weight() < b.weight() : a < b;
  });
  return out;
}

// complement of lambda inside (m^n), transposed: (n - l'_m, ..., n - l'_1)
inline Partition tilde_complement(const Partition& lambda, int m, int n) {
  if (lambda[1] > m || lambda.length() > n) throw std::invalid_argument("partition not inside the rectangle");
  Partition c = lambda.conjugate();
  std::vector<int> r;
  for (int j = m; j >= 1; --j) r.push_back(n - c[j]);
  return Partition(r);
}

inline Q z_lambda(const Partition& p) {
  mpz_class r = 1;
  for (int i = 1; i <= p[1]; ++i) {
    int mi = p.multiplicity(i);
    for (int k = 0; k < mi; ++k) r *= i;
    for (int k = 2; k <= mi; ++k) r *= k;
  }
  return Q(r);
}

// BC downset of lambda restricted to length <= n, ordered weight-then-lex
inline std::vector<Partition> bc_downset(const Partition& lambda, int n, bool strict) {
  std::vector<Partition> out;
  for (int d = 0; d <= lambda.weight(); ++d)
    for (auto& mu : partitions_of(d, n))
      if (dominance_leq_BC(mu, lambda) && (!strict || mu != lambda)) out.push_back(mu);
  return out;
}

}  // namespace charmom
