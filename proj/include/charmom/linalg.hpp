#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "field.hpp"

namespace charmom {

template <class F>
using Matrix = std::vector<std::vector<F>>;

namespace detail {
template <class F>
std::size_t pick_pivot(const Matrix<F>& a, std::size_t col, std::size_t from) {
  if constexpr (std::is_same_v<F, double> || std::is_same_v<F, std::complex<double>>) {
    std::size_t best = from;
    for (std::size_t r = from + 1; r < a.size(); ++r)
      if (std::abs(a[r][col]) > std::abs(a[best][col])) best = r;
    return best;
  } else {
    for (std::size_t r = from; r < a.size(); ++r)
      if (!Field<F>::is_zero(a[r][col])) return r;
    return from;
  }
}
}  // namespace detail

// Solves a x = b by Gaussian elimination (partial pivoting for floating types).
template <class F>
std::vector<F> solve(Matrix<F> a, std::vector<F> b) {
  std::size_t n = a.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = detail::pick_pivot(a, c, c);
    if (Field<F>::is_zero(a[p][c])) throw std::domain_error("singular matrix");
    std::swap(a[p], a[c]);
    std::swap(b[p], b[c]);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (Field<F>::is_zero(a[r][c])) continue;
      F f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  std::vector<F> x(n, Field<F>::from_q(0));
  for (std::size_t i = n; i-- > 0;) {
    F s = b[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= a[i][k] * x[k];
    x[i] = s / a[i][i];
  }
  return x;
}

template <class F>
F determinant(Matrix<F> a) {
  std::size_t n = a.size();
  F det = Field<F>::from_q(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = detail::pick_pivot(a, c, c);
    if (Field<F>::is_zero(a[p][c])) return Field<F>::from_q(0);
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (Field<F>::is_zero(a[r][c])) continue;
      F f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return det;
}

template <class F>
Matrix<F> inverse(const Matrix<F>& a) {
  std::size_t n = a.size();
  Matrix<F> inv(n, std::vector<F>(n, Field<F>::from_q(0)));
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<F> e(n, Field<F>::from_q(0));
    e[j] = Field<F>::from_q(1);
    auto col = solve(a, e);
    for (std::size_t i = 0; i < n; ++i) inv[i][j] = col[i];
  }
  return inv;
}

}  // namespace charmom
