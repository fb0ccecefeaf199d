#pragma once

// Torus quadrature, the Macdonald weight, Toeplitz determinants, and
// tanh-sinh integration on (-1,1)^n for W-invariant BC integrands.

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

#include "linalg.hpp"
#include "specialfun.hpp"

namespace charmom {

using cplx = std::complex<double>;

struct QuadResult {
  double value = 0;
  double error = 0;
  int points_per_axis = 0;
};

struct TorusGrid {
  int n = 1;
  int n0 = 64;
  int nmax = 4096;
  double tol = 1e-12;
  // integrand has |.|^{odd} kinks on grid nodes: extrapolate in even powers of 1/N
  bool kink = false;
};

namespace detail {

inline double torus_sum(const std::function<double(const std::vector<double>&)>& f, int n, int N) {
  std::vector<int> idx(n, 0);
  std::vector<double> th(n, 0);
  double s = 0, h = 2 * M_PI / N;
  for (;;) {
    for (int i = 0; i < n; ++i) th[i] = h * idx[i];
    s += f(th);
    int k = 0;
    while (k < n && ++idx[k] == N) idx[k++] = 0;
    if (k == n) break;
  }
  return s / std::pow(static_cast<double>(N), n);
}

}  // namespace detail

// Normalized Haar integral over T^n of f(theta_1..theta_n).
inline QuadResult torus_integrate(const std::function<double(const std::vector<double>&)>& f, const TorusGrid& g) {
  int cap = g.n >= 3 ? std::min(g.nmax, 256) : g.nmax;
  std::vector<std::vector<double>> tab;  // Romberg table rows
  double prev = std::nan("");
  for (int N = g.n0; N <= cap; N *= 2) {
    double v = detail::torus_sum(f, g.n, N);
    std::vector<double> row{v};
    if (g.kink && !tab.empty()) {
      double p = 4;
      for (std::size_t j = 0; j < tab.back().size(); ++j, p *= 4) row.push_back(row[j] + (row[j] - tab.back()[j]) / (p - 1));
    }
    double best = row.back();
    if (!std::isnan(prev)) {
      double err = std::abs(best - prev);
      if (err <= g.tol * std::max(1.0, std::abs(best))) return {best, err, N};
    }
    prev = best;
    tab.push_back(row);
  }
  throw std::runtime_error("torus quadrature: budget exhausted before tolerance");
}

// prod_{i<j} |(z_i/z_j;q)_inf / (t z_i/z_j;q)_inf|^2 on the torus
inline double macdonald_weight_eval(const std::vector<cplx>& z, double q, double t, double tol = 1e-17) {
  double w = 1;
  for (std::size_t i = 0; i < z.size(); ++i)
    for (std::size_t j = i + 1; j < z.size(); ++j) {
      cplx u = z[i] / z[j];
      w *= std::norm(q_pochhammer_inf(u, q, tol) / q_pochhammer_inf(t * u, q, tol));
    }
  return w;
}

// Fourier coefficients d_k = int phi(e^{i theta}) e^{-ik theta}, |k| < n, by the trapezoid rule
inline std::vector<cplx> fourier_coefficients(const std::function<cplx(double)>& phi, int kmax, int M = 4096) {
  std::vector<cplx> vals(M);
  for (int j = 0; j < M; ++j) vals[j] = phi(2 * M_PI * j / M);
  std::vector<cplx> d(2 * kmax + 1);
  for (int k = -kmax; k <= kmax; ++k) {
    cplx s = 0;
    for (int j = 0; j < M; ++j) s += vals[j] * std::polar(1.0, -2 * M_PI * k * j / M);
    d[k + kmax] = s / static_cast<double>(M);
  }
  return d;
}

inline cplx toeplitz_det(const std::function<cplx(double)>& phi, int n, int M = 4096) {
  if (n == 0) return 1;
  auto d = fourier_coefficients(phi, n - 1, M);
  Matrix<cplx> a(n, std::vector<cplx>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = d[i - j + n - 1];
  return determinant(a);
}

// A point of (-1,1) with 1-x and 1+x kept to full relative precision near the ends.
struct Coord {
  double x = 0, om = 1, op = 1;
};

inline Coord make_coord(double x) { return {x, 1 - x, 1 + x}; }

// Integral of f over the segment [a,b] of (-1,1); endpoint singularities allowed.
inline double segment_integrate(const std::function<double(const Coord&)>& f, const Coord& a, const Coord& b,
                                double tol = 1e-13, double* err = nullptr) {
  if (!(a.x < b.x)) return 0;
  static boost::math::quadrature::tanh_sinh<double> ts(12, 1e-80);
  auto g = [&](double x, double xc) {
    Coord c{x, 0, 0};
    if (xc < 0) {
      c.op = a.op - xc;
      c.om = a.om + xc;
    } else {
      c.op = b.op - xc;
      c.om = b.om + xc;
    }
    return f(c);
  };
  double e = 0, l1 = 0;
  double v = ts.integrate(g, a.x, b.x, tol, &e, &l1);
  if (err) *err = e;
  return v;
}

inline double interval_integrate(const std::function<double(double)>& f, double a, double b, double tol = 1e-13) {
  return segment_integrate([&](const Coord& c) { return f(c.x); }, make_coord(a), make_coord(b), tol);
}

// Integral of f over (-1,1)^n, n <= 2; f may have a kink or integrable singularity on x1 = x2.
inline double cube_integrate(const std::function<double(const std::vector<Coord>&)>& f, int n, double tol = 1e-12) {
  const Coord lo{-1, 2, 0}, hi{1, 0, 2};
  if (n == 0) return f({});
  if (n == 1) return segment_integrate([&](const Coord& c) { return f({c}); }, lo, hi, tol);
  if (n != 2) throw std::invalid_argument("cube quadrature supports n <= 2");
  auto inner = [&](const Coord& y) {
    auto g = [&](const Coord& x) { return f({x, y}); };
    return segment_integrate(g, lo, y, tol) + segment_integrate(g, y, hi, tol);
  };
  return segment_integrate(inner, lo, hi, tol);
}

}  // namespace charmom
