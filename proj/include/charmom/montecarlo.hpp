#pragma once

// Random-walk Metropolis on the n-torus for an unnormalized density on angles.

#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

namespace charmom {

// Counter-based stream: the k-th draw is splitmix64(seed + k * golden gamma).
class SplitMix {
 public:
  explicit SplitMix(std::uint64_t seed) : seed_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = seed_ + (++ctr_) * 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  double uniform() { return (next() >> 11) * 0x1.0p-53; }
  // open interval, for logs
  double uniform_pos() { return ((next() >> 11) + 0.5) * 0x1.0p-53; }
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double r = std::sqrt(-2 * std::log(uniform_pos())), a = 2 * M_PI * uniform();
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }
  std::uint64_t counter() const { return ctr_; }

 private:
  std::uint64_t seed_, ctr_ = 0;
  double spare_ = 0;
  bool have_spare_ = false;
};

using AngleDensity = std::function<double(const std::vector<double>&)>;

struct ChainConfig {
  int n = 1;
  AngleDensity weight;  // nonnegative, unnormalized
  double sigma = 0.5;   // initial proposal step, radians
  long burn_in = 20000;
  int thin = 10;
  long samples = 1000000;
  std::uint64_t seed = 1;
};

struct Chain {
  std::vector<std::vector<double>> samples;
  double acceptance = 0;  // post-burn-in
  double sigma = 0;       // frozen step
};

inline Chain sample_chain(const ChainConfig& cfg) {
  if (cfg.n < 1 || !cfg.weight) throw std::invalid_argument("chain needs n >= 1 and a weight");
  SplitMix rng(cfg.seed);
  std::vector<double> th(cfg.n), prop(cfg.n);
  double lw = -INFINITY;
  for (int tries = 0; tries < 1000 && !(lw > -INFINITY); ++tries) {
    for (auto& v : th) v = 2 * M_PI * rng.uniform();
    double w = cfg.weight(th);
    if (w < 0) throw std::domain_error("negative weight");
    lw = std::log(w);
  }
  if (!(lw > -INFINITY)) throw std::runtime_error("no start point with positive weight");

  double log_sigma = std::log(cfg.sigma);
  long accepted = 0, proposed = 0;
  auto step = [&](bool adapt, long it) {
    double s = std::exp(log_sigma);
    for (int i = 0; i < cfg.n; ++i) {
      prop[i] = std::fmod(th[i] + s * rng.normal(), 2 * M_PI);
      if (prop[i] < 0) prop[i] += 2 * M_PI;
    }
    double w = cfg.weight(prop);
    double lp = w > 0 ? std::log(w) : -INFINITY;
    bool acc = lp >= lw || std::log(rng.uniform_pos()) < lp - lw;
    if (acc) {
      th.swap(prop);
      lw = lp;
    }
    if (adapt) {
      log_sigma += ((acc ? 1.0 : 0.0) - 0.3) / std::pow(it + 10.0, 0.6);
      log_sigma = std::min(log_sigma, std::log(M_PI));
    } else {
      ++proposed;
      accepted += acc;
    }
  };
  for (long it = 0; it < cfg.burn_in; ++it) step(true, it);
  Chain ch;
  ch.sigma = std::exp(log_sigma);
  ch.samples.reserve(cfg.samples);
  for (long s = 0; s < cfg.samples; ++s) {
    for (int k = 0; k < cfg.thin; ++k) step(false, 0);
    ch.samples.push_back(th);
  }
  ch.acceptance = proposed ? static_cast<double>(accepted) / proposed : 0;
  return ch;
}

struct Estimate {
  double mean = 0;
  double se = 0;
  double ess = 0;
};

// batch means over at least 10 batches
inline Estimate estimate_values(const std::vector<double>& v) {
  std::size_t N = v.size();
  if (N < 10) throw std::invalid_argument("fewer than 10 batches");
  std::size_t b = std::max<std::size_t>(10, static_cast<std::size_t>(std::sqrt(static_cast<double>(N))));
  std::size_t len = N / b;
  double mean = 0, var = 0;
  for (double x : v) mean += x;
  mean /= N;
  for (double x : v) var += (x - mean) * (x - mean);
  var /= std::max<std::size_t>(N - 1, 1);
  std::vector<double> bm(b, 0);
  for (std::size_t i = 0; i < b; ++i) {
    for (std::size_t j = i * len; j < (i + 1) * len; ++j) bm[i] += v[j];
    bm[i] /= len;
  }
  double bmean = 0, bvar = 0;
  for (double x : bm) bmean += x;
  bmean /= b;
  for (double x : bm) bvar += (x - bmean) * (x - bmean);
  bvar /= b - 1;
  Estimate e;
  e.mean = mean;
  e.se = std::sqrt(bvar / b);
  e.ess = e.se > 0 ? var / (e.se * e.se) : static_cast<double>(N);
  return e;
}

inline Estimate estimate_average(const std::vector<std::vector<double>>& samples,
                                 const std::function<double(const std::vector<double>&)>& f) {
  std::vector<double> v;
  v.reserve(samples.size());
  for (auto& s : samples) v.push_back(f(s));
  return estimate_values(v);
}

}  // namespace charmom
