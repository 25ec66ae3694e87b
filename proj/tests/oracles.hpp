#pragma once

// Independent reference computations for the test suites. Nothing here calls
// the library's arithmetic: sums are explicit, closed forms use std::log.

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "harmconv/series.hpp"

namespace oracle {

using harmconv::Complex;
using harmconv::TruncatedSeries;

inline constexpr double kPi = std::numbers::pi;

inline std::vector<Complex> coeffs(const TruncatedSeries& p) {
  return {p.coeffs().begin(), p.coeffs().end()};
}

inline std::vector<Complex> naive_product(const std::vector<Complex>& p,
                                          const std::vector<Complex>& q) {
  const auto n = std::min(p.size(), q.size());
  std::vector<Complex> c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; i + j < n; ++j)
      c[i + j] += p[i] * q[j];
  return c;
}

// sum c_k z^k with explicit powers.
inline Complex direct_sum(const std::vector<Complex>& c, Complex z) {
  Complex acc{};
  for (std::size_t k = 0; k < c.size(); ++k)
    acc += c[k] * std::pow(z, static_cast<double>(k));
  return acc;
}

inline Complex direct_sum(const TruncatedSeries& p, Complex z) { return direct_sum(coeffs(p), z); }

// sum_k k c_k z^{k-1}
inline Complex direct_derivative(const TruncatedSeries& p, Complex z) {
  Complex acc{};
  for (std::size_t k = 1; k < p.size(); ++k)
    acc += double(k) * p[k] * std::pow(z, static_cast<double>(k - 1));
  return acc;
}

// sum_k k (k-1) c_k z^{k-2}
inline Complex direct_second_derivative(const TruncatedSeries& p, Complex z) {
  Complex acc{};
  for (std::size_t k = 2; k < p.size(); ++k)
    acc += double(k) * double(k - 1) * p[k] * std::pow(z, static_cast<double>(k - 2));
  return acc;
}

inline double max_diff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < std::min(a.size(), b.size()); ++k)
    m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

inline double max_abs(const std::vector<Complex>& a) {
  double m = 0.0;
  for (const auto& x : a)
    m = std::max(m, std::abs(x));
  return m;
}

// Normwise relative distance max|a-b| / max(1, max|b|).
inline double rel_diff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  return max_diff(a, b) / std::max(1.0, max_abs(b));
}

// (1/(2i sin beta)) log((1 + z e^{i beta}) / (1 + z e^{-i beta}))
inline Complex strip_log(double beta, Complex z) {
  const Complex e = std::polar(1.0, beta);
  return (std::log(1.0 + z * e) - std::log(1.0 + z * std::conj(e))) /
         (Complex(0.0, 2.0) * std::sin(beta));
}

// f(0) = 0, f' = 1/((1 + mu z)(1 + nu z)).
inline Complex pommerenke(Complex mu, Complex nu, Complex z) {
  if (std::abs(mu - nu) < 1e-12)
    return z / (1.0 + mu * z);
  return (std::log(1.0 + mu * z) - std::log(1.0 + nu * z)) / (mu - nu);
}

// Analytic and co-analytic parts of the slanted half-plane map with
// dilatation e^{2i alpha}(a - z e^{i alpha})/(1 - a z e^{i alpha}).
inline Complex slanted_H(double a, double alpha, Complex z) {
  const double c = (1.0 - a) / (1.0 + a);
  const Complex u = 1.0 - z * std::polar(1.0, alpha);
  return 0.5 * (z / u + c * z / (u * u));
}

inline Complex slanted_G(double a, double alpha, Complex z) {
  const double c = (1.0 - a) / (1.0 + a);
  const Complex x2 = std::polar(1.0, 2.0 * alpha);
  const Complex u = 1.0 - z * std::polar(1.0, alpha);
  return 0.5 * (z * x2 / u - c * z * x2 / (u * u));
}

inline Complex minus_h(double b, double alpha, Complex z) {
  const double d = (1.0 + b) / (1.0 - b);
  const Complex u = 1.0 - z * std::polar(1.0, alpha);
  return 0.5 * (d * z / (u * u) + z / u);
}

inline Complex minus_g(double b, double alpha, Complex z) {
  const double d = (1.0 + b) / (1.0 - b);
  const Complex x2 = std::polar(1.0, 2.0 * alpha);
  const Complex u = 1.0 - z * std::polar(1.0, alpha);
  return 0.5 * (d * z * x2 / (u * u) - z * x2 / u);
}

// sum_{k > n} k^p r^k, summed term by term until negligible.
inline double power_tail(double r, int p, std::size_t n) {
  double s = 0.0;
  for (std::size_t k = n + 1; k < n + 2'000'000; ++k) {
    const double t = std::pow(double(k), p) * std::pow(r, double(k));
    s += t;
    if (double(k) * std::log(r) + p * std::log(double(k)) < std::log(1e-30) && double(k) > p / -std::log(r))
      break;
  }
  return s;
}

inline Complex random_complex(std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  return {u(rng), u(rng)};
}

inline TruncatedSeries random_series(std::mt19937_64& rng, std::size_t order, double scale = 1.0) {
  std::vector<Complex> c(order + 1);
  for (auto& x : c)
    x = random_complex(rng, scale);
  return TruncatedSeries(std::move(c));
}

// Random series with sum_{k>=1} |c_k| <= 0.9 |c_0|, so 1/q is well conditioned.
inline TruncatedSeries random_invertible(std::mt19937_64& rng, std::size_t order) {
  std::vector<Complex> c(order + 1);
  c[0] = std::polar(1.0 + std::uniform_real_distribution<double>(0.0, 1.0)(rng),
                    std::uniform_real_distribution<double>(0.0, 2 * kPi)(rng));
  double sum = 0.0;
  for (std::size_t k = 1; k <= order; ++k) {
    c[k] = random_complex(rng);
    sum += std::abs(c[k]);
  }
  if (sum > 0.0)
    for (std::size_t k = 1; k <= order; ++k)
      c[k] *= 0.9 * std::abs(c[0]) / sum;
  return TruncatedSeries(std::move(c));
}

// Random point with |z| <= radius, uniform in area.
inline Complex random_in_disk(std::mt19937_64& rng, double radius) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return std::polar(radius * std::sqrt(u(rng)), 2 * kPi * u(rng));
}

}  // namespace oracle
