#pragma once

// Truncated Maclaurin series with complex coefficients c_0..c_N.
//
// All operations are pure. Binary operations on series of different orders
// truncate to the smaller order.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace harmconv {

using Complex = std::complex<double>;

inline constexpr std::size_t kDefaultOrder = 128;

// |c_0| below this rejects inversion; every denominator built here has c_0 = 1.
inline constexpr double kReciprocalFloor = 1e-12;

class TruncatedSeries {
 public:
  // The zero series of order 0.
  TruncatedSeries();
  explicit TruncatedSeries(std::vector<Complex> coeffs);
  TruncatedSeries(std::initializer_list<Complex> coeffs);

  static TruncatedSeries zero(std::size_t order);
  static TruncatedSeries constant(Complex value, std::size_t order);
  // value * z^power, truncated at `order`.
  static TruncatedSeries monomial(Complex value, std::size_t power, std::size_t order);

  std::size_t order() const { return coeffs_.size() - 1; }
  std::size_t size() const { return coeffs_.size(); }
  const Complex& operator[](std::size_t k) const { return coeffs_[k]; }
  std::span<const Complex> coeffs() const { return coeffs_; }

  TruncatedSeries truncated(std::size_t order) const;
  // Multiply by z^k, keeping the current order.
  TruncatedSeries shifted(std::size_t k) const;

  TruncatedSeries operator-() const;
  friend TruncatedSeries operator+(const TruncatedSeries& p, const TruncatedSeries& q);
  friend TruncatedSeries operator-(const TruncatedSeries& p, const TruncatedSeries& q);
  friend TruncatedSeries operator*(Complex s, const TruncatedSeries& p);
  friend TruncatedSeries operator*(const TruncatedSeries& p, Complex s) { return s * p; }

  friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;

 private:
  std::vector<Complex> coeffs_;
};

// z / (1 - lambda z): c_0 = 0, c_k = lambda^{k-1}.
TruncatedSeries make_geometric(Complex lambda, std::size_t order);

TruncatedSeries cauchy_product(const TruncatedSeries& p, const TruncatedSeries& q);

// p / q by forward substitution. Cost is O(N * nnz(q)), so sparse
// denominators such as 1 + c z^n are cheap.
TruncatedSeries divide(const TruncatedSeries& p, const TruncatedSeries& q);
TruncatedSeries reciprocal(const TruncatedSeries& p);

// Order drops by one; a length-1 series maps to the zero series of order 0.
TruncatedSeries differentiate(const TruncatedSeries& p);
// Order grows by one, constant of integration 0.
TruncatedSeries integrate0(const TruncatedSeries& p);

TruncatedSeries hadamard(const TruncatedSeries& p, const TruncatedSeries& q);

// Coefficients c_k e^{ik alpha}, i.e. the substitution z -> z e^{i alpha}.
TruncatedSeries rotate_arg(const TruncatedSeries& p, double alpha);

// Horner evaluation. The caller owns the truncation error.
Complex evaluate(const TruncatedSeries& p, Complex z);

// Values at z_j = radius * exp(2 pi i j / count), j = 0..count-1, computed
// exactly (no extra approximation) by folding coefficients modulo `count`
// and taking one inverse DFT.
std::vector<Complex> evaluate_on_circle(const TruncatedSeries& p, double radius,
                                        std::size_t count);

// (1/(2i sin beta)) log((1 + z e^{i beta}) / (1 + z e^{-i beta})), 0 < beta < pi.
TruncatedSeries strip_log_series(double beta, std::size_t order);

enum class PommerenkeVariant { Plus, Minus };

// f with f(0) = 0 and f' = 1/((1 + z e^{i mu})(1 + z e^{i nu})), where
// (mu, nu) = (eta + gamma, -(eta - gamma)) for Plus and
// (eta + gamma, -(eta + gamma)) for Minus.
TruncatedSeries pommerenke_f(double eta, double gamma, PommerenkeVariant variant,
                             std::size_t order);

// max_k |p_k - q_k| over the common order.
double max_coeff_diff(const TruncatedSeries& p, const TruncatedSeries& q);
double max_abs_coeff(const TruncatedSeries& p);

// Upper bound on sum_{k>order} C k^power r^k, where C = max_k |c_k| / k^power
// is measured from the series itself.
double tail_bound(const TruncatedSeries& p, double radius, int power);

// Smallest order N with sum_{k>N} k^power r^k <= tolerance.
std::size_t order_for_radius(double radius, int power, double tolerance);

}  // namespace harmconv
