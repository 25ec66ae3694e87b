#include "harmconv/series.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <string>

#include "harmconv/errors.hpp"

namespace harmconv {

namespace {

std::vector<std::size_t> nonzero_indices(const TruncatedSeries& p, std::size_t limit) {
  std::vector<std::size_t> idx;
  const auto n = std::min(limit, p.size());
  for (std::size_t k = 0; k < n; ++k)
    if (p[k] != Complex{})
      idx.push_back(k);
  return idx;
}

// sum_{k > n} k^power r^k, summed in log space so large orders cannot overflow.
double power_tail(double radius, int power, std::size_t n) {
  if (radius <= 0.0)
    return 0.0;
  if (radius >= 1.0)
    return std::numeric_limits<double>::infinity();
  const double log_r = std::log(radius);
  const double peak = power / -log_r;
  double sum = 0.0;
  for (std::size_t k = n + 1;; ++k) {
    const double kd = static_cast<double>(k);
    const double term = std::exp(power * std::log(kd) + kd * log_r);
    sum += term;
    if (kd > peak && (term == 0.0 || term < 1e-18 * sum))
      break;
    if (k - n > 100'000'000)
      break;
  }
  return sum;
}

std::mutex& fftw_planner_mutex() {
  // FFTW's planner is not re-entrant.
  static std::mutex m;
  return m;
}

}  // namespace

TruncatedSeries::TruncatedSeries() : coeffs_{Complex{}} {}

TruncatedSeries::TruncatedSeries(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty())
    throw InvalidOrderError("a truncated series needs at least one coefficient");
}

TruncatedSeries::TruncatedSeries(std::initializer_list<Complex> coeffs)
    : TruncatedSeries(std::vector<Complex>(coeffs)) {}

TruncatedSeries TruncatedSeries::zero(std::size_t order) {
  return TruncatedSeries(std::vector<Complex>(order + 1));
}

TruncatedSeries TruncatedSeries::constant(Complex value, std::size_t order) {
  std::vector<Complex> c(order + 1);
  c[0] = value;
  return TruncatedSeries(std::move(c));
}

TruncatedSeries TruncatedSeries::monomial(Complex value, std::size_t power, std::size_t order) {
  std::vector<Complex> c(order + 1);
  if (power <= order)
    c[power] = value;
  return TruncatedSeries(std::move(c));
}

TruncatedSeries TruncatedSeries::truncated(std::size_t order) const {
  if (order >= this->order())
    return *this;
  return TruncatedSeries(std::vector<Complex>(coeffs_.begin(), coeffs_.begin() + order + 1));
}

TruncatedSeries TruncatedSeries::shifted(std::size_t k) const {
  std::vector<Complex> c(coeffs_.size());
  for (std::size_t j = k; j < c.size(); ++j)
    c[j] = coeffs_[j - k];
  return TruncatedSeries(std::move(c));
}

TruncatedSeries TruncatedSeries::operator-() const {
  std::vector<Complex> c(coeffs_.size());
  std::transform(coeffs_.begin(), coeffs_.end(), c.begin(), [](Complex x) { return -x; });
  return TruncatedSeries(std::move(c));
}

TruncatedSeries operator+(const TruncatedSeries& p, const TruncatedSeries& q) {
  const auto n = std::min(p.size(), q.size());
  std::vector<Complex> c(n);
  for (std::size_t k = 0; k < n; ++k)
    c[k] = p[k] + q[k];
  return TruncatedSeries(std::move(c));
}

TruncatedSeries operator-(const TruncatedSeries& p, const TruncatedSeries& q) {
  const auto n = std::min(p.size(), q.size());
  std::vector<Complex> c(n);
  for (std::size_t k = 0; k < n; ++k)
    c[k] = p[k] - q[k];
  return TruncatedSeries(std::move(c));
}

TruncatedSeries operator*(Complex s, const TruncatedSeries& p) {
  std::vector<Complex> c(p.size());
  for (std::size_t k = 0; k < c.size(); ++k)
    c[k] = s * p[k];
  return TruncatedSeries(std::move(c));
}

TruncatedSeries make_geometric(Complex lambda, std::size_t order) {
  if (order == 0)
    throw InvalidOrderError("make_geometric: order must be at least 1");
  std::vector<Complex> c(order + 1);
  Complex power{1.0, 0.0};
  for (std::size_t k = 1; k <= order; ++k) {
    c[k] = power;
    power *= lambda;
  }
  return TruncatedSeries(std::move(c));
}

TruncatedSeries cauchy_product(const TruncatedSeries& p, const TruncatedSeries& q) {
  const auto n = std::min(p.size(), q.size());
  const auto nz_p = nonzero_indices(p, n);
  const auto nz_q = nonzero_indices(q, n);
  const bool q_sparser = nz_q.size() <= nz_p.size();
  const auto& dense = q_sparser ? p : q;
  const auto& sparse_idx = q_sparser ? nz_q : nz_p;
  const auto& sparse = q_sparser ? q : p;

  std::vector<Complex> c(n);
  for (const auto j : sparse_idx) {
    const Complex s = sparse[j];
    for (std::size_t k = j; k < n; ++k)
      c[k] += s * dense[k - j];
  }
  return TruncatedSeries(std::move(c));
}

TruncatedSeries divide(const TruncatedSeries& p, const TruncatedSeries& q) {
  if (std::abs(q[0]) < kReciprocalFloor)
    throw NonInvertibleSeriesError("series with vanishing constant term is not invertible");
  const auto n = std::min(p.size(), q.size());
  std::vector<std::size_t> tail;
  for (const auto j : nonzero_indices(q, n))
    if (j > 0)
      tail.push_back(j);

  const Complex inv0 = 1.0 / q[0];
  std::vector<Complex> c(n);
  for (std::size_t k = 0; k < n; ++k) {
    Complex acc = p[k];
    for (const auto j : tail) {
      if (j > k)
        break;
      acc -= q[j] * c[k - j];
    }
    c[k] = acc * inv0;
  }
  return TruncatedSeries(std::move(c));
}

TruncatedSeries reciprocal(const TruncatedSeries& p) {
  return divide(TruncatedSeries::constant(1.0, p.order()), p);
}

TruncatedSeries differentiate(const TruncatedSeries& p) {
  if (p.order() == 0)
    return TruncatedSeries::zero(0);
  std::vector<Complex> c(p.order());
  for (std::size_t k = 0; k < c.size(); ++k)
    c[k] = static_cast<double>(k + 1) * p[k + 1];
  return TruncatedSeries(std::move(c));
}

TruncatedSeries integrate0(const TruncatedSeries& p) {
  std::vector<Complex> c(p.size() + 1);
  for (std::size_t k = 0; k < p.size(); ++k)
    c[k + 1] = p[k] / static_cast<double>(k + 1);
  return TruncatedSeries(std::move(c));
}

TruncatedSeries hadamard(const TruncatedSeries& p, const TruncatedSeries& q) {
  const auto n = std::min(p.size(), q.size());
  std::vector<Complex> c(n);
  for (std::size_t k = 0; k < n; ++k)
    c[k] = p[k] * q[k];
  return TruncatedSeries(std::move(c));
}

TruncatedSeries rotate_arg(const TruncatedSeries& p, double alpha) {
  std::vector<Complex> c(p.size());
  for (std::size_t k = 0; k < c.size(); ++k)
    c[k] = p[k] * std::polar(1.0, static_cast<double>(k) * alpha);
  return TruncatedSeries(std::move(c));
}

Complex evaluate(const TruncatedSeries& p, Complex z) {
  Complex acc{};
  for (std::size_t k = p.size(); k-- > 0;)
    acc = acc * z + p[k];
  return acc;
}

std::vector<Complex> evaluate_on_circle(const TruncatedSeries& p, double radius,
                                        std::size_t count) {
  if (count == 0)
    return {};
  std::vector<Complex> folded(count);
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (p[k] == Complex{})
      continue;
    folded[k % count] += p[k] * std::pow(radius, static_cast<double>(k));
  }
  std::vector<Complex> out(count);
  auto* in_ptr = reinterpret_cast<fftw_complex*>(folded.data());
  auto* out_ptr = reinterpret_cast<fftw_complex*>(out.data());
  fftw_plan plan;
  {
    std::lock_guard lock(fftw_planner_mutex());
    plan = fftw_plan_dft_1d(static_cast<int>(count), in_ptr, out_ptr, FFTW_BACKWARD,
                            FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }
  return out;
}

TruncatedSeries strip_log_series(double beta, std::size_t order) {
  const double s = std::sin(beta);
  if (std::abs(s) < 1e-12)
    throw DegenerateStripError("strip mapping needs sin(beta) != 0, got beta = " +
                               std::to_string(beta));
  if (!(beta > 0.0 && beta < std::numbers::pi))
    throw ParameterRangeError("strip mapping needs 0 < beta < pi, got beta = " +
                              std::to_string(beta));
  std::vector<Complex> c(order + 1);
  for (std::size_t k = 1; k <= order; ++k) {
    const double kd = static_cast<double>(k);
    const double sign = (k % 2 == 1) ? 1.0 : -1.0;
    c[k] = sign * std::sin(kd * beta) / (kd * s);
  }
  return TruncatedSeries(std::move(c));
}

TruncatedSeries pommerenke_f(double eta, double gamma, PommerenkeVariant variant,
                             std::size_t order) {
  if (order < 2)
    throw InvalidOrderError("pommerenke_f: order must be at least 2");
  const Complex mu = std::polar(1.0, eta + gamma);
  const Complex nu = variant == PommerenkeVariant::Plus ? std::polar(1.0, -(eta - gamma))
                                                        : std::polar(1.0, -(eta + gamma));
  std::vector<Complex> q(order);
  q[0] = 1.0;
  q[1] = mu + nu;
  q[2] = mu * nu;
  return integrate0(reciprocal(TruncatedSeries(std::move(q))));
}

double max_coeff_diff(const TruncatedSeries& p, const TruncatedSeries& q) {
  const auto n = std::min(p.size(), q.size());
  double m = 0.0;
  for (std::size_t k = 0; k < n; ++k)
    m = std::max(m, std::abs(p[k] - q[k]));
  return m;
}

double max_abs_coeff(const TruncatedSeries& p) {
  double m = 0.0;
  for (const auto& c : p.coeffs())
    m = std::max(m, std::abs(c));
  return m;
}

double tail_bound(const TruncatedSeries& p, double radius, int power) {
  double scale = 0.0;
  for (std::size_t k = 1; k < p.size(); ++k)
    scale = std::max(scale, std::abs(p[k]) / std::pow(static_cast<double>(k), power));
  if (scale == 0.0)
    return 0.0;
  return scale * power_tail(radius, power, p.order());
}

std::size_t order_for_radius(double radius, int power, double tolerance) {
  if (!(radius > 0.0 && radius < 1.0))
    throw ParameterRangeError("order_for_radius: radius must lie in (0, 1)");
  std::size_t lo = 1;
  std::size_t hi = 2;
  while (power_tail(radius, power, hi) > tolerance) {
    lo = hi;
    hi *= 2;
    if (hi > (std::size_t{1} << 26))
      throw ParameterRangeError("order_for_radius: radius too close to 1");
  }
  while (lo < hi) {
    const auto mid = lo + (hi - lo) / 2;
    if (power_tail(radius, power, mid) > tolerance)
      lo = mid + 1;
    else
      hi = mid;
  }
  return lo;
}

}  // namespace harmconv
