#include "harmconv/convolution.hpp"

#include <cmath>

#include "harmconv/errors.hpp"

namespace harmconv {

namespace {

PommerenkeVariant target_variant(const PairingParams& p) {
  return p.setting == PairingSetting::Plus ? PommerenkeVariant::Plus : p.minus_target;
}

void require_coefficient(double v) {
  if (!(v > -1.0 && v < 1.0))
    throw ParameterRangeError("pairing coefficient must lie in (-1, 1), got " +
                              std::to_string(v));
}

void require_n(int n) {
  if (n < 1)
    throw ParameterRangeError("n must be at least 1, got " + std::to_string(n));
}

}  // namespace

HarmonicMap convolve_maps(const HarmonicMap& f1, const HarmonicMap& f2) {
  return {hadamard(f1.h, f2.h), hadamard(f1.g, f2.g)};
}

ConvolutionResult harmonic_convolve(const HarmonicMap& f1, const HarmonicMap& f2,
                                    std::string provenance) {
  ConvolutionResult out{convolve_maps(f1, f2), std::nullopt, std::move(provenance), {}};
  try {
    out.dilatation = dilatation_series(out.map);
  } catch (const DegenerateMapError& e) {
    out.note = e.what();
  }
  return out;
}

double boundary_coefficient(PairingSetting setting, int n) {
  const double v = double(n - 2) / double(n + 2);
  return setting == PairingSetting::Plus ? v : -v;
}

FamilySpec pairing_left_family(const PairingParams& p, std::size_t order) {
  FamilySpec s;
  s.order = order;
  s.params.alpha = p.alpha;
  if (p.setting == PairingSetting::Plus) {
    s.kind = FamilyKind::SlantedFaAlpha;
    s.params.a = p.coefficient;
  } else {
    s.kind = FamilyKind::MinusFbAlpha;
    s.params.b = p.coefficient;
  }
  return s;
}

FamilySpec pairing_right_family(const PairingParams& p, std::size_t order) {
  FamilySpec s;
  s.kind = p.setting == PairingSetting::Plus ? FamilyKind::PlusT : FamilyKind::MinusT;
  s.order = order;
  s.params.eta = p.eta;
  s.params.gamma = p.gamma;
  s.params.theta = p.theta;
  s.params.n = p.n;
  s.minus_target = p.minus_target;
  return s;
}

HarmonicMap pairing_left_closed(const PairingParams& p, std::size_t order) {
  return p.setting == PairingSetting::Plus ? closed_form_F(p.coefficient, p.alpha, order)
                                           : minus_closed_form_f(p.coefficient, p.alpha, order);
}

TruncatedSeries log_ratio_series(const PairingParams& p, std::size_t order) {
  require_n(p.n);
  const Complex mu = std::polar(1.0, p.eta + p.gamma);
  const Complex nu = target_variant(p) == PommerenkeVariant::Plus
                         ? std::polar(1.0, -(p.eta - p.gamma))
                         : std::polar(1.0, -(p.eta + p.gamma));
  const Complex sigma = std::polar(1.0, p.theta - 2.0 * p.gamma);

  // -x z/(1 + x z) = sum_{k>=1} (-x)^k z^k
  std::vector<Complex> c(order + 1);
  Complex mu_k = 1.0, nu_k = 1.0;
  for (std::size_t k = 1; k <= order; ++k) {
    mu_k *= -mu;
    nu_k *= -nu;
    c[k] = mu_k + nu_k;
  }
  // Plus:  -n s z^n/(1 + s z^n) = sum_m n (-s)^m z^{nm}
  // Minus: +n s z^n/(1 - s z^n) = sum_m n s^m z^{nm}
  const Complex step = p.setting == PairingSetting::Plus ? -sigma : sigma;
  Complex s_m = 1.0;
  for (std::size_t k = p.n; k <= order; k += p.n) {
    s_m *= step;
    c[k] += double(p.n) * s_m;
  }
  return TruncatedSeries(std::move(c));
}

TruncatedSeries dilatation_closed(const PairingParams& p, std::size_t order) {
  require_coefficient(p.coefficient);
  require_n(p.n);
  const auto n = static_cast<std::size_t>(p.n);
  const double n_d = p.n;
  double k1, k2;
  Complex prefactor;
  if (p.setting == PairingSetting::Plus) {
    const double a = p.coefficient;
    k1 = (n_d - (n_d + 2.0) * a) / (1.0 - a);
    k2 = 2.0 / (1.0 - a);
    prefactor = -std::polar(1.0, p.theta);
  } else {
    const double b = p.coefficient;
    k1 = (n_d + (n_d + 2.0) * b) / (1.0 + b);
    k2 = 2.0 / (1.0 + b);
    prefactor = std::polar(1.0, p.theta);
  }
  const auto q = log_ratio_series(p, order);
  const auto bracket = divide(TruncatedSeries::constant(k1, order) + q,
                              TruncatedSeries::constant(k2, order) + q);
  std::vector<Complex> w(order + 1);
  for (std::size_t k = n; k <= order; ++k)
    w[k] = prefactor * bracket[k - n];
  return TruncatedSeries(std::move(w));
}

TruncatedSeries dilatation_plus_closed(double a, double eta, double gamma, double theta, int n,
                                       std::size_t order) {
  PairingParams p;
  p.setting = PairingSetting::Plus;
  p.coefficient = a;
  p.eta = eta;
  p.gamma = gamma;
  p.theta = theta;
  p.n = n;
  return dilatation_closed(p, order);
}

TruncatedSeries dilatation_minus_closed(double b, double eta, double gamma, double theta, int n,
                                        std::size_t order, PommerenkeVariant target) {
  PairingParams p;
  p.setting = PairingSetting::Minus;
  p.coefficient = b;
  p.eta = eta;
  p.gamma = gamma;
  p.theta = theta;
  p.n = n;
  p.minus_target = target;
  return dilatation_closed(p, order);
}

TruncatedSeries convolution_dilatation_closed(const PairingParams& p, std::size_t order) {
  return std::polar(1.0, 2.0 * p.alpha) * rotate_arg(dilatation_closed(p, order), p.alpha);
}

ClosedFormPairing::ClosedFormPairing(const PairingParams& p) : p_(p) {
  require_coefficient(p.coefficient);
  require_n(p.n);
  mu_ = std::polar(1.0, p.eta + p.gamma);
  nu_ = target_variant(p) == PommerenkeVariant::Plus ? std::polar(1.0, -(p.eta - p.gamma))
                                                     : std::polar(1.0, -(p.eta + p.gamma));
  sigma_ = std::polar(1.0, p.theta - 2.0 * p.gamma);
  rot_ = std::polar(1.0, p.alpha);
  phase_ = std::polar(1.0, p.theta);
  shear_sign_ = p.setting == PairingSetting::Plus ? 1.0 : -1.0;
  const double n = p.n;
  if (p.setting == PairingSetting::Plus) {
    const double a = p.coefficient;
    k1_ = (n - (n + 2.0) * a) / (1.0 - a);
    k2_ = 2.0 / (1.0 - a);
  } else {
    const double b = p.coefficient;
    k1_ = (n + (n + 2.0) * b) / (1.0 + b);
    k2_ = 2.0 / (1.0 + b);
  }
}

Complex ClosedFormPairing::f_prime(Complex z) const {
  return 1.0 / ((1.0 + mu_ * z) * (1.0 + nu_ * z));
}

Complex ClosedFormPairing::f_log_ratio(Complex z) const {
  return -mu_ * z / (1.0 + mu_ * z) - nu_ * z / (1.0 + nu_ * z);
}

Complex ClosedFormPairing::r_prime(Complex z) const {
  return f_prime(z) / (1.0 + shear_sign_ * sigma_ * std::pow(z, p_.n));
}

Complex ClosedFormPairing::log_ratio(Complex z) const {
  const Complex s = sigma_ * std::pow(z, p_.n);
  return f_log_ratio(z) - shear_sign_ * double(p_.n) * s / (1.0 + shear_sign_ * s);
}

Complex ClosedFormPairing::bracket(Complex z) const {
  const Complex q = log_ratio(z);
  return (k1_ + q) / (k2_ + q);
}

Complex ClosedFormPairing::w_hat(Complex z) const {
  return -shear_sign_ * phase_ * std::pow(z, p_.n) * bracket(z);
}

Complex ClosedFormPairing::dilatation(Complex z) const {
  return rot_ * rot_ * w_hat(rot_ * z);
}

Complex ClosedFormPairing::h_prime(Complex z) const {
  const Complex xi = rot_ * z;
  const Complex q = log_ratio(xi);
  const Complex rp = r_prime(xi);
  if (p_.setting == PairingSetting::Plus) {
    const double c = (1.0 - p_.coefficient) / (1.0 + p_.coefficient);
    return 0.5 * rp * ((1.0 + c) + c * q);
  }
  const double d = (1.0 + p_.coefficient) / (1.0 - p_.coefficient);
  return 0.5 * rp * ((1.0 + d) + d * q);
}

Complex ClosedFormPairing::g_prime(Complex z) const {
  const Complex xi = rot_ * z;
  const Complex q = log_ratio(xi);
  const Complex sp = phase_ * std::pow(xi, p_.n) * r_prime(xi);  // S' = e^{i theta} z^n R'
  const double n = p_.n;
  if (p_.setting == PairingSetting::Plus) {
    const double c = (1.0 - p_.coefficient) / (1.0 + p_.coefficient);
    return rot_ * rot_ * 0.5 * sp * ((1.0 - c) - c * (q + n));
  }
  const double d = (1.0 + p_.coefficient) / (1.0 - p_.coefficient);
  return rot_ * rot_ * 0.5 * sp * ((d - 1.0) + d * (q + n));
}

}  // namespace harmconv
