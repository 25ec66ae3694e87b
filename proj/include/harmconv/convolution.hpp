#pragma once

#include <optional>
#include <string>

#include "harmconv/families.hpp"

namespace harmconv {

struct ConvolutionResult {
  HarmonicMap map;  // h1 * h2 + conj(g1 * g2); c_1 is not renormalized
  std::optional<TruncatedSeries> dilatation;  // absent when h'(0) of the result vanishes
  std::string provenance;
  std::string note;
};

HarmonicMap convolve_maps(const HarmonicMap& f1, const HarmonicMap& f2);

ConvolutionResult harmonic_convolve(const HarmonicMap& f1, const HarmonicMap& f2,
                                    std::string provenance = {});

// The two convolution pairings with closed-form dilatations:
//   Plus:  F_{(a,alpha)} * T_{(eta,gamma)}   (half-plane shear with the plus Pommerenke shear)
//   Minus: f_{b,alpha} * t_{eta,gamma}       (minus shears on both sides)
enum class PairingSetting { Plus, Minus };

struct PairingParams {
  PairingSetting setting = PairingSetting::Plus;
  double coefficient = 0.0;  // a for Plus, b for Minus
  double alpha = 0.0;
  double eta = std::numbers::pi;
  double gamma = 0.0;
  double theta = 0.0;
  int n = 1;
  PommerenkeVariant minus_target = PommerenkeVariant::Plus;
};

// (n-2)/(n+2) for Plus, -(n-2)/(n+2) for Minus: the closed end of the
// parameter range where the dilatation bracket is identically 1.
double boundary_coefficient(PairingSetting setting, int n);

// Hadamard-factor families of a pairing, built by shear.
FamilySpec pairing_left_family(const PairingParams& p, std::size_t order);
FamilySpec pairing_right_family(const PairingParams& p, std::size_t order);
// Closed-form left factor (closed_form_F or minus_closed_form_f).
HarmonicMap pairing_left_closed(const PairingParams& p, std::size_t order);

// Series for z R''/R' (resp. z r''/r') from the logarithmic derivative of
// f'/(1 +- e^{i(theta - 2 gamma)} z^n).
TruncatedSeries log_ratio_series(const PairingParams& p, std::size_t order);

// w-hat as a series: the prefactor -+e^{i theta} z^n is applied as a
// coefficient shift, the bracket by series division.
TruncatedSeries dilatation_plus_closed(double a, double eta, double gamma, double theta, int n,
                                       std::size_t order);
TruncatedSeries dilatation_minus_closed(double b, double eta, double gamma, double theta, int n,
                                        std::size_t order,
                                        PommerenkeVariant target = PommerenkeVariant::Plus);
TruncatedSeries dilatation_closed(const PairingParams& p, std::size_t order);

// W(z) = e^{2i alpha} w-hat(z e^{i alpha}) as a series.
TruncatedSeries convolution_dilatation_closed(const PairingParams& p, std::size_t order);

// Pointwise closed forms for a pairing. These avoid series truncation and
// the cancellation that series evaluation suffers near |z| = 1.
class ClosedFormPairing {
 public:
  explicit ClosedFormPairing(const PairingParams& p);

  const PairingParams& params() const { return p_; }

  Complex f_prime(Complex z) const;
  // z f''/f'
  Complex f_log_ratio(Complex z) const;
  // R' (Plus) or r' (Minus)
  Complex r_prime(Complex z) const;
  // z R''/R' (Plus) or z r''/r' (Minus)
  Complex log_ratio(Complex z) const;
  // n + 2 + 2 z R''/R'
  Complex re_condition_value(Complex z) const { return double(p_.n + 2) + 2.0 * log_ratio(z); }
  // The bracket whose modulus bounds |w-hat| / |z|^n.
  Complex bracket(Complex z) const;
  Complex w_hat(Complex z) const;
  Complex dilatation(Complex z) const;
  // Derivatives of the convolved analytic and co-analytic parts.
  Complex h_prime(Complex z) const;
  Complex g_prime(Complex z) const;
  double jacobian(Complex z) const { return std::norm(h_prime(z)) - std::norm(g_prime(z)); }

  double k_numerator() const { return k1_; }
  double k_denominator() const { return k2_; }

 private:
  PairingParams p_;
  Complex mu_, nu_, sigma_, rot_, phase_;
  double shear_sign_;  // +1: R' = f'/(1 + sigma z^n); -1: r' = f'/(1 - sigma z^n)
  double k1_, k2_;
};

}  // namespace harmconv
