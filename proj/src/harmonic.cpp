#include "harmconv/harmonic.hpp"

#include <cmath>

#include "harmconv/errors.hpp"

namespace harmconv {

HarmonicMap shear(const ShearTarget& target, const TruncatedSeries& w) {
  const auto& F = target.F;
  if (F.order() < 1 || std::abs(F[0]) > 1e-12 || std::abs(F[1] - 1.0) > 1e-12)
    throw PreconditionError("shear target must satisfy F(0) = 0 and F'(0) = 1");

  const Complex rot = sign_value(target.sign) * std::polar(1.0, -2.0 * target.gamma);
  const auto dF = differentiate(F);
  const auto denom = TruncatedSeries::constant(1.0, w.order()) + rot * w;
  if (std::abs(denom[0]) < kReciprocalFloor)
    throw ShearDegenerateError("shear: 1 + sign e^{-2i gamma} w(0) vanishes");

  const auto dh = divide(dF, denom);
  const auto dg = cauchy_product(w, dh);
  return HarmonicMap{integrate0(dh), integrate0(dg)};
}

TruncatedSeries sheared_combination(const HarmonicMap& f, ShearSign sign, double gamma) {
  return f.h + (sign_value(sign) * std::polar(1.0, -2.0 * gamma)) * f.g;
}

TruncatedSeries dilatation_series(const HarmonicMap& f) {
  const auto dh = differentiate(f.h);
  if (std::abs(dh[0]) < kReciprocalFloor)
    throw DegenerateMapError("dilatation: h'(0) vanishes");
  return divide(differentiate(f.g), dh);
}

Complex evaluate_map(const HarmonicMap& f, Complex z) {
  return evaluate(f.h, z) + std::conj(evaluate(f.g, z));
}

double jacobian_at(const HarmonicMap& f, Complex z) {
  const auto dh = evaluate(differentiate(f.h), z);
  const auto dg = evaluate(differentiate(f.g), z);
  return std::norm(dh) - std::norm(dg);
}

}  // namespace harmconv
