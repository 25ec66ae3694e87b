#pragma once

#include <algorithm>

#include "harmconv/series.hpp"

namespace harmconv {

// f = h + conj(g), normalized by h(0) = g(0) = 0.
struct HarmonicMap {
  TruncatedSeries h;
  TruncatedSeries g;

  std::size_t order() const { return std::min(h.order(), g.order()); }
};

enum class ShearSign { Plus = 1, Minus = -1 };

inline double sign_value(ShearSign s) { return s == ShearSign::Plus ? 1.0 : -1.0; }

// The prescribed analytic combination h + sign * e^{-2i gamma} g = F.
struct ShearTarget {
  TruncatedSeries F;
  ShearSign sign = ShearSign::Plus;
  double gamma = 0.0;
};

// Solve h + sign e^{-2i gamma} g = F together with g' = w h'.
// Throws ShearDegenerateError when 1 + sign e^{-2i gamma} w(0) vanishes.
HarmonicMap shear(const ShearTarget& target, const TruncatedSeries& w);

// h + sign e^{-2i gamma} g, the left-hand side of the defining relation.
TruncatedSeries sheared_combination(const HarmonicMap& f, ShearSign sign, double gamma);

// g'/h' as a series. Throws DegenerateMapError when h'(0) vanishes.
TruncatedSeries dilatation_series(const HarmonicMap& f);

Complex evaluate_map(const HarmonicMap& f, Complex z);

// |h'(z)|^2 - |g'(z)|^2
double jacobian_at(const HarmonicMap& f, Complex z);

}  // namespace harmconv
