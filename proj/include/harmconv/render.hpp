#pragma once

#include <optional>
#include <string>
#include <vector>

#include "harmconv/harmonic.hpp"

namespace harmconv {

struct RenderSpec {
  std::size_t radial_lines = 24;
  std::size_t circles = 12;
  double max_radius = 0.99;
  std::size_t samples_per_curve = 720;
  std::optional<double> direction_guide;  // psi; guides are parallel to e^{i psi}
  std::size_t guide_lines = 9;
  double width = 800.0;
  double height = 800.0;
  std::string stroke = "#1f4e79";
  std::string guide_stroke = "#c0392b";
  double stroke_width = 1.0;  // pixels

  // Throws ConfigurationError.
  void validate() const;
};

enum class CurveKind { Circle, Radial };

struct ImageCurve {
  CurveKind kind;
  double parameter;  // radius of a circle, angle of a radial segment
  std::vector<Complex> points;
};

// Images of |z| = max_radius * i / circles (i = 1..circles) and of the radial
// segments from 0 to max_radius at angles 2 pi j / radial_lines.
std::vector<ImageCurve> image_curves(const HarmonicMap& f, const RenderSpec& spec);

// SVG 1.1 document; y axis points up, viewBox fitted with a 5% margin.
std::string render_svg(const HarmonicMap& f, const RenderSpec& spec);

}  // namespace harmconv
