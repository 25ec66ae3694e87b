#include "harmconv/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "harmconv/errors.hpp"

namespace harmconv {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

Complex map_value(const HarmonicMap& f, Complex z) {
  return evaluate(f.h, z) + std::conj(evaluate(f.g, z));
}

}  // namespace

void RenderSpec::validate() const {
  if (radial_lines < 2 || circles < 2 || samples_per_curve < 2)
    throw ConfigurationError("render counts must be at least 2");
  if (!(max_radius > 0.0 && max_radius < 1.0))
    throw ConfigurationError("max_radius must lie in (0, 1), got " + num(max_radius));
  if (!(width > 0.0 && height > 0.0))
    throw ConfigurationError("canvas size must be positive");
  if (!(stroke_width > 0.0))
    throw ConfigurationError("stroke width must be positive");
  if (direction_guide && !std::isfinite(*direction_guide))
    throw ConfigurationError("direction guide angle must be finite");
}

std::vector<ImageCurve> image_curves(const HarmonicMap& f, const RenderSpec& spec) {
  spec.validate();
  std::vector<ImageCurve> curves;
  const std::size_t m = spec.samples_per_curve;
  for (std::size_t i = 1; i <= spec.circles; ++i) {
    const double r = spec.max_radius * double(i) / double(spec.circles);
    const auto hv = evaluate_on_circle(f.h, r, m);
    const auto gv = evaluate_on_circle(f.g, r, m);
    ImageCurve c{CurveKind::Circle, r, {}};
    c.points.reserve(m + 1);
    for (std::size_t j = 0; j < m; ++j)
      c.points.push_back(hv[j] + std::conj(gv[j]));
    c.points.push_back(c.points.front());
    curves.push_back(std::move(c));
  }
  for (std::size_t j = 0; j < spec.radial_lines; ++j) {
    const double t = kTwoPi * double(j) / double(spec.radial_lines);
    const Complex dir = std::polar(1.0, t);
    ImageCurve c{CurveKind::Radial, t, {}};
    c.points.reserve(m);
    for (std::size_t i = 0; i < m; ++i)
      c.points.push_back(map_value(f, dir * (spec.max_radius * double(i) / double(m - 1))));
    curves.push_back(std::move(c));
  }
  return curves;
}

std::string render_svg(const HarmonicMap& f, const RenderSpec& spec) {
  const auto curves = image_curves(f, spec);
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0;
  double y0 = x0, y1 = -x0;
  for (const auto& c : curves)
    for (const auto& p : c.points) {
      if (!std::isfinite(p.real()) || !std::isfinite(p.imag()))
        throw Error("map is not finite on the render grid");
      x0 = std::min(x0, p.real());
      x1 = std::max(x1, p.real());
      y0 = std::min(y0, p.imag());
      y1 = std::max(y1, p.imag());
    }
  const double span = std::max({x1 - x0, y1 - y0, 1e-12});
  const double margin = 0.05 * span;
  // SVG y grows downward; image point (x, y) is drawn at (x, -y).
  const double vx = x0 - margin, vy = -y1 - margin;
  const double vw = (x1 - x0) + 2 * margin, vh = (y1 - y0) + 2 * margin;
  const double stroke = spec.stroke_width * std::max(vw / spec.width, vh / spec.height);

  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + num(spec.width) +
       "\" height=\"" + num(spec.height) + "\" viewBox=\"" + num(vx) + " " + num(vy) + " " +
       num(vw) + " " + num(vh) + "\">\n";
  s += "<g fill=\"none\" stroke=\"" + spec.stroke + "\" stroke-width=\"" + num(stroke) +
       "\" stroke-linejoin=\"round\">\n";
  for (const auto& c : curves) {
    s += "<path class=\"";
    s += c.kind == CurveKind::Circle ? "circle" : "radial";
    s += "\" d=\"";
    for (std::size_t i = 0; i < c.points.size(); ++i) {
      s += i == 0 ? "M" : " L";
      s += num(c.points[i].real()) + " " + num(-c.points[i].imag());
    }
    s += "\"/>\n";
  }
  s += "</g>\n";

  if (spec.direction_guide && spec.guide_lines > 0) {
    const Complex d = std::polar(1.0, *spec.direction_guide);
    const Complex normal = Complex(0.0, 1.0) * d;
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const Complex corner : {Complex(x0, y0), Complex(x0, y1), Complex(x1, y0),
                                 Complex(x1, y1)}) {
      const double proj = (corner * std::conj(normal)).real();
      lo = std::min(lo, proj);
      hi = std::max(hi, proj);
    }
    const double half = std::hypot(vw, vh);
    s += "<g stroke=\"" + spec.guide_stroke + "\" stroke-width=\"" + num(stroke) +
         "\" stroke-dasharray=\"" + num(4 * stroke) + " " + num(4 * stroke) + "\">\n";
    for (std::size_t k = 1; k <= spec.guide_lines; ++k) {
      const double off = lo + (hi - lo) * double(k) / double(spec.guide_lines + 1);
      const Complex a = off * normal - half * d, b = off * normal + half * d;
      s += "<line class=\"guide\" x1=\"" + num(a.real()) + "\" y1=\"" + num(-a.imag()) +
           "\" x2=\"" + num(b.real()) + "\" y2=\"" + num(-b.imag()) + "\"/>\n";
    }
    s += "</g>\n";
  }
  s += "</svg>\n";
  return s;
}

}  // namespace harmconv
