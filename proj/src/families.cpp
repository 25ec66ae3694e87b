#include "harmconv/families.hpp"

#include <cmath>
#include <string>

#include "harmconv/errors.hpp"

namespace harmconv {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct NamedKind {
  FamilyKind kind;
  std::string_view name;
};

constexpr NamedKind kNames[] = {
    {FamilyKind::StandardF0, "standard-f0"},
    {FamilyKind::HalfPlaneFa, "half-plane-fa"},
    {FamilyKind::SlantedFaAlpha, "slanted-fa-alpha"},
    {FamilyKind::SlantedTarget, "slanted-target"},
    {FamilyKind::StripV, "strip-v"},
    {FamilyKind::PlusT, "plus-t"},
    {FamilyKind::MinusT, "minus-t"},
    {FamilyKind::MinusFbAlpha, "minus-fb-alpha"},
    {FamilyKind::CuspFc, "cusp-fc"},
};

void require_open_unit(double v, std::string_view name) {
  if (!(v > -1.0 && v < 1.0))
    throw ParameterRangeError(std::string(name) + " must lie in (-1, 1), got " +
                              std::to_string(v));
}

void require_angle(double v, std::string_view name) {
  if (!(v >= 0.0 && v < kTwoPi))
    throw ParameterRangeError(std::string(name) + " must lie in [0, 2pi), got " +
                              std::to_string(v));
}

void require_finite(double v, std::string_view name) {
  if (!std::isfinite(v))
    throw ParameterRangeError(std::string(name) + " must be finite");
}

bool reads(FamilyKind kind, std::string_view param) {
  for (const auto p : family_parameters(kind))
    if (p == param)
      return true;
  return false;
}

TruncatedSeries power_dilatation(double theta, int n, std::size_t order) {
  return TruncatedSeries::monomial(std::polar(1.0, theta), static_cast<std::size_t>(n), order);
}

// e^{2i alpha} m(z e^{i alpha}) for a series m.
TruncatedSeries slant(const TruncatedSeries& m, double alpha) {
  return std::polar(1.0, 2.0 * alpha) * rotate_arg(m, alpha);
}

// (b + z)/(1 + b z)
TruncatedSeries plus_mobius_series(double b, std::size_t order) {
  std::vector<Complex> c(order + 1);
  c[0] = b;
  double power = 1.0;
  for (std::size_t k = 1; k <= order; ++k) {
    c[k] = power * (1.0 - b * b);
    power *= -b;
  }
  return TruncatedSeries(std::move(c));
}

}  // namespace

std::string_view family_name(FamilyKind kind) {
  for (const auto& [k, name] : kNames)
    if (k == kind)
      return name;
  return "unknown";
}

FamilyKind parse_family_kind(std::string_view name) {
  for (const auto& [k, n] : kNames)
    if (n == name)
      return k;
  std::string known;
  for (const auto& [k, n] : kNames)
    known += (known.empty() ? "" : ", ") + std::string(n);
  throw ParseError("unknown family '" + std::string(name) + "' (known: " + known + ")");
}

std::vector<std::string_view> family_parameters(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::StandardF0:
    case FamilyKind::CuspFc:
      return {};
    case FamilyKind::HalfPlaneFa:
      return {"a"};
    case FamilyKind::SlantedFaAlpha:
      return {"a", "alpha"};
    case FamilyKind::SlantedTarget:
      return {"gamma", "theta", "n"};
    case FamilyKind::StripV:
      return {"beta", "theta", "n"};
    case FamilyKind::PlusT:
    case FamilyKind::MinusT:
      return {"eta", "gamma", "theta", "n"};
    case FamilyKind::MinusFbAlpha:
      return {"b", "alpha"};
  }
  return {};
}

void validate(const FamilySpec& spec) {
  if (spec.order < 2)
    throw InvalidOrderError("family order must be at least 2, got " +
                            std::to_string(spec.order));
  const auto& p = spec.params;
  const auto kind = spec.kind;
  if (reads(kind, "a"))
    require_open_unit(p.a, "a");
  if (reads(kind, "b"))
    require_open_unit(p.b, "b");
  if (reads(kind, "alpha"))
    require_angle(p.alpha, "alpha");
  if (reads(kind, "gamma"))
    require_angle(p.gamma, "gamma");
  if (reads(kind, "beta")) {
    if (std::abs(std::sin(p.beta)) < 1e-12)
      throw DegenerateStripError("strip family needs sin(beta) != 0, got beta = " +
                                 std::to_string(p.beta));
    if (!(p.beta > 0.0 && p.beta < std::numbers::pi))
      throw ParameterRangeError("beta must lie in (0, pi), got " + std::to_string(p.beta));
  }
  if (reads(kind, "eta"))
    require_finite(p.eta, "eta");
  if (reads(kind, "theta"))
    require_finite(p.theta, "theta");
  if (reads(kind, "n") && p.n < 1)
    throw ParameterRangeError("n must be at least 1, got " + std::to_string(p.n));
}

ShearTarget family_target(const FamilySpec& spec) {
  validate(spec);
  const auto N = spec.order;
  const auto& p = spec.params;
  switch (spec.kind) {
    case FamilyKind::StandardF0:
    case FamilyKind::HalfPlaneFa:
      return {make_geometric(1.0, N), ShearSign::Plus, 0.0};
    case FamilyKind::SlantedFaAlpha:
      return {make_geometric(std::polar(1.0, p.alpha), N), ShearSign::Plus, p.alpha};
    case FamilyKind::SlantedTarget:
      return {make_geometric(std::polar(1.0, p.gamma), N), ShearSign::Plus, p.gamma};
    case FamilyKind::StripV:
      return {strip_log_series(p.beta, N), ShearSign::Plus, 0.0};
    case FamilyKind::PlusT:
      return {pommerenke_f(p.eta, p.gamma, PommerenkeVariant::Plus, N), ShearSign::Plus,
              p.gamma};
    case FamilyKind::MinusT:
      return {pommerenke_f(p.eta, p.gamma, spec.minus_target, N), ShearSign::Minus, p.gamma};
    case FamilyKind::MinusFbAlpha:
      return {make_geometric(std::polar(1.0, p.alpha), N), ShearSign::Minus, p.alpha};
    case FamilyKind::CuspFc:
      return {make_geometric(1.0, N), ShearSign::Minus, 0.0};
  }
  throw PreconditionError("unhandled family kind");
}

TruncatedSeries family_dilatation(const FamilySpec& spec) {
  validate(spec);
  const auto N = spec.order;
  const auto& p = spec.params;
  switch (spec.kind) {
    case FamilyKind::StandardF0:
      return TruncatedSeries::monomial(-1.0, 1, N);
    case FamilyKind::HalfPlaneFa:
      return mobius_series(p.a, N);
    case FamilyKind::SlantedFaAlpha:
      return slant(mobius_series(p.a, N), p.alpha);
    case FamilyKind::SlantedTarget:
    case FamilyKind::StripV:
    case FamilyKind::PlusT:
    case FamilyKind::MinusT:
      return power_dilatation(p.theta, p.n, N);
    case FamilyKind::MinusFbAlpha:
      return slant(plus_mobius_series(p.b, N), p.alpha);
    case FamilyKind::CuspFc:
      return TruncatedSeries::monomial(1.0, 1, N);
  }
  throw PreconditionError("unhandled family kind");
}

HarmonicMap build_family(const FamilySpec& spec) {
  return shear(family_target(spec), family_dilatation(spec));
}

TruncatedSeries mobius_series(double a, std::size_t order) {
  std::vector<Complex> c(order + 1);
  c[0] = a;
  double power = 1.0;
  for (std::size_t k = 1; k <= order; ++k) {
    c[k] = power * (a * a - 1.0);
    power *= a;
  }
  return TruncatedSeries(std::move(c));
}

HarmonicMap closed_form_F(double a, double alpha, std::size_t order) {
  require_open_unit(a, "a");
  const double c = (1.0 - a) / (1.0 + a);
  std::vector<Complex> H(order + 1), G(order + 1);
  for (std::size_t k = 1; k <= order; ++k) {
    const double kd = static_cast<double>(k);
    H[k] = 0.5 * std::polar(1.0, (kd - 1.0) * alpha) * (1.0 + c * kd);
    G[k] = 0.5 * std::polar(1.0, (kd + 1.0) * alpha) * (1.0 - c * kd);
  }
  return {TruncatedSeries(std::move(H)), TruncatedSeries(std::move(G))};
}

HarmonicMap minus_closed_form_f(double b, double alpha, std::size_t order) {
  require_open_unit(b, "b");
  const double d = (1.0 + b) / (1.0 - b);
  std::vector<Complex> h(order + 1), g(order + 1);
  for (std::size_t k = 1; k <= order; ++k) {
    const double kd = static_cast<double>(k);
    h[k] = 0.5 * std::polar(1.0, (kd - 1.0) * alpha) * (d * kd + 1.0);
    g[k] = 0.5 * std::polar(1.0, (kd + 1.0) * alpha) * (d * kd - 1.0);
  }
  return {TruncatedSeries(std::move(h)), TruncatedSeries(std::move(g))};
}

}  // namespace harmconv
