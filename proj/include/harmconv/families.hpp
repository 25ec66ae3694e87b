#pragma once

#include <numbers>
#include <string_view>
#include <vector>

#include "harmconv/harmonic.hpp"

namespace harmconv {

enum class FamilyKind {
  StandardF0,      // H + G = z/(1-z), w = -z
  HalfPlaneFa,     // H + G = z/(1-z), w = (a-z)/(1-az)
  SlantedFaAlpha,  // H + e^{-2i alpha} G = z/(1-z e^{i alpha}), w = e^{2i alpha}(a - z e^{i alpha})/(1 - a z e^{i alpha})
  SlantedTarget,   // h + e^{-2i gamma} g = z/(1 - e^{i gamma} z), w = e^{i theta} z^n
  StripV,          // u + v = strip log map, w = e^{i theta} z^n
  PlusT,           // R + e^{-2i gamma} S = f (Pommerenke), w = e^{i theta} z^n
  MinusT,          // r - e^{-2i gamma} s = f (Pommerenke), w = e^{i theta} z^n
  MinusFbAlpha,    // h - e^{-2i alpha} g = z/(1 - z e^{i alpha}), w = e^{2i alpha}(b + z e^{i alpha})/(1 + b z e^{i alpha})
  CuspFc,          // h - g = z/(1-z), w = z
};

inline constexpr FamilyKind kAllFamilyKinds[] = {
    FamilyKind::StandardF0,   FamilyKind::HalfPlaneFa, FamilyKind::SlantedFaAlpha,
    FamilyKind::SlantedTarget, FamilyKind::StripV,     FamilyKind::PlusT,
    FamilyKind::MinusT,       FamilyKind::MinusFbAlpha, FamilyKind::CuspFc,
};

struct FamilyParams {
  double a = 0.0;
  double b = 0.0;
  double alpha = 0.0;
  double beta = std::numbers::pi / 2;
  double gamma = 0.0;
  double eta = std::numbers::pi;
  double theta = 0.0;
  int n = 1;
};

struct FamilySpec {
  FamilyKind kind = FamilyKind::StandardF0;
  FamilyParams params;
  std::size_t order = kDefaultOrder;
  // Which Pommerenke function MinusT shears. Plus shares its target with
  // PlusT; Minus uses nu = e^{-i(eta+gamma)}.
  PommerenkeVariant minus_target = PommerenkeVariant::Plus;
};

std::string_view family_name(FamilyKind kind);
// Throws ParseError on an unknown name.
FamilyKind parse_family_kind(std::string_view name);

// Names of the parameters that `kind` reads, in canonical order.
std::vector<std::string_view> family_parameters(FamilyKind kind);

// Throws ParameterRangeError / DegenerateStripError / InvalidOrderError.
void validate(const FamilySpec& spec);

ShearTarget family_target(const FamilySpec& spec);
TruncatedSeries family_dilatation(const FamilySpec& spec);

HarmonicMap build_family(const FamilySpec& spec);

// (a - z)/(1 - a z)
TruncatedSeries mobius_series(double a, std::size_t order);

// Closed forms of F_{(a,alpha)}, coefficientwise:
//   H_k = (1/2) e^{i(k-1)alpha} (1 + c k),  G_k = (1/2) e^{i(k+1)alpha} (1 - c k),
// with c = (1-a)/(1+a).
HarmonicMap closed_form_F(double a, double alpha, std::size_t order);

// Closed forms of f_{b,alpha}:
//   h_k = (1/2) e^{i(k-1)alpha} (d k + 1),  g_k = (1/2) e^{i(k+1)alpha} (d k - 1),
// with d = (1+b)/(1-b).
HarmonicMap minus_closed_form_f(double b, double alpha, std::size_t order);

}  // namespace harmconv
