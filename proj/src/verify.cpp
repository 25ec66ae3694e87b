#include "harmconv/verify.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <mutex>
#include <numbers>

#include "harmconv/errors.hpp"

namespace harmconv {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Closed ends of hypothesis ranges are matched within this tolerance.
constexpr double kHypothesisTolerance = 1e-12;
// Series and closed-form dilatations must agree this well on |z| <= crossover.
constexpr double kAgreementTolerance = 1e-8;
// Relative coefficient agreement between preset families and the general pairing.
constexpr double kReductionTolerance = 1e-9;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

bool lex_less(Complex a, Complex b) {
  return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
}

// Deterministic extremum: larger `better` wins, ties go to the
// lexicographically smallest z.
struct Extremum {
  bool found = false;
  Complex z;
  double value = 0.0;

  void offer(Complex zc, double v, bool maximize) {
    const bool better = !found || (maximize ? v > value : v < value) ||
                        (v == value && lex_less(zc, z));
    if (better) {
      found = true;
      z = zc;
      value = v;
    }
  }
};

struct NonFinite {
  bool found = false;
  Complex z;

  void offer(Complex zc) {
    if (!found || lex_less(zc, z)) {
      found = true;
      z = zc;
    }
  }
};

VerificationReport make_report(std::string name, const GridSpec& grid) {
  VerificationReport r;
  r.check_name = std::move(name);
  r.grid = grid;
  return r;
}

std::vector<Complex> horner_on_circle(const std::function<Complex(Complex)>& f, double r,
                                      std::size_t m) {
  std::vector<Complex> out(m);
  const auto zs = circle_points(r, m);
  for (std::size_t j = 0; j < m; ++j)
    out[j] = f(zs[j]);
  return out;
}

double relative_map_diff(const HarmonicMap& x, const HarmonicMap& y) {
  const double scale = std::max({1.0, max_abs_coeff(x.h), max_abs_coeff(x.g)});
  return std::max(max_coeff_diff(x.h, y.h), max_coeff_diff(x.g, y.g)) / scale;
}

}  // namespace

void GridSpec::validate() const {
  if (radii.empty())
    throw ConfigurationError("grid needs at least one radius");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0 && radii[i] < 1.0))
      throw ConfigurationError("grid radius must lie in (0, 1), got " + fmt(radii[i]));
    if (i > 0 && !(radii[i] > radii[i - 1]))
      throw ConfigurationError("grid radii must be strictly increasing");
  }
  if (angular_count < 64)
    throw ConfigurationError("angular_count must be at least 64, got " +
                             std::to_string(angular_count));
}

std::string GridSpec::describe() const {
  std::string s = "r=";
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (i > 0)
      s += ';';
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, radii[i]);
    s.append(buf, res.ptr);
  }
  return s + ";m=" + std::to_string(angular_count);
}

GridSpec GridSpec::up_to(double limit) const {
  GridSpec g{{}, angular_count};
  for (double r : radii)
    if (r <= limit)
      g.radii.push_back(r);
  return g;
}

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass:
      return "pass";
    case Verdict::Fail:
      return "fail";
    case Verdict::Inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

Verdict combine(Verdict a, Verdict b) {
  if (a == Verdict::Fail || b == Verdict::Fail)
    return Verdict::Fail;
  if (a == Verdict::Inconclusive || b == Verdict::Inconclusive)
    return Verdict::Inconclusive;
  return Verdict::Pass;
}

std::vector<Complex> circle_points(double radius, std::size_t count) {
  std::vector<Complex> z(count);
  for (std::size_t j = 0; j < count; ++j)
    z[j] = std::polar(radius, kTwoPi * double(j) / double(count));
  return z;
}

CircleSampler<Complex> series_sampler(TruncatedSeries p) {
  return [p = std::move(p)](double r, std::size_t m) { return evaluate_on_circle(p, r, m); };
}

CircleSampler<Complex> pointwise_sampler(std::function<Complex(Complex)> f) {
  return [f = std::move(f)](double r, std::size_t m) { return horner_on_circle(f, r, m); };
}

CircleSampler<double> real_pointwise_sampler(std::function<double(Complex)> f) {
  return [f = std::move(f)](double r, std::size_t m) {
    std::vector<double> out(m);
    const auto zs = circle_points(r, m);
    for (std::size_t j = 0; j < m; ++j)
      out[j] = f(zs[j]);
    return out;
  };
}

CircleSampler<double> jacobian_sampler(const HarmonicMap& f) {
  return [dh = differentiate(f.h), dg = differentiate(f.g)](double r, std::size_t m) {
    const auto hv = evaluate_on_circle(dh, r, m);
    const auto gv = evaluate_on_circle(dg, r, m);
    std::vector<double> out(m);
    for (std::size_t j = 0; j < m; ++j)
      out[j] = std::norm(hv[j]) - std::norm(gv[j]);
    return out;
  };
}

CircleSampler<Complex> log_ratio_sampler(const TruncatedSeries& r_prime) {
  std::vector<Complex> zr2(r_prime.size());
  for (std::size_t k = 1; k < r_prime.size(); ++k)
    zr2[k] = double(k) * r_prime[k];
  const double floor = 1e-12 * std::max(1.0, std::abs(r_prime[0]));
  return [rp = r_prime, zr2 = TruncatedSeries(std::move(zr2)), floor](double r, std::size_t m) {
    const auto den = evaluate_on_circle(rp, r, m);
    const auto num = evaluate_on_circle(zr2, r, m);
    std::vector<Complex> out(m);
    for (std::size_t j = 0; j < m; ++j)
      out[j] = std::abs(den[j]) < floor ? Complex(std::numeric_limits<double>::quiet_NaN(), 0.0)
                                        : num[j] / den[j];
    return out;
  };
}

VerificationReport dilatation_sup_scan(const CircleSampler<Complex>& w, const GridSpec& grid,
                                       double margin) {
  grid.validate();
  auto report = make_report("dilatation_sup", grid);
  Extremum sup;
  NonFinite bad;
  for (double r : grid.radii) {
    const auto values = w(r, grid.angular_count);
    const auto zs = circle_points(r, grid.angular_count);
    for (std::size_t j = 0; j < values.size(); ++j) {
      const double v = std::abs(values[j]);
      if (!std::isfinite(v))
        bad.offer(zs[j]);
      else
        sup.offer(zs[j], v, true);
    }
  }
  if (bad.found) {
    report.verdict = Verdict::Inconclusive;
    report.worst_witness = {bad.z, std::numeric_limits<double>::quiet_NaN()};
    report.margin = std::numeric_limits<double>::quiet_NaN();
    report.notes = "non-finite dilatation sample";
    return report;
  }
  report.worst_witness = {sup.z, sup.value};
  report.margin = (1.0 - margin) - sup.value;
  report.verdict = report.margin > 0.0 ? Verdict::Pass : Verdict::Fail;
  report.notes = "sup|w| on the grid; threshold 1 - " + fmt(margin) +
                 "; by maximum modulus the sup over the closed subdisk is attained on r = " +
                 fmt(grid.radii.back());
  return report;
}

VerificationReport dilatation_sup_scan(const TruncatedSeries& w, const GridSpec& grid,
                                       double margin) {
  return dilatation_sup_scan(series_sampler(w), grid, margin);
}

std::vector<double> circle_sup_profile(const CircleSampler<Complex>& w, const GridSpec& grid) {
  grid.validate();
  std::vector<double> out;
  out.reserve(grid.radii.size());
  for (double r : grid.radii) {
    double s = 0.0;
    for (const auto& v : w(r, grid.angular_count))
      s = std::max(s, std::abs(v));
    out.push_back(s);
  }
  return out;
}

VerificationReport jacobian_min_scan(const CircleSampler<double>& jacobian, const GridSpec& grid) {
  grid.validate();
  auto report = make_report("jacobian_min", grid);
  Extremum inf;
  NonFinite bad;
  for (double r : grid.radii) {
    const auto values = jacobian(r, grid.angular_count);
    const auto zs = circle_points(r, grid.angular_count);
    for (std::size_t j = 0; j < values.size(); ++j) {
      if (!std::isfinite(values[j]))
        bad.offer(zs[j]);
      else
        inf.offer(zs[j], values[j], false);
    }
  }
  if (bad.found) {
    report.verdict = Verdict::Inconclusive;
    report.worst_witness = {bad.z, std::numeric_limits<double>::quiet_NaN()};
    report.margin = std::numeric_limits<double>::quiet_NaN();
    report.notes = "non-finite Jacobian sample";
    return report;
  }
  report.worst_witness = {inf.z, inf.value};
  report.margin = inf.value;
  report.verdict = inf.value > 0.0 ? Verdict::Pass : Verdict::Fail;
  report.notes = "min |h'|^2 - |g'|^2 on the grid";
  return report;
}

VerificationReport jacobian_min_scan(const HarmonicMap& f, const GridSpec& grid) {
  return jacobian_min_scan(jacobian_sampler(f), grid);
}

VerificationReport re_condition_scan(const CircleSampler<Complex>& log_ratio, int n,
                                     const GridSpec& grid, double floor) {
  grid.validate();
  auto report = make_report("re_condition", grid);
  Extremum inf;
  NonFinite bad;
  for (double r : grid.radii) {
    const auto values = log_ratio(r, grid.angular_count);
    const auto zs = circle_points(r, grid.angular_count);
    for (std::size_t j = 0; j < values.size(); ++j) {
      const double v = double(n + 2) + 2.0 * values[j].real();
      if (!std::isfinite(v) || !std::isfinite(values[j].imag()))
        bad.offer(zs[j]);
      else
        inf.offer(zs[j], v, false);
    }
  }
  if (bad.found) {
    report.verdict = Verdict::Inconclusive;
    report.worst_witness = {bad.z, std::numeric_limits<double>::quiet_NaN()};
    report.margin = std::numeric_limits<double>::quiet_NaN();
    report.notes = "R' vanishes or the quotient is non-finite at the witness";
    return report;
  }
  report.worst_witness = {inf.z, inf.value};
  report.margin = inf.value - floor;
  report.verdict = report.margin > 0.0 ? Verdict::Pass : Verdict::Fail;
  report.notes = "min Re{n+2+2zR''/R'} with n = " + std::to_string(n) + "; floor " + fmt(floor);
  return report;
}

VerificationReport re_condition_scan(const TruncatedSeries& r_prime, int n, const GridSpec& grid,
                                     double floor) {
  if (std::abs(r_prime[0]) < kReciprocalFloor)
    throw PreconditionError("re_condition_scan needs R'(0) != 0");
  return re_condition_scan(log_ratio_sampler(r_prime), n, grid, floor);
}

ReversalCount count_reversals(std::span<const double> y, double plateau) {
  ReversalCount out;
  const std::size_t m = y.size();
  if (m < 2)
    return out;
  std::vector<std::pair<std::size_t, int>> steps;  // (start index, sign)
  for (std::size_t j = 0; j < m; ++j) {
    const double d = y[(j + 1) % m] - y[j];
    if (d > plateau)
      steps.emplace_back(j, 1);
    else if (d < -plateau)
      steps.emplace_back(j, -1);
  }
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const auto& prev = steps[(i + steps.size() - 1) % steps.size()];
    if (steps[i].second != prev.second)
      out.turning_points.push_back(steps[i].first);
  }
  std::sort(out.turning_points.begin(), out.turning_points.end());
  out.count = out.turning_points.size();
  return out;
}

VerificationReport direction_convexity_check(const HarmonicMap& f, double psi, double radius,
                                             std::size_t samples) {
  if (!(radius > 0.0 && radius < 1.0))
    throw PreconditionError("convexity radius must lie in (0, 1), got " + fmt(radius));
  if (samples < 64)
    throw PreconditionError("convexity check needs at least 64 samples");
  auto report = make_report("direction_convexity", GridSpec{{radius}, samples});

  const auto hv = evaluate_on_circle(f.h, radius, samples);
  const auto gv = evaluate_on_circle(f.g, radius, samples);
  const Complex rot = std::polar(1.0, -psi);
  std::vector<double> y(samples);
  bool finite = true;
  for (std::size_t j = 0; j < samples; ++j) {
    y[j] = (rot * (hv[j] + std::conj(gv[j]))).imag();
    finite = finite && std::isfinite(y[j]);
  }
  const auto zs = circle_points(radius, samples);
  const Complex end = std::polar(radius, kTwoPi);
  const double drift =
      std::abs(evaluate_map(f, end) - (hv[0] + std::conj(gv[0])));

  const std::string where = "psi = " + fmt(psi) + ", samples = " + std::to_string(samples) +
                            ", closure drift " + fmt(drift);
  if (!finite || !(drift <= kClosureTolerance)) {
    report.verdict = Verdict::Inconclusive;
    report.worst_witness = {zs[0], std::numeric_limits<double>::quiet_NaN()};
    report.margin = std::numeric_limits<double>::quiet_NaN();
    report.notes = "curve not closed or non-finite; " + where;
    return report;
  }
  const auto rc = count_reversals(y);
  const double count = double(rc.count);
  report.margin = 3.0 - count;
  std::size_t at = 0;
  if (rc.count > 2)
    at = rc.turning_points[2];
  else if (!rc.turning_points.empty())
    at = rc.turning_points[0];
  report.worst_witness = {zs[at], count};
  if (rc.count % 2 == 1) {
    report.verdict = Verdict::Inconclusive;
    report.notes = "odd reversal count; " + where;
  } else {
    report.verdict = rc.count == 2 ? Verdict::Pass : Verdict::Fail;
    report.notes = "reversals of Im(e^{-i psi} f) on |z| = r; " + where;
  }
  return report;
}

std::pair<bool, bool> lemma21_equiv(double k, double k_prime, Complex w) {
  if (!(k_prime - k > 0.0))
    throw PreconditionError("lemma21_equiv needs k' > k");
  const bool direct = std::abs(k + w) < std::abs(k_prime + w);
  const bool predicted = w.real() > -(k + k_prime) / 2.0;
  return {direct, predicted};
}

std::vector<VerificationReport> counterexample_search(PairingSetting setting, double eta,
                                                      double gamma, double theta, int n,
                                                      std::span<const double> coefficients,
                                                      const GridSpec& grid) {
  std::vector<VerificationReport> out;
  const double bnd = boundary_coefficient(setting, n);
  const char* name = setting == PairingSetting::Plus ? "a" : "b";
  for (double c : coefficients) {
    PairingParams p;
    p.setting = setting;
    p.coefficient = c;
    p.eta = eta;
    p.gamma = gamma;
    p.theta = theta;
    p.n = n;
    const ClosedFormPairing cf(p);
    auto report =
        dilatation_sup_scan(pointwise_sampler([&cf](Complex z) { return cf.w_hat(z); }), grid);
    report.check_name = std::string("counterexample_search[") + name + "=" + fmt(c) + "]";
    const bool inside = setting == PairingSetting::Plus ? c >= bnd - kHypothesisTolerance
                                                        : c <= bnd + kHypothesisTolerance;
    report.notes = (inside ? "inside" : "outside") + std::string(" the proven range; ") +
                   report.notes;
    out.push_back(std::move(report));
  }
  return out;
}

std::string_view theorem_name(TheoremId id) {
  switch (id) {
    case TheoremId::T2_3:
      return "t2.3";
    case TheoremId::T3_2:
      return "t3.2";
    case TheoremId::T1_3:
      return "t1.3";
    case TheoremId::T1_4:
      return "t1.4";
    case TheoremId::T1_5:
      return "t1.5";
    case TheoremId::T1_6:
      return "t1.6";
    case TheoremId::T1_7:
      return "t1.7";
    case TheoremId::T1_8:
      return "t1.8";
    case TheoremId::T1_9:
      return "t1.9";
  }
  return "t2.3";
}

TheoremId parse_theorem_id(std::string_view text) {
  std::string s(text);
  for (auto& ch : s)
    ch = char(std::tolower(static_cast<unsigned char>(ch)));
  if (!s.empty() && s.front() != 't')
    s = "t" + s;
  for (const auto id : kAllTheorems)
    if (theorem_name(id) == s)
      return id;
  throw ParseError("unknown theorem '" + std::string(text) +
                   "' (known: t2.3, t3.2, t1.3, t1.4, t1.5, t1.6, t1.7, t1.8, t1.9)");
}

ResolvedTheorem resolve_theorem(TheoremId id, const TheoremParams& q) {
  ResolvedTheorem out;
  auto& p = out.pairing;
  auto& v = out.violations;
  const std::string tag(theorem_name(id));

  const int n = q.n.value_or(1);
  if (n < 1)
    throw ParameterRangeError("n must be at least 1, got " + std::to_string(n));
  p.n = n;
  p.theta = q.theta.value_or(0.0);
  if (!std::isfinite(p.theta))
    throw ParameterRangeError("theta must be finite");

  std::optional<double> eta;
  for (const auto& [given, name] : {std::pair{q.eta, "eta"}, {q.beta, "beta"}, {q.psi, "psi"}}) {
    if (!given)
      continue;
    if (!std::isfinite(*given))
      throw ParameterRangeError(std::string(name) + " must be finite");
    if (eta && *eta != *given)
      throw ParameterRangeError("eta, beta and psi are aliases and must agree");
    eta = given;
  }

  const bool plus = id != TheoremId::T3_2 && id != TheoremId::T1_9;
  p.setting = plus ? PairingSetting::Plus : PairingSetting::Minus;
  const double bnd = boundary_coefficient(p.setting, n);

  auto fixed = [&](const std::optional<double>& given, double value, const char* name) {
    if (given && std::abs(*given - value) > kHypothesisTolerance)
      v.push_back(tag + " fixes " + name + " = " + fmt(value) + ", got " + fmt(*given));
    return value;
  };
  auto angle = [&](const std::optional<double>& given, const char* name) {
    const double x = given.value_or(0.0);
    if (!(x >= 0.0 && x < kTwoPi))
      v.push_back(std::string(name) + " = " + fmt(x) + " outside [0, 2pi)");
    return x;
  };
  auto small_n = [&] {
    if (n > 2)
      v.push_back(tag + " requires n in {1, 2}, got n = " + std::to_string(n));
  };
  auto plus_coefficient = [&](bool free) {
    if (q.b)
      v.push_back(tag + " does not take b");
    if (!free)
      return fixed(q.a, 0.0, "a");
    const double a = q.a.value_or(std::max(0.0, bnd));
    if (!(a > -1.0 && a < 1.0))
      throw ParameterRangeError("a must lie in (-1, 1), got " + fmt(a));
    if (a < bnd - kHypothesisTolerance)
      v.push_back("a = " + fmt(a) + " below (n-2)/(n+2) = " + fmt(bnd));
    return a;
  };
  auto minus_coefficient = [&](bool free) {
    if (q.a)
      v.push_back(tag + " does not take a");
    if (!free)
      return fixed(q.b, 0.0, "b");
    const double b = q.b.value_or(std::min(0.0, bnd));
    if (!(b > -1.0 && b < 1.0))
      throw ParameterRangeError("b must lie in (-1, 1), got " + fmt(b));
    if (b > bnd + kHypothesisTolerance)
      v.push_back("b = " + fmt(b) + " above -(n-2)/(n+2) = " + fmt(bnd));
    return b;
  };
  auto eta_in = [&](double lo, bool lo_closed, double hi, const char* name) {
    const double x = eta.value_or(kPi / 2);
    const bool ok = (lo_closed ? x >= lo - kHypothesisTolerance : x > lo) && x < hi;
    if (!ok)
      v.push_back(std::string(name) + " = " + fmt(x) + " outside " + (lo_closed ? "[" : "(") +
                  fmt(lo) + ", " + fmt(hi) + ")");
    return x;
  };

  switch (id) {
    case TheoremId::T2_3:
    case TheoremId::T3_2:
      p.coefficient = plus ? plus_coefficient(true) : minus_coefficient(true);
      p.alpha = angle(q.alpha, "alpha");
      p.gamma = angle(q.gamma, "gamma");
      p.eta = eta.value_or(kPi);
      break;
    case TheoremId::T1_3:
      small_n();
      p.coefficient = plus_coefficient(false);
      p.alpha = fixed(q.alpha, 0.0, "alpha");
      p.gamma = fixed(q.gamma, 0.0, "gamma");
      p.eta = fixed(eta, kPi, "eta");
      break;
    case TheoremId::T1_4:
      small_n();
      p.coefficient = plus_coefficient(false);
      p.alpha = fixed(q.alpha, 0.0, "alpha");
      p.gamma = fixed(q.gamma, 0.0, "gamma");
      p.eta = eta_in(kPi / 2, true, kPi, "beta");
      break;
    case TheoremId::T1_5:
      small_n();
      p.coefficient = plus_coefficient(false);
      p.alpha = fixed(q.alpha, 0.0, "alpha");
      p.gamma = angle(q.gamma, "gamma");
      p.eta = fixed(eta, kPi, "eta");
      break;
    case TheoremId::T1_6:
      p.coefficient = plus_coefficient(true);
      p.alpha = fixed(q.alpha, 0.0, "alpha");
      p.gamma = fixed(q.gamma, 0.0, "gamma");
      p.eta = fixed(eta, kPi, "eta");
      break;
    case TheoremId::T1_7:
      p.coefficient = plus_coefficient(true);
      p.alpha = fixed(q.alpha, 0.0, "alpha");
      p.gamma = fixed(q.gamma, 0.0, "gamma");
      p.eta = eta_in(0.0, false, kPi, "beta");
      break;
    case TheoremId::T1_8:
      p.coefficient = plus_coefficient(true);
      p.alpha = angle(q.alpha, "alpha");
      p.gamma = angle(q.gamma, "gamma");
      p.eta = fixed(eta, kPi, "eta");
      break;
    case TheoremId::T1_9:
      small_n();
      p.coefficient = minus_coefficient(false);
      p.alpha = fixed(q.alpha, 0.0, "alpha");
      p.gamma = fixed(q.gamma, 0.0, "gamma");
      p.eta = eta_in(kPi / 2, true, kPi, "psi");
      break;
  }
  return out;
}

std::size_t auto_order() {
  static const std::size_t order =
      std::max(order_for_radius(0.99, 2, 1e-12), order_for_radius(0.9, 3, 1e-12));
  return order;
}

namespace {

// The factors as the special-case statements define them, when they differ
// in construction from the general pairing.
std::optional<std::pair<HarmonicMap, HarmonicMap>> preset_factors(TheoremId id,
                                                                  const PairingParams& p,
                                                                  std::size_t order) {
  auto fam = [order](FamilyKind kind) {
    FamilySpec s;
    s.kind = kind;
    s.order = order;
    return s;
  };
  auto left_half_plane = [&] {
    if (p.coefficient == 0.0)
      return build_family(fam(FamilyKind::StandardF0));
    auto s = fam(FamilyKind::HalfPlaneFa);
    s.params.a = p.coefficient;
    return build_family(s);
  };
  auto slanted_target = [&] {
    auto s = fam(FamilyKind::SlantedTarget);
    s.params.gamma = p.gamma;
    s.params.theta = p.theta;
    s.params.n = p.n;
    return build_family(s);
  };
  auto strip = [&] {
    auto s = fam(FamilyKind::StripV);
    s.params.beta = p.eta;
    s.params.theta = p.theta;
    s.params.n = p.n;
    return build_family(s);
  };
  switch (id) {
    case TheoremId::T2_3:
    case TheoremId::T3_2:
      return std::nullopt;
    case TheoremId::T1_3:
    case TheoremId::T1_5:
    case TheoremId::T1_6:
      return std::pair{left_half_plane(), slanted_target()};
    case TheoremId::T1_4:
    case TheoremId::T1_7:
      return std::pair{left_half_plane(), strip()};
    case TheoremId::T1_8: {
      auto s = fam(FamilyKind::SlantedFaAlpha);
      s.params.a = p.coefficient;
      s.params.alpha = p.alpha;
      return std::pair{build_family(s), slanted_target()};
    }
    case TheoremId::T1_9: {
      const auto w = TruncatedSeries::monomial(std::polar(1.0, p.theta),
                                               static_cast<std::size_t>(p.n), order);
      return std::pair{build_family(fam(FamilyKind::CuspFc)),
                       shear({strip_log_series(p.eta, order), ShearSign::Minus, 0.0}, w)};
    }
  }
  return std::nullopt;
}

}  // namespace

namespace {

// Grid sweeps revisit the same factor many times; keep the last build.
HarmonicMap cached_family(const FamilySpec& spec) {
  struct Entry {
    FamilySpec spec;
    HarmonicMap map;
  };
  static std::mutex mutex;
  static std::optional<Entry> last;
  const auto same = [](const FamilySpec& x, const FamilySpec& y) {
    const auto &p = x.params, &q = y.params;
    return x.kind == y.kind && x.order == y.order && x.minus_target == y.minus_target &&
           p.a == q.a && p.b == q.b && p.alpha == q.alpha && p.beta == q.beta &&
           p.gamma == q.gamma && p.eta == q.eta && p.theta == q.theta && p.n == q.n;
  };
  {
    std::lock_guard lock(mutex);
    if (last && same(last->spec, spec))
      return last->map;
  }
  auto map = build_family(spec);
  std::lock_guard lock(mutex);
  last = Entry{spec, map};
  return map;
}

}  // namespace

TheoremBundle verify_pairing(TheoremId label, const PairingParams& pairing,
                             const VerifyOptions& options) {
  options.grid.validate();
  TheoremBundle bundle;
  bundle.id = label;
  bundle.pairing = pairing;
  const std::size_t order = options.order != 0 ? options.order : auto_order();
  if (order < 2)
    throw InvalidOrderError("verification order must be at least 2");
  bundle.order = order;

  const auto left = cached_family(pairing_left_family(pairing, order));
  const auto right = build_family(pairing_right_family(pairing, order));
  const auto map = convolve_maps(left, right);
  const ClosedFormPairing cf(pairing);
  const double cross = options.crossover;

  // Inside the crossover the series path is accurate at a much lower order.
  const std::size_t inner_order = std::min(order, order_for_radius(cross, 3, 1e-12));
  const HarmonicMap inner{map.h.truncated(inner_order), map.g.truncated(inner_order)};
  const auto w_series = dilatation_series(inner);

  const auto w_closed = pointwise_sampler([&cf](Complex z) { return cf.dilatation(z); });
  const auto routed_note = "series (FFT) for r <= " + fmt(cross) + ", closed form beyond";

  auto sup = dilatation_sup_scan(route_by_radius(series_sampler(w_series), w_closed, cross),
                                 options.grid);
  sup.notes += "; " + routed_note;
  bundle.reports.push_back(std::move(sup));

  {
    const auto inner_grid = options.grid.up_to(cross);
    auto report = make_report("dilatation_agreement", inner_grid);
    Extremum worst;
    for (double r : inner_grid.radii) {
      const auto a = evaluate_on_circle(w_series, r, inner_grid.angular_count);
      const auto zs = circle_points(r, inner_grid.angular_count);
      for (std::size_t j = 0; j < zs.size(); ++j)
        worst.offer(zs[j], std::abs(a[j] - cf.dilatation(zs[j])), true);
    }
    if (!worst.found) {
      report.verdict = Verdict::Inconclusive;
      report.notes = "no grid radius inside the crossover";
    } else if (!std::isfinite(worst.value)) {
      report.verdict = Verdict::Inconclusive;
      report.worst_witness = {worst.z, worst.value};
      report.notes = "non-finite dilatation sample";
    } else {
      report.worst_witness = {worst.z, worst.value};
      report.margin = kAgreementTolerance - worst.value;
      report.verdict = report.margin > 0.0 ? Verdict::Pass : Verdict::Fail;
      report.notes = "max |W_series - W_closed|, series order " + std::to_string(inner_order) +
                     "; tolerance " + fmt(kAgreementTolerance);
    }
    bundle.reports.push_back(std::move(report));
  }

  auto jac = jacobian_min_scan(
      route_by_radius(jacobian_sampler(inner),
                      real_pointwise_sampler([&cf](Complex z) { return cf.jacobian(z); }), cross),
      options.grid);
  jac.notes += "; " + routed_note;
  bundle.reports.push_back(std::move(jac));

  auto re = re_condition_scan(
      route_by_radius(series_sampler(log_ratio_series(pairing, inner_order)),
                      pointwise_sampler([&cf](Complex z) { return cf.log_ratio(z); }), cross),
      pairing.n, options.grid);
  re.notes += "; " + routed_note;
  bundle.reports.push_back(std::move(re));

  {
    const double psi = -(pairing.alpha + pairing.gamma);
    std::size_t samples = options.convexity_samples;
    auto conv = direction_convexity_check(map, psi, options.convexity_radius, samples);
    for (int retry = 0; retry < 2 && conv.verdict == Verdict::Inconclusive; ++retry) {
      samples *= 2;
      conv = direction_convexity_check(map, psi, options.convexity_radius, samples);
      conv.notes += "; resolved by doubling samples";
    }
    char tails[160];
    std::snprintf(tails, sizeof tails, "; series order %zu, tail bounds h %.3g g %.3g", order,
                  tail_bound(map.h, options.convexity_radius, 2),
                  tail_bound(map.g, options.convexity_radius, 2));
    conv.notes += tails;
    conv.notes += "; certifies the image of |z| <= r only";
    bundle.reports.push_back(std::move(conv));
  }

  std::optional<std::pair<HarmonicMap, HarmonicMap>> preset;
  try {
    preset = preset_factors(label, pairing, order);
  } catch (const ConfigurationError&) {
    // Outside the preset's own parameter domain (sweep exploration).
  }
  if (preset) {
    auto report = make_report("preset_reduction", GridSpec{});
    const double diff = std::max(relative_map_diff(preset->first, left),
                                 relative_map_diff(preset->second, right));
    report.worst_witness = {Complex(0.0, 0.0), diff};
    report.margin = kReductionTolerance - diff;
    report.verdict = report.margin > 0.0 ? Verdict::Pass : Verdict::Fail;
    report.notes = "relative coefficient distance between the " + std::string(theorem_name(label)) +
                   " factors and the general pairing factors";
    bundle.reports.push_back(std::move(report));
  }

  bundle.verdict = Verdict::Pass;
  for (const auto& r : bundle.reports)
    bundle.verdict = combine(bundle.verdict, r.verdict);
  return bundle;
}

TheoremBundle verify_theorem(TheoremId id, const TheoremParams& params,
                             const VerifyOptions& options) {
  auto resolved = resolve_theorem(id, params);
  if (!resolved.violations.empty()) {
    std::string msg = std::string(theorem_name(id)) + " hypothesis violated:";
    for (const auto& v : resolved.violations)
      msg += " " + v + ";";
    msg.pop_back();
    throw ParameterRangeError(msg);
  }
  resolved.pairing.minus_target = options.minus_target;
  return verify_pairing(id, resolved.pairing, options);
}

}  // namespace harmconv
