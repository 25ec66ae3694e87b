#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "harmconv/convolution.hpp"

namespace harmconv {

// Strict inequalities "< 1" and "> 0" are certified as "< 1 - kOpenMargin"
// and "> kOpenMargin" on the grid.
inline constexpr double kOpenMargin = 1e-9;
// Consecutive samples with |dy| below this are fused into one plateau.
inline constexpr double kPlateauTolerance = 1e-10;
// Largest allowed |f(r e^{2 pi i}) - f(r)| between the Horner and FFT paths.
inline constexpr double kClosureTolerance = 1e-6;
// Radius up to which truncated series are trusted; beyond it the closed
// forms are evaluated pointwise.
inline constexpr double kSeriesCrossover = 0.9;

struct GridSpec {
  std::vector<double> radii{0.1, 0.3, 0.5, 0.7, 0.9, 0.99, 0.995};
  std::size_t angular_count = 2048;

  // Throws ConfigurationError.
  void validate() const;
  // "r=0.1;0.3;...;m=2048", comma-free for CSV.
  std::string describe() const;
  // The radii not exceeding `limit`.
  GridSpec up_to(double limit) const;
};

enum class Verdict { Pass, Fail, Inconclusive };

std::string_view verdict_name(Verdict v);
// Fail dominates Inconclusive, which dominates Pass.
Verdict combine(Verdict a, Verdict b);

struct Witness {
  Complex z{0.0, 0.0};
  double value = 0.0;
};

struct VerificationReport {
  std::string check_name;
  Verdict verdict = Verdict::Inconclusive;
  Witness worst_witness;
  double margin = 0.0;
  GridSpec grid;
  std::string notes;
};

// Values at z_j = r e^{2 pi i j/m}, j = 0..m-1.
template <class T>
using CircleSampler = std::function<std::vector<T>(double radius, std::size_t count)>;

std::vector<Complex> circle_points(double radius, std::size_t count);

CircleSampler<Complex> series_sampler(TruncatedSeries p);
CircleSampler<Complex> pointwise_sampler(std::function<Complex(Complex)> f);
CircleSampler<double> real_pointwise_sampler(std::function<double(Complex)> f);

template <class T>
CircleSampler<T> route_by_radius(CircleSampler<T> inner, CircleSampler<T> outer,
                                 double crossover = kSeriesCrossover) {
  return [inner = std::move(inner), outer = std::move(outer), crossover](double r,
                                                                         std::size_t m) {
    return r <= crossover ? inner(r, m) : outer(r, m);
  };
}

// |h'|^2 - |g'|^2 on circles, by FFT.
CircleSampler<double> jacobian_sampler(const HarmonicMap& f);
// z R''/R' on circles, by FFT; NaN where R' vanishes.
CircleSampler<Complex> log_ratio_sampler(const TruncatedSeries& r_prime);

// sup |w| over the grid; pass iff sup < 1 - margin.
VerificationReport dilatation_sup_scan(const CircleSampler<Complex>& w, const GridSpec& grid,
                                       double margin = kOpenMargin);
VerificationReport dilatation_sup_scan(const TruncatedSeries& w, const GridSpec& grid,
                                       double margin = kOpenMargin);

// max_j |w(z_j)| per radius of the grid.
std::vector<double> circle_sup_profile(const CircleSampler<Complex>& w, const GridSpec& grid);

// min J over the grid; pass iff min > 0.
VerificationReport jacobian_min_scan(const CircleSampler<double>& jacobian, const GridSpec& grid);
VerificationReport jacobian_min_scan(const HarmonicMap& f, const GridSpec& grid);

// min Re{n + 2 + 2 z R''/R'}; pass iff min > floor. Non-finite samples
// (R' vanishing) make the scan inconclusive.
VerificationReport re_condition_scan(const CircleSampler<Complex>& log_ratio, int n,
                                     const GridSpec& grid, double floor = kOpenMargin);
VerificationReport re_condition_scan(const TruncatedSeries& r_prime, int n, const GridSpec& grid,
                                     double floor = kOpenMargin);

struct ReversalCount {
  std::size_t count = 0;
  // Sample indices where the monotonicity of y changes, in increasing order.
  std::vector<std::size_t> turning_points;
};

// Cyclic count of monotonicity reversals of a periodic sample sequence.
ReversalCount count_reversals(std::span<const double> y, double plateau = kPlateauTolerance);

// Counts reversals of Im(e^{-i psi} f(r e^{it})); pass iff the count is 2.
// value = count, margin = 3 - count.
VerificationReport direction_convexity_check(const HarmonicMap& f, double psi, double radius,
                                             std::size_t samples = 4096);

// Lemma: for k' > k, |k + w| < |k' + w| iff Re w > -(k + k')/2.
// Returns (direct, predicted). Throws PreconditionError unless k' > k.
std::pair<bool, bool> lemma21_equiv(double k, double k_prime, Complex w);

// Runs dilatation_sup_scan on the pointwise closed form of w-hat for each
// coefficient (a or b) in `coefficients`; reports, never asserts.
std::vector<VerificationReport> counterexample_search(PairingSetting setting, double eta,
                                                      double gamma, double theta, int n,
                                                      std::span<const double> coefficients,
                                                      const GridSpec& grid);

enum class TheoremId { T2_3, T3_2, T1_3, T1_4, T1_5, T1_6, T1_7, T1_8, T1_9 };

inline constexpr TheoremId kAllTheorems[] = {TheoremId::T2_3, TheoremId::T3_2, TheoremId::T1_3,
                                             TheoremId::T1_4, TheoremId::T1_5, TheoremId::T1_6,
                                             TheoremId::T1_7, TheoremId::T1_8, TheoremId::T1_9};

// "t2.3", "t1.9", ...
std::string_view theorem_name(TheoremId id);
// Accepts "t2.3", "T2.3" and "2.3". Throws ParseError.
TheoremId parse_theorem_id(std::string_view text);

// Unset fields take the preset's value or default. beta (T1.4, T1.7) and
// psi (T1.9) are aliases of eta.
struct TheoremParams {
  std::optional<double> a, b, alpha, gamma, eta, beta, psi, theta;
  std::optional<int> n;
};

struct ResolvedTheorem {
  PairingParams pairing;
  // Human-readable hypothesis violations; empty when inside the theorem's range.
  std::vector<std::string> violations;
};

// Maps a preset onto the general pairing. Throws ParameterRangeError only
// when the pairing cannot be formed at all (coefficient outside (-1, 1), n < 1).
ResolvedTheorem resolve_theorem(TheoremId id, const TheoremParams& params);

struct VerifyOptions {
  GridSpec grid;
  std::size_t order = 0;  // 0 selects the order from the tail bound
  double convexity_radius = 0.99;
  std::size_t convexity_samples = 4096;
  double crossover = kSeriesCrossover;
  PommerenkeVariant minus_target = PommerenkeVariant::Plus;
};

struct TheoremBundle {
  TheoremId id = TheoremId::T2_3;
  PairingParams pairing;
  std::size_t order = 0;
  std::vector<std::string> violations;
  std::vector<VerificationReport> reports;
  Verdict verdict = Verdict::Inconclusive;
};

// N such that sum_{k>N} k^2 0.99^k and sum_{k>N} k^3 0.9^k are below 1e-12.
std::size_t auto_order();

// Builds both factors, convolves, and runs every check. No hypothesis check.
TheoremBundle verify_pairing(TheoremId label, const PairingParams& pairing,
                             const VerifyOptions& options = {});

// As verify_pairing, after the hypothesis check; throws ParameterRangeError
// naming each violated hypothesis.
TheoremBundle verify_theorem(TheoremId id, const TheoremParams& params,
                             const VerifyOptions& options = {});

}  // namespace harmconv
