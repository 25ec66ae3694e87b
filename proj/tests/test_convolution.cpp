#include <doctest.h>

#include "harmconv/convolution.hpp"
#include "harmconv/errors.hpp"
#include "oracles.hpp"

using namespace harmconv;

namespace {

FamilySpec family(FamilyKind kind, std::size_t order) {
  FamilySpec s;
  s.kind = kind;
  s.order = order;
  return s;
}

// Parameters inside the theorem range, where h' of the convolution has no zeros.
PairingParams random_pairing(std::mt19937_64& rng, PairingSetting setting) {
  std::uniform_real_distribution<double> u(0.0, 1.0), angle(0.0, 6.2);
  PairingParams p;
  p.setting = setting;
  p.n = 1 + int(rng() % 4);
  const double bound = boundary_coefficient(setting, p.n);
  const double edge = setting == PairingSetting::Plus ? 0.8 : -0.8;
  p.coefficient = bound + (edge - bound) * u(rng);
  p.eta = angle(rng);
  p.gamma = angle(rng);
  p.theta = angle(rng);
  return p;
}

std::vector<Complex> test_points(std::mt19937_64& rng, std::size_t count, double radius) {
  std::vector<Complex> z(count);
  for (auto& x : z)
    x = oracle::random_in_disk(rng, radius);
  return z;
}

}  // namespace

TEST_CASE("convolving with z/(1-z) keeps the analytic part") {
  std::mt19937_64 rng(41);
  const HarmonicMap f{oracle::random_series(rng, 20), oracle::random_series(rng, 20)};
  const HarmonicMap unit{make_geometric(1.0, 20), TruncatedSeries::zero(20)};
  const auto r = harmonic_convolve(f, unit);
  for (std::size_t k = 1; k <= 20; ++k)
    CHECK(r.map.h[k] == f.h[k]);
  CHECK(r.map.g == TruncatedSeries::zero(20));
  CHECK(r.map.h[0] == Complex{});
}

TEST_CASE("convolution is componentwise and commutative") {
  std::mt19937_64 rng(42);
  const HarmonicMap f1{oracle::random_series(rng, 15), oracle::random_series(rng, 15)};
  const HarmonicMap f2{oracle::random_series(rng, 15), oracle::random_series(rng, 15)};
  const auto a = convolve_maps(f1, f2);
  const auto b = convolve_maps(f2, f1);
  for (std::size_t k = 0; k <= 15; ++k) {
    CHECK(a.h[k] == f1.h[k] * f2.h[k]);
    CHECK(a.g[k] == f1.g[k] * f2.g[k]);
  }
  CHECK(max_coeff_diff(a.h, b.h) == 0.0);
  CHECK(max_coeff_diff(a.g, b.g) == 0.0);
}

TEST_CASE("F0 with itself") {
  const auto f0 = build_family(family(FamilyKind::StandardF0, 200));
  const auto r = harmonic_convolve(f0, f0, "f0*f0");
  REQUIRE(r.dilatation.has_value());
  CHECK(r.provenance == "f0*f0");
  CHECK(std::abs((*r.dilatation)[0]) < 1e-15);
  // h_k = (k+1)^2/4, g_k = (k-1)^2/4; W(1/2) by explicit sums
  Complex hp{}, gp{};
  for (int k = 1; k < 200; ++k) {
    const double zk = std::pow(0.5, k - 1);
    hp += k * (k + 1.0) * (k + 1.0) / 4.0 * zk;
    gp += k * (k - 1.0) * (k - 1.0) / 4.0 * zk;
  }
  CHECK(std::abs(evaluate(*r.dilatation, 0.5) - gp / hp) < 1e-10);
}

TEST_CASE("vanishing h'(0) is reported") {
  const HarmonicMap f{TruncatedSeries{0.0, 0.0, 1.0}, TruncatedSeries{0.0, 0.0, 1.0}};
  const auto r = harmonic_convolve(f, f);
  CHECK_FALSE(r.dilatation.has_value());
  CHECK_FALSE(r.note.empty());
}

TEST_CASE("boundary coefficient collapses the bracket") {
  for (auto setting : {PairingSetting::Plus, PairingSetting::Minus}) {
    for (int n = 1; n <= 4; ++n) {
      PairingParams p;
      p.setting = setting;
      p.n = n;
      p.coefficient = boundary_coefficient(setting, n);
      p.eta = 2.1;
      p.gamma = 0.7;
      p.theta = 1.3;
      const auto w = dilatation_closed(p, 64);
      const double sign = setting == PairingSetting::Plus ? -1.0 : 1.0;
      CHECK(std::abs(w[n] - sign * std::polar(1.0, p.theta)) < 1e-10);
      for (std::size_t k = 0; k <= 64; ++k)
        if (k != std::size_t(n))
          CHECK(std::abs(w[k]) < 1e-10);
    }
  }
  CHECK(boundary_coefficient(PairingSetting::Plus, 1) == doctest::Approx(-1.0 / 3.0));
  CHECK(boundary_coefficient(PairingSetting::Minus, 2) == 0.0);
}

TEST_CASE("n = 1, a = -1/3 gives -e^{i theta} z") {
  const auto w = dilatation_plus_closed(-1.0 / 3.0, 1.0, 0.4, 0.9, 1, 40);
  CHECK(std::abs(w[1] + std::polar(1.0, 0.9)) < 1e-12);
  CHECK(oracle::max_abs(oracle::coeffs(w - TruncatedSeries::monomial(w[1], 1, 40))) < 1e-12);
  const auto m = dilatation_minus_closed(0.0, 1.0, 0.4, 0.9, 2, 40);
  CHECK(std::abs(m[2] - std::polar(1.0, 0.9)) < 1e-12);
}

TEST_CASE("closed-form dilatation matches the convolved maps") {
  std::mt19937_64 rng(43);
  const std::size_t N = 600;
  for (auto setting : {PairingSetting::Plus, PairingSetting::Minus}) {
    for (int trial = 0; trial < 3; ++trial) {
      auto p = random_pairing(rng, setting);
      const auto conv = harmonic_convolve(pairing_left_closed(p, N),
                                          build_family(pairing_right_family(p, N)));
      REQUIRE(conv.dilatation.has_value());
      const auto closed = dilatation_closed(p, N);
      const ClosedFormPairing cf(p);
      double dev = 0.0, dev_pointwise = 0.0;
      for (const auto z : test_points(rng, 200, 0.9)) {
        const Complex w = evaluate(*conv.dilatation, z);
        dev = std::max(dev, std::abs(evaluate(closed, z) - w));
        dev_pointwise = std::max(dev_pointwise, std::abs(cf.w_hat(z) - w));
      }
      CHECK(dev < 1e-8);
      CHECK(dev_pointwise < 1e-8);
    }
  }
}

TEST_CASE("dilatation from the parts of the right factor") {
  // With c = (1-a)/(1+a), h' is proportional to 2R' + (1-a)zR'' and g' to
  // 2aS' - (1-a)zS''.
  std::mt19937_64 rng(44);
  for (int trial = 0; trial < 4; ++trial) {
    auto p = random_pairing(rng, PairingSetting::Plus);
    const double a = p.coefficient;
    const auto T = build_family(pairing_right_family(p, 400));
    const ClosedFormPairing cf(p);
    for (const auto z : test_points(rng, 20, 0.7)) {
      const Complex num = 2 * a * oracle::direct_derivative(T.g, z) -
                          (1 - a) * z * oracle::direct_second_derivative(T.g, z);
      const Complex den = 2.0 * oracle::direct_derivative(T.h, z) +
                          (1 - a) * z * oracle::direct_second_derivative(T.h, z);
      CHECK(std::abs(cf.w_hat(z) - num / den) < 1e-9);
    }
  }
}

TEST_CASE("rotation reduction") {
  std::mt19937_64 rng(45);
  for (auto setting : {PairingSetting::Plus, PairingSetting::Minus}) {
    auto p = random_pairing(rng, setting);
    p.alpha = 1.2;
    const auto W = convolution_dilatation_closed(p, 500);
    const auto w = dilatation_closed(p, 500);
    const ClosedFormPairing cf(p);
    const Complex x = std::polar(1.0, p.alpha);
    for (const auto z : test_points(rng, 50, 0.9)) {
      CHECK(std::abs(evaluate(W, z) - x * x * evaluate(w, x * z)) < 1e-8);
      CHECK(std::abs(cf.dilatation(z) - x * x * cf.w_hat(x * z)) < 1e-14);
    }
    // and the convolution itself with alpha != 0
    const auto conv = harmonic_convolve(build_family(pairing_left_family(p, 500)),
                                        build_family(pairing_right_family(p, 500)));
    for (const auto z : test_points(rng, 50, 0.85))
      CHECK(std::abs(evaluate(*conv.dilatation, z) - cf.dilatation(z)) < 1e-8);
  }
}

TEST_CASE("pointwise derivatives of the convolved parts") {
  std::mt19937_64 rng(46);
  for (auto setting : {PairingSetting::Plus, PairingSetting::Minus}) {
    auto p = random_pairing(rng, setting);
    p.alpha = 0.5;
    const auto conv = convolve_maps(pairing_left_closed(p, 400),
                                    build_family(pairing_right_family(p, 400)));
    const ClosedFormPairing cf(p);
    for (const auto z : test_points(rng, 30, 0.8)) {
      CHECK(std::abs(cf.h_prime(z) - oracle::direct_derivative(conv.h, z)) < 1e-9);
      CHECK(std::abs(cf.g_prime(z) - oracle::direct_derivative(conv.g, z)) < 1e-9);
      CHECK(cf.jacobian(z) == doctest::Approx(std::norm(cf.h_prime(z)) - std::norm(cf.g_prime(z))));
    }
  }
}

TEST_CASE("bracket decomposition") {
  std::mt19937_64 rng(47);
  for (auto setting : {PairingSetting::Plus, PairingSetting::Minus}) {
    const auto p = random_pairing(rng, setting);
    const ClosedFormPairing cf(p);
    const double sign = setting == PairingSetting::Plus ? -1.0 : 1.0;
    for (const auto z : test_points(rng, 20, 0.95)) {
      const Complex q = cf.log_ratio(z);
      const Complex b = (cf.k_numerator() + q) / (cf.k_denominator() + q);
      CHECK(std::abs(cf.bracket(z) - b) < 1e-12);
      CHECK(std::abs(cf.w_hat(z) - sign * std::polar(1.0, p.theta) * std::pow(z, p.n) * b) <
            1e-12);
    }
  }
}

TEST_CASE("bracket stays bounded in the theorem range") {
  std::mt19937_64 rng(48);
  std::uniform_real_distribution<double> u(0.0, 1.0), angle(0.0, 6.2);
  for (int trial = 0; trial < 40; ++trial) {
    PairingParams p;
    p.setting = trial % 2 ? PairingSetting::Minus : PairingSetting::Plus;
    p.n = 1 + trial % 4;
    const double bound = boundary_coefficient(p.setting, p.n);
    const double edge = p.setting == PairingSetting::Plus ? 0.95 : -0.95;
    p.coefficient = bound + (edge - bound) * u(rng);
    p.eta = angle(rng);
    p.gamma = angle(rng);
    p.theta = angle(rng);
    const ClosedFormPairing cf(p);
    double sup = 0.0;
    for (const auto z : test_points(rng, 400, 0.995))
      sup = std::max(sup, std::abs(cf.bracket(z)));
    CHECK(sup <= 1.0 + 1e-6);
  }
}

TEST_CASE("pairing errors") {
  PairingParams p;
  p.coefficient = 1.0;
  CHECK_THROWS_AS(dilatation_closed(p, 8), ParameterRangeError);
  p.coefficient = 0.0;
  p.n = 0;
  CHECK_THROWS_AS(dilatation_closed(p, 8), ParameterRangeError);
}
