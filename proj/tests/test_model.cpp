#include <boost/math/quadrature/exp_sinh.hpp>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "ggp/error.hpp"
#include "ggp/model.hpp"

using namespace ggp;

namespace {

// Independent oracle: radial integral by double-exponential quadrature,
// sphere area from the recursion omega_{m+2} = 2 pi omega_m / m.
double quadrature_z_total(int d, double alpha, double beta) {
  boost::math::quadrature::exp_sinh<double> integrator;
  const double radial = integrator.integrate([&](double r) {
    const double v = std::pow(r, d - 1 + alpha) * std::exp(-std::pow(r, beta) / beta);
    return std::isfinite(v) ? v : 0.0;
  });
  double omega = d % 2 == 0 ? 2.0 * std::numbers::pi : 2.0;  // m = 2 or m = 1
  for (int m = d % 2 == 0 ? 2 : 1; m < d; m += 2) omega *= 2.0 * std::numbers::pi / m;
  return omega * radial;
}

ErrorCode code_of(int d, double a, double b, double l) {
  try {
    validate_params(d, a, b, l);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("validate_params accepts and rejects") {
  const auto p = validate_params(2, 0.0, 2.0, 1e5);
  CHECK(p.d == 2);
  CHECK(p.lambda == 1e5);
  CHECK(code_of(2, -1.0, 2.0, 1e5) == ErrorCode::AlphaOutOfRange);
  CHECK(code_of(3, 1.0, 0.5, 1e5) == ErrorCode::BetaOutOfRange);
  CHECK(code_of(1, 0.0, 2.0, 1e5) == ErrorCode::DimensionTooSmall);
  CHECK(code_of(2, 0.0, 2.0, 0.0) == ErrorCode::NonpositiveIntensity);
  CHECK(code_of(2, 0.0, 2.0, -3.0) == ErrorCode::NonpositiveIntensity);
}

TEST_CASE("Gaussian constants agree") {
  for (int d = 2; d <= 5; ++d) {
    const auto n = normalization(d, 0.0, 2.0);
    CHECK(n.c_star == doctest::Approx(1.0 / std::sqrt(2.0 * std::numbers::pi)).epsilon(1e-12));
    CHECK(n.c_closed_form == doctest::Approx(n.c_star).epsilon(1e-12));
    CHECK(n.constants_agree);
  }
}

TEST_CASE("closed-form constant is not a normalizer for d=2, alpha=1, beta=1") {
  const auto n = normalization(2, 1.0, 1.0);
  CHECK(n.z_total == doctest::Approx(quadrature_z_total(2, 1.0, 1.0)).epsilon(1e-10));
  CHECK(n.z_total == doctest::Approx(4.0 * std::numbers::pi).epsilon(1e-12));
  CHECK(n.c_star == doctest::Approx(0.28209479177387814).epsilon(1e-12));
  CHECK(n.c_closed_form == doctest::Approx(0.5).epsilon(1e-12));
  CHECK_FALSE(n.constants_agree);
}

TEST_CASE("one-dimensional constants coincide") {
  const auto n = normalization(1, 0.0, 1.0);
  CHECK(n.c_closed_form == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(n.c_star == doctest::Approx(0.5).epsilon(1e-12));
  for (double alpha : {-0.5, 0.0, 1.0, 2.5}) {
    for (double beta : {1.0, 1.5, 2.0, 3.0}) {
      const auto m = normalization(1, alpha, beta);
      CHECK(m.c_closed_form == doctest::Approx(m.c_star).epsilon(1e-12));
      CHECK(m.z_total == doctest::Approx(quadrature_z_total(1, alpha, beta)).epsilon(1e-9));
    }
  }
}

TEST_CASE("unit ball volumes") {
  CHECK(unit_ball_volume(0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(unit_ball_volume(1) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(unit_ball_volume(2) == doctest::Approx(std::numbers::pi).epsilon(1e-12));
  CHECK(unit_ball_volume(3) == doctest::Approx(4.0 * std::numbers::pi / 3.0).epsilon(1e-12));
  const auto n = normalization(4, 0.0, 2.0);
  REQUIRE(n.kappa.size() == 5);
  CHECK(n.kappa[4] == doctest::Approx(std::numbers::pi * std::numbers::pi / 2.0).epsilon(1e-12));
  for (int m = 1; m < 8; ++m) {
    CHECK(unit_sphere_area(m) == doctest::Approx(m * unit_ball_volume(m)).epsilon(1e-12));
  }
}

TEST_CASE("critical radius, Gaussian example") {
  const auto p = validate_params(2, 0.0, 2.0, 1e6);
  const double two_log = 2.0 * std::log(1e6);
  const double oracle_sq =
      two_log - std::log(std::pow(2.0 * std::numbers::pi, 2.0) * two_log);
  const double r = critical_radius(p);
  CHECK(r * r == doctest::Approx(oracle_sq).epsilon(1e-12));
  CHECK(r * r == doctest::Approx(20.636).epsilon(1e-4));
  CHECK(r == doctest::Approx(4.5427).epsilon(1e-4));
  CHECK(critical_radius(p, ConstantMode::closed_form) == doctest::Approx(r).epsilon(1e-12));
}

TEST_CASE("critical radius rejects tiny intensities") {
  const auto p = validate_params(2, 0.0, 2.0, 1.05);
  CHECK_THROWS_AS(critical_radius(p), Error);
  try {
    critical_radius(p);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IntensityTooSmall);
  }
  CHECK_THROWS_AS(critical_radius(validate_params(2, 0.0, 2.0, 0.5)), Error);
}

TEST_CASE("critical radius identity for random parameters") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> ua(-0.9, 3.0), ub(1.0, 4.0), ul(5.0, 25.0);
  int checked = 0;
  for (int t = 0; t < 200; ++t) {
    const int d = 2 + t % 4;
    const auto p = validate_params(d, ua(gen), ub(gen), std::exp(ul(gen)));
    double r = 0.0;
    try {
      r = critical_radius(p);
    } catch (const Error&) {
      continue;
    }
    const double c = normalization(p).c_star;
    const double lhs = std::exp(-std::pow(r, p.beta) / p.beta) * p.lambda * std::pow(c, d);
    const double e = p.beta * (d + 1) - 2.0 * d - 2.0 * p.alpha;
    const double rhs = std::pow(p.beta * std::log(p.lambda), e / (2.0 * p.beta));
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    ++checked;
  }
  CHECK(checked > 150);
}

TEST_CASE("pushforward mass equals lambda") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> ua(-0.9, 3.0), ub(1.0, 4.0);
  for (int t = 0; t < 30; ++t) {
    const int d = 2 + t % 4;
    const double alpha = ua(gen);
    const double beta = ub(gen);
    const double lambda = 1e4;
    const double c = normalization(d, alpha, beta).c_star;
    const double mass = lambda * std::pow(c, d) * quadrature_z_total(d, alpha, beta);
    CHECK(mass == doctest::Approx(lambda).epsilon(1e-6));
  }
}

TEST_CASE("critical radius increases with lambda") {
  for (auto [alpha, beta] : {std::pair{0.0, 2.0}, {1.0, 1.0}, {0.5, 1.5}, {-0.5, 3.0}}) {
    double prev = 0.0;
    bool first = true;
    for (int k = 0; k < 100; ++k) {
      const double lambda = std::pow(10.0, 2.0 + 0.08 * k);
      const auto p = validate_params(3, alpha, beta, lambda);
      double r = 0.0;
      try {
        r = critical_radius(p);
      } catch (const Error&) {
        continue;
      }
      if (!first) CHECK(r > prev);
      prev = r;
      first = false;
    }
  }
}
