#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "ggp/error.hpp"
#include "ggp/rescale.hpp"
#include "ggp/rng.hpp"
#include "ggp/sampling.hpp"

using namespace ggp;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

double log_phi(const ModelParams& p, const std::vector<double>& x) {
  double r2 = 0.0;
  for (double c : x) r2 += c * c;
  const double r = std::sqrt(r2);
  const double c = normalization(p).c_star;
  return p.d * std::log(c) + p.alpha * std::log(r) - std::pow(r, p.beta) / p.beta;
}

// |det D T^{-1}| by central differences in (v, h).
double numeric_jacobian(const Scaling& s, const ScaledPoint& w) {
  const int d = s.d();
  Eigen::MatrixXd j(d, d);
  for (int k = 0; k < d; ++k) {
    ScaledPoint a = w;
    ScaledPoint b = w;
    const double base = k < d - 1 ? std::abs(w.v[k]) : std::abs(w.h);
    const double eps = 1e-5 * std::max(1.0, base);
    if (k < d - 1) {
      a.v[k] += eps;
      b.v[k] -= eps;
    } else {
      a.h += eps;
      b.h -= eps;
    }
    const auto xa = s.inverse_transform(a);
    const auto xb = s.inverse_transform(b);
    for (int i = 0; i < d; ++i) j(i, k) = (xa[i] - xb[i]) / (2.0 * eps);
  }
  return std::abs(j.determinant());
}

}  // namespace

TEST_CASE("exponential map round trip and antipode") {
  RngStream rng(3, 0);
  for (int d = 2; d <= 6; ++d) {
    for (int t = 0; t < 200; ++t) {
      const auto u = sample_direction(rng, d);
      const auto v = exp_inverse(u.data(), d);
      double n = 0.0;
      for (double c : v) n += c * c;
      CHECK(std::sqrt(n) <= std::numbers::pi + 1e-15);
      CHECK(std::sqrt(n) == doctest::Approx(std::acos(std::clamp(u[d - 1], -1.0, 1.0))).epsilon(1e-9));
      const auto back = exp_map(v);
      for (int j = 0; j < d; ++j) CHECK(back[j] == doctest::Approx(u[j]).epsilon(1e-12).scale(1.0));
    }
    std::vector<double> south(d, 0.0);
    south[d - 1] = -1.0;
    const auto s = exp_inverse(south.data(), d);
    CHECK(s[d - 2] == doctest::Approx(std::numbers::pi));
    const auto back = exp_map(s);
    CHECK(back[d - 1] == doctest::Approx(-1.0));
    std::vector<double> north(d, 0.0);
    north[d - 1] = 1.0;
    for (double c : exp_inverse(north.data(), d)) CHECK(c == 0.0);
  }
}

TEST_CASE("transform round trip") {
  RngStream rng(5, 0);
  for (int d = 2; d <= 5; ++d) {
    const ModelParams p{d, 0.5, 1.5, 1e6};
    const Scaling s(p);
    for (int t = 0; t < 300; ++t) {
      std::vector<double> x = sample_direction(rng, d);
      const double r = sample_radius(rng, d, p.alpha, p.beta);
      for (double& c : x) c *= r;
      const auto w = s.transform(x.data());
      CHECK(s.in_window(w));
      const auto y = s.inverse_transform(w);
      for (int j = 0; j < d; ++j) CHECK(y[j] == doctest::Approx(x[j]).epsilon(1e-10).scale(r));
      const auto w2 = s.transform(y.data());
      CHECK(w2.h == doctest::Approx(w.h).epsilon(1e-10).scale(s.height_scale()));
    }
    std::vector<double> o(d, 0.0);
    const auto wo = s.transform(o.data());
    CHECK(wo.h == doctest::Approx(s.height_scale()));
    for (double c : wo.v) CHECK(c == 0.0);
  }
}

TEST_CASE("transform of the Gaussian example") {
  const ModelParams p{2, 0.0, 2.0, 1e6};
  const Scaling s(p);
  CHECK(s.r_lambda() == doctest::Approx(4.5427).epsilon(1e-4));
  const double x[2] = {0.0, 4.0};
  const auto w = s.transform(x);
  CHECK(w.v[0] == doctest::Approx(0.0));
  CHECK(w.h == doctest::Approx(s.height_scale() * (1.0 - 4.0 / s.r_lambda())));
}

TEST_CASE("window violations") {
  const ModelParams p{3, 0.0, 2.0, 1e5};
  const Scaling s(p);
  ScaledPoint w{{0.0, 0.0}, s.height_scale() * 1.01};
  CHECK(code_of([&] { s.inverse_transform(w); }) == ErrorCode::OutsideWindow);
  CHECK(code_of([&] { s.rescaled_intensity(w); }) == ErrorCode::OutsideWindow);
  w = ScaledPoint{{4.0 * s.spatial_scale(), 0.0}, 0.0};
  CHECK(code_of([&] { s.inverse_transform(w); }) == ErrorCode::OutsideWindow);
  CHECK(code_of([&] { Scaling(p, 0.5); }) == ErrorCode::IntensityTooSmall);
}

TEST_CASE("intensity matches numeric Jacobian") {
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int t = 0; t < 60; ++t) {
    const int d = 2 + t % 4;
    const ModelParams p{d, -0.5 + 3.0 * unit(gen), 1.0 + 2.0 * unit(gen), std::pow(10.0, 3.0 + 5.0 * unit(gen))};
    double r = 1.0;
    try {
      r = critical_radius(p);
    } catch (const Error&) {
      continue;
    }
    Scaling s(p, r);
    ScaledPoint w;
    w.v.resize(d - 1);
    for (double& c : w.v) c = (2.0 * unit(gen) - 1.0) * 0.4 * s.spatial_scale();
    w.h = -3.0 + 5.0 * unit(gen);
    if (w.h >= s.height_scale()) continue;
    const auto x = s.inverse_transform(w);
    const double oracle = std::log(p.lambda) + log_phi(p, x) + std::log(numeric_jacobian(s, w));
    CHECK(s.log_rescaled_intensity(w) == doctest::Approx(oracle).epsilon(1e-6).scale(1.0));
  }
}

TEST_CASE("intensity integrates to lambda") {
  using boost::math::quadrature::gauss_kronrod;
  for (auto [d, alpha, beta] : {std::tuple{2, 0.0, 2.0}, {2, 1.0, 1.0}, {3, 0.5, 1.5}, {3, 0.0, 2.0}}) {
    const ModelParams p{d, alpha, beta, 1e5};
    const Scaling s(p);
    const double rb = s.height_scale();
    const double rs = s.spatial_scale();
    // Mass in the h direction at fixed |v| = rho, then integrate over the v ball.
    auto column = [&](double rho) {
      ScaledPoint w;
      w.v.assign(d - 1, 0.0);
      w.v[0] = rho;
      auto f = [&](double h) {
        w.h = h;
        return s.rescaled_intensity(w);
      };
      // r = R(1 - h/R^b) runs over [0, inf) as h runs over (-inf, R^b]; split at 0.
      return gauss_kronrod<double, 61>::integrate(f, -rb * 40.0, 0.0, 15, 1e-11) +
             gauss_kronrod<double, 61>::integrate(f, 0.0, rb, 15, 1e-11);
    };
    double mass = 0.0;
    if (d == 2) {
      mass = 2.0 * gauss_kronrod<double, 61>::integrate(column, 0.0, std::numbers::pi * rs, 10, 1e-10);
    } else {
      auto shell = [&](double rho) { return 2.0 * std::numbers::pi * rho * column(rho); };
      mass = gauss_kronrod<double, 61>::integrate(shell, 0.0, std::numbers::pi * rs, 10, 1e-10);
    }
    CHECK(mass == doctest::Approx(p.lambda).epsilon(1e-6));
  }
}

TEST_CASE("large-lambda form converges to the exact intensity") {
  for (auto [d, alpha, beta] : {std::tuple{2, 0.0, 2.0}, {3, 1.0, 1.5}, {4, 0.0, 3.0}}) {
    double prev_err = 1e300;
    for (double lambda : {1e4, 1e8, 1e16, 1e32}) {
      const ModelParams p{d, alpha, beta, lambda};
      const Scaling s(p);
      double err = 0.0;
      for (double h : {-2.0, -1.0, 0.0, 1.0, 2.0}) {
        ScaledPoint w{std::vector<double>(d - 1, 0.3), h};
        err = std::max(err, std::abs(std::log(s.approximate_intensity(w) / s.rescaled_intensity(w))));
      }
      CHECK(err < prev_err);
      prev_err = err;
    }
    CHECK(prev_err < 0.05);
  }
}

TEST_CASE("points of the process land in the window") {
  RngStream rng(9, 1);
  const ModelParams p{3, 0.0, 2.0, 2e4};
  const Scaling s(p);
  const auto cloud = sample_polytope_input(rng, p);
  for (std::size_t i = 0; i < cloud.size(); ++i) CHECK(s.in_window(s.transform(cloud[i].data())));
}

TEST_CASE("geodesic distance in rescaled coordinates") {
  const ModelParams p{3, 0.0, 2.0, 1e6};
  const Scaling s(p);
  const std::vector<double> a{0.3, -0.2};
  const std::vector<double> b{-0.1, 0.5};
  const double flat = std::hypot(0.4, -0.7) / s.spatial_scale();
  CHECK(s.geodesic_distance(a, b) == doctest::Approx(flat).epsilon(1e-3));
  CHECK(s.geodesic_distance(a, a) == doctest::Approx(0.0).scale(1.0));
  const std::vector<double> o{0.0, 0.0};
  const std::vector<double> far{std::numbers::pi * s.spatial_scale(), 0.0};
  CHECK(s.geodesic_distance(o, far) == doctest::Approx(std::numbers::pi));
}

TEST_CASE("quasi-grains are images of balls and half-spaces") {
  // Up grain: image of the sphere with diameter [o, x']; down grain: image of the
  // hyperplane through x' orthogonal to x'.
  RngStream rng(21, 0);
  for (int d = 2; d <= 4; ++d) {
    const ModelParams p{d, 0.0, 2.0, 1e5};
    const Scaling s(p);
    for (int t = 0; t < 50; ++t) {
      std::vector<double> xp = sample_direction(rng, d);
      const double rp = s.r_lambda() * (0.9 + 0.2 * rng.uniform());
      for (double& c : xp) c *= rp;
      const ScaledPoint apex = s.transform(xp.data());
      const auto u = sample_direction(rng, d);
      double cosang = 0.0;
      for (int j = 0; j < d; ++j) cosang += u[j] * xp[j] / rp;
      std::vector<double> y(d);
      const auto wdir = s.transform(u.data());
      if (cosang > 0.0) {
        for (int j = 0; j < d; ++j) y[j] = u[j] * rp * cosang;
        const auto wy = s.transform(y.data());
        QuasiGrain g{apex, GrainOrientation::up, s.r_lambda(), p.beta};
        CHECK(grain_boundary(g, wdir.v) == doctest::Approx(wy.h).epsilon(1e-9).scale(s.height_scale()));
      }
      if (cosang > 0.05) {
        for (int j = 0; j < d; ++j) y[j] = u[j] * rp / cosang;
        const auto wy = s.transform(y.data());
        QuasiGrain g{apex, GrainOrientation::down, s.r_lambda(), p.beta};
        CHECK(grain_boundary(g, wdir.v) == doctest::Approx(wy.h).epsilon(1e-9).scale(s.height_scale()));
      }
    }
  }
}

TEST_CASE("quasi-grains approach paraboloids") {
  const std::vector<double> apex_v{0.2, -0.1};
  const std::vector<double> v{1.0, 0.7};
  const double dist2 = 0.8 * 0.8 + 0.8 * 0.8;
  double prev_up = 1e300;
  double prev_down = 1e300;
  for (double lambda : {1e4, 1e8, 1e16, 1e32}) {
    const ModelParams p{3, 0.0, 2.0, lambda};
    const Scaling s(p);
    QuasiGrain up{{apex_v, 0.5}, GrainOrientation::up, s.r_lambda(), p.beta};
    QuasiGrain down{{apex_v, 0.5}, GrainOrientation::down, s.r_lambda(), p.beta};
    const double eu = std::abs(grain_boundary(up, v) - (0.5 + dist2 / 2.0));
    const double ed = std::abs(grain_boundary(down, v) - (0.5 - dist2 / 2.0));
    CHECK(grain_boundary(up, v) >= grain_boundary(down, v));
    CHECK(eu < prev_up);
    CHECK(ed < prev_down);
    prev_up = eu;
    prev_down = ed;
  }
  CHECK(prev_up < 1e-2);
  CHECK(prev_down < 1e-2);
}

TEST_CASE("down grain degenerates at right angle") {
  const ModelParams p{2, 0.0, 2.0, 1e4};
  const Scaling s(p);
  QuasiGrain g{{{0.0}, 0.0}, GrainOrientation::down, s.r_lambda(), p.beta};
  const std::vector<double> v{0.5 * std::numbers::pi * s.spatial_scale()};
  CHECK(code_of([&] { grain_boundary(g, v); }) == ErrorCode::CosineDegenerate);
  g.orientation = GrainOrientation::up;
  CHECK(grain_boundary(g, v) == doctest::Approx(s.height_scale()));
}
