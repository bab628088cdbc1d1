#include "ggp/rescale.hpp"

#include <cmath>
#include <numbers>

#include "ggp/error.hpp"

namespace ggp {

namespace {

double norm(const double* x, int n) {
  double s = 0.0;
  for (int j = 0; j < n; ++j) s += x[j] * x[j];
  return std::sqrt(s);
}

// sin(t)/t, exact at 0.
double sinc(double t) { return t == 0.0 ? 1.0 : std::sin(t) / t; }

}  // namespace

std::vector<double> exp_inverse(const double* u, int d) {
  if (d < 2) throw Error(ErrorCode::DimensionTooSmall, "sphere dimension must be >= 1");
  std::vector<double> v(d - 1, 0.0);
  const double s = norm(u, d - 1);
  if (s == 0.0) {
    if (u[d - 1] < 0.0) v[d - 2] = std::numbers::pi;
    return v;
  }
  const double theta = std::atan2(s, u[d - 1]);
  for (int j = 0; j < d - 1; ++j) v[j] = theta * u[j] / s;
  return v;
}

void exp_map(const double* v, int d, double* u) {
  const double theta = norm(v, d - 1);
  const double f = sinc(theta);
  for (int j = 0; j < d - 1; ++j) u[j] = f * v[j];
  u[d - 1] = std::cos(theta);
}

std::vector<double> exp_map(const std::vector<double>& v) {
  const int d = static_cast<int>(v.size()) + 1;
  std::vector<double> u(d);
  exp_map(v.data(), d, u.data());
  return u;
}

double sphere_distance(const double* u, const double* w, int d) {
  double dm = 0.0;
  double dp = 0.0;
  for (int j = 0; j < d; ++j) {
    dm += (u[j] - w[j]) * (u[j] - w[j]);
    dp += (u[j] + w[j]) * (u[j] + w[j]);
  }
  return 2.0 * std::atan2(std::sqrt(dm), std::sqrt(dp));
}

Scaling::Scaling(const ModelParams& params, double r_lambda) : params_(params), r_(r_lambda) {
  validate_params(params.d, params.alpha, params.beta, params.lambda);
  if (!(r_lambda >= 1.0) || !std::isfinite(r_lambda)) {
    throw Error(ErrorCode::IntensityTooSmall, "r_lambda must be >= 1");
  }
  r_beta_ = std::pow(r_, params_.beta);
  r_half_ = std::pow(r_, params_.beta / 2.0);
  log_lambda_cd_ = std::log(params_.lambda) + params_.d * std::log(normalization(params_).c_star);
}

Scaling::Scaling(const ModelParams& params) : Scaling(params, critical_radius(params)) {}

bool Scaling::in_window(const ScaledPoint& w) const {
  if (static_cast<int>(w.v.size()) != d() - 1) return false;
  const double vn = norm(w.v.data(), d() - 1);
  return vn <= std::numbers::pi * r_half_ * (1.0 + 1e-12) && w.h <= r_beta_ * (1.0 + 1e-14) &&
         std::isfinite(w.h);
}

ScaledPoint Scaling::transform(const double* x) const {
  const int d = params_.d;
  ScaledPoint w;
  const double r = norm(x, d);
  if (r == 0.0) {
    w.v.assign(d - 1, 0.0);
    w.h = r_beta_;
    return w;
  }
  std::vector<double> u(x, x + d);
  for (double& c : u) c /= r;
  w.v = exp_inverse(u.data(), d);
  for (double& c : w.v) c *= r_half_;
  w.h = r_beta_ * (1.0 - r / r_);
  return w;
}

std::vector<double> Scaling::inverse_transform(const ScaledPoint& w) const {
  if (!in_window(w)) throw Error(ErrorCode::OutsideWindow, "point is outside W_lambda");
  const int d = params_.d;
  const double r = std::max(0.0, r_ * (1.0 - w.h / r_beta_));
  std::vector<double> t(w.v);
  for (double& c : t) c /= r_half_;
  std::vector<double> x(d);
  exp_map(t.data(), d, x.data());
  for (double& c : x) c *= r;
  return x;
}

double Scaling::log_rescaled_intensity(const ScaledPoint& w) const {
  if (!in_window(w)) throw Error(ErrorCode::OutsideWindow, "point is outside W_lambda");
  const int d = params_.d;
  const double a = params_.alpha;
  const double b = params_.beta;
  const double r = r_ * (1.0 - w.h / r_beta_);
  if (!(r > 0.0)) return -std::numeric_limits<double>::infinity();
  const double t = norm(w.v.data(), d - 1) / r_half_;
  const double s = sinc(t);
  if (d > 2 && !(s > 0.0)) return -std::numeric_limits<double>::infinity();
  const double log_r = std::log(r_);
  return log_lambda_cd_ + (a + d - 1) * std::log(r) - std::pow(r, b) / b + (1.0 - b) * log_r -
         0.5 * b * (d - 1) * log_r + (d - 2) * std::log(s);
}

double Scaling::rescaled_intensity(const ScaledPoint& w) const {
  return std::exp(log_rescaled_intensity(w));
}

double Scaling::approximate_intensity(const ScaledPoint& w) const {
  if (!in_window(w)) throw Error(ErrorCode::OutsideWindow, "point is outside W_lambda");
  const int d = params_.d;
  const double b = params_.beta;
  const double e = b * (d + 1) - 2.0 * d - 2.0 * params_.alpha;
  const double t = norm(w.v.data(), d - 1) / r_half_;
  const double log_val = (d - 2) * std::log(sinc(t)) +
                         e / (2.0 * b) * std::log(b * std::log(params_.lambda)) -
                         0.5 * e * std::log(r_) + w.h +
                         (d - 1 + params_.alpha) * std::log1p(-w.h / r_beta_);
  return std::exp(log_val);
}

double Scaling::geodesic_distance(const std::vector<double>& v1,
                                  const std::vector<double>& v2) const {
  const int d = params_.d;
  std::vector<double> a(v1), b(v2);
  for (double& c : a) c /= r_half_;
  for (double& c : b) c /= r_half_;
  std::vector<double> ua(d), ub(d);
  exp_map(a.data(), d, ua.data());
  exp_map(b.data(), d, ub.data());
  return sphere_distance(ua.data(), ub.data(), d);
}

double grain_boundary(const QuasiGrain& g, const std::vector<double>& v) {
  if (v.size() != g.apex.v.size()) {
    throw Error(ErrorCode::InvalidArgument, "spatial dimension mismatch");
  }
  if (!(g.r_lambda >= 1.0)) throw Error(ErrorCode::IntensityTooSmall, "r_lambda must be >= 1");
  const int d = static_cast<int>(v.size()) + 1;
  const double r_half = std::pow(g.r_lambda, g.beta / 2.0);
  const double r_beta = std::pow(g.r_lambda, g.beta);
  std::vector<double> a(g.apex.v), b(v);
  for (double& c : a) c /= r_half;
  for (double& c : b) c /= r_half;
  std::vector<double> ua(d), ub(d);
  exp_map(a.data(), d, ua.data());
  exp_map(b.data(), d, ub.data());
  const double t = sphere_distance(ua.data(), ub.data(), d);
  const double h1 = g.apex.h;
  if (g.orientation == GrainOrientation::up) {
    const double s = std::sin(0.5 * t);
    // 1 - cos t = 2 sin^2(t/2) avoids cancellation for small t.
    return r_beta * 2.0 * s * s + h1 * std::cos(t);
  }
  if (t >= 0.5 * std::numbers::pi) {
    throw Error(ErrorCode::CosineDegenerate, "down grain evaluated at geodesic distance >= pi/2");
  }
  const double c = std::cos(t);
  // R^b - (R^b - h1)/c = h1 - (R^b - h1)(1 - c)/c
  const double s = std::sin(0.5 * t);
  return h1 - (r_beta - h1) * (2.0 * s * s) / c;
}

}  // namespace ggp
