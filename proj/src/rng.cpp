#include "ggp/rng.hpp"

#include <boost/random/binomial_distribution.hpp>
#include <boost/random/exponential_distribution.hpp>
#include <boost/random/normal_distribution.hpp>
#include <boost/random/poisson_distribution.hpp>
#include <cmath>

#include "ggp/error.hpp"

namespace ggp {

namespace {

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream_id) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream_id),
                    static_cast<std::uint32_t>(stream_id >> 32), 0x9e3779b9u};
  return std::mt19937_64(seq);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id), engine_(make_engine(seed, stream_id)) {}

double RngStream::uniform() {
  // 53 random bits centred in their cell: k/2^53 + 2^-54, k in [0, 2^53).
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::normal() {
  boost::random::normal_distribution<double> dist;
  return dist(engine_);
}

double RngStream::exponential() {
  boost::random::exponential_distribution<double> dist;
  return dist(engine_);
}

double RngStream::log_gamma_variate(double shape) {
  if (!(shape > 0.0)) throw Error(ErrorCode::InvalidArgument, "gamma shape must be > 0");
  double log_boost = 0.0;
  double a = shape;
  if (a < 1.0) {
    log_boost = std::log(uniform()) / a;
    a += 1.0;
  }
  const double dd = a - 1.0 / 3.0;
  const double cc = 1.0 / std::sqrt(9.0 * dd);
  for (;;) {
    double x = 0.0;
    double v = 0.0;
    do {
      x = normal();
      v = 1.0 + cc * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2 || std::log(u) < 0.5 * x2 + dd * (1.0 - v + std::log(v))) {
      return std::log(dd * v) + log_boost;
    }
  }
}

double RngStream::gamma(double shape) { return std::exp(log_gamma_variate(shape)); }

std::uint64_t RngStream::poisson(double mean) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) {
    throw Error(ErrorCode::InvalidArgument, "poisson mean must be finite and >= 0");
  }
  if (mean == 0.0) return 0;
  boost::random::poisson_distribution<std::uint64_t, double> dist(mean);
  return dist(engine_);
}

std::uint64_t RngStream::binomial(std::uint64_t trials, double p) {
  if (trials == 0 || p <= 0.0) return 0;
  if (p >= 1.0) return trials;
  boost::random::binomial_distribution<std::int64_t, double> dist(
      static_cast<std::int64_t>(trials), p);
  return static_cast<std::uint64_t>(dist(engine_));
}

}  // namespace ggp
