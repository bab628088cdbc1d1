#pragma once

#include <cstdint>
#include <random>

namespace ggp {

/// Reproducible random stream. The pair (seed, stream_id) is hashed into the
/// full Mersenne Twister state through std::seed_seq, so streams with distinct
/// ids are independent for all practical purposes and identical pairs replay
/// bit-for-bit. Variates come from boost::random distributions, whose algorithms
/// are fixed in the headers (unlike std:: distributions).
class RngStream {
 public:
  using engine_type = std::mt19937_64;

  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  /// Uniform on the open interval (0, 1); never returns 0 or 1.
  double uniform();
  double normal();
  double exponential();
  /// Gamma(shape, 1) by Marsaglia-Tsang squeeze; shape < 1 uses the
  /// G(shape+1) * U^(1/shape) boost, evaluated in log space.
  double gamma(double shape);
  /// log of a Gamma(shape, 1) variate. Stays finite for tiny shapes where the
  /// variate itself underflows.
  double log_gamma_variate(double shape);
  /// Poisson(mean) cardinality; mean == 0 gives 0.
  std::uint64_t poisson(double mean);
  std::uint64_t binomial(std::uint64_t trials, double p);

  engine_type& engine() noexcept { return engine_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  engine_type engine_;
};

}  // namespace ggp
