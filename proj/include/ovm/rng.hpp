#pragma once

#include <cstdint>
#include <random>

#include "ovm/types.hpp"

namespace ovm {

/// Deterministic random source for the harness and samplers.
///
/// Only the raw mt19937_64 stream is consumed; every distribution below is
/// derived from it with fixed arithmetic instead of std:: distribution
/// objects, whose output is implementation defined. A seed therefore pins
/// every generated instance bit for bit.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform in {0, ..., n-1}; n > 0.
  int uniform_int(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }

  bool coin(double p = 0.5) { return uniform() < p; }

  double gaussian();

  /// Point on the unit circle.
  cplx unit_phase();

  /// Standard complex Gaussian (independent N(0,1) parts).
  cplx cgaussian() { double re = gaussian(); return {re, gaussian()}; }

  Vec gaussian_vector(Eigen::Index d);
  Mat gaussian_matrix(Eigen::Index rows, Eigen::Index cols);

  /// Haar-approximate unitary: QR of a complex Gaussian matrix with the R
  /// diagonal phases folded back into Q.
  Mat random_unitary(Eigen::Index d);

  /// Stateless sub-seed derivation (splitmix64 over a xor of the inputs).
  static std::uint64_t mix(std::uint64_t a, std::uint64_t b);

private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace ovm
