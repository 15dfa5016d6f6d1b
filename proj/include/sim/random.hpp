#pragma once

#include <cstdint>
#include <random>

#include "sim/types.hpp"

namespace sim {

/// Deterministic random stream keyed by (seed, stream_id).
///
/// Identical keys reproduce the exact same sample sequence; distinct
/// stream_ids give decorrelated sequences, so Monte Carlo trials can be
/// distributed over threads without sharing generator state.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  /// One real N(0, 1/2) sample (the per-component variance of a unit CN(0,1)).
  double normal_half();

  /// One circularly-symmetric complex Gaussian sample, CN(0,1).
  std::complex<double> cnormal();

  std::mt19937_64& engine() { return engine_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
};

/// i.i.d. CN(0,1) vector of the given dimension.
CVec sample_gaussian_vec(RandomStream& stream, int dim);

/// Haar-uniform orthonormal basis: columns of the returned dim x dim matrix.
///
/// QR of an i.i.d. Gaussian matrix with the R-diagonal phases absorbed into
/// Q, which makes the distribution exactly Haar. A numerically singular draw
/// is resampled.
CMat sample_haar_basis(RandomStream& stream, int dim);

/// Conjugate-linear in the first argument: a^dagger b.
std::complex<double> inner_product(const CVec& a, const CVec& b);

}  // namespace sim
