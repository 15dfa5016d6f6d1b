#include "sim/random.hpp"

#include <cmath>
#include <stdexcept>

namespace sim {
namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream_id) {
  // Mix both keys through splitmix64 so nearby (seed, stream_id) pairs land
  // far apart in the generator's state space.
  std::uint64_t s = seed;
  std::uint64_t a = splitmix64(s);
  s ^= stream_id * 0xda942042e4dd58b5ULL;
  std::uint64_t b = splitmix64(s);
  std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                    static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed),
      stream_id_(stream_id),
      engine_(make_engine(seed, stream_id)),
      normal_(0.0, std::sqrt(0.5)) {}

double RandomStream::normal_half() { return normal_(engine_); }

std::complex<double> RandomStream::cnormal() {
  double re = normal_(engine_);
  double im = normal_(engine_);
  return {re, im};
}

CVec sample_gaussian_vec(RandomStream& stream, int dim) {
  if (dim < 1) throw std::invalid_argument("sample_gaussian_vec: dim must be >= 1");
  CVec v(dim);
  for (int i = 0; i < dim; ++i) v(i) = stream.cnormal();
  return v;
}

CMat sample_haar_basis(RandomStream& stream, int dim) {
  if (dim < 1) throw std::invalid_argument("sample_haar_basis: dim must be >= 1");
  for (;;) {
    CMat g(dim, dim);
    for (int j = 0; j < dim; ++j)
      for (int i = 0; i < dim; ++i) g(i, j) = stream.cnormal();
    Eigen::HouseholderQR<CMat> qr(g);
    CMat q = qr.householderQ();
    CMat r = qr.matrixQR();
    bool degenerate = false;
    for (int j = 0; j < dim; ++j) {
      double mag = std::abs(r(j, j));
      if (mag < 1e-300) {
        degenerate = true;
        break;
      }
      q.col(j) *= r(j, j) / mag;
    }
    if (!degenerate) return q;
  }
}

std::complex<double> inner_product(const CVec& a, const CVec& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("inner_product: dimension mismatch");
  return a.dot(b);  // Eigen's dot conjugates the first argument.
}

}  // namespace sim
