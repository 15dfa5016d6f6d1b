#pragma once

#include <vector>

#include "sim/random.hpp"
#include "sim/types.hpp"

#include "json.hpp"

namespace sim {

enum class Regime { Normal, InterferenceLimited, NoiseLimited };

/// Channel split into gain g = ||h|| and unit-norm shape s = h / ||h||.
struct ChannelRealization {
  CVec h;
  double gain = 0.0;
  CVec shape;
  double power = 0.0;  // ||h||^2
};

ChannelRealization decompose(const CVec& h);

enum class CodebookKind { MultiBasis, Rvq };

/// Quantization codebook for channel shapes.
///
/// MultiBasis: num_bases orthonormal bases of dim vectors each (flat index
/// m * dim + n addresses vector n of basis m). Rvq: unstructured i.i.d.
/// isotropic unit vectors.
struct Codebook {
  CodebookKind kind = CodebookKind::MultiBasis;
  std::vector<CVec> vectors;
  int num_bases = 0;
  int dim = 0;

  int size() const { return static_cast<int>(vectors.size()); }
  int basis_of(int flat_index) const { return flat_index / dim; }
  int beam_of(int flat_index) const { return flat_index % dim; }
};

Codebook make_multibasis_codebook(RandomStream& stream, int nt, int num_bases);
Codebook make_rvq_codebook(RandomStream& stream, int nt, int size);

nlohmann::json codebook_to_json(const Codebook& cb);
Codebook codebook_from_json(const nlohmann::json& j);

struct ShapeQuantization {
  int codeword_index = -1;
  double eps = 0.0;  // 1 - |v^dagger s|^2 at the chosen codeword
};

/// Minimum-distortion codeword for a unit-norm shape; ties go to the lowest
/// flat index.
ShapeQuantization quantize_shape(const CVec& shape, const Codebook& cb);

struct FeedbackReport {
  int user = -1;
  int codeword_index = -1;
  double eps = 0.0;
  double sinr = 0.0;
};

/// Feedback SINR for the given regime. gamma is the per-beam SNR P / N_t.
/// InterferenceLimited with eps == 0 returns +inf; rate computations cap it.
double sinr(double gamma, double rho, double eps, Regime regime);

struct SinrQuantizer {
  std::vector<double> levels;  // 2^bits entries, evenly spaced, ascending
  int bits = 0;
};

/// Levels evenly spaced over [0, 99th percentile of the pilot samples].
SinrQuantizer build_sinr_quantizer(int bits, std::vector<double> pilot_sinrs);

/// Nearest level under squared error; ties go to the lower level.
double quantize_sinr(double x, const SinrQuantizer& q);

/// Closed-form complementary CDF of the shape quantization error,
/// valid for 0 <= delta <= 1/2.
double ccdf_eps(double delta, int nt, int num_bases);

struct LogEpsBounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// Closed-form bracket for E[-log eps] (natural log).
LogEpsBounds elog_eps_bounds(int nt, int num_bases);

}  // namespace sim
