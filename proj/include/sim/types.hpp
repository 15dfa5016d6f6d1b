#pragma once

#include <Eigen/Dense>
#include <complex>

namespace sim {

using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

// Tolerance for orthonormality checks; dims stay small so double is ample.
inline constexpr double kOrthoTol = 1e-10;

// Rate cap applied when a zero quantization error makes the
// interference-limited SINR unbounded.
inline constexpr double kSinrCap = 1e12;

}  // namespace sim
