#pragma once

#include <Eigen/Dense>

namespace mroot {

/// Relative cutoff for singular Hessians: |det| >= kDegeneracyFactor * scale^n
/// with scale = max |entry|.
inline constexpr double kDegeneracyFactor = 1e-12;

bool is_degenerate(const Eigen::MatrixXd& m, double* det_out = nullptr);

/// Inverse of a square matrix; throws DegenerateMetric below the cutoff.
Eigen::MatrixXd checked_inverse(const Eigen::MatrixXd& m);

struct Signature {
  int positive = 0;
  int negative = 0;
  int zero = 0;
};

/// Inertia of a symmetric matrix; eigenvalues below 1e-12 * scale count as zero.
Signature signature(const Eigen::MatrixXd& m);

}  // namespace mroot
