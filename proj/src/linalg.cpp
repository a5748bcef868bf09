#include "mroot/linalg.hpp"

#include <cmath>

#include "mroot/errors.hpp"

namespace mroot {

bool is_degenerate(const Eigen::MatrixXd& m, double* det_out) {
  const double det = m.determinant();
  if (det_out) *det_out = det;
  const double scale = m.cwiseAbs().maxCoeff();
  if (!std::isfinite(det) || scale == 0.0) return true;
  return std::abs(det) < kDegeneracyFactor * std::pow(scale, static_cast<double>(m.rows()));
}

Eigen::MatrixXd checked_inverse(const Eigen::MatrixXd& m) {
  double det = 0.0;
  if (is_degenerate(m, &det)) throw DegenerateMetric(det);
  return m.partialPivLu().inverse();
}

Signature signature(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  const double scale = m.cwiseAbs().maxCoeff();
  Signature s;
  for (double ev : solver.eigenvalues()) {
    if (std::abs(ev) <= 1e-12 * scale) {
      ++s.zero;
    } else if (ev > 0) {
      ++s.positive;
    } else {
      ++s.negative;
    }
  }
  return s;
}

}  // namespace mroot
