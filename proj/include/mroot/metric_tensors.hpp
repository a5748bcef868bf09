#pragma once

// Fundamental tensor, its inverse, the lowered direction, Cartan torsion and the
// angular metric of F = A^{1/m}, all assembled in closed form from y-partials of A.
// Every fractional power of A requires A > 0; NonPositiveA is thrown otherwise.

#include <optional>

#include <Eigen/Dense>

#include "mroot/tensor_core.hpp"
#include "mroot/tensor_value.hpp"

namespace mroot {

/// A and its y-partials up to third order at one point.
struct ADerivatives {
  int n;
  double a;
  Eigen::VectorXd ai;
  Eigen::MatrixXd aij;
  TensorValue aijk;  // lower rank 3; zero unless requested
};

ADerivatives a_derivatives(const MetricSpec& spec, const EvalPoint& p, bool third = true);

double finsler_norm(const MetricSpec& spec, const EvalPoint& p);

/// g_ij = (A^{2/m-2}/m^2) [m A A_ij + (2-m) A_i A_j]
TensorValue fundamental_tensor(const MetricSpec& spec, const EvalPoint& p);

/// g^ij = A^{-2/m} [m A A^ij + ((m-2)/(m-1)) y^i y^j], A^ij the inverse of A_ij.
TensorValue inverse_fundamental(const MetricSpec& spec, const EvalPoint& p);

/// y_i = (1/m) A^{2/m-1} A_i
TensorValue lowered_y(const MetricSpec& spec, const EvalPoint& p);

/// Cartan torsion, normalised as C_ijk = (1/4) d^3 F^2 / dy^i dy^j dy^k:
///   C_ijk = (1/(2m)) A^{2/m-3} [A^2 A_ijk + (2/m-1)(2/m-2) A_i A_j A_k
///                              + (2/m-1) A (A_i A_jk + A_j A_ki + A_k A_ij)]
TensorValue cartan_tensor(const MetricSpec& spec, const EvalPoint& p);

/// h_ij = (1/m^2) [m A A_ij + (1-m) A_i A_j] A^{2/m-2}  (= g_ij - y_i y_j / F^2)
TensorValue angular_metric(const MetricSpec& spec, const EvalPoint& p);

/// Relative residuals of the homogeneity identities of A.
struct IdentityResiduals {
  double euler;                   // y^i A_i = m A
  double hessian_euler;           // y^i A_ij = (m-1) A_j
  std::optional<double> lowered;  // (1/m) A^{2/m-1} A_i = g_ij y^j; needs A > 0
  double inverse_contraction;     // A^ij A_i = y^j / (m-1)
  double inverse_quadratic;       // A_i A_j A^ij = m A / (m-1)

  double max() const;
};

IdentityResiduals identity_suite(const MetricSpec& spec, const EvalPoint& p);

}  // namespace mroot
