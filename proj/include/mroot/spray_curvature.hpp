#pragma once

// Geodesic spray G^i = (1/2)(A_{0j} - A_{x^j}) A^{ij} and the curvatures built on it.
// Derivatives of G^i are exact up to the final matrix inversions: G^i is expanded as
// a jet in (t, s), where y -> y + t and x -> x + s v.

#include <optional>
#include <span>
#include <vector>

#include "mroot/jets.hpp"
#include "mroot/tensor_core.hpp"
#include "mroot/tensor_value.hpp"

namespace mroot {

struct SprayJet {
  EvalPoint base;
  std::optional<Vec> x_direction;
  std::vector<Jet> components;  // G^i(x + s v, y + t)

  /// d^{|y_indices| + s_order} G^i / dy^{y_indices} ds^{s_order} at the base point.
  double partial(int i, std::initializer_list<int> y_indices, int s_order = 0) const;
};

/// `y_order` <= 4; with an x-direction the jet carries one extra variable truncated at
/// degree 1 and total degree `y_order`.
SprayJet spray_jet(const MetricSpec& spec, const EvalPoint& p, int y_order,
                   const std::optional<Vec>& x_direction = std::nullopt);

TensorValue spray(const MetricSpec& spec, const EvalPoint& p);

/// G^i = (1/4) g^{ik} (2 dg_pk/dx^q - dg_pq/dx^k) y^p y^q with g inverted numerically
/// and dg/dx assembled from exact mixed partials of A. Independent of spray().
TensorValue spray_from_g_oracle(const MetricSpec& spec, const EvalPoint& p);

/// N^i_j = dG^i/dy^j
TensorValue nonlinear_connection(const MetricSpec& spec, const EvalPoint& p);

/// G^i_jk = d^2 G^i / dy^j dy^k
TensorValue berwald_connection(const MetricSpec& spec, const EvalPoint& p);

/// B^i_jkl = d^3 G^i / dy^j dy^k dy^l
TensorValue berwald_curvature(const MetricSpec& spec, const EvalPoint& p);

/// E_ij = (1/2) B^m_imj
TensorValue mean_berwald(const MetricSpec& spec, const EvalPoint& p);

/// H_ij = y^m dE_ij/dx^m - 2 G^s dE_ij/dy^s - N^s_i E_sj - N^s_j E_is
TensorValue h_curvature(const MetricSpec& spec, const EvalPoint& p);

/// L_ijk = -(1/2) y_s B^s_ijk; requires A > 0.
TensorValue landsberg_curvature(const MetricSpec& spec, const EvalPoint& p);

/// R^i_k = 2 dG^i/dx^k - y^j d^2G^i/dx^j dy^k + 2 G^j d^2G^i/dy^j dy^k - N^i_j N^j_k
TensorValue riemann_curvature(const MetricSpec& spec, const EvalPoint& p);

/// Every spray-derived tensor at one point from a shared set of jet builds.
struct SprayCurvatures {
  TensorValue g_spray;   // G^i
  TensorValue n_conn;    // N^i_j
  TensorValue b_conn;    // G^i_jk
  TensorValue berwald;   // B^i_jkl
  TensorValue mean_berwald;
  TensorValue h;
  TensorValue riemann;
  std::optional<TensorValue> landsberg;  // absent when A <= 0
};

SprayCurvatures spray_curvatures(const MetricSpec& spec, const EvalPoint& p);

}  // namespace mroot
