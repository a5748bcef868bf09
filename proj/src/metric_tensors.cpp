#include "mroot/metric_tensors.hpp"

#include <algorithm>
#include <cmath>

#include "mroot/errors.hpp"
#include "mroot/linalg.hpp"

namespace mroot {
namespace {

double require_positive(double a) {
  if (!(a > 0.0)) throw NonPositiveA(a);
  return a;
}

double scalar_residual(double lhs, double rhs) {
  return std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs));
}

Eigen::Map<const Eigen::VectorXd> as_vector(const Vec& v) {
  return {v.data(), static_cast<Eigen::Index>(v.size())};
}

}  // namespace

ADerivatives a_derivatives(const MetricSpec& spec, const EvalPoint& p, bool third) {
  check_point(spec, p);
  const int n = spec.dimension();
  ADerivatives d{n, 0.0, Eigen::VectorXd(n), Eigen::MatrixXd(n, n), TensorValue(n, 0, 3)};
  std::vector<int> ay(n, 0);
  const std::vector<int> ax(n, 0);
  d.a = partial_A(spec, p, ay, ax);
  for (int i = 0; i < n; ++i) {
    ++ay[i];
    d.ai(i) = partial_A(spec, p, ay, ax);
    for (int j = i; j < n; ++j) {
      ++ay[j];
      d.aij(i, j) = d.aij(j, i) = partial_A(spec, p, ay, ax);
      if (third) {
        for (int k = j; k < n; ++k) {
          ++ay[k];
          const double v = partial_A(spec, p, ay, ax);
          --ay[k];
          d.aijk(i, j, k) = d.aijk(i, k, j) = d.aijk(j, i, k) = v;
          d.aijk(j, k, i) = d.aijk(k, i, j) = d.aijk(k, j, i) = v;
        }
      }
      --ay[j];
    }
    --ay[i];
  }
  return d;
}

double finsler_norm(const MetricSpec& spec, const EvalPoint& p) {
  const double a = require_positive(eval_A(spec, p));
  return std::pow(a, 1.0 / spec.degree());
}

TensorValue fundamental_tensor(const MetricSpec& spec, const EvalPoint& p) {
  const auto d = a_derivatives(spec, p, false);
  const double a = require_positive(d.a);
  const double m = spec.degree();
  const double pre = std::pow(a, 2.0 / m - 2.0) / (m * m);
  TensorValue g(d.n, 0, 2);
  for (int i = 0; i < d.n; ++i) {
    for (int j = 0; j < d.n; ++j) {
      g(i, j) = pre * (m * a * d.aij(i, j) + (2.0 - m) * d.ai(i) * d.ai(j));
    }
  }
  return g;
}

TensorValue inverse_fundamental(const MetricSpec& spec, const EvalPoint& p) {
  const auto d = a_derivatives(spec, p, false);
  const double a = require_positive(d.a);
  const double m = spec.degree();
  const Eigen::MatrixXd a_inv = checked_inverse(d.aij);
  const double pre = std::pow(a, -2.0 / m);
  TensorValue g_inv(d.n, 2, 0);
  for (int i = 0; i < d.n; ++i) {
    for (int j = 0; j < d.n; ++j) {
      g_inv(i, j) = pre * (m * a * a_inv(i, j) + (m - 2.0) / (m - 1.0) * p.y[i] * p.y[j]);
    }
  }
  return g_inv;
}

TensorValue lowered_y(const MetricSpec& spec, const EvalPoint& p) {
  const auto d = a_derivatives(spec, p, false);
  const double a = require_positive(d.a);
  const double m = spec.degree();
  const double pre = std::pow(a, 2.0 / m - 1.0) / m;
  TensorValue y_low(d.n, 0, 1);
  for (int i = 0; i < d.n; ++i) y_low(i) = pre * d.ai(i);
  return y_low;
}

TensorValue cartan_tensor(const MetricSpec& spec, const EvalPoint& p) {
  const auto d = a_derivatives(spec, p, true);
  const double a = require_positive(d.a);
  const double m = spec.degree();
  const double q = 2.0 / m - 1.0;
  const double pre = std::pow(a, 2.0 / m - 3.0) / (2.0 * m);
  TensorValue c(d.n, 0, 3);
  for (int i = 0; i < d.n; ++i) {
    for (int j = 0; j < d.n; ++j) {
      for (int k = 0; k < d.n; ++k) {
        const double mixed = d.ai(i) * d.aij(j, k) + d.ai(j) * d.aij(k, i) + d.ai(k) * d.aij(i, j);
        c(i, j, k) = pre * (a * a * d.aijk(i, j, k) +
                            q * (q - 1.0) * d.ai(i) * d.ai(j) * d.ai(k) + q * a * mixed);
      }
    }
  }
  return c;
}

TensorValue angular_metric(const MetricSpec& spec, const EvalPoint& p) {
  const auto d = a_derivatives(spec, p, false);
  const double a = require_positive(d.a);
  const double m = spec.degree();
  const double pre = std::pow(a, 2.0 / m - 2.0) / (m * m);
  TensorValue h(d.n, 0, 2);
  for (int i = 0; i < d.n; ++i) {
    for (int j = 0; j < d.n; ++j) {
      h(i, j) = pre * (m * a * d.aij(i, j) + (1.0 - m) * d.ai(i) * d.ai(j));
    }
  }
  return h;
}

double IdentityResiduals::max() const {
  return std::max({euler, hessian_euler, lowered.value_or(0.0), inverse_contraction,
                   inverse_quadratic});
}

IdentityResiduals identity_suite(const MetricSpec& spec, const EvalPoint& p) {
  const auto d = a_derivatives(spec, p, false);
  const double m = spec.degree();
  const auto y = as_vector(p.y);
  const Eigen::MatrixXd a_inv = checked_inverse(d.aij);
  IdentityResiduals r{};

  r.euler = scalar_residual(y.dot(d.ai), m * d.a);

  const Eigen::VectorXd yh = d.aij * y;
  const Eigen::VectorXd rhs_b = (m - 1.0) * d.ai;
  r.hessian_euler = relative_residual({yh.data(), static_cast<std::size_t>(d.n)},
                                      {rhs_b.data(), static_cast<std::size_t>(d.n)});

  if (d.a > 0.0) {
    const TensorValue y_low = lowered_y(spec, p);
    const TensorValue g = fundamental_tensor(spec, p);
    TensorValue gy(d.n, 0, 1);
    for (int i = 0; i < d.n; ++i) {
      for (int j = 0; j < d.n; ++j) gy(i) += g(i, j) * p.y[j];
    }
    r.lowered = relative_residual(y_low, gy);
  }

  const Eigen::VectorXd contraction = a_inv * d.ai;
  const Eigen::VectorXd rhs_d = y / (m - 1.0);
  r.inverse_contraction = relative_residual({contraction.data(), static_cast<std::size_t>(d.n)},
                                            {rhs_d.data(), static_cast<std::size_t>(d.n)});

  r.inverse_quadratic = scalar_residual(d.ai.dot(contraction), m / (m - 1.0) * d.a);
  return r;
}

}  // namespace mroot
