#include "mroot/spray_curvature.hpp"

#include <cmath>

#include "mroot/errors.hpp"
#include "mroot/linalg.hpp"
#include "mroot/metric_tensors.hpp"

namespace mroot {
namespace {

std::vector<int> unit(int n, int k) {
  std::vector<int> e(n, 0);
  if (k >= 0) e[k] = 1;
  return e;
}

TensorValue spray_from_jet(const SprayJet& sj) {
  const int n = static_cast<int>(sj.components.size());
  TensorValue g(n, 1, 0);
  for (int i = 0; i < n; ++i) g(i) = sj.components[i].value();
  return g;
}

TensorValue connection_from_jet(const SprayJet& sj) {
  const int n = static_cast<int>(sj.components.size());
  TensorValue t(n, 1, 1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) t(i, j) = sj.partial(i, {j});
  }
  return t;
}

TensorValue berwald_connection_from_jet(const SprayJet& sj) {
  const int n = static_cast<int>(sj.components.size());
  TensorValue t(n, 1, 2);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = j; k < n; ++k) t(i, j, k) = t(i, k, j) = sj.partial(i, {j, k});
    }
  }
  return t;
}

TensorValue berwald_from_jet(const SprayJet& sj) {
  const int n = static_cast<int>(sj.components.size());
  TensorValue b(n, 1, 3);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = j; k < n; ++k) {
        for (int l = k; l < n; ++l) {
          const double v = sj.partial(i, {j, k, l});
          b(i, j, k, l) = b(i, j, l, k) = b(i, k, j, l) = v;
          b(i, k, l, j) = b(i, l, j, k) = b(i, l, k, j) = v;
        }
      }
    }
  }
  return b;
}

TensorValue mean_berwald_from(const TensorValue& b) {
  const int n = b.n();
  TensorValue e(n, 0, 2);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double trace = 0.0;
      for (int m = 0; m < n; ++m) trace += b(m, i, m, j);
      e(i, j) = 0.5 * trace;
    }
  }
  return e;
}

// Requires a jet of order 4 whose x-direction is the base y.
TensorValue h_from_jet(const SprayJet& sj, const TensorValue& g_spray, const TensorValue& n_conn,
                       const TensorValue& e) {
  const int n = static_cast<int>(sj.components.size());
  TensorValue h(n, 0, 2);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      double transport = 0.0;
      for (int m = 0; m < n; ++m) transport += sj.partial(m, {i, m, j}, 1);
      transport *= 0.5;
      double advect = 0.0;
      for (int s = 0; s < n; ++s) {
        double de = 0.0;
        for (int m = 0; m < n; ++m) de += sj.partial(m, {i, m, j, s});
        advect += g_spray(s) * 0.5 * de;
      }
      double twist = 0.0;
      for (int s = 0; s < n; ++s) twist += n_conn(s, i) * e(s, j) + n_conn(s, j) * e(i, s);
      h(i, j) = h(j, i) = transport - 2.0 * advect - twist;
    }
  }
  return h;
}

// x_jets[k] has x-direction e_k and order >= 2.
TensorValue riemann_from_jets(const std::vector<SprayJet>& x_jets, const Vec& y,
                              const TensorValue& g_spray, const TensorValue& n_conn,
                              const TensorValue& b_conn) {
  const int n = static_cast<int>(y.size());
  TensorValue r(n, 1, 1);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      double v = 2.0 * x_jets[k].partial(i, {}, 1);
      for (int j = 0; j < n; ++j) {
        v -= y[j] * x_jets[j].partial(i, {k}, 1);
        v += 2.0 * g_spray(j) * b_conn(i, j, k);
        v -= n_conn(i, j) * n_conn(j, k);
      }
      r(i, k) = v;
    }
  }
  return r;
}

std::vector<SprayJet> coordinate_jets(const MetricSpec& spec, const EvalPoint& p, int order) {
  std::vector<SprayJet> jets;
  for (int k = 0; k < spec.dimension(); ++k) {
    Vec v(spec.dimension(), 0.0);
    v[k] = 1.0;
    jets.push_back(spray_jet(spec, p, order, v));
  }
  return jets;
}

TensorValue landsberg_from(const MetricSpec& spec, const EvalPoint& p, const TensorValue& b) {
  const TensorValue y_low = lowered_y(spec, p);
  const int n = b.n();
  TensorValue l(n, 0, 3);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        double v = 0.0;
        for (int s = 0; s < n; ++s) v += y_low(s) * b(s, i, j, k);
        l(i, j, k) = -0.5 * v;
      }
    }
  }
  return l;
}

}  // namespace

double SprayJet::partial(int i, std::initializer_list<int> y_indices, int s_order) const {
  const Jet& jet = components.at(i);
  std::vector<int> alpha(jet.dim(), 0);
  for (int idx : y_indices) ++alpha[idx];
  if (s_order > 0) {
    if (!x_direction) throw ShapeMismatch("spray jet has no x-direction");
    alpha.back() = s_order;
  }
  return extract_partial(jet, alpha);
}

SprayJet spray_jet(const MetricSpec& spec, const EvalPoint& p, int y_order,
                   const std::optional<Vec>& x_direction) {
  check_point(spec, p);
  const int n = spec.dimension();
  const bool with_s = x_direction.has_value();
  auto layout = JetLayout::get(with_s ? n + 1 : n, y_order, with_s);
  const std::vector<int> none(n, 0);

  MatrixJet hessian(n, n, layout);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      std::vector<int> ay = unit(n, i);
      ++ay[j];
      hessian(i, j) = jet_lift_partial(spec, p, y_order, ay, none, x_direction);
      if (j != i) hessian(j, i) = hessian(i, j);
    }
  }
  const MatrixJet hessian_inv = matrix_jet_inverse(hessian);

  SprayJet out{p, x_direction, std::vector<Jet>(n, Jet(layout))};
  if (spec.is_x_independent()) return out;

  // b_j = A_{0j} - A_{x^j} = A_{x^k y^j} (y^k + t_k) - A_{x^j}
  std::vector<Jet> b;
  for (int j = 0; j < n; ++j) {
    Jet bj = -jet_lift_partial(spec, p, y_order, none, unit(n, j), x_direction);
    for (int k = 0; k < n; ++k) {
      const Jet mixed = jet_lift_partial(spec, p, y_order, unit(n, j), unit(n, k), x_direction);
      bj.add_product(mixed, Jet::variable(layout, k, p.y[k]));
    }
    b.push_back(std::move(bj));
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) out.components[i].add_product(hessian_inv(i, j), b[j]);
    out.components[i] *= 0.5;
  }
  return out;
}

TensorValue spray(const MetricSpec& spec, const EvalPoint& p) {
  const int n = spec.dimension();
  const auto cp = contracted_partials(spec, p);
  const auto d = a_derivatives(spec, p, false);
  const Eigen::MatrixXd a_inv = checked_inverse(d.aij);
  std::vector<int> ay(n, 0), ax(n, 0);
  TensorValue g(n, 1, 0);
  for (int j = 0; j < n; ++j) {
    ax[j] = 1;
    const double bj = cp.a0j[j] - partial_A(spec, p, ay, ax);
    ax[j] = 0;
    for (int i = 0; i < n; ++i) g(i) += 0.5 * bj * a_inv(i, j);
  }
  return g;
}

TensorValue spray_from_g_oracle(const MetricSpec& spec, const EvalPoint& p) {
  const int n = spec.dimension();
  const double m = spec.degree();
  const auto d = a_derivatives(spec, p, false);
  if (!(d.a > 0.0)) throw NonPositiveA(d.a);
  const double a = d.a;
  const double c = 2.0 / m - 2.0;

  const TensorValue g = fundamental_tensor(spec, p);
  Eigen::MatrixXd g_mat(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) g_mat(i, j) = g(i, j);
  }
  const Eigen::MatrixXd g_inv = checked_inverse(g_mat);

  // dg[q](i, j) = d g_ij / d x^q by the product rule on the closed form of g.
  std::vector<Eigen::MatrixXd> dg(n, Eigen::MatrixXd(n, n));
  std::vector<int> ay(n, 0), ax(n, 0);
  for (int q = 0; q < n; ++q) {
    ax[q] = 1;
    const double a_q = partial_A(spec, p, ay, ax);
    Eigen::VectorXd ai_q(n);
    Eigen::MatrixXd aij_q(n, n);
    for (int i = 0; i < n; ++i) {
      ++ay[i];
      ai_q(i) = partial_A(spec, p, ay, ax);
      for (int j = 0; j < n; ++j) {
        ++ay[j];
        aij_q(i, j) = partial_A(spec, p, ay, ax);
        --ay[j];
      }
      --ay[i];
    }
    ax[q] = 0;
    const double pow_c = std::pow(a, c);
    const double pow_c1 = std::pow(a, c - 1.0);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const double bracket = m * a * d.aij(i, j) + (2.0 - m) * d.ai(i) * d.ai(j);
        const double bracket_q = m * a_q * d.aij(i, j) + m * a * aij_q(i, j) +
                                 (2.0 - m) * (ai_q(i) * d.ai(j) + d.ai(i) * ai_q(j));
        dg[q](i, j) = (c * pow_c1 * a_q * bracket + pow_c * bracket_q) / (m * m);
      }
    }
  }

  TensorValue out(n, 1, 0);
  Eigen::VectorXd lower(n);
  for (int k = 0; k < n; ++k) {
    double v = 0.0;
    for (int pp = 0; pp < n; ++pp) {
      for (int q = 0; q < n; ++q) {
        v += (2.0 * dg[q](pp, k) - dg[k](pp, q)) * p.y[pp] * p.y[q];
      }
    }
    lower(k) = v;
  }
  const Eigen::VectorXd upper = 0.25 * g_inv * lower;
  for (int i = 0; i < n; ++i) out(i) = upper(i);
  return out;
}

TensorValue nonlinear_connection(const MetricSpec& spec, const EvalPoint& p) {
  return connection_from_jet(spray_jet(spec, p, 1));
}

TensorValue berwald_connection(const MetricSpec& spec, const EvalPoint& p) {
  return berwald_connection_from_jet(spray_jet(spec, p, 2));
}

TensorValue berwald_curvature(const MetricSpec& spec, const EvalPoint& p) {
  return berwald_from_jet(spray_jet(spec, p, 3));
}

TensorValue mean_berwald(const MetricSpec& spec, const EvalPoint& p) {
  return mean_berwald_from(berwald_curvature(spec, p));
}

TensorValue h_curvature(const MetricSpec& spec, const EvalPoint& p) {
  const SprayJet sj = spray_jet(spec, p, 4, p.y);
  const TensorValue e = mean_berwald_from(berwald_from_jet(sj));
  return h_from_jet(sj, spray_from_jet(sj), connection_from_jet(sj), e);
}

TensorValue landsberg_curvature(const MetricSpec& spec, const EvalPoint& p) {
  return landsberg_from(spec, p, berwald_curvature(spec, p));
}

TensorValue riemann_curvature(const MetricSpec& spec, const EvalPoint& p) {
  const auto x_jets = coordinate_jets(spec, p, 2);
  const SprayJet& any = x_jets.front();
  return riemann_from_jets(x_jets, p.y, spray_from_jet(any), connection_from_jet(any),
                           berwald_connection_from_jet(any));
}

SprayCurvatures spray_curvatures(const MetricSpec& spec, const EvalPoint& p) {
  const SprayJet sj = spray_jet(spec, p, 4, p.y);
  TensorValue g = spray_from_jet(sj);
  TensorValue nc = connection_from_jet(sj);
  TensorValue bc = berwald_connection_from_jet(sj);
  TensorValue b = berwald_from_jet(sj);
  TensorValue e = mean_berwald_from(b);
  TensorValue h = h_from_jet(sj, g, nc, e);
  TensorValue r = riemann_from_jets(coordinate_jets(spec, p, 2), p.y, g, nc, bc);
  std::optional<TensorValue> l;
  if (eval_A(spec, p) > 0.0) l = landsberg_from(spec, p, b);
  return {std::move(g), std::move(nc), std::move(bc), std::move(b),
          std::move(e), std::move(h), std::move(r), std::move(l)};
}

}  // namespace mroot
