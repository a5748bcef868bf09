#include "mroot/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include <Eigen/Dense>

#include "mroot/errors.hpp"
#include "mroot/linalg.hpp"
#include "mroot/metric_tensors.hpp"
#include "mroot/spray_curvature.hpp"
#include "parallel.hpp"

namespace mroot {
namespace {

constexpr double kZeroTarget = 1e-12;

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Box-Muller; the engine output is fully specified, so draws are portable.
double standard_normal(std::mt19937_64& rng) {
  const double u1 = 1.0 - uniform01(rng);
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
}

Eigen::MatrixXd hessian_of_A(const MetricSpec& spec, const EvalPoint& p) {
  return a_derivatives(spec, p, false).aij;
}

void check_x(const MetricSpec& spec, const Vec& x) {
  if (static_cast<int>(x.size()) != spec.dimension()) {
    throw DimensionMismatch("base point x has dimension " + std::to_string(x.size()) +
                            ", metric has " + std::to_string(spec.dimension()));
  }
}

// Monomials in n variables of total degree <= d, degree-ordered.
std::vector<std::vector<int>> monomial_basis(int n, int d) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(n, 0);
  for (int deg = 0; deg <= d; ++deg) {
    auto rec = [&](auto&& self, int var, int left) -> void {
      if (var == n - 1) {
        cur[var] = left;
        out.push_back(cur);
        return;
      }
      for (int e = left; e >= 0; --e) {
        cur[var] = e;
        self(self, var + 1, left - e);
      }
    };
    rec(rec, 0, deg);
  }
  return out;
}

double monomial(const std::vector<int>& exps, const Vec& y) {
  double v = 1.0;
  for (std::size_t j = 0; j < exps.size(); ++j) {
    for (int e = 0; e < exps[j]; ++e) v *= y[j];
  }
  return v;
}

}  // namespace

SampleDraw draw_directions(const MetricSpec& spec, const Vec& x, const SamplePlan& plan) {
  check_x(spec, x);
  if (plan.count < 1) throw Error("sample count must be at least 1");
  const int n = spec.dimension();
  std::mt19937_64 rng(plan.seed);
  SampleDraw draw;
  const int budget = 100 * plan.count;
  Vec dir(n);
  while (static_cast<int>(draw.points.size()) < plan.count) {
    if (draw.attempts >= budget) {
      throw SamplingStarved("only " + std::to_string(draw.points.size()) + " of " +
                            std::to_string(plan.count) + " directions accepted after " +
                            std::to_string(budget) + " draws");
    }
    ++draw.attempts;
    double norm = 0.0;
    for (double& c : dir) {
      c = standard_normal(rng);
      norm += c * c;
    }
    norm = std::sqrt(norm);
    const double radius =
        plan.y_box.r_min + (plan.y_box.r_max - plan.y_box.r_min) * uniform01(rng);
    if (norm == 0.0) continue;
    Vec y(n);
    for (int j = 0; j < n; ++j) y[j] = dir[j] / norm * radius;
    EvalPoint p(x, y);
    if (plan.positivity_filter && !(eval_A(spec, p) > 0.0)) continue;
    if (is_degenerate(hessian_of_A(spec, p))) continue;
    draw.points.push_back(std::move(p));
  }
  return draw;
}

std::vector<EvalPoint> sample_directions(const MetricSpec& spec, const Vec& x,
                                         const SamplePlan& plan) {
  return draw_directions(spec, x, plan).points;
}

double riemannian_residual(const MetricSpec& spec, const Vec& x, const SamplePlan& plan) {
  const auto points = sample_directions(spec, x, plan);
  std::vector<double> per(points.size());
  detail::parallel_for(static_cast<int>(points.size()), plan.threads, [&](int k) {
    const double c = cartan_tensor(spec, points[k]).norm();
    const double g = fundamental_tensor(spec, points[k]).norm();
    per[k] = c / (1.0 + std::pow(g, 1.5));
  });
  double worst = 0.0;
  for (double v : per) worst = std::max(worst, v);
  return worst;
}

LandsbergFit landsberg_isotropy_fit(const MetricSpec& spec, const Vec& x,
                                    const SamplePlan& plan) {
  const auto points = sample_directions(spec, x, plan);
  const int count = static_cast<int>(points.size());
  struct Sample {
    std::vector<double> l;
    std::vector<double> fc;
    double c_norm;
  };
  std::vector<Sample> samples(count);
  detail::parallel_for(count, plan.threads, [&](int k) {
    const TensorValue c = cartan_tensor(spec, points[k]);
    const TensorValue l = landsberg_curvature(spec, points[k]);
    const double f = finsler_norm(spec, points[k]);
    Sample s{{l.comps().begin(), l.comps().end()}, {}, c.norm()};
    for (double v : c.comps()) s.fc.push_back(f * v);
    samples[k] = std::move(s);
  });

  LandsbergFit out{{{0.0}, 0.0, count}, 0.0, 0.0, LandsbergVerdict::kLandsberg};
  double lf = 0.0, ff = 0.0, ll = 0.0;
  for (const auto& s : samples) {
    out.cartan_norm = std::max(out.cartan_norm, s.c_norm);
    for (std::size_t k = 0; k < s.l.size(); ++k) {
      out.landsberg_norm = std::max(out.landsberg_norm, std::abs(s.l[k]));
      lf += s.l[k] * s.fc[k];
      ff += s.fc[k] * s.fc[k];
      ll += s.l[k] * s.l[k];
    }
  }

  if (out.cartan_norm <= kIsotropyTolerance) {
    out.verdict = LandsbergVerdict::kRiemannian;
    return out;
  }
  if (out.landsberg_norm >= kZeroTarget) {
    const double c = lf / ff;
    double rr = 0.0;
    for (const auto& s : samples) {
      for (std::size_t k = 0; k < s.l.size(); ++k) {
        const double r = s.l[k] - c * s.fc[k];
        rr += r * r;
      }
    }
    out.fit.fitted = {c};
    out.fit.residual_rel = std::sqrt(rr / ll);
  }
  if (out.landsberg_norm <= kIsotropyTolerance) {
    out.verdict = LandsbergVerdict::kLandsberg;
  } else if (out.fit.residual_rel >= kIsotropyTolerance) {
    out.verdict = LandsbergVerdict::kNotIsotropic;
  } else {
    out.verdict = LandsbergVerdict::kForbidden;
  }
  return out;
}

HFit h_isotropy_fit(const MetricSpec& spec, const Vec& x, const SamplePlan& plan) {
  const int n = spec.dimension();
  if (plan.count < n + 2) {
    throw Underdetermined("h isotropy fit needs at least n + 2 = " + std::to_string(n + 2) +
                          " samples, got " + std::to_string(plan.count));
  }
  const auto points = sample_directions(spec, x, plan);
  const int count = static_cast<int>(points.size());
  const int block = n * n;
  Eigen::MatrixXd design(count * block, n);
  Eigen::VectorXd target(count * block);
  std::vector<double> norms(count);
  detail::parallel_for(count, plan.threads, [&](int k) {
    const EvalPoint& p = points[k];
    const TensorValue hc = h_curvature(spec, p);
    const TensorValue h = angular_metric(spec, p);
    const double pre = (n + 1) / (2.0 * finsler_norm(spec, p));
    for (int e = 0; e < block; ++e) {
      const int row = k * block + e;
      target(row) = hc.comps()[e];
      for (int q = 0; q < n; ++q) design(row, q) = pre * p.y[q] * h.comps()[e];
    }
    norms[k] = hc.norm();
  });

  HFit out{{Vec(n, 0.0), 0.0, count}, 0.0, HVerdict::kFlat};
  for (double v : norms) out.h_norm = std::max(out.h_norm, v);
  if (out.h_norm >= kZeroTarget) {
    const Eigen::VectorXd theta = design.colPivHouseholderQr().solve(target);
    out.fit.fitted.assign(theta.data(), theta.data() + n);
    out.fit.residual_rel = (design * theta - target).norm() / target.norm();
  }
  if (out.h_norm <= kIsotropyTolerance) {
    out.verdict = HVerdict::kFlat;
  } else if (out.fit.residual_rel >= kIsotropyTolerance) {
    out.verdict = HVerdict::kNotIsotropic;
  } else {
    out.verdict = HVerdict::kForbidden;
  }
  return out;
}

int rationality_degree_bound(int n, int m) { return (n - 1) * (m - 2) + m; }

RationalityReport rationality_check(const MetricSpec& spec, const Vec& x,
                                    const SamplePlan& plan) {
  const int n = spec.dimension();
  RationalityReport out;
  out.degree_bound = rationality_degree_bound(n, spec.degree());
  const auto basis = monomial_basis(n, out.degree_bound);
  out.basis_size = static_cast<int>(basis.size());
  if (plan.count < 2 * out.basis_size) {
    throw Underdetermined("rationality check needs at least " +
                          std::to_string(2 * out.basis_size) + " samples for " +
                          std::to_string(out.basis_size) + " monomials, got " +
                          std::to_string(plan.count));
  }
  const auto points = sample_directions(spec, x, plan);
  const int count = static_cast<int>(points.size());
  out.samples_used = count;

  Eigen::MatrixXd q(count, n);
  detail::parallel_for(count, plan.threads, [&](int k) {
    const double det = hessian_of_A(spec, points[k]).determinant();
    const TensorValue g = spray(spec, points[k]);
    for (int i = 0; i < n; ++i) q(k, i) = det * g(i);
  });

  Eigen::MatrixXd design(count, out.basis_size);
  for (int k = 0; k < count; ++k) {
    for (int b = 0; b < out.basis_size; ++b) design(k, b) = monomial(basis[b], points[k].y);
  }
  const int train = count / 2;
  const int held = count - train;
  const auto fit = design.topRows(train).colPivHouseholderQr();
  for (int i = 0; i < n; ++i) {
    const Eigen::VectorXd target = q.col(i);
    double residual = 0.0;
    const double scale = target.tail(held).norm();
    if (target.cwiseAbs().maxCoeff() >= kZeroTarget) {
      const Eigen::VectorXd coef = fit.solve(target.head(train));
      residual = (design.bottomRows(held) * coef - target.tail(held)).norm() / scale;
    }
    out.is_polynomial.push_back(residual < kRationalityTolerance);
    out.heldout_residual = std::max(out.heldout_residual, residual);
  }
  return out;
}

const char* to_string(LandsbergVerdict v) {
  switch (v) {
    case LandsbergVerdict::kRiemannian: return "riemannian";
    case LandsbergVerdict::kLandsberg: return "landsberg";
    case LandsbergVerdict::kNotIsotropic: return "not_isotropic";
    case LandsbergVerdict::kForbidden: return "forbidden";
  }
  return "unknown";
}

const char* to_string(HVerdict v) {
  switch (v) {
    case HVerdict::kFlat: return "h_flat";
    case HVerdict::kNotIsotropic: return "not_isotropic";
    case HVerdict::kForbidden: return "forbidden";
  }
  return "unknown";
}

}  // namespace mroot
