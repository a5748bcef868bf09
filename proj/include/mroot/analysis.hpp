#pragma once

// Isotropy fits and the rationality check behind the two dichotomies:
//   isotropic Landsberg (L = c F C) forces L = 0 unless C = 0;
//   isotropic H-curvature (H = ((n+1)/2F) theta(y) h) forces H = 0.
// All fits are per base point x over a seeded sample of directions y.

#include <cstdint>
#include <vector>

#include "mroot/tensor_core.hpp"

namespace mroot {

/// "Approximately zero" threshold for jet-engine quantities and fit residuals.
inline constexpr double kIsotropyTolerance = 1e-6;
/// Held-out residual below which det(A_ij) G^i counts as a polynomial.
inline constexpr double kRationalityTolerance = 1e-7;

struct YBox {
  double r_min = 0.5;
  double r_max = 2.0;
};

struct SamplePlan {
  std::uint64_t seed = 0;
  int count = 50;
  YBox y_box;
  bool positivity_filter = true;
  int threads = 1;  // evaluation only; results do not depend on it
};

struct FitResult {
  Vec fitted;
  double residual_rel = 0.0;
  int samples_used = 0;
};

struct SampleDraw {
  std::vector<EvalPoint> points;
  int attempts = 0;
};

/// Directions uniform on the unit sphere with radius uniform in the box, keeping those
/// with A > 0 (when filtered) and a nondegenerate A_ij. Gives up after 100 * count draws.
SampleDraw draw_directions(const MetricSpec& spec, const Vec& x, const SamplePlan& plan);
std::vector<EvalPoint> sample_directions(const MetricSpec& spec, const Vec& x,
                                         const SamplePlan& plan);

/// max over samples of |C| / (1 + |g|^{3/2}).
double riemannian_residual(const MetricSpec& spec, const Vec& x, const SamplePlan& plan);

enum class LandsbergVerdict { kRiemannian, kLandsberg, kNotIsotropic, kForbidden };

struct LandsbergFit {
  FitResult fit;          // fitted = {c}
  double cartan_norm;     // max |C| over samples
  double landsberg_norm;  // max |L| over samples
  LandsbergVerdict verdict;
};

LandsbergFit landsberg_isotropy_fit(const MetricSpec& spec, const Vec& x,
                                    const SamplePlan& plan);

enum class HVerdict { kFlat, kNotIsotropic, kForbidden };

struct HFit {
  FitResult fit;  // fitted = theta_1..theta_n
  double h_norm;  // max |H| over samples
  HVerdict verdict;
};

HFit h_isotropy_fit(const MetricSpec& spec, const Vec& x, const SamplePlan& plan);

struct RationalityReport {
  std::vector<bool> is_polynomial;  // per component i
  double heldout_residual = 0.0;    // worst component
  int degree_bound = 0;
  int basis_size = 0;
  int samples_used = 0;
};

/// Total degree of det(A_ij) G^i in y: (n-1)(m-2) from the adjugate plus m from
/// A_{0j} - A_{x^j}.
int rationality_degree_bound(int n, int m);

/// Fits det(A_ij) G^i by a polynomial of total degree <= the bound on the first half of
/// the samples and measures the relative residual on the second half.
RationalityReport rationality_check(const MetricSpec& spec, const Vec& x,
                                    const SamplePlan& plan);

const char* to_string(LandsbergVerdict v);
const char* to_string(HVerdict v);

}  // namespace mroot
