// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "mroot/analysis.hpp"
#include "mroot/catalog.hpp"
#include "mroot/cli.hpp"
#include "mroot/metric_tensors.hpp"
#include "mroot/spray_curvature.hpp"
#include "oracles.hpp"

using namespace mroot;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

SamplePlan plan_of(std::uint64_t seed, int count) {
  SamplePlan p;
  p.seed = seed;
  p.count = count;
  return p;
}

std::vector<EvalPoint> samples(const MetricSpec& spec, std::uint64_t seed, int count,
                               double x0 = 0.1) {
  return sample_directions(spec, Vec(spec.dimension(), x0), plan_of(seed, count));
}

double fd_step(const Vec& y, double rel) {
  double reach = oracle::norm_inf(y);
  for (double v : y) reach = std::min(reach, std::abs(v));
  return rel * std::max(reach, 1e-2 * oracle::norm_inf(y));
}

double abs_rel(double a, double b, double scale) { return std::abs(a - b) / std::max(1.0, scale); }

Outcome identity_suite_holds() {
  double worst = 0.0;
  for (const auto& name : catalog_names()) {
    const MetricSpec spec = catalog_metric(name).spec;
    for (const auto& p : samples(spec, 1, 100)) worst = std::max(worst, identity_suite(spec, p).max());
  }
  return {worst < 1e-9, "worst identity residual " + fmt(worst)};
}

Outcome fundamental_tensor_consistent() {
  double hess = 0.0, inv = 0.0;
  for (const auto& name : catalog_names()) {
    const MetricSpec spec = catalog_metric(name).spec;
    const int n = spec.dimension();
    const Vec x(n, 0.1);
    const auto f2 = oracle::f_squared(spec, x);
    for (const auto& p : samples(spec, 2, 20)) {
      const TensorValue g = fundamental_tensor(spec, p);
      const TensorValue gi = inverse_fundamental(spec, p);
      for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) {
          const double fd = 0.5 * oracle::richardson(f2, p.y, {i, k}, fd_step(p.y, 1e-2));
          hess = std::max(hess, abs_rel(g(i, k), fd, g.norm()));
          double s = 0.0;
          for (int j = 0; j < n; ++j) s += gi(i, j) * g(j, k);
          inv = std::max(inv, std::abs(s - (i == k ? 1.0 : 0.0)));
        }
      }
    }
  }
  return {hess < 1e-6 && inv < 1e-9,
          "FD Hessian residual " + fmt(hess) + ", g^ij g_jk - delta " + fmt(inv)};
}

Outcome spray_oracle_equivalence() {
  double worst = 0.0;
  for (const auto& name : catalog_names()) {
    const MetricSpec spec = catalog_metric(name).spec;
    for (const auto& p : samples(spec, 3, 100, 0.2)) {
      worst = std::max(worst, relative_residual(spray(spec, p), spray_from_g_oracle(spec, p)));
    }
  }
  const TensorValue g = spray(catalog_metric("conformal2").spec, EvalPoint({0, 0}, {1, 1}));
  const double closed = std::max(std::abs(g(0) - 0.0), std::abs(g(1) - 1.0));
  return {worst < 1e-8 && closed < 1e-10,
          "spray vs metric oracle " + fmt(worst) + ", conformal2 (0,1) error " + fmt(closed)};
}

Outcome cartan_and_angular_consistent() {
  double cartan = 0.0, angular = 0.0, contraction = 0.0;
  for (const auto& name : catalog_names()) {
    const MetricSpec spec = catalog_metric(name).spec;
    const int n = spec.dimension();
    const auto f2 = oracle::f_squared(spec, Vec(n, 0.1));
    for (const auto& p : samples(spec, 4, 10)) {
      const TensorValue c = cartan_tensor(spec, p);
      const TensorValue h = angular_metric(spec, p);
      const TensorValue g = fundamental_tensor(spec, p);
      const TensorValue yl = lowered_y(spec, p);
      const double f = finsler_norm(spec, p);
      for (int i = 0; i < n; ++i) {
        double hy = 0.0;
        for (int j = 0; j < n; ++j) {
          angular = std::max(angular, abs_rel(h(i, j), g(i, j) - yl(i) * yl(j) / (f * f), g.norm()));
          hy += h(i, j) * p.y[j];
          double cy = 0.0;
          for (int k = 0; k < n; ++k) {
            const double fd = 0.25 * oracle::richardson(f2, p.y, {i, j, k}, fd_step(p.y, 1e-2));
            cartan = std::max(cartan, abs_rel(c(i, j, k), fd, c.norm()));
            cy += c(i, j, k) * p.y[k];
          }
          contraction = std::max(contraction, std::abs(cy) / std::max(1.0, c.norm()));
        }
        contraction = std::max(contraction, std::abs(hy) / std::max(1.0, h.norm()));
      }
    }
  }
  return {cartan < 1e-5 && angular < 1e-10 && contraction < 1e-10,
          "Cartan vs FD " + fmt(cartan) + ", angular " + fmt(angular) + ", contractions " +
              fmt(contraction)};
}

Outcome degenerations_vanish() {
  double riem = 0.0, mink = 0.0;
  for (const auto& name : catalog_names()) {
    const MetricSpec spec = catalog_metric(name).spec;
    const bool quadratic = spec.degree() == 2;
    const bool constant = spec.is_x_independent();
    if (!quadratic && !constant) continue;
    for (const auto& p : samples(spec, 5, 50, 0.3)) {
      const SprayCurvatures sc = spray_curvatures(spec, p);
      if (quadratic) {
        for (double v : {cartan_tensor(spec, p).norm(), sc.landsberg->norm(), sc.berwald.norm(),
                         sc.mean_berwald.norm(), sc.h.norm()}) {
          riem = std::max(riem, v);
        }
      }
      if (constant) {
        for (double v :
             {sc.g_spray.norm(), sc.landsberg->norm(), sc.h.norm(), sc.riemann.norm()}) {
          mink = std::max(mink, v);
        }
      }
    }
  }
  return {riem < 1e-9 && mink < 1e-9,
          "m = 2 max |C,L,B,E,H| " + fmt(riem) + ", x-independent max |G,L,H,R| " + fmt(mink)};
}

Outcome homogeneity_table() {
  double worst = 0.0;
  for (const auto& name : catalog_names()) {
    const MetricSpec spec = catalog_metric(name).spec;
    for (const auto& p : samples(spec, 6, 50)) {
      const SprayCurvatures base = spray_curvatures(spec, p);
      const TensorValue g = fundamental_tensor(spec, p);
      const TensorValue c = cartan_tensor(spec, p);
      for (double lambda : {0.5, 2.0}) {
        Vec ys = p.y;
        for (double& v : ys) v *= lambda;
        const EvalPoint q(p.x, ys);
        const SprayCurvatures s = spray_curvatures(spec, q);
        const auto check = [&](const TensorValue& got, TensorValue ref, int degree) {
          ref *= std::pow(lambda, degree);
          worst = std::max(worst, relative_residual(got, ref));
        };
        check(s.g_spray, base.g_spray, 2);
        check(s.n_conn, base.n_conn, 1);
        check(s.berwald, base.berwald, -1);
        check(s.mean_berwald, base.mean_berwald, -1);
        check(*s.landsberg, *base.landsberg, 0);
        check(s.h, base.h, 0);
        check(s.riemann, base.riemann, 2);
        check(fundamental_tensor(spec, q), g, 0);
        check(cartan_tensor(spec, q), c, -1);
      }
    }
  }
  return {worst < 1e-8, "worst scaling residual " + fmt(worst)};
}

Outcome landsberg_dichotomy() {
  int runs = 0, forbidden = 0;
  bool bm_ok = true;
  for (const auto& name : catalog_names()) {
    const MetricSpec spec = catalog_metric(name).spec;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto fit = landsberg_isotropy_fit(spec, Vec(spec.dimension(), 0.0), plan_of(seed, 50));
      ++runs;
      if (fit.fit.residual_rel < 1e-6 && fit.landsberg_norm > 1e-6 && fit.cartan_norm > 1e-6) {
        ++forbidden;
      }
      if (name == "berwald_moor3") {
        bm_ok = bm_ok && fit.verdict == LandsbergVerdict::kLandsberg && fit.fit.fitted[0] == 0.0;
      }
    }
  }
  return {forbidden == 0 && bm_ok, std::to_string(runs) + " runs, " + std::to_string(forbidden) +
                                       " in forbidden quadrant, berwald_moor3 landsberg with c = 0: " +
                                       (bm_ok ? "yes" : "no")};
}

Outcome h_dichotomy() {
  int runs = 0, forbidden = 0;
  bool flat_ok = true;
  for (const auto& name : catalog_names()) {
    const CatalogEntry entry = catalog_metric(name);
    const MetricSpec& spec = entry.spec;
    const bool expect_flat =
        entry.known_flags.at("riemannian").value || spec.is_x_independent();
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto fit = h_isotropy_fit(spec, Vec(spec.dimension(), 0.0), plan_of(seed, 50));
      ++runs;
      if (fit.fit.residual_rel < 1e-6 && fit.h_norm > 1e-6) ++forbidden;
      if (expect_flat) flat_ok = flat_ok && fit.verdict == HVerdict::kFlat;
    }
  }
  return {forbidden == 0 && flat_ok,
          std::to_string(runs) + " runs, " + std::to_string(forbidden) +
              " in forbidden quadrant, Riemannian/Minkowskian entries h_flat: " +
              (flat_ok ? "yes" : "no")};
}

Outcome rationality() {
  // The degree bound first has to reproduce the symbolic expansion.
  int sym22 = -1, sym24 = -1;
  for (const auto& q : oracle::det_times_spray(catalog_metric("conformal2").spec, {0.1, 0.1})) {
    sym22 = std::max(sym22, q.degree());
  }
  for (const auto& q : oracle::det_times_spray(catalog_metric("quartic2").spec, {0.1, 0.1})) {
    sym24 = std::max(sym24, q.degree());
  }
  const bool bound_ok =
      sym22 == rationality_degree_bound(2, 2) && sym24 == rationality_degree_bound(2, 4);
  double worst = 0.0;
  for (const auto& name : catalog_names()) {
    const MetricSpec spec = catalog_metric(name).spec;
    const int n = spec.dimension();
    const int d = rationality_degree_bound(n, spec.degree());
    double basis = 1.0;
    for (int k = 1; k <= n; ++k) basis = basis * (d + k) / k;
    const auto r = rationality_check(spec, Vec(n, 0.1), plan_of(9, 2 * static_cast<int>(basis) + 20));
    worst = std::max(worst, r.heldout_residual);
  }
  return {bound_ok && worst < 1e-7, "symbolic degrees " + std::to_string(sym22) + ", " +
                                        std::to_string(sym24) + " vs bound; worst held-out " +
                                        fmt(worst)};
}

Outcome cli_contract() {
  const auto run = [](const std::vector<std::string>& args, std::string* out_text = nullptr) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    if (out_text) *out_text = out.str();
    return code;
  };
  const std::string dir = MROOT_SPECS_DIR;
  const std::vector<std::string> verify = {"verify", dir + "/quartic2.json", "--samples=100",
                                           "--seed=7", "--tol=1e-6"};
  std::string first, second;
  const int code1 = run(verify, &first);
  const int code2 = run(verify, &second);

  const auto tampered = std::filesystem::temp_directory_path() / "mroot_acceptance_tampered.json";
  std::ofstream(tampered) << R"({"dimension": 2, "degree": 2, "coefficients": [
      {"index": [1, 1], "poly": [{"exp": [0, 0], "coeff": 1}]},
      {"index": [1, 2], "poly": [{"exp": [0, 0], "coeff": 0.1}]},
      {"index": [2, 1], "poly": [{"exp": [0, 0], "coeff": 0.3}]},
      {"index": [2, 2], "poly": [{"exp": [0, 0], "coeff": 1}]}]})";
  const int tampered_code = run({"verify", tampered.string()});

  std::string report;
  const int report_code = run({"report", dir + "/berwald_moor3.json", "--y=1,1,-1"}, &report);
  const bool domain_flag =
      report_code == 0 && nlohmann::json::parse(report)["flags"]["domain_ok"] == false;

  const bool pass = code1 == 0 && code2 == 0 && first == second && tampered_code == 2 && domain_flag;
  return {pass, "verify exit " + std::to_string(code1) + ", rerun identical " +
                    (first == second ? "yes" : "no") + ", tampered exit " +
                    std::to_string(tampered_code) + ", berwald_moor3 domain_ok=false " +
                    (domain_flag ? "yes" : "no")};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, Outcome (*)()>> criteria = {
      {"homogeneity identities of A on catalog samples", identity_suite_holds},
      {"fundamental tensor vs FD Hessian, inverse", fundamental_tensor_consistent},
      {"spray vs metric oracle, conformal closed form", spray_oracle_equivalence},
      {"Cartan vs FD, angular metric, contractions", cartan_and_angular_consistent},
      {"Riemannian and locally Minkowskian degenerations", degenerations_vanish},
      {"homogeneity degree table", homogeneity_table},
      {"isotropic Landsberg dichotomy", landsberg_dichotomy},
      {"isotropic H dichotomy", h_dichotomy},
      {"det(A_ij) G^i polynomial in y", rationality},
      {"CLI contract", cli_contract},
  };
  int failures = 0;
  int number = 0;
  for (const auto& [label, fn] : criteria) {
    ++number;
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("%s [%d] %s: %s\n", o.pass ? "PASS" : "FAIL", number, label, o.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", number - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
