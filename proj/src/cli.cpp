#include "mroot/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <sstream>

#include "mroot/catalog.hpp"
#include "mroot/errors.hpp"
#include "mroot/json_writer.hpp"
#include "mroot/linalg.hpp"
#include "mroot/metric_tensors.hpp"
#include "mroot/spec_io.hpp"
#include "mroot/spray_curvature.hpp"
#include "parallel.hpp"

namespace mroot {
namespace {

using nlohmann::ordered_json;

ordered_json tensor_json(const TensorValue& t) {
  ordered_json j;
  j["con"] = t.con();
  j["cov"] = t.cov();
  j["components"] = std::vector<double>(t.comps().begin(), t.comps().end());
  j["norm"] = t.norm();
  return j;
}

ordered_json tensor_json(const std::optional<TensorValue>& t) {
  return t ? tensor_json(*t) : ordered_json(nullptr);
}

ordered_json metric_header(const MetricSpec& spec) {
  ordered_json j;
  j["dimension"] = spec.dimension();
  j["degree"] = spec.degree();
  return j;
}

// Contraction of the first lower index with y, relative to the tensor's size.
double contraction_residual(const TensorValue& t, const Vec& y, bool last_index) {
  const int n = t.n();
  const std::size_t stride = t.comps().size() / n;
  double worst = 0.0;
  for (std::size_t rest = 0; rest < stride; ++rest) {
    double acc = 0.0;
    for (int a = 0; a < n; ++a) {
      const std::size_t off = last_index ? rest * n + a : a * stride + rest;
      acc += t.comps()[off] * y[a];
    }
    worst = std::max(worst, std::abs(acc));
  }
  return worst / std::max(1.0, t.norm());
}

TensorValue scaled(TensorValue t, double s) { return t *= s; }

Vec parse_reals(const std::string& text, const std::string& flag) {
  Vec out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      const double v = std::stod(item, &used);
      while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
      if (used != item.size() || !std::isfinite(v)) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw SpecError(flag + ": cannot parse '" + item + "' as a real number");
    }
  }
  if (out.empty()) throw SpecError(flag + ": expected comma-separated reals");
  return out;
}

Vec parse_x(const std::string& text, const MetricSpec& spec) {
  if (text.empty()) return Vec(spec.dimension(), 0.0);
  Vec x = parse_reals(text, "--x");
  if (static_cast<int>(x.size()) != spec.dimension()) {
    throw SpecError("--x: expected " + std::to_string(spec.dimension()) + " components");
  }
  return x;
}

int resolve_threads(int flag) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv("MROOT_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 1;
}

}  // namespace

ordered_json curvature_report(const MetricSpec& spec, const EvalPoint& p) {
  check_point(spec, p);
  const auto d = a_derivatives(spec, p, false);
  double det = 0.0;
  if (is_degenerate(d.aij, &det)) throw DegenerateMetric(det);
  const Signature sig = signature(d.aij);
  const bool domain_ok = d.a > 0.0;

  ordered_json doc;
  doc["schema"] = kSchema;
  doc["kind"] = "report";
  doc["metric"] = metric_header(spec);
  doc["point"] = {{"x", p.x}, {"y", p.y}};

  ordered_json scalars;
  scalars["A"] = d.a;
  scalars["F"] = domain_ok ? ordered_json(finsler_norm(spec, p)) : ordered_json(nullptr);
  scalars["det_A_ij"] = det;
  scalars["signature_A_ij"] = {
      {"positive", sig.positive}, {"negative", sig.negative}, {"zero", sig.zero}};
  doc["scalars"] = scalars;

  const SprayCurvatures sc = spray_curvatures(spec, p);
  auto domain = [&](auto&& fn) -> ordered_json {
    return domain_ok ? tensor_json(fn(spec, p)) : ordered_json(nullptr);
  };
  ordered_json tensors;
  tensors["g"] = domain(fundamental_tensor);
  tensors["g_inverse"] = domain(inverse_fundamental);
  tensors["y_lowered"] = domain(lowered_y);
  tensors["C"] = domain(cartan_tensor);
  tensors["h"] = domain(angular_metric);
  tensors["G"] = tensor_json(sc.g_spray);
  tensors["N"] = tensor_json(sc.n_conn);
  tensors["G_jk"] = tensor_json(sc.b_conn);
  tensors["B"] = tensor_json(sc.berwald);
  tensors["E"] = tensor_json(sc.mean_berwald);
  tensors["L"] = tensor_json(sc.landsberg);
  tensors["H"] = tensor_json(sc.h);
  tensors["R"] = tensor_json(sc.riemann);
  doc["tensors"] = tensors;

  const IdentityResiduals ids = identity_suite(spec, p);
  ordered_json residuals;
  residuals["identity_suite"] = {
      {"euler", ids.euler},
      {"hessian_euler", ids.hessian_euler},
      {"lowered", ids.lowered ? ordered_json(*ids.lowered) : ordered_json(nullptr)},
      {"inverse_contraction", ids.inverse_contraction},
      {"inverse_quadratic", ids.inverse_quadratic}};
  residuals["spray_oracle"] =
      domain_ok ? ordered_json(relative_residual(spray_from_g_oracle(spec, p), sc.g_spray))
                : ordered_json(nullptr);
  doc["residuals"] = residuals;

  doc["flags"] = {{"positive_definite", sig.positive == spec.dimension()},
                  {"domain_ok", domain_ok}};
  return doc;
}

std::vector<CheckResult> verify_metric(const MetricSpec& spec, const Vec& x,
                                       const SamplePlan& plan) {
  static const std::vector<std::string> names = {
      "identity_euler",       "identity_hessian_euler", "identity_lowered_y",
      "identity_inverse_contraction", "identity_inverse_quadratic", "spray_oracle",
      "homogeneity_G",        "homogeneity_N",          "homogeneity_G_jk",
      "homogeneity_B",        "homogeneity_E",          "homogeneity_L",
      "homogeneity_H",        "homogeneity_R",          "homogeneity_g",
      "homogeneity_C",        "homogeneity_h",          "contraction_C_y",
      "contraction_h_y",      "contraction_E_y",        "contraction_L_y",
      "contraction_H_y",      "contraction_R_y"};
  const auto points = sample_directions(spec, x, plan);
  const int count = static_cast<int>(points.size());
  std::vector<std::vector<double>> per(count);

  detail::parallel_for(count, plan.threads, [&](int k) {
    const EvalPoint& p = points[k];
    std::vector<double> r;
    const IdentityResiduals ids = identity_suite(spec, p);
    r.insert(r.end(), {ids.euler, ids.hessian_euler, ids.lowered.value_or(0.0),
                       ids.inverse_contraction, ids.inverse_quadratic});
    const SprayCurvatures base = spray_curvatures(spec, p);
    r.push_back(relative_residual(spray_from_g_oracle(spec, p), base.g_spray));

    const TensorValue g = fundamental_tensor(spec, p);
    const TensorValue c = cartan_tensor(spec, p);
    const TensorValue h = angular_metric(spec, p);
    double hom[11] = {};
    for (double lambda : {0.5, 2.0}) {
      Vec ys = p.y;
      for (double& v : ys) v *= lambda;
      const EvalPoint q(p.x, ys);
      const SprayCurvatures s = spray_curvatures(spec, q);
      const double vals[11] = {
          relative_residual(s.g_spray, scaled(base.g_spray, lambda * lambda)),
          relative_residual(s.n_conn, scaled(base.n_conn, lambda)),
          relative_residual(s.b_conn, base.b_conn),
          relative_residual(s.berwald, scaled(base.berwald, 1.0 / lambda)),
          relative_residual(s.mean_berwald, scaled(base.mean_berwald, 1.0 / lambda)),
          relative_residual(*s.landsberg, *base.landsberg),
          relative_residual(s.h, base.h),
          relative_residual(s.riemann, scaled(base.riemann, lambda * lambda)),
          relative_residual(fundamental_tensor(spec, q), g),
          relative_residual(cartan_tensor(spec, q), scaled(c, 1.0 / lambda)),
          relative_residual(angular_metric(spec, q), h)};
      for (int i = 0; i < 11; ++i) hom[i] = std::max(hom[i], vals[i]);
    }
    r.insert(r.end(), std::begin(hom), std::end(hom));

    r.push_back(contraction_residual(c, p.y, true));
    r.push_back(contraction_residual(h, p.y, true));
    r.push_back(contraction_residual(base.mean_berwald, p.y, true));
    r.push_back(contraction_residual(*base.landsberg, p.y, false));
    r.push_back(contraction_residual(base.h, p.y, true));
    r.push_back(contraction_residual(base.riemann, p.y, true));
    per[k] = std::move(r);
  });

  std::vector<CheckResult> out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    double worst = 0.0;
    for (const auto& r : per) worst = std::max(worst, r[i]);
    out.push_back({names[i], worst});
  }
  return out;
}

Classification classify_metric(const MetricSpec& spec, const Vec& x, const SamplePlan& plan) {
  const double riemannian = riemannian_residual(spec, x, plan);
  const LandsbergFit lfit = landsberg_isotropy_fit(spec, x, plan);
  const HFit hfit = h_isotropy_fit(spec, x, plan);

  const auto points = sample_directions(spec, x, plan);
  std::vector<double> b_norm(points.size()), e_norm(points.size());
  detail::parallel_for(static_cast<int>(points.size()), plan.threads, [&](int k) {
    const TensorValue b = berwald_curvature(spec, points[k]);
    b_norm[k] = b.norm();
    e_norm[k] = mean_berwald(spec, points[k]).norm();
  });
  const double b_max = *std::max_element(b_norm.begin(), b_norm.end());
  const double e_max = *std::max_element(e_norm.begin(), e_norm.end());

  SamplePlan rplan = plan;
  const int basis = [&] {
    // C(n + D, n) monomials of total degree <= D.
    const int n = spec.dimension();
    const int deg = rationality_degree_bound(n, spec.degree());
    double c = 1.0;
    for (int k = 1; k <= n; ++k) c = c * (deg + k) / k;
    return static_cast<int>(std::lround(c));
  }();
  rplan.count = std::max(plan.count, 2 * basis);
  const RationalityReport rat = rationality_check(spec, x, rplan);

  Classification out;
  ordered_json& doc = out.doc;
  doc["schema"] = kSchema;
  doc["kind"] = "classify";
  doc["metric"] = metric_header(spec);
  doc["x"] = x;
  doc["samples"] = plan.count;
  doc["seed"] = plan.seed;
  doc["riemannian_residual"] = riemannian;
  doc["landsberg_fit"] = {{"c", lfit.fit.fitted.at(0)},
                          {"residual_rel", lfit.fit.residual_rel},
                          {"samples_used", lfit.fit.samples_used},
                          {"cartan_norm", lfit.cartan_norm},
                          {"landsberg_norm", lfit.landsberg_norm},
                          {"verdict", to_string(lfit.verdict)}};
  doc["h_fit"] = {{"theta", hfit.fit.fitted},
                  {"residual_rel", hfit.fit.residual_rel},
                  {"samples_used", hfit.fit.samples_used},
                  {"h_norm", hfit.h_norm},
                  {"verdict", to_string(hfit.verdict)}};
  doc["rationality"] = {{"degree_bound", rat.degree_bound},
                        {"basis_size", rat.basis_size},
                        {"samples_used", rat.samples_used},
                        {"heldout_residual", rat.heldout_residual},
                        {"is_polynomial", rat.is_polynomial}};
  doc["norms"] = {{"B", b_max}, {"E", e_max}};
  doc["verdicts"] = {{"riemannian", riemannian < kIsotropyTolerance},
                     {"landsberg", lfit.landsberg_norm <= kIsotropyTolerance},
                     {"berwald", b_max <= kIsotropyTolerance},
                     {"weakly_berwald", e_max <= kIsotropyTolerance},
                     {"h_flat", hfit.h_norm <= kIsotropyTolerance}};
  out.forbidden = lfit.verdict == LandsbergVerdict::kForbidden ||
                  hfit.verdict == HVerdict::kForbidden;
  doc["forbidden_quadrant"] = out.forbidden;
  return out;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"m-th root Finsler metric toolkit", "mroot"};
  app.require_subcommand(1);

  std::string path, x_text, y_text, name;
  int samples = 0, threads = 0;
  std::uint64_t seed = 0;
  double tol = 1e-6;

  auto* validate = app.add_subcommand("validate", "check a metric spec file");
  validate->add_option("path", path, "spec file")->required();

  auto* report = app.add_subcommand("report", "all tensors at one point");
  report->add_option("path", path, "spec file")->required();
  report->add_option("--x", x_text, "base point, comma-separated (default origin)");
  report->add_option("--y", y_text, "direction, comma-separated")->required();

  auto* verify = app.add_subcommand("verify", "identity, oracle and scaling checks");
  verify->add_option("path", path, "spec file")->required();
  verify->add_option("--x", x_text, "base point, comma-separated (default origin)");
  verify->add_option("--samples", samples, "number of directions")->default_val(100);
  verify->add_option("--seed", seed, "sampling seed")->default_val(0);
  verify->add_option("--tol", tol, "pass threshold for every residual")->default_val(1e-6);
  verify->add_option("--threads", threads, "worker threads (env MROOT_THREADS)");

  auto* classify = app.add_subcommand("classify", "Landsberg/H dichotomies at a base point");
  classify->add_option("path", path, "spec file")->required();
  classify->add_option("--x", x_text, "base point, comma-separated (default origin)");
  classify->add_option("--samples", samples, "number of directions")->default_val(50);
  classify->add_option("--seed", seed, "sampling seed")->default_val(0);
  classify->add_option("--threads", threads, "worker threads (env MROOT_THREADS)");

  auto* exporter = app.add_subcommand("export", "print a catalog metric as a spec file");
  exporter->add_option("name", name, "catalog name")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitInput;
  }

  try {
    if (exporter->parsed()) {
      write_json(out, spec_to_json(catalog_metric(name).spec));
      return kExitOk;
    }

    const MetricSpec spec = load_spec(path);

    if (validate->parsed()) {
      ordered_json doc;
      doc["schema"] = kSchema;
      doc["kind"] = "validate";
      doc["valid"] = true;
      doc["metric"] = metric_header(spec);
      doc["coefficients"] = spec.coefficients().size();
      doc["x_independent"] = spec.is_x_independent();
      write_json(out, doc);
      return kExitOk;
    }

    const Vec x = parse_x(x_text, spec);

    if (report->parsed()) {
      const Vec y = parse_reals(y_text, "--y");
      if (static_cast<int>(y.size()) != spec.dimension()) {
        throw SpecError("--y: expected " + std::to_string(spec.dimension()) + " components");
      }
      if (std::all_of(y.begin(), y.end(), [](double v) { return v == 0.0; })) {
        throw SpecError("--y: direction must be nonzero");
      }
      const ordered_json doc = curvature_report(spec, EvalPoint(x, y));
      if (!doc["flags"]["domain_ok"].get<bool>()) {
        err << "note: A <= 0 at this point; fractional-power fields are null\n";
      }
      write_json(out, doc);
      return kExitOk;
    }

    SamplePlan plan;
    plan.seed = seed;
    plan.count = samples;
    plan.threads = resolve_threads(threads);

    if (verify->parsed()) {
      const auto checks = verify_metric(spec, x, plan);
      ordered_json doc;
      doc["schema"] = kSchema;
      doc["kind"] = "verify";
      doc["metric"] = metric_header(spec);
      doc["x"] = x;
      doc["samples"] = samples;
      doc["seed"] = seed;
      doc["tolerance"] = tol;
      doc["checks"] = ordered_json::array();
      bool all_pass = true;
      err << std::left << std::setw(32) << "check" << std::setw(14) << "max residual"
          << "status\n";
      for (const auto& c : checks) {
        const bool pass = c.max_residual < tol;
        all_pass = all_pass && pass;
        doc["checks"].push_back(
            {{"name", c.name}, {"max_residual", c.max_residual}, {"pass", pass}});
        err << std::left << std::setw(32) << c.name << std::setw(14) << std::setprecision(3)
            << std::scientific << c.max_residual << (pass ? "ok" : "FAIL") << "\n"
            << std::defaultfloat;
      }
      doc["pass"] = all_pass;
      write_json(out, doc);
      return all_pass ? kExitOk : kExitCheckFailed;
    }

    if (classify->parsed()) {
      const Classification c = classify_metric(spec, x, plan);
      write_json(out, c.doc);
      if (c.forbidden) {
        err << "error: forbidden dichotomy quadrant observed (isotropic fit with nonzero "
               "curvature)\n";
        return kExitCheckFailed;
      }
      return kExitOk;
    }
  } catch (const DegenerateMetric& e) {
    err << "error: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const SamplingStarved& e) {
    err << "error: sampling starved: " << e.what() << "\n";
    return kExitStarved;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace mroot
