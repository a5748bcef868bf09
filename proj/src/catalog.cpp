#include "mroot/catalog.hpp"

#include "mroot/errors.hpp"

namespace mroot {
namespace {

using Coeffs = std::map<MultiIndex, XPolynomial>;

CatalogEntry euclid2() {
  Coeffs c;
  c.emplace(MultiIndex({0, 0}), XPolynomial::constant(2, 1.0));
  c.emplace(MultiIndex({1, 1}), XPolynomial::constant(2, 1.0));
  const std::string why = "m = 2 with constant coefficients: flat Euclidean plane";
  return {"euclid2",
          MetricSpec(2, 2, std::move(c)),
          {{"riemannian", {true, why}},
           {"locally_minkowskian", {true, why}},
           {"positive_definite_at_probe", {true, "A_ij = 2 I"}},
           {"berwald", {true, why}},
           {"landsberg", {true, why}},
           {"weakly_berwald", {true, why}},
           {"h_flat", {true, why}}}};
}

// (1 + 2 x^1) |y|^2
CatalogEntry conformal2() {
  XPolynomial f;
  f.add_term({0, 0}, 1.0);
  f.add_term({1, 0}, 2.0);
  Coeffs c;
  c.emplace(MultiIndex({0, 0}), f);
  c.emplace(MultiIndex({1, 1}), f);
  const std::string why = "m = 2: Riemannian, spray quadratic in y (Christoffel oracle)";
  return {"conformal2",
          MetricSpec(2, 2, std::move(c)),
          {{"riemannian", {true, why}},
           {"locally_minkowskian", {false, "coefficients depend on x^1"}},
           {"positive_definite_at_probe", {true, "A_ij = 2 (1 + 2 x^1) I at x = 0"}},
           {"berwald", {true, why}},
           {"landsberg", {true, why}},
           {"weakly_berwald", {true, why}},
           {"h_flat", {true, why}}}};
}

// y^1 y^2 y^3, stored as a_123 = 1/6 (multiplicity 3! = 6).
CatalogEntry berwald_moor3() {
  Coeffs c;
  c.emplace(MultiIndex({0, 1, 2}), XPolynomial::constant(3, 1.0 / 6.0));
  const std::string why = "constant coefficients: locally Minkowskian, G = 0";
  return {"berwald_moor3",
          MetricSpec(3, 3, std::move(c)),
          {{"riemannian", {false, "Cartan torsion nonzero at (1,1,1) (closed form)"}},
           {"locally_minkowskian", {true, why}},
           {"positive_definite_at_probe",
            {false, "A_ij at (1,1,1) has eigenvalues 2, -1, -1"}},
           {"berwald", {true, why}},
           {"landsberg", {true, why}},
           {"weakly_berwald", {true, why}},
           {"h_flat", {true, why}}}};
}

// (y^1)^4 + (y^2)^4 + (1 + x^1 + (x^2)^2) (y^1)^2 (y^2)^2, cross term stored as poly / 6.
CatalogEntry quartic2() {
  XPolynomial cross;
  cross.add_term({0, 0}, 1.0 / 6.0);
  cross.add_term({1, 0}, 1.0 / 6.0);
  cross.add_term({0, 2}, 1.0 / 6.0);
  Coeffs c;
  c.emplace(MultiIndex({0, 0, 0, 0}), XPolynomial::constant(2, 1.0));
  c.emplace(MultiIndex({1, 1, 1, 1}), XPolynomial::constant(2, 1.0));
  c.emplace(MultiIndex({0, 0, 1, 1}), cross);
  const std::string jets = "jet engine, cross-checked by finite differences of the spray";
  return {"quartic2",
          MetricSpec(2, 4, std::move(c)),
          {{"riemannian", {false, "Cartan torsion nonzero (closed form vs finite differences)"}},
           {"locally_minkowskian", {false, "cross coefficient depends on x"}},
           {"positive_definite_at_probe", {true, "det A_ij = 24(y1^4+y2^4) + 132 y1^2 y2^2 at x=0"}},
           {"berwald", {false, jets}},
           {"landsberg", {false, jets}},
           {"weakly_berwald", {false, jets}},
           {"h_flat", {false, jets}}}};
}

}  // namespace

CatalogEntry catalog_metric(const std::string& name) {
  if (name == "euclid2") return euclid2();
  if (name == "conformal2") return conformal2();
  if (name == "berwald_moor3") return berwald_moor3();
  if (name == "quartic2") return quartic2();
  throw Error("unknown catalog metric '" + name + "'");
}

std::vector<std::string> catalog_names() {
  return {"euclid2", "conformal2", "berwald_moor3", "quartic2"};
}

}  // namespace mroot
