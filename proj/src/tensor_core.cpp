#include "mroot/tensor_core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mroot/errors.hpp"

namespace mroot {
namespace {

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

// d^a/dt^a t^k evaluated at t, as a falling factorial times a power.
double monomial_derivative(int k, int a, double t) {
  if (a > k) return 0.0;
  double c = 1.0;
  for (int i = 0; i < a; ++i) c *= (k - i);
  double v = 1.0;
  for (int i = 0; i < k - a; ++i) v *= t;
  return c * v;
}

}  // namespace

MultiIndex::MultiIndex(std::vector<int> entries) : entries_(std::move(entries)) {
  if (!std::is_sorted(entries_.begin(), entries_.end())) {
    throw SpecError("multi-index entries must be sorted ascending");
  }
  if (!entries_.empty() && entries_.front() < 0) {
    throw SpecError("multi-index entries must be non-negative");
  }
}

std::vector<int> MultiIndex::counts(int n) const {
  std::vector<int> k(n, 0);
  for (int e : entries_) {
    if (e >= n) throw SpecError("multi-index entry out of range");
    ++k[e];
  }
  return k;
}

double MultiIndex::multiplicity(int n) const {
  double mult = factorial(degree());
  for (int k : counts(n)) mult /= factorial(k);
  return mult;
}

XPolynomial XPolynomial::constant(int n, double c) {
  XPolynomial p;
  p.add_term(Exponents(n, 0), c);
  return p;
}

void XPolynomial::add_term(const Exponents& exps, double c) {
  if (std::any_of(exps.begin(), exps.end(), [](int e) { return e < 0; })) {
    throw SpecError("polynomial exponents must be non-negative");
  }
  if (!terms_.empty() && terms_.begin()->first.size() != exps.size()) {
    throw SpecError("polynomial exponent tuples have inconsistent length");
  }
  if (!std::isfinite(c)) throw SpecError("polynomial coefficient must be finite");
  double& slot = terms_[exps];
  slot += c;
  if (slot == 0.0) terms_.erase(exps);
}

bool XPolynomial::is_constant() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) {
    return std::all_of(t.first.begin(), t.first.end(), [](int e) { return e == 0; });
  });
}

double XPolynomial::derivative(std::span<const double> x, std::span<const int> ax) const {
  double sum = 0.0;
  for (const auto& [exps, c] : terms_) {
    double v = c;
    for (std::size_t q = 0; q < exps.size() && v != 0.0; ++q) {
      v *= monomial_derivative(exps[q], ax[q], x[q]);
    }
    sum += v;
  }
  return sum;
}

double XPolynomial::operator()(std::span<const double> x) const {
  std::vector<int> none(x.size(), 0);
  return derivative(x, none);
}

MetricSpec::MetricSpec(int n, int m, std::map<MultiIndex, XPolynomial> coeffs)
    : n_(n), m_(m), coeffs_(std::move(coeffs)) {
  if (n < 1) throw SpecError("dimension must be at least 1");
  if (m < 2) throw SpecError("degree must be at least 2, got " + std::to_string(m));
  bool any_nonzero = false;
  for (const auto& [index, poly] : coeffs_) {
    if (index.degree() != m) {
      throw SpecError("multi-index length " + std::to_string(index.degree()) +
                      " does not match degree " + std::to_string(m));
    }
    index.counts(n);
    for (const auto& [exps, c] : poly.terms()) {
      if (static_cast<int>(exps.size()) != n) {
        throw SpecError("polynomial exponent tuple length must equal dimension");
      }
    }
    any_nonzero = any_nonzero || !poly.is_zero();
  }
  if (!any_nonzero) throw SpecError("at least one coefficient must be nonzero");
  build_terms();
}

MetricSpec::MetricSpec(const MetricSpec& other)
    : n_(other.n_), m_(other.m_), coeffs_(other.coeffs_) {
  build_terms();
}

MetricSpec& MetricSpec::operator=(const MetricSpec& other) {
  if (this != &other) {
    n_ = other.n_;
    m_ = other.m_;
    coeffs_ = other.coeffs_;
    build_terms();
  }
  return *this;
}

void MetricSpec::build_terms() {
  terms_.clear();
  for (const auto& [index, poly] : coeffs_) {
    if (poly.is_zero()) continue;
    terms_.push_back({index.counts(n_), index.multiplicity(n_), &poly});
  }
}

bool MetricSpec::is_x_independent() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [](const auto& c) { return c.second.is_constant(); });
}

EvalPoint::EvalPoint(Vec x_, Vec y_) : x(std::move(x_)), y(std::move(y_)) {
  if (std::none_of(y.begin(), y.end(), [](double v) { return v != 0.0; })) {
    throw Error("direction y must be nonzero");
  }
}

void check_point(const MetricSpec& spec, const EvalPoint& p) {
  const auto n = static_cast<std::size_t>(spec.dimension());
  if (p.x.size() != n || p.y.size() != n) {
    throw DimensionMismatch("point has dimension (" + std::to_string(p.x.size()) + ", " +
                            std::to_string(p.y.size()) + "), metric has " +
                            std::to_string(n));
  }
}

double eval_A(const MetricSpec& spec, const EvalPoint& p) {
  std::vector<int> none(spec.dimension(), 0);
  return partial_A(spec, p, none, none);
}

double partial_A(const MetricSpec& spec, const EvalPoint& p, std::span<const int> ay,
                 std::span<const int> ax) {
  check_point(spec, p);
  const int n = spec.dimension();
  if (static_cast<int>(ay.size()) != n || static_cast<int>(ax.size()) != n) {
    throw DimensionMismatch("derivative multi-order length must equal dimension");
  }
  double sum = 0.0;
  for (const auto& term : spec.terms()) {
    double v = term.multiplicity;
    for (int j = 0; j < n && v != 0.0; ++j) {
      v *= monomial_derivative(term.y_exps[j], ay[j], p.y[j]);
    }
    if (v == 0.0) continue;
    sum += v * term.poly->derivative(p.x, ax);
  }
  return sum;
}

ContractedPartials contracted_partials(const MetricSpec& spec, const EvalPoint& p) {
  check_point(spec, p);
  const int n = spec.dimension();
  ContractedPartials out{0.0, Vec(n, 0.0)};
  std::vector<int> ay(n, 0), ax(n, 0);
  for (int k = 0; k < n; ++k) {
    ax[k] = 1;
    out.a0 += partial_A(spec, p, ay, ax) * p.y[k];
    for (int j = 0; j < n; ++j) {
      ay[j] = 1;
      out.a0j[j] += partial_A(spec, p, ay, ax) * p.y[k];
      ay[j] = 0;
    }
    ax[k] = 0;
  }
  return out;
}

}  // namespace mroot
