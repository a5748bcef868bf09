#pragma once

// Exact representation of the degree-m form
//   A(x, y) = a_{i1...im}(x) y^{i1} ... y^{im}
// with symmetric coefficients whose x-dependence is polynomial.
//
// Indices are 0-based in memory; file formats and reports use 1-based indices.

#include <map>
#include <span>
#include <vector>

namespace mroot {

using Vec = std::vector<double>;

/// Sorted multi-index i1 <= i2 <= ... <= im labelling one symmetric component.
class MultiIndex {
 public:
  /// `entries` are 0-based and must be non-decreasing.
  explicit MultiIndex(std::vector<int> entries);

  const std::vector<int>& entries() const { return entries_; }
  int degree() const { return static_cast<int>(entries_.size()); }

  /// Per-variable occurrence counts k_1..k_n.
  std::vector<int> counts(int n) const;

  /// m! / (k_1! ... k_n!), the number of index orderings of this component.
  double multiplicity(int n) const;

  auto operator<=>(const MultiIndex&) const = default;

 private:
  std::vector<int> entries_;
};

/// Polynomial in x with real coefficients; zero coefficients are never stored.
class XPolynomial {
 public:
  using Exponents = std::vector<int>;

  XPolynomial() = default;
  static XPolynomial constant(int n, double c);

  /// Adds c * x^exps, merging with an existing term.
  void add_term(const Exponents& exps, double c);

  const std::map<Exponents, double>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;

  /// Value of d^{ax} p / dx^{ax} at x.
  double derivative(std::span<const double> x, std::span<const int> ax) const;
  double operator()(std::span<const double> x) const;

 private:
  std::map<Exponents, double> terms_;
};

/// Dimension, degree and symmetric coefficient field of an m-th root metric.
class MetricSpec {
 public:
  MetricSpec(int n, int m, std::map<MultiIndex, XPolynomial> coeffs);

  int dimension() const { return n_; }
  int degree() const { return m_; }
  const std::map<MultiIndex, XPolynomial>& coefficients() const { return coeffs_; }

  /// True when every coefficient is a constant polynomial (locally Minkowskian).
  bool is_x_independent() const;

  struct Term {
    std::vector<int> y_exps;
    double multiplicity;
    const XPolynomial* poly;
  };
  const std::vector<Term>& terms() const { return terms_; }

  MetricSpec(const MetricSpec& other);
  MetricSpec& operator=(const MetricSpec& other);
  MetricSpec(MetricSpec&&) noexcept = default;
  MetricSpec& operator=(MetricSpec&&) noexcept = default;

 private:
  void build_terms();

  int n_;
  int m_;
  std::map<MultiIndex, XPolynomial> coeffs_;
  std::vector<Term> terms_;
};

/// A point (x, y) of the slit tangent bundle.
struct EvalPoint {
  EvalPoint(Vec x, Vec y);
  Vec x;
  Vec y;
};

void check_point(const MetricSpec& spec, const EvalPoint& p);

double eval_A(const MetricSpec& spec, const EvalPoint& p);

/// Exact mixed partial d^{|ax|+|ay|} A / dx^{ax} dy^{ay} at p.
/// `ay` and `ax` are per-variable derivative orders of length n.
double partial_A(const MetricSpec& spec, const EvalPoint& p, std::span<const int> ay,
                 std::span<const int> ax);

struct ContractedPartials {
  double a0;  // A_{x^k} y^k
  Vec a0j;    // A_{x^k y^j} y^k
};

ContractedPartials contracted_partials(const MetricSpec& spec, const EvalPoint& p);

}  // namespace mroot
