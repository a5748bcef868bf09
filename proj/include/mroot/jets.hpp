#pragma once

// Truncated multivariate Taylor series ("jets") and matrices of jets.
//
// A jet in perturbation variables (t_1, ..., t_d) stores the Taylor coefficients of
// every monomial t^alpha with |alpha| <= order. When `linear_last` is set, the last
// variable (an x-direction parameter s) is additionally truncated at degree 1.
// Coefficients are dense and ordered by total degree.

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "mroot/tensor_core.hpp"

namespace mroot {

inline constexpr int kMaxJetOrder = 4;

class JetLayout {
 public:
  /// Shared, cached layout; identical arguments return the same object.
  static std::shared_ptr<const JetLayout> get(int dim, int order, bool linear_last = false);

  int dim() const { return dim_; }
  int order() const { return order_; }
  bool linear_last() const { return linear_last_; }
  std::size_t size() const { return degree_.size(); }

  std::span<const int> exponents(std::size_t k) const {
    return {exps_.data() + k * dim_, static_cast<std::size_t>(dim_)};
  }
  int degree(std::size_t k) const { return degree_[k]; }
  /// alpha! for the k-th monomial.
  double factorial(std::size_t k) const { return factorial_[k]; }

  /// Layout position of alpha, or -1 when alpha is truncated away.
  int index_of(std::span<const int> alpha) const;

  struct Factor {
    int lhs;
    int rhs;
  };
  /// All (lhs, rhs) with lhs + rhs equal to monomial k.
  std::span<const Factor> factors_of(std::size_t k) const {
    return {factors_.data() + factor_begin_[k], factor_begin_[k + 1] - factor_begin_[k]};
  }

  JetLayout(int dim, int order, bool linear_last);

 private:
  int dim_;
  int order_;
  bool linear_last_;
  std::vector<int> exps_;
  std::vector<int> degree_;
  std::vector<double> factorial_;
  std::vector<int> lookup_;
  std::vector<Factor> factors_;
  std::vector<std::size_t> factor_begin_;
};

class Jet {
 public:
  Jet(int dim, int order, bool linear_last = false);
  explicit Jet(std::shared_ptr<const JetLayout> layout);

  static Jet constant(std::shared_ptr<const JetLayout> layout, double value);
  /// base + t_k
  static Jet variable(std::shared_ptr<const JetLayout> layout, int k, double base);

  const JetLayout& layout() const { return *layout_; }
  const std::shared_ptr<const JetLayout>& layout_ptr() const { return layout_; }
  int dim() const { return layout_->dim(); }
  int order() const { return layout_->order(); }

  double value() const { return coeffs_[0]; }
  std::span<const double> coeffs() const { return coeffs_; }
  double& operator[](std::size_t k) { return coeffs_[k]; }
  double operator[](std::size_t k) const { return coeffs_[k]; }

  double coeff(std::span<const int> alpha) const;
  void set_coeff(std::span<const int> alpha, double value);

  Jet& operator+=(const Jet& other);
  Jet& operator-=(const Jet& other);
  Jet& operator*=(double s);
  Jet operator-() const;

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(Jet a, double s) { return a *= s; }
  friend Jet operator*(double s, Jet a) { return a *= s; }
  /// Truncated Cauchy product.
  friend Jet operator*(const Jet& a, const Jet& b);

  /// a += b * c without a temporary.
  void add_product(const Jet& b, const Jet& c);

 private:
  void require_same_layout(const Jet& other) const;

  std::shared_ptr<const JetLayout> layout_;
  std::vector<double> coeffs_;
};

/// alpha! * coeff(alpha): the mixed partial derivative at the expansion point.
double extract_partial(const Jet& j, std::span<const int> alpha);

class MatrixJet {
 public:
  MatrixJet(int rows, int cols, std::shared_ptr<const JetLayout> layout);
  static MatrixJet identity(int n, std::shared_ptr<const JetLayout> layout);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const std::shared_ptr<const JetLayout>& layout_ptr() const { return layout_; }

  Jet& operator()(int r, int c) { return entries_[static_cast<std::size_t>(r) * cols_ + c]; }
  const Jet& operator()(int r, int c) const {
    return entries_[static_cast<std::size_t>(r) * cols_ + c];
  }

  friend MatrixJet operator*(const MatrixJet& a, const MatrixJet& b);

 private:
  int rows_;
  int cols_;
  std::shared_ptr<const JetLayout> layout_;
  std::vector<Jet> entries_;
};

/// Inverse up to truncation order. Inverts the constant term numerically and solves
/// for higher coefficients monomial by monomial:
///   N[alpha] = -M0^{-1} sum_{beta != 0, beta <= alpha} M[beta] N[alpha - beta].
/// Throws DegenerateMetric when |det M0| < 1e-12 * max|M0_ij|^n.
MatrixJet matrix_jet_inverse(const MatrixJet& m);

/// Taylor expansion of d^{ay} d^{ax} A at (x + s v, y + t) in (t_1..t_n[, s]).
/// With no x-direction the jet has n variables; otherwise n + 1 with s linear.
Jet jet_lift_partial(const MetricSpec& spec, const EvalPoint& p, int order,
                     std::span<const int> ay, std::span<const int> ax,
                     const std::optional<Vec>& x_direction = std::nullopt);

Jet jet_lift_A(const MetricSpec& spec, const EvalPoint& p, int order,
               const std::optional<Vec>& x_direction = std::nullopt);

}  // namespace mroot
