#pragma once

#include <span>
#include <vector>

namespace mroot {

/// Dense components of a tensor at one point with `con` upper and `cov` lower indices.
/// Storage is row-major with the upper indices first.
class TensorValue {
 public:
  TensorValue(int n, int con, int cov);

  int n() const { return n_; }
  int con() const { return con_; }
  int cov() const { return cov_; }
  int rank() const { return con_ + cov_; }

  std::span<const double> comps() const { return comps_; }
  std::span<double> comps() { return comps_; }

  template <class... I>
  double& operator()(I... idx) {
    return comps_[offset({static_cast<int>(idx)...})];
  }
  template <class... I>
  double operator()(I... idx) const {
    return comps_[offset({static_cast<int>(idx)...})];
  }

  /// Max absolute component (chart-dependent norm).
  double norm() const;

  TensorValue& operator*=(double s);

 private:
  std::size_t offset(std::initializer_list<int> idx) const;

  int n_;
  int con_;
  int cov_;
  std::vector<double> comps_;
};

/// max |a - b| / max(1, max |b|); the shapes must agree.
double relative_residual(std::span<const double> a, std::span<const double> b);
double relative_residual(const TensorValue& a, const TensorValue& b);

/// max |a - b|.
double max_abs_diff(const TensorValue& a, const TensorValue& b);

/// Largest deviation from total symmetry over all index permutations (lower indices only).
double symmetry_defect(const TensorValue& t);

}  // namespace mroot
