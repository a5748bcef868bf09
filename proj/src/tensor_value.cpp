#include "mroot/tensor_value.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mroot/errors.hpp"

namespace mroot {

TensorValue::TensorValue(int n, int con, int cov) : n_(n), con_(con), cov_(cov) {
  std::size_t size = 1;
  for (int r = 0; r < con + cov; ++r) size *= static_cast<std::size_t>(n);
  comps_.assign(size, 0.0);
}

std::size_t TensorValue::offset(std::initializer_list<int> idx) const {
  if (static_cast<int>(idx.size()) != rank()) throw ShapeMismatch("tensor index count");
  std::size_t off = 0;
  for (int i : idx) off = off * n_ + i;
  return off;
}

double TensorValue::norm() const {
  double m = 0.0;
  for (double c : comps_) m = std::max(m, std::abs(c));
  return m;
}

TensorValue& TensorValue::operator*=(double s) {
  for (double& c : comps_) c *= s;
  return *this;
}

double relative_residual(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ShapeMismatch("residual operands differ in size");
  double diff = 0.0, scale = 1.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    diff = std::max(diff, std::abs(a[k] - b[k]));
    scale = std::max(scale, std::abs(b[k]));
  }
  return diff / scale;
}

double relative_residual(const TensorValue& a, const TensorValue& b) {
  return relative_residual(a.comps(), b.comps());
}

double max_abs_diff(const TensorValue& a, const TensorValue& b) {
  if (a.comps().size() != b.comps().size()) throw ShapeMismatch("tensor shapes differ");
  double d = 0.0;
  for (std::size_t k = 0; k < a.comps().size(); ++k) {
    d = std::max(d, std::abs(a.comps()[k] - b.comps()[k]));
  }
  return d;
}

double symmetry_defect(const TensorValue& t) {
  const int n = t.n();
  const int lower = t.cov();
  const std::size_t block = [&] {
    std::size_t b = 1;
    for (int r = 0; r < lower; ++r) b *= n;
    return b;
  }();
  const auto comps = t.comps();
  double defect = 0.0;
  std::vector<int> digits(lower);
  for (std::size_t base = 0; base < comps.size(); base += block) {
    for (std::size_t k = 0; k < block; ++k) {
      std::size_t rem = k;
      for (int r = lower - 1; r >= 0; --r) {
        digits[r] = static_cast<int>(rem % n);
        rem /= n;
      }
      std::vector<int> perm = digits;
      std::sort(perm.begin(), perm.end());
      do {
        std::size_t off = 0;
        for (int d : perm) off = off * n + d;
        defect = std::max(defect, std::abs(comps[base + k] - comps[base + off]));
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
  }
  return defect;
}

}  // namespace mroot
