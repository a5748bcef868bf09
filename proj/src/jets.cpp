#include "mroot/jets.hpp"

#include <map>
#include <mutex>
#include <string>
#include <tuple>

#include "mroot/errors.hpp"
#include "mroot/linalg.hpp"

namespace mroot {
namespace {

// Appends every exponent tuple of total degree `deg` over `dim` variables.
void enumerate_degree(int dim, int deg, bool linear_last, std::vector<int>& current, int var,
                      std::vector<int>& out) {
  if (var == dim - 1) {
    if (linear_last && deg > 1) return;
    current[var] = deg;
    out.insert(out.end(), current.begin(), current.end());
    return;
  }
  for (int e = deg; e >= 0; --e) {
    current[var] = e;
    enumerate_degree(dim, deg - e, linear_last, current, var + 1, out);
  }
}

}  // namespace

JetLayout::JetLayout(int dim, int order, bool linear_last)
    : dim_(dim), order_(order), linear_last_(linear_last) {
  if (dim < 1) throw ShapeMismatch("jet dimension must be positive");
  if (order < 0 || order > kMaxJetOrder) {
    throw ShapeMismatch("jet order must lie in [0, " + std::to_string(kMaxJetOrder) + "]");
  }
  std::vector<int> current(dim, 0);
  for (int deg = 0; deg <= order; ++deg) {
    enumerate_degree(dim, deg, linear_last, current, 0, exps_);
  }
  const std::size_t count = exps_.size() / dim;

  std::size_t lookup_size = 1;
  for (int v = 0; v < dim; ++v) lookup_size *= static_cast<std::size_t>(order + 1);
  lookup_.assign(lookup_size, -1);
  for (std::size_t k = 0; k < count; ++k) {
    auto e = exponents(k);
    int deg = 0;
    double fact = 1.0;
    std::size_t code = 0;
    for (int v = 0; v < dim; ++v) {
      deg += e[v];
      for (int i = 2; i <= e[v]; ++i) fact *= i;
      code = code * (order + 1) + e[v];
    }
    degree_.push_back(deg);
    factorial_.push_back(fact);
    lookup_[code] = static_cast<int>(k);
  }

  std::vector<std::vector<Factor>> by_result(count);
  std::vector<int> sum(dim);
  for (std::size_t a = 0; a < count; ++a) {
    for (std::size_t b = 0; b < count; ++b) {
      if (degree_[a] + degree_[b] > order) continue;
      auto ea = exponents(a);
      auto eb = exponents(b);
      for (int v = 0; v < dim; ++v) sum[v] = ea[v] + eb[v];
      const int c = index_of(sum);
      if (c >= 0) by_result[c].push_back({static_cast<int>(a), static_cast<int>(b)});
    }
  }
  factor_begin_.push_back(0);
  for (auto& list : by_result) {
    factors_.insert(factors_.end(), list.begin(), list.end());
    factor_begin_.push_back(factors_.size());
  }
}

std::shared_ptr<const JetLayout> JetLayout::get(int dim, int order, bool linear_last) {
  static std::mutex mutex;
  static std::map<std::tuple<int, int, bool>, std::shared_ptr<const JetLayout>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{dim, order, linear_last}];
  if (!slot) slot = std::make_shared<const JetLayout>(dim, order, linear_last);
  return slot;
}

int JetLayout::index_of(std::span<const int> alpha) const {
  if (static_cast<int>(alpha.size()) != dim_) {
    throw ShapeMismatch("exponent tuple length does not match jet dimension");
  }
  std::size_t code = 0;
  int deg = 0;
  for (int v = 0; v < dim_; ++v) {
    if (alpha[v] < 0) return -1;
    deg += alpha[v];
    if (alpha[v] > order_) return -1;
    code = code * (order_ + 1) + alpha[v];
  }
  if (deg > order_) return -1;
  return lookup_[code];
}

Jet::Jet(int dim, int order, bool linear_last) : Jet(JetLayout::get(dim, order, linear_last)) {}

Jet::Jet(std::shared_ptr<const JetLayout> layout)
    : layout_(std::move(layout)), coeffs_(layout_->size(), 0.0) {}

Jet Jet::constant(std::shared_ptr<const JetLayout> layout, double value) {
  Jet j(std::move(layout));
  j.coeffs_[0] = value;
  return j;
}

Jet Jet::variable(std::shared_ptr<const JetLayout> layout, int k, double base) {
  Jet j(std::move(layout));
  j.coeffs_[0] = base;
  std::vector<int> alpha(j.dim(), 0);
  alpha.at(k) = 1;
  if (j.order() >= 1) j.set_coeff(alpha, 1.0);
  return j;
}

double Jet::coeff(std::span<const int> alpha) const {
  const int k = layout_->index_of(alpha);
  if (k < 0) throw ShapeMismatch("exponent tuple exceeds the jet truncation");
  return coeffs_[k];
}

void Jet::set_coeff(std::span<const int> alpha, double value) {
  const int k = layout_->index_of(alpha);
  if (k < 0) throw ShapeMismatch("exponent tuple exceeds the jet truncation");
  coeffs_[k] = value;
}

void Jet::require_same_layout(const Jet& other) const {
  if (layout_ != other.layout_) {
    throw ShapeMismatch("jets have different (dim, order) layouts");
  }
}

Jet& Jet::operator+=(const Jet& other) {
  require_same_layout(other);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += other.coeffs_[k];
  return *this;
}

Jet& Jet::operator-=(const Jet& other) {
  require_same_layout(other);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= other.coeffs_[k];
  return *this;
}

Jet& Jet::operator*=(double s) {
  for (double& c : coeffs_) c *= s;
  return *this;
}

Jet Jet::operator-() const {
  Jet out(*this);
  out *= -1.0;
  return out;
}

void Jet::add_product(const Jet& b, const Jet& c) {
  require_same_layout(b);
  require_same_layout(c);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    double acc = 0.0;
    for (const auto& f : layout_->factors_of(k)) acc += b.coeffs_[f.lhs] * c.coeffs_[f.rhs];
    coeffs_[k] += acc;
  }
}

Jet operator*(const Jet& a, const Jet& b) {
  Jet out(a.layout_);
  out.add_product(a, b);
  return out;
}

double extract_partial(const Jet& j, std::span<const int> alpha) {
  const int k = j.layout().index_of(alpha);
  if (k < 0) throw ShapeMismatch("derivative order exceeds the jet truncation");
  return j.layout().factorial(k) * j[k];
}

MatrixJet::MatrixJet(int rows, int cols, std::shared_ptr<const JetLayout> layout)
    : rows_(rows), cols_(cols), layout_(std::move(layout)) {
  entries_.reserve(static_cast<std::size_t>(rows) * cols);
  for (int k = 0; k < rows * cols; ++k) entries_.emplace_back(layout_);
}

MatrixJet MatrixJet::identity(int n, std::shared_ptr<const JetLayout> layout) {
  MatrixJet out(n, n, layout);
  for (int i = 0; i < n; ++i) out(i, i)[0] = 1.0;
  return out;
}

MatrixJet operator*(const MatrixJet& a, const MatrixJet& b) {
  if (a.cols_ != b.rows_ || a.layout_ != b.layout_) {
    throw ShapeMismatch("matrix jet product shape mismatch");
  }
  MatrixJet out(a.rows_, b.cols_, a.layout_);
  for (int i = 0; i < a.rows_; ++i) {
    for (int j = 0; j < b.cols_; ++j) {
      for (int k = 0; k < a.cols_; ++k) out(i, j).add_product(a(i, k), b(k, j));
    }
  }
  return out;
}

MatrixJet matrix_jet_inverse(const MatrixJet& m) {
  if (m.rows() != m.cols()) throw ShapeMismatch("matrix jet inverse needs a square matrix");
  const int n = m.rows();
  const auto& layout = *m.layout_ptr();
  const std::size_t count = layout.size();

  std::vector<Eigen::MatrixXd> mk(count, Eigen::MatrixXd(n, n));
  for (std::size_t k = 0; k < count; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) mk[k](i, j) = m(i, j)[k];
    }
  }

  const Eigen::MatrixXd m0_inv = checked_inverse(mk[0]);
  std::vector<Eigen::MatrixXd> nk(count);
  nk[0] = m0_inv;
  // Layout is degree-ordered, so every N[alpha - beta] with beta != 0 is already known.
  for (std::size_t k = 1; k < count; ++k) {
    Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(n, n);
    for (const auto& f : layout.factors_of(k)) {
      if (f.lhs == 0) continue;
      acc.noalias() += mk[f.lhs] * nk[f.rhs];
    }
    nk[k] = -m0_inv * acc;
  }

  MatrixJet out(n, n, m.layout_ptr());
  for (std::size_t k = 0; k < count; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) out(i, j)[k] = nk[k](i, j);
    }
  }
  return out;
}

Jet jet_lift_partial(const MetricSpec& spec, const EvalPoint& p, int order,
                     std::span<const int> ay, std::span<const int> ax,
                     const std::optional<Vec>& x_direction) {
  check_point(spec, p);
  const int n = spec.dimension();
  if (order < 0 || order > kMaxJetOrder) {
    throw ShapeMismatch("jet order must lie in [0, " + std::to_string(kMaxJetOrder) + "]");
  }
  if (x_direction && static_cast<int>(x_direction->size()) != n) {
    throw DimensionMismatch("x-direction length must equal dimension");
  }
  const bool with_s = x_direction.has_value();
  auto layout = JetLayout::get(with_s ? n + 1 : n, order, with_s);
  Jet out(layout);

  std::vector<int> dy(n), dx(n);
  for (std::size_t k = 0; k < layout->size(); ++k) {
    auto alpha = layout->exponents(k);
    for (int j = 0; j < n; ++j) dy[j] = ay[j] + alpha[j];
    for (int j = 0; j < n; ++j) dx[j] = ax[j];
    double value = 0.0;
    if (with_s && alpha[n] == 1) {
      for (int q = 0; q < n; ++q) {
        if ((*x_direction)[q] == 0.0) continue;
        ++dx[q];
        value += (*x_direction)[q] * partial_A(spec, p, dy, dx);
        --dx[q];
      }
    } else {
      value = partial_A(spec, p, dy, dx);
    }
    out[k] = value / layout->factorial(k);
  }
  return out;
}

Jet jet_lift_A(const MetricSpec& spec, const EvalPoint& p, int order,
               const std::optional<Vec>& x_direction) {
  std::vector<int> none(spec.dimension(), 0);
  return jet_lift_partial(spec, p, order, none, none, x_direction);
}

}  // namespace mroot
