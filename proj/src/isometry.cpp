#include "rossonct/isometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace rossonct {

FMatrix::FMatrix(Field f, std::size_t rows, std::size_t cols)
    : field_(f), rows_(rows), cols_(cols), e_(rows * cols, Scalar::zero(f)) {}

FMatrix FMatrix::identity(Field f, std::size_t n) {
  FMatrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m.e_[i * n + i] = Scalar::one(f);
  return m;
}

FMatrix FMatrix::from_reals(Field f, std::size_t rows, std::size_t cols, std::initializer_list<double> xs) {
  if (xs.size() != rows * cols) throw std::invalid_argument("wrong number of matrix entries");
  FMatrix m(f, rows, cols);
  std::size_t n = 0;
  for (double x : xs) m.e_[n++] = Scalar(f, x);
  return m;
}

void FMatrix::set(std::size_t i, std::size_t j, const Scalar& x) {
  if (x.field() != field_) throw FieldMismatch(field_, x.field());
  if (i >= rows_ || j >= cols_) throw std::out_of_range("matrix index out of range");
  e_[i * cols_ + j] = x;
}

FMatrix FMatrix::adjoint() const {
  FMatrix r(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r.e_[j * rows_ + i] = (*this)(i, j).conj();
  return r;
}

FMatrix FMatrix::times(double s) const {
  FMatrix r = *this;
  for (auto& x : r.e_) x *= s;
  return r;
}

FVector FMatrix::apply(const FVector& x) const {
  if (x.field() != field_) throw FieldMismatch(field_, x.field());
  if (x.size() != cols_) throw std::invalid_argument("matrix-vector size mismatch");
  FVector y(field_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    Scalar s = Scalar::zero(field_);
    for (std::size_t j = 0; j < cols_; ++j) s += (*this)(i, j) * x[j];
    y.set(i, s);
  }
  return y;
}

FVector FMatrix::column(std::size_t j) const {
  FVector c(field_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) c.set(i, (*this)(i, j));
  return c;
}

double FMatrix::max_abs() const noexcept {
  double m = 0.0;
  for (const auto& x : e_) m = std::max(m, x.modulus());
  return m;
}

FMatrix operator*(const FMatrix& a, const FMatrix& b) {
  if (a.field_ != b.field_) throw FieldMismatch(a.field_, b.field_);
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product size mismatch");
  FMatrix r(a.field_, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Scalar& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) r.e_[i * r.cols_ + j] += aik * b(k, j);
    }
  return r;
}

FMatrix operator+(const FMatrix& a, const FMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix sum size mismatch");
  FMatrix r = a;
  for (std::size_t n = 0; n < r.e_.size(); ++n) r.e_[n] += b.e_[n];
  return r;
}

FMatrix operator-(const FMatrix& a, const FMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix difference size mismatch");
  FMatrix r = a;
  for (std::size_t n = 0; n < r.e_.size(); ++n) r.e_[n] -= b.e_[n];
  return r;
}

double max_abs_diff(const FMatrix& a, const FMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix size mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, max_abs_diff(a(i, j), b(i, j)));
  return m;
}

FMatrix form_matrix(const Model& m) {
  const std::size_t n = m.vector_size();
  FMatrix j = FMatrix::identity(m.field, n);
  if (m.basis == Basis::E) {
    j.set(0, 0, Scalar::real(m.field, -1.0));
  } else {
    j.set(0, 0, Scalar::zero(m.field));
    j.set(1, 1, Scalar::zero(m.field));
    j.set(0, 1, Scalar::one(m.field));
    j.set(1, 0, Scalar::one(m.field));
  }
  return j;
}

Isometry::Isometry(const Model& m, FMatrix mat, double log_scale, int)
    : model_(m), mat_(std::move(mat)), log_scale_(log_scale) {}

Isometry::Isometry(const Model& m, FMatrix mat) : model_(m), mat_(std::move(mat)) {
  const std::size_t n = m.vector_size();
  if (mat_.field() != m.field) throw FieldMismatch(m.field, mat_.field());
  if (mat_.rows() != n || mat_.cols() != n) throw std::invalid_argument("isometry matrix has wrong size");
  const FMatrix j = form_matrix(m);
  const FMatrix g = mat_.adjoint() * j * mat_;
  // Least-squares scale against J (J has real entries).
  double num = 0.0, den = 0.0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      num += j(a, b).re() * g(a, b).re();
      den += j(a, b).re() * j(a, b).re();
    }
  const double lambda = num / den;
  const double mm = mat_.max_abs();
  const double tol = 1e-9 * std::max(1.0, mm * mm * static_cast<double>(n));
  if (!(lambda > 0.0) || max_abs_diff(g, j.times(lambda)) > tol) {
    throw NotIsometry("matrix does not preserve the form of " + describe(m));
  }
  log_scale_ = std::log(lambda);
}

Isometry Isometry::trusted(const Model& m, FMatrix mat, double log_scale) {
  const std::size_t n = m.vector_size();
  if (mat.field() != m.field) throw FieldMismatch(m.field, mat.field());
  if (mat.rows() != n || mat.cols() != n) throw std::invalid_argument("isometry matrix has wrong size");
  return Isometry(m, std::move(mat), log_scale, 0);
}

Isometry Isometry::identity(const Model& m) {
  return Isometry(m, FMatrix::identity(m.field, m.vector_size()), 0.0, 0);
}

Isometry Isometry::inverse() const {
  const FMatrix j = form_matrix(model_);
  // M^{-1} = lambda^{-1} J M^dagger J. The factor lambda^{-1} is dropped: the
  // matrix J M^dagger J acts identically and has form scale lambda itself.
  return Isometry(model_, j * mat_.adjoint() * j, log_scale_, 0);
}

Isometry Isometry::renormalized() const {
  const double m = mat_.max_abs();
  if (!(m > 0.0) || !std::isfinite(m)) throw std::domain_error("cannot renormalise a degenerate matrix");
  return Isometry(model_, mat_.times(1.0 / m), log_scale_ - 2.0 * std::log(m), 0);
}

Isometry Isometry::power(long long n) const {
  if (n < 0) return inverse().power(-n);
  Isometry result = identity(model_);
  Isometry sq = *this;
  for (unsigned long long k = static_cast<unsigned long long>(n); k > 0; k >>= 1) {
    if (k & 1ULL) result = (result * sq).renormalized();
    if (k > 1) sq = (sq * sq).renormalized();
  }
  return result;
}

Isometry Isometry::in_basis(Basis b) const {
  if (b == model_.basis) return *this;
  const Model target = model_.with_basis(b);
  const std::size_t n = model_.vector_size();
  auto to = [&](const FVector& x) { return b == Basis::F ? e_to_f(x) : f_to_e(x); };
  auto from = [&](const FVector& x) { return b == Basis::F ? f_to_e(x) : e_to_f(x); };
  FMatrix r(model_.field, n, n);
  for (std::size_t j = 0; j < n; ++j) {
    FVector unit(model_.field, n);
    unit.set(j, Scalar::one(model_.field));
    const FVector col = to(mat_.apply(from(unit)));
    for (std::size_t i = 0; i < n; ++i) r.set(i, j, col[i]);
  }
  return Isometry(target, std::move(r), log_scale_, 0);
}

Isometry operator*(const Isometry& g, const Isometry& h) {
  if (!(g.model_ == h.model_)) throw ModelMismatch();
  return Isometry(g.model_, g.mat_ * h.mat_, g.log_scale_ + h.log_scale_, 0);
}

HPoint apply(const Isometry& g, const HPoint& x) {
  if (!(g.model() == x.model())) throw ModelMismatch();
  FVector y = g.matrix().apply(x.rep());
  const double m = y.max_abs();
  if (!(m > 0.0) || !std::isfinite(m)) throw std::domain_error("image vector is numerically zero");
  // Q(M x) = lambda Q(x); rescale so the representative has unit sup norm.
  const double q = x.quad() * std::exp(g.log_scale() - 2.0 * std::log(m));
  return HPoint::with_quad(g.model(), y.times(1.0 / m), q);
}

BPoint apply(const Isometry& g, const BPoint& x) {
  if (!(g.model() == x.model())) throw ModelMismatch();
  FVector y = g.matrix().apply(x.rep());
  const double m = y.max_abs();
  if (!(m > 0.0) || !std::isfinite(m)) throw std::domain_error("image vector is numerically zero");
  return BPoint(g.model(), y.times(1.0 / m));
}

double norm_g(const Isometry& g, const HPoint& base) {
  if (!(g.model() == base.model())) throw ModelMismatch();
  const Model& m = base.model();
  const FVector gb = g.matrix().apply(base.rep());
  const double b = m.form(base.rep(), gb).modulus();
  const double log_cosh = std::log(b) - std::log(-base.quad()) - 0.5 * g.log_scale();
  if (log_cosh < std::log(2.0)) return distance(base, apply(g, base));
  return log_cosh + std::log1p(std::sqrt(-std::expm1(-2.0 * log_cosh)));
}

std::string_view iso_type_name(IsoType t) noexcept {
  switch (t) {
    case IsoType::elliptic: return "elliptic";
    case IsoType::parabolic: return "parabolic";
    case IsoType::loxodromic: return "loxodromic";
  }
  return "?";
}

ClassTag classify(const Isometry& g, const HPoint& base, int doublings, double tau_lox, double r_ell) {
  if (doublings < 8) throw std::invalid_argument("classification needs at least 8 doublings");
  ClassTag tag;
  Isometry p = g.renormalized();
  for (int k = 0; k <= doublings; ++k) {
    const double dk = norm_g(p, base);
    tag.displacements.push_back(dk);
    tag.orbit_radius = std::max(tag.orbit_radius, dk);
    if (k < doublings) p = (p * p).renormalized();
  }
  tag.translation_estimate = tag.displacements.back() / std::ldexp(1.0, doublings);
  if (tag.translation_estimate > tau_lox) {
    tag.type = IsoType::loxodromic;
    return tag;
  }
  if (tag.translation_estimate >= 0.5 * tau_lox) {
    throw Indeterminate("displacement estimate " + std::to_string(tag.translation_estimate) +
                        " lies in the indeterminate band [tau/2, tau]");
  }
  // Parabolic displacement grows at least like log n, so from n = 2^{K/2} to
  // 2^K it gains about (K/2) log 2. Bounded orbits gain nothing systematic.
  const auto half = static_cast<std::size_t>(doublings / 2);
  const double early = *std::max_element(tag.displacements.begin(), tag.displacements.begin() + half + 1);
  const double growth = tag.displacements.back() - early;
  if (growth >= 0.25 * doublings * std::numbers::ln2) {
    tag.type = IsoType::parabolic;
  } else if (tag.orbit_radius <= r_ell) {
    tag.type = IsoType::elliptic;
  } else {
    throw Indeterminate("orbit is not growing but exceeds the elliptic radius " + std::to_string(r_ell));
  }
  return tag;
}

}  // namespace rossonct
