#include "rossonct/scalar.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace rossonct {

std::string_view field_name(Field f) noexcept {
  switch (f) {
    case Field::R: return "R";
    case Field::C: return "C";
    case Field::Q: return "Q";
  }
  return "?";
}

Field parse_field(std::string_view name) {
  if (name == "R") return Field::R;
  if (name == "C") return Field::C;
  if (name == "Q") return Field::Q;
  throw std::invalid_argument("unknown field '" + std::string(name) + "' (expected R, C or Q)");
}

FieldMismatch::FieldMismatch(Field a, Field b)
    : std::invalid_argument("field mismatch: " + std::string(field_name(a)) + " vs " +
                            std::string(field_name(b))) {}

Scalar::Scalar(Field f, double re, double i, double j, double k) : field_(f), c_{re, i, j, k} {
  const int n = real_dim(f);
  for (int q = n; q < 4; ++q) {
    if (c_[q] != 0.0) {
      throw std::invalid_argument("scalar has imaginary components outside field " +
                                  std::string(field_name(f)));
    }
  }
}

Scalar Scalar::conj() const noexcept {
  Scalar r = *this;
  r.c_[1] = -r.c_[1];
  r.c_[2] = -r.c_[2];
  r.c_[3] = -r.c_[3];
  for (auto& x : r.c_) x += 0.0;  // normalise -0.0
  return r;
}

Scalar Scalar::im_part() const noexcept {
  Scalar r = *this;
  r.c_[0] = 0.0;
  return r;
}

double Scalar::norm2() const noexcept {
  return c_[0] * c_[0] + c_[1] * c_[1] + c_[2] * c_[2] + c_[3] * c_[3];
}

double Scalar::modulus() const noexcept { return std::hypot(std::hypot(c_[0], c_[1]), std::hypot(c_[2], c_[3])); }

Scalar Scalar::inverse() const {
  const double n = norm2();
  if (n == 0.0) throw std::domain_error("inverse of zero scalar");
  Scalar r = conj();
  r *= 1.0 / n;
  return r;
}

Scalar Scalar::operator-() const noexcept {
  Scalar r = *this;
  for (auto& x : r.c_) x = -x + 0.0;
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (field_ != o.field_) throw FieldMismatch(field_, o.field_);
  for (int q = 0; q < 4; ++q) c_[q] += o.c_[q];
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  if (field_ != o.field_) throw FieldMismatch(field_, o.field_);
  for (int q = 0; q < 4; ++q) c_[q] -= o.c_[q];
  return *this;
}

Scalar& Scalar::operator*=(double s) noexcept {
  for (auto& x : c_) x *= s;
  return *this;
}

Scalar operator*(const Scalar& x, const Scalar& y) {
  if (x.field_ != y.field_) throw FieldMismatch(x.field_, y.field_);
  const auto& a = x.c_;
  const auto& b = y.c_;
  Scalar r;
  r.field_ = x.field_;
  // Hamilton product; for R and C the vanishing components reduce it to the
  // usual real or complex product.
  r.c_[0] = a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3];
  r.c_[1] = a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2];
  r.c_[2] = a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1];
  r.c_[3] = a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0];
  return r;
}

Scalar mul(const Scalar& x, const Scalar& y) { return x * y; }

double max_abs_diff(const Scalar& x, const Scalar& y) {
  if (x.field() != y.field()) throw FieldMismatch(x.field(), y.field());
  double m = 0.0;
  for (int q = 0; q < 4; ++q) m = std::max(m, std::abs(x[q] - y[q]));
  return m;
}

std::ostream& operator<<(std::ostream& os, const Scalar& x) {
  static constexpr const char* units[] = {"", "i", "j", "k"};
  os << x[0];
  for (int q = 1; q < real_dim(x.field()); ++q) {
    os << (x[q] < 0 ? " - " : " + ") << std::abs(x[q]) << units[q];
  }
  return os;
}

FVector::FVector(Field f, std::initializer_list<Scalar> xs) : FVector(f, std::vector<Scalar>(xs)) {}

FVector::FVector(Field f, std::vector<Scalar> xs) : field_(f), e_(std::move(xs)) {
  for (const auto& x : e_) {
    if (x.field() != f) throw FieldMismatch(f, x.field());
  }
}

FVector FVector::from_reals(Field f, std::initializer_list<double> xs) {
  FVector v(f, xs.size());
  std::size_t n = 0;
  for (double x : xs) v.e_[n++] = Scalar(f, x);
  return v;
}

void FVector::set(std::size_t n, const Scalar& x) {
  if (x.field() != field_) throw FieldMismatch(field_, x.field());
  e_.at(n) = x;
}

FVector& FVector::operator+=(const FVector& o) {
  if (o.size() != size()) throw std::invalid_argument("vector length mismatch");
  for (std::size_t n = 0; n < e_.size(); ++n) e_[n] += o.e_[n];
  return *this;
}

FVector& FVector::operator-=(const FVector& o) {
  if (o.size() != size()) throw std::invalid_argument("vector length mismatch");
  for (std::size_t n = 0; n < e_.size(); ++n) e_[n] -= o.e_[n];
  return *this;
}

FVector FVector::operator-() const {
  FVector r = *this;
  for (auto& x : r.e_) x = -x;
  return r;
}

FVector FVector::times(const Scalar& a) const {
  FVector r = *this;
  for (auto& x : r.e_) x = x * a;
  return r;
}

FVector FVector::times(double a) const {
  FVector r = *this;
  for (auto& x : r.e_) x *= a;
  return r;
}

double FVector::norm2() const noexcept {
  double s = 0.0;
  for (const auto& x : e_) s += x.norm2();
  return s;
}

double FVector::norm() const noexcept { return std::sqrt(norm2()); }

double FVector::max_abs() const noexcept {
  double m = 0.0;
  for (const auto& x : e_) m = std::max(m, x.modulus());
  return m;
}

bool FVector::is_zero() const noexcept {
  return std::all_of(e_.begin(), e_.end(), [](const Scalar& x) { return x.is_zero(); });
}

Scalar euclidean_form(const FVector& x, const FVector& y) {
  if (x.field() != y.field()) throw FieldMismatch(x.field(), y.field());
  if (x.size() != y.size()) throw std::invalid_argument("vector length mismatch");
  Scalar s = Scalar::zero(x.field());
  for (std::size_t n = 0; n < x.size(); ++n) s += x[n].conj() * y[n];
  return s;
}

double max_abs_diff(const FVector& x, const FVector& y) {
  if (x.size() != y.size()) throw std::invalid_argument("vector length mismatch");
  double m = 0.0;
  for (std::size_t n = 0; n < x.size(); ++n) m = std::max(m, max_abs_diff(x[n], y[n]));
  return m;
}

std::ostream& operator<<(std::ostream& os, const FVector& x) {
  os << '(';
  for (std::size_t n = 0; n < x.size(); ++n) {
    if (n) os << ", ";
    os << x[n];
  }
  return os << ')';
}

}  // namespace rossonct
