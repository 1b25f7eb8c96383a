#pragma once

// Arithmetic over the real division algebras R, C and the quaternions.
//
// Every scalar carries a field tag and four real coefficients (1, i, j, k).
// Coefficients beyond the field's real dimension are always zero. Mixing
// field tags in a binary operation is a programming error and throws.

#include <array>
#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rossonct {

enum class Field { R, C, Q };

/// Real dimension of the algebra: 1, 2 or 4.
constexpr int real_dim(Field f) noexcept {
  switch (f) {
    case Field::R: return 1;
    case Field::C: return 2;
    case Field::Q: return 4;
  }
  return 1;
}

std::string_view field_name(Field f) noexcept;
Field parse_field(std::string_view name);

class FieldMismatch : public std::invalid_argument {
 public:
  FieldMismatch(Field a, Field b);
};

class Scalar {
 public:
  constexpr Scalar() noexcept = default;
  explicit Scalar(Field f, double re = 0.0, double i = 0.0, double j = 0.0, double k = 0.0);

  static Scalar real(Field f, double x) { return Scalar(f, x); }
  static Scalar zero(Field f) { return Scalar(f); }
  static Scalar one(Field f) { return Scalar(f, 1.0); }

  Field field() const noexcept { return field_; }
  double operator[](std::size_t n) const noexcept { return c_[n]; }
  const std::array<double, 4>& coeffs() const noexcept { return c_; }

  double re() const noexcept { return c_[0]; }
  Scalar conj() const noexcept;
  Scalar im_part() const noexcept;
  /// |x|^2 = x conj(x).
  double norm2() const noexcept;
  double modulus() const noexcept;
  bool is_zero() const noexcept { return norm2() == 0.0; }
  Scalar inverse() const;

  Scalar operator-() const noexcept;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(double s) noexcept;

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, double s) noexcept { return a *= s; }
  friend Scalar operator*(double s, Scalar a) noexcept { return a *= s; }
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend bool operator==(const Scalar&, const Scalar&) = default;

 private:
  Field field_ = Field::R;
  std::array<double, 4> c_{};
};

Scalar mul(const Scalar& x, const Scalar& y);
inline Scalar conj(const Scalar& x) noexcept { return x.conj(); }
inline double re(const Scalar& x) noexcept { return x.re(); }
inline Scalar im_part(const Scalar& x) noexcept { return x.im_part(); }
inline double modulus(const Scalar& x) noexcept { return x.modulus(); }

/// Largest coefficient difference; used for tolerance comparisons.
double max_abs_diff(const Scalar& x, const Scalar& y);

std::ostream& operator<<(std::ostream& os, const Scalar& x);

/// A vector over F, treated as a right F-module: scalars multiply on the right.
class FVector {
 public:
  FVector() = default;
  FVector(Field f, std::size_t n) : field_(f), e_(n, Scalar::zero(f)) {}
  FVector(Field f, std::initializer_list<Scalar> xs);
  FVector(Field f, std::vector<Scalar> xs);
  static FVector from_reals(Field f, std::initializer_list<double> xs);

  Field field() const noexcept { return field_; }
  std::size_t size() const noexcept { return e_.size(); }
  const Scalar& operator[](std::size_t n) const { return e_[n]; }
  void set(std::size_t n, const Scalar& x);
  const std::vector<Scalar>& entries() const noexcept { return e_; }

  FVector& operator+=(const FVector& o);
  FVector& operator-=(const FVector& o);
  friend FVector operator+(FVector a, const FVector& b) { return a += b; }
  friend FVector operator-(FVector a, const FVector& b) { return a -= b; }
  FVector operator-() const;
  /// Right scalar action x -> x a.
  FVector times(const Scalar& a) const;
  FVector times(double a) const;

  /// Euclidean norm sqrt(sum |x_i|^2).
  double norm() const noexcept;
  double norm2() const noexcept;
  double max_abs() const noexcept;
  bool is_zero() const noexcept;

 private:
  Field field_ = Field::R;
  std::vector<Scalar> e_;
};

/// Euclidean sesquilinear form sum conj(x_i) y_i.
Scalar euclidean_form(const FVector& x, const FVector& y);
double max_abs_diff(const FVector& x, const FVector& y);

std::ostream& operator<<(std::ostream& os, const FVector& x);

}  // namespace rossonct
