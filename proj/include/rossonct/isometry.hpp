#pragma once

#include <cstddef>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "rossonct/hyperspace.hpp"
#include "rossonct/scalar.hpp"

namespace rossonct {

/// Dense square-or-rectangular matrix over F, row-major.
class FMatrix {
 public:
  FMatrix() = default;
  FMatrix(Field f, std::size_t rows, std::size_t cols);
  static FMatrix identity(Field f, std::size_t n);
  /// Build from real entries, row by row.
  static FMatrix from_reals(Field f, std::size_t rows, std::size_t cols, std::initializer_list<double> xs);

  Field field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }
  void set(std::size_t i, std::size_t j, const Scalar& x);

  FMatrix adjoint() const;
  FMatrix times(double s) const;
  FVector apply(const FVector& x) const;
  FVector column(std::size_t j) const;
  double max_abs() const noexcept;

  friend FMatrix operator*(const FMatrix& a, const FMatrix& b);
  friend FMatrix operator+(const FMatrix& a, const FMatrix& b);
  friend FMatrix operator-(const FMatrix& a, const FMatrix& b);

 private:
  Field field_ = Field::R;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Scalar> e_;
};

double max_abs_diff(const FMatrix& a, const FMatrix& b);

/// Gram matrix of B_Q in the model's coordinates.
FMatrix form_matrix(const Model& m);

class NotIsometry : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Matrix M with M^dagger J M = lambda J, lambda > 0. lambda is kept as its
/// logarithm so that long products and renormalised powers stay finite.
class Isometry {
 public:
  /// Verifies form preservation up to a positive scale.
  Isometry(const Model& m, FMatrix mat);
  static Isometry trusted(const Model& m, FMatrix mat, double log_scale);
  static Isometry identity(const Model& m);

  const Model& model() const noexcept { return model_; }
  const FMatrix& matrix() const noexcept { return mat_; }
  double log_scale() const noexcept { return log_scale_; }

  Isometry inverse() const;
  /// Same isometry with the matrix divided by its largest entry modulus.
  Isometry renormalized() const;
  /// g^n by repeated squaring with renormalisation; negative n inverts.
  Isometry power(long long n) const;
  Isometry in_basis(Basis b) const;

  friend Isometry operator*(const Isometry& g, const Isometry& h);

 private:
  Isometry(const Model& m, FMatrix mat, double log_scale, int);
  Model model_;
  FMatrix mat_;
  double log_scale_ = 0.0;
};

HPoint apply(const Isometry& g, const HPoint& x);
BPoint apply(const Isometry& g, const BPoint& x);

/// ||g|| = d(base, g base), evaluated through log cosh so that the large
/// entries of g never get squared.
double norm_g(const Isometry& g, const HPoint& base);

enum class IsoType { elliptic, parabolic, loxodromic };
std::string_view iso_type_name(IsoType t) noexcept;

struct ClassTag {
  IsoType type = IsoType::elliptic;
  /// ||g^{2^K}|| / 2^K.
  double translation_estimate = 0.0;
  /// max_k ||g^{2^k}||.
  double orbit_radius = 0.0;
  /// ||g^{2^k}|| for k = 0..K.
  std::vector<double> displacements;
};

class Indeterminate : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kClassifyDoublings = 32;
inline constexpr double kTauLox = 1e-3;
inline constexpr double kEllipticRadius = 20.0;

/// Orbit-growth classification from the displacements of g^{2^k},
/// k = 0..doublings.
ClassTag classify(const Isometry& g, const HPoint& base, int doublings = kClassifyDoublings,
                  double tau_lox = kTauLox, double r_ell = kEllipticRadius);

}  // namespace rossonct
