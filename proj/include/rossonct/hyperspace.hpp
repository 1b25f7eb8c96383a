#pragma once

// Projective model of H^d_F: points are classes [x] of vectors in F^{d+1}
// with Q(x) < 0 (interior) or Q(x) = 0 (boundary).

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "rossonct/random.hpp"
#include "rossonct/scalar.hpp"

namespace rossonct {

/// Coordinate system for F^{d+1}.
///
/// In the e-basis B_Q(x,y) = -conj(x0) y0 + sum_{i>=1} conj(xi) yi. In the
/// f-basis (f0 = (e0+e1)/2, f1 = e1-e0, fi = ei) it reads
/// conj(x0) y1 + conj(x1) y0 + sum_{i>=2} conj(xi) yi.
enum class Basis { E, F };

struct Model {
  Field field = Field::R;
  int d = 2;
  Basis basis = Basis::E;

  Model() = default;
  Model(Field f, int dim, Basis b = Basis::E);

  std::size_t vector_size() const noexcept { return static_cast<std::size_t>(d) + 1; }
  Scalar form(const FVector& x, const FVector& y) const;
  double quad(const FVector& x) const;
  /// Representative of the base point o = [e0] (= [2 f0 - f1] in the f-basis).
  FVector origin_rep() const;
  Model with_basis(Basis b) const { return Model(field, d, b); }

  friend bool operator==(const Model&, const Model&) = default;
};

std::string describe(const Model& m);

class ModelMismatch : public std::invalid_argument {
 public:
  ModelMismatch() : std::invalid_argument("points belong to different models") {}
};

class NotInterior : public std::domain_error {
 public:
  explicit NotInterior(double q)
      : std::domain_error("vector is not timelike (Q = " + std::to_string(q) + ")") {}
};

/// Coordinates of an e-basis vector in the f-basis, and back.
FVector e_to_f(const FVector& x);
FVector f_to_e(const FVector& x);

/// Interior point. The value Q(rep) is carried alongside the representative:
/// for images of far-away points recomputing Q suffers catastrophic
/// cancellation, while propagating it through isometries is exact.
class HPoint {
 public:
  HPoint(const Model& m, FVector rep);
  /// Trusted constructor: caller guarantees q = Q(rep) < 0 to working precision.
  static HPoint with_quad(const Model& m, FVector rep, double q);
  static HPoint origin(const Model& m);

  const Model& model() const noexcept { return model_; }
  const FVector& rep() const noexcept { return rep_; }
  double quad() const noexcept { return q_; }
  /// Same projective point, representative right-multiplied by a != 0.
  HPoint scaled(const Scalar& a) const;
  /// Representative with Q = -1.
  FVector unit_rep() const;
  /// Re-express in the other coordinate system.
  HPoint in_basis(Basis b) const;

 private:
  HPoint(const Model& m, FVector rep, double q, int);
  Model model_;
  FVector rep_;
  double q_ = -1.0;
};

/// Boundary point: nonzero null vector, |Q(rep)| <= 1e-9 ||rep||^2.
class BPoint {
 public:
  BPoint(const Model& m, FVector rep);
  const Model& model() const noexcept { return model_; }
  const FVector& rep() const noexcept { return rep_; }
  BPoint in_basis(Basis b) const;

 private:
  Model model_;
  FVector rep_;
};

struct Horoball {
  BPoint center;
  double height = 0.0;
};

inline constexpr double kNullTolerance = 1e-9;
inline constexpr double kSeparationTolerance = 1e-9;

double distance(const HPoint& x, const HPoint& y);
/// <x|y>_base.
double gromov_product(const HPoint& x, const HPoint& y, const HPoint& base);
/// min(<x|y>_w, <y|z>_w) - <x|z>_w; Gromov's inequality bounds it by delta.
double gromov_defect(const HPoint& x, const HPoint& y, const HPoint& z, const HPoint& w);

/// Point at distance t from base on the unit-speed ray toward xi.
HPoint ray_point(const HPoint& base, const BPoint& xi, double t);
/// Angular separation of two boundary points as seen from base (0 iff equal).
double boundary_separation(const BPoint& xi, const BPoint& eta, const HPoint& base);
/// <xi|eta>_base by truncating both rays from base at depth T.
double extended_gromov(const BPoint& xi, const BPoint& eta, const HPoint& base, double T = 30.0);

/// beta_z(x, y) = <y|z>_x - <x|z>_y.
double busemann(const HPoint& z, const HPoint& x, const HPoint& y);
double busemann(const BPoint& z, const HPoint& x, const HPoint& y);

/// gamma(t) on the unit-speed geodesic with gamma(0) = x through y.
/// t outside [0, d(x,y)] extends the geodesic.
HPoint geodesic_point(const HPoint& x, const HPoint& y, double t);
/// Point at distance r from base in the direction of `tangent` (projected to
/// the tangent space at base; must not be parallel to base).
HPoint exp_point(const HPoint& base, const FVector& tangent, double r);

struct SegmentProjection {
  double t = 0.0;     // arc length from x of the nearest point
  double dist = 0.0;  // dist(z, [x, y])
};
/// Nearest point to z on [x, y], by golden-section search (the distance to a
/// point is convex along a geodesic).
SegmentProjection project_to_segment(const HPoint& z, const HPoint& x, const HPoint& y);
double distance_to_segment(const HPoint& z, const HPoint& x, const HPoint& y);

bool horoball_contains(const Horoball& h, const HPoint& x, const HPoint& base);

/// Random point at distance uniform in [0, radius] from the model origin.
HPoint random_point(const Model& m, Rng& rng, double radius);

/// Largest observed Gromov defect over sampled quadruples within `radius` of
/// the origin, clamped below at 0. Half the quadruples are uniform; the other
/// half place x, y, z far from w inside a totally real plane, where the
/// defect concentrates (only for radius > 1).
double delta_estimate(const Model& m, std::size_t n_samples, std::uint64_t seed, double radius = 10.0);

}  // namespace rossonct
