#pragma once

// The stabiliser J_p of p = [f0] in f-coordinates: Langlands pieces, the
// Heisenberg-type group N_p and the lattices of the worked example in H^3_C.

#include <cstddef>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "rossonct/hyperspace.hpp"
#include "rossonct/isometry.hpp"
#include "rossonct/scalar.hpp"

namespace rossonct {

struct FBasisChange {
  FMatrix e_to_f;
  FMatrix f_to_e;
  static FBasisChange make(Field f, int d);
};

/// n(a, v) with a in Im(F) and v in F^{d-1}.
class NElement {
 public:
  NElement() = default;
  NElement(Scalar a, FVector v);
  static NElement identity(Field f, int d);

  Field field() const noexcept { return a_.field(); }
  int d() const noexcept { return static_cast<int>(v_.size()) + 1; }
  const Scalar& a() const noexcept { return a_; }
  const FVector& v() const noexcept { return v_; }
  NElement inverse() const;
  /// Real coordinates: imaginary parts of a, then every coefficient of v.
  std::vector<double> coords() const;

 private:
  Scalar a_;
  FVector v_;
};

/// n(a1,v1) n(a2,v2) = n(a1 + a2 + Im B_E(v2,v1), v1 + v2).
NElement compose(const NElement& x, const NElement& y);
inline NElement operator*(const NElement& x, const NElement& y) { return compose(x, y); }
/// n(a,v)^k = n(k a, k v).
NElement power(const NElement& x, long long k);
/// Max coordinate difference.
double max_abs_diff(const NElement& x, const NElement& y);

FVector pi_hom(const NElement& n);

/// Model of H^d_F in which N_p acts, f-basis.
Model heisenberg_model(Field f, int d);

/// h_{lambda,a,v,m}: rows [lambda, a - lambda|v|^2/2, -lambda v^dagger m; 0, 1/lambda, 0; 0, v, m].
/// The automorphism sigma is the identity.
struct LanglandsElement {
  double lambda = 1.0;
  Scalar a;
  FVector v;
  FMatrix m;

  LanglandsElement(double lambda, Scalar a, FVector v, FMatrix m);
  static LanglandsElement translation(Field f, int d, double lambda);
  static LanglandsElement rotation(FMatrix m);
};

Isometry to_matrix(const NElement& n);
Isometry to_matrix(const LanglandsElement& h);

/// 0 v 2 log|v| v log|a|.
double heis_norm_model(const Scalar& a, const FVector& v);
/// ||n(a,v)|| = d(o, n(a,v) o) in closed form:
/// cosh = sqrt((4 + |v|^2/2)^2 + |a|^2) / 4.
double heis_norm(const NElement& n);

/// acosh(1 + x) without cancellation for small x.
double acosh1p(double x);

struct ParabolicLattice {
  std::string label;
  Field field = Field::C;
  int d = 3;
  std::vector<NElement> generators;
  /// Generators of the quasi-commutator, read off the lattice structure.
  std::vector<NElement> quasi_commutator;
};

/// theta(x, y, z) = n(x i, (y, z)) in H^3_C.
NElement theta(double x, double y, double z);

ParabolicLattice lattice_H();    // theta(Z x Z x {0})
ParabolicLattice lattice_Hp();   // theta(Lambda x {0}), Lambda = <(1,1), (sqrt2,-sqrt2)>
ParabolicLattice lattice_Hpp();  // theta({0} x Z x Z)
/// Translation lattice {n(0, v)} of H^d_R spanned by the given vectors.
ParabolicLattice real_lattice(std::string label, const std::vector<std::vector<double>>& basis);

class WeightedGroup;
class BallIndex;

/// min over z in Z with dist_Z(e,z) <= z_radius of
/// 0 v 2 log dist_H(z,h) v log dist_Z(e,z).
///
/// Both balls are enumerated once. A Z element whose distance to h is not in
/// the H ball contributes at least 2 log(H radius), so skipping it is exact as
/// long as h itself lies in the H ball.
class RFunctional {
 public:
  RFunctional(const WeightedGroup& H, const WeightedGroup& Z, double h_radius, double z_radius);
  ~RFunctional();
  double operator()(const NElement& h) const;
  double h_radius() const noexcept { return h_radius_; }

 private:
  void build_z(double radius) const;

  const WeightedGroup* H_;
  const WeightedGroup* Z_;
  double h_radius_;
  std::unique_ptr<BallIndex> h_ball_;
  mutable double z_radius_;
  mutable std::vector<std::pair<NElement, double>> z_sorted_;
  mutable std::mutex mu_;
};

}  // namespace rossonct
