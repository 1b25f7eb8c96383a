#include "rossonct/heisenberg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "rossonct/wordmetric.hpp"

namespace rossonct {

FBasisChange FBasisChange::make(Field f, int d) {
  const std::size_t n = static_cast<std::size_t>(d) + 1;
  FBasisChange c{FMatrix::identity(f, n), FMatrix::identity(f, n)};
  // f-coordinates: y0 = x0 + x1, y1 = (x1 - x0)/2.
  c.e_to_f.set(0, 0, Scalar::real(f, 1.0));
  c.e_to_f.set(0, 1, Scalar::real(f, 1.0));
  c.e_to_f.set(1, 0, Scalar::real(f, -0.5));
  c.e_to_f.set(1, 1, Scalar::real(f, 0.5));
  // e-coordinates: x0 = y0/2 - y1, x1 = y0/2 + y1.
  c.f_to_e.set(0, 0, Scalar::real(f, 0.5));
  c.f_to_e.set(0, 1, Scalar::real(f, -1.0));
  c.f_to_e.set(1, 0, Scalar::real(f, 0.5));
  c.f_to_e.set(1, 1, Scalar::real(f, 1.0));
  return c;
}

NElement::NElement(Scalar a, FVector v) : a_(a), v_(std::move(v)) {
  if (a_.field() != v_.field()) throw FieldMismatch(a_.field(), v_.field());
  if (v_.size() < 1) throw std::invalid_argument("N_p needs d >= 2");
  if (std::abs(a_.re()) > 1e-12) throw std::invalid_argument("n(a,v) requires Re(a) = 0");
  a_ = a_.im_part();
}

NElement NElement::identity(Field f, int d) {
  if (d < 2) throw std::invalid_argument("N_p needs d >= 2");
  return NElement(Scalar::zero(f), FVector(f, static_cast<std::size_t>(d - 1)));
}

NElement NElement::inverse() const { return NElement(-a_, -v_); }

std::vector<double> NElement::coords() const {
  const int k = real_dim(field());
  std::vector<double> c;
  c.reserve(static_cast<std::size_t>(k) * (v_.size() + 1));
  for (int q = 1; q < k; ++q) c.push_back(a_[q]);
  for (const auto& x : v_.entries())
    for (int q = 0; q < k; ++q) c.push_back(x[q]);
  return c;
}

NElement compose(const NElement& x, const NElement& y) {
  if (x.field() != y.field()) throw FieldMismatch(x.field(), y.field());
  if (x.v().size() != y.v().size()) throw std::invalid_argument("N_p elements of different dimension");
  return NElement(x.a() + y.a() + euclidean_form(y.v(), x.v()).im_part(), x.v() + y.v());
}

NElement power(const NElement& x, long long k) {
  const double s = static_cast<double>(k);
  return NElement(x.a() * s, x.v().times(s));
}

double max_abs_diff(const NElement& x, const NElement& y) {
  return std::max(max_abs_diff(x.a(), y.a()), max_abs_diff(x.v(), y.v()));
}

FVector pi_hom(const NElement& n) { return n.v(); }

Model heisenberg_model(Field f, int d) { return Model(f, d, Basis::F); }

LanglandsElement::LanglandsElement(double lam, Scalar a_, FVector v_, FMatrix m_)
    : lambda(lam), a(a_), v(std::move(v_)), m(std::move(m_)) {
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  if (std::abs(a.re()) > 1e-12) throw std::invalid_argument("a must be purely imaginary");
  a = a.im_part();
  const std::size_t k = v.size();
  if (a.field() != v.field() || m.field() != v.field()) throw FieldMismatch(a.field(), v.field());
  if (k < 1 || m.rows() != k || m.cols() != k) throw std::invalid_argument("m must be (d-1)x(d-1)");
  if (max_abs_diff(m.adjoint() * m, FMatrix::identity(m.field(), k)) > 1e-9) {
    throw std::invalid_argument("m does not preserve B_E");
  }
}

LanglandsElement LanglandsElement::translation(Field f, int d, double lambda) {
  return LanglandsElement(lambda, Scalar::zero(f), FVector(f, static_cast<std::size_t>(d - 1)),
                          FMatrix::identity(f, static_cast<std::size_t>(d - 1)));
}

LanglandsElement LanglandsElement::rotation(FMatrix m) {
  const Field f = m.field();
  const std::size_t k = m.rows();
  return LanglandsElement(1.0, Scalar::zero(f), FVector(f, k), std::move(m));
}

Isometry to_matrix(const LanglandsElement& h) {
  const Field f = h.a.field();
  const std::size_t k = h.v.size();
  const int d = static_cast<int>(k) + 1;
  FMatrix g(f, k + 2, k + 2);
  g.set(0, 0, Scalar::real(f, h.lambda));
  g.set(0, 1, h.a - Scalar::real(f, 0.5 * h.lambda * h.v.norm2()));
  g.set(1, 1, Scalar::real(f, 1.0 / h.lambda));
  for (std::size_t j = 0; j < k; ++j) {
    Scalar s = Scalar::zero(f);
    for (std::size_t i = 0; i < k; ++i) s += h.v[i].conj() * h.m(i, j);
    g.set(0, j + 2, -s * h.lambda);
    g.set(j + 2, 1, h.v[j]);
    for (std::size_t i = 0; i < k; ++i) g.set(j + 2, i + 2, h.m(j, i));
  }
  return Isometry::trusted(heisenberg_model(f, d), std::move(g), 0.0);
}

Isometry to_matrix(const NElement& n) {
  const Field f = n.field();
  return to_matrix(LanglandsElement(1.0, n.a(), n.v(), FMatrix::identity(f, n.v().size())));
}

double heis_norm_model(const Scalar& a, const FVector& v) {
  double r = 0.0;
  const double nv = v.norm();
  const double na = a.modulus();
  if (nv > 0.0) r = std::max(r, 2.0 * std::log(nv));
  if (na > 0.0) r = std::max(r, std::log(na));
  return r;
}

double acosh1p(double x) { return std::log1p(x + std::sqrt(x * (2.0 + x))); }

double heis_norm(const NElement& n) {
  const double h = 0.5 * n.v().norm2();
  const double a2 = n.a().norm2();
  const double x = 4.0 + h;
  // cosh - 1 = (sqrt(x^2 + |a|^2) - 4) / 4, rationalised.
  const double delta = (h * (8.0 + h) + a2) / (4.0 * (std::hypot(x, std::sqrt(a2)) + 4.0));
  return acosh1p(delta);
}

NElement theta(double x, double y, double z) {
  return NElement(Scalar(Field::C, 0.0, x), FVector(Field::C, {Scalar(Field::C, y), Scalar(Field::C, z)}));
}

ParabolicLattice lattice_H() {
  return {"H", Field::C, 3, {theta(1, 0, 0), theta(0, 1, 0)}, {theta(1, 0, 0)}};
}

ParabolicLattice lattice_Hp() {
  const double r = std::numbers::sqrt2;
  // Lambda meets the axes only at 0, so no nontrivial element has v = 0.
  return {"H'", Field::C, 3, {theta(1, 1, 0), theta(r, -r, 0)}, {}};
}

ParabolicLattice lattice_Hpp() {
  return {"H''", Field::C, 3, {theta(0, 1, 0), theta(0, 0, 1)}, {}};
}

ParabolicLattice real_lattice(std::string label, const std::vector<std::vector<double>>& basis) {
  if (basis.empty()) throw std::invalid_argument("lattice needs at least one generator");
  const std::size_t k = basis.front().size();
  ParabolicLattice L{std::move(label), Field::R, static_cast<int>(k) + 1, {}, {}};
  for (const auto& b : basis) {
    if (b.size() != k) throw std::invalid_argument("lattice basis vectors differ in length");
    FVector v(Field::R, k);
    for (std::size_t i = 0; i < k; ++i) v.set(i, Scalar(Field::R, b[i]));
    L.generators.emplace_back(Scalar::zero(Field::R), v);
  }
  return L;
}

RFunctional::RFunctional(const WeightedGroup& H, const WeightedGroup& Z, double h_radius, double z_radius)
    : H_(&H), Z_(&Z), h_radius_(h_radius), z_radius_(z_radius) {
  if (!(h_radius >= 1.0)) throw std::invalid_argument("H ball radius must be at least 1");
  h_ball_ = std::make_unique<BallIndex>(H, h_radius);
  build_z(z_radius);
}

RFunctional::~RFunctional() = default;

void RFunctional::build_z(double radius) const {
  z_radius_ = radius;
  z_sorted_.clear();
  for (const auto& e : ball(*Z_, radius)) z_sorted_.emplace_back(e.element, e.dist);
  // ball() already returns entries in search order, which is sorted by distance.
}

double RFunctional::operator()(const NElement& h) const {
  std::lock_guard lock(mu_);
  const auto dh = h_ball_->find(h);
  if (!dh) throw std::out_of_range("element lies outside the enumerated H ball");
  for (int attempt = 0; attempt <= 3; ++attempt) {
    double best = std::numeric_limits<double>::infinity();
    bool stopped = false;
    for (const auto& [z, dz] : z_sorted_) {
      const double lz = dz > 0.0 ? std::log(dz) : -std::numeric_limits<double>::infinity();
      if (lz >= best) {
        stopped = true;
        break;
      }
      const auto d = h_ball_->find(compose(z.inverse(), h));
      if (!d) continue;
      const double lh = *d > 0.0 ? 2.0 * std::log(*d) : -std::numeric_limits<double>::infinity();
      best = std::min(best, std::max({0.0, lh, lz}));
    }
    if (stopped || best <= 0.0) return best;
    // every z in the ball was examined: a better one may lie beyond
    if (best <= std::log(z_radius_)) return best;
    if (attempt < 3) build_z(2.0 * z_radius_);
  }
  throw std::runtime_error("r functional: Z search ball too small after 3 widenings");
}

}  // namespace rossonct
