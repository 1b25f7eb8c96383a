#include "rossonct/hyperspace.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace rossonct {

namespace {

void check_vector(const Model& m, const FVector& x) {
  if (x.field() != m.field) throw FieldMismatch(m.field, x.field());
  if (x.size() != m.vector_size()) {
    throw std::invalid_argument("vector has length " + std::to_string(x.size()) + ", model needs " +
                                std::to_string(m.vector_size()));
  }
}

void check_same(const Model& a, const Model& b) {
  if (!(a == b)) throw ModelMismatch();
}

// Unit scalar u with B(a, b u) real and negative.
Scalar aligning_phase(const Scalar& bab) {
  const double n = bab.modulus();
  if (n == 0.0) return Scalar::one(bab.field());
  return -bab.conj() * (1.0 / n);
}

// The geodesic from x to y, with Q(x) = Q(y) = -1 and B(x, y) = -cosh(length).
struct Frame {
  FVector x;
  FVector y;
  double length = 0.0;
};

Frame frame(const HPoint& x, const HPoint& y) {
  const Model& m = x.model();
  const double len = distance(x, y);
  if (len <= 1e-8) throw std::domain_error("geodesic through coincident points");
  FVector xh = x.unit_rep();
  FVector yh = y.unit_rep();
  yh = yh.times(aligning_phase(m.form(xh, yh)));
  return {std::move(xh), std::move(yh), len};
}

// gamma(t) = (sinh(L - t) x + sinh(t) y) / sinh(L). Both coefficients are
// nonnegative on [0, L], so nothing cancels; x cosh t + u sinh t loses about
// e^(2t) ulps of Q when x is far from the coordinate origin.
HPoint on_segment(const Model& m, const Frame& f, double t) {
  const double s = std::sinh(f.length);
  return HPoint::with_quad(m, f.x.times(std::sinh(f.length - t) / s) + f.y.times(std::sinh(t) / s), -1.0);
}

HPoint along(const Model& m, const FVector& x, const FVector& u, double t) {
  return HPoint::with_quad(m, x.times(std::cosh(t)) + u.times(std::sinh(t)), -1.0);
}

// Unit tangent at base pointing toward the boundary point xi.
FVector boundary_direction(const FVector& bh, const BPoint& xi, const Model& m) {
  const Scalar b = m.form(bh, xi.rep());
  const double n = b.modulus();
  if (n == 0.0) throw std::domain_error("boundary point orthogonal to base");
  FVector v = xi.rep().times(aligning_phase(b)).times(1.0 / n);
  return v - bh;
}

}  // namespace

Model::Model(Field f, int dim, Basis b) : field(f), d(dim), basis(b) {
  if (dim < 1) throw std::invalid_argument("dimension must be positive");
}

Scalar Model::form(const FVector& x, const FVector& y) const {
  check_vector(*this, x);
  check_vector(*this, y);
  Scalar s = Scalar::zero(field);
  if (basis == Basis::E) {
    s -= x[0].conj() * y[0];
    s += x[1].conj() * y[1];
  } else {
    s += x[0].conj() * y[1];
    s += x[1].conj() * y[0];
  }
  for (std::size_t n = 2; n < x.size(); ++n) s += x[n].conj() * y[n];
  return s;
}

double Model::quad(const FVector& x) const { return form(x, x).re(); }

FVector Model::origin_rep() const {
  FVector o(field, vector_size());
  if (basis == Basis::E) {
    o.set(0, Scalar::one(field));
  } else {
    o.set(0, Scalar::real(field, 2.0));
    o.set(1, Scalar::real(field, -1.0));
  }
  return o;
}

std::string describe(const Model& m) {
  return "H^" + std::to_string(m.d) + "_" + std::string(field_name(m.field)) +
         (m.basis == Basis::E ? " (e-basis)" : " (f-basis)");
}

FVector e_to_f(const FVector& x) {
  if (x.size() < 2) throw std::invalid_argument("basis change needs at least two coordinates");
  FVector y = x;
  y.set(0, x[0] + x[1]);
  y.set(1, (x[1] - x[0]) * 0.5);
  return y;
}

FVector f_to_e(const FVector& x) {
  if (x.size() < 2) throw std::invalid_argument("basis change needs at least two coordinates");
  FVector y = x;
  y.set(0, x[0] * 0.5 - x[1]);
  y.set(1, x[0] * 0.5 + x[1]);
  return y;
}

HPoint::HPoint(const Model& m, FVector rep, double q, int) : model_(m), rep_(std::move(rep)), q_(q) {}

HPoint::HPoint(const Model& m, FVector rep) : model_(m), rep_(std::move(rep)) {
  check_vector(model_, rep_);
  q_ = model_.quad(rep_);
  if (!(q_ < 0.0)) throw NotInterior(q_);
}

HPoint HPoint::with_quad(const Model& m, FVector rep, double q) {
  check_vector(m, rep);
  if (!(q < 0.0)) throw NotInterior(q);
  return HPoint(m, std::move(rep), q, 0);
}

HPoint HPoint::origin(const Model& m) { return HPoint(m, m.origin_rep()); }

HPoint HPoint::scaled(const Scalar& a) const {
  if (a.is_zero()) throw std::domain_error("zero rescaling of a representative");
  return HPoint(model_, rep_.times(a), q_ * a.norm2(), 0);
}

FVector HPoint::unit_rep() const { return rep_.times(1.0 / std::sqrt(-q_)); }

HPoint HPoint::in_basis(Basis b) const {
  if (b == model_.basis) return *this;
  return HPoint(model_.with_basis(b), b == Basis::F ? e_to_f(rep_) : f_to_e(rep_), q_, 0);
}

BPoint::BPoint(const Model& m, FVector rep) : model_(m), rep_(std::move(rep)) {
  check_vector(model_, rep_);
  const double n2 = rep_.norm2();
  if (n2 == 0.0) throw std::domain_error("boundary representative is zero");
  const double q = model_.quad(rep_);
  if (std::abs(q) > kNullTolerance * n2) {
    throw std::domain_error("vector is not null (Q = " + std::to_string(q) + ")");
  }
}

BPoint BPoint::in_basis(Basis b) const {
  if (b == model_.basis) return *this;
  return BPoint(model_.with_basis(b), b == Basis::F ? e_to_f(rep_) : f_to_e(rep_));
}

namespace {

bool rep_less(const HPoint& x, const HPoint& y) {
  for (std::size_t n = 0; n < x.rep().size(); ++n) {
    const auto& a = x.rep()[n].coeffs();
    const auto& b = y.rep()[n].coeffs();
    if (a != b) return a < b;
  }
  return x.quad() < y.quad();
}

}  // namespace

double distance(const HPoint& x_in, const HPoint& y_in) {
  check_same(x_in.model(), y_in.model());
  // Fixed argument order makes the result exactly symmetric.
  const bool swap = rep_less(y_in, x_in);
  const HPoint& x = swap ? y_in : x_in;
  const HPoint& y = swap ? x_in : y_in;
  const Model& m = x.model();
  const double b = m.form(x.rep(), y.rep()).modulus();
  const double c = b / (std::sqrt(-x.quad()) * std::sqrt(-y.quad()));
  if (c >= 2.0) return std::acosh(c);
  // Near the diagonal acosh loses half the digits; sinh d = sqrt(Q(w)) for
  // w = y' - x c with aligned unit representatives does not.
  const FVector xh = x.unit_rep();
  FVector yh = y.unit_rep();
  const Scalar bh = m.form(xh, yh);
  yh = yh.times(aligning_phase(bh));
  const FVector w = yh - xh.times(bh.modulus());
  const double s2 = m.quad(w);
  return s2 > 0.0 ? std::asinh(std::sqrt(s2)) : 0.0;
}

double gromov_product(const HPoint& x, const HPoint& y, const HPoint& base) {
  return 0.5 * (distance(base, x) + distance(base, y) - distance(x, y));
}

double gromov_defect(const HPoint& x, const HPoint& y, const HPoint& z, const HPoint& w) {
  return std::min(gromov_product(x, y, w), gromov_product(y, z, w)) - gromov_product(x, z, w);
}

HPoint ray_point(const HPoint& base, const BPoint& xi, double t) {
  check_same(base.model(), xi.model());
  const FVector bh = base.unit_rep();
  return along(base.model(), bh, boundary_direction(bh, xi, base.model()), t);
}

double boundary_separation(const BPoint& xi, const BPoint& eta, const HPoint& base) {
  check_same(xi.model(), eta.model());
  check_same(base.model(), xi.model());
  const Model& m = base.model();
  const FVector bh = base.unit_rep();
  const double q = m.quad(boundary_direction(bh, xi, m) - boundary_direction(bh, eta, m));
  return q > 0.0 ? std::sqrt(q) : 0.0;
}

double extended_gromov(const BPoint& xi, const BPoint& eta, const HPoint& base, double T) {
  if (!(T > 0.0)) throw std::invalid_argument("truncation depth must be positive");
  if (boundary_separation(xi, eta, base) <= kSeparationTolerance) {
    throw std::domain_error("extended Gromov product of coincident boundary points");
  }
  return gromov_product(ray_point(base, xi, T), ray_point(base, eta, T), base);
}

double busemann(const HPoint& z, const HPoint& x, const HPoint& y) {
  return distance(z, x) - distance(z, y);
}

double busemann(const BPoint& z, const HPoint& x, const HPoint& y) {
  check_same(z.model(), x.model());
  check_same(x.model(), y.model());
  const Model& m = z.model();
  // Limit of d(w,x) - d(w,y) as w -> z: cosh d(w,x) grows like |B(x^,z)| up
  // to a factor common to x and y.
  const double bx = std::log(m.form(x.rep(), z.rep()).modulus()) - 0.5 * std::log(-x.quad());
  const double by = std::log(m.form(y.rep(), z.rep()).modulus()) - 0.5 * std::log(-y.quad());
  return bx - by;
}

HPoint geodesic_point(const HPoint& x, const HPoint& y, double t) {
  check_same(x.model(), y.model());
  const Frame f = frame(x, y);
  return on_segment(x.model(), f, t);
}

HPoint exp_point(const HPoint& base, const FVector& tangent, double r) {
  const Model& m = base.model();
  check_vector(m, tangent);
  const FVector bh = base.unit_rep();
  const FVector u = tangent + bh.times(m.form(bh, tangent));
  const double n = m.quad(u);
  if (!(n > 1e-24)) throw std::domain_error("tangent direction is degenerate");
  return along(m, bh, u.times(1.0 / std::sqrt(n)), r);
}

SegmentProjection project_to_segment(const HPoint& z, const HPoint& x, const HPoint& y) {
  check_same(x.model(), y.model());
  check_same(z.model(), x.model());
  if (distance(x, y) <= 1e-8) return {0.0, distance(z, x)};
  const Frame f = frame(x, y);
  const Model& m = x.model();
  auto g = [&](double t) { return distance(z, on_segment(m, f, t)); };
  constexpr double phi = 0.6180339887498949;
  double a = 0.0, b = f.length;
  double c = b - phi * (b - a), d = a + phi * (b - a);
  double gc = g(c), gd = g(d);
  for (int it = 0; it < 200 && b - a > 1e-12 * std::max(1.0, f.length); ++it) {
    if (gc < gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - phi * (b - a);
      gc = g(c);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + phi * (b - a);
      gd = g(d);
    }
  }
  SegmentProjection best = gc < gd ? SegmentProjection{c, gc} : SegmentProjection{d, gd};
  for (double t : {0.0, f.length}) {
    const double v = g(t);
    if (v < best.dist) best = {t, v};
  }
  return best;
}

double distance_to_segment(const HPoint& z, const HPoint& x, const HPoint& y) {
  return project_to_segment(z, x, y).dist;
}

bool horoball_contains(const Horoball& h, const HPoint& x, const HPoint& base) {
  return busemann(h.center, base, x) > h.height;
}

HPoint random_point(const Model& m, Rng& rng, double radius) {
  const HPoint o = HPoint::origin(m);
  const double r = rng.uniform(0.0, radius);
  for (;;) {
    const FVector v = random_fvector(m.field, m.vector_size(), rng);
    try {
      return exp_point(o, v, r);
    } catch (const std::domain_error&) {
      // direction parallel to o; draw again
    }
  }
}

double delta_estimate(const Model& m, std::size_t n_samples, std::uint64_t seed, double radius) {
  if (n_samples < 1) throw std::invalid_argument("n_samples must be at least 1");
  if (!(radius >= 0.0)) throw std::invalid_argument("sampling radius must be nonnegative");
  Rng rng(seed);
  double best = 0.0;
  const double far_lo = 0.5 * (radius - 1.0);
  const double far_hi = radius - 1.0;
  for (std::size_t i = 0; i < n_samples; ++i) {
    // Structured samples need room for the unit ball around w.
    if (i % 2 == 0 || radius <= 1.0) {
      const HPoint x = random_point(m, rng, radius);
      const HPoint y = random_point(m, rng, radius);
      const HPoint z = random_point(m, rng, radius);
      const HPoint w = random_point(m, rng, radius);
      best = std::max(best, gromov_defect(x, y, z, w));
      continue;
    }
    const HPoint w = random_point(m, rng, 1.0);
    const FVector wh = w.unit_rep();
    auto tangent = [&] {
      for (;;) {
        FVector v = random_fvector(m.field, m.vector_size(), rng);
        v += wh.times(m.form(wh, v));
        const double n = m.quad(v);
        if (n > 1e-6) return v.times(1.0 / std::sqrt(n));
      }
    };
    const FVector a = tangent();
    FVector b;
    for (;;) {
      b = tangent();
      b -= a.times(m.form(a, b));
      const double n = m.quad(b);
      if (n > 1e-6) {
        b = b.times(1.0 / std::sqrt(n));
        break;
      }
    }
    // span_R{w, a, b} is a totally real plane; place x, y, z on rays with y
    // angularly between x and z.
    const double phi = rng.uniform(0.0, 2.0 * std::numbers::pi);
    const double spread = rng.uniform(0.0, std::numbers::pi);
    const double mid = phi + spread * rng.uniform();
    auto at = [&](double angle) {
      const FVector dir = a.times(std::cos(angle)) + b.times(std::sin(angle));
      return along(m, wh, dir, rng.uniform(far_lo, far_hi));
    };
    const HPoint x = at(phi);
    const HPoint y = at(mid);
    const HPoint z = at(phi + spread);
    best = std::max(best, gromov_defect(x, y, z, w));
  }
  return best;
}

}  // namespace rossonct
