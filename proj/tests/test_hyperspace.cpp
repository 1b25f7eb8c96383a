#include "doctest.h"

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "rossonct/experiments.hpp"
#include "rossonct/heisenberg.hpp"
#include "rossonct/hyperspace.hpp"
#include "rossonct/random.hpp"

using namespace rossonct;

namespace {

const std::vector<Model>& spaces() {
  static const std::vector<Model> s{Model(Field::R, 2), Model(Field::C, 2), Model(Field::Q, 2), Model(Field::C, 3)};
  return s;
}

// Dense discretisation of [x, y]: min over points every `step` of d(z, .).
double dense_segment_distance(const HPoint& z, const HPoint& x, const HPoint& y, double step) {
  const double L = distance(x, y);
  const int n = std::max(1, static_cast<int>(std::ceil(L / step)));
  double best = std::min(distance(z, x), distance(z, y));
  for (int k = 1; k < n; ++k) best = std::min(best, distance(z, geodesic_point(x, y, L * k / n)));
  return best;
}

}  // namespace

TEST_SUITE("hyperspace") {

TEST_CASE("distance basics") {
  const Model r(Field::R, 2);
  const HPoint o = HPoint::origin(r);
  CHECK(distance(o, o) == 0.0);
  const HPoint x(r, FVector::from_reals(Field::R, {std::cosh(1.0), std::sinh(1.0), 0.0}));
  CHECK(distance(o, x) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("distance against the projective formula with complex matrices") {
  // n(i, (1, 0)) in f-coordinates of H^3_C, built by hand.
  using cd = std::complex<double>;
  const cd I(0, 1);
  const cd a = I, v0 = 1.0, v1 = 0.0;
  const double v2 = std::norm(v0) + std::norm(v1);
  const cd M[4][4] = {{1, a - v2 / 2, -std::conj(v0), -std::conj(v1)}, {0, 1, 0, 0}, {0, v0, 1, 0}, {0, v1, 0, 1}};
  const cd o[4] = {2, -1, 0, 0};
  cd go[4] = {};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) go[i] += M[i][j] * o[j];
  auto B = [](const cd* x, const cd* y) { return std::conj(x[0]) * y[1] + std::conj(x[1]) * y[0] + std::conj(x[2]) * y[2] + std::conj(x[3]) * y[3]; };
  const double oracle = std::acosh(std::abs(B(o, go)) / std::sqrt(std::abs(B(o, o).real()) * std::abs(B(go, go).real())));
  CHECK(oracle == doctest::Approx(0.54538067290371706).epsilon(1e-14));

  const Model m = heisenberg_model(Field::C, 3);
  const HPoint po = HPoint::origin(m);
  FVector v(Field::C, 2);
  v.set(0, Scalar::one(Field::C));
  const NElement n(Scalar(Field::C, 0, 1), v);
  const HPoint image = apply(to_matrix(n), po);
  CHECK(distance(po, image) == doctest::Approx(oracle).epsilon(1e-13));
  // The same point in e-coordinates.
  CHECK(distance(po.in_basis(Basis::E), image.in_basis(Basis::E)) == doctest::Approx(oracle).epsilon(1e-12));
}

TEST_CASE("distance errors") {
  const HPoint a = HPoint::origin(Model(Field::R, 2));
  const HPoint b = HPoint::origin(Model(Field::C, 2));
  CHECK_THROWS_AS(distance(a, b), ModelMismatch);
  CHECK_THROWS_AS(HPoint(Model(Field::R, 2), FVector::from_reals(Field::R, {1, 1, 0})), NotInterior);
  CHECK_THROWS_AS(HPoint(Model(Field::R, 2), FVector::from_reals(Field::R, {0, 1, 0})), NotInterior);
}

TEST_CASE("e and f coordinates") {
  Rng rng(3);
  for (int n = 0; n < 100; ++n) {
    const FVector x = random_fvector(Field::Q, 4, rng);
    CHECK(max_abs_diff(f_to_e(e_to_f(x)), x) <= 1e-12);
  }
  const Model f = heisenberg_model(Field::C, 3);
  CHECK(distance(HPoint::origin(f).in_basis(Basis::E), HPoint::origin(f.with_basis(Basis::E))) == 0.0);
  // f0 = (e0 + e1) / 2 and f1 = e1 - e0.
  CHECK(max_abs_diff(f_to_e(FVector::from_reals(Field::R, {1, 0, 0})), FVector::from_reals(Field::R, {0.5, 0.5, 0})) == 0.0);
  CHECK(max_abs_diff(f_to_e(FVector::from_reals(Field::R, {0, 1, 0})), FVector::from_reals(Field::R, {-1, 1, 0})) == 0.0);
}

TEST_CASE("metric axioms on random triples") {
  std::uint64_t seed = 40;
  for (const Model& m : spaces()) {
    Rng rng(seed++);
    for (int n = 0; n < 2000; ++n) {
      const HPoint x = random_point(m, rng, 5), y = random_point(m, rng, 5), z = random_point(m, rng, 5);
      CHECK(distance(x, y) == distance(y, x));
      CHECK(distance(x, z) <= distance(x, y) + distance(y, z) + 1e-9);
      CHECK(distance(x, y) >= 0.0);
    }
  }
}

TEST_CASE("projective invariance") {
  std::uint64_t seed = 50;
  for (const Model& m : spaces()) {
    Rng rng(seed++);
    double worst = 0;
    for (int n = 0; n < 2000; ++n) {
      const HPoint x = random_point(m, rng, 5), y = random_point(m, rng, 5);
      const HPoint xs = x.scaled(random_nonzero_scalar(m.field, rng));
      const HPoint ys(m, y.rep().times(random_nonzero_scalar(m.field, rng)));
      worst = std::max(worst, std::abs(distance(xs, ys) - distance(x, y)));
    }
    CHECK(worst <= 1e-10);
  }
}

TEST_CASE("gromov products") {
  const Model q(Field::Q, 2);
  Rng rng(2024);
  const HPoint x = random_point(q, rng, 3), y = random_point(q, rng, 3), z = random_point(q, rng, 3);
  CHECK(gromov_product(x, x, z) == doctest::Approx(distance(z, x)));
  CHECK(gromov_product(x, y, x) == doctest::Approx(0.0));
  CHECK(gromov_product(x, y, z) == doctest::Approx(gromov_product(y, x, z)));
  const double formula = 0.5 * (distance(z, x) + distance(z, y) - distance(x, y));
  CHECK(gromov_product(x, y, z) == doctest::Approx(formula).epsilon(1e-15));
  CHECK(gromov_product(x, y, z) == doctest::Approx(1.3321940769421572).epsilon(1e-12));
  CHECK(gromov_defect(x, x, x, x) == 0.0);
}

TEST_CASE("extended gromov product") {
  const Model r(Field::R, 2);
  const HPoint o = HPoint::origin(r);
  const BPoint xi(r, FVector::from_reals(Field::R, {1, 1, 0}));
  const BPoint eta(r, FVector::from_reals(Field::R, {1, -1, 0}));
  CHECK(std::abs(extended_gromov(xi, eta, o, 30)) <= 1e-6);
  const BPoint close(r, FVector::from_reals(Field::R, {1, std::cos(1e-12), std::sin(1e-12)}));
  CHECK_THROWS(extended_gromov(xi, close, o, 30));

  // p = [f0] and eta = [f1] in H^3_C, then an orthogonal direction: the
  // product is -log sin(theta / 2) for visual angle theta.
  const Model c(Field::C, 3);
  const HPoint oc = HPoint::origin(c);
  const BPoint p(c, FVector::from_reals(Field::C, {1, 1, 0, 0}));
  const BPoint f1(c, FVector::from_reals(Field::C, {-1, 1, 0, 0}));
  CHECK(std::abs(extended_gromov(p, f1, oc, 20) - extended_gromov(p, f1, oc, 30)) < 1e-6);
  const BPoint e2(c, FVector::from_reals(Field::C, {1, 0, 1, 0}));
  const double t20 = extended_gromov(p, e2, oc, 20), t30 = extended_gromov(p, e2, oc, 30);
  CHECK(std::abs(t20 - t30) < 1e-6);
  CHECK(t30 == doctest::Approx(-std::log(std::sin(std::numbers::pi / 4))).epsilon(1e-9));
}

TEST_CASE("boundary points must be null") {
  CHECK_THROWS(BPoint(Model(Field::R, 2), FVector::from_reals(Field::R, {1, 0.5, 0})));
  CHECK_THROWS(BPoint(Model(Field::R, 2), FVector::from_reals(Field::R, {0, 0, 0})));
}

TEST_CASE("busemann functions") {
  Rng rng(8);
  const Model m(Field::C, 2);
  for (int n = 0; n < 200; ++n) {
    const HPoint z = random_point(m, rng, 4), x = random_point(m, rng, 4), y = random_point(m, rng, 4),
                 w = random_point(m, rng, 4);
    CHECK(busemann(z, x, x) == 0.0);
    CHECK(std::abs(busemann(z, x, y) - (distance(z, x) - distance(z, y))) <= 1e-9);
    CHECK(std::abs(busemann(z, x, y) + busemann(z, y, w) - busemann(z, x, w)) <= 1e-9);
    CHECK(std::abs(busemann(z, x, y)) <= distance(x, y) + 1e-9);
  }
  // Boundary centre: the limit of interior Busemann functions along a ray.
  const BPoint xi(m, FVector::from_reals(Field::C, {1, 0.6, 0.8}));
  const HPoint x = random_point(m, rng, 2), y = random_point(m, rng, 2);
  const HPoint far = ray_point(HPoint::origin(m), xi, 18);
  CHECK(std::abs(busemann(xi, x, y) - busemann(far, x, y)) <= 1e-6);
  for (int n = 0; n < 100; ++n) {
    const HPoint a = random_point(m, rng, 4), b = random_point(m, rng, 4), c = random_point(m, rng, 4);
    CHECK(std::abs(busemann(xi, a, b) + busemann(xi, b, c) - busemann(xi, a, c)) <= 1e-9);
    CHECK(std::abs(busemann(xi, a, b)) <= distance(a, b) + 1e-9);
  }
}

TEST_CASE("unipotent elements preserve horospheres at p") {
  const Model m = heisenberg_model(Field::C, 3);
  const HPoint o = HPoint::origin(m);
  const BPoint p(m, FVector::from_reals(Field::C, {1, 0, 0, 0}));
  Rng rng(9);
  for (int n = 0; n < 100; ++n) {
    const NElement g(random_imaginary(Field::C, rng), random_fvector(Field::C, 2, rng));
    CHECK(std::abs(busemann(p, o, apply(to_matrix(g), o))) <= 1e-9);
  }
}

TEST_CASE("geodesic points") {
  Rng rng(21);
  for (const Model& m : spaces()) {
    for (int n = 0; n < 500; ++n) {
      const HPoint x = random_point(m, rng, 5), y = random_point(m, rng, 5);
      const double L = distance(x, y);
      CHECK(distance(geodesic_point(x, y, 0.0), x) <= 1e-8);
      CHECK(distance(geodesic_point(x, y, L), y) <= 1e-8);
      const double t = rng.uniform(0.0, L);
      const HPoint g = geodesic_point(x, y, t);
      CHECK(std::abs(distance(x, g) - t) <= 1e-8);
      CHECK(std::abs(distance(g, y) - (L - t)) <= 1e-8);
    }
  }
  const Model c(Field::C, 2);
  const HPoint x = random_point(c, rng, 5), y = random_point(c, rng, 5);
  const HPoint mid = geodesic_point(x, y, distance(x, y) / 2);
  CHECK(std::abs(distance(x, mid) - distance(x, y) / 2) <= 1e-8);
  CHECK(std::abs(distance(mid, y) - distance(x, y) / 2) <= 1e-8);
  CHECK_THROWS(geodesic_point(x, x, 0.0));
}

TEST_CASE("geodesics far from the origin keep their endpoints") {
  Rng rng(22);
  const Model m(Field::Q, 2);
  for (int n = 0; n < 200; ++n) {
    const HPoint x = random_point(m, rng, 12), y = random_point(m, rng, 12);
    const double L = distance(x, y);
    const double t = rng.uniform(0.0, L);
    CHECK(std::abs(distance(geodesic_point(x, y, t), y) - (L - t)) <= 1e-6);
  }
}

TEST_CASE("horoballs") {
  const Model m(Field::R, 2);
  const HPoint o = HPoint::origin(m);
  const BPoint xi(m, FVector::from_reals(Field::R, {1, 1, 0}));
  CHECK_FALSE(horoball_contains({xi, 0.0}, o, o));
  const HPoint deep = ray_point(o, xi, 5.0);
  CHECK(horoball_contains({xi, 1.0}, deep, o));
  CHECK_FALSE(horoball_contains({xi, 1e6}, deep, o));
  // Monotone in the height.
  for (double t = -3; t < 6; t += 0.5) {
    if (horoball_contains({xi, t + 0.5}, deep, o)) CHECK(horoball_contains({xi, t}, deep, o));
  }
}

TEST_CASE("delta estimate") {
  CHECK(delta_estimate(Model(Field::R, 2), 1000, 1, 0.0) == 0.0);
  const double d = delta_estimate(Model(Field::R, 2), 100000, 3);
  CHECK(d <= 0.8);
  CHECK(d == doctest::Approx(0.69249516855073345).epsilon(1e-12));
  // Fresh quadruples never beat the estimate by much.
  Rng rng(77);
  const Model q(Field::Q, 2);
  const double dq = delta_estimate(q, 20000, 5);
  for (int n = 0; n < 5000; ++n) {
    const HPoint a = random_point(q, rng, 10), b = random_point(q, rng, 10), c = random_point(q, rng, 10),
                 w = random_point(q, rng, 10);
    CHECK(gromov_defect(a, b, c, w) <= dq + 0.05);
  }
}

TEST_CASE("segment projection agrees with a dense discretisation") {
  Rng rng(31);
  for (const Model& m : spaces()) {
    for (int n = 0; n < 40; ++n) {
      const HPoint x = random_point(m, rng, 8), y = random_point(m, rng, 8), z = random_point(m, rng, 8);
      const double dense = dense_segment_distance(z, x, y, 0.01);
      const double lib = distance_to_segment(z, x, y);
      CHECK(lib <= dense + 1e-9);
      CHECK(dense - lib <= 1e-4);
    }
  }
}

TEST_CASE("pinned C_rips covers a dense-sampling oracle") {
  // The supremum is log(1 + sqrt 2), attained by ideal triangles in real
  // hyperbolic planes. Triples at radius 10 come close.
  Rng rng(5);
  double rips = 0, thin = 0;
  for (const Model& m : spaces()) {
    for (int n = 0; n < 60; ++n) {
      const HPoint x = random_point(m, rng, 10), y = random_point(m, rng, 10), z = random_point(m, rng, 10);
      thin = std::max(thin, std::abs(dense_segment_distance(z, x, y, 0.01) - gromov_product(x, y, z)));
      const double L = distance(y, z);
      for (int k = 1; k < 10; ++k) {
        const HPoint w = geodesic_point(y, z, L * k / 10);
        rips = std::max(rips, std::min(dense_segment_distance(w, x, y, 0.01), dense_segment_distance(w, x, z, 0.01)));
      }
    }
  }
  CHECK(thin <= kCRips);
  CHECK(rips <= kCRips);
  CHECK(kCRips - std::log(1 + std::sqrt(2.0)) < 0.01);
}

}  // TEST_SUITE
