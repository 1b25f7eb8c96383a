#include "doctest.h"

#include <cmath>
#include <limits>

#include "rossonct/asymptotics.hpp"
#include "rossonct/random.hpp"

using namespace rossonct;

namespace {

const Witness& witness(const Tukia2Result& t, const std::string& name) {
  for (const auto& w : t.witnesses)
    if (w.name == name) return w;
  throw std::out_of_range(name);
}

}  // namespace

TEST_SUITE("asymptotics") {

TEST_CASE("affine fits") {
  std::vector<std::pair<double, double>> s;
  for (double x : {0.5, 1.0, 4.0, 10.0, 200.0}) s.emplace_back(x, 2 * x + 3);
  const AsymFit f = fit_affine(s);
  CHECK(f.alpha == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(f.c_plus == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(f.residual_max <= 1e-12);
  CHECK(f.count == 5);
  CHECK(f.corridor_lo == doctest::Approx(2.015));
  CHECK(f.corridor_hi == doctest::Approx(5.0));

  const AsymFit c = fit_affine({{1, 7}, {2, 7}, {30, 7}});
  CHECK(c.alpha == 0.0);
  CHECK(c.c_plus == 7.0);

  CHECK(std::isnan(fit_affine({{0.1, 1}, {0.2, 2}, {0.3, 3}}).corridor_lo));
  CHECK_THROWS(fit_affine({{1, 1}, {2, 2}}));
  CHECK_THROWS(fit_affine({{1, 1}, {1, 2}, {1, 3}}));
}

TEST_CASE("power norms of the worked example") {
  const ParabolicLattice H = lattice_H();
  std::vector<std::pair<double, double>> s1, s2;
  for (double n = 2; n <= 1e6; n *= 2) {
    s1.emplace_back(std::log(n), heis_norm(power(H.generators[0], static_cast<long long>(n))));
    s2.emplace_back(std::log(n), heis_norm(power(H.generators[1], static_cast<long long>(n))));
  }
  const double a1 = fit_affine(s1).alpha, a2 = fit_affine(s2).alpha;
  CHECK(a1 >= 0.9);
  CHECK(a1 <= 1.1);
  CHECK(a2 >= 1.9);
  CHECK(a2 <= 2.1);
}

TEST_CASE("closed-form powers agree with matrix powers") {
  const Model m = heisenberg_model(Field::C, 3);
  const HPoint o = HPoint::origin(m);
  const NElement g = theta(1, 2, -1);
  for (long long n : {256LL, 65536LL})
    CHECK(std::abs(heis_norm(power(g, n)) - norm_g(to_matrix(g).power(n), o)) <= 1e-8);
}

TEST_CASE("alpha gap") {
  CHECK(alpha_gap(1, 1) == 0.0);
  CHECK(alpha_gap(2, 1) == doctest::Approx(1.0));
  CHECK(alpha_gap(0.5, 1) == doctest::Approx(1.0));
  CHECK(alpha_gap(2, 1) == alpha_gap(0.5, 1));
  CHECK(std::isnan(alpha_gap(0, 1)));
}

TEST_CASE("first norm comparison") {
  const Tukia1Result id = verify_tukia1(identity_pair(lattice_H()), 8);
  CHECK(id.pass);
  CHECK(id.at_2r.alpha == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(id.at_2r.c_plus) <= 1e-9);
  CHECK(id.at_2r.residual_max <= 1e-9);

  const Tukia1Result x = verify_tukia1(make_pair(lattice_H(), lattice_Hpp()), 10);
  CHECK(x.pass);
  CHECK(x.at_2r.corridor_hi <= 1.5 * x.at_r.corridor_hi);
  CHECK(x.homomorphism_defect <= 1e-9);
}

TEST_CASE("second norm comparison on the identity") {
  const Tukia2Result t = verify_tukia2(identity_pair(lattice_H()), 20, 10000);
  CHECK(t.holds);
  CHECK(t.alpha == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(t.gap <= 1e-9);
}

TEST_CASE("second norm comparison fails from H to H''") {
  const Tukia2Result t = verify_tukia2(make_pair(lattice_H(), lattice_Hpp()), 20, 1000000);
  CHECK_FALSE(t.holds);
  CHECK(witness(t, "power-g1").alpha == doctest::Approx(2.0).epsilon(0.05));
  CHECK(witness(t, "power-g2").alpha == doctest::Approx(1.0).epsilon(0.05));
  CHECK(t.gap >= 0.8);
}

TEST_CASE("second norm comparison fails from H' to H''") {
  const Tukia2Result t = verify_tukia2(make_pair(lattice_Hp(), lattice_Hpp()), 40, 10000);
  CHECK_FALSE(t.holds);
  CHECK(witness(t, "ball-sup").alpha == doctest::Approx(1.0).epsilon(0.15));
  CHECK(witness(t, "ball-complement-inf").alpha == doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("second norm comparison rejects small inputs") {
  CHECK_THROWS(verify_tukia2(identity_pair(lattice_H()), 8, 10000));
  CHECK_THROWS(verify_tukia2(identity_pair(lattice_H()), 20, 10));
}

TEST_CASE("quasisymmetry probe") {
  const Model m = heisenberg_model(Field::C, 3);
  const BPoint zeta(m, FVector::from_reals(Field::C, {0, 1, 0, 0}));
  const QsProbe id = quasisymmetry_probe(identity_pair(lattice_H()), zeta, 1000000);
  for (const auto& r : id.rows) CHECK(r.delta == r.Delta);
  CHECK_FALSE(id.fail_qs);

  const QsProbe x = quasisymmetry_probe(make_pair(lattice_H(), lattice_Hpp()), zeta, 1000000);
  CHECK(x.fail_qs);
  CHECK(x.delta_growth >= 0.5 * std::log(100.0));
  CHECK(std::abs(x.Delta_growth) <= 1e-6);

  // p itself is fixed by every unipotent element.
  const BPoint p(m, FVector::from_reals(Field::C, {1, 0, 0, 0}));
  CHECK_THROWS(quasisymmetry_probe(identity_pair(lattice_H()), p, 1000));
}

TEST_CASE("quasigeodesic check") {
  Rng rng(1);
  const Model m(Field::C, 2);
  const HPoint x = random_point(m, rng, 3), y = random_point(m, rng, 3);
  const double L = distance(x, y);
  std::vector<PathPoint> geo;
  for (int k = 0; k <= 20; ++k) geo.push_back({L * k / 20, geodesic_point(x, y, L * k / 20)});
  CHECK(quasigeodesic_check(geo) <= 1 + 1e-6);

  // Out 15 and back.
  const HPoint far = geodesic_point(x, y, 15.0);
  std::vector<PathPoint> back{{0, x}, {15, far}, {30, x}};
  CHECK_THROWS_AS(quasigeodesic_check(back), QuasigeodesicRejected);
  CHECK(quasigeodesic_check(back, 100.0) >= std::sqrt(30.0) - 1e-9);

  CHECK_THROWS(quasigeodesic_check(std::vector<PathPoint>{{0, x}}));
  CHECK_THROWS(quasigeodesic_check(std::vector<PathPoint>{{1, x}, {1, y}}));
}

TEST_CASE("Morse check") {
  Rng rng(2);
  const Model m(Field::R, 2);
  const HPoint x = random_point(m, rng, 3), y = random_point(m, rng, 3);
  const double L = distance(x, y);
  const double step = 0.01;
  const int n = static_cast<int>(std::ceil(L / step));
  std::vector<HPoint> geo;
  for (int k = 0; k <= n; ++k) geo.push_back(geodesic_point(x, y, L * k / n));
  CHECK(morse_check(geo, 1.0, step) <= step);

  // Jitter interior points by exactly eps off the geodesic.
  const double eps = 0.2;
  std::vector<HPoint> jit{x};
  for (int k = 1; k < n; ++k) {
    const HPoint c = geo[static_cast<std::size_t>(k)];
    for (;;) {
      const HPoint q = exp_point(c, random_fvector(Field::R, 3, rng), eps);
      if (distance_to_segment(q, x, y) >= 0.5 * eps) {
        jit.push_back(q);
        break;
      }
    }
  }
  jit.push_back(y);
  const double h = morse_check(jit, 2.0, step);
  CHECK(h <= eps + step);
  CHECK(h >= 0.5 * eps);

  CHECK_THROWS(morse_check({x, x}, 1.0));
  CHECK_THROWS(morse_check({x, y}, 0.5));
}

TEST_CASE("ping-pong orbit paths") {
  const Isometry s = swap_involution();
  const Model m = s.model();
  const HPoint o = HPoint::origin(m);
  CHECK(distance(apply(s, o), o) <= 1e-12);
  CHECK(max_abs_diff((s * s).matrix(), Isometry::identity(m).matrix()) <= 1e-12);

  const OrbitPathReport a = analyse_orbit_path(pingpong_path(16, 4));
  const OrbitPathReport b = analyse_orbit_path(pingpong_path(64, 4));
  CHECK(a.K >= 1.0);
  CHECK(b.K <= 1.2 * a.K);
  CHECK(b.hausdorff <= 1.2 * a.hausdorff + 0.05);
  CHECK(b.span >= 3.0 * a.span);
  CHECK(a.length >= a.span - 1e-6);
}

}  // TEST_SUITE
