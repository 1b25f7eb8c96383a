#include "rossonct/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <numbers>
#include <type_traits>

#include "rossonct/asymptotics.hpp"
#include "rossonct/heisenberg.hpp"
#include "rossonct/hyperspace.hpp"
#include "rossonct/isometry.hpp"
#include "rossonct/random.hpp"
#include "rossonct/wordmetric.hpp"

namespace rossonct {

namespace {

template <class T>
std::string cell(const T& x) {
  if constexpr (std::is_same_v<T, bool>) {
    return x ? "1" : "0";
  } else if constexpr (std::is_integral_v<T>) {
    return std::to_string(x);
  } else if constexpr (std::is_floating_point_v<T>) {
    return format_real(static_cast<double>(x));
  } else {
    return std::string(x);
  }
}

template <class... A>
void add_row(Table& t, const A&... a) {
  t.rows.push_back({cell(a)...});
}

std::string space_label(const Model& m) {
  return "H" + std::to_string(m.d) + "_" + std::string(field_name(m.field));
}

std::vector<Model> spaces(const ExperimentConfig& c) {
  if (c.field || c.d) return {Model(c.field.value_or(Field::C), c.d.value_or(2), Basis::E)};
  return {Model(Field::R, 2, Basis::E), Model(Field::C, 2, Basis::E), Model(Field::Q, 2, Basis::E),
          Model(Field::C, 3, Basis::E)};
}

// Independent stream per (seed, slot).
Rng stream(std::uint64_t seed, std::uint64_t slot) { return Rng(seed * 0x9e3779b97f4a7c15ULL + slot * 0xd1b54a32d192ed03ULL + 1); }

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

// max over the components of a corridor of how much it widened.
double corridor_growth(const QieCorridor& a, const QieCorridor& b) {
  auto ratio = [](double num, double den) {
    if (den == 0.0) return num == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
    return num / den;
  };
  return std::max({ratio(b.mult_hi, a.mult_hi), ratio(a.mult_lo, b.mult_lo), ratio(b.add, a.add)});
}

FVector scaled_right(const FVector& v, const Scalar& s) { return v.times(s); }

FMatrix random_unitary(Field f, std::size_t n, Rng& rng) {
  std::vector<FVector> cols;
  while (cols.size() < n) {
    FVector w = random_fvector(f, n, rng);
    for (const auto& u : cols) {
      Scalar ip = Scalar::zero(f);
      for (std::size_t i = 0; i < n; ++i) ip += u[i].conj() * w[i];
      w = w - u.times(ip);
    }
    const double nw = w.norm();
    if (nw < 1e-6) continue;
    cols.push_back(w.times(1.0 / nw));
  }
  FMatrix m(f, n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) m.set(i, j, cols[j][i]);
  return m;
}

NElement random_nelement(Field f, int d, Rng& rng) {
  return NElement(random_imaginary(f, rng), random_fvector(f, static_cast<std::size_t>(d - 1), rng));
}

// --- hyperspace -------------------------------------------------------------

ExperimentResult metric_axioms(const ExperimentConfig& c) {
  ExperimentResult r;
  const std::size_t n = c.samples.value_or(100000);
  const double radius = c.radius.value_or(5.0);
  r.table.header = {"space", "samples", "triangle_violation", "symmetry_violation", "projective_violation"};
  double tri_all = 0.0, sym_all = 0.0, proj_all = 0.0;
  std::uint64_t slot = 0;
  for (const Model& m : spaces(c)) {
    Rng rng = stream(c.seed, slot++);
    double tri = 0.0, sym = 0.0, proj = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const HPoint x = random_point(m, rng, radius);
      const HPoint y = random_point(m, rng, radius);
      const HPoint z = random_point(m, rng, radius);
      const double dxy = distance(x, y), dyz = distance(y, z), dxz = distance(x, z);
      tri = std::max({tri, dxz - dxy - dyz, dxy - dxz - dyz, dyz - dxy - dxz});
      sym = std::max(sym, std::abs(distance(y, x) - dxy));
      const HPoint xs(m, scaled_right(x.rep(), random_nonzero_scalar(m.field, rng)));
      const HPoint ys(m, scaled_right(y.rep(), random_nonzero_scalar(m.field, rng)));
      proj = std::max(proj, std::abs(distance(xs, ys) - dxy));
    }
    add_row(r.table, space_label(m), n, tri, sym, proj);
    tri_all = std::max(tri_all, tri);
    sym_all = std::max(sym_all, sym);
    proj_all = std::max(proj_all, proj);
  }
  r.metrics = {{"triangle_violation", tri_all}, {"symmetry_violation", sym_all}, {"projective_violation", proj_all}};
  r.pass = tri_all <= 1e-9 && sym_all == 0.0 && proj_all <= 1e-10;
  r.summary = "triangle " + fmt("%.3g", tri_all) + ", symmetry " + fmt("%.3g", sym_all) + ", projective " +
              fmt("%.3g", proj_all);
  return r;
}

ExperimentResult delta_estimate_exp(const ExperimentConfig& c) {
  ExperimentResult r;
  const std::size_t n = c.samples.value_or(100000);
  const double radius = c.radius.value_or(10.0);
  r.table.header = {"space", "seed", "delta"};
  double spread_all = 0.0, max_all = 0.0;
  bool finite = true;
  for (const Model& m : spaces(c)) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (std::uint64_t s = c.seed; s < c.seed + 5; ++s) {
      const double d = delta_estimate(m, n, s, radius);
      finite = finite && std::isfinite(d);
      lo = std::min(lo, d);
      hi = std::max(hi, d);
      add_row(r.table, space_label(m), s, d);
    }
    spread_all = std::max(spread_all, hi - lo);
    max_all = std::max(max_all, hi);
  }
  r.metrics = {{"delta_max", max_all}, {"seed_spread", spread_all}};
  r.pass = finite && spread_all <= kDeltaSpread;
  r.summary = "delta <= " + fmt("%.4f", max_all) + ", spread over 5 seeds " + fmt("%.4f", spread_all);
  return r;
}

ExperimentResult thin_triangles(const ExperimentConfig& c) {
  ExperimentResult r;
  const std::size_t n = c.samples.value_or(10000);
  const double radius = c.radius.value_or(10.0);
  r.table.header = {"space", "samples", "thin_max", "rips_max", "c_rips"};
  double thin_all = 0.0, rips_all = 0.0;
  std::uint64_t slot = 100;
  for (const Model& m : spaces(c)) {
    Rng rng = stream(c.seed, slot++);
    double thin = 0.0, rips = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const HPoint x = random_point(m, rng, radius);
      const HPoint y = random_point(m, rng, radius);
      const HPoint z = random_point(m, rng, radius);
      thin = std::max(thin, std::abs(distance_to_segment(z, x, y) - gromov_product(x, y, z)));
      // Rips: a point on [y, z] is close to [x, y] or [x, z].
      const double L = distance(y, z);
      if (L <= 1e-6) continue;
      const HPoint w = geodesic_point(y, z, rng.uniform(0.0, L));
      rips = std::max(rips, std::min(distance_to_segment(w, x, y), distance_to_segment(w, x, z)));
    }
    add_row(r.table, space_label(m), n, thin, rips, kCRips);
    thin_all = std::max(thin_all, thin);
    rips_all = std::max(rips_all, rips);
  }
  r.metrics = {{"thin_max", thin_all}, {"rips_max", rips_all}, {"c_rips", kCRips}};
  r.pass = thin_all <= kCRips && rips_all <= kCRips;
  r.summary = "thin " + fmt("%.4f", thin_all) + ", rips " + fmt("%.4f", rips_all) + " against C_rips " +
              fmt("%.2f", kCRips);
  return r;
}

ExperimentResult geodesic_additivity(const ExperimentConfig& c) {
  ExperimentResult r;
  const std::size_t n = c.samples.value_or(10000);
  const double radius = c.radius.value_or(5.0);
  r.table.header = {"space", "samples", "additivity_max", "endpoint_max"};
  double add_all = 0.0, end_all = 0.0;
  std::uint64_t slot = 200;
  for (const Model& m : spaces(c)) {
    Rng rng = stream(c.seed, slot++);
    double add = 0.0, end = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const HPoint x = random_point(m, rng, radius);
      const HPoint y = random_point(m, rng, radius);
      const double L = distance(x, y);
      if (L <= 1e-6) continue;
      const double s = rng.uniform(0.0, L), t = rng.uniform(0.0, L);
      const HPoint gs = geodesic_point(x, y, s), gt = geodesic_point(x, y, t);
      add = std::max(add, std::abs(distance(gs, gt) - std::abs(t - s)));
      end = std::max({end, std::abs(distance(x, gt) - t), std::abs(distance(gt, y) - (L - t))});
    }
    add_row(r.table, space_label(m), n, add, end);
    add_all = std::max(add_all, add);
    end_all = std::max(end_all, end);
  }
  r.metrics = {{"additivity_max", add_all}, {"endpoint_max", end_all}};
  r.pass = add_all <= 1e-8 && end_all <= 1e-8;
  r.summary = "additivity " + fmt("%.3g", add_all) + ", endpoints " + fmt("%.3g", end_all);
  return r;
}

// --- isometries and N_p -------------------------------------------------------

ExperimentResult classify_langlands(const ExperimentConfig& c) {
  ExperimentResult r;
  const Field f = c.field.value_or(Field::C);
  const int d = c.d.value_or(3);
  const Model m = heisenberg_model(f, d);
  const HPoint o = HPoint::origin(m);
  const std::size_t k = d - 1;
  r.table.header = {"element", "expected", "got", "translation_estimate", "expected_translation"};

  struct Case {
    std::string label;
    Isometry g;
    std::string expected;
    double translation;
  };
  std::vector<Case> cases;
  const FMatrix I = FMatrix::identity(f, k);
  const FVector zero(f, k);
  cases.push_back({"identity", Isometry::identity(m), "elliptic", 0.0});
  cases.push_back({"translation e", to_matrix(LanglandsElement::translation(f, d, std::numbers::e)), "loxodromic", 1.0});
  cases.push_back({"translation 1.01", to_matrix(LanglandsElement::translation(f, d, 1.01)), "loxodromic", std::log(1.01)});
  cases.push_back({"translation 1.001", to_matrix(LanglandsElement::translation(f, d, 1.001)), "indeterminate", std::log(1.001)});
  {
    FVector v(f, k);
    v.set(0, Scalar::one(f));
    cases.push_back({"n(0, e1)", to_matrix(NElement(Scalar::zero(f), v)), "parabolic", 0.0});
    if (f != Field::R) {
      cases.push_back({"n(i, 0)", to_matrix(NElement(Scalar(f, 0.0, 1.0), zero)), "parabolic", 0.0});
      cases.push_back({"n(1e-3 i, 0)", to_matrix(NElement(Scalar(f, 0.0, 1e-3), zero)), "parabolic", 0.0});
    }
  }
  Rng rng = stream(c.seed, 300);
  const std::size_t n_random = c.samples.value_or(30);
  for (std::size_t i = 0; i < n_random; ++i) {
    const std::string tag = std::to_string(i);
    switch (i % 3) {
      case 0: {
        const NElement x = random_nelement(f, d, rng);
        cases.push_back({"random n " + tag, to_matrix(x), "parabolic", 0.0});
        break;
      }
      case 1: {
        const double u = rng.uniform(0.2, 3.0) * (rng.uniform() < 0.5 ? -1.0 : 1.0);
        const NElement x = random_nelement(f, d, rng);
        const LanglandsElement h(std::exp(u), x.a(), x.v(), random_unitary(f, k, rng));
        cases.push_back({"random lambda n m " + tag, to_matrix(h), "loxodromic", std::abs(u)});
        break;
      }
      default:
        cases.push_back({"random m " + tag, to_matrix(LanglandsElement::rotation(random_unitary(f, k, rng))), "elliptic", 0.0});
    }
  }
  if (f == Field::C && d == 3) cases.push_back({"swap involution", swap_involution(), "elliptic", 0.0});

  int mismatches = 0;
  double worst_translation = 0.0;
  for (const auto& cs : cases) {
    std::string got;
    double est = std::numeric_limits<double>::quiet_NaN();
    try {
      const ClassTag t = classify(cs.g, o);
      got = std::string(iso_type_name(t.type));
      est = t.translation_estimate;
    } catch (const Indeterminate&) {
      got = "indeterminate";
    }
    if (got != cs.expected) ++mismatches;
    if (got == "loxodromic" && cs.expected == "loxodromic") {
      worst_translation = std::max(worst_translation, std::abs(est - cs.translation));
    }
    add_row(r.table, cs.label, cs.expected, got, est, cs.translation);
  }
  r.metrics = {{"mismatches", mismatches}, {"translation_error", worst_translation}, {"cases", double(cases.size())}};
  r.pass = mismatches == 0 && worst_translation <= 1e-6;
  r.summary = std::to_string(cases.size()) + " elements, " + std::to_string(mismatches) + " misclassified, translation error " +
              fmt("%.3g", worst_translation);
  return r;
}

ExperimentResult composition_oracle(const ExperimentConfig& c) {
  ExperimentResult r;
  const std::size_t n = c.samples.value_or(10000);
  std::vector<std::pair<Field, int>> groups;
  if (c.field || c.d) {
    groups.emplace_back(c.field.value_or(Field::C), c.d.value_or(3));
  } else {
    groups = {{Field::C, 3}, {Field::Q, 2}};
  }
  r.table.header = {"space", "samples", "matrix_diff", "associativity_diff", "pi_additivity_diff"};
  double mat_all = 0.0, assoc_all = 0.0, pi_all = 0.0;
  std::uint64_t slot = 400;
  for (const auto& [f, d] : groups) {
    Rng rng = stream(c.seed, slot++);
    double mat = 0.0, assoc = 0.0, pi = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const NElement x = random_nelement(f, d, rng), y = random_nelement(f, d, rng), z = random_nelement(f, d, rng);
      const NElement xy = compose(x, y);
      mat = std::max(mat, max_abs_diff(to_matrix(xy).matrix(), to_matrix(x).matrix() * to_matrix(y).matrix()));
      assoc = std::max(assoc, max_abs_diff(compose(xy, z), compose(x, compose(y, z))));
      pi = std::max(pi, max_abs_diff(pi_hom(xy), pi_hom(x) + pi_hom(y)));
    }
    add_row(r.table, space_label(Model(f, d, Basis::F)), n, mat, assoc, pi);
    mat_all = std::max(mat_all, mat);
    assoc_all = std::max(assoc_all, assoc);
    pi_all = std::max(pi_all, pi);
  }
  r.metrics = {{"matrix_diff", mat_all}, {"associativity_diff", assoc_all}, {"pi_additivity_diff", pi_all}};
  r.pass = mat_all <= 1e-10 && assoc_all <= 1e-12 && pi_all <= 1e-12;
  r.summary = "formula vs matrix " + fmt("%.3g", mat_all) + ", associativity " + fmt("%.3g", assoc_all);
  return r;
}

std::vector<double> log_grid(double lo, double hi, int per_decade) {
  const int steps = static_cast<int>(std::lround(std::log10(hi / lo) * per_decade));
  std::vector<double> g{0.0};
  for (int s = 0; s <= steps; ++s) g.push_back(lo * std::pow(10.0, static_cast<double>(s) / per_decade));
  return g;
}

ExperimentResult heis_norm_exp(const ExperimentConfig& c) {
  ExperimentResult r;
  const Field f = c.field.value_or(Field::C);
  const int d = c.d.value_or(3);
  const double top = c.n_max ? static_cast<double>(*c.n_max) : 1e6;
  const Model m = heisenberg_model(f, d);
  const HPoint o = HPoint::origin(m);
  // Fixed unit directions; the norm depends only on |a| and |v|.
  const Scalar a_dir = f == Field::R ? Scalar::zero(f) : Scalar(f, 0.0, 1.0);
  FVector v_dir(f, static_cast<std::size_t>(d - 1));
  if (d > 2) {
    v_dir.set(0, Scalar::real(f, 0.6));
    v_dir.set(1, f == Field::R ? Scalar::real(f, 0.8) : Scalar(f, 0.0, 0.8));
  } else {
    v_dir.set(0, Scalar::real(f, 1.0));
  }
  r.table.header = {"abs_a", "norm_v", "distance", "closed_form", "model", "gap"};

  auto sweep = [&](int per_decade, bool record) {
    const auto ga = f == Field::R ? std::vector<double>{0.0} : log_grid(1e-3, top, per_decade);
    const auto gv = log_grid(1e-3, top, per_decade);
    double worst = 0.0;
    for (double A : ga) {
      for (double V : gv) {
        const Scalar a = a_dir * A;
        const FVector v = v_dir.times(V);
        const NElement x(a, v);
        const double dist = norm_g(to_matrix(x), o);
        const double model = heis_norm_model(a, v);
        const double gap = std::abs(dist - model);
        worst = std::max(worst, gap);
        if (record) add_row(r.table, A, V, dist, heis_norm(x), model, gap);
      }
    }
    return worst;
  };
  const double coarse = sweep(4, false);
  const double refined = sweep(8, true);
  r.metrics = {{"c44_coarse", coarse}, {"c44_refined", refined}, {"c44_pinned", kC44}};
  r.pass = coarse <= kC44 && coarse <= 3.0 && refined <= coarse + 1e-9;
  r.summary = "max gap " + fmt("%.6f", coarse) + " (4/decade), " + fmt("%.6f", refined) + " (8/decade), pinned " +
              fmt("%.4f", kC44);
  return r;
}

// --- word metrics ------------------------------------------------------------

ExperimentResult lemma46i(const ExperimentConfig& c) {
  ExperimentResult r;
  const double R = c.radius.value_or(50.0);
  const WeightedGroup H = WeightedGroup::standard(lattice_H());
  r.table.header = {"radius", "ball_size", "ratio_lo", "ratio_hi"};
  std::vector<std::pair<double, double>> corr;
  for (double rad : {R, 2.0 * R}) {
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    const auto b = ball(H, rad);
    for (const auto& e : b) {
      const double x = e.dist > 1.0 ? std::log(e.dist) : 0.0;
      if (x < 1.0) continue;
      const double q = heis_norm(e.element) / x;
      lo = std::min(lo, q);
      hi = std::max(hi, q);
    }
    add_row(r.table, rad, b.size(), lo, hi);
    corr.emplace_back(lo, hi);
  }
  const double growth = std::max(corr[1].second / corr[0].second, corr[0].first / corr[1].first);
  r.metrics = {{"ratio_lo", corr[0].first}, {"ratio_hi", corr[0].second}, {"ratio_lo_doubled", corr[1].first},
               {"ratio_hi_doubled", corr[1].second}, {"growth", growth}};
  r.pass = std::isfinite(growth) && corr[1].first > 0.0 && growth <= 1.1;
  r.summary = "||h|| / log dist in [" + fmt("%.4f", corr[0].first) + ", " + fmt("%.4f", corr[0].second) + "], growth " +
              fmt("%.4f", growth) + " on doubling";
  return r;
}

ExperimentResult lemma46ii(const ExperimentConfig& c) {
  ExperimentResult r;
  const double R = c.radius.value_or(50.0);
  const ParabolicLattice L = lattice_H();
  const WeightedGroup H = WeightedGroup::standard(L);
  const WeightedGroup Z = WeightedGroup::quasi_commutator(L);
  r.table.header = {"radius", "ball_size", "c_r"};
  std::vector<double> cr;
  for (double rad : {R, 2.0 * R}) {
    const RFunctional rf(H, Z, rad, (4.0 * rad) * (4.0 * rad));
    const auto b = ball(H, rad);
    double worst = 0.0;
    for (const auto& e : b) worst = std::max(worst, std::abs(rf(e.element) - heis_norm(e.element)));
    add_row(r.table, rad, b.size(), worst);
    cr.push_back(worst);
  }
  const double growth = cr[0] > 0.0 ? cr[1] / cr[0] : std::numeric_limits<double>::infinity();
  r.metrics = {{"c_r", cr[0]}, {"c_r_doubled", cr[1]}, {"growth", growth}, {"c_r_pinned", kCR}};
  r.pass = growth <= 1.1 && cr[1] <= kCR;
  r.summary = "C_R " + fmt("%.4f", cr[0]) + " -> " + fmt("%.4f", cr[1]) + " on doubling, pinned " + fmt("%.2f", kCR);
  return r;
}

ExperimentResult fact48(const ExperimentConfig& c) {
  ExperimentResult r;
  const double R = c.radius.value_or(50.0);
  const WeightedGroup G = WeightedGroup::standard(real_lattice("Z2", {{1.0, 0.0}, {0.0, 1.0}}));
  r.table.header = {"radius", "count", "c", "C", "C_over_c"};
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  std::size_t count = 0;
  // ||v|| <= R forces word length <= sqrt(2) R.
  for (const auto& e : ball(G, std::ceil(std::numbers::sqrt2 * R))) {
    const double nv = e.element.v().norm();
    if (nv == 0.0 || nv > R) continue;
    ++count;
    lo = std::min(lo, e.dist / nv);
    hi = std::max(hi, e.dist / nv);
  }
  add_row(r.table, R, count, lo, hi, hi / lo);
  r.metrics = {{"c", lo}, {"C", hi}, {"C_over_c", hi / lo}};
  r.pass = lo > 0.0 && hi / lo <= 4.0;
  r.summary = "dist / ||v|| in [" + fmt("%.4f", lo) + ", " + fmt("%.4f", hi) + "]";
  return r;
}

ExperimentResult theorem222(const ExperimentConfig& c) {
  ExperimentResult r;
  const double R = c.radius.value_or(30.0);
  const ParabolicLattice L = lattice_H();
  const WeightedGroup unit = WeightedGroup::standard(L);
  const HPoint o = HPoint::origin(heisenberg_model(L.field, L.d));
  r.table.header = {"radius", "weights", "samples", "mult_lo", "mult_hi", "add"};
  std::vector<QieCorridor> weighted, plain;
  for (double rad : {R, 2.0 * R}) {
    // The word ball of radius rad, generated by all of itself with weights
    // 1 v ||h||: the truncation of the full parabolic generating set.
    const auto b = ball(unit, rad);
    std::vector<NElement> samples;
    std::vector<Generator> gens;
    for (const auto& e : b) {
      samples.push_back(e.element);
      if (e.dist > 0.0) gens.push_back({"b" + std::to_string(gens.size()), e.element, std::max(1.0, heis_norm(e.element))});
    }
    const WeightedGroup W(L.field, L.d, std::move(gens));
    const QieCorridor cw = orbit_qie_check(W, o, samples, std::numeric_limits<double>::max());
    const QieCorridor cu = orbit_qie_check(unit, o, samples, rad);
    add_row(r.table, rad, "l0", samples.size(), cw.mult_lo, cw.mult_hi, cw.add);
    add_row(r.table, rad, "unit", samples.size(), cu.mult_lo, cu.mult_hi, cu.add);
    weighted.push_back(cw);
    plain.push_back(cu);
  }
  const double gw = corridor_growth(weighted[0], weighted[1]);
  const double gu = corridor_growth(plain[0], plain[1]);
  r.metrics = {{"l0_growth", gw}, {"unit_growth", gu}, {"l0_mult_hi", weighted[1].mult_hi}, {"l0_add", weighted[1].add}};
  r.pass = std::isfinite(gw) && gw <= 1.1 && gu >= 2.0;
  r.summary = "corridor growth on doubling: weighted " + fmt("%.4f", gw) + ", unit weights " + fmt("%.4f", gu);
  return r;
}

// --- asymptotics --------------------------------------------------------------

std::vector<long long> log_ints(long long lo, long long hi, int per_decade) {
  std::vector<long long> out;
  const double steps = std::log10(static_cast<double>(hi) / lo) * per_decade;
  for (int s = 0; s <= static_cast<int>(std::ceil(steps)); ++s) {
    const long long n = std::min(hi, std::llround(lo * std::pow(10.0, s / static_cast<double>(per_decade))));
    if (out.empty() || n > out.back()) out.push_back(n);
  }
  if (out.back() != hi) out.push_back(hi);
  return out;
}

ExperimentResult example412(const ExperimentConfig& c) {
  ExperimentResult r;
  const long long n_max = c.n_max.value_or(1000000);
  if (n_max < 100) throw std::invalid_argument("n-max must be at least 100");
  const GroupPair p = make_pair(lattice_H(), lattice_Hpp());
  const HPoint o = HPoint::origin(heisenberg_model(Field::C, 3));
  r.table.header = {"n", "norm_h1n", "norm_h2n", "norm_img1", "norm_img2"};
  std::vector<std::pair<double, double>> s1, s2, i1, i2;
  for (long long n : log_ints(2, n_max, 8)) {
    auto nrm = [&](const NElement& g) { return norm_g(to_matrix(power(g, n)), o); };
    const double a = nrm(p.source.generators[0]), b = nrm(p.source.generators[1]);
    const double ia = nrm(p.images[0]), ib = nrm(p.images[1]);
    add_row(r.table, n, a, b, ia, ib);
    const double x = std::log(static_cast<double>(n));
    s1.emplace_back(x, a);
    s2.emplace_back(x, b);
    i1.emplace_back(x, ia);
    i2.emplace_back(x, ib);
  }
  const double k1 = fit_affine(s1).alpha, k2 = fit_affine(s2).alpha;
  const double j1 = fit_affine(i1).alpha, j2 = fit_affine(i2).alpha;
  r.metrics = {{"slope_h1", k1}, {"slope_h2", k2}, {"slope_img1", j1}, {"slope_img2", j2}};
  r.pass = k1 >= 0.9 && k1 <= 1.1 && k2 >= 1.9 && k2 <= 2.1;
  r.summary = "slopes vs log n: h1 " + fmt("%.4f", k1) + ", h2 " + fmt("%.4f", k2) + ", Phi(h1) " + fmt("%.4f", j1) +
              ", Phi(h2) " + fmt("%.4f", j2);
  return r;
}

ExperimentResult tukia2_matrix(const ExperimentConfig& c) {
  ExperimentResult r;
  const double radius = c.radius.value_or(100.0);
  const long long n_max = c.n_max.value_or(1000000);
  constexpr double kTukia1Radius = 20.0;
  const std::vector<ParabolicLattice> L{lattice_H(), lattice_Hp(), lattice_Hpp()};
  r.table.header = {"pair", "verdict", "alpha", "gap", "witness_a", "alpha_a", "witness_b", "alpha_b", "alpha_diff",
                    "residual_short", "residual_long", "tukia1"};
  bool ok = true;
  double min_cross_gap = std::numeric_limits<double>::infinity();
  double max_identity_gap = 0.0;
  int tukia1_fail = 0;
  for (std::size_t i = 0; i < L.size(); ++i) {
    for (std::size_t j = 0; j < L.size(); ++j) {
      const GroupPair p = i == j ? identity_pair(L[i]) : make_pair(L[i], L[j]);
      const Tukia2Result t = verify_tukia2(p, radius, n_max);
      const bool t1 = verify_tukia1(p, kTukia1Radius).pass;
      if (!t1) ++tukia1_fail;
      add_row(r.table, p.label(), t.holds ? "holds" : "fails", t.alpha, t.gap, t.first.name, t.first.alpha, t.second.name,
              t.second.alpha, std::abs(t.first.alpha - t.second.alpha), t.residual_short, t.residual_long, t1);
      if (i == j) {
        ok = ok && t.holds && std::abs(t.alpha - 1.0) <= 1e-9;
        max_identity_gap = std::max(max_identity_gap, t.gap);
      } else {
        ok = ok && !t.holds && t.gap >= 0.8;
        min_cross_gap = std::min(min_cross_gap, t.gap);
      }
    }
  }
  r.metrics = {{"min_cross_gap", min_cross_gap}, {"max_identity_gap", max_identity_gap}, {"tukia1_failures", tukia1_fail}};
  r.pass = ok;
  r.summary = "identity pairs hold, smallest cross-pair witness gap " + fmt("%.4f", min_cross_gap) + ", first norm comparison fails on " +
              std::to_string(tukia1_fail) + " of 9 pairs";
  return r;
}

ExperimentResult qs_probe(const ExperimentConfig& c) {
  ExperimentResult r;
  const long long n_max = c.n_max.value_or(1000000);
  if (n_max < 100) throw std::invalid_argument("n-max must be at least 100");
  const Model m = heisenberg_model(Field::C, 3);
  const BPoint zeta(m, FVector::from_reals(Field::C, {0.0, 1.0, 0.0, 0.0}));
  const QsProbe q = quasisymmetry_probe(make_pair(lattice_H(), lattice_Hpp()), zeta, n_max);
  const QsProbe id = quasisymmetry_probe(identity_pair(lattice_H()), zeta, n_max);
  r.table.header = {"n", "delta", "Delta"};
  for (const auto& row : q.rows) add_row(r.table, row.n, row.delta, row.Delta);
  const double witness = std::max(std::abs(q.delta_growth), std::abs(q.Delta_growth));
  const double need = 0.5 * std::log(100.0);
  r.metrics = {{"delta_growth", q.delta_growth}, {"Delta_growth", q.Delta_growth}, {"witness_growth", witness},
               {"identity_fail", id.fail_qs ? 1.0 : 0.0}};
  r.pass = q.fail_qs && witness >= need && !id.fail_qs;
  r.summary = "delta grows " + fmt("%.4f", q.delta_growth) + ", Delta grows " + fmt("%.4f", q.Delta_growth) +
              " over n in [n_max/100, n_max]; identity control " + (id.fail_qs ? "diverges" : "bounded");
  return r;
}

ExperimentResult quasigeodesic_morse(const ExperimentConfig&) {
  ExperimentResult r;
  constexpr long long kPower = 4;
  r.table.header = {"word_length", "K", "hausdorff", "path_length", "span"};
  std::vector<OrbitPathReport> reps;
  for (std::size_t len : {64u, 256u}) {
    const OrbitPathReport rep = analyse_orbit_path(pingpong_path(len, kPower));
    add_row(r.table, len, rep.K, rep.hausdorff, rep.length, rep.span);
    reps.push_back(rep);
  }
  const double dk = std::abs(reps[1].K - reps[0].K) / reps[0].K;
  const double dh = std::abs(reps[1].hausdorff - reps[0].hausdorff) / reps[0].hausdorff;
  r.metrics = {{"K_64", reps[0].K}, {"K_256", reps[1].K}, {"hausdorff_64", reps[0].hausdorff},
               {"hausdorff_256", reps[1].hausdorff}, {"K_change", dk}, {"hausdorff_change", dh}};
  r.pass = dk <= 0.2 && dh <= 0.2;
  r.summary = "K " + fmt("%.4f", reps[0].K) + " -> " + fmt("%.4f", reps[1].K) + ", Hausdorff " +
              fmt("%.4f", reps[0].hausdorff) + " -> " + fmt("%.4f", reps[1].hausdorff);
  return r;
}

struct Entry {
  ExperimentInfo info;
  std::function<ExperimentResult(const ExperimentConfig&)> run;
};

const std::vector<Entry>& entries() {
  static const std::vector<Entry> e{
      {{"metric-axioms", 1, "triangle inequality, symmetry and projective invariance of the distance"}, metric_axioms},
      {{"delta-estimate", 3, "four-point hyperbolicity constant over 5 seeds"}, delta_estimate_exp},
      {{"thin-triangles", 3, "distance to a side against the Gromov product, and the Rips condition"}, thin_triangles},
      {{"geodesic-additivity", 2, "d(g(s), g(t)) = |t - s| along constructed geodesics"}, geodesic_additivity},
      {{"classify-langlands", 4, "orbit-growth classification of Langlands elements"}, classify_langlands},
      {{"composition-oracle", 4, "N_p composition law against matrix products"}, composition_oracle},
      {{"heis-norm", 5, "||n(a,v)|| against 0 v 2 log|v| v log|a| on a log grid"}, heis_norm_exp},
      {{"lemma-46i", 9, "||h|| against log of the word length on H"}, lemma46i},
      {{"lemma-46ii", 9, "||h|| against the quasi-commutator functional on H"}, lemma46ii},
      {{"fact-48", 9, "word length against Euclidean norm on Z^2"}, fact48},
      {{"theorem-222", 10, "orbit map corridor for weighted and unit-weight generators"}, theorem222},
      {{"example-412", 6, "growth of ||h1^n|| and ||h2^n|| against log n"}, example412},
      {{"tukia2-matrix", 7, "single-slope norm comparison on all 9 ordered pairs of H, H', H''"}, tukia2_matrix},
      {{"qs-probe", 8, "norm differences a quasisymmetric boundary map would control"}, qs_probe},
      {{"quasigeodesic-morse", 11, "quasigeodesic constant and Hausdorff distance of ping-pong orbit paths"},
       quasigeodesic_morse},
  };
  return e;
}

}  // namespace

const std::vector<ExperimentInfo>& catalog() {
  static const std::vector<ExperimentInfo> c = [] {
    std::vector<ExperimentInfo> out;
    for (const auto& e : entries()) out.push_back(e.info);
    return out;
  }();
  return c;
}

const ExperimentInfo& lookup_experiment(const std::string& id) {
  for (const auto& e : catalog())
    if (e.id == id) return e;
  throw UnknownExperiment(id);
}

ExperimentResult run_experiment(const std::string& id, const ExperimentConfig& cfg) {
  const Entry* entry = nullptr;
  for (const auto& e : entries())
    if (e.info.id == id) entry = &e;
  if (!entry) throw UnknownExperiment(id);
  try {
    ExperimentResult r = entry->run(cfg);
    r.id = id;
    r.criterion = entry->info.criterion;
    return r;
  } catch (const std::exception& ex) {
    throw std::runtime_error(id + ": " + ex.what());
  }
}

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string to_csv(const Table& t) {
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      const std::string& s = cells[i];
      if (s.find_first_of(",\"\n") == std::string::npos) {
        out += s;
      } else {
        out += '"';
        for (char ch : s) {
          if (ch == '"') out += '"';
          out += ch;
        }
        out += '"';
      }
    }
    out += '\n';
  };
  line(t.header);
  for (const auto& row : t.rows) line(row);
  return out;
}

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot write " + tmp.string());
    os.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!os) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw std::runtime_error("cannot rename into " + target.string() + ": " + ec.message());
  }
}

}  // namespace rossonct
