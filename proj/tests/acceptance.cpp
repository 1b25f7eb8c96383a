// One line per acceptance criterion. Thresholds are restated here rather than
// taken from the experiment verdicts, so a loosened experiment cannot pass
// silently.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "rossonct/asymptotics.hpp"
#include "rossonct/experiments.hpp"

using namespace rossonct;
namespace fs = std::filesystem;

namespace {

// Pinned tolerances.
constexpr double kTriangleTol = 1e-9;
constexpr double kProjectiveTol = 1e-10;
constexpr double kGeodesicTol = 1e-8;
constexpr double kSeedSpread = 0.05;
constexpr double kCompositionTol = 1e-10;
constexpr double kC44Ceiling = 3.0;
constexpr double kStableGrowth = 1.1;
constexpr double kFactRatio = 4.0;
constexpr double kNegativeControl = 2.0;
constexpr double kAlphaGap = 0.8;
constexpr double kPathDrift = 0.2;

int failures = 0;

void report(int n, const std::string& name, bool pass, const std::string& detail) {
  std::printf("criterion %2d %-24s %s  %s\n", n, name.c_str(), pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

ExperimentResult run(const std::string& id, ExperimentConfig cfg = {}) { return run_experiment(id, cfg); }

void metric_axioms() {
  ExperimentConfig cfg;
  cfg.samples = 100000;
  const auto r = run("metric-axioms", cfg);
  const double tri = r.metrics.at("triangle_violation"), sym = r.metrics.at("symmetry_violation"),
               proj = r.metrics.at("projective_violation");
  report(1, "metric-axioms", tri <= kTriangleTol && sym == 0.0 && proj <= kProjectiveTol,
         "triangle " + num(tri) + ", symmetry " + num(sym) + ", projective " + num(proj));
}

void geodesics() {
  ExperimentConfig cfg;
  cfg.samples = 10000;
  const auto r = run("geodesic-additivity", cfg);
  const double a = r.metrics.at("additivity_max");
  report(2, "geodesics", a <= kGeodesicTol, "additivity " + num(a));
}

void hyperbolicity() {
  const auto d = run("delta-estimate");
  ExperimentConfig cfg;
  cfg.samples = 10000;
  const auto t = run("thin-triangles", cfg);
  const double spread = d.metrics.at("seed_spread"), dmax = d.metrics.at("delta_max");
  const double thin = t.metrics.at("thin_max"), rips = t.metrics.at("rips_max");
  report(3, "hyperbolicity",
         std::isfinite(dmax) && spread <= kSeedSpread && thin <= kCRips && rips <= kCRips,
         "delta " + num(dmax) + " spread " + num(spread) + ", thin " + num(thin) + " rips " + num(rips) + " <= " +
             num(kCRips));
}

void composition() {
  ExperimentConfig cfg;
  cfg.samples = 10000;
  const auto r = run("composition-oracle", cfg);
  const double m = r.metrics.at("matrix_diff");
  report(4, "composition-law", m <= kCompositionTol, "formula vs matrix " + num(m));
}

void norm_asymptotic() {
  const auto r = run("heis-norm");
  const double c = r.metrics.at("c44_coarse"), f = r.metrics.at("c44_refined");
  report(5, "norm-asymptotic", c <= kC44 && kC44 <= kC44Ceiling && f <= c + 1e-9,
         "C44 " + num(c) + " -> " + num(f) + " on refinement, pinned " + num(kC44));
}

void slopes() {
  ExperimentConfig cfg;
  cfg.n_max = 1000000;
  const auto r = run("example-412", cfg);
  const double a = r.metrics.at("slope_h1"), b = r.metrics.at("slope_h2");
  report(6, "example-slopes", a >= 0.9 && a <= 1.1 && b >= 1.9 && b <= 2.1, "h1 " + num(a) + ", h2 " + num(b));
}

void tukia2() {
  const std::vector<ParabolicLattice> L{lattice_H(), lattice_Hp(), lattice_Hpp()};
  bool ok = true;
  double id_alpha = 1.0, min_gap = 1e300;
  for (std::size_t i = 0; i < L.size(); ++i) {
    for (std::size_t j = 0; j < L.size(); ++j) {
      const Tukia2Result t = verify_tukia2(i == j ? identity_pair(L[i]) : make_pair(L[i], L[j]), 100, 1000000);
      if (i == j) {
        ok = ok && t.holds && std::abs(t.alpha - 1.0) <= 1e-9;
        if (std::abs(t.alpha - 1.0) > std::abs(id_alpha - 1.0)) id_alpha = t.alpha;
      } else {
        ok = ok && !t.holds && t.gap >= kAlphaGap;
        min_gap = std::min(min_gap, t.gap);
      }
    }
  }
  report(7, "tukia2-verdicts", ok, "identity alpha " + num(id_alpha) + ", smallest cross gap " + num(min_gap));
}

void qs() {
  ExperimentConfig cfg;
  cfg.n_max = 1000000;
  const auto r = run("qs-probe", cfg);
  const double w = r.metrics.at("witness_growth");
  report(8, "quasisymmetry-probe", w >= 0.5 * std::log(100.0) && r.metrics.at("identity_fail") == 0.0,
         "witness growth " + num(w) + " >= " + num(0.5 * std::log(100.0)));
}

void corridors() {
  const auto a = run("lemma-46i"), b = run("lemma-46ii"), c = run("fact-48");
  const double ga = a.metrics.at("growth"), gb = b.metrics.at("growth"), cc = c.metrics.at("C_over_c");
  report(9, "lemma-46-corridors",
         std::isfinite(ga) && ga <= kStableGrowth && std::isfinite(gb) && gb <= kStableGrowth && cc <= kFactRatio,
         "log-distance growth " + num(ga) + ", C_R growth " + num(gb) + ", C/c " + num(cc));
}

void qie() {
  const auto r = run("theorem-222");
  const double gw = r.metrics.at("l0_growth"), gu = r.metrics.at("unit_growth");
  report(10, "orbit-qie", std::isfinite(gw) && gw <= kStableGrowth && gu >= kNegativeControl,
         "weighted growth " + num(gw) + ", unit growth " + num(gu));
}

void morse() {
  const auto r = run("quasigeodesic-morse");
  const double dk = r.metrics.at("K_change"), dh = r.metrics.at("hausdorff_change");
  report(11, "quasigeodesic-morse", dk <= kPathDrift && dh <= kPathDrift,
         "K drift " + num(dk) + ", Hausdorff drift " + num(dh));
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void determinism() {
  const fs::path root = fs::temp_directory_path() / "rossonct-acceptance";
  fs::remove_all(root);
  fs::create_directories(root);
  const fs::path a = root / "a", b = root / "b";
  const std::string cli = ROSSONCT_CLI;
  const std::string cmd = "\"" + cli + "\" run --all --seed 7 --out ";
  const int ra = std::system((cmd + "\"" + a.string() + "\" > \"" + (root / "a.log").string() + "\"").c_str());
  const int rb = std::system((cmd + "\"" + b.string() + "\" > \"" + (root / "b.log").string() + "\"").c_str());
  (void)ra, (void)rb;
  std::size_t files = 0, same = 0;
  if (fs::exists(a)) {
    for (const auto& e : fs::directory_iterator(a)) {
      ++files;
      const fs::path other = b / e.path().filename();
      if (fs::exists(other) && slurp(e.path()) == slurp(other)) ++same;
    }
  }
  const bool ok = files == catalog().size() && same == files;
  report(12, "determinism", ok, std::to_string(same) + " of " + std::to_string(files) + " CSV files identical");
  if (ok) fs::remove_all(root);
}

}  // namespace

int main() {
  using Check = void (*)();
  for (Check c : {metric_axioms, geodesics, hyperbolicity, composition, norm_asymptotic, slopes, tukia2, qs, corridors,
                  qie, morse, determinism}) {
    try {
      c();
    } catch (const std::exception& e) {
      std::printf("error: %s\n", e.what());
      ++failures;
    }
  }
  std::printf("%s\n", failures == 0 ? "ALL PASS" : "FAILURES");
  return failures == 0 ? 0 : 1;
}
