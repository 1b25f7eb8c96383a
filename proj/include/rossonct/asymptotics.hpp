#pragma once

// Implied-constant fitting, the two norm-comparison verifiers for
// isomorphisms of parabolic lattices, the quasisymmetry probe, and
// quasigeodesic / Morse checks.

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rossonct/heisenberg.hpp"
#include "rossonct/hyperspace.hpp"
#include "rossonct/isometry.hpp"

namespace rossonct {

struct AsymFit {
  double alpha = 0.0;
  double c_plus = 0.0;
  /// min and max of y/x over samples with x >= 1 (NaN if there are none).
  double corridor_lo = 0.0;
  double corridor_hi = 0.0;
  double residual_max = 0.0;
  std::size_t count = 0;
};

/// Least-squares y = alpha x + c_plus.
AsymFit fit_affine(const std::vector<std::pair<double, double>>& samples);

/// Source lattice, target lattice and the images of the source generators.
struct GroupPair {
  ParabolicLattice source;
  ParabolicLattice target;
  std::vector<NElement> images;
  std::string label() const { return source.label + "->" + target.label; }
};

/// Generator i of the source goes to generator i of the target.
GroupPair make_pair(const ParabolicLattice& source, const ParabolicLattice& target);
GroupPair identity_pair(const ParabolicLattice& L);

/// Images of the generators and their inverses, in WeightedGroup::standard order.
std::vector<NElement> standard_images(const GroupPair& pair);

struct Tukia1Result {
  AsymFit at_r;
  AsymFit at_2r;
  double homomorphism_defect = 0.0;
  bool pass = false;
};

/// Fit of ||Phi(h)|| against ||h|| over the word ball of radius r and 2r.
/// Passes when the corridor is finite and each end moves by at most a factor
/// 1.5 under doubling.
Tukia1Result verify_tukia1(const GroupPair& pair, double radius);

struct WitnessSample {
  double t = 0.0;  // n for powers, R for balls
  double x = 0.0;  // source quantity
  double y = 0.0;  // image quantity
};

struct Witness {
  std::string name;
  /// slope(y vs log t) / slope(x vs log t).
  double alpha = 0.0;
  std::vector<WitnessSample> samples;
};

/// max(|a - b|, |1/a - 1/b|): a gap in forced slopes, symmetric under
/// swapping source and target.
double alpha_gap(double a, double b);

struct Tukia2Result {
  bool holds = false;
  double alpha = 0.0;
  double gap = 0.0;
  /// The two witnesses with the largest gap (holds: first two).
  Witness first;
  Witness second;
  std::vector<Witness> witnesses;
  /// Max residual of the pooled power fit on n <= n_max/10 and n <= n_max.
  double residual_short = 0.0;
  double residual_long = 0.0;
};

inline constexpr double kAlphaGapHolds = 0.3;

/// Tests whether one slope alpha fits ||Phi(h)|| ~ alpha ||h|| with bounded
/// additive error. Witness sequences: powers of each generator (n log-spaced
/// up to n_max), and over word balls of radius R <= radius/2 the sup of the
/// norm and the inf over the complement, on both sides.
Tukia2Result verify_tukia2(const GroupPair& pair, double radius, long long n_max = 1000000);

struct QsRow {
  long long n = 0;
  double delta = 0.0;  // ||h2^n|| - ||h1^n||
  double Delta = 0.0;  // ||Phi(h2)^n|| - ||Phi(h1)^n||
};

struct QsProbe {
  std::vector<QsRow> rows;
  double delta_growth = 0.0;  // |delta(n_max)| - |delta(n_max / 100)|
  double Delta_growth = 0.0;
  bool fail_qs = false;
};

/// Tabulates the norm differences that a quasisymmetric boundary map would
/// have to control. zeta must not be fixed by the source group.
QsProbe quasisymmetry_probe(const GroupPair& pair, const BPoint& zeta, long long n_max);

class QuasigeodesicRejected : public std::runtime_error {
 public:
  QuasigeodesicRejected(double k, double cap);
  double K;
};

inline constexpr double kQuasigeodesicCap = 5.0;

struct PathPoint {
  double t;
  HPoint x;
};

/// Smallest K >= 1 with dt/K - K <= d <= K dt + K over all pairs.
double quasigeodesic_check(const std::vector<PathPoint>& path, double K_cap = kQuasigeodesicCap);
/// Same with distances supplied by dist(i, j), i < j.
double quasigeodesic_check(const std::vector<double>& t, const std::function<double(std::size_t, std::size_t)>& dist,
                           double K_cap = kQuasigeodesicCap);

/// Two-sided Hausdorff distance between the path points and the geodesic
/// [first, last] sampled every `step`.
double morse_check(const std::vector<HPoint>& path, double K, double step = 0.01);

/// Orbit path o, g1 o, g1 g2 o, ... of a word in isometries. Vertices far from
/// o are out of reach of double precision, so every quantity is evaluated in
/// the frame of a nearby vertex through products of subwords.
struct OrbitPath {
  HPoint base;
  std::vector<Isometry> letters;
};

/// Alternating word u v u v ... with u = h1^N and v = s h2^N s, where h1, h2
/// generate H and s is the involution fixing o that swaps [f0] and [f1]. The
/// group <u, v> is free by ping-pong.
OrbitPath pingpong_path(std::size_t length, long long N);
/// The involution s above.
Isometry swap_involution();

struct OrbitPathReport {
  double K = 0.0;
  double hausdorff = 0.0;
  double length = 0.0;  // sum of step lengths
  double span = 0.0;    // d(first, last)
};

/// K over the vertices parametrised by arc length, and the Hausdorff distance
/// between the vertices and the geodesic [first, last].
OrbitPathReport analyse_orbit_path(const OrbitPath& path, double step = 0.05, double K_cap = kQuasigeodesicCap);

}  // namespace rossonct
