#pragma once

// Weighted Cayley metrics on subgroups of N_p, by uniform-cost search.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "rossonct/heisenberg.hpp"
#include "rossonct/hyperspace.hpp"

namespace rossonct {

struct Generator {
  std::string label;
  NElement element;
  double weight = 1.0;
};

class WeightedGroup {
 public:
  /// Generators must be closed under inversion with matching weights.
  WeightedGroup(Field f, int d, std::vector<Generator> gens);
  /// The lattice generators and their inverses, unit weights, ordered
  /// g1, g1^-1, g2, g2^-1, ...
  static WeightedGroup standard(const ParabolicLattice& L);
  /// Subgroup generated by the lattice's quasi-commutator generators.
  static WeightedGroup quasi_commutator(const ParabolicLattice& L);

  Field field() const noexcept { return field_; }
  int d() const noexcept { return d_; }
  const std::vector<Generator>& generators() const noexcept { return gens_; }
  NElement identity() const { return NElement::identity(field_, d_); }

  std::size_t node_budget() const noexcept { return budget_; }
  void set_node_budget(std::size_t n) noexcept { budget_ = n; }

 private:
  Field field_;
  int d_;
  std::vector<Generator> gens_;
  std::size_t budget_ = 5'000'000;
};

/// Hash index over N_p elements with tolerant equality:
/// |x - y| <= 1e-9 max(1, |x|) in every real coordinate.
class ElementIndex {
 public:
  std::optional<std::size_t> find(const NElement& x) const;
  /// Appends x; the caller checks it is not already present.
  std::size_t insert(const NElement& x);
  std::size_t size() const noexcept { return elements_.size(); }
  const NElement& at(std::size_t i) const { return elements_.at(i); }

 private:
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> cells_;
  std::vector<std::vector<double>> coords_;
  std::vector<NElement> elements_;
};

inline constexpr double kCoordTolerance = 1e-9;

struct BallEntry {
  NElement element;
  double dist = 0.0;
  /// Index of the search-tree parent in the same ball (root: itself).
  std::size_t parent = 0;
  /// Index into generators() of the last letter (root: -1).
  int generator = -1;
};

/// All elements within weighted distance `radius` of e, in nondecreasing
/// distance order. Throws std::length_error past the group's node budget.
std::vector<BallEntry> ball(const WeightedGroup& G, double radius);

/// Uniform-cost search confined to `domain` (which must contain e).
/// Distances are exact whenever shortest paths to domain elements stay in the
/// domain, e.g. word-metric balls, or generating sets containing the domain.
std::vector<BallEntry> ball_within(const WeightedGroup& G, double radius, const ElementIndex& domain);

/// A ball with lookup by element.
class BallIndex {
 public:
  BallIndex(const WeightedGroup& G, double radius);
  explicit BallIndex(std::vector<BallEntry> entries);
  std::optional<double> find(const NElement& x) const;
  std::optional<std::size_t> index_of(const NElement& x) const { return index_.find(x); }
  const std::vector<BallEntry>& entries() const noexcept { return entries_; }

 private:
  std::vector<BallEntry> entries_;
  ElementIndex index_;
};

/// Weighted distance from g1 to g2, i.e. the length of g1^-1 g2.
/// Throws std::runtime_error if it exceeds radius_cap.
double word_dist(const WeightedGroup& G, const NElement& g1, const NElement& g2, double radius_cap);

/// Images of ball elements under the homomorphism sending generator i to
/// gen_images[i], following the search tree.
std::vector<NElement> images_along(const std::vector<BallEntry>& b, const std::vector<NElement>& gen_images);
/// Largest discrepancy between image(g s) and image(g) image(s) over ball
/// elements g and generators s with g s also in the ball.
double homomorphism_defect(const WeightedGroup& G, const std::vector<BallEntry>& b,
                           const std::vector<NElement>& gen_images);

/// Multiplicative and additive constants relating word length W to orbit
/// displacement D.
struct QieCorridor {
  double mult_lo = 1.0;  // min W/D over D >= 1
  double mult_hi = 1.0;  // max W/D over D >= 1
  double add = 0.0;      // max |W - D|
  std::size_t pairs = 0;
};

/// Pairs (g1, g2) reduce to (e, g1^-1 g2) by left invariance of both
/// distances, so the corridor is taken over (e, g) for g in ball(G, radius).
QieCorridor orbit_qie_check(const WeightedGroup& G, const HPoint& base, double radius);
/// Same over an explicit sample set, with distances from ball_within.
QieCorridor orbit_qie_check(const WeightedGroup& G, const HPoint& base, const std::vector<NElement>& samples,
                            double radius_cap);

}  // namespace rossonct
