#include "rossonct/wordmetric.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <stdexcept>

#include "rossonct/isometry.hpp"

namespace rossonct {

namespace {

constexpr double kCellsPerUnit = 1024.0;

double coord_tol(double x) { return kCoordTolerance * std::max(1.0, std::abs(x)); }

std::uint64_t mix(std::uint64_t h, std::int64_t c) {
  std::uint64_t z = h ^ (static_cast<std::uint64_t>(c) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

bool near_equal(const std::vector<double>& x, const std::vector<double>& y) {
  for (std::size_t i = 0; i < x.size(); ++i)
    if (std::abs(x[i] - y[i]) > coord_tol(x[i])) return false;
  return true;
}

bool lex_less(const std::vector<double>& x, const std::vector<double>& y) {
  return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
}

struct Search {
  std::vector<BallEntry> nodes;
  std::vector<std::vector<double>> keys;
  std::vector<bool> done;
  std::vector<std::size_t> order;
  ElementIndex index;
};

// Uniform-cost search from e. Stops early once `target` is settled.
Search run_search(const WeightedGroup& G, double cap, const ElementIndex* domain, const NElement* target) {
  Search s;
  const auto& gens = G.generators();
  std::vector<std::size_t> perm(gens.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) { return gens[a].weight < gens[b].weight; });

  auto add = [&](const NElement& x, double dist, std::size_t parent, int gen) {
    s.index.insert(x);
    s.nodes.push_back({x, dist, parent, gen});
    s.keys.push_back(x.coords());
    s.done.push_back(false);
    if (s.nodes.size() > G.node_budget()) {
      throw std::length_error("ball enumeration exceeded the node budget of " + std::to_string(G.node_budget()));
    }
    return s.nodes.size() - 1;
  };

  // Ties are broken lexicographically on coordinates.
  auto later = [&](const std::pair<double, std::size_t>& a, const std::pair<double, std::size_t>& b) {
    if (a.first != b.first) return a.first > b.first;
    return lex_less(s.keys[b.second], s.keys[a.second]);
  };
  std::priority_queue<std::pair<double, std::size_t>, std::vector<std::pair<double, std::size_t>>, decltype(later)>
      pq(later);

  const NElement e = G.identity();
  add(e, 0.0, 0, -1);
  pq.emplace(0.0, 0);
  std::optional<std::size_t> goal;
  std::vector<double> target_key;
  if (target) {
    goal = s.index.find(*target);
    target_key = target->coords();
  }
  const double slack = 1e-9 * std::max(1.0, cap);
  while (!pq.empty()) {
    const auto [d, i] = pq.top();
    pq.pop();
    if (s.done[i] || d > s.nodes[i].dist) continue;
    s.done[i] = true;
    s.order.push_back(i);
    if (goal && *goal == i) break;
    const NElement here = s.nodes[i].element;
    for (std::size_t gi : perm) {
      const double nd = d + gens[gi].weight;
      if (nd > cap + slack) break;
      const NElement child = compose(here, gens[gi].element);
      if (domain && !domain->find(child)) continue;
      if (auto j = s.index.find(child)) {
        if (!s.done[*j] && nd < s.nodes[*j].dist - 1e-12) {
          s.nodes[*j].dist = nd;
          s.nodes[*j].parent = i;
          s.nodes[*j].generator = static_cast<int>(gi);
          pq.emplace(nd, *j);
        }
      } else {
        const std::size_t j2 = add(child, nd, i, static_cast<int>(gi));
        pq.emplace(nd, j2);
        if (target && !goal && near_equal(target_key, s.keys[j2])) goal = j2;
      }
    }
  }
  return s;
}

std::vector<BallEntry> settled(const Search& s) {
  // Re-index parents into settled order.
  std::vector<std::size_t> pos(s.nodes.size(), 0);
  for (std::size_t k = 0; k < s.order.size(); ++k) pos[s.order[k]] = k;
  std::vector<BallEntry> out;
  out.reserve(s.order.size());
  for (std::size_t i : s.order) {
    BallEntry e = s.nodes[i];
    e.parent = pos[e.parent];
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace

WeightedGroup::WeightedGroup(Field f, int d, std::vector<Generator> gens) : field_(f), d_(d), gens_(std::move(gens)) {
  if (d < 2) throw std::invalid_argument("N_p needs d >= 2");
  ElementIndex idx;
  for (const auto& g : gens_) {
    if (g.element.field() != f || g.element.d() != d) throw std::invalid_argument("generator " + g.label + " has wrong shape");
    if (!(g.weight > 0.0) || !std::isfinite(g.weight)) throw std::invalid_argument("generator " + g.label + " needs positive weight");
    idx.insert(g.element);
  }
  for (const auto& g : gens_) {
    const auto j = idx.find(g.element.inverse());
    if (!j) throw std::invalid_argument("generating set is not symmetric: missing inverse of " + g.label);
    if (std::abs(gens_[*j].weight - g.weight) > 1e-12 * std::max(1.0, g.weight)) {
      throw std::invalid_argument("inverse of " + g.label + " carries a different weight");
    }
  }
}

WeightedGroup WeightedGroup::standard(const ParabolicLattice& L) {
  std::vector<Generator> gens;
  for (std::size_t i = 0; i < L.generators.size(); ++i) {
    const std::string name = "g" + std::to_string(i + 1);
    gens.push_back({name, L.generators[i], 1.0});
    gens.push_back({name + "^-1", L.generators[i].inverse(), 1.0});
  }
  return WeightedGroup(L.field, L.d, std::move(gens));
}

WeightedGroup WeightedGroup::quasi_commutator(const ParabolicLattice& L) {
  std::vector<Generator> gens;
  for (std::size_t i = 0; i < L.quasi_commutator.size(); ++i) {
    const std::string name = "z" + std::to_string(i + 1);
    gens.push_back({name, L.quasi_commutator[i], 1.0});
    gens.push_back({name + "^-1", L.quasi_commutator[i].inverse(), 1.0});
  }
  return WeightedGroup(L.field, L.d, std::move(gens));
}

std::optional<std::size_t> ElementIndex::find(const NElement& x) const {
  const std::vector<double> c = x.coords();
  // Probe every cell combination the tolerance window touches.
  std::vector<std::int64_t> lo(c.size()), hi(c.size()), cur(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double t = coord_tol(c[i]);
    lo[i] = std::llround((c[i] - t) * kCellsPerUnit);
    hi[i] = std::llround((c[i] + t) * kCellsPerUnit);
    cur[i] = lo[i];
  }
  for (;;) {
    std::uint64_t h = 0;
    for (auto v : cur) h = mix(h, v);
    if (auto it = cells_.find(h); it != cells_.end()) {
      for (std::size_t k : it->second)
        if (near_equal(c, coords_[k])) return k;
    }
    std::size_t i = 0;
    while (i < cur.size() && cur[i] == hi[i]) {
      cur[i] = lo[i];
      ++i;
    }
    if (i == cur.size()) break;
    ++cur[i];
  }
  return std::nullopt;
}

std::size_t ElementIndex::insert(const NElement& x) {
  std::vector<double> c = x.coords();
  std::uint64_t h = 0;
  for (double v : c) h = mix(h, std::llround(v * kCellsPerUnit));
  const std::size_t k = elements_.size();
  cells_[h].push_back(k);
  coords_.push_back(std::move(c));
  elements_.push_back(x);
  return k;
}

std::vector<BallEntry> ball(const WeightedGroup& G, double radius) {
  if (!(radius >= 0.0)) throw std::invalid_argument("ball radius must be nonnegative");
  return settled(run_search(G, radius, nullptr, nullptr));
}

std::vector<BallEntry> ball_within(const WeightedGroup& G, double radius, const ElementIndex& domain) {
  if (!(radius >= 0.0)) throw std::invalid_argument("ball radius must be nonnegative");
  if (!domain.find(G.identity())) throw std::invalid_argument("search domain must contain the identity");
  return settled(run_search(G, radius, &domain, nullptr));
}

BallIndex::BallIndex(const WeightedGroup& G, double radius) : BallIndex(ball(G, radius)) {}

BallIndex::BallIndex(std::vector<BallEntry> entries) : entries_(std::move(entries)) {
  for (const auto& e : entries_) index_.insert(e.element);
}

std::optional<double> BallIndex::find(const NElement& x) const {
  if (auto i = index_.find(x)) return entries_[*i].dist;
  return std::nullopt;
}

double word_dist(const WeightedGroup& G, const NElement& g1, const NElement& g2, double radius_cap) {
  if (!(radius_cap > 0.0)) throw std::invalid_argument("radius cap must be positive");
  const NElement target = compose(g1.inverse(), g2);
  const Search s = run_search(G, radius_cap, nullptr, &target);
  if (auto j = s.index.find(target); j && s.done[*j]) return s.nodes[*j].dist;
  throw std::runtime_error("target not reached within radius cap " + std::to_string(radius_cap));
}

std::vector<NElement> images_along(const std::vector<BallEntry>& b, const std::vector<NElement>& gen_images) {
  std::vector<NElement> img;
  img.reserve(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (b[i].generator < 0) {
      img.push_back(NElement::identity(gen_images.at(0).field(), gen_images.at(0).d()));
    } else {
      img.push_back(compose(img.at(b[i].parent), gen_images.at(static_cast<std::size_t>(b[i].generator))));
    }
  }
  return img;
}

double homomorphism_defect(const WeightedGroup& G, const std::vector<BallEntry>& b,
                           const std::vector<NElement>& gen_images) {
  const auto img = images_along(b, gen_images);
  BallIndex idx(b);
  double worst = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    for (std::size_t s = 0; s < G.generators().size(); ++s) {
      const auto j = idx.index_of(compose(b[i].element, G.generators()[s].element));
      if (!j) continue;
      worst = std::max(worst, max_abs_diff(img[*j], compose(img[i], gen_images[s])));
    }
  }
  return worst;
}

namespace {

QieCorridor corridor(const std::vector<BallEntry>& b, const HPoint& base) {
  QieCorridor c;
  bool any = false;
  for (const auto& e : b) {
    const double D = norm_g(to_matrix(e.element), base);
    const double W = e.dist;
    ++c.pairs;
    c.add = std::max(c.add, std::abs(W - D));
    if (D >= 1.0) {
      const double r = W / D;
      if (!any) {
        c.mult_lo = c.mult_hi = r;
        any = true;
      } else {
        c.mult_lo = std::min(c.mult_lo, r);
        c.mult_hi = std::max(c.mult_hi, r);
      }
    }
  }
  return c;
}

}  // namespace

QieCorridor orbit_qie_check(const WeightedGroup& G, const HPoint& base, double radius) {
  return corridor(ball(G, radius), base);
}

QieCorridor orbit_qie_check(const WeightedGroup& G, const HPoint& base, const std::vector<NElement>& samples,
                            double radius_cap) {
  ElementIndex domain;
  domain.insert(G.identity());
  for (const auto& s : samples)
    if (!domain.find(s)) domain.insert(s);
  const auto b = ball_within(G, radius_cap, domain);
  if (b.size() != domain.size()) {
    throw std::runtime_error("some samples are not reachable within radius cap " + std::to_string(radius_cap));
  }
  return corridor(b, base);
}

}  // namespace rossonct
