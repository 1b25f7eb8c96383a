#include "rossonct/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "rossonct/wordmetric.hpp"

namespace rossonct {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Integers spread evenly in log scale over [lo, hi], including both ends.
std::vector<long long> log_grid(long long lo, long long hi, int per_decade) {
  std::set<long long> s{lo, hi};
  const double a = std::log10(static_cast<double>(lo));
  const double b = std::log10(static_cast<double>(hi));
  const int steps = std::max(1, static_cast<int>(std::ceil((b - a) * per_decade)));
  for (int k = 0; k <= steps; ++k) {
    s.insert(std::llround(std::pow(10.0, a + (b - a) * k / steps)));
  }
  return {s.begin(), s.end()};
}

double slope_vs_log(const std::vector<WitnessSample>& w, bool image) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& s : w) pts.emplace_back(std::log(s.t), image ? s.y : s.x);
  return fit_affine(pts).alpha;
}

Witness make_witness(std::string name, std::vector<WitnessSample> samples) {
  Witness w{std::move(name), kNaN, std::move(samples)};
  const double sx = slope_vs_log(w.samples, false);
  const double sy = slope_vs_log(w.samples, true);
  if (std::abs(sx) > 1e-6) w.alpha = sy / sx;
  return w;
}

std::vector<std::pair<double, double>> xy(const std::vector<BallEntry>& b, const std::vector<NElement>& img) {
  std::vector<std::pair<double, double>> pts;
  pts.reserve(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) pts.emplace_back(heis_norm(b[i].element), heis_norm(img[i]));
  return pts;
}

}  // namespace

AsymFit fit_affine(const std::vector<std::pair<double, double>>& samples) {
  if (samples.size() < 3) throw std::invalid_argument("fit needs at least 3 samples");
  double xmin = samples[0].first, xmax = xmin;
  double sx = 0, sy = 0;
  for (const auto& [x, y] : samples) {
    xmin = std::min(xmin, x);
    xmax = std::max(xmax, x);
    sx += x;
    sy += y;
  }
  if (!(xmax - xmin > 1e-12 * std::max(1.0, std::abs(xmax)))) throw std::invalid_argument("degenerate x-range in fit");
  const double n = static_cast<double>(samples.size());
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (const auto& [x, y] : samples) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  AsymFit f;
  f.alpha = sxy / sxx;
  f.c_plus = my - f.alpha * mx;
  f.count = samples.size();
  f.corridor_lo = kNaN;
  f.corridor_hi = kNaN;
  bool any = false;
  for (const auto& [x, y] : samples) {
    f.residual_max = std::max(f.residual_max, std::abs(y - (f.alpha * x + f.c_plus)));
    if (x >= 1.0) {
      const double r = y / x;
      f.corridor_lo = any ? std::min(f.corridor_lo, r) : r;
      f.corridor_hi = any ? std::max(f.corridor_hi, r) : r;
      any = true;
    }
  }
  return f;
}

GroupPair make_pair(const ParabolicLattice& source, const ParabolicLattice& target) {
  if (source.generators.size() != target.generators.size()) {
    throw std::invalid_argument("lattices " + source.label + " and " + target.label + " have different ranks");
  }
  return {source, target, target.generators};
}

GroupPair identity_pair(const ParabolicLattice& L) { return {L, L, L.generators}; }

std::vector<NElement> standard_images(const GroupPair& pair) {
  std::vector<NElement> out;
  for (const auto& g : pair.images) {
    out.push_back(g);
    out.push_back(g.inverse());
  }
  return out;
}

Tukia1Result verify_tukia1(const GroupPair& pair, double radius) {
  const WeightedGroup G = WeightedGroup::standard(pair.source);
  const auto gi = standard_images(pair);
  Tukia1Result r;
  const auto b1 = ball(G, radius);
  const auto b2 = ball(G, 2.0 * radius);
  r.at_r = fit_affine(xy(b1, images_along(b1, gi)));
  r.at_2r = fit_affine(xy(b2, images_along(b2, gi)));
  r.homomorphism_defect = homomorphism_defect(G, b2, gi);
  auto finite = [](const AsymFit& f) {
    return std::isfinite(f.corridor_lo) && std::isfinite(f.corridor_hi) && f.corridor_lo > 0.0;
  };
  r.pass = finite(r.at_r) && finite(r.at_2r) && r.at_2r.corridor_hi <= 1.5 * r.at_r.corridor_hi &&
           r.at_2r.corridor_lo >= r.at_r.corridor_lo / 1.5 && r.homomorphism_defect <= 1e-6;
  return r;
}

double alpha_gap(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b) || a == 0.0 || b == 0.0) return kNaN;
  return std::max(std::abs(a - b), std::abs(1.0 / a - 1.0 / b));
}

Tukia2Result verify_tukia2(const GroupPair& pair, double radius, long long n_max) {
  if (n_max < 100) throw std::invalid_argument("n_max must be at least 100");
  if (!(radius >= 16.0)) throw std::invalid_argument("radius must be at least 16");
  Tukia2Result r;

  // Generator powers, in closed form.
  const auto grid = log_grid(10, n_max, 8);
  std::vector<std::pair<double, double>> pooled_short, pooled_long;
  for (std::size_t i = 0; i < pair.source.generators.size(); ++i) {
    std::vector<WitnessSample> s;
    for (long long n : grid) {
      const double x = heis_norm(power(pair.source.generators[i], n));
      const double y = heis_norm(power(pair.images[i], n));
      s.push_back({static_cast<double>(n), x, y});
      pooled_long.emplace_back(x, y);
      if (n * 10 <= n_max) pooled_short.emplace_back(x, y);
    }
    r.witnesses.push_back(make_witness("power-g" + std::to_string(i + 1), std::move(s)));
  }

  // Word balls: sup of the norm, and inf over the complement.
  const WeightedGroup G = WeightedGroup::standard(pair.source);
  const auto b = ball(G, radius);
  const auto img = images_along(b, standard_images(pair));
  const auto levels = static_cast<std::size_t>(std::floor(radius + 1e-9));
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> max_x(levels + 1, -inf), max_y(levels + 1, -inf), min_x(levels + 1, inf), min_y(levels + 1, inf);
  for (std::size_t i = 0; i < b.size(); ++i) {
    const auto k = static_cast<std::size_t>(std::llround(b[i].dist));
    const double x = heis_norm(b[i].element), y = heis_norm(img[i]);
    max_x[k] = std::max(max_x[k], x);
    max_y[k] = std::max(max_y[k], y);
    min_x[k] = std::min(min_x[k], x);
    min_y[k] = std::min(min_y[k], y);
  }
  std::vector<WitnessSample> sup, cinf;
  for (long long R : log_grid(4, static_cast<long long>(levels / 2), 12)) {
    double sx = -inf, sy = -inf, cx = inf, cy = inf;
    for (std::size_t k = 0; k <= levels; ++k) {
      if (k <= static_cast<std::size_t>(R)) {
        sx = std::max(sx, max_x[k]);
        sy = std::max(sy, max_y[k]);
      } else {
        cx = std::min(cx, min_x[k]);
        cy = std::min(cy, min_y[k]);
      }
    }
    sup.push_back({static_cast<double>(R), sx, sy});
    cinf.push_back({static_cast<double>(R), cx, cy});
  }
  r.witnesses.push_back(make_witness("ball-sup", std::move(sup)));
  r.witnesses.push_back(make_witness("ball-complement-inf", std::move(cinf)));

  r.first = r.witnesses[0];
  r.second = r.witnesses[1];
  r.gap = alpha_gap(r.first.alpha, r.second.alpha);
  if (std::isnan(r.gap)) r.gap = -1.0;
  for (std::size_t i = 0; i < r.witnesses.size(); ++i)
    for (std::size_t j = i + 1; j < r.witnesses.size(); ++j) {
      const double g = alpha_gap(r.witnesses[i].alpha, r.witnesses[j].alpha);
      if (std::isfinite(g) && g > r.gap) {
        r.gap = g;
        r.first = r.witnesses[i];
        r.second = r.witnesses[j];
      }
    }

  const AsymFit fs = fit_affine(pooled_short);
  const AsymFit fl = fit_affine(pooled_long);
  r.residual_short = fs.residual_max;
  r.residual_long = fl.residual_max;
  r.alpha = fl.alpha;
  const bool stable = r.residual_long <= 1.1 * r.residual_short + 0.05;
  r.holds = r.gap >= 0.0 && r.gap <= kAlphaGapHolds && stable;
  return r;
}

QsProbe quasisymmetry_probe(const GroupPair& pair, const BPoint& zeta, long long n_max) {
  if (pair.source.generators.size() < 2) throw std::invalid_argument("probe needs two generators");
  if (n_max < 100) throw std::invalid_argument("n_max must be at least 100");
  const HPoint o = HPoint::origin(zeta.model());
  bool moved = false;
  for (const auto& g : pair.source.generators) {
    const Isometry m = to_matrix(g);
    if (!(m.model() == zeta.model())) throw ModelMismatch();
    if (boundary_separation(apply(m, zeta), zeta, o) > 1e-6) moved = true;
  }
  if (!moved) throw std::invalid_argument("zeta is fixed by the source group");

  const NElement& h1 = pair.source.generators[0];
  const NElement& h2 = pair.source.generators[1];
  const NElement& k1 = pair.images[0];
  const NElement& k2 = pair.images[1];
  QsProbe p;
  auto row = [&](long long n) {
    return QsRow{n, heis_norm(power(h2, n)) - heis_norm(power(h1, n)), heis_norm(power(k2, n)) - heis_norm(power(k1, n))};
  };
  for (long long n : log_grid(1, n_max, 6)) p.rows.push_back(row(n));
  const long long n_lo = std::max(1LL, n_max / 100);
  const QsRow lo = row(n_lo), hi = row(n_max);
  p.delta_growth = std::abs(hi.delta) - std::abs(lo.delta);
  p.Delta_growth = std::abs(hi.Delta) - std::abs(lo.Delta);
  const double L = std::log(static_cast<double>(n_max) / static_cast<double>(n_lo));
  auto diverges = [&](double g) { return g >= 0.5 * L; };
  auto bounded = [&](double g) { return std::abs(g) <= 0.1 * L; };
  p.fail_qs = (diverges(p.delta_growth) && bounded(p.Delta_growth)) ||
              (diverges(p.Delta_growth) && bounded(p.delta_growth));
  return p;
}

QuasigeodesicRejected::QuasigeodesicRejected(double k, double cap)
    : std::runtime_error("path is not a quasigeodesic: K = " + std::to_string(k) + " exceeds cap " +
                         std::to_string(cap)),
      K(k) {}

double quasigeodesic_check(const std::vector<double>& t, const std::function<double(std::size_t, std::size_t)>& dist,
                           double K_cap) {
  if (t.size() < 2) throw std::invalid_argument("quasigeodesic check needs at least 2 points");
  for (std::size_t i = 1; i < t.size(); ++i)
    if (!(t[i] > t[i - 1])) throw std::invalid_argument("path parameters must be strictly increasing");
  double K = 1.0;
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = i + 1; j < t.size(); ++j) {
      const double dt = t[j] - t[i];
      const double d = dist(i, j);
      K = std::max(K, d / (dt + 1.0));
      K = std::max(K, 0.5 * (-d + std::sqrt(d * d + 4.0 * dt)));
    }
  if (K > K_cap) throw QuasigeodesicRejected(K, K_cap);
  return K;
}

double quasigeodesic_check(const std::vector<PathPoint>& path, double K_cap) {
  std::vector<double> t;
  t.reserve(path.size());
  for (const auto& p : path) t.push_back(p.t);
  return quasigeodesic_check(t, [&](std::size_t i, std::size_t j) { return distance(path[i].x, path[j].x); }, K_cap);
}

double morse_check(const std::vector<HPoint>& path, double K, double step) {
  if (path.size() < 2) throw std::invalid_argument("Morse check needs at least 2 points");
  if (!(K >= 1.0)) throw std::invalid_argument("quasigeodesic constant must be at least 1");
  if (!(step > 0.0)) throw std::invalid_argument("step must be positive");
  const HPoint& a = path.front();
  const HPoint& b = path.back();
  const double D = distance(a, b);
  if (D <= 1e-8) throw std::invalid_argument("Morse check endpoints coincide");
  double h = 0.0;
  for (const auto& x : path) h = std::max(h, distance_to_segment(x, a, b));
  const auto n = static_cast<std::size_t>(std::ceil(D / step));
  for (std::size_t k = 0; k <= n; ++k) {
    const HPoint y = geodesic_point(a, b, std::min(D, static_cast<double>(k) * step));
    double m = std::numeric_limits<double>::infinity();
    for (const auto& x : path) m = std::min(m, distance(y, x));
    h = std::max(h, m);
  }
  return h;
}

Isometry swap_involution() {
  const Model m = heisenberg_model(Field::C, 3);
  return Isometry(m, FMatrix::from_reals(Field::C, 4, 4, {0, -2, 0, 0, -0.5, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1}));
}

OrbitPath pingpong_path(std::size_t length, long long N) {
  const Isometry s = swap_involution();
  const Isometry u = to_matrix(power(theta(1, 0, 0), N));
  const Isometry v = s * to_matrix(power(theta(0, 1, 0), N)) * s;
  OrbitPath p{HPoint::origin(s.model()), {}};
  for (std::size_t k = 0; k < length; ++k) p.letters.push_back(k % 2 == 0 ? u : v);
  return p;
}

namespace {

constexpr double kFrameDepth = 12.0;

// Stand-in for g(o): the point at depth 12 on the ray from o toward g(o).
// Long segments lose precision to cosh cancellation, and near o the segment
// between two stand-ins agrees with the true one up to about e^-12 as long as
// o stays well inside the thin part.
HPoint stand_in(const Isometry& g, const HPoint& o, double dist) {
  if (dist <= kFrameDepth) return apply(g, o);
  if (dist <= 30.0) return geodesic_point(o, apply(g, o), kFrameDepth);
  FVector r = g.matrix().apply(o.rep());
  r = r.times(1.0 / r.max_abs());
  return ray_point(o, BPoint(o.model(), r), kFrameDepth);
}

}  // namespace

OrbitPathReport analyse_orbit_path(const OrbitPath& path, double step, double K_cap) {
  const std::size_t L = path.letters.size();
  if (L < 1) throw std::invalid_argument("orbit path needs at least one letter");
  const HPoint& o = path.base;
  OrbitPathReport rep;

  std::vector<std::vector<double>> D(L + 1, std::vector<double>(L + 1, 0.0));
  for (std::size_t i = 0; i < L; ++i) {
    Isometry m = Isometry::identity(o.model());
    for (std::size_t j = i + 1; j <= L; ++j) {
      m = (m * path.letters[j - 1]).renormalized();
      D[i][j] = D[j][i] = norm_g(m, o);
    }
  }
  std::vector<double> t(L + 1, 0.0);
  for (std::size_t k = 1; k <= L; ++k) t[k] = t[k - 1] + D[k - 1][k];
  rep.length = t[L];
  rep.span = D[0][L];
  rep.K = quasigeodesic_check(t, [&](std::size_t i, std::size_t j) { return D[i][j]; }, K_cap);

  std::vector<Isometry> prefix(L + 1, Isometry::identity(o.model()));
  std::vector<Isometry> suffix(L + 1, Isometry::identity(o.model()));
  for (std::size_t k = 1; k <= L; ++k) prefix[k] = (prefix[k - 1] * path.letters[k - 1]).renormalized();
  for (std::size_t k = L; k-- > 0;) suffix[k] = (path.letters[k] * suffix[k + 1]).renormalized();

  double h = 0.0;
  for (std::size_t k = 0; k <= L; ++k) {
    // Frame of vertex k: it sits at o, the endpoints at P_k^-1 o and S_k o.
    const HPoint a = k == 0 ? o : stand_in(prefix[k].inverse(), o, D[0][k]);
    const HPoint b = k == L ? o : stand_in(suffix[k], o, D[k][L]);
    const SegmentProjection here = project_to_segment(o, a, b);
    h = std::max(h, here.dist);
    if (k == L) break;
    std::vector<HPoint> near{o, apply(path.letters[k], o)};
    if (k >= 1) near.push_back(apply(path.letters[k - 1].inverse(), o));
    if (k + 2 <= L) near.push_back(apply(path.letters[k] * path.letters[k + 1], o));
    const double t1 = project_to_segment(near[1], a, b).t;
    const double lo = std::min(here.t, t1), hi = std::max(here.t, t1);
    for (double s = lo; s <= hi + 1e-12; s += step) {
      const HPoint y = geodesic_point(a, b, std::min(s, hi));
      double m = std::numeric_limits<double>::infinity();
      for (const auto& x : near) m = std::min(m, distance(y, x));
      h = std::max(h, m);
    }
  }
  rep.hausdorff = h;
  return rep;
}

}  // namespace rossonct
