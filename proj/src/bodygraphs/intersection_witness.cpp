#include "bodygraphs/intersection_witness.hpp"

#include <boost/geometry.hpp>
#include <boost/geometry/geometries/linestring.hpp>
#include <boost/geometry/geometries/point_xy.hpp>
#include <boost/geometry/geometries/polygon.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <random>

#include "bodygraphs/spatial.hpp"

namespace bodygraphs {

namespace bg = boost::geometry;

namespace {

using BgPoint = bg::model::d2::point_xy<double>;
using BgPolygon = bg::model::polygon<BgPoint, false, false>;
using BgLine = bg::model::linestring<BgPoint>;

BgPolygon to_polygon(const std::vector<Vec2>& pts, const std::vector<std::uint32_t>& idx) {
  BgPolygon poly;
  for (auto i : idx) bg::append(poly.outer(), BgPoint(pts[i].x, pts[i].y));
  return poly;
}

BgLine to_closed_line(const std::vector<Vec2>& pts, const std::vector<std::uint32_t>& idx) {
  BgLine line;
  for (auto i : idx) bg::append(line, BgPoint(pts[i].x, pts[i].y));
  bg::append(line, BgPoint(pts[idx.front()].x, pts[idx.front()].y));
  return line;
}

double polygon_area(const std::vector<Vec2>& ccw) {
  double a = 0.0;
  for (std::size_t i = 0; i < ccw.size(); ++i) a += cross(ccw[i], ccw[(i + 1) % ccw.size()]);
  return 0.5 * a;
}

bool is_lattice_step(LatticeCoord d) {
  return std::find(kLatticeSteps.begin(), kLatticeSteps.end(), d) != kLatticeSteps.end();
}

class PointIndex {
 public:
  PointIndex(NestedCycleGadget& g) : g_(g) {}
  std::uint32_t add(LatticeCoord c) {
    auto [it, fresh] = index_.try_emplace(c, static_cast<std::uint32_t>(g_.coords.size()));
    if (fresh) {
      g_.coords.push_back(c);
      g_.points.push_back(g_.lattice.point(c));
    }
    return it->second;
  }

 private:
  NestedCycleGadget& g_;
  std::map<LatticeCoord, std::uint32_t> index_;
};

}  // namespace

std::int64_t packing_tail_length(const SymmetricBody& body, const std::vector<Vec2>& cycle) {
  if (cycle.size() < 3) throw Error(ErrorCode::InvalidArgument, "cycle needs at least three points");
  const std::vector<Vec2> hull = convex_hull(cycle);
  std::vector<Vec2> sums;
  sums.reserve(hull.size() * body.size());
  for (const auto& h : hull)
    for (const auto& v : body.vertices()) sums.push_back(h + v);
  const double ceiling = polygon_area(convex_hull(sums)) / body.area();
  return 2 * static_cast<std::int64_t>(std::ceil(ceiling)) + 2;
}

NestedCycleGadget build_nested(const SymmetricBody& body, std::int64_t k, TailPolicy tails, double lattice_theta) {
  if (k < 0) throw Error(ErrorCode::InvalidArgument, "k must be non-negative");
  if (const auto u = body.urtc(); !u.urtc) throw Error(ErrorCode::NotUrtc, "body fails URTC");
  NestedCycleGadget g;
  g.k = k;
  g.tails = tails;
  g.lattice = lattice_from(body, lattice_theta);
  PointIndex index(g);
  g.s0 = index.add({0, 0});
  g.t_k = index.add({1, 0});
  g.kappa.push_back({g.s0, g.t_k});
  std::int64_t t = 1;  // t_{i-1} = t e1
  for (std::int64_t stage = 1; stage <= k; ++stage) {
    const std::int64_t r = t + 1;
    g.radii.push_back(r);
    std::vector<std::uint32_t> sigma;
    for (const auto& c : lattice_circle(r)) {
      if (c == LatticeCoord{r, 0}) {
        // step outside around r e1, which stays empty
        sigma.push_back(index.add({r + 1, -1}));
        sigma.push_back(index.add({r + 1, 0}));
        sigma.push_back(index.add({r, 1}));
      } else {
        sigma.push_back(index.add(c));
      }
    }
    std::vector<std::uint32_t> tau;
    for (const auto& s : kLatticeSteps) tau.push_back(index.add(LatticeCoord{r, 0} + s));

    std::int64_t length = 1;
    if (tails == TailPolicy::Packing) {
      std::vector<Vec2> cyc;
      for (auto i : sigma) cyc.push_back(g.points[i]);
      length = packing_tail_length(body, cyc);
    }
    std::vector<std::uint32_t> kappa{index.add({r + 1, 0})};
    for (std::int64_t i = 1; i <= length; ++i) kappa.push_back(index.add({r + 1 + i, 0}));
    t = r + 1 + length;
    g.t_k = kappa.back();
    g.sigma.push_back(std::move(sigma));
    g.tau.push_back(std::move(tau));
    g.kappa.push_back(std::move(kappa));
  }
  return g;
}

EmbeddedGraph nested_graph(const SymmetricBody& body, const NestedCycleGadget& g) {
  return build_graph(body, g.points, GraphKind::Intersection);
}

NestingReport verify_nesting(const NestedCycleGadget& g) {
  NestingReport rep;
  auto fail = [&](std::size_t level, const std::string& what) {
    rep.pass = false;
    if (!rep.failed_level) {
      rep.failed_level = level;
      rep.detail = what;
    }
  };
  std::optional<BgPolygon> inner;
  std::optional<BgLine> inner_line;
  for (std::size_t i = 0; i < g.sigma.size(); ++i) {
    const auto& cyc = g.sigma[i];
    for (std::size_t a = 0; a < cyc.size(); ++a) {
      if (!is_lattice_step(g.coords[cyc[(a + 1) % cyc.size()]] - g.coords[cyc[a]])) {
        rep.cycles_closed = false;
        fail(i + 1, "consecutive cycle vertices are not lattice neighbours");
        break;
      }
    }
    const BgPolygon poly = to_polygon(g.points, cyc);
    const BgLine line = to_closed_line(g.points, cyc);
    if (!bg::is_simple(poly)) {
      rep.cycles_simple = false;
      fail(i + 1, "cycle is not simple");
    }
    if (!inner) {
      const Vec2 s = g.points[g.s0];
      if (!bg::within(BgPoint(s.x, s.y), poly)) {
        rep.s0_inside = false;
        fail(i + 1, "s0 is not strictly inside sigma_1");
      }
    } else if (!bg::within(*inner, poly) || !bg::disjoint(*inner_line, line)) {
      fail(i + 1, "cycle does not strictly contain the previous one");
    }
    inner = poly;
    inner_line = line;
  }
  return rep;
}

std::vector<TailReport> tail_sufficiency(const SymmetricBody& body, const NestedCycleGadget& g) {
  std::vector<TailReport> out;
  for (std::size_t i = 0; i < g.sigma.size(); ++i) {
    TailReport t;
    t.level = i + 1;
    t.tail_length = static_cast<std::int64_t>(g.kappa[i + 1].size()) - 1;
    std::vector<Vec2> cyc;
    for (auto v : g.sigma[i]) cyc.push_back(g.points[v]);
    std::vector<Vec2> sums;
    for (const auto& h : convex_hull(cyc))
      for (const auto& v : body.vertices()) sums.push_back(h + v);
    t.packing_ceiling = polygon_area(convex_hull(sums)) / body.area();
    t.sufficient = static_cast<double>(t.tail_length / 2) > t.packing_ceiling;
    out.push_back(t);
  }
  return out;
}

std::vector<Vec2> RadialGadget::points() const {
  std::vector<Vec2> out = base.points;
  out.reserve(size());
  for (std::size_t i = 0; i < boundary.size(); ++i)
    for (std::int64_t j = 1; j <= depth[i]; ++j) out.push_back(ray_point(i, j));
  return out;
}

std::vector<std::uint32_t> RadialGadget::alpha(std::int64_t j) const {
  if (j < 1 || j > k) throw Error(ErrorCode::InvalidArgument, "alpha_j needs 1 <= j <= k");
  std::vector<std::uint32_t> out;
  out.reserve(boundary.size());
  for (std::size_t i = 0; i < boundary.size(); ++i) out.push_back(ray_index(i, j));
  return out;
}

std::vector<std::uint32_t> RadialGadget::path(std::size_t i) const {
  if (i >= boundary.size()) throw Error(ErrorCode::InvalidArgument, "path index out of range");
  std::vector<std::uint32_t> out{base.s0};
  for (std::int64_t j = 1; j <= depth[i]; ++j) out.push_back(ray_index(i, j));
  out.push_back(boundary[i]);
  return out;
}

RadialGadget build_radial(const SymmetricBody& body, std::int64_t k, double lattice_theta) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "k must be at least 1");
  RadialGadget q;
  q.k = k;
  q.k_prime = 18 * (k + 1);
  q.base = build_nested(body, q.k_prime, TailPolicy::Minimal, lattice_theta);
  q.boundary = q.base.sigma.back();
  const Vec2 s0 = q.s0();
  q.ray_offset.push_back(0);
  for (std::size_t i = 0; i < q.boundary.size(); ++i) {
    const Vec2 u = q.base.points[q.boundary[i]] - s0;
    const double nu = body.norm(u);
    // vertices needed for a path s0 .. u with steps of length 2
    const auto d = static_cast<std::int64_t>(std::ceil((nu - 2.0 - body.touch_band(u)) / 2.0));
    if (d < 2 * k)
      throw Error(ErrorCode::DepthTooSmall, "d_" + std::to_string(i) + " = " + std::to_string(d) + " < 2k = " +
                                                std::to_string(2 * k));
    q.boundary_norm.push_back(nu);
    q.depth.push_back(d);
    q.unit.push_back(u / nu);
    q.ray_offset.push_back(q.ray_offset.back() + static_cast<std::size_t>(d));
  }
  return q;
}

CycleDistReport verify_cycle_distance(const RadialGadget& q) {
  CycleDistReport rep;
  rep.bound = 2.0 * (static_cast<double>(q.k_prime) / 9.0 - 1.0);
  rep.min_norm = *std::min_element(q.boundary_norm.begin(), q.boundary_norm.end());
  rep.min_depth = *std::min_element(q.depth.begin(), q.depth.end());
  rep.pass = rep.min_norm > rep.bound;
  return rep;
}

std::string AlphaReport::failure() const {
  if (!edges_ok) return "edge " + std::to_string(worst_edge_index) + " has length " + std::to_string(worst_edge);
  if (!annulus_ok)
    return "radius range [" + std::to_string(min_radius) + ", " + std::to_string(max_radius) + "] leaves the annulus";
  if (!winding_ok) return "argument variation is " + std::to_string(winding_turns) + " turns";
  return {};
}

double winding_turns(const std::vector<Vec2>& cycle, Vec2 c) {
  double total = 0.0;
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    const Vec2 a = cycle[i] - c, b = cycle[(i + 1) % cycle.size()] - c;
    total += std::atan2(cross(a, b), dot(a, b));
  }
  return total / (2.0 * std::numbers::pi);
}

double segment_min_norm(const SymmetricBody& body, Vec2 a, Vec2 b, Vec2 c) {
  const Vec2 p = a - c, d = b - a;
  double best = std::fmin(body.norm(p), body.norm(p + d));
  // the norm is linear between crossings of vertex directions
  for (const auto& v : body.vertices()) {
    const double den = cross(v, d);
    if (den == 0.0) continue;
    const double t = -cross(v, p) / den;
    if (t > 0.0 && t < 1.0) best = std::fmin(best, body.norm(p + d * t));
  }
  return best;
}

AlphaReport verify_alpha(const SymmetricBody& body, const RadialGadget& q, const std::vector<Vec2>& drawing,
                         std::int64_t j, AnnulusMode mode) {
  if (drawing.size() != q.size()) throw Error(ErrorCode::InvalidArgument, "drawing size does not match the gadget");
  const std::vector<std::uint32_t> idx = q.alpha(j);
  const Vec2 c = drawing[q.base.s0];
  const double jj = static_cast<double>(j);
  const double lo = mode == AnnulusMode::Canonical ? 2.0 * jj - 1.0 : 2.0 * jj - 2.0;
  const double hi = 2.0 * jj;
  AlphaReport rep;
  rep.j = j;
  rep.min_radius = std::numeric_limits<double>::infinity();
  std::vector<Vec2> cyc;
  cyc.reserve(idx.size());
  for (auto i : idx) cyc.push_back(drawing[i]);
  for (std::size_t i = 0; i < cyc.size(); ++i) {
    const Vec2 a = cyc[i], b = cyc[(i + 1) % cyc.size()];
    const double len = body.norm(b - a);
    if (len > rep.worst_edge) {
      rep.worst_edge = len;
      rep.worst_edge_index = i;
    }
    if (len > 2.0 + body.touch_band(b - a)) rep.edges_ok = false;
    const double r = body.norm(a - c);
    const double band = body.touch_band(a - c);
    if (r < rep.min_radius) {
      rep.min_radius = r;
      rep.worst_vertex = i;
    }
    rep.max_radius = std::fmax(rep.max_radius, r);
    if (r > hi + band) rep.annulus_ok = false;
    if (mode == AnnulusMode::Canonical) {
      const double m = segment_min_norm(body, a, b, c);
      rep.min_radius = std::fmin(rep.min_radius, m);
      if (m < lo - band) rep.annulus_ok = false;
    } else if (!(r > lo)) {
      rep.annulus_ok = false;
    }
  }
  rep.winding_turns = winding_turns(cyc, c);
  rep.winding = static_cast<int>(std::lround(rep.winding_turns));
  rep.winding_ok = std::fabs(rep.winding_turns - rep.winding) < 0.01 && std::abs(rep.winding) == 1;
  return rep;
}

CriticalPairs critical_pairs(const SymmetricBody& body, const std::vector<Vec2>& canonical, double max_eta) {
  if (!(max_eta > 0.0) || max_eta >= 0.1) throw Error(ErrorCode::InvalidArgument, "eta must lie in (0, 0.1)");
  CriticalPairs out;
  // d' lies in [(1-2 eta) d - 2 eta, (1-2 eta) d + 2 eta]
  out.lo = 2.0 - 4.0 * max_eta;
  double span = 0.0;
  for (const auto& p : canonical) span = std::fmax(span, length(p));
  const double slack = body.tolerance() * std::fmax(1.0, 2.0 * span + 1.0);
  out.hi = (2.0 + 2.0 * max_eta + slack) / (1.0 - 2.0 * max_eta);
  out.tightest_gap = std::numeric_limits<double>::infinity();
  for_each_pair_within(body, canonical, out.hi, [&](std::uint32_t i, std::uint32_t j, double d) {
    if (d < out.lo) return;
    const bool edge = d <= 2.0 + body.touch_band(canonical[j] - canonical[i]);
    out.pairs.emplace_back(i, j);
    out.is_edge.push_back(edge ? 1 : 0);
    if (!edge) out.tightest_gap = std::fmin(out.tightest_gap, d - 2.0);
  });
  return out;
}

std::vector<Vec2> perturb_drawing(const SymmetricBody& body, const std::vector<Vec2>& canonical, Vec2 centre,
                                  double eta, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double radius = eta * body.inradius();  // Euclidean ball inside eta * A
  const double shrink = 1.0 - 2.0 * eta;
  std::vector<Vec2> out;
  out.reserve(canonical.size());
  for (const auto& p : canonical) {
    const double r = radius * std::sqrt(unit(rng));
    const double phi = 2.0 * std::numbers::pi * unit(rng);
    out.push_back(centre + (p - centre) * shrink + Vec2{r * std::cos(phi), r * std::sin(phi)});
  }
  return out;
}

bool same_graph(const SymmetricBody& body, const CriticalPairs& crit, const std::vector<Vec2>& drawing) {
  for (std::size_t e = 0; e < crit.pairs.size(); ++e) {
    const Vec2 d = drawing[crit.pairs[e].second] - drawing[crit.pairs[e].first];
    const bool edge = body.norm(d) <= 2.0 + body.touch_band(d);
    if (edge != static_cast<bool>(crit.is_edge[e])) return false;
  }
  return true;
}

PerturbationReport perturbation_harness(const SymmetricBody& body, const RadialGadget& q, const PerturbOptions& opts) {
  const std::vector<Vec2> canonical = q.points();
  const CriticalPairs crit = critical_pairs(body, canonical, opts.eta);
  PerturbationReport rep;
  rep.critical_pairs = crit.pairs.size();
  rep.tightest_gap = crit.tightest_gap;
  double eta = opts.eta;
  while (rep.accepted < opts.drawings && rep.attempts < opts.max_attempts) {
    ++rep.attempts;
    const auto drawing = perturb_drawing(body, canonical, q.s0(), eta, opts.seed + static_cast<std::uint64_t>(rep.attempts));
    if (!same_graph(body, crit, drawing)) {
      ++rep.rejected;
      eta *= 0.5;
      continue;
    }
    ++rep.accepted;
    for (std::int64_t j = 3; j <= q.k; ++j) {
      const AlphaReport a = verify_alpha(body, q, drawing, j, AnnulusMode::Perturbed);
      if (!a.pass() && rep.all_pass) {
        rep.all_pass = false;
        rep.first_failure_j = j;
        rep.first_failure = a.failure();
      }
    }
  }
  rep.final_eta = eta;
  if (rep.accepted < opts.drawings) {
    rep.all_pass = false;
    if (rep.first_failure.empty()) rep.first_failure = "attempt budget exhausted";
  }
  return rep;
}

RayLayer ray_layer(const RadialGadget& q, const std::vector<Vec2>& centres, std::int64_t max_level) {
  RayLayer layer;
  for (std::uint32_t c = 0; c < centres.size(); ++c) {
    layer.points.push_back(centres[c]);
    layer.copy.push_back(c);
    layer.level.push_back(0);
    for (std::size_t i = 0; i < q.boundary.size(); ++i) {
      for (std::int64_t j = 1; j <= std::min(max_level, q.depth[i]); ++j) {
        layer.points.push_back(centres[c] + q.unit[i] * (2.0 * static_cast<double>(j)));
        layer.copy.push_back(c);
        layer.level.push_back(static_cast<std::int32_t>(j));
      }
    }
  }
  return layer;
}

CrossEdgeScan scan_cross_edges(const SymmetricBody& body, const RadialGadget& q, const EmbeddedGraph& host,
                               const std::vector<Vec2>& centres) {
  const std::int64_t k = q.k;
  // a cross edge with j + j' < 2k - 4 has both levels below 2k
  const RayLayer layer = ray_layer(q, centres, 2 * k);
  std::map<Edge, std::size_t> host_index;
  for (std::size_t e = 0; e < host.edges.size(); ++e) host_index[host.edges[e]] = e;
  CrossEdgeScan scan;
  scan.host_edge_has_level_k.assign(host.edges.size(), 0);
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  double span = 0.0;
  for (const auto& p : layer.points) span = std::fmax(span, length(p));
  const double reach = 2.0 + body.tolerance() * std::fmax(1.0, 2.0 * span + 1.0);
  for_each_pair_within(body, layer.points, reach, [&](std::uint32_t a, std::uint32_t b, double d) {
    if (layer.copy[a] == layer.copy[b] || layer.level[a] == 0 || layer.level[b] == 0) return;
    if (d > 2.0 + body.touch_band(layer.points[b] - layer.points[a])) return;
    ++scan.cross_edges;
    const std::int64_t sum = layer.level[a] + layer.level[b];
    if (sum < best) {
      best = sum;
      scan.worst_copies = {std::min(layer.copy[a], layer.copy[b]), std::max(layer.copy[a], layer.copy[b])};
    }
    if (layer.level[a] == k && layer.level[b] == k) {
      const auto it = host_index.find({std::min(layer.copy[a], layer.copy[b]), std::max(layer.copy[a], layer.copy[b])});
      if (it != host_index.end()) scan.host_edge_has_level_k[it->second] = 1;
    }
  });
  scan.min_level_sum = scan.cross_edges ? best : 0;
  scan.floor_ok = scan.cross_edges == 0 || best >= 2 * k - 4;
  scan.level_k_ok = std::all_of(scan.host_edge_has_level_k.begin(), scan.host_edge_has_level_k.end(),
                                [](char c) { return c != 0; });
  return scan;
}

OverlapAssembly build_assembly(const SymmetricBody& body, const EmbeddedGraph& host, std::int64_t k,
                               std::shared_ptr<const RadialGadget> gadget) {
  if (k < 7) throw Error(ErrorCode::InvalidArgument, "assemblies need k >= 7");
  if (host.points.empty()) throw Error(ErrorCode::InvalidArgument, "host graph is empty");
  if (auto bad = find_incompatible_pair(body, host.points))
    throw Error(ErrorCode::NotCompatible, "host drawing is not a contact drawing");
  for (const auto& [a, b] : host.edges) {
    const Vec2 d = host.points[b] - host.points[a];
    if (std::fabs(body.norm(d) - 2.0) > body.touch_band(d))
      throw Error(ErrorCode::NotTouching, "host edge " + std::to_string(a) + "-" + std::to_string(b) + " does not touch");
  }
  if (!gadget) gadget = std::make_shared<const RadialGadget>(build_radial(body, k));
  if (gadget->k != k) throw Error(ErrorCode::InvalidArgument, "gadget was built for a different k");
  OverlapAssembly a;
  a.k = k;
  a.gadget = std::move(gadget);
  a.host = host;
  for (const auto& w : host.points) a.centres.push_back(w * static_cast<double>(2 * k - 2));
  a.scan = scan_cross_edges(body, *a.gadget, a.host, a.centres);
  return a;
}

CentreBoundsReport verify_centre_bounds(const SymmetricBody& body, std::int64_t k, const EmbeddedGraph& host,
                                        const std::vector<Vec2>& centres) {
  if (centres.size() != host.points.size()) throw Error(ErrorCode::InvalidArgument, "one centre per host vertex");
  CentreBoundsReport rep;
  rep.lower = static_cast<double>(4 * k - 18);
  rep.upper = static_cast<double>(4 * k + 2);
  rep.min_any = std::numeric_limits<double>::infinity();
  for (std::uint32_t i = 0; i < centres.size(); ++i)
    for (std::uint32_t j = i + 1; j < centres.size(); ++j) {
      const Vec2 d = centres[j] - centres[i];
      const double n = body.norm(d);
      rep.min_any = std::fmin(rep.min_any, n);
      if (n < rep.lower - body.touch_band(d) && rep.pass) {
        rep.pass = false;
        rep.violation = Edge{i, j};
      }
    }
  for (const auto& [i, j] : host.edges) {
    const Vec2 d = centres[j] - centres[i];
    const double n = body.norm(d);
    rep.max_adjacent = std::fmax(rep.max_adjacent, n);
    if (n > rep.upper + body.touch_band(d) && rep.pass) {
      rep.pass = false;
      rep.violation = Edge{i, j};
    }
  }
  if (centres.size() < 2) rep.min_any = 0.0;
  return rep;
}

AssemblyPerturbationReport assembly_perturbation_harness(const SymmetricBody& body, const OverlapAssembly& a,
                                                         const PerturbOptions& opts) {
  const RayLayer layer = ray_layer(*a.gadget, a.centres, 2 * a.k);
  const CriticalPairs crit = critical_pairs(body, layer.points, opts.eta);
  std::vector<std::uint32_t> centre_at;
  for (std::uint32_t i = 0; i < layer.points.size(); ++i)
    if (layer.level[i] == 0) centre_at.push_back(i);
  AssemblyPerturbationReport rep;
  rep.critical_pairs = crit.pairs.size();
  rep.min_any = std::numeric_limits<double>::infinity();
  double eta = opts.eta;
  while (rep.accepted < opts.drawings && rep.attempts < opts.max_attempts) {
    ++rep.attempts;
    const auto drawing = perturb_drawing(body, layer.points, {0.0, 0.0}, eta, opts.seed + static_cast<std::uint64_t>(rep.attempts));
    if (!same_graph(body, crit, drawing)) {
      eta *= 0.5;
      continue;
    }
    ++rep.accepted;
    std::vector<Vec2> centres;
    for (auto i : centre_at) centres.push_back(drawing[i]);
    const CentreBoundsReport b = verify_centre_bounds(body, a.k, a.host, centres);
    rep.all_pass = rep.all_pass && b.pass;
    rep.min_any = std::fmin(rep.min_any, b.min_any);
    rep.max_adjacent = std::fmax(rep.max_adjacent, b.max_adjacent);
  }
  rep.final_eta = eta;
  if (rep.accepted < opts.drawings) rep.all_pass = false;
  return rep;
}

OverlapRealization extract_overlap(const SymmetricBody& b, const EmbeddedGraph& host, const std::vector<Vec2>& centres,
                                   std::int64_t k) {
  if (k < 7) throw Error(ErrorCode::InvalidArgument, "overlap extraction needs k >= 7");
  if (centres.size() != host.points.size()) throw Error(ErrorCode::InvalidArgument, "one centre per host vertex");
  OverlapRealization out;
  out.k = k;
  out.epsilon = 10.0 / static_cast<double>(k);
  out.floor = static_cast<double>(4 * k - 18) / static_cast<double>(2 * k + 1);
  std::vector<Vec2> pts;
  for (const auto& c : centres) pts.push_back(c / static_cast<double>(2 * k + 1));
  out.min_distance = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) out.min_distance = std::fmin(out.min_distance, b.norm(pts[j] - pts[i]));
  if (pts.size() < 2) out.min_distance = 0.0;
  out.graph = build_eps_overlap(b, std::move(pts), out.epsilon, host.edges);
  std::vector<Edge> want = host.edges;
  std::sort(want.begin(), want.end());
  out.host_edges_kept = out.graph.edges == want;
  return out;
}

RefinementReport refine_to_contact(const SymmetricBody& b, const EmbeddedGraph& host,
                                   const std::vector<std::int64_t>& schedule) {
  if (schedule.empty()) throw Error(ErrorCode::InvalidArgument, "empty k schedule");
  if (host.points.size() < 2) throw Error(ErrorCode::InvalidArgument, "refinement needs at least two host vertices");
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    if (schedule[i] < 7) throw Error(ErrorCode::InvalidArgument, "every k in the schedule must be >= 7");
    if (i > 0 && schedule[i] <= schedule[i - 1]) throw Error(ErrorCode::InvalidArgument, "k schedule must increase");
  }
  double host_radius = 0.0;
  for (const auto& w : host.points) host_radius = std::fmax(host_radius, length(w));
  RefinementReport rep;
  OverlapRealization last;
  for (std::int64_t k : schedule) {
    std::vector<Vec2> centres;
    for (const auto& w : host.points) centres.push_back(w * static_cast<double>(2 * k - 2));
    last = extract_overlap(b, host, centres, k);
    RefinementStep step{k, last.epsilon, last.min_distance, 0.0};
    for (const auto& p : last.graph.points) step.radius = std::fmax(step.radius, length(p));
    if (!rep.steps.empty() && step.min_distance < rep.steps.back().min_distance) rep.monotone = false;
    if (step.radius > host_radius * (1.0 + 1e-12)) rep.bounded = false;
    rep.steps.push_back(step);
  }
  rep.final_threshold = 2.0 - 10.0 / static_cast<double>(schedule.back());
  if (last.min_distance < rep.final_threshold)
    throw Error(ErrorCode::NoConvergence, "min pairwise distance " + std::to_string(last.min_distance) +
                                              " stays below " + std::to_string(rep.final_threshold));
  std::vector<Vec2> limit;
  for (const auto& p : last.graph.points) limit.push_back(p * (2.0 / last.min_distance));
  rep.limit = build_graph(b, std::move(limit), GraphKind::Contact);
  rep.contains_host = std::all_of(host.edges.begin(), host.edges.end(), [&](const Edge& e) {
    return std::binary_search(rep.limit.edges.begin(), rep.limit.edges.end(), e);
  });
  return rep;
}

}  // namespace bodygraphs
