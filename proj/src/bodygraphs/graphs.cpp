#include "bodygraphs/graphs.hpp"

#include <algorithm>
#include <cstdio>
#include <deque>
#include <unordered_set>

#include "bodygraphs/spatial.hpp"

namespace bodygraphs {

namespace {

std::string pair_text(const PairReport& p) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "pair (%u, %u) at norm distance %.17g", p.i, p.j, p.distance);
  return buf;
}

std::uint64_t edge_key(std::uint32_t a, std::uint32_t b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

void sort_edges(std::vector<Edge>& edges) {
  for (auto& e : edges)
    if (e.first > e.second) std::swap(e.first, e.second);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
}

bool adjacent(const Adjacency& adj, std::uint32_t a, std::uint32_t b) {
  return std::binary_search(adj[a].begin(), adj[a].end(), b);
}

}  // namespace

const char* to_string(GraphKind k) noexcept {
  switch (k) {
    case GraphKind::Contact: return "contact";
    case GraphKind::UnitDistance: return "unit_distance";
    case GraphKind::Intersection: return "intersection";
    case GraphKind::EpsOverlap: return "eps_overlap";
  }
  return "unknown";
}

Adjacency adjacency(std::size_t n, const std::vector<Edge>& edges) {
  Adjacency adj(n);
  for (const auto& [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (auto& row : adj) std::sort(row.begin(), row.end());
  return adj;
}

std::optional<PairReport> find_incompatible_pair(const SymmetricBody& body, const std::vector<Vec2>& pts) {
  std::optional<PairReport> worst;
  for_each_pair_within(body, pts, 2.0, [&](std::uint32_t i, std::uint32_t j, double d) {
    if (d < 2.0 - body.touch_band(pts[j] - pts[i]) && (!worst || d < worst->distance)) worst = PairReport{i, j, d};
  });
  return worst;
}

EmbeddedGraph build_graph(const SymmetricBody& body, std::vector<Vec2> pts, GraphKind kind) {
  if (kind == GraphKind::EpsOverlap)
    throw Error(ErrorCode::InvalidArgument, "use build_eps_overlap for epsilon-overlap graphs");
  if (kind == GraphKind::Contact) {
    if (auto bad = find_incompatible_pair(body, pts))
      throw Error(ErrorCode::NotCompatible, "point set is not compatible: " + pair_text(*bad));
  }
  EmbeddedGraph g;
  g.kind = kind;
  // pad the search radius by the widest band any pair can have
  double span = 0.0;
  for (const auto& p : pts) span = std::fmax(span, length(p));
  const double reach = 2.0 + body.tolerance() * std::fmax(1.0, 2.0 * span + 1.0);
  for_each_pair_within(body, pts, reach, [&](std::uint32_t i, std::uint32_t j, double d) {
    const double band = body.touch_band(pts[j] - pts[i]);
    const bool keep = kind == GraphKind::Intersection ? d <= 2.0 + band : std::fabs(d - 2.0) <= band;
    if (keep) g.edges.emplace_back(i, j);
  });
  sort_edges(g.edges);
  g.points = std::move(pts);
  return g;
}

EmbeddedGraph build_eps_overlap(const SymmetricBody& body, std::vector<Vec2> pts, double eps,
                                const std::vector<Edge>& candidates) {
  if (!(eps >= 0.0) || eps >= 2.0) throw Error(ErrorCode::InvalidArgument, "epsilon must lie in [0, 2)");
  std::optional<PairReport> worst;
  for_each_pair_within(body, pts, 2.0 - eps, [&](std::uint32_t i, std::uint32_t j, double d) {
    if (d < 2.0 - eps - body.touch_band(pts[j] - pts[i]) && (!worst || d < worst->distance)) worst = PairReport{i, j, d};
  });
  if (worst) throw Error(ErrorCode::PairTooClose, "closer than 2 - epsilon: " + pair_text(*worst));
  EmbeddedGraph g;
  g.kind = GraphKind::EpsOverlap;
  g.epsilon = eps;
  for (auto [a, b] : candidates) {
    if (a >= pts.size() || b >= pts.size() || a == b) throw Error(ErrorCode::InvalidArgument, "candidate edge out of range");
    const Vec2 d = pts[b] - pts[a];
    if (body.norm(d) <= 2.0 + body.touch_band(d)) g.edges.emplace_back(a, b);
  }
  sort_edges(g.edges);
  g.points = std::move(pts);
  return g;
}

bool is_triangle_free(std::size_t n, const std::vector<Edge>& edges) {
  const Adjacency adj = adjacency(n, edges);
  for (const auto& [a, b] : edges) {
    const auto& x = adj[a];
    const auto& y = adj[b];
    std::size_t i = 0, j = 0;
    while (i < x.size() && j < y.size()) {
      if (x[i] == y[j]) return false;
      if (x[i] < y[j]) ++i; else ++j;
    }
  }
  return true;
}

namespace {

// Grows the set forced by one seed triangle.  Placing vertices only adds
// triangles, so the closure of a seed is unique and no backtracking is needed.
struct Closure {
  std::vector<std::uint32_t> order;
  std::vector<char> placed;
};

Closure close_from(const Adjacency& adj, std::uint32_t a, std::uint32_t b, std::uint32_t c) {
  Closure cl;
  cl.placed.assign(adj.size(), 0);
  std::unordered_set<std::uint64_t> active;
  std::deque<Edge> work;
  auto activate = [&](std::uint32_t x, std::uint32_t y) {
    if (active.insert(edge_key(x, y)).second) work.emplace_back(x, y);
  };
  auto place = [&](std::uint32_t v) {
    cl.placed[v] = 1;
    cl.order.push_back(v);
    const auto& nb = adj[v];
    for (std::size_t i = 0; i < nb.size(); ++i) {
      if (!cl.placed[nb[i]] || nb[i] == v) continue;
      for (std::size_t j = i + 1; j < nb.size(); ++j) {
        if (!cl.placed[nb[j]] || !adjacent(adj, nb[i], nb[j])) continue;
        activate(v, nb[i]);
        activate(v, nb[j]);
        activate(nb[i], nb[j]);
      }
    }
  };
  place(a);
  place(b);
  place(c);
  while (!work.empty()) {
    const auto [x, y] = work.front();
    work.pop_front();
    const auto& nx = adj[x];
    const auto& ny = adj[y];
    std::size_t i = 0, j = 0;
    while (i < nx.size() && j < ny.size()) {
      if (nx[i] == ny[j]) {
        if (!cl.placed[nx[i]]) place(nx[i]);
        ++i;
        ++j;
      } else if (nx[i] < ny[j]) {
        ++i;
      } else {
        ++j;
      }
    }
  }
  return cl;
}

}  // namespace

std::optional<std::vector<std::uint32_t>> lattice_unique_order(std::size_t n, const std::vector<Edge>& edges) {
  if (n < 3) return std::nullopt;
  const Adjacency adj = adjacency(n, edges);
  std::vector<char> covered(n, 0);  // inside some failed closure
  for (std::uint32_t a = 0; a < n; ++a) {
    const auto& na = adj[a];
    for (std::size_t i = 0; i < na.size(); ++i) {
      for (std::size_t j = i + 1; j < na.size(); ++j) {
        const std::uint32_t b = na[i], c = na[j];
        if (!adjacent(adj, b, c)) continue;
        if (covered[a] && covered[b] && covered[c]) continue;
        Closure cl = close_from(adj, a, b, c);
        if (cl.order.size() == n) return std::move(cl.order);
        for (auto v : cl.order) covered[v] = 1;
      }
    }
  }
  return std::nullopt;
}

BoundaryMeet boundary_intersections(const SymmetricBody& body, Vec2 c1, double r1, Vec2 c2, double r2) {
  const auto& v = body.vertices();
  const std::size_t n = v.size();
  const double scale = std::fmax(1.0, std::fmax(r1, r2) * body.circumradius());
  const double merge = 10.0 * body.tolerance() * scale;
  const double ptol = 1e-12;

  BoundaryMeet out;
  std::vector<Vec2> raw;
  for (std::size_t a = 0; a < n; ++a) {
    const Vec2 p = c1 + v[a] * r1;
    const Vec2 r = (v[(a + 1) % n] - v[a]) * r1;
    const double rl = length(r);
    for (std::size_t b = 0; b < n; ++b) {
      const Vec2 q = c2 + v[b] * r2;
      const Vec2 s = (v[(b + 1) % n] - v[b]) * r2;
      const double sl = length(s);
      // quick reject on bounding boxes
      if (std::fmax(p.x, p.x + r.x) + merge < std::fmin(q.x, q.x + s.x) ||
          std::fmax(q.x, q.x + s.x) + merge < std::fmin(p.x, p.x + r.x) ||
          std::fmax(p.y, p.y + r.y) + merge < std::fmin(q.y, q.y + s.y) ||
          std::fmax(q.y, q.y + s.y) + merge < std::fmin(p.y, p.y + r.y))
        continue;
      const double denom = cross(r, s);
      const Vec2 qp = q - p;
      if (std::fabs(denom) <= 1e-12 * rl * sl) {
        if (std::fabs(cross(qp, r)) > merge * rl) continue;  // parallel, apart
        // collinear: overlap of parameter ranges along r
        const double t0 = dot(qp, r) / (rl * rl);
        const double t1 = dot(qp + s, r) / (rl * rl);
        const double lo = std::fmax(0.0, std::fmin(t0, t1));
        const double hi = std::fmin(1.0, std::fmax(t0, t1));
        if (hi < lo - merge / rl) continue;
        const double len = (hi - lo) * rl;
        out.overlap_length = std::fmax(out.overlap_length, len);
        raw.push_back(p + r * lo);
        raw.push_back(p + r * hi);
        continue;
      }
      const double t = cross(qp, s) / denom;
      const double u = cross(qp, r) / denom;
      if (t < -ptol || t > 1.0 + ptol || u < -ptol || u > 1.0 + ptol) continue;
      raw.push_back(p + r * t);
    }
  }

  // greedy clustering within the merge radius
  std::vector<std::vector<Vec2>> clusters;
  for (const auto& x : raw) {
    bool joined = false;
    for (auto& cl : clusters) {
      for (const auto& y : cl) {
        if (length(x - y) <= merge) {
          cl.push_back(x);
          joined = true;
          break;
        }
      }
      if (joined) break;
    }
    if (!joined) clusters.push_back({x});
  }
  for (const auto& cl : clusters) {
    Vec2 mean;
    for (const auto& x : cl) mean += x;
    mean = mean / static_cast<double>(cl.size());
    for (const auto& x : cl)
      for (const auto& y : cl) out.cluster_diameter = std::fmax(out.cluster_diameter, length(x - y));
    out.points.push_back(mean);
  }
  return out;
}

ThirdPoints third_points(const SymmetricBody& body, Vec2 v1, Vec2 v2) {
  const Vec2 d = v2 - v1;
  const double nd = body.norm(d);
  if (std::fabs(nd - 2.0) > body.touch_band(d)) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "points are not touching (norm distance %.17g)", nd);
    throw Error(ErrorCode::NotTouching, buf);
  }
  const BoundaryMeet meet = boundary_intersections(body, v1, 2.0, v2, 2.0);
  const double scale = std::fmax(1.0, 2.0 * body.circumradius());
  if (meet.overlap_length > 10.0 * body.tolerance() * scale)
    throw Error(ErrorCode::ManySolutions, "boundaries share a segment of length " + std::to_string(meet.overlap_length) +
                                              "; the body fails URTC");
  if (meet.points.size() != 2)
    throw Error(ErrorCode::ManySolutions, "expected two third points, found " + std::to_string(meet.points.size()));
  ThirdPoints tp;
  tp.left = meet.points[0];
  tp.right = meet.points[1];
  if (cross(d, tp.left - v1) < 0.0) std::swap(tp.left, tp.right);
  tp.cluster_diameter = meet.cluster_diameter;
  return tp;
}

}  // namespace bodygraphs
