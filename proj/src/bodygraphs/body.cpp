#include "bodygraphs/body.hpp"

#include <algorithm>
#include <boost/geometry.hpp>
#include <boost/geometry/geometries/register/point.hpp>
#include <boost/geometry/geometries/ring.hpp>
#include <boost/geometry/geometries/multi_point.hpp>
#include <cstdio>
#include <limits>

BOOST_GEOMETRY_REGISTER_POINT_2D(bodygraphs::Vec2, double, boost::geometry::cs::cartesian, x, y)

namespace bodygraphs {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string fmt_vec(Vec2 v) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "(%.17g, %.17g)", v.x, v.y);
  return buf;
}

double signed_area(const std::vector<Vec2>& poly) {
  double a = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) a += cross(poly[i], poly[(i + 1) % poly.size()]);
  return 0.5 * a;
}

// Fold an edge direction into the half-plane of angles [0, pi).
Vec2 fold(Vec2 d) {
  if (d.y < 0.0 || (d.y == 0.0 && d.x < 0.0)) return -d;
  return d;
}

}  // namespace

const char* to_string(TranslateRelation r) noexcept {
  switch (r) {
    case TranslateRelation::Disjoint: return "Disjoint";
    case TranslateRelation::Touch: return "Touch";
    case TranslateRelation::Overlap: return "Overlap";
  }
  return "Unknown";
}

SymmetricBody::SymmetricBody(std::vector<Vec2> vertices, double tolerance) : tolerance_(tolerance) {
  const std::size_t n = vertices.size();
  if (!(tolerance > 0.0) || !std::isfinite(tolerance))
    throw Error(ErrorCode::InvalidBody, "tolerance must be positive and finite");
  if (n < 4 || n % 2 != 0)
    throw Error(ErrorCode::InvalidBody, "vertex count must be even and at least 4, got " + std::to_string(n));
  for (const auto& v : vertices)
    if (!std::isfinite(v.x) || !std::isfinite(v.y))
      throw Error(ErrorCode::InvalidBody, "non-finite vertex");

  double scale = 0.0;
  for (const auto& v : vertices) scale = std::fmax(scale, length(v));
  if (scale == 0.0) throw Error(ErrorCode::DegenerateBody, "all vertices at the origin");

  const std::size_t m = n / 2;
  for (std::size_t i = 0; i < m; ++i) {
    if (length(vertices[i] + vertices[i + m]) > tolerance * scale)
      throw Error(ErrorCode::InvalidBody, "not centrally symmetric: vertex " + std::to_string(i) + " " +
                                              fmt_vec(vertices[i]) + " vs " + fmt_vec(vertices[i + m]));
  }
  double turning = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = vertices[i], b = vertices[(i + 1) % n], c = vertices[(i + 2) % n];
    if (!(cross(b - a, c - b) > 0.0))
      throw Error(ErrorCode::InvalidBody, "not strictly convex counter-clockwise at vertex " + std::to_string((i + 1) % n));
    if (!(cross(a, b) > 0.0))
      throw Error(ErrorCode::InvalidBody, "origin not strictly interior (edge " + std::to_string(i) + ")");
    turning += std::atan2(cross(a, b), dot(a, b));
  }
  if (std::fabs(turning - kTwoPi) > 1e-9) throw Error(ErrorCode::InvalidBody, "polygon winds more than once around the origin");

  // exact symmetry from here on
  for (std::size_t i = 0; i < m; ++i) vertices[i + m] = -vertices[i];

  // rotate so vertex angles increase from the smallest one
  std::vector<double> ang(n);
  for (std::size_t i = 0; i < n; ++i) ang[i] = wrap_two_pi(angle_of(vertices[i]));
  const auto first = static_cast<std::size_t>(std::min_element(ang.begin(), ang.end()) - ang.begin());
  std::rotate(vertices.begin(), vertices.begin() + static_cast<std::ptrdiff_t>(first), vertices.end());
  std::rotate(ang.begin(), ang.begin() + static_cast<std::ptrdiff_t>(first), ang.end());
  // the rotation keeps the antipodal pairing i <-> i+m
  vertices_ = std::move(vertices);
  angles_ = std::move(ang);

  gauges_.resize(n);
  circumradius_ = 0.0;
  inradius_ = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = vertices_[i], b = vertices_[(i + 1) % n];
    const Vec2 d = b - a;
    const Vec2 normal{d.y, -d.x};
    const double h = dot(normal, a);
    gauges_[i] = normal / h;
    circumradius_ = std::fmax(circumradius_, length(a));
    inradius_ = std::fmin(inradius_, 1.0 / length(gauges_[i]));
  }
}

SymmetricBody SymmetricBody::with_tolerance(double tol) const { return SymmetricBody(vertices_, tol); }

std::size_t SymmetricBody::sector_of(double theta) const {
  const auto it = std::upper_bound(angles_.begin(), angles_.end(), theta);
  if (it == angles_.begin()) return angles_.size() - 1;
  return static_cast<std::size_t>(it - angles_.begin()) - 1;
}

double SymmetricBody::norm(Vec2 x) const {
  if (x.x == 0.0 && x.y == 0.0) return 0.0;
  const std::size_t n = vertices_.size();
  const std::size_t s = sector_of(wrap_two_pi(angle_of(x)));
  // neighbours absorb angle rounding at sector boundaries
  const double a = dot(gauges_[(s + n - 1) % n], x);
  const double b = dot(gauges_[s], x);
  const double c = dot(gauges_[(s + 1) % n], x);
  return std::fmax(a, std::fmax(b, c));
}

Vec2 SymmetricBody::radial(double theta) const {
  const double t = wrap_two_pi(theta);
  const std::size_t n = vertices_.size();
  const std::size_t s = sector_of(t);
  constexpr double snap = 1e-13;
  if (std::fabs(t - angles_[s]) <= snap) return vertices_[s];
  const std::size_t nx = (s + 1) % n;
  double gap = angles_[nx] - t;
  if (nx == 0) gap += kTwoPi;
  if (std::fabs(gap) <= snap) return vertices_[nx];
  const Vec2 u = unit_at(t);
  return u / norm(u);
}

double SymmetricBody::support(Vec2 n) const {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& v : vertices_) best = std::fmax(best, dot(n, v));
  return best;
}

double SymmetricBody::area() const { return signed_area(vertices_); }

UrtcReport SymmetricBody::urtc() const {
  UrtcReport rep;
  const std::size_t m = vertices_.size() / 2;
  for (std::size_t i = 0; i < m; ++i) {
    const double len = norm(edge_to(i) - edge_from(i));
    if (len > 1.0 + tolerance_) {
      if (rep.urtc || len > rep.edge_norm) {
        rep.urtc = false;
        rep.edge_index = i;
        rep.edge_from = edge_from(i);
        rep.edge_to = edge_to(i);
        rep.edge_norm = len;
      }
    }
  }
  return rep;
}

TranslateRelation SymmetricBody::relation(Vec2 v) const {
  const double nv = norm(v);
  if (std::fabs(nv - 2.0) <= touch_band(v)) return TranslateRelation::Touch;
  return nv < 2.0 ? TranslateRelation::Overlap : TranslateRelation::Disjoint;
}

SymmetricBody SymmetricBody::apply(const LinearMap2& m) const {
  const double det = m.determinant();
  const double scale = m.max_abs_entry();
  if (!std::isfinite(det) || std::fabs(det) <= 1e-12 * scale * scale || scale == 0.0)
    throw Error(ErrorCode::SingularMap, "linear map is singular (det = " + std::to_string(det) + ")");
  std::vector<Vec2> out;
  out.reserve(vertices_.size());
  for (const auto& v : vertices_) out.push_back(m(v));
  if (det < 0.0) std::reverse(out.begin(), out.end());
  return SymmetricBody(std::move(out), tolerance_);
}

std::vector<Vec2> convex_hull(std::vector<Vec2> pts) {
  namespace bg = boost::geometry;
  bg::model::multi_point<Vec2> mp(pts.begin(), pts.end());
  bg::model::ring<Vec2, false, false> hull;
  bg::convex_hull(mp, hull);
  std::vector<Vec2> out(hull.begin(), hull.end());
  // drop duplicates and collinear points that survive the hull
  bool changed = true;
  while (changed && out.size() >= 3) {
    changed = false;
    for (std::size_t i = 0; i < out.size(); ++i) {
      const Vec2 a = out[(i + out.size() - 1) % out.size()], b = out[i], c = out[(i + 1) % out.size()];
      const double scale = length(b - a) * length(c - b);
      if (scale == 0.0 || std::fabs(cross(b - a, c - b)) <= 1e-14 * scale) {
        out.erase(out.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
  }
  if (out.size() >= 3 && signed_area(out) < 0.0) std::reverse(out.begin(), out.end());
  return out;
}

SymmetricBody symmetrize(const std::vector<Vec2>& polygon, double tolerance) {
  const auto hull = convex_hull(polygon);
  double scale = 0.0;
  for (const auto& v : polygon) scale = std::fmax(scale, length(v));
  if (hull.size() < 3 || signed_area(hull) <= tolerance * scale * scale)
    throw Error(ErrorCode::DegenerateBody, "input polygon has empty interior");

  // Edges of K = (P - P)/2 are the edges of P and of -P, halved.  Walking the
  // angles in [0, pi) gives the first half of K; the rest is the negation.
  std::vector<Vec2> dirs;
  for (std::size_t i = 0; i < hull.size(); ++i) dirs.push_back(fold(hull[(i + 1) % hull.size()] - hull[i]) * 0.5);
  std::sort(dirs.begin(), dirs.end(), [](Vec2 a, Vec2 b) { return angle_of(a) < angle_of(b); });
  std::vector<Vec2> half;
  for (const auto& d : dirs) {
    if (!half.empty() && std::fabs(cross(half.back(), d)) <= 1e-12 * length(half.back()) * length(d)) {
      half.back() += d;
    } else {
      half.push_back(d);
    }
  }
  if (half.size() >= 2 && std::fabs(cross(half.back(), half.front())) <= 1e-12 * length(half.back()) * length(half.front())) {
    half.front() -= half.back();
    half.pop_back();
  }
  Vec2 sum;
  for (const auto& d : half) sum += d;
  const std::size_t m = half.size();
  std::vector<Vec2> verts(2 * m);
  verts[0] = sum * -0.5;
  for (std::size_t i = 0; i + 1 < m; ++i) verts[i + 1] = verts[i] + half[i];
  for (std::size_t i = 0; i < m; ++i) verts[i + m] = -verts[i];
  return SymmetricBody(std::move(verts), tolerance);
}

SymmetricBody make_square() { return SymmetricBody({{1, -1}, {1, 1}, {-1, 1}, {-1, -1}}); }

SymmetricBody make_regular(int n) {
  if (n < 3) throw Error(ErrorCode::InvalidArgument, "regular polygon needs n >= 3");
  std::vector<Vec2> v;
  for (int i = 0; i < n; ++i) v.push_back(unit_at(kTwoPi * i / n));
  if (n % 2 != 0) return symmetrize(v);
  return SymmetricBody(std::move(v));
}

SymmetricBody make_disk(int segments) { return make_ellipse(1.0, 1.0, segments); }

SymmetricBody make_ellipse(double a, double b, int segments) {
  if (segments < 16 || segments % 2 != 0)
    throw Error(ErrorCode::InvalidBody, "segments must be even and at least 16");
  if (!(a > 0.0) || !(b > 0.0)) throw Error(ErrorCode::InvalidBody, "ellipse semi-axes must be positive");
  std::vector<Vec2> v;
  for (int i = 0; i < segments; ++i) {
    const Vec2 u = unit_at(kTwoPi * i / segments);
    v.push_back({a * u.x, b * u.y});
  }
  return SymmetricBody(std::move(v));
}

SymmetricBody discretize(const BodySpec& spec) {
  const double tol = spec.tolerance.value_or(kDefaultTolerance);
  auto finish = [&](SymmetricBody body) {
    if (spec.map) body = body.apply(*spec.map);
    return body.with_tolerance(tol);
  };
  auto raw_or_symmetrized = [&](const std::vector<Vec2>& pts) {
    if (spec.symmetrize) return symmetrize(pts, tol);
    if (pts.size() % 2 != 0)
      throw Error(ErrorCode::InvalidBody, "odd vertex count " + std::to_string(pts.size()) + " without symmetrize");
    std::vector<Vec2> ccw = pts;
    if (signed_area(ccw) < 0.0) std::reverse(ccw.begin(), ccw.end());
    return SymmetricBody(std::move(ccw), tol);
  };

  return std::visit(
      [&](const auto& s) -> SymmetricBody {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, PolygonSpec>) {
          return finish(raw_or_symmetrized(s.vertices));
        } else if constexpr (std::is_same_v<T, RegularSpec>) {
          if (s.n < 3) throw Error(ErrorCode::InvalidBody, "regular polygon needs n >= 3");
          std::vector<Vec2> v;
          for (int i = 0; i < s.n; ++i) v.push_back(unit_at(kTwoPi * i / s.n));
          return finish(raw_or_symmetrized(v));
        } else {
          double a = 1.0, b = 1.0;
          int segments = 0;
          if constexpr (std::is_same_v<T, DiskSpec>) {
            segments = s.segments;
          } else {
            a = s.a;
            b = s.b;
            segments = s.segments;
          }
          SymmetricBody body = make_ellipse(a, b, segments);
          while (!body.has_urtc() && segments < (1 << 16)) {
            segments *= 2;
            body = make_ellipse(a, b, segments);
          }
          return finish(body);
        }
      },
      spec.shape);
}

}  // namespace bodygraphs
