#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bodygraphs/error.hpp"
#include "bodygraphs/vec2.hpp"

namespace bodygraphs {

inline constexpr double kDefaultTolerance = 1e-9;

enum class TranslateRelation { Disjoint, Touch, Overlap };

const char* to_string(TranslateRelation r) noexcept;

struct UrtcReport {
  bool urtc{true};
  // Set when urtc is false: the first edge whose norm-length exceeds 1.
  std::optional<std::size_t> edge_index;
  Vec2 edge_from, edge_to;
  double edge_norm{0.0};
};

/// Origin-symmetric strictly convex polygon, vertices counter-clockwise.
/// Vertex i+m is exactly -vertex i after construction.
class SymmetricBody {
 public:
  /// Validates symmetry, strict convexity and orientation; throws InvalidBody.
  explicit SymmetricBody(std::vector<Vec2> vertices, double tolerance = kDefaultTolerance);

  const std::vector<Vec2>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  double tolerance() const { return tolerance_; }
  SymmetricBody with_tolerance(double tol) const;

  double norm(Vec2 x) const;
  Vec2 radial(double theta) const;
  double signature(double theta) const { return 2.0 * length(radial(theta)); }

  /// Edge gauges g_i with ||x||_A = max_i g_i.x
  const std::vector<Vec2>& gauges() const { return gauges_; }

  /// max over the body of n.x
  double support(Vec2 n) const;
  double circumradius() const { return circumradius_; }
  double inradius() const { return inradius_; }
  double area() const;

  Vec2 edge_from(std::size_t i) const { return vertices_[i]; }
  Vec2 edge_to(std::size_t i) const { return vertices_[(i + 1) % vertices_.size()]; }

  UrtcReport urtc() const;
  bool has_urtc() const { return urtc().urtc; }

  TranslateRelation relation(Vec2 v) const;

  /// Scale used when comparing a norm value against 2 for a displacement v.
  double touch_band(Vec2 v) const { return tolerance_ * std::fmax(1.0, length(v)); }

  SymmetricBody apply(const LinearMap2& m) const;

 private:
  std::size_t sector_of(double theta) const;

  std::vector<Vec2> vertices_;
  std::vector<double> angles_;   // angle of each vertex in [0, 2pi), increasing
  std::vector<Vec2> gauges_;     // outward normal of edge i scaled so gauge.v = 1 on the edge
  double tolerance_;
  double circumradius_{0.0};
  double inradius_{0.0};
};

/// Body input before discretization.
struct PolygonSpec {
  std::vector<Vec2> vertices;
};
struct DiskSpec {
  int segments{256};
};
struct RegularSpec {
  int n{6};
  int segments{256};
};
struct EllipseSpec {
  double a{1.0};
  double b{1.0};
  int segments{256};
};

struct BodySpec {
  std::variant<PolygonSpec, DiskSpec, RegularSpec, EllipseSpec> shape;
  std::optional<LinearMap2> map;
  std::optional<double> tolerance;
  bool symmetrize{false};
};

/// Turns a spec into a validated body. Raises segment counts until every edge
/// of a smooth primitive has norm-length at most 1.
SymmetricBody discretize(const BodySpec& spec);

/// Halved difference body of a convex polygon (vertex order and duplicates
/// are not required). Throws DegenerateBody for empty interior.
SymmetricBody symmetrize(const std::vector<Vec2>& polygon, double tolerance = kDefaultTolerance);

/// Convex hull, counter-clockwise, no repeated closing vertex, collinear points dropped.
std::vector<Vec2> convex_hull(std::vector<Vec2> pts);

/// Named fixtures used by tests, docs and the CLI.
SymmetricBody make_square();
SymmetricBody make_regular(int n);  // n even; circumradius 1, vertex at angle 0
SymmetricBody make_disk(int segments = 256);
SymmetricBody make_ellipse(double a, double b, int segments = 256);

}  // namespace bodygraphs
