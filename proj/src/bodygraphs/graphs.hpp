#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "bodygraphs/body.hpp"

namespace bodygraphs {

using Edge = std::pair<std::uint32_t, std::uint32_t>;

enum class GraphKind { Contact, UnitDistance, Intersection, EpsOverlap };

const char* to_string(GraphKind k) noexcept;

struct EmbeddedGraph {
  std::vector<Vec2> points;
  std::vector<Edge> edges;  // i < j, sorted
  GraphKind kind{GraphKind::Contact};
  double epsilon{0.0};
};

using Adjacency = std::vector<std::vector<std::uint32_t>>;

/// Sorted neighbour lists.
Adjacency adjacency(std::size_t n, const std::vector<Edge>& edges);

struct PairReport {
  std::uint32_t i{0}, j{0};
  double distance{0.0};
};

/// Worst pair with ||x - y||_A < 2 - band, if any.
std::optional<PairReport> find_incompatible_pair(const SymmetricBody& body, const std::vector<Vec2>& pts);
inline bool is_compatible(const SymmetricBody& body, const std::vector<Vec2>& pts) {
  return !find_incompatible_pair(body, pts).has_value();
}

/// Edges by kind; Contact throws NotCompatible on an incompatible set.
EmbeddedGraph build_graph(const SymmetricBody& body, std::vector<Vec2> pts, GraphKind kind);

/// Edges are the candidates with norm <= 2; every pair must be at least 2 - eps.
EmbeddedGraph build_eps_overlap(const SymmetricBody& body, std::vector<Vec2> pts, double eps,
                                const std::vector<Edge>& candidates);

bool is_triangle_free(std::size_t n, const std::vector<Edge>& edges);

/// Ordering per the lattice-unique definition, or nothing.
std::optional<std::vector<std::uint32_t>> lattice_unique_order(std::size_t n, const std::vector<Edge>& edges);

/// Result of intersecting the boundaries of c1 + r1*A and c2 + r2*A.
struct BoundaryMeet {
  std::vector<Vec2> points;       // cluster centres
  double cluster_diameter{0.0};   // largest spread inside one cluster
  double overlap_length{0.0};     // longest shared boundary segment
};

BoundaryMeet boundary_intersections(const SymmetricBody& body, Vec2 c1, double r1, Vec2 c2, double r2);

struct ThirdPoints {
  Vec2 left;    // cross(v2 - v1, left - v1) > 0
  Vec2 right;
  double cluster_diameter{0.0};
};

/// The two points at norm distance 2 from both v1 and v2.
ThirdPoints third_points(const SymmetricBody& body, Vec2 v1, Vec2 v2);

}  // namespace bodygraphs
