#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bodygraphs/lattice.hpp"

namespace bodygraphs {

// Minimal: every tail is the single point t_k = (r+2) e1.
// Packing: tail long enough that half of it cannot pack inside sigma_k dilated by A.
enum class TailPolicy { Minimal, Packing };

struct NestedCycleGadget {
  std::int64_t k{0};
  Lattice lattice;
  TailPolicy tails{TailPolicy::Minimal};
  std::vector<LatticeCoord> coords;
  std::vector<Vec2> points;
  std::uint32_t s0{0};
  std::uint32_t t_k{1};
  std::vector<std::int64_t> radii;                   // r of stage i at radii[i-1]
  std::vector<std::vector<std::uint32_t>> sigma;     // sigma_i at sigma[i-1], counter-clockwise
  std::vector<std::vector<std::uint32_t>> tau;       // tau_i at tau[i-1]
  std::vector<std::vector<std::uint32_t>> kappa;     // kappa_0 .. kappa_k
};

/// Length 2 ceil(area(hull(cycle) + A) / area(A)) + 2.
std::int64_t packing_tail_length(const SymmetricBody& body, const std::vector<Vec2>& cycle);

NestedCycleGadget build_nested(const SymmetricBody& body, std::int64_t k, TailPolicy tails = TailPolicy::Minimal,
                               double lattice_theta = 0.0);

/// Intersection graph of the gadget points.
EmbeddedGraph nested_graph(const SymmetricBody& body, const NestedCycleGadget& g);

inline bool verify_triangle_free(const EmbeddedGraph& g) { return is_triangle_free(g.points.size(), g.edges); }

struct NestingReport {
  bool pass{true};
  bool cycles_simple{true};
  bool cycles_closed{true};   // consecutive vertices are lattice neighbours
  bool s0_inside{true};
  std::optional<std::size_t> failed_level;  // first i with sigma_i failing
  std::string detail;
};

/// sigma_1 strictly contains s0 and each sigma_i strictly contains sigma_{i-1}.
NestingReport verify_nesting(const NestedCycleGadget& g);

struct TailReport {
  std::size_t level{0};
  std::int64_t tail_length{0};
  double packing_ceiling{0.0};   // area(hull(sigma) + A) / area(A)
  bool sufficient{false};        // floor(tail/2) > ceiling
};

std::vector<TailReport> tail_sufficiency(const SymmetricBody& body, const NestedCycleGadget& g);

struct RadialGadget {
  std::int64_t k{0};
  std::int64_t k_prime{0};
  NestedCycleGadget base;
  std::vector<std::uint32_t> boundary;   // u_0 .. u_{n-1}: sigma_{k'} in base.points
  std::vector<std::int64_t> depth;       // d_i
  std::vector<double> boundary_norm;     // ||s0 u_i||_A
  std::vector<Vec2> unit;                // ||unit_i||_A = 1, direction u_i - s0
  std::vector<std::size_t> ray_offset;   // v_i(1) sits at base size + ray_offset[i]

  Vec2 s0() const { return base.points[base.s0]; }
  std::size_t ray_count() const { return ray_offset.back(); }
  std::size_t size() const { return base.points.size() + ray_count(); }
  std::uint32_t ray_index(std::size_t i, std::int64_t j) const {
    return static_cast<std::uint32_t>(base.points.size() + ray_offset[i] + static_cast<std::size_t>(j - 1));
  }
  Vec2 ray_point(std::size_t i, std::int64_t j) const { return s0() + unit[i] * (2.0 * static_cast<double>(j)); }

  /// Canonical drawing: base points then every ray, ray by ray.
  std::vector<Vec2> points() const;
  /// alpha_j as indices, in boundary order.
  std::vector<std::uint32_t> alpha(std::int64_t j) const;
  /// pi_i: s0, v_i(1..d_i), u_i.
  std::vector<std::uint32_t> path(std::size_t i) const;
};

/// k' = 18(k+1); throws DepthTooSmall when some d_i < 2k.
RadialGadget build_radial(const SymmetricBody& body, std::int64_t k, double lattice_theta = 0.0);

/// Smallest ||s0 u_i||_A against the bound 2(k'/9 - 1).
struct CycleDistReport {
  double min_norm{0.0};
  double bound{0.0};
  std::int64_t min_depth{0};
  bool pass{false};
};
CycleDistReport verify_cycle_distance(const RadialGadget& q);

enum class AnnulusMode { Canonical, Perturbed };

struct AlphaReport {
  std::int64_t j{0};
  bool edges_ok{true};
  double worst_edge{0.0};         // largest ||v_i(j) v_{i+1}(j)||_A
  std::size_t worst_edge_index{0};
  bool annulus_ok{true};
  double min_radius{0.0};         // over vertices (and segments in canonical mode)
  double max_radius{0.0};
  std::size_t worst_vertex{0};
  double winding_turns{0.0};      // argument variation / 2 pi
  int winding{0};
  bool winding_ok{false};
  bool pass() const { return edges_ok && annulus_ok && winding_ok; }
  std::string failure() const;
};

/// Checks alpha_j in a drawing of the radial gadget (indices as in points()).
AlphaReport verify_alpha(const SymmetricBody& body, const RadialGadget& q, const std::vector<Vec2>& drawing,
                         std::int64_t j, AnnulusMode mode);

/// Signed turns of a closed polyline around c.
double winding_turns(const std::vector<Vec2>& cycle, Vec2 c);

/// Smallest ||x - c||_A over the segment [a, b].
double segment_min_norm(const SymmetricBody& body, Vec2 a, Vec2 b, Vec2 c);

/// Pairs whose inclusion in the intersection graph a perturbation of size
/// eta <= max_eta could change: canonical distance in [lo, hi].
struct CriticalPairs {
  double lo{0.0}, hi{0.0};
  std::vector<Edge> pairs;
  std::vector<char> is_edge;
  double tightest_gap{0.0};   // min over non-edges of d - 2
};

CriticalPairs critical_pairs(const SymmetricBody& body, const std::vector<Vec2>& canonical, double max_eta);

/// Contract about the centre by 1 - 2 eta, then move every point by at most eta in ||.||_A.
std::vector<Vec2> perturb_drawing(const SymmetricBody& body, const std::vector<Vec2>& canonical, Vec2 centre,
                                  double eta, std::uint64_t seed);

/// True when the perturbed drawing has exactly the canonical intersection graph.
bool same_graph(const SymmetricBody& body, const CriticalPairs& crit, const std::vector<Vec2>& drawing);

struct PerturbOptions {
  double eta{0.01};
  int drawings{100};
  int max_attempts{10000};
  std::uint64_t seed{20240917};
};

struct PerturbationReport {
  int accepted{0};
  int attempts{0};
  int rejected{0};
  double final_eta{0.0};
  std::size_t critical_pairs{0};
  double tightest_gap{0.0};
  bool all_pass{true};
  std::int64_t first_failure_j{0};
  std::string first_failure;
};

/// Random perturbed drawings of q that keep its graph; checks alpha_3 .. alpha_k on each.
PerturbationReport perturbation_harness(const SymmetricBody& body, const RadialGadget& q, const PerturbOptions& opts);

struct CrossEdgeScan {
  std::size_t cross_edges{0};
  std::int64_t min_level_sum{0};   // smallest j + j' over cross edges, 0 if none
  Edge worst_copies{0, 0};
  std::vector<char> host_edge_has_level_k;   // per host edge
  bool floor_ok{true};                        // min_level_sum >= 2k - 4
  bool level_k_ok{true};                      // every host edge has a v(k) v'(k) edge
};

struct OverlapAssembly {
  std::int64_t k{0};
  std::shared_ptr<const RadialGadget> gadget;
  EmbeddedGraph host;
  std::vector<Vec2> centres;   // s0^w = (2k - 2) w
  CrossEdgeScan scan;
};

/// host must be a contact drawing over body and k >= 7.
OverlapAssembly build_assembly(const SymmetricBody& body, const EmbeddedGraph& host, std::int64_t k,
                               std::shared_ptr<const RadialGadget> gadget = nullptr);

/// Ray vertices with j <= 2k of every copy, as placed by centres.
struct RayLayer {
  std::vector<Vec2> points;
  std::vector<std::uint32_t> copy;
  std::vector<std::int32_t> level;   // 0 marks a centre
};
RayLayer ray_layer(const RadialGadget& q, const std::vector<Vec2>& centres, std::int64_t max_level);

CrossEdgeScan scan_cross_edges(const SymmetricBody& body, const RadialGadget& q, const EmbeddedGraph& host,
                               const std::vector<Vec2>& centres);

struct CentreBoundsReport {
  double lower{0.0}, upper{0.0};
  double min_any{0.0};
  double max_adjacent{0.0};
  bool pass{true};
  std::optional<Edge> violation;
};

CentreBoundsReport verify_centre_bounds(const SymmetricBody& body, std::int64_t k, const EmbeddedGraph& host,
                                        const std::vector<Vec2>& centres);

struct AssemblyPerturbationReport {
  int accepted{0};
  int attempts{0};
  double final_eta{0.0};
  std::size_t critical_pairs{0};
  bool all_pass{true};
  double min_any{0.0};
  double max_adjacent{0.0};
};

/// Perturbs the centres and the ray layer j <= 2k together, keeps drawings
/// whose layer graph is unchanged, and re-checks the centre bounds.
AssemblyPerturbationReport assembly_perturbation_harness(const SymmetricBody& body, const OverlapAssembly& a,
                                                         const PerturbOptions& opts);

struct OverlapRealization {
  std::int64_t k{0};
  double epsilon{0.0};      // 10 / k
  double floor{0.0};        // (4k - 18) / (2k + 1)
  double min_distance{0.0};
  bool host_edges_kept{false};
  EmbeddedGraph graph;      // EpsOverlap
};

/// Centres scaled by 1/(2k+1), checked as a (10/k)-overlap drawing of the host over b.
OverlapRealization extract_overlap(const SymmetricBody& b, const EmbeddedGraph& host, const std::vector<Vec2>& centres,
                                   std::int64_t k);

struct RefinementStep {
  std::int64_t k{0};
  double epsilon{0.0};
  double min_distance{0.0};
  double radius{0.0};   // largest ||x||_2 among the scaled centres
};

struct RefinementReport {
  std::vector<RefinementStep> steps;
  bool monotone{true};
  bool bounded{true};
  double final_threshold{0.0};   // 2 - 10 / k_last
  EmbeddedGraph limit;           // last step rescaled to min distance 2, contact graph
  bool contains_host{false};
};

/// Canonical centre drawings for each k in the schedule; throws NoConvergence.
RefinementReport refine_to_contact(const SymmetricBody& b, const EmbeddedGraph& host,
                                   const std::vector<std::int64_t>& schedule);

}  // namespace bodygraphs
