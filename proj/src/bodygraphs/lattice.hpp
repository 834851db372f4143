#pragma once

#include <array>
#include <cstdint>
#include <cstdlib>
#include <vector>

#include "bodygraphs/graphs.hpp"

namespace bodygraphs {

struct LatticeCoord {
  std::int64_t a1{0};
  std::int64_t a2{0};

  constexpr LatticeCoord operator+(LatticeCoord o) const { return {a1 + o.a1, a2 + o.a2}; }
  constexpr LatticeCoord operator-(LatticeCoord o) const { return {a1 - o.a1, a2 - o.a2}; }
  constexpr LatticeCoord operator*(std::int64_t s) const { return {a1 * s, a2 * s}; }
  constexpr bool operator==(const LatticeCoord&) const = default;
  constexpr auto operator<=>(const LatticeCoord&) const = default;
};

/// Neighbour steps of the lattice graph in counter-clockwise order.
inline constexpr std::array<LatticeCoord, 6> kLatticeSteps{
    {{1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1}}};

/// Graph distance in the triangular lattice graph.
constexpr std::int64_t lattice_distance(LatticeCoord c) {
  auto abs = [](std::int64_t v) { return v < 0 ? -v : v; };
  const std::int64_t s = abs(c.a1 + c.a2);
  const std::int64_t m = abs(c.a1) > abs(c.a2) ? abs(c.a1) : abs(c.a2);
  return m > s ? m : s;
}

/// Lattice points at distance exactly r, counter-clockwise from (r, 0).
std::vector<LatticeCoord> lattice_circle(std::int64_t r);

struct Lattice {
  Vec2 e1, e2;

  Vec2 point(LatticeCoord c) const {
    return e1 * static_cast<double>(c.a1) + e2 * static_cast<double>(c.a2);
  }
  /// Corners of the hexagon conv(S_A), counter-clockwise starting at e1.
  std::array<Vec2, 6> hexagon() const { return {e1, e2, e2 - e1, -e1, -e2, e1 - e2}; }
};

/// e1 = 2 radial(theta), e2 the third point of (0, e1) on the left.
Lattice lattice_from(const SymmetricBody& body, double theta);

/// Maximum deviation of ||e1||, ||e2||, ||e1-e2|| from 2.
double lattice_defect(const SymmetricBody& body, const Lattice& lat);

struct LatticeRing {
  std::vector<LatticeCoord> coords;  // distance k first, then k+1
  std::vector<Vec2> points;
};

/// All lattice points at graph distance k or k+1 from the origin.
LatticeRing lattice_ring(const Lattice& lat, std::int64_t k);

struct ReconstructedMap {
  LinearMap2 map;   // sends target drawing onto source drawing
  double residual{0.0};
};

/// source[order[i]] and target[iso[order[i]]] are partner vertices; order is a
/// lattice-unique enumeration of the source graph.
ReconstructedMap reconstruct_map(const std::vector<Vec2>& source, const std::vector<Vec2>& target,
                                 const std::vector<std::uint32_t>& iso, const std::vector<std::uint32_t>& order,
                                 double tolerance);

/// Image of b under the linear map taking lat_b onto target, so that the
/// result has target as a lattice.
SymmetricBody align_lattice(const SymmetricBody& b, const Lattice& lat_b, const Lattice& target);

struct SandwichReport {
  bool inner_ok{true};   // conv(S)/2 inside A
  bool outer_ok{true};   // A inside conv(S)
  bool ratio_ok{true};   // ||x||_B / ||x||_A in [1/2, 2]
  bool lattice_shared{true};
  double ratio_min{0.0};
  double ratio_max{0.0};
  Vec2 worst;
  bool pass() const { return inner_ok && outer_ok && ratio_ok && lattice_shared; }
};

/// Checks conv(S)/2 in A in conv(S) and, with a second body sharing the
/// lattice, the norm comparison on random samples.
SandwichReport hexagon_sandwich_check(const SymmetricBody& a, const Lattice& lat, const SymmetricBody* b,
                                      int samples, std::uint64_t seed);

}  // namespace bodygraphs
