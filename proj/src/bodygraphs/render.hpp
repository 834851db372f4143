#pragma once

#include <string>
#include <vector>

#include "bodygraphs/contact_witness.hpp"
#include "bodygraphs/intersection_witness.hpp"

namespace bodygraphs {

struct SvgPolyline {
  std::vector<Vec2> points;
  bool closed{false};
  std::string colour{"#333333"};
  double width{0.05};
};

struct SvgScene {
  std::vector<Vec2> body;        // outline drawn at every translate, may be empty
  std::vector<Vec2> translates;  // centres of the drawn bodies
  std::vector<Vec2> points;
  std::vector<Edge> edges;       // into points
  std::vector<SvgPolyline> polylines;
  double point_radius{0.08};

  bool empty() const { return translates.empty() && points.empty() && polylines.empty(); }
};

/// Deterministic SVG, coordinates at six decimals, y axis pointing up.
/// Throws IoError on an empty scene.
std::string render_svg(const SvgScene& scene);

/// DOT text with node positions as pos attributes.
std::string render_dot(const EmbeddedGraph& g);

/// One unit translate of the body per vertex (they touch exactly on contact edges).
SvgScene graph_scene(const SymmetricBody& body, const EmbeddedGraph& g);
SvgScene witness_scene(const SymmetricBody& body, const ContactWitness& w);
/// sigma cycles in grey, alpha_j coloured by j, s0 marked.
SvgScene radial_scene(const RadialGadget& q);
/// Host copies: centres, the j = k cycles of every copy.
SvgScene assembly_scene(const OverlapAssembly& a);

}  // namespace bodygraphs
