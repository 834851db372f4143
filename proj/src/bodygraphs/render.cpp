#include "bodygraphs/render.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace bodygraphs {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  std::string s = buf;
  if (s == "-0.000000") s = "0.000000";
  return s;
}

std::string pt(Vec2 p) { return fmt(p.x) + "," + fmt(-p.y); }

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                          "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

}  // namespace

std::string render_svg(const SvgScene& scene) {
  if (scene.empty()) throw Error(ErrorCode::IoError, "nothing to render");
  double x0 = std::numeric_limits<double>::infinity(), y0 = x0, x1 = -x0, y1 = -x0;
  auto grow = [&](Vec2 p) {
    x0 = std::fmin(x0, p.x);
    x1 = std::fmax(x1, p.x);
    y0 = std::fmin(y0, p.y);
    y1 = std::fmax(y1, p.y);
  };
  double reach = 0.0;
  for (const auto& v : scene.body) reach = std::fmax(reach, length(v));
  for (const auto& c : scene.translates) {
    grow(c + Vec2{reach, reach});
    grow(c - Vec2{reach, reach});
  }
  for (const auto& p : scene.points) grow(p);
  for (const auto& l : scene.polylines)
    for (const auto& p : l.points) grow(p);
  const double margin = 0.05 * std::fmax(x1 - x0, y1 - y0) + 1.0;
  x0 -= margin;
  y0 -= margin;
  x1 += margin;
  y1 += margin;

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" + fmt(x0) + " " + fmt(-y1) + " " + fmt(x1 - x0) + " " +
         fmt(y1 - y0) + "\">\n";
  out += "<rect x=\"" + fmt(x0) + "\" y=\"" + fmt(-y1) + "\" width=\"" + fmt(x1 - x0) + "\" height=\"" + fmt(y1 - y0) +
         "\" fill=\"white\"/>\n";
  if (!scene.body.empty() && !scene.translates.empty()) {
    out += "<g fill=\"#4878cf\" fill-opacity=\"0.1\" stroke=\"#4878cf\" stroke-opacity=\"0.4\" stroke-width=\"0.02\">\n";
    for (const auto& c : scene.translates) {
      out += "<polygon points=\"";
      for (std::size_t i = 0; i < scene.body.size(); ++i) out += (i ? " " : "") + pt(c + scene.body[i]);
      out += "\"/>\n";
    }
    out += "</g>\n";
  }
  for (const auto& l : scene.polylines) {
    if (l.points.empty()) continue;
    out += std::string(l.closed ? "<polygon" : "<polyline") + " fill=\"none\" stroke=\"" + l.colour +
           "\" stroke-width=\"" + fmt(l.width) + "\" points=\"";
    for (std::size_t i = 0; i < l.points.size(); ++i) out += (i ? " " : "") + pt(l.points[i]);
    out += "\"/>\n";
  }
  if (!scene.edges.empty()) {
    out += "<g stroke=\"#222222\" stroke-width=\"0.04\">\n";
    for (const auto& [a, b] : scene.edges) {
      const Vec2 p = scene.points[a], q = scene.points[b];
      out += "<line x1=\"" + fmt(p.x) + "\" y1=\"" + fmt(-p.y) + "\" x2=\"" + fmt(q.x) + "\" y2=\"" + fmt(-q.y) + "\"/>\n";
    }
    out += "</g>\n";
  }
  if (!scene.points.empty()) {
    out += "<g fill=\"#111111\">\n";
    for (const auto& p : scene.points)
      out += "<circle cx=\"" + fmt(p.x) + "\" cy=\"" + fmt(-p.y) + "\" r=\"" + fmt(scene.point_radius) + "\"/>\n";
    out += "</g>\n";
  }
  out += "</svg>\n";
  return out;
}

std::string render_dot(const EmbeddedGraph& g) {
  std::string out = "graph G {\n  node [shape=point];\n";
  for (std::size_t i = 0; i < g.points.size(); ++i)
    out += "  " + std::to_string(i) + " [pos=\"" + fmt(g.points[i].x) + "," + fmt(g.points[i].y) + "!\"];\n";
  for (const auto& [a, b] : g.edges) out += "  " + std::to_string(a) + " -- " + std::to_string(b) + ";\n";
  out += "}\n";
  return out;
}

SvgScene graph_scene(const SymmetricBody& body, const EmbeddedGraph& g) {
  SvgScene s;
  s.body = body.vertices();
  s.translates = g.points;
  s.points = g.points;
  s.edges = g.edges;
  return s;
}

SvgScene witness_scene(const SymmetricBody& body, const ContactWitness& w) {
  SvgScene s = graph_scene(body, w.graph);
  for (std::size_t i = 0; i < w.components.size(); ++i) {
    const auto& c = w.components[i];
    const Vec2 t = w.translations[i];
    s.polylines.push_back({{c.p1 + t, c.q1 + t}, false, kPalette[i % 10], 0.12});
  }
  return s;
}

SvgScene radial_scene(const RadialGadget& q) {
  SvgScene s;
  s.point_radius = 0.3;
  for (const auto& cyc : q.base.sigma) {
    SvgPolyline l{{}, true, "#999999", 0.1};
    for (auto i : cyc) l.points.push_back(q.base.points[i]);
    s.polylines.push_back(std::move(l));
  }
  for (std::int64_t j = 1; j <= q.k; ++j) {
    SvgPolyline l{{}, true, kPalette[(j - 1) % 10], 0.2};
    for (std::size_t i = 0; i < q.boundary.size(); ++i) l.points.push_back(q.ray_point(i, j));
    s.polylines.push_back(std::move(l));
  }
  s.points.push_back(q.s0());
  return s;
}

SvgScene assembly_scene(const OverlapAssembly& a) {
  SvgScene s;
  s.point_radius = 0.3;
  s.points = a.centres;
  for (std::uint32_t c = 0; c < a.centres.size(); ++c) {
    SvgPolyline l{{}, true, kPalette[c % 10], 0.15};
    for (std::size_t i = 0; i < a.gadget->boundary.size(); ++i)
      l.points.push_back(a.centres[c] + a.gadget->unit[i] * (2.0 * static_cast<double>(a.k)));
    s.polylines.push_back(std::move(l));
  }
  for (const auto& [u, v] : a.host.edges) s.polylines.push_back({{a.centres[u], a.centres[v]}, false, "#222222", 0.1});
  return s;
}

}  // namespace bodygraphs
