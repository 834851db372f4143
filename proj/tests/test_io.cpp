#include <doctest.h>

#include <functional>
#include <optional>
#include <set>

#include "bodygraphs/io.hpp"
#include "bodygraphs/render.hpp"

using namespace bodygraphs;

namespace {

SymmetricBody body_of(const std::string& text) { return discretize(io::body_spec_from(io::parse(text))); }

std::optional<ErrorCode> code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("body specs") {
  CHECK(body_of(R"({"type":"disk","segments":256})").vertices().size() == 256);
  CHECK(body_of(R"({"type":"regular","n":6})").vertices().size() == 6);
  const auto tri = body_of(R"({"type":"polygon","vertices":[[0,0],[1,0],[0,1]],"symmetrize":true})");
  CHECK(tri.vertices().size() == 6);
  CHECK(code_of([] { body_of(R"({"type":"polygon","vertices":[[0,0],[1,0],[0,1]]})"); }) == ErrorCode::InvalidBody);
  CHECK(code_of([] { body_of(R"({"type":"disk","segments":15})"); }) == ErrorCode::InvalidBody);
  CHECK(code_of([] { body_of(R"({"type":"blob"})"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { io::parse("{"); }) == ErrorCode::ParseError);

  // a mapped spec is the image of the plain one
  const auto sq = body_of(R"({"type":"polygon","vertices":[[1,1],[-1,1],[-1,-1],[1,-1]],"map":[[2,0],[0,1]]})");
  CHECK(sq.norm({2, 0}) == doctest::Approx(1.0));
  CHECK(sq.norm({0, 1}) == doctest::Approx(1.0));
}

TEST_CASE("round trips") {
  const auto hex = make_regular(6);
  const auto again = discretize(io::body_spec_from(io::parse(io::dump(io::to_json(hex)))));
  REQUIRE(again.vertices().size() == hex.vertices().size());
  for (std::size_t i = 0; i < hex.vertices().size(); ++i) CHECK(again.vertices()[i] == hex.vertices()[i]);

  const auto g = build_graph(hex, {{0, 0}, {2, 0}, {1, std::sqrt(3.0)}, {0.1, 7}}, GraphKind::Contact);
  const auto g2 = io::graph_from(io::parse(io::dump(io::to_json(g))));
  CHECK(g2.points == g.points);
  CHECK(g2.edges == g.edges);
  CHECK(g2.kind == g.kind);
  CHECK(io::kind_from("overlap") == GraphKind::EpsOverlap);
  CHECK(code_of([] { io::kind_from("knot"); }) == ErrorCode::ParseError);

  const SeparationCertificate c = find_separation(make_disk(), hex);
  const std::string text = io::dump(io::to_json(c));
  const SeparationCertificate c2 = io::certificate_from(io::parse(text));
  CHECK(c2.verdict == c.verdict);
  CHECK(c2.epsilon == c.epsilon);
  CHECK(c2.residual == c.residual);
  CHECK(c2.theta_set.level == c.theta_set.level);
  CHECK(c2.best_map.a11 == c.best_map.a11);
  REQUIRE(c2.deviations.size() == c.deviations.size());
  CHECK(c2.deviations.back().dev == c.deviations.back().dev);
  CHECK(io::dump(io::to_json(c2)) == text);
}

TEST_CASE("svg and dot") {
  const auto hex = make_regular(6);
  const auto g = build_graph(hex, {{0, 0}, {2, 0}, {1, std::sqrt(3.0)}}, GraphKind::Contact);
  const std::string a = render_svg(graph_scene(hex, g));
  CHECK(a == render_svg(graph_scene(hex, g)));
  CHECK(a.rfind("<svg", 0) == 0);
  CHECK(a.find("</svg>") != std::string::npos);
  CHECK(code_of([] { render_svg(SvgScene{}); }) == ErrorCode::IoError);

  const std::string dot = render_dot(g);
  CHECK(dot.find("pos=") != std::string::npos);
  CHECK(dot.find("0 -- 1") != std::string::npos);

  // every alpha_j gets its own colour
  const RadialGadget q = build_radial(make_disk(), 7);
  const SvgScene s = radial_scene(q);
  std::set<std::string> colours;
  for (const auto& p : s.polylines) colours.insert(p.colour);
  CHECK(colours.size() >= static_cast<std::size_t>(q.k - 2));
}

}
