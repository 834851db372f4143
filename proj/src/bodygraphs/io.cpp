#include "bodygraphs/io.hpp"

#include <cmath>

namespace bodygraphs::io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

double number(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) bad(std::string("missing numeric field \"") + key + "\"");
  const double v = j.at(key).get<double>();
  if (!std::isfinite(v)) bad(std::string("field \"") + key + "\" is not finite");
  return v;
}

int segments_of(const Json& j) {
  if (!j.contains("segments")) return 256;
  if (!j.at("segments").is_number_integer()) bad("\"segments\" must be an integer");
  const int s = j.at("segments").get<int>();
  if (s < 16 || s % 2 != 0) throw Error(ErrorCode::InvalidBody, "segments must be even and at least 16");
  return s;
}

Json index_list(const std::vector<std::uint32_t>& idx) { return Json(idx); }

}  // namespace

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    bad(e.what());
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json to_json(Vec2 v) { return Json::array({v.x, v.y}); }

Json to_json(const LinearMap2& m) { return Json::array({Json::array({m.a11, m.a12}), Json::array({m.a21, m.a22})}); }

Json to_json(const std::vector<Vec2>& pts) {
  Json out = Json::array();
  for (const auto& p : pts) out.push_back(to_json(p));
  return out;
}

Vec2 vec_from(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) bad("expected a point [x, y]");
  const Vec2 v{j[0].get<double>(), j[1].get<double>()};
  if (!std::isfinite(v.x) || !std::isfinite(v.y)) bad("point has a non-finite coordinate");
  return v;
}

LinearMap2 map_from(const Json& j) {
  if (!j.is_array() || j.size() != 2) bad("map must be [[a11, a12], [a21, a22]]");
  const Vec2 r0 = vec_from(j[0]), r1 = vec_from(j[1]);
  return {r0.x, r0.y, r1.x, r1.y};
}

std::vector<Vec2> points_from(const Json& j) {
  const Json& arr = j.is_object() ? (j.contains("points") ? j.at("points") : Json()) : j;
  if (!arr.is_array()) bad("expected a \"points\" array");
  std::vector<Vec2> out;
  for (const auto& p : arr) out.push_back(vec_from(p));
  return out;
}

BodySpec body_spec_from(const Json& j) {
  if (!j.is_object() || !j.contains("type") || !j.at("type").is_string()) bad("body needs a string \"type\"");
  BodySpec spec;
  const std::string type = j.at("type").get<std::string>();
  if (type == "polygon") {
    if (!j.contains("vertices")) bad("polygon needs \"vertices\"");
    spec.shape = PolygonSpec{points_from(j.at("vertices"))};
  } else if (type == "disk") {
    spec.shape = DiskSpec{segments_of(j)};
  } else if (type == "regular") {
    if (!j.contains("n") || !j.at("n").is_number_integer()) bad("regular body needs an integer \"n\"");
    spec.shape = RegularSpec{j.at("n").get<int>(), segments_of(j)};
  } else if (type == "ellipse") {
    const double a = number(j, "a"), b = number(j, "b");
    if (a <= 0.0 || b <= 0.0) throw Error(ErrorCode::InvalidBody, "ellipse axes must be positive");
    spec.shape = EllipseSpec{a, b, segments_of(j)};
  } else {
    bad("unknown body type \"" + type + "\"");
  }
  if (j.contains("map")) spec.map = map_from(j.at("map"));
  if (j.contains("tolerance")) {
    const double t = number(j, "tolerance");
    if (!(t > 0.0)) throw Error(ErrorCode::InvalidBody, "tolerance must be positive");
    spec.tolerance = t;
  }
  if (j.contains("symmetrize")) {
    if (!j.at("symmetrize").is_boolean()) bad("\"symmetrize\" must be a boolean");
    spec.symmetrize = j.at("symmetrize").get<bool>();
  }
  return spec;
}

Json to_json(const BodySpec& spec) {
  Json j = std::visit(
      [](const auto& s) -> Json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, PolygonSpec>) return {{"type", "polygon"}, {"vertices", to_json(s.vertices)}};
        else if constexpr (std::is_same_v<T, DiskSpec>) return {{"type", "disk"}, {"segments", s.segments}};
        else if constexpr (std::is_same_v<T, RegularSpec>) return {{"type", "regular"}, {"n", s.n}, {"segments", s.segments}};
        else return {{"type", "ellipse"}, {"a", s.a}, {"b", s.b}, {"segments", s.segments}};
      },
      spec.shape);
  if (spec.map) j["map"] = to_json(*spec.map);
  if (spec.tolerance) j["tolerance"] = *spec.tolerance;
  if (spec.symmetrize) j["symmetrize"] = true;
  return j;
}

Json to_json(const SymmetricBody& body) {
  return {{"type", "polygon"}, {"vertices", to_json(body.vertices())}, {"tolerance", body.tolerance()}};
}

Json to_json(const UrtcReport& r) {
  Json j{{"urtc", r.urtc}};
  if (!r.urtc) {
    j["edge_index"] = *r.edge_index;
    j["edge"] = Json::array({to_json(r.edge_from), to_json(r.edge_to)});
    j["edge_norm"] = r.edge_norm;
  }
  return j;
}

GraphKind kind_from(const std::string& name) {
  if (name == "Contact" || name == "contact") return GraphKind::Contact;
  if (name == "UnitDistance" || name == "unit") return GraphKind::UnitDistance;
  if (name == "Intersection" || name == "intersection") return GraphKind::Intersection;
  if (name == "EpsOverlap" || name == "overlap") return GraphKind::EpsOverlap;
  bad("unknown graph kind \"" + name + "\"");
}

Json to_json(const EmbeddedGraph& g) {
  Json edges = Json::array();
  for (const auto& [a, b] : g.edges) edges.push_back(Json::array({a, b}));
  return {{"n", g.points.size()}, {"edges", edges}, {"kind", to_string(g.kind)}, {"epsilon", g.epsilon},
          {"points", to_json(g.points)}};
}

EmbeddedGraph graph_from(const Json& j) {
  const Json& g = j.contains("graph") && !j.contains("edges") ? j.at("graph") : j;
  if (!g.is_object() || !g.contains("edges") || !g.contains("points")) bad("graph needs \"points\" and \"edges\"");
  EmbeddedGraph out;
  out.points = points_from(g.at("points"));
  if (g.contains("n") && g.at("n").get<std::size_t>() != out.points.size()) bad("\"n\" does not match the point count");
  out.kind = g.contains("kind") ? kind_from(g.at("kind").get<std::string>()) : GraphKind::Contact;
  out.epsilon = g.contains("epsilon") ? number(g, "epsilon") : 0.0;
  for (const auto& e : g.at("edges")) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_unsigned() || !e[1].is_number_unsigned()) bad("edge must be [i, j]");
    std::uint32_t a = e[0].get<std::uint32_t>(), b = e[1].get<std::uint32_t>();
    if (a >= out.points.size() || b >= out.points.size() || a == b) bad("edge index out of range");
    out.edges.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(out.edges.begin(), out.edges.end());
  out.edges.erase(std::unique(out.edges.begin(), out.edges.end()), out.edges.end());
  return out;
}

Json to_json(const SeparationCertificate& c) {
  Json devs = Json::array();
  for (const auto& d : c.deviations) devs.push_back({{"theta", d.theta}, {"rhoA", d.rho_a}, {"rhoTB", d.rho_tb}, {"dev", d.dev}});
  Json hist = Json::array();
  for (const auto& h : c.history) hist.push_back({{"level", h.level}, {"residual", h.residual}});
  return {{"verdict", to_string(c.verdict)}, {"epsilon", c.epsilon}, {"level", c.theta_set.level},
          {"residual", c.residual}, {"map", to_json(c.best_map)}, {"deviations", devs}, {"history", hist},
          {"note", c.verdict == Verdict::Separated ? "epsilon is half the best residual found by the optimizer"
                                                   : "numeric verdict, not a proof of linear equivalence"}};
}

SeparationCertificate certificate_from(const Json& j) {
  if (!j.is_object() || !j.contains("verdict") || !j.contains("map") || !j.contains("level")) bad("certificate needs verdict, level and map");
  SeparationCertificate c;
  const std::string v = j.at("verdict").get<std::string>();
  if (v == "Separated") c.verdict = Verdict::Separated;
  else if (v == "EquivalentUpToTolerance") c.verdict = Verdict::EquivalentUpToTolerance;
  else bad("unknown verdict \"" + v + "\"");
  c.epsilon = number(j, "epsilon");
  c.residual = j.contains("residual") ? number(j, "residual") : 0.0;
  c.theta_set = direction_set(j.at("level").get<int>());
  c.best_map = map_from(j.at("map"));
  if (j.contains("deviations"))
    for (const auto& d : j.at("deviations"))
      c.deviations.push_back({number(d, "theta"), number(d, "rhoA"), number(d, "rhoTB"), number(d, "dev")});
  if (j.contains("history"))
    for (const auto& h : j.at("history")) c.history.push_back({h.at("level").get<int>(), number(h, "residual")});
  return c;
}

Json to_json(const ContactWitness& w) {
  Json comps = Json::array();
  for (std::size_t i = 0; i < w.components.size(); ++i) {
    const auto& c = w.components[i];
    comps.push_back({{"theta", c.theta},
                     {"ell", c.beam.ell},
                     {"s", c.s},
                     {"s_prime", c.s_prime},
                     {"e", to_json(c.beam.e)},
                     {"f", to_json(c.beam.f)},
                     {"ring", to_json(c.ring.points)},
                     {"beam", to_json(c.beam.points)},
                     {"s1", to_json(c.s1)},
                     {"s2", to_json(c.s2)},
                     {"z1", to_json(c.z1)},
                     {"z2", to_json(c.z2)},
                     {"p", to_json(c.p)},
                     {"q", to_json(c.q)},
                     {"t", to_json(w.translations[i])}});
  }
  return {{"k", w.k},
          {"epsilon", w.epsilon},
          {"scaled", w.scaled},
          {"lattice", {{"e1", to_json(w.lattice.e1)}, {"e2", to_json(w.lattice.e2)}}},
          {"thetas", w.thetas},
          {"components", comps},
          {"points", to_json(w.all_points)},
          {"ring_indices", index_list(w.ring_indices)},
          {"ring_union_lattice_unique", w.ring_union_lattice_unique},
          {"graph", to_json(w.graph)}};
}

Json to_json(const RigidityReport& r) {
  Json comps = Json::array();
  for (const auto& c : r.components)
    comps.push_back({{"theta", c.theta},
                     {"ell", c.ell},
                     {"rhoA", c.rho_a},
                     {"rhoTB", c.rho_tb},
                     {"D", c.d_theta},
                     {"identity_lhs", c.identity_lhs},
                     {"identity_error", c.identity_error},
                     {"scaled_budget", c.scaled_budget},
                     {"slack_bound", c.slack_bound},
                     {"measured_slack", c.measured_slack},
                     {"slack_side1", c.slack_side1},
                     {"slack_side2", c.slack_side2},
                     {"span_side1", c.span_side1},
                     {"span_side2", c.span_side2},
                     {"rigid", c.rigid}});
  return {{"k", r.k},
          {"epsilon", r.epsilon},
          {"scaled", r.scaled},
          {"semantics", r.scaled ? "scaled: 4 ell eps against the connector slack" : "full: max D against 180"},
          {"full_budget", r.full_budget},
          {"max_D", r.max_d},
          {"identity_ok", r.identity_ok},
          {"slack_within_bound", r.slack_within_bound},
          {"ell_exceeds_quarter_k", r.ell_exceeds_quarter_k},
          {"full_ok", r.full_ok},
          {"separated_by_rigidity", r.separated_by_rigidity},
          {"components", comps}};
}

Json to_json(const NestedCycleGadget& g) {
  Json coords = Json::array();
  for (const auto& c : g.coords) coords.push_back(Json::array({c.a1, c.a2}));
  Json sigma = Json::array(), tau = Json::array(), kappa = Json::array();
  for (const auto& s : g.sigma) sigma.push_back(index_list(s));
  for (const auto& t : g.tau) tau.push_back(index_list(t));
  for (const auto& k : g.kappa) kappa.push_back(index_list(k));
  return {{"k", g.k},
          {"tails", g.tails == TailPolicy::Minimal ? "minimal" : "packing"},
          {"lattice", {{"e1", to_json(g.lattice.e1)}, {"e2", to_json(g.lattice.e2)}}},
          {"points", to_json(g.points)},
          {"coords", coords},
          {"s0", g.s0},
          {"t_k", g.t_k},
          {"radii", g.radii},
          {"sigma", sigma},
          {"tau", tau},
          {"kappa", kappa}};
}

Json to_json(const RadialGadget& q) {
  Json alpha = Json::array();
  for (std::int64_t j = 1; j <= q.k; ++j) alpha.push_back(index_list(q.alpha(j)));
  return {{"k", q.k},
          {"k_prime", q.k_prime},
          {"base", to_json(q.base)},
          {"boundary", index_list(q.boundary)},
          {"depth", q.depth},
          {"boundary_norm", q.boundary_norm},
          {"unit", to_json(q.unit)},
          {"ray_offset", q.ray_offset},
          {"size", q.size()},
          {"alpha", alpha},
          {"note", "depths come from the canonical lattice drawing, not the minimum over all drawings"}};
}

Json to_json(const AlphaReport& r) {
  return {{"j", r.j},
          {"pass", r.pass()},
          {"edges_ok", r.edges_ok},
          {"worst_edge", r.worst_edge},
          {"worst_edge_index", r.worst_edge_index},
          {"annulus_ok", r.annulus_ok},
          {"min_radius", r.min_radius},
          {"max_radius", r.max_radius},
          {"worst_vertex", r.worst_vertex},
          {"winding_turns", r.winding_turns},
          {"winding", r.winding},
          {"winding_ok", r.winding_ok}};
}

Json to_json(const PerturbationReport& r) {
  return {{"accepted", r.accepted},       {"attempts", r.attempts},
          {"rejected", r.rejected},       {"final_eta", r.final_eta},
          {"critical_pairs", r.critical_pairs}, {"tightest_gap", r.tightest_gap},
          {"pass", r.all_pass},           {"first_failure_j", r.first_failure_j},
          {"first_failure", r.first_failure}};
}

Json to_json(const CrossEdgeScan& s) {
  std::vector<int> level_k(s.host_edge_has_level_k.begin(), s.host_edge_has_level_k.end());
  return {{"cross_edges", s.cross_edges},
          {"min_level_sum", s.min_level_sum},
          {"worst_copies", Json::array({s.worst_copies.first, s.worst_copies.second})},
          {"host_edge_has_level_k", level_k},
          {"floor_ok", s.floor_ok},
          {"level_k_ok", s.level_k_ok}};
}

Json to_json(const CentreBoundsReport& r) {
  Json j{{"lower", r.lower}, {"upper", r.upper}, {"min_any", r.min_any}, {"max_adjacent", r.max_adjacent}, {"pass", r.pass}};
  if (r.violation) j["violation"] = Json::array({r.violation->first, r.violation->second});
  return j;
}

Json to_json(const AssemblyPerturbationReport& r) {
  return {{"accepted", r.accepted}, {"attempts", r.attempts},   {"final_eta", r.final_eta},
          {"critical_pairs", r.critical_pairs}, {"pass", r.all_pass}, {"min_any", r.min_any},
          {"max_adjacent", r.max_adjacent}};
}

Json to_json(const OverlapRealization& r) {
  return {{"k", r.k},
          {"epsilon", r.epsilon},
          {"floor", r.floor},
          {"min_distance", r.min_distance},
          {"host_edges_kept", r.host_edges_kept},
          {"graph", to_json(r.graph)}};
}

Json to_json(const RefinementReport& r) {
  Json steps = Json::array();
  for (const auto& s : r.steps)
    steps.push_back({{"k", s.k}, {"epsilon", s.epsilon}, {"min_distance", s.min_distance}, {"radius", s.radius}});
  return {{"steps", steps},
          {"monotone", r.monotone},
          {"bounded", r.bounded},
          {"final_threshold", r.final_threshold},
          {"limit", to_json(r.limit)},
          {"contains_host", r.contains_host}};
}

}  // namespace bodygraphs::io
