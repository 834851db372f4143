#include "bodygraphs/bodygraphs.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "bodygraphs/pipeline.hpp"
#include "bodygraphs/render.hpp"

using namespace bodygraphs;
using io::Json;

struct bg_body {
  SymmetricBody body;
};

struct bg_certificate {
  SeparationCertificate cert;
};

struct bg_contact_witness {
  ContactWitness w;
  SymmetricBody a;
};

namespace {

thread_local std::string g_last_error;

bg_status status_of(ErrorCode c) { return static_cast<bg_status>(static_cast<int>(c) + 1); }

bg_status fail(bg_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

// Runs f, maps every exception onto a status.
template <class F>
bg_status guard(F&& f) {
  try {
    g_last_error.clear();
    f();
    return BG_OK;
  } catch (const Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(BG_ERR_PARSE, e.what());
  } catch (const std::bad_alloc&) {
    return fail(BG_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(BG_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(BG_ERR_INTERNAL, "unknown failure");
  }
}

void need(const void* p, const char* what) {
  if (!p) throw Error(ErrorCode::InvalidArgument, std::string(what) + " is NULL");
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void put(char** out, const std::string& s) {
  if (out) *out = dup(s);
}

GraphKind kind_of(bg_graph_kind k) {
  switch (k) {
    case BG_GRAPH_CONTACT: return GraphKind::Contact;
    case BG_GRAPH_UNIT_DISTANCE: return GraphKind::UnitDistance;
    case BG_GRAPH_INTERSECTION: return GraphKind::Intersection;
    case BG_GRAPH_EPS_OVERLAP: return GraphKind::EpsOverlap;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown graph kind");
}

std::vector<Edge> edges_of(const Json& j) {
  std::vector<Edge> out;
  if (!j.contains("edges")) return out;
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_unsigned() || !e[1].is_number_unsigned())
      throw Error(ErrorCode::ParseError, "edge must be [i, j]");
    out.emplace_back(e[0].get<std::uint32_t>(), e[1].get<std::uint32_t>());
  }
  return out;
}

EmbeddedGraph build(const SymmetricBody& body, std::vector<Vec2> pts, GraphKind kind, double eps,
                    const std::vector<Edge>& candidates) {
  if (kind == GraphKind::EpsOverlap) return build_eps_overlap(body, std::move(pts), eps, candidates);
  return build_graph(body, std::move(pts), kind);
}

}  // namespace

extern "C" {

const char* bg_version(void) { return "1.0.0"; }

const char* bg_status_name(bg_status s) {
  if (s == BG_OK) return "Ok";
  if (s == BG_ERR_INTERNAL) return "Internal";
  if (s > BG_OK && s < BG_ERR_INTERNAL) return to_string(static_cast<ErrorCode>(static_cast<int>(s) - 1));
  return "Unknown";
}

const char* bg_last_error(void) { return g_last_error.c_str(); }

void bg_string_free(char* s) { std::free(s); }

void bg_body_options_init(bg_body_options* opts) {
  if (opts) *opts = bg_body_options{0, 0.0, 0};
}

bg_status bg_body_from_json(const char* json, const bg_body_options* opts, bg_body** out) {
  return guard([&] {
    need(json, "json");
    need(out, "out");
    BodySpec spec = io::body_spec_from(io::parse(json));
    if (opts) {
      if (opts->segments > 0) {
        if (opts->segments < 16 || opts->segments % 2)
          throw Error(ErrorCode::InvalidBody, "segments must be even and at least 16");
        std::visit([&](auto& s) {
          if constexpr (requires { s.segments; }) s.segments = opts->segments;
        }, spec.shape);
      }
      if (opts->tolerance > 0.0) spec.tolerance = opts->tolerance;
      if (opts->symmetrize == 1) spec.symmetrize = true;
    }
    *out = new bg_body{discretize(spec)};
  });
}

bg_status bg_body_from_points(const double* xy, size_t n, int symmetrize_flag, double tolerance, bg_body** out) {
  return guard([&] {
    need(xy, "xy");
    need(out, "out");
    std::vector<Vec2> pts(n);
    for (size_t i = 0; i < n; ++i) pts[i] = {xy[2 * i], xy[2 * i + 1]};
    const double tol = tolerance > 0.0 ? tolerance : kDefaultTolerance;
    *out = new bg_body{symmetrize_flag ? symmetrize(pts, tol) : SymmetricBody(pts, tol)};
  });
}

bg_status bg_body_apply(const bg_body* body, const double m[4], bg_body** out) {
  return guard([&] {
    need(body, "body");
    need(m, "m");
    need(out, "out");
    *out = new bg_body{body->body.apply({m[0], m[1], m[2], m[3]})};
  });
}

void bg_body_free(bg_body* body) { delete body; }

bg_status bg_body_to_json(const bg_body* body, char** out) {
  return guard([&] {
    need(body, "body");
    need(out, "out");
    *out = dup(io::dump(io::to_json(body->body)));
  });
}

size_t bg_body_vertex_count(const bg_body* body) { return body ? body->body.size() : 0; }

bg_status bg_body_vertices(const bg_body* body, double* xy, size_t capacity) {
  return guard([&] {
    need(body, "body");
    need(xy, "xy");
    const auto& v = body->body.vertices();
    if (capacity < 2 * v.size()) throw Error(ErrorCode::InvalidArgument, "buffer too small");
    for (size_t i = 0; i < v.size(); ++i) {
      xy[2 * i] = v[i].x;
      xy[2 * i + 1] = v[i].y;
    }
  });
}

bg_status bg_body_norm(const bg_body* body, double x, double y, double* out) {
  return guard([&] {
    need(body, "body");
    need(out, "out");
    *out = body->body.norm({x, y});
  });
}

bg_status bg_body_radial(const bg_body* body, double theta, double out[2]) {
  return guard([&] {
    need(body, "body");
    need(out, "out");
    const Vec2 r = body->body.radial(theta);
    out[0] = r.x;
    out[1] = r.y;
  });
}

bg_status bg_body_signature(const bg_body* body, double theta, double* out) {
  return guard([&] {
    need(body, "body");
    need(out, "out");
    *out = body->body.signature(theta);
  });
}

bg_status bg_body_relation(const bg_body* body, double x, double y, bg_relation* out) {
  return guard([&] {
    need(body, "body");
    need(out, "out");
    *out = static_cast<bg_relation>(static_cast<int>(body->body.relation({x, y})));
  });
}

bg_status bg_body_urtc(const bg_body* body, int* holds, char** report) {
  return guard([&] {
    need(body, "body");
    need(holds, "holds");
    const UrtcReport r = body->body.urtc();
    *holds = r.urtc ? 1 : 0;
    put(report, io::dump(io::to_json(r)));
  });
}

bg_status bg_body_signature_csv(const bg_body* body, size_t samples, char** out) {
  return guard([&] {
    need(body, "body");
    need(out, "out");
    if (samples == 0) throw Error(ErrorCode::InvalidArgument, "samples must be positive");
    std::string csv = "theta,rho\n";
    char line[96];
    for (size_t i = 0; i < samples; ++i) {
      const double t = M_PI * static_cast<double>(i) / static_cast<double>(samples);
      std::snprintf(line, sizeof line, "%.17g,%.17g\n", t, body->body.signature(t));
      csv += line;
    }
    *out = dup(csv);
  });
}

bg_status bg_graph_build(const bg_body* body, const char* points_json, bg_graph_kind kind, double epsilon,
                         char** graph_json) {
  return guard([&] {
    need(body, "body");
    need(points_json, "points_json");
    need(graph_json, "graph_json");
    const Json j = io::parse(points_json);
    const GraphKind k = kind_of(kind);
    const EmbeddedGraph g = build(body->body, io::points_from(j), k, epsilon, edges_of(j));
    *graph_json = dup(io::dump(io::to_json(g)));
  });
}

bg_status bg_graph_verify(const bg_body* body, const char* graph_json, int* pass, char** report) {
  return guard([&] {
    need(body, "body");
    need(graph_json, "graph_json");
    need(pass, "pass");
    const EmbeddedGraph g = io::graph_from(io::parse(graph_json));
    const EmbeddedGraph r = build(body->body, g.points, g.kind, g.epsilon, g.edges);
    Json missing = Json::array(), extra = Json::array();
    std::size_t i = 0, k = 0;
    while (i < g.edges.size() || k < r.edges.size()) {
      if (k == r.edges.size() || (i < g.edges.size() && g.edges[i] < r.edges[k])) {
        extra.push_back({g.edges[i].first, g.edges[i].second});
        ++i;
      } else if (i == g.edges.size() || r.edges[k] < g.edges[i]) {
        missing.push_back({r.edges[k].first, r.edges[k].second});
        ++k;
      } else {
        ++i;
        ++k;
      }
    }
    *pass = missing.empty() && extra.empty() ? 1 : 0;
    put(report, io::dump({{"pass", *pass == 1},
                          {"kind", to_string(g.kind)},
                          {"n", g.points.size()},
                          {"edges", g.edges.size()},
                          {"edges_not_realized", extra},
                          {"edges_missing", missing}}));
  });
}

bg_status bg_graph_dot(const char* graph_json, char** out) {
  return guard([&] {
    need(graph_json, "graph_json");
    need(out, "out");
    *out = dup(render_dot(io::graph_from(io::parse(graph_json))));
  });
}

bg_status bg_graph_svg(const bg_body* body, const char* graph_json, char** out) {
  return guard([&] {
    need(body, "body");
    need(graph_json, "graph_json");
    need(out, "out");
    *out = dup(render_svg(graph_scene(body->body, io::graph_from(io::parse(graph_json)))));
  });
}

bg_status bg_third_points(const bg_body* body, const double v1[2], const double v2[2], double out[4]) {
  return guard([&] {
    need(body, "body");
    need(v1, "v1");
    need(v2, "v2");
    need(out, "out");
    const ThirdPoints t = third_points(body->body, {v1[0], v1[1]}, {v2[0], v2[1]});
    out[0] = t.left.x;
    out[1] = t.left.y;
    out[2] = t.right.x;
    out[3] = t.right.y;
  });
}

bg_status bg_lattice(const bg_body* body, double theta, double out[4]) {
  return guard([&] {
    need(body, "body");
    need(out, "out");
    const Lattice l = lattice_from(body->body, theta);
    out[0] = l.e1.x;
    out[1] = l.e1.y;
    out[2] = l.e2.x;
    out[3] = l.e2.y;
  });
}

void bg_separation_options_init(bg_separation_options* opts) {
  if (!opts) return;
  const SeparationOptions d;
  *opts = bg_separation_options{d.max_level, d.margin, d.fit.seeds, d.fit.iterations, d.fit.rng_seed};
}

bg_status bg_separate(const bg_body* a, const bg_body* b, const bg_separation_options* opts, bg_certificate** out) {
  return guard([&] {
    need(a, "a");
    need(b, "b");
    need(out, "out");
    SeparationOptions so;
    if (opts) {
      if (opts->max_level < 2 || opts->max_level > 12) throw Error(ErrorCode::InvalidArgument, "max level must lie in [2, 12]");
      if (!(opts->margin > 0.0)) throw Error(ErrorCode::InvalidArgument, "margin must be positive");
      if (opts->seeds < 1 || opts->iterations < 1) throw Error(ErrorCode::InvalidArgument, "seeds and iterations must be positive");
      so.max_level = opts->max_level;
      so.margin = opts->margin;
      so.fit.seeds = opts->seeds;
      so.fit.iterations = opts->iterations;
      so.fit.rng_seed = opts->rng_seed;
    }
    *out = new bg_certificate{find_separation(a->body, b->body, so)};
  });
}

bg_status bg_certificate_from_json(const char* json, bg_certificate** out) {
  return guard([&] {
    need(json, "json");
    need(out, "out");
    *out = new bg_certificate{io::certificate_from(io::parse(json))};
  });
}

void bg_certificate_free(bg_certificate* cert) { delete cert; }

int bg_certificate_separated(const bg_certificate* cert) {
  return cert && cert->cert.verdict == Verdict::Separated ? 1 : 0;
}

double bg_certificate_epsilon(const bg_certificate* cert) { return cert ? cert->cert.epsilon : NAN; }

double bg_certificate_residual(const bg_certificate* cert) { return cert ? cert->cert.residual : NAN; }

int bg_certificate_level(const bg_certificate* cert) { return cert ? cert->cert.theta_set.level : -1; }

bg_status bg_certificate_to_json(const bg_certificate* cert, char** out) {
  return guard([&] {
    need(cert, "cert");
    need(out, "out");
    *out = dup(io::dump(io::to_json(cert->cert)));
  });
}

bg_status bg_certificate_verify(const bg_body* a, const bg_body* b, const bg_certificate* cert, int* pass, char** report) {
  return guard([&] {
    need(a, "a");
    need(b, "b");
    need(cert, "cert");
    need(pass, "pass");
    const SeparationCertificate& c = cert->cert;
    const DeviationReport r = signature_deviation(a->body, b->body, c.best_map, c.theta_set.angles);
    auto close = [](double x, double y) { return std::fabs(x - y) <= 1e-9 * std::fmax(1.0, std::fabs(y)); };
    bool devs_ok = c.deviations.size() == r.per_angle.size();
    for (std::size_t i = 0; devs_ok && i < r.per_angle.size(); ++i)
      devs_ok = close(r.per_angle[i].theta, c.deviations[i].theta) && close(r.per_angle[i].dev, c.deviations[i].dev);
    const bool residual_ok = close(r.max_dev, c.residual);
    const bool eps_ok = c.verdict == Verdict::Separated ? c.epsilon > 0.0 && c.epsilon <= 0.5 * c.residual + 1e-12
                                                        : c.epsilon == 0.0;
    *pass = devs_ok && residual_ok && eps_ok ? 1 : 0;
    put(report, io::dump({{"pass", *pass == 1},
                          {"deviations_reproduced", devs_ok},
                          {"residual_reproduced", residual_ok},
                          {"epsilon_consistent", eps_ok},
                          {"max_dev", r.max_dev},
                          {"argmax_theta", r.argmax_theta},
                          {"note", "checks the stored map only; optimality of the residual is not certified"}}));
  });
}

void bg_witness_options_init(bg_witness_options* opts) {
  if (opts) *opts = bg_witness_options{0, 0, 3, 0.0};
}

bg_status bg_contact_witness_build(const bg_body* a, const bg_certificate* cert, const bg_witness_options* opts,
                                   bg_contact_witness** out) {
  return guard([&] {
    need(a, "a");
    need(cert, "cert");
    need(out, "out");
    WitnessOptions wo;
    if (opts) {
      if (opts->k < 0) throw Error(ErrorCode::InvalidArgument, "k must be non-negative");
      if (opts->k > 0) wo.k_override = opts->k;
      wo.full_theta = opts->full_theta != 0;
      wo.top_angles = opts->top_angles;
      wo.lattice_theta = opts->lattice_theta;
    }
    *out = new bg_contact_witness{assemble_witness(a->body, cert->cert, wo), a->body};
  });
}

void bg_contact_witness_free(bg_contact_witness* w) { delete w; }

int64_t bg_contact_witness_k(const bg_contact_witness* w) { return w ? w->w.k : 0; }

size_t bg_contact_witness_point_count(const bg_contact_witness* w) { return w ? w->w.all_points.size() : 0; }

bg_status bg_contact_witness_to_json(const bg_contact_witness* w, char** out) {
  return guard([&] {
    need(w, "w");
    need(out, "out");
    *out = dup(io::dump(io::to_json(w->w)));
  });
}

bg_status bg_contact_witness_svg(const bg_contact_witness* w, char** out) {
  return guard([&] {
    need(w, "w");
    need(out, "out");
    *out = dup(render_svg(witness_scene(w->a, w->w)));
  });
}

bg_status bg_contact_witness_verify(const bg_contact_witness* w, const bg_body* b, const bg_certificate* cert, int* ok,
                                    int* separated_by_rigidity, char** report) {
  return guard([&] {
    need(w, "w");
    need(b, "b");
    need(cert, "cert");
    const RigidityReport r = verify_rigidity(w->w, w->a, b->body, cert->cert.best_map);
    const bool compatible = is_compatible(w->a, w->w.all_points);
    const bool good = compatible && w->w.ring_union_lattice_unique && r.identity_ok;
    if (ok) *ok = good ? 1 : 0;
    if (separated_by_rigidity) *separated_by_rigidity = r.separated_by_rigidity ? 1 : 0;
    if (report) {
      Json j = io::to_json(r);
      j["compatible"] = compatible;
      j["ring_union_lattice_unique"] = w->w.ring_union_lattice_unique;
      j["points"] = w->w.all_points.size();
      j["edges"] = w->w.graph.edges.size();
      *report = dup(io::dump(j));
    }
  });
}

bg_status bg_minimal_rigid_k(const bg_body* a, double theta, double epsilon, int64_t* out) {
  return guard([&] {
    need(a, "a");
    need(out, "out");
    if (!(epsilon > 0.0)) throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");
    *out = minimal_rigid_k(a->body, lattice_from(a->body, 0.0), theta, epsilon);
  });
}

void bg_intersection_options_init(bg_intersection_options* opts) {
  if (!opts) return;
  const IntersectionOptions d;
  *opts = bg_intersection_options{};
  opts->k = d.k;
  opts->drawings = d.perturb.drawings;
  opts->eta = d.perturb.eta;
  opts->seed = d.perturb.seed;
  opts->host_json = nullptr;
  opts->schedule_len = d.schedule.size();
  for (size_t i = 0; i < d.schedule.size(); ++i) opts->schedule[i] = d.schedule[i];
}

bg_status bg_intersection_run(const bg_body* body, const bg_intersection_options* opts, int* pass, char** report,
                              char** gadget, char** svg) {
  return guard([&] {
    need(body, "body");
    need(pass, "pass");
    IntersectionOptions io_opts;
    if (opts) {
      if (opts->k < 7) throw Error(ErrorCode::InvalidArgument, "k must be at least 7");
      if (opts->drawings < 1) throw Error(ErrorCode::InvalidArgument, "drawings must be positive");
      if (!(opts->eta > 0.0 && opts->eta < 0.1)) throw Error(ErrorCode::InvalidArgument, "eta must lie in (0, 0.1)");
      if (opts->schedule_len > 8) throw Error(ErrorCode::InvalidArgument, "schedule holds at most 8 entries");
      io_opts.k = opts->k;
      io_opts.perturb.drawings = opts->drawings;
      io_opts.perturb.eta = opts->eta;
      io_opts.perturb.seed = opts->seed;
      if (opts->host_json) {
        EmbeddedGraph host = io::graph_from(io::parse(opts->host_json));
        host.kind = GraphKind::Contact;
        io_opts.hosts.push_back(std::move(host));
      }
      io_opts.schedule.assign(opts->schedule, opts->schedule + opts->schedule_len);
    }
    IntersectionRun run = run_intersection(body->body, io_opts);
    *pass = run.pass ? 1 : 0;
    put(report, io::dump(run.report));
    put(gadget, io::dump(io::to_json(*run.gadget)));
    if (svg) *svg = dup(render_svg(radial_scene(*run.gadget)));
  });
}

bg_status bg_nested_build(const bg_body* body, int64_t k, int packing, int* triangle_free, int* nested, char** gadget) {
  return guard([&] {
    need(body, "body");
    if (k < 0) throw Error(ErrorCode::InvalidArgument, "k must be non-negative");
    const NestedCycleGadget g = build_nested(body->body, k, packing ? TailPolicy::Packing : TailPolicy::Minimal);
    if (triangle_free) *triangle_free = verify_triangle_free(nested_graph(body->body, g)) ? 1 : 0;
    if (nested) *nested = verify_nesting(g).pass ? 1 : 0;
    put(gadget, io::dump(io::to_json(g)));
  });
}

}  // extern "C"
