#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "bodygraphs/bodygraphs.h"

namespace {

using Json = nlohmann::json;

enum Exit { kOk = 0, kNegative = 2, kInput = 3, kInternal = 4 };

// carries a library status out of a command
struct Failure {
  bg_status status;
  std::string message;
};

int exit_for(bg_status s) {
  switch (s) {
    case BG_OK: return kOk;
    case BG_ERR_PARSE:
    case BG_ERR_INVALID_BODY:
    case BG_ERR_DEGENERATE_BODY:
    case BG_ERR_SINGULAR_MAP:
    case BG_ERR_NOT_COMPATIBLE:
    case BG_ERR_PAIR_TOO_CLOSE:
    case BG_ERR_NOT_URTC:
    case BG_ERR_IO:
    case BG_ERR_INVALID_ARGUMENT:
      return kInput;
    default:
      return kInternal;
  }
}

void check(bg_status s) {
  if (s != BG_OK) throw Failure{s, bg_last_error()};
}

// owning wrappers over the C handles
struct BodyFree {
  void operator()(bg_body* b) const { bg_body_free(b); }
};
struct CertFree {
  void operator()(bg_certificate* c) const { bg_certificate_free(c); }
};
struct WitnessFree {
  void operator()(bg_contact_witness* w) const { bg_contact_witness_free(w); }
};
using Body = std::unique_ptr<bg_body, BodyFree>;
using Cert = std::unique_ptr<bg_certificate, CertFree>;
using Witness = std::unique_ptr<bg_contact_witness, WitnessFree>;

std::string take(char* s) {
  std::string out = s ? s : "";
  bg_string_free(s);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{BG_ERR_IO, "cannot read " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// a certificate file, or the report written by separate --json
std::string read_certificate(const std::string& path) {
  const std::string text = read_file(path);
  const Json j = Json::parse(text, nullptr, false);
  if (j.is_object() && j.contains("certificate")) return j["certificate"].dump();
  return text;
}

// FNV-1a, enough to tell whether a replay reproduced a file
std::string digest(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

struct Run {
  std::vector<std::string> argv;
  Json params = Json::object();
  Json inputs = Json::array();
  Json outputs = Json::object();
  Json timings = Json::object();
  Json verdicts = Json::object();
  std::string manifest;
  bool echo{true};  // print the main JSON when no --json path is given

  void write(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) throw Failure{BG_ERR_IO, "cannot write " + path};
    outputs[path] = {{"bytes", text.size()}, {"fnv1a", digest(text)}};
  }

  void emit(const std::string& path, const std::string& text) {
    if (!path.empty()) write(path, text);
    else if (echo) std::cout << text;
  }

  template <class F>
  auto timed(const std::string& stage, F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    auto r = f();
    timings[stage] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
  }
};

struct BodyArgs {
  double tolerance{0.0};
  int segments{0};
  bool symmetrize{false};
};

void add_body_flags(CLI::App* app, BodyArgs& b) {
  app->add_option("--tolerance", b.tolerance, "touch tolerance of the loaded bodies")->check(CLI::PositiveNumber);
  app->add_option("--segments", b.segments, "polygon segments for disks and ellipses");
  app->add_flag("--symmetrize", b.symmetrize, "replace each body by its halved difference body");
}

Body load_body(Run& run, const std::string& path, const BodyArgs& b) {
  bg_body_options o;
  bg_body_options_init(&o);
  o.tolerance = b.tolerance;
  o.segments = b.segments;
  o.symmetrize = b.symmetrize ? 1 : 0;
  bg_body* out = nullptr;
  check(bg_body_from_json(read_file(path).c_str(), &o, &out));
  run.inputs.push_back(path);
  return Body(out);
}

Json parse(const std::string& s) { return Json::parse(s); }

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

struct SeparateArgs {
  std::string a, b;
  BodyArgs body;
  bg_separation_options sep{};
  std::int64_t k{24};
  bool scaled{false};
  bool full_theta{false};
  bool no_witness{false};
  std::string json, svg, certificate;
};

void add_separation_flags(CLI::App* app, SeparateArgs& s) {
  bg_separation_options_init(&s.sep);
  app->add_option("--max-level", s.sep.max_level, "deepest direction level 2^L")->check(CLI::Range(2, 12));
  app->add_option("--margin", s.sep.margin, "residual margin that counts as separated")->check(CLI::PositiveNumber);
  app->add_option("--seeds", s.sep.seeds, "random starts of the optimizer")->check(CLI::PositiveNumber);
}

void add_witness_flags(CLI::App* app, SeparateArgs& s) {
  app->add_option("--k", s.k, "ring index used with --scaled")->check(CLI::Range(std::int64_t{1}, std::int64_t{1} << 40));
  app->add_flag("--scaled", s.scaled, "build at --k instead of ceil(180/eps)");
  app->add_flag("--full", s.full_theta, "one beam per certificate direction");
  app->add_option("--json", s.json, "report path");
  app->add_option("--svg", s.svg, "witness drawing path");
}

int run_separate(Run& run, const SeparateArgs& s, bool witness_required) {
  const Body a = load_body(run, s.a, s.body);
  const Body b = load_body(run, s.b, s.body);
  run.params["separation"] = {{"max_level", s.sep.max_level}, {"margin", s.sep.margin}, {"seeds", s.sep.seeds},
                              {"iterations", s.sep.iterations}, {"rng_seed", s.sep.rng_seed}};
  if (s.body.tolerance > 0.0) run.params["tolerance"] = s.body.tolerance;

  Cert cert;
  if (!s.certificate.empty()) {
    bg_certificate* c = nullptr;
    check(bg_certificate_from_json(read_certificate(s.certificate).c_str(), &c));
    cert.reset(c);
    run.inputs.push_back(s.certificate);
  } else {
    cert = run.timed("separate", [&] {
      bg_certificate* c = nullptr;
      check(bg_separate(a.get(), b.get(), &s.sep, &c));
      return Cert(c);
    });
  }
  Json report;
  report["certificate"] = parse(take([&] {
    char* t = nullptr;
    check(bg_certificate_to_json(cert.get(), &t));
    return t;
  }()));
  const bool separated = bg_certificate_separated(cert.get()) == 1;
  run.verdicts["separation"] = separated ? "Separated" : "EquivalentUpToTolerance";

  auto finish = [&](int code) {
    report["exit_code"] = code;
    run.emit(s.json, dump(report));
    return code;
  };
  if (!separated) {
    report["witness"] = nullptr;
    report["note"] = "no witness: the bodies are equivalent up to tolerance";
    return finish(kNegative);
  }
  if (s.no_witness && !witness_required) return finish(kOk);

  int urtc = 0;
  char* urtc_text = nullptr;
  check(bg_body_urtc(a.get(), &urtc, &urtc_text));
  report["urtc"] = parse(take(urtc_text));
  if (!urtc) {
    run.verdicts["witness"] = "NotUrtc";
    const Json& e = report["urtc"]["edge"];
    std::cerr << "error: NotUrtc: edge " << report["urtc"]["edge_index"] << " from " << e[0] << " to " << e[1]
              << " has norm length " << report["urtc"]["edge_norm"] << " > 1\n";
    report["witness"] = nullptr;
    report["error"] = {{"code", "NotUrtc"}, {"message", "the first body fails URTC; the witness stage needs it"}};
    return finish(kInput);
  }

  bg_witness_options wo;
  bg_witness_options_init(&wo);
  wo.k = s.scaled ? s.k : 0;
  wo.full_theta = s.full_theta ? 1 : 0;
  run.params["witness"] = {{"k", wo.k}, {"scaled", s.scaled}, {"full_theta", s.full_theta}, {"top_angles", wo.top_angles}};
  const Witness w = run.timed("witness", [&] {
    bg_contact_witness* out = nullptr;
    check(bg_contact_witness_build(a.get(), cert.get(), &wo, &out));
    return Witness(out);
  });
  report["witness"] = parse(take([&] {
    char* t = nullptr;
    check(bg_contact_witness_to_json(w.get(), &t));
    return t;
  }()));
  int ok = 0, rigid = 0;
  char* rig = nullptr;
  run.timed("verify", [&] {
    check(bg_contact_witness_verify(w.get(), b.get(), cert.get(), &ok, &rigid, &rig));
    return 0;
  });
  report["rigidity"] = parse(take(rig));
  run.verdicts["witness_checks"] = ok == 1;
  run.verdicts["separated_by_rigidity"] = rigid == 1;
  if (!s.svg.empty()) {
    char* svg = nullptr;
    check(bg_contact_witness_svg(w.get(), &svg));
    run.write(s.svg, take(svg));
  }
  return finish(ok ? kOk : kInternal);
}

void write_manifest(Run& run, int code) {
  if (run.manifest.empty()) return;
  Json m{{"command", run.argv.size() > 1 ? run.argv[1] : ""},
         {"argv", run.argv},
         {"parameters", run.params},
         {"inputs", run.inputs},
         {"outputs", run.outputs},
         {"timings", run.timings},
         {"verdicts", run.verdicts},
         {"exit_code", code},
         {"version", bg_version()}};
  std::ofstream out(run.manifest, std::ios::binary);
  out << dump(m);
}

int dispatch(Run& run);

int replay(Run& outer, const std::string& path) {
  const Json m = parse(read_file(path));
  Run run;
  run.echo = false;
  for (const auto& a : m.at("argv")) run.argv.push_back(a.get<std::string>());
  // the replayed run must not overwrite the manifest it is checked against
  for (std::size_t i = 0; i < run.argv.size(); ++i)
    if (run.argv[i] == "--manifest" && i + 1 < run.argv.size()) {
      run.argv.erase(run.argv.begin() + static_cast<long>(i), run.argv.begin() + static_cast<long>(i) + 2);
      break;
    } else if (run.argv[i].rfind("--manifest=", 0) == 0) {
      run.argv.erase(run.argv.begin() + static_cast<long>(i));
      break;
    }
  const int code = dispatch(run);
  Json mism = Json::array();
  for (const auto& [file, rec] : m.at("outputs").items()) {
    const auto it = run.outputs.find(file);
    if (it == run.outputs.end() || (*it)["fnv1a"] != rec["fnv1a"]) mism.push_back(file);
  }
  const bool same = mism.empty() && code == m.at("exit_code").get<int>();
  std::cout << dump({{"manifest", path}, {"reproduced", same}, {"exit_code", code}, {"mismatched", mism}});
  outer.verdicts["replay"] = same;
  return same ? kOk : kInternal;
}

int dispatch(Run& run) {
  CLI::App app{"norms, graphs and separating witnesses for translates of symmetric convex bodies", "bodygraphs"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--manifest", run.manifest, "write a run manifest here");
  app.set_version_flag("--version", std::string(bg_version()));

  // body
  auto* body = app.add_subcommand("body", "validate a body, report URTC, sample its signature");
  std::string body_path, body_json, body_csv, body_svg;
  std::size_t samples = 0;
  BodyArgs body_args;
  body->add_option("body", body_path, "body JSON")->required();
  add_body_flags(body, body_args);
  body->add_option("--json", body_json, "report path");
  body->add_option("--signature", samples, "sample rho on this many angles in [0, pi)");
  body->add_option("--csv", body_csv, "signature CSV path (stdout otherwise)");
  body->add_option("--svg", body_svg, "drawing of the body");

  // graph
  auto* graph = app.add_subcommand("graph", "build a graph of translates from a point set");
  std::string g_body, g_points, g_kind = "contact", g_json, g_dot, g_svg;
  double g_eps = 0.0;
  BodyArgs g_args;
  graph->add_option("body", g_body, "body JSON")->required();
  graph->add_option("points", g_points, "points JSON; candidate \"edges\" for overlap graphs")->required();
  graph->add_option("--kind", g_kind, "contact, unit, intersection or overlap")
      ->check(CLI::IsMember({"contact", "unit", "intersection", "overlap"}));
  graph->add_option("--epsilon", g_eps, "overlap allowance");
  add_body_flags(graph, g_args);
  graph->add_option("--json", g_json, "graph path");
  graph->add_option("--dot", g_dot, "DOT path");
  graph->add_option("--svg", g_svg, "SVG path");

  // separate
  auto* sep = app.add_subcommand("separate", "separate two bodies by signature and build the contact witness");
  SeparateArgs sa;
  sep->add_option("a", sa.a, "body A")->required();
  sep->add_option("b", sa.b, "body B")->required();
  add_body_flags(sep, sa.body);
  add_separation_flags(sep, sa);
  add_witness_flags(sep, sa);
  sep->add_flag("--no-witness", sa.no_witness, "stop after the certificate");

  // witness
  auto* wit = app.add_subcommand("witness", "build a separating witness");
  wit->require_subcommand(1);
  auto* wc = wit->add_subcommand("contact", "contact witness for A against B");
  SeparateArgs wa;
  wc->add_option("a", wa.a, "body A")->required();
  wc->add_option("b", wa.b, "body B")->required();
  wc->add_option("--certificate", wa.certificate, "reuse a certificate instead of searching");
  add_body_flags(wc, wa.body);
  add_separation_flags(wc, wa);
  add_witness_flags(wc, wa);

  auto* wi = wit->add_subcommand("intersection", "nested-cycle gadgets and host assemblies");
  std::string i_body, i_json, i_gadget, i_svg, i_host;
  BodyArgs i_args;
  bg_intersection_options io;
  bg_intersection_options_init(&io);
  std::vector<std::int64_t> schedule(io.schedule, io.schedule + io.schedule_len);
  wi->add_option("body", i_body, "body JSON")->required();
  add_body_flags(wi, i_args);
  wi->add_option("--k", io.k, "gadget depth")->check(CLI::Range(std::int64_t{7}, std::int64_t{64}));
  wi->add_option("--drawings", io.drawings, "perturbed drawings per check")->check(CLI::PositiveNumber);
  wi->add_option("--eta", io.eta, "starting perturbation")->check(CLI::Range(1e-12, 0.0999));
  wi->add_option("--seed", io.seed, "perturbation seed");
  wi->add_option("--host", i_host, "contact drawing of the host graph");
  wi->add_option("--schedule", schedule, "refinement depths")->expected(1, 8);
  wi->add_option("--json", i_json, "report path");
  wi->add_option("--gadget", i_gadget, "gadget JSON path");
  wi->add_option("--svg", i_svg, "gadget drawing path");

  // verify
  auto* ver = app.add_subcommand("verify", "re-check a stored certificate or graph");
  ver->require_subcommand(1);
  auto* vc = ver->add_subcommand("certificate", "recompute the deviations of a certificate");
  std::string vc_a, vc_b, vc_cert, v_json;
  BodyArgs v_args;
  vc->add_option("a", vc_a, "body A")->required();
  vc->add_option("b", vc_b, "body B")->required();
  vc->add_option("certificate", vc_cert, "certificate JSON")->required();
  add_body_flags(vc, v_args);
  vc->add_option("--json", v_json, "report path");
  auto* vg = ver->add_subcommand("graph", "check every edge and non-edge of a graph");
  std::string vg_body, vg_graph;
  vg->add_option("body", vg_body, "body JSON")->required();
  vg->add_option("graph", vg_graph, "graph JSON")->required();
  add_body_flags(vg, v_args);
  vg->add_option("--json", v_json, "report path");

  // render
  auto* ren = app.add_subcommand("render", "draw a graph of translates");
  std::string r_body, r_graph, r_svg, r_dot;
  BodyArgs r_args;
  ren->add_option("body", r_body, "body JSON")->required();
  ren->add_option("graph", r_graph, "graph JSON")->required();
  add_body_flags(ren, r_args);
  ren->add_option("--svg", r_svg, "SVG path");
  ren->add_option("--dot", r_dot, "DOT path");

  auto* rep = app.add_subcommand("replay", "re-run a manifest and compare its outputs");
  std::string rep_path;
  rep->add_option("manifest", rep_path, "manifest JSON")->required();

  std::vector<std::string> args(run.argv.rbegin(), run.argv.rend() - 1);
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInput;
  }

  if (*body) {
    const Body b = load_body(run, body_path, body_args);
    int urtc = 0;
    char* rep_text = nullptr;
    check(bg_body_urtc(b.get(), &urtc, &rep_text));
    char* poly = nullptr;
    check(bg_body_to_json(b.get(), &poly));
    run.verdicts["urtc"] = urtc == 1;
    const Json out{{"body", parse(take(poly))}, {"vertices", bg_body_vertex_count(b.get())}, {"urtc", parse(take(rep_text))}};
    if (samples > 0) {
      char* csv = nullptr;
      check(bg_body_signature_csv(b.get(), samples, &csv));
      const std::string text = take(csv);
      if (body_csv.empty()) std::cout << text;
      else run.write(body_csv, text);
      if (!body_json.empty()) run.write(body_json, dump(out));
    } else {
      run.emit(body_json, dump(out));
    }
    if (!body_svg.empty()) {
      const Json g{{"points", Json::array({Json::array({0.0, 0.0})})}, {"edges", Json::array()}};
      char* svg = nullptr;
      check(bg_graph_svg(b.get(), g.dump().c_str(), &svg));
      run.write(body_svg, take(svg));
    }
    return kOk;
  }
  if (*graph) {
    const Body b = load_body(run, g_body, g_args);
    run.inputs.push_back(g_points);
    const std::map<std::string, bg_graph_kind> kinds{{"contact", BG_GRAPH_CONTACT}, {"unit", BG_GRAPH_UNIT_DISTANCE},
                                                     {"intersection", BG_GRAPH_INTERSECTION}, {"overlap", BG_GRAPH_EPS_OVERLAP}};
    run.params["kind"] = g_kind;
    run.params["epsilon"] = g_eps;
    char* gj = nullptr;
    check(bg_graph_build(b.get(), read_file(g_points).c_str(), kinds.at(g_kind), g_eps, &gj));
    const std::string text = take(gj);
    run.emit(g_json, text);
    if (!g_dot.empty()) {
      char* dot = nullptr;
      check(bg_graph_dot(text.c_str(), &dot));
      run.write(g_dot, take(dot));
    }
    if (!g_svg.empty()) {
      char* svg = nullptr;
      check(bg_graph_svg(b.get(), text.c_str(), &svg));
      run.write(g_svg, take(svg));
    }
    return kOk;
  }
  if (*sep) return run_separate(run, sa, false);
  if (*wc) return run_separate(run, wa, true);
  if (*wi) {
    const Body b = load_body(run, i_body, i_args);
    std::string host;
    if (!i_host.empty()) {
      host = read_file(i_host);
      run.inputs.push_back(i_host);
      io.host_json = host.c_str();
    }
    if (schedule.size() > 8) throw Failure{BG_ERR_INVALID_ARGUMENT, "schedule holds at most 8 entries"};
    io.schedule_len = schedule.size();
    for (std::size_t i = 0; i < schedule.size(); ++i) io.schedule[i] = schedule[i];
    run.params["intersection"] = {{"k", io.k}, {"drawings", io.drawings}, {"eta", io.eta}, {"seed", io.seed},
                                  {"schedule", schedule}};
    int pass = 0;
    char *report = nullptr, *gadget = nullptr, *svg = nullptr;
    run.timed("intersection", [&] {
      check(bg_intersection_run(b.get(), &io, &pass, &report, i_gadget.empty() ? nullptr : &gadget,
                                i_svg.empty() ? nullptr : &svg));
      return 0;
    });
    run.verdicts["intersection"] = pass == 1;
    run.emit(i_json, take(report));
    if (gadget) run.write(i_gadget, take(gadget));
    if (svg) run.write(i_svg, take(svg));
    return pass ? kOk : kInternal;
  }
  if (*vc) {
    const Body a = load_body(run, vc_a, v_args);
    const Body b = load_body(run, vc_b, v_args);
    bg_certificate* c = nullptr;
    check(bg_certificate_from_json(read_certificate(vc_cert).c_str(), &c));
    const Cert cert(c);
    run.inputs.push_back(vc_cert);
    int pass = 0;
    char* report = nullptr;
    check(bg_certificate_verify(a.get(), b.get(), cert.get(), &pass, &report));
    run.verdicts["certificate"] = pass == 1;
    run.emit(v_json, take(report));
    return pass ? kOk : kInternal;
  }
  if (*vg) {
    const Body b = load_body(run, vg_body, v_args);
    run.inputs.push_back(vg_graph);
    int pass = 0;
    char* report = nullptr;
    check(bg_graph_verify(b.get(), read_file(vg_graph).c_str(), &pass, &report));
    run.verdicts["graph"] = pass == 1;
    run.emit(v_json, take(report));
    return pass ? kOk : kInternal;
  }
  if (*ren) {
    const Body b = load_body(run, r_body, r_args);
    const std::string g = read_file(r_graph);
    run.inputs.push_back(r_graph);
    if (r_svg.empty() && r_dot.empty()) throw Failure{BG_ERR_INVALID_ARGUMENT, "render needs --svg or --dot"};
    if (!r_svg.empty()) {
      char* svg = nullptr;
      check(bg_graph_svg(b.get(), g.c_str(), &svg));
      run.write(r_svg, take(svg));
    }
    if (!r_dot.empty()) {
      char* dot = nullptr;
      check(bg_graph_dot(g.c_str(), &dot));
      run.write(r_dot, take(dot));
    }
    return kOk;
  }
  if (*rep) return replay(run, rep_path);
  return kInput;
}

}  // namespace

int main(int argc, char** argv) {
  Run run;
  run.argv.assign(argv, argv + argc);
  int code;
  try {
    code = dispatch(run);
  } catch (const Failure& f) {
    std::cerr << "error: " << bg_status_name(f.status) << ": " << f.message << "\n";
    code = exit_for(f.status);
  } catch (const Json::exception& e) {
    std::cerr << "error: ParseError: " << e.what() << "\n";
    code = kInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    code = kInternal;
  }
  write_manifest(run, code);
  return code;
}
