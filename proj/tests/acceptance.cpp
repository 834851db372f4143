// One line per acceptance criterion. Exit status is the number of failures.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "bodygraphs/io.hpp"
#include "bodygraphs/pipeline.hpp"
#include "oracles.hpp"

using namespace bodygraphs;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass{true};
  std::string detail;
};

// failed sub-checks are collected in the detail line
struct Checks {
  Outcome out;
  void operator()(bool ok, const std::string& what) {
    if (ok) return;
    out.pass = false;
    if (!out.detail.empty()) out.detail += "; ";
    out.detail += what;
  }
};

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

// raw regular n-gon, not symmetrized
std::vector<Vec2> regular_polygon(int n) {
  std::vector<Vec2> v;
  for (int i = 0; i < n; ++i) v.push_back({std::cos(2 * kPi * i / n), std::sin(2 * kPi * i / n)});
  return v;
}

std::vector<Vec2> random_convex(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<Vec2> pts;
  for (int i = 0; i < 12; ++i) pts.push_back({u(rng), u(rng)});
  return convex_hull(pts);
}

struct Fixture {
  std::string name;
  SymmetricBody body;
  std::vector<Vec2> source;   // polygon whose symmetrization is body
};

std::vector<Fixture> fixtures() {
  std::vector<Fixture> f;
  f.push_back({"disk256", make_disk(256), make_disk(256).vertices()});
  f.push_back({"square", make_square(), make_square().vertices()});
  f.push_back({"hex", make_regular(6), make_regular(6).vertices()});
  for (int n : {5, 7, 8}) f.push_back({"regular" + std::to_string(n), symmetrize(regular_polygon(n)), regular_polygon(n)});
  std::mt19937_64 rng(20240917);
  for (int i = 0; i < 20; ++i) {
    const auto p = random_convex(rng);
    f.push_back({"random" + std::to_string(i), symmetrize(p), p});
  }
  return f;
}

Outcome kernel() {
  Checks c;
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-3, 3);
  double worst_sig = 0, worst_norm = 0;
  for (const Fixture& f : fixtures()) {
    const SymmetricBody& b = f.body;
    for (int i = 0; i < 200; ++i) {
      const Vec2 x{u(rng), u(rng)}, y{u(rng), u(rng)};
      const double t = u(rng);
      const double nx = b.norm(x), ny = b.norm(y);
      c(nx > 0, f.name + " positivity");
      c(std::fabs(b.norm(-x) - nx) <= 1e-7 * nx, f.name + " symmetry");
      c(std::fabs(b.norm(x * t) - std::fabs(t) * nx) <= 1e-7 * std::fmax(1, nx), f.name + " homogeneity");
      c(b.norm(x + y) <= nx + ny + 1e-7, f.name + " triangle inequality");
      worst_norm = std::fmax(worst_norm, std::fabs(nx - oracle::ray_norm(b.vertices(), x)) / std::fmax(1, nx));
    }
    c(b.norm({0, 0}) == 0.0, f.name + " norm of zero");
    for (int i = 0; i < 720; ++i) {
      const double th = kPi * i / 720;
      const double want = oracle::rotating_chord(f.source, th);
      worst_sig = std::fmax(worst_sig, std::fabs(b.signature(th) - want));
    }
  }
  c(worst_norm <= 1e-7, fmt("norm vs ray oracle off by %.3g", worst_norm));
  c(worst_sig <= 1e-7, fmt("signature vs rotating chord off by %.3g", worst_sig));
  if (c.out.pass) c.out.detail = fmt("26 fixtures, 720 angles, worst signature error %.2g, worst norm error %.2g", worst_sig, worst_norm);
  return c.out;
}

Outcome relation() {
  Checks c;
  std::size_t disagreements = 0, skipped = 0, total = 0;
  for (const Fixture& f : fixtures()) {
    const SymmetricBody& b = f.body;
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-2.5 * b.circumradius(), 2.5 * b.circumradius());
    for (int i = 0; i < 10000; ++i) {
      const Vec2 v{u(rng), u(rng)};
      ++total;
      // tolerance band around a touch
      if (std::fabs(b.norm(v) - 2.0) <= 1e-6) {
        ++skipped;
        continue;
      }
      const auto want = oracle::direct_relation(b.vertices(), v, 1e-12, 1e-10);
      const auto got = b.relation(v);
      const bool agree = (want == oracle::Rel::Overlap && got == TranslateRelation::Overlap) ||
                         (want == oracle::Rel::Disjoint && got == TranslateRelation::Disjoint);
      if (!agree) ++disagreements;
    }
    // exact touches on the boundary of 2A
    for (const Vec2 p : b.vertices()) c(b.relation(p * 2.0) == TranslateRelation::Touch, f.name + " vertex touch");
  }
  c(disagreements == 0, std::to_string(disagreements) + " disagreements");
  if (c.out.pass)
    c.out.detail = std::to_string(total) + " vectors, 0 disagreements, " + std::to_string(skipped) + " inside the band";
  return c.out;
}

Outcome urtc() {
  Checks c;
  std::mt19937_64 rng(3);
  int yes = 0, no = 0;
  std::vector<SymmetricBody> good{make_disk()};
  for (int n : {3, 5, 6, 7, 8}) good.push_back(n % 2 ? symmetrize(regular_polygon(n)) : make_regular(n));
  const std::size_t base = good.size();
  for (std::size_t i = 0; i < base; ++i)
    for (int t = 0; t < 3; ++t) good.push_back(good[i].apply(oracle::random_map(rng)));
  for (const auto& b : good) {
    c(b.has_urtc(), "a URTC body was rejected");
    ++yes;
  }
  std::vector<SymmetricBody> bad{make_square()};
  std::uniform_real_distribution<double> u(-2, 2);
  while (bad.size() < 11) {
    const Vec2 a{u(rng), u(rng)}, b{u(rng), u(rng)};
    if (std::fabs(cross(a, b)) < 0.2) continue;
    const Vec2 s = a + b, d = b - a;
    std::vector<Vec2> v{s, d, -s, -d};
    if (cross(s, d) < 0) v = {s, -d, -s, d};
    bad.push_back(SymmetricBody(v));
  }
  for (const auto& b : bad) {
    c(!b.has_urtc(), "a parallelogram passed URTC");
    ++no;
  }
  if (c.out.pass) c.out.detail = std::to_string(yes) + " bodies true, " + std::to_string(no) + " parallelograms false";
  return c.out;
}

Outcome rigidity() {
  Checks c;
  std::mt19937_64 rng(4);
  std::vector<SymmetricBody> bodies{make_disk(), make_regular(6), make_regular(8), symmetrize(regular_polygon(5)),
                                    symmetrize(regular_polygon(7))};
  double worst = 0;
  int subsets = 0;
  std::uniform_real_distribution<double> drop(0.0, 0.35), coin(0, 1), angle(0, kPi);
  while (subsets < 20) {
    const SymmetricBody& a = bodies[subsets % bodies.size()];
    const Lattice lat = lattice_from(a, angle(rng));
    const std::int64_t k = 1 + subsets % 4;
    const LatticeRing ring = lattice_ring(lat, k);
    const double p = drop(rng);
    std::vector<Vec2> pts;
    for (const Vec2 x : ring.points)
      if (coin(rng) >= p) pts.push_back(x);
    if (pts.size() < 3) continue;
    const auto g = build_graph(a, pts, GraphKind::Contact);
    const auto order = lattice_unique_order(g.points.size(), g.edges);
    if (!order) continue;
    ++subsets;

    const LinearMap2 m = oracle::random_map(rng);
    const SymmetricBody b = a.apply(m);
    std::vector<Vec2> redraw;
    for (const Vec2 x : pts) redraw.push_back(m(x));
    c(build_graph(b, redraw, GraphKind::Contact).edges == g.edges, "redraw changed the contact graph");
    std::vector<std::uint32_t> iso(pts.size());
    for (std::uint32_t i = 0; i < iso.size(); ++i) iso[i] = i;
    const auto rec = reconstruct_map(pts, redraw, iso, *order, 1e-9);
    const LinearMap2 inv = m.inverse();
    const double err = std::fmax(std::fmax(std::fabs(rec.map.a11 - inv.a11), std::fabs(rec.map.a12 - inv.a12)),
                                 std::fmax(std::fabs(rec.map.a21 - inv.a21), std::fabs(rec.map.a22 - inv.a22)));
    worst = std::fmax(worst, std::fmax(rec.residual, err));
  }
  c(worst < 1e-8, fmt("reconstruction residual %.3g", worst));

  int pairs = 0;
  for (std::size_t i = 0; i < bodies.size(); ++i)
    for (std::size_t j = 0; j < bodies.size(); ++j) {
      if (i == j) continue;
      const Lattice la = lattice_from(bodies[i], 0.3);
      const SymmetricBody aligned = align_lattice(bodies[j], lattice_from(bodies[j], 0.1), la);
      const SandwichReport r = hexagon_sandwich_check(bodies[i], la, &aligned, 1000, 5 + pairs);
      c(r.pass(), "sandwich failed on a pair");
      ++pairs;
    }
  if (c.out.pass)
    c.out.detail = fmt("20 subsets, worst residual %.2g; sandwich on %g pairs x 1000 samples", worst, pairs);
  return c.out;
}

const SeparationCertificate& disk_hex() {
  static const SeparationCertificate cert = find_separation(make_disk(), make_regular(6));
  return cert;
}

Outcome contact_witness() {
  Checks c;
  const auto disk = make_disk();
  const auto hex = make_regular(6);
  const SeparationCertificate& cert = disk_hex();
  c(cert.verdict == Verdict::Separated, "not separated");
  c(cert.epsilon >= 0.02, fmt("epsilon %.4f < 0.02", cert.epsilon));
  c(cert.theta_set.level <= 5, "level above 5");
  if (!c.out.pass) return c.out;

  WitnessOptions o;
  o.k_override = 24;
  const ContactWitness w = assemble_witness(disk, cert, o);
  c(is_compatible(disk, w.all_points), "witness not compatible");
  c(w.ring_union_lattice_unique, "rings not lattice-unique");
  const RigidityReport r = verify_rigidity(w, disk, hex, cert.best_map);
  c(r.identity_ok, "beam identity above 1e-9");
  double budget = 1e300, slack = 0;
  for (const auto& comp : r.components) {
    budget = std::fmin(budget, comp.scaled_budget);
    slack = std::fmax(slack, comp.measured_slack);
    c(comp.scaled_budget > comp.measured_slack,
      fmt("4 ell eps = %.3f does not exceed the measured slack %.3f at theta %.4f", comp.scaled_budget,
          comp.measured_slack, comp.theta));
  }

  // what the same check gives once k is large enough
  const double th = cert.top_angles(1)[0];
  const std::int64_t tk = minimal_rigid_k(disk, lattice_from(disk, 0), th, cert.epsilon);
  std::string tuned = "tuned k not found";
  if (tk > 0) {
    WitnessOptions t;
    t.k_override = tk;
    t.top_angles = 1;
    const ContactWitness tw = assemble_witness(disk, cert, t);
    const RigidityReport tr = verify_rigidity(tw, disk, hex, cert.best_map);
    const auto& tc = tr.components[0];
    tuned = fmt("at k=%g: 4 ell eps %.2f vs measured slack %.2f", static_cast<double>(tk), tc.scaled_budget,
                tc.measured_slack) +
            (tr.separated_by_rigidity ? ", separated by rigidity" : ", not separated");
  }
  const std::string head = fmt("eps %.4f level %g; ", cert.epsilon, cert.theta_set.level);
  c.out.detail = head + (c.out.detail.empty() ? "" : c.out.detail + "; ") + tuned;
  return c.out;
}

Outcome constants() {
  Checks c;
  const auto disk = make_disk();
  const Lattice lat = lattice_from(disk, 0);
  for (std::int64_t k : {18, 24, 40, 100})
    for (int i = 0; i < 32; ++i) {
      const BeamExtent e = max_beam_extent(disk, lat, k, kPi * i / 32);
      c(4 * e.ell > k, fmt("ell %g <= k/4 at k=%g", static_cast<double>(e.ell), static_cast<double>(k)));
    }
  std::size_t most = 0;
  double span = 0, side = 0;
  for (int i = 0; i < 32; ++i) {
    const AttachedBeam a = attach_beam(disk, lat, 24, kPi * i / 32);
    most = std::max({most, a.s1.size(), a.s2.size()});
    const double sp = std::fmax(disk.norm(a.s1.front() - a.p1), disk.norm(a.s2.front() - a.q1));
    span = std::fmax(span, sp);
    const double bound1 = 6.0 * static_cast<double>(a.s1.size() + 2);
    const double bound2 = 6.0 * static_cast<double>(a.s2.size() + 2);
    side = std::fmax(side, std::fmax(bound1, bound2));
    c(3 * disk.norm(a.p1 - a.p) <= bound1 + 1e-9 && 3 * disk.norm(a.q1 - a.q) <= bound2 + 1e-9,
      "measured slack above its side bound");
  }
  c(most <= 13, "connector run longer than 13");
  c(span < 28, fmt("connector span %.3f", span));
  c(side <= 90, fmt("slack per side %.1f", side));
  if (c.out.pass) c.out.detail = fmt("max |S| %g, max span %.3f, max side slack %.0f", static_cast<double>(most), span, side);
  return c.out;
}

Outcome intersection(std::shared_ptr<const RadialGadget>& keep) {
  Checks c;
  const auto disk = make_disk();
  auto q = std::make_shared<const RadialGadget>(build_radial(disk, 8));
  keep = q;
  c(q->k_prime == 162, "k' is not 162");
  const EmbeddedGraph p = nested_graph(disk, q->base);
  c(is_triangle_free(p.points.size(), p.edges), "P has a triangle");
  // nesting with the crossing-number oracle
  const auto& base = q->base;
  auto poly = [&](std::size_t i) {
    std::vector<Vec2> out;
    for (auto v : base.sigma[i]) out.push_back(base.points[v]);
    return out;
  };
  for (std::size_t i = 0; i < base.sigma.size(); ++i) {
    const auto outer = poly(i);
    if (i == 0) {
      c(oracle::inside(outer, base.points[base.s0]), "s0 outside sigma_1");
    } else {
      for (const Vec2 x : poly(i - 1))
        if (!oracle::inside(outer, x)) {
          c(false, "sigma_" + std::to_string(i) + " not inside sigma_" + std::to_string(i + 1));
          break;
        }
    }
  }
  std::int64_t min_depth = q->depth.empty() ? 0 : q->depth[0];
  for (auto d : q->depth) min_depth = std::min(min_depth, d);
  c(min_depth >= 2 * q->k, "some d_i < 2k");
  const auto canonical = q->points();
  for (std::int64_t j = 3; j <= q->k; ++j) {
    const AlphaReport a = verify_alpha(disk, *q, canonical, j, AnnulusMode::Canonical);
    c(a.pass(), "alpha_" + std::to_string(j) + ": " + a.failure());
    c(std::fabs(oracle::ray_norm(disk.vertices(), canonical[q->ray_index(0, j)] - q->s0()) - 2.0 * j) < 1e-9,
      "ray vertex off its radius");
  }
  PerturbOptions o;
  o.drawings = 100;
  const PerturbationReport pr = perturbation_harness(disk, *q, o);
  c(pr.all_pass && pr.accepted == 100, "perturbed drawing failed: " + pr.first_failure);
  if (c.out.pass)
    c.out.detail = fmt("%g sigma cycles nested, min d_i %g, 100 drawings in %g attempts", base.sigma.size(),
                       static_cast<double>(min_depth), pr.attempts) +
                   fmt(", eta %.2g", pr.final_eta);
  return c.out;
}

Outcome assembly(std::shared_ptr<const RadialGadget> q) {
  Checks c;
  const auto disk = make_disk();
  const std::int64_t k = 8;
  double min_centre = 1e300, max_centre = 0, floor_gap = 1e300;
  for (int n : {2, 3}) {
    const EmbeddedGraph host = lattice_host(disk, n);
    const OverlapAssembly a = build_assembly(disk, host, k, q);
    const std::string h = "K" + std::to_string(n) + ": ";
    c(a.scan.floor_ok && a.scan.min_level_sum >= 12, h + "cross edge with j + j' < 12");
    c(a.scan.level_k_ok, h + "missing level-k cross edge");
    const CentreBoundsReport cb = verify_centre_bounds(disk, k, host, a.centres);
    c(cb.lower == 14 && cb.upper == 34, h + "wrong centre bounds");
    // independent distance scan
    for (const Edge& e : host.edges) {
      const double d = oracle::ray_norm(disk.vertices(), a.centres[e.second] - a.centres[e.first]);
      min_centre = std::fmin(min_centre, d);
      max_centre = std::fmax(max_centre, d);
      c(d >= 14 - 1e-9 && d <= 34 + 1e-9, h + "adjacent centres out of [14, 34]");
    }
    PerturbOptions o;
    o.drawings = 20;
    const AssemblyPerturbationReport ap = assembly_perturbation_harness(disk, a, o);
    c(ap.all_pass, h + "perturbed assembly left the bounds");
    min_centre = std::fmin(min_centre, ap.min_any);
    max_centre = std::fmax(max_centre, ap.max_adjacent);

    const OverlapRealization ov = extract_overlap(disk, host, a.centres, k);
    c(ov.host_edges_kept, h + "overlap realization lost a host edge");
    const EmbeddedGraph redo = build_eps_overlap(disk, ov.graph.points, 10.0 / k, host.edges);
    c(redo.edges == host.edges, h + "overlap realization is not the host");
    c(ov.min_distance >= 2 - 10.0 / k - 1e-9, h + "pair closer than 2 - 10/k");
    floor_gap = std::fmin(floor_gap, ov.min_distance);

    const RefinementReport r = refine_to_contact(disk, host, {8, 16, 32});
    c(r.monotone && r.steps.size() == 3, h + "refinement not monotone");
    c(r.steps.back().min_distance >= 2 - 10.0 / 32 - 1e-9, h + "final distance below 2 - 10/32");
    c(r.contains_host, h + "limit does not contain the host");
  }
  if (c.out.pass)
    c.out.detail = fmt("adjacent centre distances in [%.3f, %.3f], overlap min distance %.3f", min_centre, max_centre,
                       floor_gap);
  return c.out;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

int run(const std::string& cmd) {
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Outcome negative_control(const std::string& cli, const std::string& dir) {
  Checks c;
  if (cli.empty()) {
    c(false, "no CLI path given");
    return c.out;
  }
  std::mt19937_64 rng(9);
  std::mt19937_64 poly_rng(10);
  const std::string a = io::dump(io::to_json(SymmetricBody(convex_hull(oracle::random_symmetric(poly_rng, 5)))));
  std::vector<std::pair<std::string, std::string>> pairs{{R"({"type":"disk","segments":256})", R"({"type":"disk","segments":256})"}};
  for (int i = 0; i < 5; ++i) {
    io::Json b = io::parse(a);
    b["map"] = io::to_json(oracle::random_map(rng));
    pairs.push_back({a, io::dump(b)});
  }
  double worst = 0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const std::string fa = dir + "/neg_a" + std::to_string(i) + ".json", fb = dir + "/neg_b" + std::to_string(i) + ".json",
                      out = dir + "/neg_out" + std::to_string(i) + ".json";
    std::ofstream(fa) << pairs[i].first;
    std::ofstream(fb) << pairs[i].second;
    std::remove(out.c_str());
    const int code = run("'" + cli + "' separate '" + fa + "' '" + fb + "' --json '" + out + "' >/dev/null 2>&1");
    c(code == 2, "pair " + std::to_string(i) + " exit code " + std::to_string(code));
    try {
      const io::Json r = io::parse(slurp(out));
      const double res = r["certificate"]["residual"].get<double>();
      worst = std::fmax(worst, res);
      c(r["certificate"]["verdict"] == "EquivalentUpToTolerance", "pair " + std::to_string(i) + " not equivalent");
      c(res <= 1e-6, fmt("residual %.3g", res));
      c(r["witness"].is_null(), "a witness was emitted");
    } catch (const std::exception& e) {
      c(false, std::string("bad output: ") + e.what());
    }
  }
  if (c.out.pass) c.out.detail = fmt("6 pairs exit 2, worst residual %.2g, no witness", worst);
  return c.out;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  const std::string dir = argc > 2 ? argv[2] : ".";
  std::shared_ptr<const RadialGadget> q8;
  struct Criterion {
    std::string name;
    double budget;   // seconds, 0 for none
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"norm and signature kernel", 10, kernel},
      {"translate relation vs direct overlap", 30, relation},
      {"URTC classification", 0, urtc},
      {"lattice rigidity and sandwich", 0, rigidity},
      {"contact witness DISK/HEX at k=24", 120, contact_witness},
      {"witness constants", 0, constants},
      {"intersection gadgets k=8", 300, [&] { return intersection(q8); }},
      {"assembly bounds and refinement", 0, [&] { return assembly(q8); }},
      {"negative control", 0, [&] { return negative_control(cli, dir); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (criteria[i].budget > 0 && secs > criteria[i].budget) {
      o.pass = false;
      o.detail += fmt("; over the %.0fs budget", criteria[i].budget);
    }
    std::printf("criterion %zu %s: %s (%.1fs) %s\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].name.c_str(), secs,
                o.detail.c_str());
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  return failed;
}
