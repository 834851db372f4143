#include "bodygraphs/pipeline.hpp"

namespace bodygraphs {

EmbeddedGraph lattice_host(const SymmetricBody& body, int n) {
  if (n < 1 || n > 3) throw Error(ErrorCode::InvalidArgument, "lattice hosts have 1, 2 or 3 vertices");
  const Lattice lat = lattice_from(body, 0.0);
  std::vector<Vec2> pts{{0.0, 0.0}, lat.e1, lat.e2};
  pts.resize(static_cast<std::size_t>(n));
  return build_graph(body, pts, GraphKind::Contact);
}

IntersectionRun run_intersection(const SymmetricBody& body, const IntersectionOptions& opts) {
  using io::Json;
  IntersectionRun run;
  Json& rep = run.report;
  bool pass = true;

  auto q = std::make_shared<RadialGadget>(build_radial(body, opts.k));
  run.gadget = q;
  const NestedCycleGadget& p = q->base;
  const EmbeddedGraph pg = nested_graph(body, p);
  const bool tri_free = verify_triangle_free(pg);
  const NestingReport nest = verify_nesting(p);
  pass = pass && tri_free && nest.pass;
  rep["nested"] = {{"k", p.k},
                   {"points", p.points.size()},
                   {"edges", pg.edges.size()},
                   {"triangle_free", tri_free},
                   {"nesting", {{"pass", nest.pass},
                                {"cycles_simple", nest.cycles_simple},
                                {"cycles_closed", nest.cycles_closed},
                                {"s0_inside", nest.s0_inside},
                                {"detail", nest.detail}}},
                   {"tails", "minimal"}};
  if (opts.packing_demo_k > 0) {
    const NestedCycleGadget demo = build_nested(body, opts.packing_demo_k, TailPolicy::Packing);
    const EmbeddedGraph dg = nested_graph(body, demo);
    Json levels = Json::array();
    bool all = true;
    for (const auto& t : tail_sufficiency(body, demo)) {
      levels.push_back({{"level", t.level}, {"tail", t.tail_length}, {"ceiling", t.packing_ceiling}, {"sufficient", t.sufficient}});
      all = all && t.sufficient;
    }
    const bool demo_ok = all && verify_triangle_free(dg) && verify_nesting(demo).pass;
    pass = pass && demo_ok;
    rep["packing_tails"] = {{"k", demo.k}, {"points", demo.points.size()}, {"levels", levels}, {"pass", demo_ok}};
  }

  const CycleDistReport cd = verify_cycle_distance(*q);
  const bool depth_ok = cd.min_depth >= 2 * q->k;
  pass = pass && cd.pass && depth_ok;
  rep["radial"] = {{"k", q->k},
                   {"k_prime", q->k_prime},
                   {"n", q->boundary.size()},
                   {"size", q->size()},
                   {"min_depth", cd.min_depth},
                   {"max_depth", *std::max_element(q->depth.begin(), q->depth.end())},
                   {"depth_ok", depth_ok},
                   {"cycle_distance", {{"min_norm", cd.min_norm}, {"bound", cd.bound}, {"pass", cd.pass}}}};

  const std::vector<Vec2> canonical = q->points();
  Json alphas = Json::array();
  for (std::int64_t j = 3; j <= q->k; ++j) {
    const AlphaReport a = verify_alpha(body, *q, canonical, j, AnnulusMode::Canonical);
    pass = pass && a.pass();
    alphas.push_back(io::to_json(a));
  }
  rep["alpha"] = alphas;

  const PerturbationReport pr = perturbation_harness(body, *q, opts.perturb);
  pass = pass && pr.all_pass;
  rep["perturbation"] = io::to_json(pr);

  std::vector<EmbeddedGraph> hosts = opts.hosts;
  if (hosts.empty()) hosts = {lattice_host(body, 2), lattice_host(body, 3)};
  Json assemblies = Json::array();
  for (const auto& host : hosts) {
    OverlapAssembly a = build_assembly(body, host, q->k, q);
    const CentreBoundsReport cb = verify_centre_bounds(body, a.k, a.host, a.centres);
    const AssemblyPerturbationReport ap = assembly_perturbation_harness(body, a, opts.perturb);
    const OverlapRealization ov = extract_overlap(body, a.host, a.centres, a.k);
    Json entry{{"host", io::to_json(host)},
               {"cross_edges", io::to_json(a.scan)},
               {"centre_bounds", io::to_json(cb)},
               {"perturbation", io::to_json(ap)},
               {"overlap", io::to_json(ov)}};
    bool ok = a.scan.floor_ok && a.scan.level_k_ok && cb.pass && ap.all_pass && ov.host_edges_kept;
    try {
      const RefinementReport rf = refine_to_contact(body, host, opts.schedule);
      entry["refinement"] = io::to_json(rf);
      ok = ok && rf.monotone && rf.bounded && rf.contains_host;
    } catch (const Error& e) {
      entry["refinement"] = {{"error", to_string(e.code())}, {"message", e.what()}};
      ok = false;
    }
    entry["pass"] = ok;
    pass = pass && ok;
    assemblies.push_back(entry);
    run.assemblies.push_back(std::move(a));
  }
  rep["assemblies"] = assemblies;
  rep["note"] = "depths d_i come from the canonical lattice drawing; perturbed drawings are random graph-preserving "
                "perturbations, not all drawings";
  rep["pass"] = pass;
  run.pass = pass;
  return run;
}

}  // namespace bodygraphs
