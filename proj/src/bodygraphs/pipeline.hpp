#pragma once

#include <vector>

#include "bodygraphs/io.hpp"

namespace bodygraphs {

/// K_n on lattice points of the body (n = 1, 2 or 3), a contact drawing.
EmbeddedGraph lattice_host(const SymmetricBody& body, int n);

struct IntersectionOptions {
  std::int64_t k{8};
  PerturbOptions perturb;
  std::vector<EmbeddedGraph> hosts;          // empty: K2 and K3 on the lattice
  std::vector<std::int64_t> schedule{8, 16, 32};
  std::int64_t packing_demo_k{2};            // nested gadget with packing tails, 0 skips
};

struct IntersectionRun {
  io::Json report;
  bool pass{false};
  std::shared_ptr<const RadialGadget> gadget;
  std::vector<OverlapAssembly> assemblies;
};

/// Builds P, Q and one assembly per host and runs every check on them.
IntersectionRun run_intersection(const SymmetricBody& body, const IntersectionOptions& opts);

}  // namespace bodygraphs
