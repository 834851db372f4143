#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "bodygraphs/lattice.hpp"
#include "bodygraphs/separation.hpp"

namespace bodygraphs {

struct Beam {
  double theta{0.0};
  std::int64_t ell{0};
  Vec2 e;  // ||e||_A = 2, argument theta
  Vec2 f;  // ||f|| = ||f - e|| = 2, left of e
  std::vector<Vec2> points;  // a e for a in [-ell, ell], then a e + f for a in [-ell, ell - 1]
};

struct BeamExtent {
  double r_max{0.0};
  std::int64_t ell{0};
};

/// Largest open segment {r e : |r| < r_max} at norm distance > 4 from the
/// hexagon H_k, and the largest integer ell inside it.
BeamExtent max_beam_extent(const SymmetricBody& body, const Lattice& lat, std::int64_t k, double theta);

Beam build_beam(const SymmetricBody& body, double theta, std::int64_t ell);

/// Contact graph of the ring H_k of the lattice.
EmbeddedGraph build_ring_graph(const SymmetricBody& body, const Lattice& lat, std::int64_t k);

struct AttachedBeam {
  double theta{0.0};
  std::int64_t k{0};
  LatticeRing ring;
  Beam beam;
  double s{0.0};            // first contact parameter along e
  std::int64_t s_prime{0};
  std::vector<Vec2> s1, s2; // connector runs
  Vec2 z1, z2;              // junctions
  Vec2 p, q;                // ring points touched by s e and -s e
  Vec2 p1, q1;              // ell e and -ell e

  /// ring, beam, s1, s2, z1, z2 in that order
  std::vector<Vec2> points() const;
};

AttachedBeam attach_beam(const SymmetricBody& body, const Lattice& lat, std::int64_t k, double theta);

struct WitnessOptions {
  std::optional<std::int64_t> k_override;
  bool full_theta{false};
  std::size_t top_angles{3};
  double lattice_theta{0.0};
};

struct ContactWitness {
  std::int64_t k{0};
  double epsilon{0.0};
  bool scaled{false};
  Lattice lattice;
  std::vector<double> thetas;
  std::vector<AttachedBeam> components;  // untranslated
  std::vector<Vec2> translations;
  std::vector<Vec2> all_points;
  std::vector<std::uint32_t> ring_indices;  // indices into all_points of the translated rings
  EmbeddedGraph graph;
  bool ring_union_lattice_unique{false};
};

ContactWitness assemble_witness(const SymmetricBody& a, const SeparationCertificate& cert, const WitnessOptions& opts = {});

struct ComponentRigidity {
  double theta{0.0};
  std::int64_t ell{0};
  double rho_a{0.0};
  double rho_tb{0.0};
  double d_theta{0.0};          // 4 ell |rho_a / rho_tb - 1|
  double identity_lhs{0.0};     // | ||p1q1||_TB - ||p1q1||_A |
  double identity_error{0.0};
  double scaled_budget{0.0};    // 4 ell eps
  double slack_bound{0.0};      // 6(|S1|+2) + 6(|S2|+2)
  double measured_slack{0.0};   // 3||p1 - p||_A + 3||q1 - q||_A
  double slack_side1{0.0}, slack_side2{0.0};
  double span_side1{0.0}, span_side2{0.0};  // ||s e - ell e||_A
  bool rigid{false};            // 4 ell eps > slack_bound and D >= 4 ell eps
};

struct RigidityReport {
  std::int64_t k{0};
  double epsilon{0.0};
  bool scaled{false};
  double full_budget{180.0};
  double max_d{0.0};
  bool identity_ok{true};       // every identity error <= 1e-9
  bool slack_within_bound{true};
  bool ell_exceeds_quarter_k{true};
  bool full_ok{false};          // max D > 180
  bool separated_by_rigidity{false};
  std::vector<ComponentRigidity> components;
};

RigidityReport verify_rigidity(const ContactWitness& w, const SymmetricBody& a, const SymmetricBody& b,
                               const LinearMap2& t);

/// Smallest k >= k_min at which 4 ell eps exceeds the connector slack bound
/// in direction theta; 0 if none up to k_max.
std::int64_t minimal_rigid_k(const SymmetricBody& a, const Lattice& lat, double theta, double epsilon,
                             std::int64_t k_min = 18, std::int64_t k_max = 20000);

}  // namespace bodygraphs
