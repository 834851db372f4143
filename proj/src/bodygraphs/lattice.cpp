#include "bodygraphs/lattice.hpp"

#include <limits>
#include <random>

namespace bodygraphs {

std::vector<LatticeCoord> lattice_circle(std::int64_t r) {
  if (r == 0) return {LatticeCoord{0, 0}};
  std::vector<LatticeCoord> out;
  out.reserve(static_cast<std::size_t>(6 * r));
  LatticeCoord p{r, 0};
  for (std::size_t side = 0; side < 6; ++side) {
    const LatticeCoord step = kLatticeSteps[(side + 2) % 6];
    for (std::int64_t s = 0; s < r; ++s) {
      out.push_back(p);
      p = p + step;
    }
  }
  return out;
}

Lattice lattice_from(const SymmetricBody& body, double theta) {
  const Vec2 e1 = body.radial(theta) * 2.0;
  const ThirdPoints tp = third_points(body, {0.0, 0.0}, e1);
  return Lattice{e1, tp.left};
}

double lattice_defect(const SymmetricBody& body, const Lattice& lat) {
  return std::fmax(std::fabs(body.norm(lat.e1) - 2.0),
                   std::fmax(std::fabs(body.norm(lat.e2) - 2.0), std::fabs(body.norm(lat.e1 - lat.e2) - 2.0)));
}

LatticeRing lattice_ring(const Lattice& lat, std::int64_t k) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "ring index k must be at least 1");
  LatticeRing ring;
  for (std::int64_t r : {k, k + 1}) {
    for (const auto& c : lattice_circle(r)) {
      ring.coords.push_back(c);
      ring.points.push_back(lat.point(c));
    }
  }
  return ring;
}

ReconstructedMap reconstruct_map(const std::vector<Vec2>& source, const std::vector<Vec2>& target,
                                 const std::vector<std::uint32_t>& iso, const std::vector<std::uint32_t>& order,
                                 double tolerance) {
  if (source.size() != target.size() || iso.size() != source.size() || order.size() != source.size() || order.size() < 3)
    throw Error(ErrorCode::InvalidArgument, "drawings, isomorphism and ordering must have equal size >= 3");
  const Vec2 s1 = source[order[0]];
  const Vec2 t1 = target[iso[order[0]]];
  const LinearMap2 src = LinearMap2::from_columns(source[order[1]] - s1, source[order[2]] - s1);
  const LinearMap2 tgt = LinearMap2::from_columns(target[iso[order[1]]] - t1, target[iso[order[2]]] - t1);
  const double det = tgt.determinant();
  if (std::fabs(det) <= 1e-14 * tgt.max_abs_entry() * tgt.max_abs_entry())
    throw Error(ErrorCode::SingularMap, "target basis is degenerate");
  ReconstructedMap out;
  out.map = src * tgt.inverse();

  double diameter = 0.0;
  Vec2 lo = source[0], hi = source[0];
  for (const auto& p : source) {
    lo = {std::fmin(lo.x, p.x), std::fmin(lo.y, p.y)};
    hi = {std::fmax(hi.x, p.x), std::fmax(hi.y, p.y)};
  }
  diameter = std::fmax(1.0, length(hi - lo));
  for (std::size_t v = 0; v < source.size(); ++v) {
    const Vec2 mapped = out.map(target[iso[v]] - t1);
    out.residual = std::fmax(out.residual, length(mapped - (source[v] - s1)));
  }
  if (out.residual > tolerance * diameter)
    throw Error(ErrorCode::NotRigid, "reconstructed map leaves residual " + std::to_string(out.residual));
  return out;
}

SymmetricBody align_lattice(const SymmetricBody& b, const Lattice& lat_b, const Lattice& target) {
  const LinearMap2 from = LinearMap2::from_columns(lat_b.e1, lat_b.e2);
  const LinearMap2 to = LinearMap2::from_columns(target.e1, target.e2);
  return b.apply(to * from.inverse());
}

SandwichReport hexagon_sandwich_check(const SymmetricBody& a, const Lattice& lat, const SymmetricBody* b,
                                      int samples, std::uint64_t seed) {
  SandwichReport rep;
  const double tol = a.tolerance();
  const auto hex = lat.hexagon();
  for (const auto& s : hex) {
    if (a.norm(s * 0.5) > 1.0 + tol * std::fmax(1.0, length(s))) {
      rep.inner_ok = false;
      rep.worst = s * 0.5;
    }
  }
  for (const auto& v : a.vertices()) {
    for (std::size_t i = 0; i < 6; ++i) {
      const Vec2 p = hex[i], q = hex[(i + 1) % 6];
      if (cross(q - p, v - p) < -tol * length(q - p)) {
        rep.outer_ok = false;
        rep.worst = v;
      }
    }
  }
  if (b == nullptr) return rep;
  const double defect = lattice_defect(*b, lat);
  rep.lattice_shared = defect <= b->tolerance() * 10.0;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> radius(1e-3, 10.0);
  rep.ratio_min = std::numeric_limits<double>::infinity();
  rep.ratio_max = 0.0;
  for (int i = 0; i < samples; ++i) {
    const Vec2 x = unit_at(angle(rng)) * radius(rng);
    const double ratio = b->norm(x) / a.norm(x);
    if (ratio < rep.ratio_min || ratio > rep.ratio_max) {
      if (ratio < 0.5 - 1e-9 || ratio > 2.0 + 1e-9) rep.worst = x;
    }
    rep.ratio_min = std::fmin(rep.ratio_min, ratio);
    rep.ratio_max = std::fmax(rep.ratio_max, ratio);
  }
  rep.ratio_ok = rep.ratio_min >= 0.5 - 1e-9 && rep.ratio_max <= 2.0 + 1e-9;
  return rep;
}

}  // namespace bodygraphs
