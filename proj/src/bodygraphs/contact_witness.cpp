#include "bodygraphs/contact_witness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bodygraphs {

namespace {

Vec2 beam_direction(const SymmetricBody& body, double theta) { return body.radial(theta) * 2.0; }

// Parameter at which the ray t e (t >= 0) enters y + 2A, or +inf.
double ray_entry(const SymmetricBody& body, Vec2 e, Vec2 y) {
  double enter = 0.0, leave = std::numeric_limits<double>::infinity();
  for (const auto& g : body.gauges()) {
    const double rate = dot(g, e);
    const double bound = 2.0 + dot(g, y);
    if (rate == 0.0) {
      if (bound < 0.0) return std::numeric_limits<double>::infinity();
    } else if (rate > 0.0) {
      leave = std::fmin(leave, bound / rate);
    } else {
      enter = std::fmax(enter, bound / rate);
    }
  }
  return enter <= leave ? enter : std::numeric_limits<double>::infinity();
}

}  // namespace

BeamExtent max_beam_extent(const SymmetricBody& body, const Lattice& lat, std::int64_t k, double theta) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "k must be at least 1");
  const Vec2 e = beam_direction(body, theta);
  const auto hex = lat.hexagon();
  BeamExtent out;
  out.r_max = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < 6; ++i) {
    const Vec2 c0 = hex[i] * static_cast<double>(k), c1 = hex[(i + 1) % 6] * static_cast<double>(k);
    const Vec2 d = c1 - c0;
    const Vec2 n{d.y, -d.x};
    const double rate = dot(n, e);
    if (rate <= 0.0) continue;
    // ||x - line||_A = (h - n.x) / h_A(n) for x on the inner side
    out.r_max = std::fmin(out.r_max, (dot(n, c0) - 4.0 * body.support(n)) / rate);
  }
  out.ell = static_cast<std::int64_t>(std::ceil(out.r_max)) - 1;
  if (out.ell < 1)
    throw Error(ErrorCode::BeamTooShort, "k = " + std::to_string(k) + " leaves no room for a beam (r_max = " +
                                             std::to_string(out.r_max) + ")");
  return out;
}

Beam build_beam(const SymmetricBody& body, double theta, std::int64_t ell) {
  if (ell < 1) throw Error(ErrorCode::BeamTooShort, "beam length must be at least 1");
  Beam b;
  b.theta = theta;
  b.ell = ell;
  b.e = beam_direction(body, theta);
  b.f = third_points(body, {0.0, 0.0}, b.e).left;
  for (std::int64_t a = -ell; a <= ell; ++a) b.points.push_back(b.e * static_cast<double>(a));
  for (std::int64_t a = -ell; a <= ell - 1; ++a) b.points.push_back(b.e * static_cast<double>(a) + b.f);
  return b;
}

EmbeddedGraph build_ring_graph(const SymmetricBody& body, const Lattice& lat, std::int64_t k) {
  return build_graph(body, lattice_ring(lat, k).points, GraphKind::Contact);
}

std::vector<Vec2> AttachedBeam::points() const {
  std::vector<Vec2> out = ring.points;
  out.insert(out.end(), beam.points.begin(), beam.points.end());
  out.insert(out.end(), s1.begin(), s1.end());
  out.insert(out.end(), s2.begin(), s2.end());
  out.push_back(z1);
  out.push_back(z2);
  return out;
}

AttachedBeam attach_beam(const SymmetricBody& body, const Lattice& lat, std::int64_t k, double theta) {
  AttachedBeam ab;
  ab.theta = theta;
  ab.k = k;
  ab.ring = lattice_ring(lat, k);
  const BeamExtent ext = max_beam_extent(body, lat, k, theta);
  ab.beam = build_beam(body, theta, ext.ell);
  const Vec2 e = ab.beam.e;
  const double ell = static_cast<double>(ext.ell);

  ab.s = std::numeric_limits<double>::infinity();
  for (const auto& y : ab.ring.points) {
    const double t = ray_entry(body, e, y);
    if (t < ab.s) {
      ab.s = t;
      ab.p = y;
    }
  }
  if (!std::isfinite(ab.s)) throw Error(ErrorCode::AttachFailed, "ray never meets the ring");
  const double touch = body.norm(e * ab.s - ab.p);
  if (std::fabs(touch - 2.0) > body.touch_band(e * ab.s - ab.p))
    throw Error(ErrorCode::AttachFailed, "connector start is not touching the ring");

  // s - s' - 1 < ell + 1 <= s - s'
  ab.s_prime = static_cast<std::int64_t>(std::floor(ab.s - ell - 1.0));
  if (ab.s_prime < 0) throw Error(ErrorCode::AttachFailed, "ring touches the beam end");
  for (std::int64_t i = 0; i <= ab.s_prime; ++i) ab.s1.push_back(e * (ab.s - static_cast<double>(i)));
  for (const auto& x : ab.s1) ab.s2.push_back(-x);

  const Vec2 last = e * (ab.s - static_cast<double>(ab.s_prime));
  ab.p1 = e * ell;
  ab.q1 = -ab.p1;
  const BoundaryMeet meet = boundary_intersections(body, last, 2.0, ab.p1, 2.0);
  bool found = false;
  for (const auto& z : meet.points) {
    if (cross(e, z - ab.p1) > 0.0 && (!found || cross(e, z - ab.p1) > cross(e, ab.z1 - ab.p1))) {
      ab.z1 = z;
      found = true;
    }
  }
  if (!found || meet.overlap_length > 10.0 * body.tolerance() * std::fmax(1.0, 2.0 * body.circumradius()))
    throw Error(ErrorCode::AttachFailed, "junction system has no isolated solution");
  for (const Vec2 c : {last, ab.p1}) {
    const Vec2 d = ab.z1 - c;
    if (std::fabs(body.norm(d) - 2.0) > 10.0 * body.touch_band(d))
      throw Error(ErrorCode::AttachFailed, "junction point misses its anchors");
  }
  ab.z2 = -ab.z1;
  ab.q = -ab.p;
  return ab;
}

ContactWitness assemble_witness(const SymmetricBody& a, const SeparationCertificate& cert, const WitnessOptions& opts) {
  if (cert.verdict != Verdict::Separated)
    throw Error(ErrorCode::InvalidArgument, "witness needs a Separated certificate");
  if (const auto u = a.urtc(); !u.urtc)
    throw Error(ErrorCode::NotUrtc, "body fails URTC at edge " + std::to_string(*u.edge_index) + " (norm length " +
                                        std::to_string(u.edge_norm) + ")");
  ContactWitness w;
  w.epsilon = cert.epsilon;
  if (opts.k_override) {
    w.k = *opts.k_override;
    w.scaled = true;
  } else {
    w.k = static_cast<std::int64_t>(std::ceil(180.0 / cert.epsilon));
  }
  w.lattice = lattice_from(a, opts.lattice_theta);
  w.thetas = opts.full_theta ? cert.theta_set.angles : cert.top_angles(opts.top_angles);

  const Vec2 step = w.lattice.e1 * static_cast<double>(2 * w.k + 3) - w.lattice.e2 * static_cast<double>(w.k + 1);
  for (std::size_t i = 0; i < w.thetas.size(); ++i) {
    AttachedBeam comp = attach_beam(a, w.lattice, w.k, w.thetas[i]);
    const Vec2 t = step * static_cast<double>(i);
    for (std::size_t j = 0; j < comp.ring.points.size(); ++j)
      w.ring_indices.push_back(static_cast<std::uint32_t>(w.all_points.size() + j));
    for (const auto& p : comp.points()) w.all_points.push_back(p + t);
    w.translations.push_back(t);
    w.components.push_back(std::move(comp));
  }
  w.graph = build_graph(a, w.all_points, GraphKind::Contact);

  std::vector<Vec2> rings;
  for (auto i : w.ring_indices) rings.push_back(w.all_points[i]);
  const EmbeddedGraph rg = build_graph(a, rings, GraphKind::Contact);
  w.ring_union_lattice_unique = lattice_unique_order(rings.size(), rg.edges).has_value();
  return w;
}

RigidityReport verify_rigidity(const ContactWitness& w, const SymmetricBody& a, const SymmetricBody& b,
                               const LinearMap2& t) {
  const double det = t.determinant();
  if (!std::isfinite(det) || std::fabs(det) <= 1e-12 * t.max_abs_entry() * t.max_abs_entry())
    throw Error(ErrorCode::SingularMap, "map is singular");
  const LinearMap2 inv = t.inverse();
  RigidityReport rep;
  rep.k = w.k;
  rep.epsilon = w.epsilon;
  rep.scaled = w.scaled;
  for (const auto& c : w.components) {
    ComponentRigidity r;
    r.theta = c.theta;
    r.ell = c.beam.ell;
    r.rho_a = a.signature(c.theta);
    r.rho_tb = mapped_signature(b, inv, c.theta);
    r.d_theta = 4.0 * static_cast<double>(r.ell) * std::fabs(r.rho_a / r.rho_tb - 1.0);
    const Vec2 chord = c.p1 - c.q1;
    r.identity_lhs = std::fabs(b.norm(inv(chord)) - a.norm(chord));
    r.identity_error = std::fabs(r.identity_lhs - r.d_theta);
    r.scaled_budget = 4.0 * static_cast<double>(r.ell) * w.epsilon;
    r.slack_bound = 6.0 * static_cast<double>(c.s1.size() + 2) + 6.0 * static_cast<double>(c.s2.size() + 2);
    r.slack_side1 = 3.0 * a.norm(c.p1 - c.p);
    r.slack_side2 = 3.0 * a.norm(c.q1 - c.q);
    r.measured_slack = r.slack_side1 + r.slack_side2;
    r.span_side1 = a.norm(c.s1.front() - c.p1);
    r.span_side2 = a.norm(c.s2.front() - c.q1);
    r.rigid = r.scaled_budget > r.slack_bound && r.d_theta >= r.scaled_budget;

    rep.max_d = std::fmax(rep.max_d, r.d_theta);
    if (r.identity_error > 1e-9) rep.identity_ok = false;
    if (r.slack_side1 > 6.0 * static_cast<double>(c.s1.size() + 2) + 1e-9 ||
        r.slack_side2 > 6.0 * static_cast<double>(c.s2.size() + 2) + 1e-9 ||
        6.0 * static_cast<double>(c.s1.size() + 2) > 90.0 || 6.0 * static_cast<double>(c.s2.size() + 2) > 90.0)
      rep.slack_within_bound = false;
    if (!(4.0 * static_cast<double>(r.ell) > static_cast<double>(w.k))) rep.ell_exceeds_quarter_k = false;
    if (r.rigid) rep.separated_by_rigidity = true;
    rep.components.push_back(r);
  }
  rep.full_ok = rep.max_d > rep.full_budget;
  return rep;
}

std::int64_t minimal_rigid_k(const SymmetricBody& a, const Lattice& lat, double theta, double epsilon,
                             std::int64_t k_min, std::int64_t k_max) {
  if (!(epsilon > 0.0)) throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");
  // the slack bound is at least 2 * 6 * 3, so skip every k whose beam cannot beat it
  std::int64_t k = std::max<std::int64_t>(k_min, 1);
  auto ell_at = [&](std::int64_t kk) -> std::int64_t {
    try {
      return max_beam_extent(a, lat, kk, theta).ell;
    } catch (const Error&) {
      return 0;
    }
  };
  std::int64_t lo = k, hi = k_max;
  while (lo < hi) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (4.0 * static_cast<double>(ell_at(mid)) * epsilon > 36.0) hi = mid; else lo = mid + 1;
  }
  for (k = lo; k <= k_max; ++k) {
    const AttachedBeam c = attach_beam(a, lat, k, theta);
    const double slack = 6.0 * static_cast<double>(c.s1.size() + 2) + 6.0 * static_cast<double>(c.s2.size() + 2);
    if (4.0 * static_cast<double>(c.beam.ell) * epsilon > slack) return k;
  }
  return 0;
}

}  // namespace bodygraphs
