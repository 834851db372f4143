#include <doctest.h>

#include <numbers>
#include <random>

#include "bodygraphs/body.hpp"
#include "oracles.hpp"

using namespace bodygraphs;

namespace {

constexpr double kPi = std::numbers::pi;
// inscribed 256-gon: norms exceed the Euclidean ones by at most this factor
const double kDiscTol = 1.0 / std::cos(kPi / 256) - 1.0;

bool same_vertex_set(const std::vector<Vec2>& a, const std::vector<Vec2>& b, double tol) {
  if (a.size() != b.size()) return false;
  for (const Vec2 p : a) {
    bool found = false;
    for (const Vec2 q : b) found = found || length(p - q) <= tol;
    if (!found) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("geometry") {

TEST_CASE("norm examples") {
  CHECK(make_square().norm({3, 1}) == doctest::Approx(3.0).epsilon(1e-12));
  const double d = make_disk().norm({3, 4});
  CHECK(d >= 5.0 - 1e-12);
  CHECK(d <= 5.0 * (1.0 + kDiscTol));
  CHECK(make_regular(6).norm({1, 0}) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(make_regular(6).norm({0, 0}) == 0.0);
}

TEST_CASE("norm matches the ray-cast oracle and the norm axioms") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-3, 3), c(-4, 4);
  std::vector<SymmetricBody> bodies{make_square(), make_regular(6), make_disk(), make_regular(5), make_regular(8)};
  for (int i = 0; i < 5; ++i) bodies.push_back(SymmetricBody(convex_hull(oracle::random_symmetric(rng, 6))));
  for (const auto& b : bodies) {
    for (int s = 0; s < 300; ++s) {
      const Vec2 x{u(rng), u(rng)}, y{u(rng), u(rng)};
      const double l = c(rng);
      CHECK(b.norm(x) == doctest::Approx(oracle::ray_norm(b.vertices(), x)).epsilon(1e-10));
      CHECK(b.norm(x * l) == doctest::Approx(std::fabs(l) * b.norm(x)).epsilon(1e-12));
      CHECK(b.norm(x + y) <= b.norm(x) + b.norm(y) + 1e-12);
      CHECK(b.norm(-x) == doctest::Approx(b.norm(x)).epsilon(1e-12));
    }
  }
}

TEST_CASE("radial vector examples") {
  const Vec2 r0 = make_square().radial(0);
  CHECK(r0.x == doctest::Approx(1.0));
  CHECK(r0.y == doctest::Approx(0.0));
  const Vec2 r1 = make_square().radial(kPi / 4);
  CHECK(r1.x == doctest::Approx(1.0));
  CHECK(r1.y == doctest::Approx(1.0));
  const Vec2 r2 = make_regular(6).radial(kPi / 3);
  CHECK(r2.x == doctest::Approx(0.5));
  CHECK(r2.y == doctest::Approx(std::sqrt(3.0) / 2));
  const auto disk = make_disk();
  for (double t = 0; t < 2 * kPi; t += 0.37) {
    const Vec2 r = disk.radial(t);
    CHECK(disk.norm(r) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::fabs(cross(r, unit_at(t))) < 1e-12);
    CHECK(dot(r, unit_at(t)) > 0);
  }
}

TEST_CASE("signature examples and the rotating-chord oracle") {
  CHECK(make_square().signature(0) == doctest::Approx(2.0));
  CHECK(make_square().signature(kPi / 4) == doctest::Approx(2 * std::sqrt(2.0)));
  const auto disk = make_disk();
  for (double t = 0; t < kPi; t += 0.1) CHECK(std::fabs(disk.signature(t) - 2.0) <= 2.0 * kDiscTol);
  std::mt19937_64 rng(11);
  for (int i = 0; i < 5; ++i) {
    const SymmetricBody b(convex_hull(oracle::random_symmetric(rng, 7)));
    for (int a = 0; a < 180; ++a) {
      const double t = kPi * a / 180;
      CHECK(b.signature(t) == doctest::Approx(oracle::rotating_chord(b.vertices(), t)).epsilon(1e-9));
    }
  }
}

TEST_CASE("symmetrize matches the brute-force Minkowski hull") {
  const SymmetricBody k = symmetrize({{0, 0}, {1, 0}, {0, 1}});
  const std::vector<Vec2> hexagon{{0.5, 0}, {0, 0.5}, {-0.5, 0.5}, {-0.5, 0}, {0, -0.5}, {0.5, -0.5}};
  CHECK(same_vertex_set(k.vertices(), hexagon, 1e-12));

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int i = 0; i < 10; ++i) {
    std::vector<Vec2> poly;
    for (int j = 0; j < 7; ++j) poly.push_back({u(rng), u(rng)});
    poly = oracle::brute_hull(poly);
    if (poly.size() < 3) continue;
    std::vector<Vec2> sums;
    for (const Vec2 p : poly)
      for (const Vec2 q : poly) sums.push_back((p - q) * 0.5);
    const SymmetricBody s = symmetrize(poly);
    CHECK(same_vertex_set(s.vertices(), oracle::brute_hull(sums), 1e-9));
    // the signature survives symmetrization
    for (int a = 0; a < 90; ++a) {
      const double t = kPi * a / 90;
      CHECK(s.signature(t) == doctest::Approx(oracle::rotating_chord(poly, t)).epsilon(1e-9));
    }
  }
  CHECK(same_vertex_set(symmetrize(make_square().vertices()).vertices(), make_square().vertices(), 1e-12));
  const auto hex = make_regular(6);
  CHECK(same_vertex_set(symmetrize(hex.vertices()).vertices(), hex.vertices(), 1e-12));
}

TEST_CASE("linear images") {
  const auto sq = make_square();
  CHECK(same_vertex_set(sq.apply(LinearMap2::identity()).vertices(), sq.vertices(), 1e-15));
  CHECK(same_vertex_set(sq.apply(LinearMap2::diag(2, 1)).vertices(), {{2, 1}, {-2, 1}, {-2, -1}, {2, -1}}, 1e-15));
  const auto disk = make_disk();
  const double th = 0.3;
  const auto rot = disk.apply(LinearMap2::rotation(th));
  for (double t = 0; t < kPi; t += 0.05) CHECK(rot.signature(t + th) == doctest::Approx(disk.signature(t)).epsilon(1e-9));
  CHECK_THROWS_AS(sq.apply({1, 2, 2, 4}), Error);
}

TEST_CASE("URTC classification") {
  const UrtcReport sq = make_square().urtc();
  CHECK_FALSE(sq.urtc);
  REQUIRE(sq.edge_index.has_value());
  CHECK(sq.edge_norm == doctest::Approx(2.0));
  CHECK(make_regular(6).urtc().urtc);
  const auto hex = make_regular(6);
  for (std::size_t i = 0; i < hex.size(); ++i) CHECK(hex.norm(hex.edge_to(i) - hex.edge_from(i)) == doctest::Approx(1.0));
  CHECK(make_disk().has_urtc());
  for (int n : {3, 5, 7, 8}) CHECK(make_regular(n).has_urtc());
  // URTC is invariant under linear maps
  std::mt19937_64 rng(5);
  for (int i = 0; i < 5; ++i) {
    const auto m = oracle::random_map(rng);
    CHECK(make_regular(6).apply(m).has_urtc());
    CHECK_FALSE(make_square().apply(m).has_urtc());
  }
}

TEST_CASE("translate relation examples and the clipping oracle") {
  CHECK(make_disk().relation({2, 0}) == TranslateRelation::Touch);
  CHECK(make_square().relation({1, 1}) == TranslateRelation::Overlap);
  CHECK(make_square().relation({3, 0}) == TranslateRelation::Disjoint);
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-3, 3);
  const SymmetricBody b(convex_hull(oracle::random_symmetric(rng, 5)));
  int disagreements = 0;
  for (int s = 0; s < 2000; ++s) {
    const Vec2 v{u(rng), u(rng)};
    const double n = b.norm(v);
    if (std::fabs(n - 2.0) < 1e-6) continue;
    const auto want = oracle::direct_relation(b.vertices(), v, 1e-14, 1e-12);
    const auto got = b.relation(v);
    const bool agree = (want == oracle::Rel::Overlap && got == TranslateRelation::Overlap) ||
                       (want == oracle::Rel::Disjoint && got == TranslateRelation::Disjoint);
    disagreements += agree ? 0 : 1;
  }
  CHECK(disagreements == 0);
}

TEST_CASE("body validation") {
  CHECK_THROWS_AS(SymmetricBody({{1, 0}, {0, 1}, {-1, 0}}), Error);
  try {
    SymmetricBody({{1, 0}, {0, 1}, {-1, 0.2}, {0, -1}});
    FAIL("asymmetric body accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidBody);
  }
  CHECK_THROWS_AS(make_disk(15), Error);
}

}
