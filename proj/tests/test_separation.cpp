#include <doctest.h>

#include <random>

#include "bodygraphs/separation.hpp"
#include "oracles.hpp"

using namespace bodygraphs;

namespace {

constexpr double kPi = std::numbers::pi;
const double kDiscTol = 1.0 / std::cos(kPi / 256) - 1.0;

}  // namespace

TEST_SUITE("separation") {

TEST_CASE("direction sets") {
  const DirectionSet d = direction_set(3);
  REQUIRE(d.angles.size() == 8);
  CHECK(d.angles[0] == 0.0);
  CHECK(d.angles[5] == doctest::Approx(5 * kPi / 8));
}

TEST_CASE("signature deviation") {
  const auto disk = make_disk();
  CHECK(signature_deviation(disk, disk, LinearMap2::identity(), direction_set(4).angles).max_dev <= 2 * kDiscTol);
  const auto ell = make_ellipse(2, 1);
  CHECK(signature_deviation(disk, ell, LinearMap2::diag(0.5, 1), direction_set(3).angles).max_dev <= 2 * kDiscTol);

  // direct evaluation on the hexagon with the rotating-chord oracle
  const auto hex = make_regular(6);
  const auto angles = direction_set(4).angles;
  double want = 0.0;
  for (double t : angles) want = std::fmax(want, std::fabs(oracle::rotating_chord(disk.vertices(), t) /
                                                           oracle::rotating_chord(hex.vertices(), t) - 1.0));
  const DeviationReport r = signature_deviation(disk, hex, LinearMap2::identity(), angles);
  CHECK(r.max_dev == doctest::Approx(want).epsilon(1e-9));
  // the supremum over all angles is 2/sqrt3 - 1, reached at mid-edge directions
  CHECK(r.max_dev <= 2.0 / std::sqrt(3.0) - 1.0 + 1e-9);
  CHECK(r.max_dev >= 2.0 / std::sqrt(3.0) - 1.0 - 5e-3);
  CHECK_THROWS_AS(signature_deviation(disk, hex, {1, 1, 1, 1}, angles), Error);
}

TEST_CASE("fitting linear images") {
  std::mt19937_64 rng(31);
  const SymmetricBody a(convex_hull(oracle::random_symmetric(rng, 5)));
  for (int i = 0; i < 3; ++i) {
    const SymmetricBody b = a.apply(oracle::random_map(rng));
    const FitResult f = fit_linear_map(a, b, direction_set(4).angles, {});
    CHECK(f.residual <= 1e-6);
  }
  const auto sq = make_square();
  const auto rect = sq.apply(LinearMap2::diag(2, 1));
  const FitResult f = fit_linear_map(sq, rect, direction_set(4).angles, {});
  CHECK(f.residual <= 1e-6);
  // T(rect) has the square's area; T is diag(1/2, 1) up to the square's symmetries
  CHECK(std::fabs(f.map.determinant()) == doctest::Approx(0.5).epsilon(1e-5));
  const auto image = rect.apply(f.map);
  for (const Vec2 v : image.vertices()) CHECK(sq.norm(v) == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("disk against hexagon has a positive residual") {
  const auto angles = direction_set(5).angles;
  const FitResult f = fit_linear_map(make_disk(), make_regular(6), angles, {});
  FitOptions dense;
  dense.seeds = 64;
  dense.rng_seed = 99;
  const FitResult oracle_fit = fit_linear_map(make_disk(), make_regular(6), angles, dense);
  CHECK(f.residual > 0.02);
  CHECK(oracle_fit.residual > 0.02);
  // the default search is not worse than the dense one by more than a sliver
  CHECK(f.residual <= oracle_fit.residual * 1.01);
}

TEST_CASE("separation verdicts") {
  const auto disk = make_disk();
  const SeparationCertificate same = find_separation(disk, disk);
  CHECK(same.verdict == Verdict::EquivalentUpToTolerance);
  CHECK(same.epsilon == 0.0);
  CHECK(same.residual <= 1e-3);
  // disk is rotation invariant, so T is orthogonal
  const LinearMap2& t = same.best_map;
  CHECK(t.a11 * t.a11 + t.a21 * t.a21 == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(t.a11 * t.a12 + t.a21 * t.a22 == doctest::Approx(0.0).epsilon(1e-3));

  const SeparationCertificate sep = find_separation(disk, make_regular(6));
  CHECK(sep.verdict == Verdict::Separated);
  CHECK(sep.epsilon >= 0.02);
  CHECK(sep.theta_set.level <= 5);
  CHECK(sep.epsilon == doctest::Approx(0.5 * sep.residual));
  const auto top = sep.top_angles(3);
  REQUIRE(top.size() == 3);
  double best = 0.0;
  for (const auto& d : sep.deviations) best = std::fmax(best, d.dev);
  for (const auto& d : sep.deviations)
    if (d.theta == top[0]) CHECK(d.dev == best);

  std::mt19937_64 rng(41);
  const auto hex = make_regular(6);
  const SeparationCertificate img = find_separation(hex, hex.apply(oracle::random_map(rng)));
  CHECK(img.verdict == Verdict::EquivalentUpToTolerance);
  CHECK(img.residual <= 1e-6);
}

TEST_CASE("bad options") {
  SeparationOptions o;
  o.max_level = 1;
  CHECK_THROWS_AS(find_separation(make_disk(), make_disk(), o), Error);
}

}
