#include "bodygraphs/separation.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include <algorithm>
#include <limits>
#include <memory>
#include <random>

namespace bodygraphs {

namespace {

constexpr double kSingularDet = 1e-6;
constexpr double kRejected = 1e30;

struct Problem {
  const SymmetricBody* b;
  std::vector<double> thetas;
  std::vector<Vec2> dirs;
  std::vector<double> rho_a;
  double lo{0.0}, hi{0.0};  // sanity window for rho_TB
  bool minimax{false};
};

LinearMap2 from_params(const gsl_vector* x) {
  return {gsl_vector_get(x, 0), gsl_vector_get(x, 1), gsl_vector_get(x, 2), gsl_vector_get(x, 3)};
}

double objective(const gsl_vector* x, void* params) {
  const auto* p = static_cast<const Problem*>(params);
  const LinearMap2 t = from_params(x);
  const double det = t.determinant();
  if (!std::isfinite(det) || std::fabs(det) < kSingularDet) return kRejected;
  const LinearMap2 inv = t.inverse();
  double acc = 0.0;
  for (std::size_t i = 0; i < p->dirs.size(); ++i) {
    const double rho_tb = 2.0 / p->b->norm(inv(p->dirs[i]));
    if (!(rho_tb >= p->lo && rho_tb <= p->hi)) return kRejected;
    if (p->minimax) {
      acc = std::fmax(acc, std::fabs(p->rho_a[i] / rho_tb - 1.0));
    } else {
      const double l = std::log(p->rho_a[i] / rho_tb);
      acc += l * l;
    }
  }
  return acc;
}

struct MinimizerDeleter {
  void operator()(gsl_multimin_fminimizer* m) const { gsl_multimin_fminimizer_free(m); }
};
struct VectorDeleter {
  void operator()(gsl_vector* v) const { gsl_vector_free(v); }
};

LinearMap2 simplex_descent(Problem& prob, const LinearMap2& start, double step, int iterations) {
  gsl_multimin_function fn{&objective, 4, &prob};
  std::unique_ptr<gsl_vector, VectorDeleter> x(gsl_vector_alloc(4));
  std::unique_ptr<gsl_vector, VectorDeleter> ss(gsl_vector_alloc(4));
  gsl_vector_set(x.get(), 0, start.a11);
  gsl_vector_set(x.get(), 1, start.a12);
  gsl_vector_set(x.get(), 2, start.a21);
  gsl_vector_set(x.get(), 3, start.a22);
  gsl_vector_set_all(ss.get(), step);
  std::unique_ptr<gsl_multimin_fminimizer, MinimizerDeleter> m(
      gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, 4));
  gsl_multimin_fminimizer_set(m.get(), &fn, x.get(), ss.get());
  for (int it = 0; it < iterations; ++it) {
    if (gsl_multimin_fminimizer_iterate(m.get()) != GSL_SUCCESS) break;
    if (gsl_multimin_fminimizer_size(m.get()) < 1e-15) break;
  }
  return from_params(gsl_multimin_fminimizer_x(m.get()));
}

double max_deviation(const Problem& prob, const LinearMap2& t) {
  Problem copy = prob;
  copy.minimax = true;
  std::unique_ptr<gsl_vector, VectorDeleter> x(gsl_vector_alloc(4));
  gsl_vector_set(x.get(), 0, t.a11);
  gsl_vector_set(x.get(), 1, t.a12);
  gsl_vector_set(x.get(), 2, t.a21);
  gsl_vector_set(x.get(), 3, t.a22);
  return objective(x.get(), &copy);
}

// Second area moments [[xx, xy], [xy, yy]] about the origin.
LinearMap2 moments(const SymmetricBody& body) {
  const auto& v = body.vertices();
  double xx = 0.0, xy = 0.0, yy = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Vec2 p = v[i], q = v[(i + 1) % v.size()];
    const double c = cross(p, q);
    xx += c * (p.x * p.x + p.x * q.x + q.x * q.x) / 12.0;
    yy += c * (p.y * p.y + p.y * q.y + q.y * q.y) / 12.0;
    xy += c * (p.x * q.y + 2.0 * p.x * p.y + 2.0 * q.x * q.y + q.x * p.y) / 24.0;
  }
  return {xx, xy, xy, yy};
}

// Square root of a symmetric positive definite 2x2 matrix.
LinearMap2 spd_sqrt(const LinearMap2& m) {
  const double s = std::sqrt(m.determinant());
  const double t = std::sqrt(m.a11 + m.a22 + 2.0 * s);
  return {(m.a11 + s) / t, m.a12 / t, m.a21 / t, (m.a22 + s) / t};
}

}  // namespace

const char* to_string(Verdict v) noexcept {
  return v == Verdict::Separated ? "Separated" : "EquivalentUpToTolerance";
}

DirectionSet direction_set(int level) {
  if (level < 0 || level > 20) throw Error(ErrorCode::InvalidArgument, "direction level out of range");
  DirectionSet ds;
  ds.level = level;
  const std::size_t count = std::size_t{1} << level;
  for (std::size_t i = 0; i < count; ++i) ds.angles.push_back(std::numbers::pi * static_cast<double>(i) / static_cast<double>(count));
  return ds;
}

double mapped_signature(const SymmetricBody& b, const LinearMap2& t_inverse, double theta) {
  return 2.0 / b.norm(t_inverse(unit_at(theta)));
}

DeviationReport signature_deviation(const SymmetricBody& a, const SymmetricBody& b, const LinearMap2& t,
                                    const std::vector<double>& thetas) {
  const double det = t.determinant();
  const double s = t.max_abs_entry();
  if (!std::isfinite(det) || s == 0.0 || std::fabs(det) <= 1e-12 * s * s)
    throw Error(ErrorCode::SingularMap, "map is singular");
  const LinearMap2 inv = t.inverse();
  DeviationReport rep;
  for (double th : thetas) {
    AngleDeviation d;
    d.theta = th;
    d.rho_a = a.signature(th);
    d.rho_tb = mapped_signature(b, inv, th);
    d.dev = std::fabs(d.rho_a / d.rho_tb - 1.0);
    if (rep.per_angle.empty() || d.dev > rep.max_dev) {
      rep.max_dev = d.dev;
      rep.argmax_theta = th;
    }
    rep.per_angle.push_back(d);
  }
  return rep;
}

FitResult fit_linear_map(const SymmetricBody& a, const SymmetricBody& b, const std::vector<double>& thetas,
                         const FitOptions& opts) {
  if (opts.seeds < 1) throw Error(ErrorCode::InvalidArgument, "need at least one multistart seed");
  if (thetas.empty()) throw Error(ErrorCode::InvalidArgument, "direction set is empty");
  gsl_set_error_handler_off();

  Problem prob;
  prob.b = &b;
  prob.thetas = thetas;
  double amin = std::numeric_limits<double>::infinity(), amax = 0.0, bmean = 0.0, amean = 0.0;
  for (double th : thetas) {
    prob.dirs.push_back(unit_at(th));
    prob.rho_a.push_back(a.signature(th));
    amin = std::fmin(amin, prob.rho_a.back());
    amax = std::fmax(amax, prob.rho_a.back());
    amean += prob.rho_a.back();
    bmean += b.signature(th);
  }
  // candidates whose signature leaves [a/sqrt2, 2b] are rejected
  prob.lo = amin / std::sqrt(2.0);
  prob.hi = 2.0 * amax;
  const double scale = amean / bmean;

  // Moment starts: T = c J_A^{1/2} R J_B^{-1/2} gives T(B) the second moments
  // of A for every orthogonal R, which leaves one angle and a reflection to search.
  const LinearMap2 ja = moments(a), jb = moments(b);
  const double c = std::pow(jb.determinant() / ja.determinant(), 0.125);
  const int moment_seeds = 2 * ((3 * (opts.seeds - 1) / 4) / 2);

  std::vector<LinearMap2> starts = opts.warm_starts;
  std::mt19937_64 rng(opts.rng_seed);
  std::uniform_real_distribution<double> angle(0.0, std::numbers::pi);
  std::uniform_real_distribution<double> stretch(-0.4, 0.4);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (int s = 0; s < opts.seeds; ++s) {
    if (s == 0) {
      starts.push_back(LinearMap2::identity() * scale);
      continue;
    }
    if (s <= moment_seeds) {
      const int i = (s - 1) / 2;
      const double phi = std::numbers::pi * (i + 0.5 * coin(rng)) / (moment_seeds / 2);
      const LinearMap2 r = LinearMap2::rotation(phi) * ((s - 1) % 2 ? LinearMap2::diag(1.0, -1.0) : LinearMap2::identity());
      starts.push_back(spd_sqrt(ja) * r * spd_sqrt(jb).inverse() * c);
      continue;
    }
    const double k = std::exp(stretch(rng));
    LinearMap2 t = LinearMap2::rotation(angle(rng)) * LinearMap2::diag(k, 1.0 / k) * LinearMap2::rotation(angle(rng));
    if (coin(rng) < 0.5) t = t * LinearMap2::diag(1.0, -1.0);
    starts.push_back(t * scale);
  }

  FitResult best;
  best.residual = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < starts.size(); ++s) {
    const double step = 0.1 * std::fmax(starts[s].max_abs_entry(), 1e-3);
    prob.minimax = false;
    LinearMap2 t = simplex_descent(prob, starts[s], step, opts.iterations);
    t = simplex_descent(prob, t, step * 0.01, opts.iterations);
    prob.minimax = true;
    t = simplex_descent(prob, t, step * 0.1, opts.iterations);
    t = simplex_descent(prob, t, step * 0.001, opts.iterations);
    const double r = max_deviation(prob, t);
    if (r < best.residual) {
      best.residual = r;
      best.map = t;
      best.best_seed = static_cast<int>(s);
    }
  }
  if (!(best.residual < kRejected)) throw Error(ErrorCode::NoConvergence, "every multistart candidate was rejected");
  return best;
}

std::vector<double> SeparationCertificate::top_angles(std::size_t n) const {
  std::vector<AngleDeviation> sorted = deviations;
  std::stable_sort(sorted.begin(), sorted.end(), [](const AngleDeviation& x, const AngleDeviation& y) {
    if (x.dev != y.dev) return x.dev > y.dev;
    return x.theta < y.theta;
  });
  std::vector<double> out;
  for (std::size_t i = 0; i < sorted.size() && i < n; ++i) out.push_back(sorted[i].theta);
  return out;
}

SeparationCertificate find_separation(const SymmetricBody& a, const SymmetricBody& b, const SeparationOptions& opts) {
  if (opts.max_level < 2) throw Error(ErrorCode::InvalidArgument, "max_level must be at least 2");
  if (!(opts.margin > 0.0)) throw Error(ErrorCode::InvalidArgument, "margin must be positive");
  SeparationCertificate cert;
  FitOptions fit = opts.fit;
  for (int level = 2; level <= opts.max_level; ++level) {
    const DirectionSet ds = direction_set(level);
    const FitResult r = fit_linear_map(a, b, ds.angles, fit);
    cert.history.push_back({level, r.residual});
    cert.theta_set = ds;
    cert.best_map = r.map;
    cert.residual = r.residual;
    cert.deviations = signature_deviation(a, b, r.map, ds.angles).per_angle;
    if (r.residual >= opts.margin) {
      cert.verdict = Verdict::Separated;
      cert.epsilon = 0.5 * r.residual;
      return cert;
    }
    fit.warm_starts = opts.fit.warm_starts;
    fit.warm_starts.insert(fit.warm_starts.begin(), r.map);
  }
  cert.verdict = Verdict::EquivalentUpToTolerance;
  cert.epsilon = 0.0;
  return cert;
}

}  // namespace bodygraphs
