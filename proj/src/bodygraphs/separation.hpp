#pragma once

#include <cstdint>
#include <vector>

#include "bodygraphs/body.hpp"

namespace bodygraphs {

struct DirectionSet {
  int level{0};
  std::vector<double> angles;  // i*pi/2^level, i = 0..2^level-1
};

DirectionSet direction_set(int level);

/// Signature of T(B) in direction theta, evaluated as 2/||T^-1 u||_B.
double mapped_signature(const SymmetricBody& b, const LinearMap2& t_inverse, double theta);

struct AngleDeviation {
  double theta{0.0};
  double rho_a{0.0};
  double rho_tb{0.0};
  double dev{0.0};  // |rho_a / rho_tb - 1|
};

struct DeviationReport {
  double max_dev{0.0};
  double argmax_theta{0.0};
  std::vector<AngleDeviation> per_angle;
};

/// Throws SingularMap for a (numerically) singular T.
DeviationReport signature_deviation(const SymmetricBody& a, const SymmetricBody& b, const LinearMap2& t,
                                    const std::vector<double>& thetas);

struct FitOptions {
  int seeds{16};
  int iterations{500};
  std::uint64_t rng_seed{20240917};
  std::vector<LinearMap2> warm_starts;  // tried before the random seeds
};

struct FitResult {
  LinearMap2 map;
  double residual{0.0};
  int best_seed{0};
};

FitResult fit_linear_map(const SymmetricBody& a, const SymmetricBody& b, const std::vector<double>& thetas,
                         const FitOptions& opts = {});

enum class Verdict { Separated, EquivalentUpToTolerance };

const char* to_string(Verdict v) noexcept;

struct LevelResult {
  int level{0};
  double residual{0.0};
};

struct SeparationCertificate {
  Verdict verdict{Verdict::EquivalentUpToTolerance};
  DirectionSet theta_set;
  double epsilon{0.0};    // half the best residual when separated, else 0
  double residual{0.0};   // best residual at the reported level
  LinearMap2 best_map;
  std::vector<AngleDeviation> deviations;
  std::vector<LevelResult> history;

  /// The n angles carrying the largest deviations, ties by angle.
  std::vector<double> top_angles(std::size_t n) const;
};

struct SeparationOptions {
  int max_level{6};
  double margin{0.01};
  FitOptions fit;
};

SeparationCertificate find_separation(const SymmetricBody& a, const SymmetricBody& b, const SeparationOptions& opts = {});

}  // namespace bodygraphs
