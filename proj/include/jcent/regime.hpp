// Classification of (alpha, lambda) into dynamical regimes from the
// worst-case block determinants, plus boundary extraction and a numeric
// first-NPPT-time search.

#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "jcent/model.hpp"

namespace jcent {

enum class Regime { PptAllTimes, NpptDelayed, NpptImmediate };

/// ppt_all_times, nppt_delayed or nppt_immediate
std::string_view regime_tag(Regime r);

struct RegimeResult {
  Regime regime = Regime::PptAllTimes;
  bool cond_immediate = false;
  bool cond_delayed = false;
  double f_value = 0.0;
};

/// min(lambda, alpha (1 - lambda))
double f_min(double alpha, double lambda);

// Condition functions; the matching condition holds where they are negative.
// Both accept alpha = 1.
double immediate_condition(double alpha, double lambda);  // f^2 - d^2/4
double delayed_condition(double alpha, double lambda);    // alpha f (1-lambda) - d^2/4

bool cond_immediate(double alpha, double lambda);
bool cond_delayed(double alpha, double lambda);

/// Throws std::invalid_argument unless 0 <= alpha <= 1 and 0 <= lambda <= 1.
RegimeResult classify(double alpha, double lambda);

enum class Boundary { Immediate, Delayed };

/// immediate or delayed
std::string_view boundary_tag(Boundary b);

struct BoundaryPoint {
  double lambda = 0.0;
  double alpha = 0.0;
  Boundary which = Boundary::Immediate;
};

double condition_value(Boundary which, double alpha, double lambda);

/// For each lambda, every alpha in [0, 1) where the condition changes sign:
/// 2000 uniform alpha samples, then bisection of each bracket to 1e-10.
/// Output is ordered by (lambda, alpha).
std::vector<BoundaryPoint> boundary_curve(Boundary which, std::span<const double> lambda_grid);

/// The same root search along lambda in [0, 1] at fixed alpha (alpha = 1 admitted).
std::vector<double> boundary_lambdas_at(Boundary which, double alpha);

/// Smallest t in (0, horizon] at which some kept block has
/// det < -tol * trace^2. The time grid step is 2 pi / (64 omega_{n_max});
/// the first flagged interval is bisected. std::nullopt when nothing turns
/// negative, which covers both PptAllTimes and a horizon that is too short.
std::optional<double> first_nppt_time(const ModelParams& params, const Truncation& trunc,
                                      double horizon, double tol = 1e-10);
/// Uses auto_truncation(alpha, 1e-10).
std::optional<double> first_nppt_time(const ModelParams& params, double horizon,
                                      double tol = 1e-10);

/// True when some kept block at time t has det < -tol * trace^2.
bool any_block_negative(double t, const ModelParams& params, std::size_t n_blocks,
                        double tol = 1e-10);

}  // namespace jcent
