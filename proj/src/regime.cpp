#include "jcent/regime.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include "jcent/pt_spectrum.hpp"

namespace jcent {

std::string_view regime_tag(Regime r) {
  switch (r) {
    case Regime::PptAllTimes:
      return "ppt_all_times";
    case Regime::NpptDelayed:
      return "nppt_delayed";
    case Regime::NpptImmediate:
      return "nppt_immediate";
  }
  return "unknown";
}

std::string_view boundary_tag(Boundary b) {
  return b == Boundary::Immediate ? "immediate" : "delayed";
}

double f_min(double alpha, double lambda) { return std::min(lambda, alpha * (1.0 - lambda)); }

namespace {

double quarter_d2(double alpha, double lambda) {
  const double d = lambda - alpha * (1.0 - lambda);
  return d * d / 4.0;
}

}  // namespace

double immediate_condition(double alpha, double lambda) {
  const double f = f_min(alpha, lambda);
  return f * f - quarter_d2(alpha, lambda);
}

double delayed_condition(double alpha, double lambda) {
  return alpha * f_min(alpha, lambda) * (1.0 - lambda) - quarter_d2(alpha, lambda);
}

// Strict: a condition value of exactly zero is not satisfied.
bool cond_immediate(double alpha, double lambda) { return immediate_condition(alpha, lambda) < 0.0; }
bool cond_delayed(double alpha, double lambda) { return delayed_condition(alpha, lambda) < 0.0; }

RegimeResult classify(double alpha, double lambda) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw std::invalid_argument("alpha must lie in [0, 1], got " + std::to_string(alpha));
  if (!(lambda >= 0.0 && lambda <= 1.0))
    throw std::invalid_argument("lambda must lie in [0, 1], got " + std::to_string(lambda));
  RegimeResult r;
  r.cond_immediate = cond_immediate(alpha, lambda);
  r.cond_delayed = cond_delayed(alpha, lambda);
  r.f_value = f_min(alpha, lambda);
  if (r.cond_immediate)
    r.regime = Regime::NpptImmediate;
  else if (r.cond_delayed)
    r.regime = Regime::NpptDelayed;
  else
    r.regime = Regime::PptAllTimes;
  return r;
}

double condition_value(Boundary which, double alpha, double lambda) {
  return which == Boundary::Immediate ? immediate_condition(alpha, lambda)
                                      : delayed_condition(alpha, lambda);
}

namespace {

constexpr std::size_t kRootSamples = 2000;
constexpr double kRootWidth = 1e-10;

// Roots of g on [lo, hi) (or [lo, hi] when include_hi) by sampling and bisection.
template <class G>
std::vector<double> sign_changes(G&& g, double lo, double hi, bool include_hi) {
  std::vector<double> roots;
  const std::size_t last = include_hi ? kRootSamples : kRootSamples - 1;
  auto x_at = [&](std::size_t k) { return lo + (hi - lo) * double(k) / double(kRootSamples); };
  double x_prev = x_at(0);
  bool neg_prev = g(x_prev) < 0.0;
  for (std::size_t k = 1; k <= last; ++k) {
    const double x = x_at(k);
    const bool neg = g(x) < 0.0;
    if (neg != neg_prev) {
      double a = x_prev, b = x;
      while (b - a > kRootWidth) {
        const double m = 0.5 * (a + b);
        ((g(m) < 0.0) == neg_prev ? a : b) = m;
      }
      roots.push_back(0.5 * (a + b));
    }
    x_prev = x;
    neg_prev = neg;
  }
  return roots;
}

}  // namespace

std::vector<BoundaryPoint> boundary_curve(Boundary which, std::span<const double> lambda_grid) {
  std::vector<double> lambdas(lambda_grid.begin(), lambda_grid.end());
  if (std::any_of(lambdas.begin(), lambdas.end(), [](double l) { return !(l >= 0.0 && l <= 1.0); }))
    throw std::invalid_argument("boundary_curve: lambda grid values must lie in [0, 1]");
  std::sort(lambdas.begin(), lambdas.end());

  std::vector<BoundaryPoint> out;
  for (double lam : lambdas) {
    auto g = [which, lam](double a) { return condition_value(which, a, lam); };
    for (double a : sign_changes(g, 0.0, 1.0, false)) out.push_back({lam, a, which});
  }
  return out;
}

std::vector<double> boundary_lambdas_at(Boundary which, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw std::invalid_argument("boundary_lambdas_at: alpha must lie in [0, 1]");
  auto g = [which, alpha](double l) { return condition_value(which, alpha, l); };
  return sign_changes(g, 0.0, 1.0, true);
}

bool any_block_negative(double t, const ModelParams& params, std::size_t n_blocks, double tol) {
  std::vector<double> c, s;
  fill_trig_table(t, params.gamma(), n_blocks + 1, c, s);
  for (std::size_t n = 0; n < n_blocks; ++n) {
    const auto b = pt_block_scaled(n, 1.0, c, s, params);
    if (b.det() < -tol * b.trace() * b.trace()) return true;
  }
  return false;
}

std::optional<double> first_nppt_time(const ModelParams& params, const Truncation& trunc,
                                      double horizon, double tol) {
  if (!(horizon > 0.0)) throw std::invalid_argument("horizon must be positive");
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  const std::size_t n_blocks = trunc.n_max;
  if (n_blocks == 0) throw std::invalid_argument("first_nppt_time needs n_max >= 1");

  const double omega_top = trig_factors(n_blocks, 0.0, params.gamma()).omega;
  const double dt = 2.0 * std::numbers::pi / (omega_top * 64.0);
  const auto steps = static_cast<std::size_t>(std::ceil(horizon / dt));

  // Phases advance by a fixed rotation per step; resynchronised from exact
  // trig every kResync steps to bound rounding drift.
  constexpr std::size_t kResync = 256;
  const std::size_t levels = n_blocks + 1;
  std::vector<std::complex<double>> z(levels), w(levels);
  for (std::size_t k = 0; k < levels; ++k) {
    const double rate = params.gamma() * std::sqrt(double(k + 1));
    w[k] = std::polar(1.0, rate * dt);
  }
  std::vector<double> c(levels), s(levels);
  auto negative_here = [&]() {
    for (std::size_t n = 0; n < n_blocks; ++n) {
      const auto b = pt_block_scaled(n, 1.0, c, s, params);
      if (b.det() < -tol * b.trace() * b.trace()) return true;
    }
    return false;
  };

  double t_prev = 0.0;
  for (std::size_t j = 1; j <= steps; ++j) {
    const double t = std::min(horizon, dt * double(j));
    if (j % kResync == 1 || j == steps) {
      for (std::size_t k = 0; k < levels; ++k)
        z[k] = std::polar(1.0, params.gamma() * std::sqrt(double(k + 1)) * t);
    } else {
      for (std::size_t k = 0; k < levels; ++k) z[k] *= w[k];
    }
    for (std::size_t k = 0; k < levels; ++k) {
      c[k] = z[k].real();
      s[k] = z[k].imag();
    }
    if (negative_here()) {
      double lo = t_prev, hi = t;
      while (hi - lo > 1e-12 * std::max(1.0, hi)) {
        const double mid = 0.5 * (lo + hi);
        (any_block_negative(mid, params, n_blocks, tol) ? hi : lo) = mid;
      }
      return hi;
    }
    t_prev = t;
  }
  return std::nullopt;
}

std::optional<double> first_nppt_time(const ModelParams& params, double horizon, double tol) {
  return first_nppt_time(params, auto_truncation(params.alpha(), 1e-10), horizon, tol);
}

}  // namespace jcent
