#include "jcent/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace jcent {

ModelParams::ModelParams(double lambda, double alpha, double gamma)
    : lambda_(lambda), alpha_(alpha), gamma_(gamma) {
  if (!(lambda >= 0.0 && lambda <= 1.0))
    throw std::invalid_argument("lambda must lie in [0, 1], got " + std::to_string(lambda));
  if (!(alpha >= 0.0 && alpha < 1.0))
    throw std::invalid_argument("alpha must lie in [0, 1), got " + std::to_string(alpha));
  if (!(gamma > 0.0) || !std::isfinite(gamma))
    throw std::invalid_argument("gamma must be positive, got " + std::to_string(gamma));
}

double ModelParams::coherence_prefactor() const { return lambda_ - alpha_ * (1.0 - lambda_); }

Truncation auto_truncation(double alpha, double tail_epsilon) {
  if (!(alpha >= 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in [0, 1)");
  if (!(tail_epsilon > 0.0)) throw std::invalid_argument("tail_epsilon must be positive");
  constexpr std::size_t kFloor = 8;
  Truncation trunc{kFloor, tail_epsilon};
  if (alpha == 0.0 || std::pow(alpha, double(kFloor + 1)) <= tail_epsilon) return trunc;

  // Log estimate, then walk to the exact smallest level.
  auto n = static_cast<std::size_t>(std::ceil(std::log(tail_epsilon) / std::log(alpha)));
  n = n > 0 ? n - 1 : 0;
  while (n > kFloor && std::pow(alpha, double(n)) <= tail_epsilon) --n;
  while (std::pow(alpha, double(n + 1)) > tail_epsilon) ++n;
  trunc.n_max = std::max(n, kFloor);
  return trunc;
}

double thermal_weight(std::size_t n, double alpha) {
  return (1.0 - alpha) * std::pow(alpha, double(n));
}

TrigFactors trig_factors(std::size_t n, double t, double gamma) {
  const double omega = 2.0 * gamma * std::sqrt(double(n + 1));
  const double phase = 0.5 * omega * t;
  return {n, omega, std::cos(phase), std::sin(phase)};
}

std::vector<OperatorEntry> rho_block(std::size_t n, double t, const ModelParams& params) {
  using enum Level;
  const double lam = params.lambda();
  const Complex i{0.0, 1.0};
  std::vector<OperatorEntry> out;
  out.reserve(8);
  auto push = [&out](FockIndex row, FockIndex col, Complex v) {
    if (v != Complex{}) out.push_back({row, col, v});
  };

  // lambda |e,n><e,n| rotating into |g,n+1>
  const auto cur = trig_factors(n, t, params.gamma());
  push({Excited, n}, {Excited, n}, lam * cur.c * cur.c);
  push({Ground, n + 1}, {Ground, n + 1}, lam * cur.s * cur.s);
  push({Excited, n}, {Ground, n + 1}, i * lam * cur.c * cur.s);
  push({Ground, n + 1}, {Excited, n}, -i * lam * cur.c * cur.s);

  // (1-lambda) |g,n><g,n| rotating into |e,n-1>
  if (n == 0) {
    push({Ground, 0}, {Ground, 0}, 1.0 - lam);
    return out;
  }
  const auto prev = trig_factors(n - 1, t, params.gamma());
  const double w = 1.0 - lam;
  push({Excited, n - 1}, {Excited, n - 1}, w * prev.s * prev.s);
  push({Ground, n}, {Ground, n}, w * prev.c * prev.c);
  push({Excited, n - 1}, {Ground, n}, -i * w * prev.c * prev.s);
  push({Ground, n}, {Excited, n - 1}, i * w * prev.c * prev.s);
  return out;
}

TruncatedDensityMatrix::TruncatedDensityMatrix(std::size_t n_max, ComplexMatrix entries,
                                               double trace_deficit)
    : n_max_(n_max), entries_(std::move(entries)), trace_deficit_(trace_deficit) {
  const auto d = static_cast<Eigen::Index>(dim());
  if (entries_.rows() != d || entries_.cols() != d)
    throw std::invalid_argument("density matrix dimension does not match n_max");
}

TruncatedDensityMatrix build_state(double t, const ModelParams& params, const Truncation& trunc) {
  const std::size_t n_max = trunc.n_max;
  if (n_max == 0) throw std::invalid_argument("build_state needs n_max >= 1");
  const auto dim = static_cast<Eigen::Index>(2 * (n_max + 1));
  ComplexMatrix rho = ComplexMatrix::Zero(dim, dim);
  auto idx = [n_max](const FockIndex& f) {
    return static_cast<Eigen::Index>(static_cast<std::size_t>(f.level) * (n_max + 1) + f.n);
  };

  for (std::size_t n = 0; n < n_max; ++n) {
    const double p = thermal_weight(n, params.alpha());
    for (const auto& e : rho_block(n, t, params)) rho(idx(e.row), idx(e.col)) += p * e.value;
  }
  const double p_edge = thermal_weight(n_max, params.alpha());
  for (const auto& e : rho_block(n_max, t, params)) {
    if (e.row == e.col && e.row.n <= n_max) rho(idx(e.row), idx(e.col)) += p_edge * e.value;
  }

  // Dropped: every sector above n_max plus the |g,n_max+1> population of the edge sector.
  const double s_edge = trig_factors(n_max, t, params.gamma()).s;
  const double deficit = std::pow(params.alpha(), double(n_max + 1)) +
                         p_edge * params.lambda() * s_edge * s_edge;
  return {n_max, std::move(rho), deficit};
}

}  // namespace jcent
