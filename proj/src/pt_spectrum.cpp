#include "jcent/pt_spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "jcent/regime.hpp"

namespace jcent {

namespace {

double log2_one_plus_twice(double x) { return std::log1p(2.0 * x) / std::numbers::ln2; }

double coherence_prefactor(const ModelParams& params) {
#ifdef JCENT_INJECT_COHERENCE_FAULT
  // Mutation build for the verifier: flipped sign inside the prefactor.
  return params.lambda() + params.alpha() * (1.0 - params.lambda());
#else
  return params.coherence_prefactor();
#endif
}

// Smallest eigenvalue of the real symmetric [[p, q], [q, r]].
double min_eig_sym2(double p, double q, double r) {
  return 0.5 * (p + r) - std::hypot(0.5 * (p - r), q);
}

}  // namespace

PTBlock make_pt_block(std::size_t n, double a, double b, Complex c) {
  PTBlock blk{n, a, b, c, 0.0, 0.0};
  const double half_trace = 0.5 * (a + b);
  blk.eig_plus = half_trace + std::hypot(0.5 * (a - b), std::abs(c));
  // det / eig_plus avoids cancellation when eig_minus is small.
  blk.eig_minus = blk.eig_plus > 0.0 ? blk.det() / blk.eig_plus : 0.0;
  return blk;
}

double pt_block_scale(std::size_t n, double alpha) {
  return n == 0 ? 1.0 - alpha : (1.0 - alpha) * std::pow(alpha, double(n - 1));
}

void fill_trig_table(double t, double gamma, std::size_t levels, std::vector<double>& cos_half,
                     std::vector<double>& sin_half) {
  cos_half.resize(levels);
  sin_half.resize(levels);
  for (std::size_t k = 0; k < levels; ++k) {
    const double phase = gamma * std::sqrt(double(k + 1)) * t;
    cos_half[k] = std::cos(phase);
    sin_half[k] = std::sin(phase);
  }
}

PTBlock pt_block_scaled(std::size_t n, double scale, std::span<const double> cos_half,
                        std::span<const double> sin_half, const ModelParams& params) {
  if (cos_half.size() < n + 2 || sin_half.size() < n + 2)
    throw std::invalid_argument("trig table too short for block");
  const double lam = params.lambda();
  const double alpha = params.alpha();
  const double d = coherence_prefactor(params);

  const double c_up = cos_half[n + 1], s_up = sin_half[n + 1];
  const double upper = c_up * c_up * lam + alpha * s_up * s_up * (1.0 - lam);
  const double coh = d * cos_half[n] * sin_half[n];
  if (n == 0) {
    // weights: A ~ alpha, B ~ 1, C ~ 1
    return make_pt_block(0, scale * alpha * upper, scale * (1.0 - lam), Complex{0.0, scale * coh});
  }
  const double c_lo = cos_half[n - 1], s_lo = sin_half[n - 1];
  const double lower = alpha * c_lo * c_lo * (1.0 - lam) + s_lo * s_lo * lam;
  // weights: A ~ alpha^2, B ~ 1, C ~ alpha, relative to (1-alpha) alpha^(n-1)
  return make_pt_block(n, scale * alpha * alpha * upper, scale * lower,
                       Complex{0.0, scale * alpha * coh});
}

PTBlock pt_block(std::size_t n, double t, const ModelParams& params) {
  std::vector<double> c, s;
  fill_trig_table(t, params.gamma(), n + 2, c, s);
  return pt_block_scaled(n, pt_block_scale(n, params.alpha()), c, s, params);
}

double standalone_eigenvalue(double t, const ModelParams& params) {
  const auto tf = trig_factors(0, t, params.gamma());
  const double lam = params.lambda();
  return (1.0 - params.alpha()) *
         (lam * tf.c * tf.c + params.alpha() * (1.0 - lam) * tf.s * tf.s);
}

double PTSpectrum::negativity_sum() const {
  double sum = 0.0;
  for (const auto& b : blocks) sum += std::max(0.0, -b.eig_minus);
  return sum;
}

double PTSpectrum::log_negativity() const { return log2_one_plus_twice(negativity_sum()); }

bool PTSpectrum::nppt() const {
  return std::any_of(blocks.begin(), blocks.end(), [](const PTBlock& b) { return b.negative(); });
}

std::vector<double> PTSpectrum::eigenvalues() const {
  std::vector<double> out;
  out.reserve(2 * blocks.size() + 1);
  out.push_back(standalone);
  for (const auto& b : blocks) {
    out.push_back(b.eig_minus);
    out.push_back(b.eig_plus);
  }
  std::sort(out.begin(), out.end());
  return out;
}

double negativity_tail_bound(const ModelParams& params, std::size_t n_max) {
  return std::pow(params.alpha(), double(n_max)) * std::abs(params.coherence_prefactor()) / 2.0;
}

PTSpectrum pt_spectrum(double t, const ModelParams& params, const Truncation& trunc) {
  if (trunc.n_max == 0) throw std::invalid_argument("pt_spectrum needs n_max >= 1");
  PTSpectrum out;
  out.standalone = standalone_eigenvalue(t, params);
  out.tail_bound = negativity_tail_bound(params, trunc.n_max);

  std::vector<double> c, s;
  fill_trig_table(t, params.gamma(), trunc.n_max + 1, c, s);
  out.blocks.reserve(trunc.n_max);
  const double alpha = params.alpha();
  double scale = 1.0 - alpha;
  for (std::size_t n = 0; n < trunc.n_max; ++n) {
    if (n >= 2) scale *= alpha;
    out.blocks.push_back(pt_block_scaled(n, scale, c, s, params));
  }
  return out;
}

double log_negativity(double t, const ModelParams& params, const Truncation& trunc) {
  return pt_spectrum(t, params, trunc).log_negativity();
}

namespace {

struct Peak {
  double t;
  double value;
};

template <class F>
Peak golden_section_max(F&& f, double lo, double hi, double width) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  while (hi - lo > width) {
    if (f1 >= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    }
  }
  return f1 >= f2 ? Peak{x1, f1} : Peak{x2, f2};
}

}  // namespace

NegativitySeries max_log_negativity(const ModelParams& params, const Truncation& trunc,
                                    double horizon, std::size_t coarse_steps) {
  if (!(horizon > 0.0)) throw std::invalid_argument("horizon must be positive");
  if (coarse_steps < 100) throw std::invalid_argument("coarse_steps must be at least 100");

  constexpr double kTimeBracket = 1e-6;
  constexpr double kTieTolerance = 1e-9;
  constexpr std::size_t kRefinedPeaks = 8;
  constexpr double kEstimateSlack = 1e-6;

  NegativitySeries out;
  out.tail_bound = negativity_tail_bound(params, trunc.n_max);
  out.times.resize(coarse_steps + 1);
  out.log_neg.resize(coarse_steps + 1);
  const double dt = horizon / double(coarse_steps);
  for (std::size_t k = 0; k <= coarse_steps; ++k) {
    out.times[k] = k == coarse_steps ? horizon : dt * double(k);
    out.log_neg[k] = log_negativity(out.times[k], params, trunc);
  }

  const auto& v = out.log_neg;
  std::vector<std::size_t> peaks;
  for (std::size_t k = 0; k <= coarse_steps; ++k) {
    const bool left_ok = k == 0 || v[k] >= v[k - 1];
    const bool right_ok = k == coarse_steps || v[k] >= v[k + 1];
    if (left_ok && right_ok && v[k] > 0.0) peaks.push_back(k);
  }
  // Parabola through the neighbouring samples; ranks peaks far better than
  // the raw sample when many maxima have nearly the same height.
  std::vector<double> estimate(coarse_steps + 1, 0.0);
  for (std::size_t k : peaks) {
    estimate[k] = v[k];
    if (k == 0 || k == coarse_steps) continue;
    const double curv = 2.0 * v[k] - v[k - 1] - v[k + 1];
    if (curv > 0.0) estimate[k] += (v[k + 1] - v[k - 1]) * (v[k + 1] - v[k - 1]) / (8.0 * curv);
  }
  std::vector<std::size_t> order = peaks;
  std::stable_sort(order.begin(), order.end(),
                   [&estimate](std::size_t a, std::size_t b) { return estimate[a] > estimate[b]; });

  auto objective = [&](double t) { return log_negativity(t, params, trunc); };
  std::vector<Peak> refined;
  std::vector<bool> done(coarse_steps + 1, false);
  double top = 0.0;
  auto refine = [&](std::size_t k) {
    const double lo = out.times[k == 0 ? 0 : k - 1];
    const double hi = out.times[std::min(k + 1, coarse_steps)];
    const Peak p = golden_section_max(objective, lo, hi, kTimeBracket);
    const Peak kept = p.value >= v[k] ? p : Peak{out.times[k], v[k]};
    top = std::max(top, kept.value);
    refined.push_back(kept);
    done[k] = true;
  };
  for (std::size_t i = 0; i < std::min(kRefinedPeaks, order.size()); ++i) refine(order[i]);
  for (std::size_t k : peaks)
    if (!done[k] && estimate[k] >= top - kEstimateSlack) refine(k);

  Peak best{0.0, 0.0};
  for (const auto& p : refined) best.value = std::max(best.value, p.value);
  best.t = horizon;
  for (const auto& p : refined) {
    if (p.value >= best.value - kTieTolerance) best.t = std::min(best.t, p.t);
  }
  if (refined.empty()) best.t = 0.0;
  out.t_max = best.t;
  out.value_max = best.value;
  return out;
}

double envelope_upper_bound(double alpha, double lambda) {
  if (!(alpha >= 0.0 && alpha <= 1.0) || !(lambda >= 0.0 && lambda <= 1.0))
    throw std::invalid_argument("envelope_upper_bound needs alpha, lambda in [0, 1]");
  const double f = f_min(alpha, lambda);
  const double half_d = (lambda - alpha * (1.0 - lambda)) / 2.0;
  // block n = 0 worst case, and the n >= 1 envelope whose weights sum to 1
  const double mu = (1.0 - alpha) * min_eig_sym2(alpha * f, half_d, 1.0 - lambda);
  const double nu = min_eig_sym2(alpha * alpha * f, alpha * half_d, f);
  return log2_one_plus_twice(std::max(0.0, -mu) + std::max(0.0, -nu));
}

double envelope_upper_bound(const ModelParams& params) {
  return envelope_upper_bound(params.alpha(), params.lambda());
}

}  // namespace jcent
