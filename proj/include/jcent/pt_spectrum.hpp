// Partial-transpose spectrum of the evolved state.
//
// rho^Gamma is a direct sum of a single diagonal element on |e,0> and 2x2
// blocks M_n on {|e,n+1>, |g,n>}:
//
//   M_n = [ A_n    C_n ]
//         [ C_n^*  B_n ]
//
// so negativity follows from closed-form 2x2 eigenvalues.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "jcent/model.hpp"

namespace jcent {

/// Below this an eigenvalue is treated as negative.
inline constexpr double kNegativeThreshold = -1e-12;

struct PTBlock {
  std::size_t n = 0;
  double a_entry = 0.0;
  double b_entry = 0.0;
  Complex c_entry{};
  double eig_plus = 0.0;
  double eig_minus = 0.0;

  double trace() const { return a_entry + b_entry; }
  double det() const { return a_entry * b_entry - std::norm(c_entry); }
  bool negative() const { return eig_minus < kNegativeThreshold; }
};

/// Builds a block from its entries; eigenvalues via trace and determinant.
PTBlock make_pt_block(std::size_t n, double a, double b, Complex c);

PTBlock pt_block(std::size_t n, double t, const ModelParams& params);

/// Block n from tabulated c_k, s_k (k = 0 .. n+1) and its common weight
/// `scale`, which is (1-alpha) alpha^(n-1) for n >= 1 and (1-alpha) for n = 0.
/// scale = 1 gives the reduced block: same signs, same det / trace^2.
PTBlock pt_block_scaled(std::size_t n, double scale, std::span<const double> cos_half,
                        std::span<const double> sin_half, const ModelParams& params);

/// Block weight (1-alpha) alpha^(n-1), or (1-alpha) for n = 0.
double pt_block_scale(std::size_t n, double alpha);

/// c_k, s_k for k = 0 .. levels-1.
void fill_trig_table(double t, double gamma, std::size_t levels, std::vector<double>& cos_half,
                     std::vector<double>& sin_half);

/// <e,0| rho^Gamma |e,0> = (1-alpha)(lambda c_0^2 + alpha (1-lambda) s_0^2).
double standalone_eigenvalue(double t, const ModelParams& params);

struct PTSpectrum {
  double standalone = 0.0;
  std::vector<PTBlock> blocks;  // n = 0 .. n_max-1
  double tail_bound = 0.0;      // bound on the negativity of blocks n >= n_max

  /// sum over kept blocks of max(0, -eig_minus)
  double negativity_sum() const;
  /// log2 ||rho^Gamma||_1 over the kept blocks
  double log_negativity() const;
  bool nppt() const;
  /// {standalone} and both eigenvalues of every block, ascending.
  std::vector<double> eigenvalues() const;
};

/// alpha^n_max |lambda - alpha(1-lambda)| / 2
double negativity_tail_bound(const ModelParams& params, std::size_t n_max);

PTSpectrum pt_spectrum(double t, const ModelParams& params, const Truncation& trunc);

double log_negativity(double t, const ModelParams& params, const Truncation& trunc);

struct NegativitySeries {
  std::vector<double> times;
  std::vector<double> log_neg;
  double t_max = 0.0;
  double value_max = 0.0;
  double tail_bound = 0.0;
};

/// Samples log-negativity on coarse_steps+1 uniform points of [0, horizon]
/// and refines local maxima by golden-section search to a time bracket below
/// 1e-6: the 8 best by parabolic estimate, plus any estimated within 1e-6 of
/// the best refined value. Maxima equal to within 1e-9 resolve to the earliest time.
NegativitySeries max_log_negativity(const ModelParams& params, const Truncation& trunc,
                                    double horizon, std::size_t coarse_steps);

/// Closed-form upper bound on log-negativity over all times, from the
/// worst-case block matrices. Admits alpha = 1 (infinite temperature).
double envelope_upper_bound(double alpha, double lambda);
double envelope_upper_bound(const ModelParams& params);

}  // namespace jcent
