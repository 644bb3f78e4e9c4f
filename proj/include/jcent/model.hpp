// Closed-form Jaynes-Cummings evolution of a mixed two-level system coupled
// to a thermal field mode, in a truncated Fock basis.
//
// Basis convention (shared by every module): |a, n> maps to index
// a * (n_max + 1) + n, with a = 0 for |e> and a = 1 for |g>.

#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace jcent {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

enum class Level : int { Excited = 0, Ground = 1 };

/// Point (lambda, alpha, gamma) of the model: initial qubit state
/// lambda|e><e| + (1-lambda)|g><g|, thermal field p_n = (1-alpha) alpha^n,
/// coupling gamma.
class ModelParams {
 public:
  /// Throws std::invalid_argument outside 0<=lambda<=1, 0<=alpha<1, gamma>0.
  ModelParams(double lambda, double alpha, double gamma = 1.0);

  double lambda() const { return lambda_; }
  double alpha() const { return alpha_; }
  double gamma() const { return gamma_; }
  /// m = alpha / (1 - alpha)
  double mean_photon_number() const { return alpha_ / (1.0 - alpha_); }

  /// lambda - alpha (1 - lambda); prefactor of every partial-transpose coherence.
  double coherence_prefactor() const;

 private:
  double lambda_;
  double alpha_;
  double gamma_;
};

struct Truncation {
  std::size_t n_max = 8;
  double tail_epsilon = 1e-10;
};

/// Smallest n_max with alpha^(n_max+1) <= tail_epsilon, floored at 8.
Truncation auto_truncation(double alpha, double tail_epsilon);

struct TrigFactors {
  std::size_t n = 0;
  double omega = 0.0;
  double c = 1.0;
  double s = 0.0;
};

double thermal_weight(std::size_t n, double alpha);

/// omega_n = 2 gamma sqrt(n+1), c_n = cos(omega_n t / 2), s_n = sin(omega_n t / 2).
TrigFactors trig_factors(std::size_t n, double t, double gamma);

struct FockIndex {
  Level level;
  std::size_t n;
  friend bool operator==(const FockIndex&, const FockIndex&) = default;
};

/// value * |row><col|
struct OperatorEntry {
  FockIndex row;
  FockIndex col;
  Complex value;
};

/// The unit-trace sector operator rho_n (before weighting by p_n), as a
/// list of entries in the |a,m> basis. Zero amplitudes are omitted.
std::vector<OperatorEntry> rho_block(std::size_t n, double t, const ModelParams& params);

class TruncatedDensityMatrix {
 public:
  TruncatedDensityMatrix(std::size_t n_max, ComplexMatrix entries, double trace_deficit);

  std::size_t n_max() const { return n_max_; }
  std::size_t dim() const { return 2 * (n_max_ + 1); }
  const ComplexMatrix& entries() const { return entries_; }
  double trace_deficit() const { return trace_deficit_; }

  std::size_t index(Level a, std::size_t n) const {
    return static_cast<std::size_t>(a) * (n_max_ + 1) + n;
  }
  Complex operator()(Level a, std::size_t m, Level b, std::size_t n) const {
    return entries_(static_cast<Eigen::Index>(index(a, m)), static_cast<Eigen::Index>(index(b, n)));
  }
  double trace() const { return entries_.trace().real(); }

 private:
  std::size_t n_max_;
  ComplexMatrix entries_;
  double trace_deficit_;
};

/// Joint state rho(t) = sum_n p_n rho_n truncated at trunc.n_max. Sectors
/// n < n_max are kept whole; of rho_{n_max} only the diagonal entries inside
/// the basis survive. Everything dropped is reported as trace_deficit.
/// Throws std::invalid_argument when trunc.n_max == 0.
TruncatedDensityMatrix build_state(double t, const ModelParams& params, const Truncation& trunc);

}  // namespace jcent
