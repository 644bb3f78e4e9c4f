// Grid sweeps, CSV/JSON serialisation and the oracle verification run
// behind the jcent command-line tool.

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "jcent/pt_spectrum.hpp"
#include "jcent/regime.hpp"

namespace jcent {

struct SweepConfig {
  double lambda_min = 0.0;
  double lambda_max = 1.0;
  std::size_t lambda_steps = 50;
  double alpha_min = 0.0;
  double alpha_max = 0.99;
  std::size_t alpha_steps = 50;
  double horizon = 50.0;
  std::size_t coarse_steps = 2000;
  double tail_epsilon = 1e-10;
  std::size_t parallelism = 1;

  /// Throws std::invalid_argument on an inconsistent config.
  void validate() const;
  double lambda_at(std::size_t i) const;
  double alpha_at(std::size_t j) const;
};

/// Sets one config key from its text value. Throws std::invalid_argument on
/// an unknown key or a malformed number.
void set_config_value(SweepConfig& cfg, const std::string& key, const std::string& value);

/// Flat "key = value" lines; blank lines and '#' comments are ignored.
SweepConfig parse_sweep_config(std::istream& in, SweepConfig base = {});

struct SweepRecord {
  double lambda = 0.0;
  double alpha = 0.0;
  Regime regime = Regime::PptAllTimes;
  double max_log_neg = 0.0;
  double t_at_max = 0.0;
  double upper_bound = 0.0;
  std::optional<double> first_nppt_time;
};

SweepRecord evaluate_point(double lambda, double alpha, const SweepConfig& cfg);

/// Row order is lambda outer, alpha inner, independent of cfg.parallelism.
std::vector<SweepRecord> run_sweep(const SweepConfig& cfg);

/// Runs fn(i) for i in [0, count) on up to `jobs` threads.
void parallel_for(std::size_t count, std::size_t jobs, const std::function<void(std::size_t)>& fn);

/// 17 significant digits, shortest "%g" layout.
std::string format_real(double x);

inline constexpr const char* kSweepCsvHeader =
    "lambda,alpha,regime,max_log_neg,t_at_max,upper_bound,first_nppt_time";
inline constexpr const char* kBoundaryCsvHeader = "lambda,alpha,which";
inline constexpr const char* kNegativityCsvHeader = "t,log_negativity";

void write_sweep_csv(std::ostream& out, const std::vector<SweepRecord>& records);
void write_boundary_csv(std::ostream& out, const std::vector<BoundaryPoint>& points);
/// Series rows, then one "# t_max=...,value_max=...,tail_bound=..." footer line.
void write_negativity_csv(std::ostream& out, const NegativitySeries& series);

std::string classify_json(double lambda, double alpha);

struct VerifyReport {
  bool passed = false;
  std::string text;
};

/// Random (lambda, alpha <= 0.9, t <= 20) cases checked against the oracle:
/// block spectrum, state entries, log-negativity and 2x3 witness equivalence.
VerifyReport run_verification(std::uint64_t seed, std::size_t cases, std::size_t jobs = 1);

/// Pads the analytic spectrum with zeros to the oracle's length, sorts both
/// and pairs them in order. Throws std::invalid_argument when the analytic
/// list is the longer one.
struct SpectrumMatch {
  double max_deviation = 0.0;
  std::size_t padding = 0;
};
SpectrumMatch match_spectrum(std::vector<double> analytic, std::vector<double> oracle);

}  // namespace jcent
