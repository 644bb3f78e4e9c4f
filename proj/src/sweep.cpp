#include "jcent/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

namespace jcent {

void SweepConfig::validate() const {
  auto in_unit = [](double x) { return x >= 0.0 && x <= 1.0; };
  if (!in_unit(lambda_min) || !in_unit(lambda_max) || lambda_min > lambda_max)
    throw std::invalid_argument("lambda range must satisfy 0 <= lambda_min <= lambda_max <= 1");
  if (!(alpha_min >= 0.0 && alpha_max < 1.0 && alpha_min <= alpha_max))
    throw std::invalid_argument("alpha range must satisfy 0 <= alpha_min <= alpha_max < 1");
  if (lambda_steps < 2 || alpha_steps < 2)
    throw std::invalid_argument("lambda_steps and alpha_steps must be at least 2");
  if (!(horizon > 0.0)) throw std::invalid_argument("horizon must be positive");
  if (coarse_steps < 100) throw std::invalid_argument("coarse_steps must be at least 100");
  if (!(tail_epsilon > 0.0)) throw std::invalid_argument("tail_epsilon must be positive");
  if (parallelism < 1) throw std::invalid_argument("parallelism must be at least 1");
}

double SweepConfig::lambda_at(std::size_t i) const {
  return lambda_min + (lambda_max - lambda_min) * double(i) / double(lambda_steps - 1);
}

double SweepConfig::alpha_at(std::size_t j) const {
  return alpha_min + (alpha_max - alpha_min) * double(j) / double(alpha_steps - 1);
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_real(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size())
    throw std::invalid_argument("config key '" + key + "': not a number: '" + text + "'");
  return v;
}

std::size_t parse_count(const std::string& key, const std::string& text) {
  const double v = parse_real(key, text);
  if (v < 0.0 || v != std::floor(v))
    throw std::invalid_argument("config key '" + key + "': not a nonnegative integer: '" + text + "'");
  return static_cast<std::size_t>(v);
}

}  // namespace

void set_config_value(SweepConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "lambda_min") cfg.lambda_min = parse_real(key, value);
  else if (key == "lambda_max") cfg.lambda_max = parse_real(key, value);
  else if (key == "lambda_steps") cfg.lambda_steps = parse_count(key, value);
  else if (key == "alpha_min") cfg.alpha_min = parse_real(key, value);
  else if (key == "alpha_max") cfg.alpha_max = parse_real(key, value);
  else if (key == "alpha_steps") cfg.alpha_steps = parse_count(key, value);
  else if (key == "horizon") cfg.horizon = parse_real(key, value);
  else if (key == "coarse_steps") cfg.coarse_steps = parse_count(key, value);
  else if (key == "tail_epsilon") cfg.tail_epsilon = parse_real(key, value);
  else if (key == "parallelism") cfg.parallelism = parse_count(key, value);
  else throw std::invalid_argument("unknown config key '" + key + "'");
}

SweepConfig parse_sweep_config(std::istream& in, SweepConfig base) {
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
    set_config_value(base, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return base;
}

SweepRecord evaluate_point(double lambda, double alpha, const SweepConfig& cfg) {
  const ModelParams params(lambda, alpha);
  const Truncation trunc = auto_truncation(alpha, cfg.tail_epsilon);
  const auto series = max_log_negativity(params, trunc, cfg.horizon, cfg.coarse_steps);
  SweepRecord rec;
  rec.lambda = lambda;
  rec.alpha = alpha;
  rec.regime = classify(alpha, lambda).regime;
  rec.max_log_neg = series.value_max;
  rec.t_at_max = series.t_max;
  rec.upper_bound = envelope_upper_bound(params);
  // Worst-case determinants are nonnegative there, so no block can turn negative.
  if (rec.regime != Regime::PptAllTimes)
    rec.first_nppt_time = first_nppt_time(params, trunc, cfg.horizon);
  return rec;
}

void parallel_for(std::size_t count, std::size_t jobs, const std::function<void(std::size_t)>& fn) {
  jobs = std::max<std::size_t>(1, std::min(jobs, count));
  if (jobs == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  {
    std::vector<std::jthread> pool;
    pool.reserve(jobs);
    for (std::size_t w = 0; w < jobs; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count && !failed; i = next++) {
          try {
            fn(i);
          } catch (...) {
            if (!failed.exchange(true)) error = std::current_exception();
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

std::vector<SweepRecord> run_sweep(const SweepConfig& cfg) {
  cfg.validate();
  std::vector<SweepRecord> out(cfg.lambda_steps * cfg.alpha_steps);
  parallel_for(out.size(), cfg.parallelism, [&](std::size_t k) {
    const std::size_t i = k / cfg.alpha_steps;
    const std::size_t j = k % cfg.alpha_steps;
    out[k] = evaluate_point(cfg.lambda_at(i), cfg.alpha_at(j), cfg);
  });
  return out;
}

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRecord>& records) {
  out << kSweepCsvHeader << '\n';
  for (const auto& r : records) {
    out << format_real(r.lambda) << ',' << format_real(r.alpha) << ',' << regime_tag(r.regime) << ','
        << format_real(r.max_log_neg) << ',' << format_real(r.t_at_max) << ','
        << format_real(r.upper_bound) << ',';
    if (r.first_nppt_time) out << format_real(*r.first_nppt_time);
    out << '\n';
  }
}

void write_boundary_csv(std::ostream& out, const std::vector<BoundaryPoint>& points) {
  out << kBoundaryCsvHeader << '\n';
  for (const auto& p : points)
    out << format_real(p.lambda) << ',' << format_real(p.alpha) << ',' << boundary_tag(p.which) << '\n';
}

void write_negativity_csv(std::ostream& out, const NegativitySeries& series) {
  out << kNegativityCsvHeader << '\n';
  for (std::size_t k = 0; k < series.times.size(); ++k)
    out << format_real(series.times[k]) << ',' << format_real(series.log_neg[k]) << '\n';
  out << "# t_max=" << format_real(series.t_max) << ",value_max=" << format_real(series.value_max)
      << ",tail_bound=" << format_real(series.tail_bound) << '\n';
}

std::string classify_json(double lambda, double alpha) {
  const auto r = classify(alpha, lambda);
  nlohmann::ordered_json j;
  j["lambda"] = lambda;
  j["alpha"] = alpha;
  j["regime"] = std::string(regime_tag(r.regime));
  j["cond_immediate"] = r.cond_immediate;
  j["cond_delayed"] = r.cond_delayed;
  j["f_value"] = r.f_value;
  return j.dump();
}

SpectrumMatch match_spectrum(std::vector<double> analytic, std::vector<double> oracle) {
  if (analytic.size() > oracle.size())
    throw std::invalid_argument("analytic spectrum is longer than the oracle spectrum");
  SpectrumMatch m;
  m.padding = oracle.size() - analytic.size();
  analytic.resize(oracle.size(), 0.0);
  std::sort(analytic.begin(), analytic.end());
  std::sort(oracle.begin(), oracle.end());
  for (std::size_t k = 0; k < oracle.size(); ++k)
    m.max_deviation = std::max(m.max_deviation, std::abs(analytic[k] - oracle[k]));
  return m;
}

}  // namespace jcent
