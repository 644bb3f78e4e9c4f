#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>
#include <sstream>

#include "jcent/oracle.hpp"
#include "jcent/sweep.hpp"

namespace jcent {

namespace {

constexpr double kSpectrumTol = 1e-10;
constexpr double kStateTol = 1e-10;
constexpr double kLogNegSlack = 1e-9;

struct CaseInput {
  double lambda;
  double alpha;
  double t;
};

struct CaseResult {
  std::size_t n_max = 0;
  double spectrum_dev = 0.0;
  double state_dev = 0.0;
  double log_neg_dev = 0.0;
  double log_neg_allowed = 0.0;
  bool witness_ok = false;
};

CaseResult check_case(const CaseInput& in) {
  const ModelParams params(in.lambda, in.alpha);
  const Truncation trunc = auto_truncation(in.alpha, 1e-10);
  const std::size_t n_max = trunc.n_max;
  // Two guard levels keep the oracle's truncation edge away from every kept block.
  const Truncation guarded{n_max + 2, trunc.tail_epsilon};

  CaseResult r;
  r.n_max = n_max;
  const auto analytic = pt_spectrum(in.t, params, trunc);
  const auto rho = oracle::evolve_numeric(in.t, params, guarded);
  const auto full = oracle::full_pt_spectrum(rho);

  // Blocks are compared at the guarded truncation, where the only unpaired
  // oracle value is the |g,n_max+2> diagonal.
  r.spectrum_dev = match_spectrum(pt_spectrum(in.t, params, guarded).eigenvalues(), full).max_deviation;

  // Entries on levels below n_max are exact in both paths.
  const auto closed = build_state(in.t, params, trunc);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (std::size_t m = 0; m < n_max; ++m)
        for (std::size_t n = 0; n < n_max; ++n) {
          const auto la = static_cast<Level>(a), lb = static_cast<Level>(b);
          r.state_dev = std::max(r.state_dev, std::abs(closed(la, m, lb, n) - rho(la, m, lb, n)));
        }

  double trace_norm = 0.0;
  for (double e : full) trace_norm += std::abs(e);
  r.log_neg_dev = std::abs(std::log2(trace_norm) - analytic.log_negativity());
  r.log_neg_allowed = analytic.tail_bound + kLogNegSlack;

  const bool full_nppt = full.front() < kNegativeThreshold;
  const bool witnessed = oracle::nppt_witness(rho, guarded.n_max - 1).has_value();
  r.witness_ok = full_nppt == witnessed;
  return r;
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

}  // namespace

VerifyReport run_verification(std::uint64_t seed, std::size_t cases, std::size_t jobs) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<CaseInput> inputs(cases);
  for (auto& in : inputs) {
    in.lambda = unit(rng);
    in.alpha = 0.9 * unit(rng);
    in.t = 20.0 * unit(rng);
  }
  std::vector<CaseResult> results(cases);
  parallel_for(cases, jobs, [&](std::size_t k) { results[k] = check_case(inputs[k]); });

  std::size_t spectrum_fail = 0, state_fail = 0, logneg_fail = 0, witness_fail = 0;
  double spectrum_dev = 0.0, state_dev = 0.0, logneg_dev = 0.0;
  std::size_t n_max_top = 0;
  std::ostringstream detail;
  for (std::size_t k = 0; k < cases; ++k) {
    const auto& r = results[k];
    const auto& in = inputs[k];
    n_max_top = std::max(n_max_top, r.n_max);
    std::vector<std::string> problems;
    spectrum_dev = std::max(spectrum_dev, r.spectrum_dev);
    if (!(r.spectrum_dev < kSpectrumTol)) {
      ++spectrum_fail;
      problems.push_back("spectrum mismatch " + sci(r.spectrum_dev));
    }
    state_dev = std::max(state_dev, r.state_dev);
    if (!(r.state_dev < kStateTol)) {
      ++state_fail;
      problems.push_back("state entry deviation " + sci(r.state_dev));
    }
    logneg_dev = std::max(logneg_dev, r.log_neg_dev);
    if (!(r.log_neg_dev <= r.log_neg_allowed)) {
      ++logneg_fail;
      problems.push_back("log-negativity deviation " + sci(r.log_neg_dev));
    }
    if (!r.witness_ok) {
      ++witness_fail;
      problems.push_back("2x3 witness disagrees with full spectrum");
    }
    if (!problems.empty()) {
      detail << "  case " << k << " lambda=" << format_real(in.lambda) << " alpha=" << format_real(in.alpha)
             << " t=" << format_real(in.t) << " n_max=" << r.n_max << ":";
      for (const auto& p : problems) detail << ' ' << p << ';';
      detail << '\n';
    }
  }

  const bool passed = spectrum_fail + state_fail + logneg_fail + witness_fail == 0;
  std::ostringstream out;
  out << "jcent verify seed=" << seed << " cases=" << cases << " max_n_max=" << n_max_top << '\n';
  out << "spectrum        failures=" << spectrum_fail << " max_dev=" << sci(spectrum_dev)
      << " tol=" << sci(kSpectrumTol) << '\n';
  out << "state_entries   failures=" << state_fail << " max_dev=" << sci(state_dev)
      << " tol=" << sci(kStateTol) << '\n';
  out << "log_negativity  failures=" << logneg_fail << " max_dev=" << sci(logneg_dev) << '\n';
  out << "witness         failures=" << witness_fail << '\n';
  out << detail.str();
  out << "result: " << (passed ? "PASS" : "FAIL") << '\n';
  return {passed, out.str()};
}

}  // namespace jcent
