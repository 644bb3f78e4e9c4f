// jcent: command-line front end for the Jaynes-Cummings entanglement engine.
//
//   jcent classify   --lambda L --alpha A
//   jcent negativity --lambda L --alpha A [--horizon H] [--steps S] [--n-max N] [--tail-eps E] [--out F]
//   jcent sweep      [--config F] [--set key=value ...] [--horizon H] [--steps S] [--tail-eps E] [--jobs J] [--out F]
//   jcent boundary   [immediate|delayed|both] [--steps S] [--out F]
//   jcent verify     [--seed N] [--cases C] [--jobs J] [--out F]
//
// Exit codes: 0 ok, 1 invalid input, 2 verification failure.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "jcent/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitVerifyFailed = 2;

// Writes to --out when given, stdout otherwise.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw std::invalid_argument("cannot open output file '" + path + "'");
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

void check_unit(const char* name, double v, bool allow_one) {
  if (!(v >= 0.0 && (allow_one ? v <= 1.0 : v < 1.0)))
    throw std::invalid_argument(std::string(name) + " must lie in [0, 1" + (allow_one ? "]" : ")") +
                                ", got " + std::to_string(v));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement in the Jaynes-Cummings model with a thermal field"};
  app.require_subcommand(1);

  double lambda = 0.0, alpha = 0.0;
  double horizon = 50.0;
  std::size_t steps = 2000;
  std::optional<std::size_t> n_max;
  double tail_eps = 1e-10;
  std::string out_path;
  std::size_t jobs = 1;
  std::uint64_t seed = 1;
  std::size_t cases = 100;
  std::string config_path;
  std::vector<std::string> overrides;
  std::string which = "both";
  std::size_t lambda_steps = 1001;

  auto* classify_cmd = app.add_subcommand("classify", "Regime of one (lambda, alpha) point as JSON");
  classify_cmd->add_option("--lambda", lambda, "excited-state weight")->required();
  classify_cmd->add_option("--alpha", alpha, "thermal parameter m/(m+1); 1 means infinite temperature")
      ->required();

  auto* neg_cmd = app.add_subcommand("negativity", "Log-negativity time series as CSV");
  neg_cmd->add_option("--lambda", lambda)->required();
  neg_cmd->add_option("--alpha", alpha)->required();
  neg_cmd->add_option("--horizon", horizon, "time horizon")->capture_default_str();
  neg_cmd->add_option("--steps", steps, "coarse time samples")->capture_default_str();
  neg_cmd->add_option("--n-max", n_max, "highest Fock level (default: auto from --tail-eps)");
  neg_cmd->add_option("--tail-eps", tail_eps, "thermal tail weight for auto truncation")
      ->capture_default_str();
  neg_cmd->add_option("--out", out_path);

  auto* sweep_cmd = app.add_subcommand("sweep", "(lambda, alpha) grid sweep as CSV");
  sweep_cmd->add_option("--config", config_path, "flat key = value config file");
  sweep_cmd->add_option("--set", overrides, "config override key=value (repeatable)");
  auto* sweep_horizon = sweep_cmd->add_option("--horizon", horizon);
  auto* sweep_steps = sweep_cmd->add_option("--steps", steps, "coarse time samples");
  auto* sweep_eps = sweep_cmd->add_option("--tail-eps", tail_eps);
  auto* sweep_jobs = sweep_cmd->add_option("--jobs", jobs, "worker threads");
  sweep_cmd->add_option("--out", out_path);

  auto* boundary_cmd = app.add_subcommand("boundary", "Regime boundary curves as CSV");
  boundary_cmd->add_option("which", which, "immediate, delayed or both")
      ->check(CLI::IsMember({"immediate", "delayed", "both"}))
      ->capture_default_str();
  boundary_cmd->add_option("--steps", lambda_steps, "lambda grid points")->capture_default_str();
  boundary_cmd->add_option("--out", out_path);

  auto* verify_cmd = app.add_subcommand("verify", "Check the closed form against the brute-force oracle");
  verify_cmd->add_option("--seed", seed)->capture_default_str();
  verify_cmd->add_option("--cases", cases)->capture_default_str();
  verify_cmd->add_option("--jobs", jobs);
  verify_cmd->add_option("--out", out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (*classify_cmd) {
      check_unit("lambda", lambda, true);
      check_unit("alpha", alpha, true);
      std::cout << jcent::classify_json(lambda, alpha) << '\n';
      return kExitOk;
    }

    if (*neg_cmd) {
      check_unit("lambda", lambda, true);
      check_unit("alpha", alpha, false);
      const jcent::ModelParams params(lambda, alpha);
      jcent::Truncation trunc = jcent::auto_truncation(alpha, tail_eps);
      if (n_max) {
        if (*n_max < 1) throw std::invalid_argument("--n-max must be at least 1");
        trunc.n_max = *n_max;
      }
      const auto series = jcent::max_log_negativity(params, trunc, horizon, steps);
      Output out(out_path);
      jcent::write_negativity_csv(out.stream(), series);
      return kExitOk;
    }

    if (*sweep_cmd) {
      jcent::SweepConfig cfg;
      if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw std::invalid_argument("cannot read config file '" + config_path + "'");
        cfg = jcent::parse_sweep_config(in, cfg);
      }
      for (const auto& kv : overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("--set expects key=value, got '" + kv + "'");
        jcent::set_config_value(cfg, kv.substr(0, eq), kv.substr(eq + 1));
      }
      if (*sweep_horizon) cfg.horizon = horizon;
      if (*sweep_steps) cfg.coarse_steps = steps;
      if (*sweep_eps) cfg.tail_epsilon = tail_eps;
      if (*sweep_jobs) cfg.parallelism = jobs;
      cfg.validate();
      if (cfg.alpha_max > 0.99)
        std::cerr << "warning: alpha_max > 0.99 needs very large Fock truncations; expect long runtimes\n";
      const auto records = jcent::run_sweep(cfg);
      Output out(out_path);
      jcent::write_sweep_csv(out.stream(), records);
      return kExitOk;
    }

    if (*boundary_cmd) {
      if (lambda_steps < 2) throw std::invalid_argument("--steps must be at least 2");
      std::vector<double> grid(lambda_steps);
      for (std::size_t i = 0; i < lambda_steps; ++i) grid[i] = double(i) / double(lambda_steps - 1);
      std::vector<jcent::BoundaryPoint> points;
      for (auto b : {jcent::Boundary::Immediate, jcent::Boundary::Delayed}) {
        if (which != "both" && which != jcent::boundary_tag(b)) continue;
        const auto curve = jcent::boundary_curve(b, grid);
        points.insert(points.end(), curve.begin(), curve.end());
      }
      Output out(out_path);
      jcent::write_boundary_csv(out.stream(), points);
      return kExitOk;
    }

    if (*verify_cmd) {
      if (cases < 1) throw std::invalid_argument("--cases must be at least 1");
      const auto report = jcent::run_verification(seed, cases, jobs);
      Output out(out_path);
      out.stream() << report.text;
      return report.passed ? kExitOk : kExitVerifyFailed;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitOk;
}
