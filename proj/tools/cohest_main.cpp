#include <iostream>
#include <optional>

#include "CLI11.hpp"

#include "cohest/errors.hpp"
#include "cohest/pipeline.hpp"
#include "cohest/version.hpp"

namespace {

struct CommonOpts {
  std::string config_path;
  std::string out_override;
  std::optional<uint64_t> seed_override;
  int workers = 0;
};

cohest::ExperimentConfig load_config(const CommonOpts& opts) {
  cohest::ExperimentConfig cfg = cohest::ExperimentConfig::load_file(opts.config_path);
  if (!opts.out_override.empty()) cfg.out_dir = opts.out_override;
  if (opts.seed_override) cfg.plan.master_seed = *opts.seed_override;
  for (const auto& w : cfg.warnings) std::cerr << "warning: " << w << "\n";
  return cfg;
}

void add_common(CLI::App* cmd, CommonOpts* opts, bool config_required = true) {
  auto* config = cmd->add_option("--config", opts->config_path, "experiment config file (JSON)");
  if (config_required) config->required();
  cmd->add_option("--out", opts->out_override, "override the output directory");
  cmd->add_option("--seed", opts->seed_override, "override the master seed");
  cmd->add_option("--workers", opts->workers, "worker threads (0 = hardware concurrency)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Randomized-measurement estimation of average layer unitarity and fidelity"};
  app.set_version_flag("--version", cohest::kVersion);
  app.require_subcommand(1);

  CommonOpts opts;
  std::string channel_path;

  auto* plan = app.add_subcommand("plan", "sample circuits for every depth and write them out");
  add_common(plan, &opts);
  auto* simulate = app.add_subcommand("simulate", "produce measurement records for planned circuits");
  add_common(simulate, &opts);
  auto* estimate = app.add_subcommand("estimate", "per-depth purity/fidelity estimates from records");
  add_common(estimate, &opts);
  auto* fit = app.add_subcommand("fit", "fit the exponential decays");
  auto* report = app.add_subcommand("report", "coherence report with Pauli-bound classification");
  add_common(fit, &opts);
  add_common(report, &opts);
  auto* oracle = app.add_subcommand("oracle", "exact channel metrics and decay references");
  add_common(oracle, &opts, /*config_required=*/false);
  oracle->add_option("--channel", channel_path, "Kraus channel file to analyze instead of a config");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (plan->parsed()) {
      const size_t records = cohest::run_plan(load_config(opts));
      std::cout << "planned " << records << " circuit records\n";
    } else if (simulate->parsed()) {
      const size_t records = cohest::run_simulate(load_config(opts), opts.workers);
      std::cout << "measurement records: " << records << "\n";
    } else if (estimate->parsed()) {
      const size_t records = cohest::run_estimate(load_config(opts), opts.workers);
      std::cout << "estimate records: " << records << "\n";
    } else if (fit->parsed()) {
      cohest::run_fit(load_config(opts));
      std::cout << "fits written\n";
    } else if (report->parsed()) {
      const cohest::CoherenceReport r = cohest::run_report(load_config(opts));
      std::cout << "n=" << r.n << " u=" << r.unitarity << " f=" << r.polarization
                << " F=" << r.avg_fidelity << " bounds=[" << r.bounds.lower << ", "
                << r.bounds.upper << "] region=" << cohest::to_string(r.region) << "\n";
    } else if (oracle->parsed()) {
      std::optional<std::string> channel;
      if (!channel_path.empty()) channel = channel_path;
      nlohmann::json out;
      if (channel && opts.config_path.empty()) {
        cohest::ExperimentConfig dummy;  // channel-only mode needs no config
        out = cohest::run_oracle(dummy, channel);
        std::cout << out.dump(2) << "\n";
        return cohest::kOk;
      }
      if (opts.config_path.empty()) {
        std::cerr << "error: oracle needs --config or --channel\n";
        return cohest::kConfigError;
      }
      out = cohest::run_oracle(load_config(opts), channel);
      std::cout << out.dump(2) << "\n";
    }
  } catch (const cohest::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cohest::kDataError;
  }
  return cohest::kOk;
}
