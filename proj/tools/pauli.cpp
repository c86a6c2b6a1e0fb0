#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "pauli/commands.hpp"
#include "pauli/config.hpp"

namespace {

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? "," : "") + items[i];
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pseudo-spectral Pauli-Darwin / Pauli-Poisswell simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  long long seed = -1;
  std::vector<std::string> sets;
  std::vector<std::string> epsilons, dt_list, n_list;
  std::string mutation = "none";
  int samples = 4;

  auto add_common = [&](CLI::App* sub, bool config_required) {
    auto* opt = sub->add_option("--config", config_path, "INI configuration file");
    if (config_required) opt->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "output directory (default: output.directory)");
    sub->add_option("--seed", seed, "random seed (overrides run.seed)");
    sub->add_option("--set", sets, "override a key, e.g. --set evolution.dt=5e-4 (repeatable)");
  };

  auto* run = app.add_subcommand("run", "evolve one configuration and write diagnostics");
  add_common(run, true);
  auto* sweep = app.add_subcommand("sweep", "compare trajectories over a list of epsilons");
  add_common(sweep, true);
  sweep->add_option("--epsilons", epsilons, "epsilon list, descending")->delimiter(',');
  auto* verify = app.add_subcommand("verify", "run the randomized operator identity suite");
  add_common(verify, false);
  verify->add_option("--mutate", mutation, "inject an operator corruption the suite must flag")
      ->check(CLI::IsMember({"none", "stern_gerlach_sign", "spin_current_sign", "drop_div_a"}));
  verify->add_option("--samples", samples, "random samples per resolution")->check(CLI::PositiveNumber);
  auto* conv = app.add_subcommand("convergence", "observed order of accuracy in dt and n");
  add_common(conv, true);
  conv->add_option("--dt-list", dt_list, "step sizes")->delimiter(',');
  conv->add_option("--n-list", n_list, "resolutions")->delimiter(',');

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) {
      std::uint64_t s = seed >= 0 ? static_cast<std::uint64_t>(seed) : 1;
      if (!config_path.empty()) {
        pauli::Overrides ov;
        for (const auto& a : sets) ov.push_back(pauli::parse_override(a));
        const auto cfg = pauli::parse_config(config_path, ov);
        if (seed < 0) s = cfg.seed;
        if (out_dir.empty()) out_dir = cfg.output_directory;
      }
      if (out_dir.empty()) out_dir = "verify_out";
      return pauli::cmd_verify(s, out_dir, pauli::parse_mutation(mutation), samples);
    }

    pauli::Overrides ov;
    for (const auto& a : sets) ov.push_back(pauli::parse_override(a));
    if (seed >= 0) ov.emplace_back("run.seed", std::to_string(seed));
    if (!epsilons.empty()) ov.emplace_back("sweep.epsilons", join(epsilons));
    if (!dt_list.empty()) ov.emplace_back("convergence.dt_list", join(dt_list));
    if (!n_list.empty()) ov.emplace_back("convergence.n_list", join(n_list));
    const auto cfg = pauli::parse_config(config_path, ov);
    if (out_dir.empty()) out_dir = cfg.output_directory;

    if (run->parsed()) return pauli::cmd_run(cfg, out_dir);
    if (sweep->parsed()) return pauli::cmd_sweep(cfg, out_dir);
    return pauli::cmd_convergence(cfg, out_dir);
  } catch (const pauli::ConfigError& e) {
    if (!out_dir.empty()) {
      pauli::write_error_record(out_dir, e.kind_name(), e.what(), e.key());
    } else {
      std::cerr << "config error (" << e.kind_name() << ", key " << e.key() << "): " << e.what() << "\n";
    }
    return 2;
  } catch (const std::exception& e) {
    if (!out_dir.empty()) {
      pauli::write_error_record(out_dir, "Error", e.what());
    } else {
      std::cerr << "error: " << e.what() << "\n";
    }
    return 2;
  }
}
