// rtnsim command-line runner. Talks to the library exclusively through the
// C API in rtnsim.h.

#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rtnsim.h"

namespace {

int exit_code(rtn_status status) {
  switch (status) {
    case RTN_OK: return 0;
    case RTN_ERR_CONFIG: return 2;
    case RTN_ERR_TOLERANCE: return 3;
    default: return 1;
  }
}

int report(rtn_status status, const char* context) {
  if (status == RTN_OK) return 0;
  std::fprintf(stderr, "rtnsim: %s: %s\n", context, rtn_last_error());
  return exit_code(status);
}

struct RunFlags {
  std::string engines;
  long runs = 0;
  unsigned long long seed = 0;
  bool seed_set = false;
  std::string out_dir;
  std::string tier;
};

int apply_flags_and_run(rtn_experiment* exp, const RunFlags& flags) {
  rtn_status st = RTN_OK;
  if (!flags.engines.empty() &&
      (st = rtn_experiment_set_engines(exp, flags.engines.c_str())) != RTN_OK)
    return report(st, "--engines");
  if (flags.runs > 0 && (st = rtn_experiment_set_runs(exp, flags.runs)) != RTN_OK)
    return report(st, "--runs");
  if (flags.seed_set && (st = rtn_experiment_set_seed(exp, flags.seed)) != RTN_OK)
    return report(st, "--seed");
  if (!flags.out_dir.empty() &&
      (st = rtn_experiment_set_output_dir(exp, flags.out_dir.c_str())) != RTN_OK)
    return report(st, "--out");
  if (!flags.tier.empty() &&
      (st = rtn_experiment_set_tier(exp, flags.tier.c_str())) != RTN_OK)
    return report(st, "--tolerance-tier");
  return report(rtn_experiment_run(exp), "run");
}

void add_run_flags(CLI::App* cmd, RunFlags& flags) {
  cmd->add_option("--engines", flags.engines,
                  "comma-separated subset of analytic, quasi_hamiltonian, monte_carlo");
  cmd->add_option("--runs", flags.runs, "Monte Carlo trajectory count");
  cmd->add_option("--seed", flags.seed, "Monte Carlo seed")
      ->each([&flags](const std::string&) { flags.seed_set = true; });
  cmd->add_option("--out", flags.out_dir, "output directory");
  cmd->add_option("--tolerance-tier", flags.tier, "full or smoke")
      ->check(CLI::IsMember({"full", "smoke"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rtnsim: qubit decoherence and entanglement dynamics under "
               "random telegraph noise"};
  app.require_subcommand(1);

  std::string config_path, preset_name, scan_config, scan_out;
  RunFlags flags;

  CLI::App* run = app.add_subcommand("run", "run an experiment config file");
  run->add_option("config", config_path, "experiment config file")->required();
  add_run_flags(run, flags);

  CLI::App* preset = app.add_subcommand("preset", "run a built-in figure preset");
  preset->add_option("name", preset_name, "preset name (see list-presets)")->required();
  add_run_flags(preset, flags);

  CLI::App* scan = app.add_subcommand("phase-scan", "classify the (g/gamma, theta) plane");
  scan->add_option("config", scan_config, "phase-scan config file (omit for defaults)");
  scan->add_option("--out", scan_out, "output CSV path");

  CLI::App* list = app.add_subcommand("list-presets", "list built-in presets");

  CLI11_PARSE(app, argc, argv);

  if (list->parsed()) {
    size_t needed = 0;
    rtn_list_presets(nullptr, 0, &needed);
    std::vector<char> buf(needed + 1);
    rtn_list_presets(buf.data(), buf.size(), nullptr);
    std::fputs(buf.data(), stdout);
    return 0;
  }

  if (run->parsed() || preset->parsed()) {
    rtn_experiment* exp = nullptr;
    rtn_status st = run->parsed()
                        ? rtn_experiment_from_file(config_path.c_str(), &exp)
                        : rtn_experiment_from_preset(preset_name.c_str(), &exp);
    if (st != RTN_OK) return report(st, run->parsed() ? "load config" : "load preset");
    const int rc = apply_flags_and_run(exp, flags);
    rtn_experiment_free(exp);
    return rc;
  }

  if (scan->parsed()) {
    rtn_phase_scan* ps = nullptr;
    rtn_status st = scan_config.empty() ? rtn_phase_scan_default(&ps)
                                        : rtn_phase_scan_from_file(scan_config.c_str(), &ps);
    if (st != RTN_OK) return report(st, "load phase-scan config");
    if (!scan_out.empty() &&
        (st = rtn_phase_scan_set_output(ps, scan_out.c_str())) != RTN_OK) {
      rtn_phase_scan_free(ps);
      return report(st, "--out");
    }
    st = rtn_phase_scan_run(ps);
    rtn_phase_scan_free(ps);
    return report(st, "phase-scan");
  }

  return 0;
}
