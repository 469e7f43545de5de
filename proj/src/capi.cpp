#include "rtnsim.h"

#include <cstring>
#include <string>

#include "rtnsim/entanglement.hpp"
#include "rtnsim/experiment.hpp"
#include "rtnsim/noise_core.hpp"
#include "rtnsim/single_qubit.hpp"

namespace {

thread_local std::string g_last_error;

rtn_status fail(rtn_status code, const char* what) {
  g_last_error = what ? what : "unknown error";
  return code;
}

template <typename Fn>
rtn_status guarded(Fn&& fn) {
  try {
    fn();
    return RTN_OK;
  } catch (const rtn::ConfigError& e) {
    return fail(RTN_ERR_CONFIG, e.what());
  } catch (const rtn::ToleranceError& e) {
    return fail(RTN_ERR_TOLERANCE, e.what());
  } catch (const rtn::GridError& e) {
    return fail(RTN_ERR_GRID, e.what());
  } catch (const rtn::NoZerosError& e) {
    return fail(RTN_ERR_NO_ZEROS, e.what());
  } catch (const rtn::InvalidArgument& e) {
    return fail(RTN_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(RTN_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(RTN_ERR_INTERNAL, "unknown exception");
  }
}

rtn::RtnSource make_source(double g, double theta, double gamma) {
  return rtn::RtnSource(g, theta, 0.0, gamma);
}

}  // namespace

struct rtn_experiment {
  std::vector<rtn::ExperimentConfig> panels;
};

struct rtn_phase_scan {
  rtn::PhaseScanConfig config;
};

extern "C" {

const char* rtn_version(void) { return "1.0.0"; }

const char* rtn_last_error(void) { return g_last_error.c_str(); }

rtn_status rtn_zeta_pure_dephasing(double g, double gamma, double t, double* out) {
  if (!out) return fail(RTN_ERR_INVALID_ARGUMENT, "null output pointer");
  return guarded([&] { *out = rtn::zeta_pure_dephasing_exact(g, gamma, t); });
}

rtn_status rtn_zeta_weak(double g, double theta, double gamma, double b0, double t,
                         double* out) {
  if (!out) return fail(RTN_ERR_INVALID_ARGUMENT, "null output pointer");
  return guarded([&] { *out = rtn::zeta_weak(make_source(g, theta, gamma), b0, t); });
}

rtn_status rtn_zeta_strong(double g, double theta, double gamma, double t,
                           double* out) {
  if (!out) return fail(RTN_ERR_INVALID_ARGUMENT, "null output pointer");
  return guarded([&] { *out = rtn::zeta_strong(make_source(g, theta, gamma), t); });
}

rtn_status rtn_gamma1(double g, double theta, double gamma, double b0, double* out) {
  if (!out) return fail(RTN_ERR_INVALID_ARGUMENT, "null output pointer");
  return guarded([&] { *out = rtn::gamma1(make_source(g, theta, gamma), b0); });
}

rtn_status rtn_zeta_zeros(double g, double theta, double gamma, int count,
                          double* out_times) {
  if (!out_times) return fail(RTN_ERR_INVALID_ARGUMENT, "null output pointer");
  return guarded([&] {
    const auto zeros = rtn::zeta_zeros(make_source(g, theta, gamma), count);
    std::memcpy(out_times, zeros.data(), zeros.size() * sizeof(double));
  });
}

rtn_status rtn_single_qubit_transfer(double b0, int has_noise, double g,
                                     double theta, double phi, double gamma,
                                     double t, double* out) {
  if (!out) return fail(RTN_ERR_INVALID_ARGUMENT, "null output pointer");
  return guarded([&] {
    rtn::QubitSpec spec =
        has_noise ? rtn::QubitSpec(b0, rtn::RtnSource(g, theta, phi, gamma))
                  : rtn::QubitSpec(b0);
    const rtn::Matrix4d r = rtn::single_qubit_transfer(spec, t);
    for (int row = 0; row < 4; ++row)
      for (int col = 0; col < 4; ++col) out[4 * row + col] = r(row, col);
  });
}

rtn_status rtn_concurrence(const double* rho_interleaved, double* out_c,
                           double* out_lambdas) {
  if (!rho_interleaved || !out_c)
    return fail(RTN_ERR_INVALID_ARGUMENT, "null pointer argument");
  return guarded([&] {
    rtn::Matrix4cd rho;
    for (int row = 0; row < 4; ++row)
      for (int col = 0; col < 4; ++col) {
        const int k = 2 * (4 * row + col);
        rho(row, col) = rtn::complexd(rho_interleaved[k], rho_interleaved[k + 1]);
      }
    const rtn::ConcurrenceResult res = rtn::concurrence_wootters(rho);
    *out_c = res.concurrence;
    if (out_lambdas)
      for (int k = 0; k < 4; ++k) out_lambdas[k] = res.spectrum.lambdas[k];
  });
}

rtn_status rtn_experiment_from_file(const char* path, rtn_experiment** out) {
  if (!path || !out) return fail(RTN_ERR_INVALID_ARGUMENT, "null pointer argument");
  return guarded([&] {
    auto* exp = new rtn_experiment;
    try {
      exp->panels.push_back(rtn::load_experiment_config(path));
    } catch (...) {
      delete exp;
      throw;
    }
    *out = exp;
  });
}

rtn_status rtn_experiment_from_preset(const char* name, rtn_experiment** out) {
  if (!name || !out) return fail(RTN_ERR_INVALID_ARGUMENT, "null pointer argument");
  return guarded([&] {
    const rtn::Preset* preset = rtn::find_preset(name);
    if (!preset)
      throw rtn::ConfigError("unknown preset '" + std::string(name) +
                             "' (see list-presets)");
    auto* exp = new rtn_experiment;
    for (const auto& panel : preset->panels) exp->panels.push_back(panel.config);
    *out = exp;
  });
}

rtn_status rtn_experiment_set_engines(rtn_experiment* exp, const char* engines) {
  if (!exp || !engines) return fail(RTN_ERR_INVALID_ARGUMENT, "null pointer argument");
  return guarded([&] {
    std::vector<rtn::Engine> parsed;
    std::string item;
    const std::string src = std::string(engines) + ",";
    for (char ch : src) {
      if (ch == ',') {
        // trim spaces
        while (!item.empty() && item.front() == ' ') item.erase(item.begin());
        while (!item.empty() && item.back() == ' ') item.pop_back();
        if (!item.empty()) parsed.push_back(rtn::engine_from_name(item));
        item.clear();
      } else {
        item += ch;
      }
    }
    if (parsed.empty()) throw rtn::ConfigError("no engines listed");
    for (auto& panel : exp->panels) panel.engines = parsed;
  });
}

rtn_status rtn_experiment_set_runs(rtn_experiment* exp, long runs) {
  if (!exp) return fail(RTN_ERR_INVALID_ARGUMENT, "null experiment");
  return guarded([&] {
    if (runs < 1) throw rtn::ConfigError("monte_carlo runs must be >= 1");
    for (auto& panel : exp->panels) panel.mc_runs = runs;
  });
}

rtn_status rtn_experiment_set_seed(rtn_experiment* exp, unsigned long long seed) {
  if (!exp) return fail(RTN_ERR_INVALID_ARGUMENT, "null experiment");
  for (auto& panel : exp->panels) panel.mc_seed = seed;
  return RTN_OK;
}

rtn_status rtn_experiment_set_output_dir(rtn_experiment* exp, const char* dir) {
  if (!exp || !dir) return fail(RTN_ERR_INVALID_ARGUMENT, "null pointer argument");
  for (auto& panel : exp->panels) panel.output_dir = dir;
  return RTN_OK;
}

rtn_status rtn_experiment_set_tier(rtn_experiment* exp, const char* tier) {
  if (!exp || !tier) return fail(RTN_ERR_INVALID_ARGUMENT, "null pointer argument");
  return guarded([&] {
    const std::string t = tier;
    rtn::ToleranceTier parsed;
    if (t == "full")
      parsed = rtn::ToleranceTier::Full;
    else if (t == "smoke")
      parsed = rtn::ToleranceTier::Smoke;
    else
      throw rtn::ConfigError("tolerance tier must be 'full' or 'smoke'");
    for (auto& panel : exp->panels) panel.tier = parsed;
  });
}

rtn_status rtn_experiment_run(rtn_experiment* exp) {
  if (!exp) return fail(RTN_ERR_INVALID_ARGUMENT, "null experiment");
  return guarded([&] {
    bool ok = true;
    for (const auto& panel : exp->panels) {
      const rtn::ExperimentReport report = rtn::run_experiment(panel);
      ok = ok && report.tolerances_ok;
    }
    if (!ok)
      throw rtn::ToleranceError("an enforced engine comparison exceeded its tolerance");
  });
}

void rtn_experiment_free(rtn_experiment* exp) { delete exp; }

rtn_status rtn_list_presets(char* buf, size_t bufsize, size_t* needed) {
  std::string text;
  for (const auto& p : rtn::presets()) text += p.name + "\t" + p.description + "\n";
  if (needed) *needed = text.size();
  if (buf && bufsize > 0) {
    const size_t n = std::min(bufsize - 1, text.size());
    std::memcpy(buf, text.data(), n);
    buf[n] = '\0';
  }
  return RTN_OK;
}

rtn_status rtn_phase_scan_default(rtn_phase_scan** out) {
  if (!out) return fail(RTN_ERR_INVALID_ARGUMENT, "null pointer argument");
  return guarded([&] { *out = new rtn_phase_scan; });
}

rtn_status rtn_phase_scan_from_file(const char* path, rtn_phase_scan** out) {
  if (!path || !out) return fail(RTN_ERR_INVALID_ARGUMENT, "null pointer argument");
  return guarded([&] {
    auto* scan = new rtn_phase_scan;
    try {
      scan->config = rtn::load_phase_scan_config(path);
    } catch (...) {
      delete scan;
      throw;
    }
    *out = scan;
  });
}

rtn_status rtn_phase_scan_set_output(rtn_phase_scan* scan, const char* path) {
  if (!scan || !path) return fail(RTN_ERR_INVALID_ARGUMENT, "null pointer argument");
  scan->config.output_path = path;
  return RTN_OK;
}

rtn_status rtn_phase_scan_run(rtn_phase_scan* scan) {
  if (!scan) return fail(RTN_ERR_INVALID_ARGUMENT, "null phase scan");
  return guarded([&] { rtn::run_phase_scan(scan->config); });
}

void rtn_phase_scan_free(rtn_phase_scan* scan) { delete scan; }

}  // extern "C"
