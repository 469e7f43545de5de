/* rtnsim C API: qubit decoherence and two-qubit entanglement dynamics
 * under random telegraph noise.
 *
 * All functions return rtn_status; RTN_OK is 0. On failure,
 * rtn_last_error() returns a thread-local description of the most recent
 * error. Handles are opaque and must be released with the matching
 * _free function.
 */
#ifndef RTNSIM_H
#define RTNSIM_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rtn_status {
  RTN_OK = 0,
  RTN_ERR_INVALID_ARGUMENT = 1,
  RTN_ERR_CONFIG = 2,    /* config parse/validation failure */
  RTN_ERR_TOLERANCE = 3, /* an enforced engine comparison failed */
  RTN_ERR_GRID = 4,      /* grid too coarse or outside the horizon */
  RTN_ERR_NO_ZEROS = 5,  /* weak coupling: the dephasing function has no zeros */
  RTN_ERR_IO = 6,
  RTN_ERR_INTERNAL = 7
} rtn_status;

const char* rtn_version(void);

/* Thread-local message for the most recent failing call on this thread. */
const char* rtn_last_error(void);

/* ---- closed-form single-qubit quantities ------------------------------- */

/* Exact dephasing function at the pure dephasing point (theta = 0). */
rtn_status rtn_zeta_pure_dephasing(double g, double gamma, double t, double* out);

/* Weak-coupling expansion exp(-Gamma_2 t). */
rtn_status rtn_zeta_weak(double g, double theta, double gamma, double b0, double t,
                         double* out);

/* Strong-coupling expansion with the damped oscillation. */
rtn_status rtn_zeta_strong(double g, double theta, double gamma, double t,
                           double* out);

/* Regime-appropriate longitudinal relaxation rate. */
rtn_status rtn_gamma1(double g, double theta, double gamma, double b0, double* out);

/* First `count` zeros of the dephasing function into out_times.
 * RTN_ERR_NO_ZEROS at weak coupling. */
rtn_status rtn_zeta_zeros(double g, double theta, double gamma, int count,
                          double* out_times);

/* ---- transfer matrices and concurrence --------------------------------- */

/* Extended 4x4 single-qubit transfer matrix at time t, row-major into
 * out[16]. has_noise = 0 ignores (g, theta, phi, gamma) and returns the
 * free precession. */
rtn_status rtn_single_qubit_transfer(double b0, int has_noise, double g,
                                     double theta, double phi, double gamma,
                                     double t, double* out);

/* Wootters concurrence of a 4x4 density matrix, row-major with
 * interleaved re,im pairs (rho[32]). out_lambdas may be NULL. */
rtn_status rtn_concurrence(const double* rho_interleaved, double* out_c,
                           double* out_lambdas);

/* ---- experiments -------------------------------------------------------- */

typedef struct rtn_experiment rtn_experiment;

rtn_status rtn_experiment_from_file(const char* path, rtn_experiment** out);
rtn_status rtn_experiment_from_preset(const char* name, rtn_experiment** out);

/* Comma-separated subset of: analytic, quasi_hamiltonian, monte_carlo. */
rtn_status rtn_experiment_set_engines(rtn_experiment* exp, const char* engines);
rtn_status rtn_experiment_set_runs(rtn_experiment* exp, long runs);
rtn_status rtn_experiment_set_seed(rtn_experiment* exp, unsigned long long seed);
rtn_status rtn_experiment_set_output_dir(rtn_experiment* exp, const char* dir);
/* "full" (40000 runs, comparison tolerance 0.02) or "smoke" (4000, 0.07). */
rtn_status rtn_experiment_set_tier(rtn_experiment* exp, const char* tier);

/* Runs every panel and engine, writes one CSV per engine per panel plus a
 * comparison CSV. RTN_ERR_TOLERANCE when an enforced comparison fails. */
rtn_status rtn_experiment_run(rtn_experiment* exp);

void rtn_experiment_free(rtn_experiment* exp);

/* Newline-separated "name<TAB>description" list. Writes at most bufsize-1
 * characters plus a terminator; *needed receives the untruncated length. */
rtn_status rtn_list_presets(char* buf, size_t bufsize, size_t* needed);

/* ---- phase scan ---------------------------------------------------------- */

typedef struct rtn_phase_scan rtn_phase_scan;

rtn_status rtn_phase_scan_default(rtn_phase_scan** out);
rtn_status rtn_phase_scan_from_file(const char* path, rtn_phase_scan** out);
rtn_status rtn_phase_scan_set_output(rtn_phase_scan* scan, const char* path);
rtn_status rtn_phase_scan_run(rtn_phase_scan* scan);
void rtn_phase_scan_free(rtn_phase_scan* scan);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* RTNSIM_H */
