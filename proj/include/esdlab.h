/* esdlab.h — C interface to the esdlab entanglement-sudden-death toolkit.
 *
 * A channel handle describes a one-qubit bath family (thermal, squeezed
 * thermal, or QND dephasing). All queries are pure functions of the handle and
 * their arguments; handles are immutable after creation and may be shared
 * across threads. Every function returns ESDLAB_OK on success; on failure a
 * thread-local message is available through esdlab_last_error().
 */

#ifndef ESDLAB_H
#define ESDLAB_H

#include <stdint.h>

#if defined(_WIN32)
#define ESDLAB_API __declspec(dllexport)
#else
#define ESDLAB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  ESDLAB_OK = 0,
  ESDLAB_ERR_INVALID_ARGUMENT = 1,
  ESDLAB_ERR_NUMERICAL = 2,
  ESDLAB_ERR_INTERNAL = 3
} esdlab_status;

typedef struct esdlab_channel esdlab_channel; /* opaque */

ESDLAB_API const char* esdlab_version(void);

/* Message for the most recent failure on the calling thread. */
ESDLAB_API const char* esdlab_last_error(void);

/* Thermal bath: decay rate gamma > 0, mean occupation n_mean >= 0. */
ESDLAB_API esdlab_status esdlab_channel_thermal(double gamma, double n_mean,
                                                esdlab_channel** out);

/* Squeezed thermal bath: rate gamma0 > 0, thermal photon number n_th >= 0,
 * squeezing magnitude r >= 0 and phase phi, free-rotation rate omega. The
 * effective occupation follows 2N+1 = cosh(2r)(2 n_th + 1). */
ESDLAB_API esdlab_status esdlab_channel_squeezed(double gamma0, double n_th,
                                                 double r, double phi,
                                                 double omega,
                                                 esdlab_channel** out);

/* QND dephasing with exponent g(t) = g_scale * t^g_power (g_scale >= 0). */
ESDLAB_API esdlab_status esdlab_channel_qnd(double omega, double g_scale,
                                            double g_power,
                                            esdlab_channel** out);

ESDLAB_API void esdlab_channel_free(esdlab_channel* ch);

/* Effective mean occupation N of the handle (0 for QND). */
ESDLAB_API esdlab_status esdlab_channel_n_mean(const esdlab_channel* ch,
                                               double* out);

/* Diagnostics of the trace-1 Choi state of V(t). */
typedef struct {
  double t;
  double min_pt_eigenvalue; /* least eigenvalue of the partial transpose */
  double negativity;
  double concurrence;
  int npt; /* 1 when the least PT eigenvalue is negative (extended-precision sign) */
} esdlab_choi_point;

ESDLAB_API esdlab_status esdlab_choi_dynamics(const esdlab_channel* ch, double t,
                                              esdlab_choi_point* out);

/* Separability-transition search on choi(V(t)). */
typedef struct {
  int found; /* 0: no transition up to the horizon ("never") */
  double transition_time;
  double bracket_low;
  double bracket_high;
  double min_pt_low;
  double min_pt_high;
  double min_pt_at_horizon;
  int iterations;
  double horizon;
  int has_sinh_form; /* thermal family: sinh-threshold estimate */
  double sinh_form_time;
  int has_block_form; /* thermal family: PT block-determinant root */
  double block_form_time;
} esdlab_esd_report;

ESDLAB_API esdlab_status esdlab_esd_time(const esdlab_channel* ch, double horizon,
                                         double precision,
                                         esdlab_esd_report* out);

/* 1 iff choi(V(t)) is PPT within tol (qubit channels are entanglement
 * breaking exactly then). */
ESDLAB_API esdlab_status esdlab_channel_is_breaking(const esdlab_channel* ch,
                                                    double t, double tol,
                                                    int* out);

/* Squeezed-bath separability conditions at time t:
 * out[0] = alpha*nu - |z|^2, out[1] = beta*mu - y^2 (PT block determinants;
 * both >= 0 iff the Choi state is separable), out[2], out[3] the companion
 * sinh/cosh forms. Thermal handles are accepted (r = 0); QND handles are not. */
ESDLAB_API esdlab_status esdlab_squeezed_conditions(const esdlab_channel* ch,
                                                    double t, double out[4]);

/* Concurrence-factorization residuals |C((I x V)chi) - C(chi) C(choi(V))| for
 * `samples` Haar-random pure d x 2 states (qubit side evolved), deterministic
 * in `seed`. `residuals` must hold `samples` doubles; max_residual may be NULL. */
ESDLAB_API esdlab_status esdlab_factorization_residuals(
    const esdlab_channel* ch, double t, int dim_a, int samples, uint64_t seed,
    double* residuals, double* max_residual);

/* n-qubit full-separability certificate. Validation states are GHZ, W and five
 * seeded random pure states, in that order; max_negativity_per_state must hold
 * ESDLAB_NQUBIT_STATES doubles (largest bipartition negativity at the
 * transition time under the n-fold channel). ghz_one_sided_min_pt is the most
 * negative cut eigenvalue of GHZ under the one-sided channel at 0.9 t*. When
 * the report says "never", the validation outputs are zeroed. */
#define ESDLAB_NQUBIT_STATES 7

ESDLAB_API esdlab_status esdlab_nqubit_certificate(
    const esdlab_channel* ch, int n_qubits, double horizon, double precision,
    uint64_t seed, esdlab_esd_report* report, double* max_negativity_per_state,
    double* ghz_one_sided_min_pt, int* channel_breaking);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* ESDLAB_H */
