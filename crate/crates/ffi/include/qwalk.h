#ifndef QWALK_H
#define QWALK_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum QwStatus {
  QwStatus_Ok = 0,
  QwStatus_NullPointer = 1,
  QwStatus_InvalidArgument = 2,
  /**
   * Branch singularity, failed inversion or another numerical breakdown.
   */
  QwStatus_Numeric = 3,
  /**
   * Caller buffer too small; the required length is still written.
   */
  QwStatus_BufferTooSmall = 4,
  QwStatus_Panic = 5,
} QwStatus;

/**
 * Position-space transition kernel.
 */
typedef struct QwKernel QwKernel;

/**
 * Spinor field on a periodic lattice.
 */
typedef struct QwState QwState;

/**
 * A walk: family, dimension, chirality, branch and mass.
 */
typedef struct QwWalk QwWalk;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *qw_version(void);

/**
 * Message of the last failure on this thread; valid until the next call
 * that fails on the same thread.
 */
const char *qw_last_error(void);

/**
 * Parses a walk name such as `weyl3d+` or `dirac1d` and sets its mass.
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` a writable pointer.
 */
enum QwStatus qw_walk_new(const char *name, double mass, struct QwWalk **out);

/**
 * # Safety
 * `walk` must come from [`qw_walk_new`] and not be used afterwards.
 */
void qw_walk_free(struct QwWalk *walk);

/**
 * Lattice dimension of the walk, 0 for a null handle.
 *
 * # Safety
 * `walk` must be null or a live handle.
 */
uintptr_t qw_walk_dim(const struct QwWalk *walk);

/**
 * Spinor components of the walk, 0 for a null handle.
 *
 * # Safety
 * `walk` must be null or a live handle.
 */
uintptr_t qw_walk_components(const struct QwWalk *walk);

/**
 * Dispersion ω(k) for a Cartesian wave-vector of length `dim`.
 *
 * # Safety
 * `k` must point at `len` doubles and `out` be writable.
 */
enum QwStatus qw_walk_omega(const struct QwWalk *walk, const double *k, uintptr_t len, double *out);

/**
 * Symbol U(k), row-major, into `buf` of `cap` doubles; `needed` receives
 * 2s² when non-null.
 *
 * # Safety
 * `k` must point at `len` doubles and `buf` at `cap` writable doubles.
 */
enum QwStatus qw_walk_symbol(const struct QwWalk *walk,
                             const double *k,
                             uintptr_t len,
                             double *buf,
                             uintptr_t cap,
                             uintptr_t *needed);

/**
 * Position kernel of a walk.
 *
 * # Safety
 * `walk` must be live and `out` writable.
 */
enum QwStatus qw_kernel_from_walk(const struct QwWalk *walk, struct QwKernel **out);

/**
 * Kernel from its JSON form, as written by `qwalk verify --emit-kernel`.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` writable.
 */
enum QwStatus qw_kernel_from_json(const char *json, struct QwKernel **out);

/**
 * # Safety
 * `kernel` must come from a `qw_kernel_from_*` call and not be used afterwards.
 */
void qw_kernel_free(struct QwKernel *kernel);

/**
 * Number of displacements carrying a nonzero matrix; 0 for null.
 *
 * # Safety
 * `kernel` must be null or a live handle.
 */
uintptr_t qw_kernel_len(const struct QwKernel *kernel);

/**
 * Largest residual over the bilinear unitarity conditions.
 *
 * # Safety
 * `kernel` must be live and `out` writable.
 */
enum QwStatus qw_kernel_unitarity_residual(const struct QwKernel *kernel, double *out);

/**
 * Gaussian packet of spread `sigma` centred on the lattice, carrying
 * momentum `k0` and projected on the positive-frequency band fibre by fibre.
 *
 * # Safety
 * `k0` must point at `len` doubles and `out` be writable.
 */
enum QwStatus qw_state_gaussian(const struct QwWalk *walk,
                                uintptr_t n,
                                const double *k0,
                                uintptr_t len,
                                double sigma,
                                struct QwState **out);

/**
 * # Safety
 * `state` must come from a `qw_state_*` constructor and not be used afterwards.
 */
void qw_state_free(struct QwState *state);

/**
 * Advances the state by `steps` applications of the kernel.
 *
 * # Safety
 * Both handles must be live; `state` must not be aliased.
 */
enum QwStatus qw_state_step(struct QwState *state, const struct QwKernel *kernel, uint64_t steps);

/**
 * Squared norm Σ|ψ|².
 *
 * # Safety
 * `state` must be live and `out` writable.
 */
enum QwStatus qw_state_norm_sqr(const struct QwState *state, double *out);

/**
 * Cartesian mean position, three doubles (unused axes are zero).
 *
 * # Safety
 * `state` must be live and `out` must hold three doubles.
 */
enum QwStatus qw_state_mean(const struct QwState *state, double *out);

/**
 * Amplitudes in site-major order (components fastest).
 *
 * # Safety
 * `buf` must hold `cap` writable doubles; `needed` may be null.
 */
enum QwStatus qw_state_amplitudes(const struct QwState *state,
                                  double *buf,
                                  uintptr_t cap,
                                  uintptr_t *needed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QWALK_H */
