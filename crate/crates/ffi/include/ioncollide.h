#ifndef IONCOLLIDE_H
#define IONCOLLIDE_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum IcMethod {
  IC_METHOD_QUADRATURE = 0,
  IC_METHOD_ASYMPTOTIC = 1,
  IC_METHOD_CLASSICAL = 2,
} IcMethod;

typedef enum IcStatus {
  IC_STATUS_OK = 0,
  IC_STATUS_NULL_POINTER = 1,
  IC_STATUS_INVALID_ARGUMENT = 2,
  IC_STATUS_UNKNOWN_SPECIES = 3,
  IC_STATUS_INVALID_REGIME = 4,
  IC_STATUS_NON_CONVERGENCE = 5,
  IC_STATUS_RESOURCE_LIMIT = 6,
  IC_STATUS_GATE_STRUCTURE = 7,
  IC_STATUS_PANIC = 8,
  IC_STATUS_OTHER = 9,
} IcStatus;

/**
 * Opaque trap handle.
 */
typedef struct IcTrapConfig IcTrapConfig;

typedef struct IcTrapParams {
  double omega_z;
  double omega_xy;
  double omega_perp;
  double length;
  double z0;
  double alpha;
  double mass;
  double charge;
} IcTrapParams;

/**
 * Energies in J.
 */
typedef struct IcCoupling {
  double v_plus;
  double v_minus;
  double exchange_j;
  double direct_u;
  double interference_a;
  enum IcMethod method;
  uint32_t warning_count;
} IcCoupling;

/**
 * Gate matrix in row-major order over the basis dd, du, ud, uu.
 */
typedef struct IcGate {
  double t_g;
  double theta;
  double theta_half_sum;
  double n_collisions;
  double matrix_re[16];
  double matrix_im[16];
} IcGate;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next call into the library.
 */
const char *ic_last_error_message(void);

/**
 * # Safety
 * `species` must be a NUL-terminated string and `out` writable.
 */
enum IcStatus ic_trap_new(const char *species,
                          double omega_z,
                          double omega_xy,
                          double length,
                          struct IcTrapConfig **out);

/**
 * Trap at the alpha = 1 design point for `omega_xy` and `omega_perp`.
 *
 * # Safety
 * As for [`ic_trap_new`].
 */
enum IcStatus ic_design_point(const char *species,
                              double omega_xy,
                              double omega_perp,
                              struct IcTrapConfig **out);

/**
 * # Safety
 * `cfg` must come from this library and not be freed twice. Null is ignored.
 */
void ic_trap_free(struct IcTrapConfig *cfg);

/**
 * # Safety
 * `cfg` must be a live handle and `out` writable.
 */
enum IcStatus ic_trap_params(const struct IcTrapConfig *cfg, struct IcTrapParams *out);

/**
 * Level shifts with default quadrature settings.
 *
 * # Safety
 * `cfg` must be a live handle and `out` writable.
 */
enum IcStatus ic_coupling(const struct IcTrapConfig *cfg,
                          enum IcMethod method,
                          struct IcCoupling *out);

/**
 * `omega_perp J` at alpha = 1, in J.
 *
 * # Safety
 * `species` must be a NUL-terminated string and `out` writable.
 */
enum IcStatus ic_restriction_product(const char *species, double omega_xy, double *out);

/**
 * Effective interaction energy (J) at separation `r_z` (m).
 *
 * # Safety
 * `cfg` must be a live handle and `out` writable.
 */
enum IcStatus ic_v_eff(const struct IcTrapConfig *cfg, double r_z, double *out);

/**
 * Collision gate for energies `e0`, `u`, `j` (J).
 *
 * # Safety
 * `out` must be writable.
 */
enum IcStatus ic_gate(double e0, double u, double j, double omega_z, struct IcGate *out);

/**
 * Schedule text for a remote sqrt(SWAP) between traps `a` and `b` of an
 * `n_traps` array holding `q0 .. q{n-1}`. Free the string with
 * [`ic_string_free`].
 *
 * # Safety
 * `out` must be writable.
 */
enum IcStatus ic_route_schedule(uint32_t n_traps,
                                uint32_t a,
                                uint32_t b,
                                double t_g,
                                double omega_z,
                                char **out);

/**
 * # Safety
 * `s` must come from this library and not be freed twice. Null is ignored.
 */
void ic_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* IONCOLLIDE_H */
