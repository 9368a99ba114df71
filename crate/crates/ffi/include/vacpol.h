#ifndef VACPOL_H
#define VACPOL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define VACPOL_OK 0

// Invalid parameter, positivity violation or out-of-domain argument.
#define VACPOL_ERR_INVALID 2

#define VACPOL_ERR_INFRARED 3

// Quadrature or fit failure.
#define VACPOL_ERR_NUMERICAL 4

#define VACPOL_ERR_NULL 5

#define VACPOL_ERR_PANIC 6

// Field parameters: dimension, mass and renormalization scale.
typedef struct VacpolField VacpolField;

// A reflecting or semitransparent wall.
typedef struct VacpolWall VacpolWall;

// Robin condition on one face. `dirichlet != 0` selects Dirichlet and
// ignores `b`.
typedef struct VacpolRobin {
  int32_t dirichlet;
  double b;
} VacpolRobin;

typedef struct VacpolValue {
  double free_term;
  double plane_term;
  double total;
} VacpolValue;

// Spectrum summary. `lambda_plus` and `lambda_minus` are meaningful only
// when `has_lambdas != 0`; the first `n_eigenvalues` entries of
// `eigenvalues` are filled, in ascending order.
typedef struct VacpolSpectrum {
  double threshold;
  int32_t has_lambdas;
  double lambda_plus;
  double lambda_minus;
  int32_t n_eigenvalues;
  double eigenvalues[2];
  int32_t positive;
} VacpolSpectrum;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failure on this thread, or NULL. The
// pointer stays valid until the next `vacpol_*` call on the same thread.
const char *vacpol_last_error(void);

// Library version as a static NUL-terminated string.
const char *vacpol_version(void);

// # Safety
// `out_field` must be a valid pointer to writable storage for a handle.
int32_t vacpol_field_new(uint32_t d, double m, double kappa, struct VacpolField **out_field);

// # Safety
// `field` must be NULL or a handle from `vacpol_field_new` not yet freed.
void vacpol_field_free(struct VacpolField *field);

// # Safety
// `out_wall` must be a valid pointer.
int32_t vacpol_wall_reflecting_new(struct VacpolRobin b_plus,
                                   struct VacpolRobin b_minus,
                                   struct VacpolWall **out_wall);

// `omega` must have unit modulus and `alpha*sigma - beta*gamma = 1`.
//
// # Safety
// `out_wall` must be a valid pointer.
int32_t vacpol_wall_semitransparent_new(double omega_re,
                                        double omega_im,
                                        double alpha,
                                        double beta,
                                        double gamma,
                                        double sigma,
                                        struct VacpolWall **out_wall);

// # Safety
// `wall` must be NULL or a live wall handle.
void vacpol_wall_free(struct VacpolWall *wall);

// Renormalized polarization at `x1`; a massless field gives the `m -> 0` limit.
//
// # Safety
// Handles must be live and `out_value` valid.
int32_t vacpol_evaluate(const struct VacpolField *field,
                        const struct VacpolWall *wall,
                        double x1,
                        struct VacpolValue *out_value);

// Evaluates `n` points in parallel, writing `out_values[i]` for `x1[i]`.
// On failure `*out_failed_index` (if non-NULL) receives the first
// failing index and nothing else is guaranteed about `out_values`.
//
// # Safety
// `x1` and `out_values` must each hold `n` elements.
int32_t vacpol_evaluate_many(const struct VacpolField *field,
                             const struct VacpolWall *wall,
                             const double *x1,
                             size_t n,
                             struct VacpolValue *out_values,
                             size_t *out_failed_index);

// Plane term by direct proper-time integration of the heat kernel.
//
// # Safety
// Handles must be live and `out_plane` valid.
int32_t vacpol_plane_term_oracle(const struct VacpolField *field,
                                 const struct VacpolWall *wall,
                                 double x1,
                                 double *out_plane);

// Leading small- and large-distance terms of the plane contribution
// (massive fields only). Either output pointer may be NULL.
//
// # Safety
// Handles must be live; non-NULL outputs must be valid.
int32_t vacpol_asymptotics(const struct VacpolField *field,
                           const struct VacpolWall *wall,
                           double x1,
                           double *out_small,
                           double *out_large);

// Transverse heat kernel `K(tau; x, y)` including the mass factor.
// Reflecting walls always give a zero imaginary part.
//
// # Safety
// `wall` must be live; outputs must be valid.
int32_t vacpol_heat_kernel(const struct VacpolWall *wall,
                           double m,
                           double tau,
                           double x,
                           double y,
                           double *out_re,
                           double *out_im);

// # Safety
// `wall` must be live and `out_spectrum` valid.
int32_t vacpol_spectrum(const struct VacpolWall *wall,
                        double m,
                        struct VacpolSpectrum *out_spectrum);

// Fills `out_x1` and `out_values` (each `points` long) with a profile on
// `[x_min, x_max]`, linear (`log_spacing == 0`) or logarithmic, for
// `x1 > 0`.
//
// # Safety
// Output arrays must hold `points` elements.
int32_t vacpol_profile(const struct VacpolField *field,
                       const struct VacpolWall *wall,
                       double x_min,
                       double x_max,
                       size_t points,
                       int32_t log_spacing,
                       double *out_x1,
                       struct VacpolValue *out_values);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* VACPOL_H */
