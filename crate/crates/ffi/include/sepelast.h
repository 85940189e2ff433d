/* C interface of the sepelast separable-motion solver. */

#ifndef SEPELAST_H
#define SEPELAST_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Success.
 */
#define SEPELAST_STATUS_OK 0

/**
 * Malformed document or string input.
 */
#define SEPELAST_STATUS_PARSE 1

/**
 * Ill-formed or inadmissible material.
 */
#define SEPELAST_STATUS_MODEL 2

/**
 * Shear modulus too small for the exponent: no traction root in reach.
 */
#define SEPELAST_STATUS_SHEAR 3

/**
 * Solver failure (bracket, divergence, no convergence).
 */
#define SEPELAST_STATUS_SOLVER 4

/**
 * Parameters outside the separable regimes.
 */
#define SEPELAST_STATUS_REGIME 5

/**
 * Null pointer or out-of-range argument.
 */
#define SEPELAST_STATUS_INVALID_ARGUMENT 6

/**
 * Internal panic caught at the boundary.
 */
#define SEPELAST_STATUS_PANIC 7

/**
 * Opaque material model handle.
 */
typedef struct SepelastModel SepelastModel;

/**
 * Opaque solved eigenprofile handle.
 */
typedef struct SepelastSolution SepelastSolution;

/**
 * Opaque amplitude trajectory handle.
 */
typedef struct SepelastTrajectory SepelastTrajectory;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds a material with quadratic shear profile `1 + (b/2)(u-1)²`.
 *
 * # Safety
 *
 * `out` must be a valid pointer to writable storage for one pointer.
 */
int32_t sepelast_model_new_quadratic(double h, double b, double m, struct SepelastModel **out);

/**
 * Builds a material from a model JSON document (same schema as the CLI).
 *
 * # Safety
 *
 * `json` must be a valid NUL-terminated string and `out` a valid pointer
 * to writable storage for one pointer.
 */
int32_t sepelast_model_from_json(const char *json, struct SepelastModel **out);

/**
 * Frees a model handle.  Passing NULL is a no-op.
 *
 * # Safety
 *
 * `model` must be NULL or a pointer obtained from a `sepelast_model_*`
 * constructor that has not been freed yet.
 */
void sepelast_model_free(struct SepelastModel *model);

/**
 * Volumetric exponent `h`.
 *
 * # Safety
 *
 * `model` must be a live model handle; NULL yields NaN.
 */
double sepelast_model_h(const struct SepelastModel *model);

/**
 * Compression modulus `κ = (h/3)(h/3 - 1)`.
 *
 * # Safety
 *
 * `model` must be a live model handle; NULL yields NaN.
 */
double sepelast_model_kappa(const struct SepelastModel *model);

/**
 * Shear curvature `β = f''(1)`.
 *
 * # Safety
 *
 * `model` must be a live model handle; NULL yields NaN.
 */
double sepelast_model_beta(const struct SepelastModel *model);

/**
 * Working-tube radius `δ`.
 *
 * # Safety
 *
 * `model` must be a live model handle; NULL yields NaN.
 */
double sepelast_model_delta(const struct SepelastModel *model);

/**
 * Checks admissibility; returns OK or MODEL.
 *
 * # Safety
 *
 * `model` must be a live model handle.
 */
int32_t sepelast_model_validate(const struct SepelastModel *model);

/**
 * Solves the radial eigenvalue problem on a grid with `grid_n` intervals
 * (pass 0 for the default resolution).
 *
 * # Safety
 *
 * `model` must be a live model handle and `out` a valid pointer to
 * writable storage for one pointer.
 */
int32_t sepelast_solve(const struct SepelastModel *model,
                       uintptr_t grid_n,
                       struct SepelastSolution **out);

/**
 * Frees a solution handle.  Passing NULL is a no-op.
 *
 * # Safety
 *
 * `solution` must be NULL or a pointer obtained from [`sepelast_solve`]
 * that has not been freed yet.
 */
void sepelast_solution_free(struct SepelastSolution *solution);

/**
 * Normalised eigenvalue `ε = μ/(κ+β)`.
 *
 * # Safety
 *
 * `solution` must be a live solution handle; NULL yields NaN.
 */
double sepelast_solution_epsilon(const struct SepelastSolution *solution);

/**
 * Eigenvalue `μ`.
 *
 * # Safety
 *
 * `solution` must be a live solution handle; NULL yields NaN.
 */
double sepelast_solution_mu(const struct SepelastSolution *solution);

/**
 * Traction root `u₀` targeted at the boundary.
 *
 * # Safety
 *
 * `solution` must be a live solution handle; NULL yields NaN.
 */
double sepelast_solution_u0(const struct SepelastSolution *solution);

/**
 * Boundary stretch ratio `u(1)` of the solved profile.
 *
 * # Safety
 *
 * `solution` must be a live solution handle; NULL yields NaN.
 */
double sepelast_solution_u_boundary(const struct SepelastSolution *solution);

/**
 * Sup norm of the strong-form residual.
 *
 * # Safety
 *
 * `solution` must be a live solution handle; NULL yields NaN.
 */
double sepelast_solution_residual_sup(const struct SepelastSolution *solution);

/**
 * Number of grid nodes of the solved profile (`grid_n + 1`).
 *
 * # Safety
 *
 * `solution` must be a live solution handle; NULL yields 0.
 */
uintptr_t sepelast_solution_len(const struct SepelastSolution *solution);

/**
 * Copies the curvature density `ζ` into `buffer` (`len` must be at least
 * [`sepelast_solution_len`]).
 *
 * # Safety
 *
 * `solution` must be a live solution handle and `buffer` must point to at
 * least `len` writable doubles.
 */
int32_t sepelast_solution_zeta(const struct SepelastSolution *solution,
                               double *buffer,
                               uintptr_t len);

/**
 * Integrates the amplitude equation from `(a0, adot0)` until `t_end` or
 * collapse.
 *
 * # Safety
 *
 * `out` must be a valid pointer to writable storage for one pointer.
 */
int32_t sepelast_integrate(double h,
                           double mu,
                           double a0,
                           double adot0,
                           double t_end,
                           struct SepelastTrajectory **out);

/**
 * Frees a trajectory handle.  Passing NULL is a no-op.
 *
 * # Safety
 *
 * `trajectory` must be NULL or a pointer obtained from
 * [`sepelast_integrate`] that has not been freed yet.
 */
void sepelast_trajectory_free(struct SepelastTrajectory *trajectory);

/**
 * Number of sampled states.
 *
 * # Safety
 *
 * `trajectory` must be a live trajectory handle; NULL yields 0.
 */
uintptr_t sepelast_trajectory_len(const struct SepelastTrajectory *trajectory);

/**
 * Reads sample `index` into `(t, a, adot)`.
 *
 * # Safety
 *
 * `trajectory` must be a live trajectory handle; `t`, `a` and `adot` must
 * be valid pointers to writable doubles.
 */
int32_t sepelast_trajectory_sample(const struct SepelastTrajectory *trajectory,
                                   uintptr_t index,
                                   double *t,
                                   double *a,
                                   double *adot);

/**
 * Collapse time of the trajectory; REGIME status when it did not collapse.
 *
 * # Safety
 *
 * `trajectory` must be a live trajectory handle and `tau` a valid pointer
 * to a writable double.
 */
int32_t sepelast_trajectory_tau(const struct SepelastTrajectory *trajectory, double *tau);

/**
 * Closed-form collapse time for `(h, mu, a0, adot0)`.
 *
 * # Safety
 *
 * `tau` must be a valid pointer to a writable double.
 */
int32_t sepelast_collapse_time(double h, double mu, double a0, double adot0, double *tau);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* SEPELAST_H */
