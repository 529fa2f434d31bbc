#ifndef CASIMIR_H
#define CASIMIR_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Opaque two-mirror configuration.
typedef struct CasimirCavity CasimirCavity;

// Opaque mirror model.
typedef struct CasimirMirror CasimirMirror;

// Tolerances and limits; obtain defaults from `casimir_quadrature_default`.
typedef struct {
  double rel_tol;
  double abs_tol;
  size_t max_subdivisions;
  double series_tail_tol;
  size_t max_roundtrips;
} CasimirQuadrature;

typedef int32_t CasimirStatus;

typedef int32_t CasimirMethod;

// A force, pressure or energy. `roundtrips` is -1 when no series was summed.
typedef struct {
  double value;
  double error_estimate;
  CasimirMethod method;
  int32_t converged;
  int64_t roundtrips;
} CasimirResult;

#define CASIMIR_OK 0

#define CASIMIR_ERR_NULL 1

#define CASIMIR_ERR_DOMAIN 2

#define CASIMIR_ERR_CAPABILITY 3

#define CASIMIR_ERR_NONCONVERGENCE 4

#define CASIMIR_ERR_IO 5

#define CASIMIR_ERR_SINGULAR 6

#define CASIMIR_ERR_PARSE 7

#define CASIMIR_ERR_PANIC 8

#define CASIMIR_METHOD_AUTO 0

#define CASIMIR_METHOD_IMAG_AXIS 1

#define CASIMIR_METHOD_ROUNDTRIP_TIME 2

#define CASIMIR_METHOD_LARGE_DISTANCE 3

#define CASIMIR_METHOD_HIGH_TEMPERATURE 4

#define CASIMIR_METHOD_MODE_SUM_ORACLE 5

#define CASIMIR_METHOD_CLOSED_FORM 6

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static NUL-terminated string.
const char *casimir_version(void);

// Message describing the last failure on this thread; empty after a success.
// Valid until the next call into this library on the same thread.
const char *casimir_last_error_message(void);

CasimirQuadrature casimir_quadrature_default(void);

// Perfect mirror, `r = -1` at all frequencies.
//
// # Safety
// `out` must be null or valid for writes.
CasimirStatus casimir_mirror_perfect(CasimirMirror **out);

// Single-pole mirror `r[ω] = -Ω/(Ω - iω)`.
//
// # Safety
// `out` must be null or valid for writes.
CasimirStatus casimir_mirror_lorentzian(double cutoff, CasimirMirror **out);

// Mirror from `n` imaginary-axis samples `(xi[k], r[k])`. With `q_relative`
// nonzero, abscissae are in units of `1/q` of the cavity the mirror is used in.
//
// # Safety
// `xi` and `r` must point to `n` readable doubles; `out` must be valid for writes.
CasimirStatus casimir_mirror_tabulated(const double *xi,
                                       const double *r,
                                       size_t n,
                                       int32_t q_relative,
                                       CasimirMirror **out);

// Mirror from a reflectivity table file.
//
// # Safety
// `path` must be a NUL-terminated string; `out` must be valid for writes.
CasimirStatus casimir_mirror_load_table(const char *path, CasimirMirror **out);

// # Safety
// `m` must be null or a handle from this library not yet freed.
void casimir_mirror_free(CasimirMirror *m);

// Two mirrors at separation `q` and temperature `temperature`. The mirrors
// are copied; the handles stay owned by the caller.
//
// # Safety
// `m1`, `m2` must be valid mirror handles; `out` must be valid for writes.
CasimirStatus casimir_cavity_new(const CasimirMirror *m1,
                                 const CasimirMirror *m2,
                                 double q,
                                 double temperature,
                                 CasimirCavity **out);

// # Safety
// `c` must be null or a handle from this library not yet freed.
void casimir_cavity_free(CasimirCavity *c);

// 2D force. `CASIMIR_METHOD_AUTO` uses the imaginary axis at `T = 0` and the
// roundtrip series otherwise. `quad` may be null for defaults.
//
// # Safety
// `cavity` must be a valid handle, `quad` null or valid, `out` valid for writes.
CasimirStatus casimir_force2d(const CasimirCavity *cavity,
                              CasimirMethod method,
                              const CasimirQuadrature *quad,
                              CasimirResult *out);

// 4D pressure, both polarizations. `CASIMIR_METHOD_AUTO` uses the imaginary
// axis at `T = 0` and the large-distance thermal kernel otherwise.
//
// # Safety
// As for `casimir_force2d`.
CasimirStatus casimir_force4d(const CasimirCavity *cavity,
                              CasimirMethod method,
                              const CasimirQuadrature *quad,
                              CasimirResult *out);

// 2D Casimir energy at `T = 0`, internal energy `𝓕 - T∂_T𝓕` at `T > 0`.
//
// # Safety
// As for `casimir_force2d`.
CasimirStatus casimir_energy2d(const CasimirCavity *cavity,
                               const CasimirQuadrature *quad,
                               CasimirResult *out);

// 4D energy per unit area at `T = 0`.
//
// # Safety
// As for `casimir_force2d`.
CasimirStatus casimir_energy4d(const CasimirCavity *cavity,
                               const CasimirQuadrature *quad,
                               CasimirResult *out);

// 2D free energy from the roundtrip series.
//
// # Safety
// As for `casimir_force2d`.
CasimirStatus casimir_free_energy2d(const CasimirCavity *cavity,
                                    const CasimirQuadrature *quad,
                                    CasimirResult *out);

// 2D large-distance force for loop reflectivity `r0`.
//
// # Safety
// `quad` null or valid, `out` valid for writes.
CasimirStatus casimir_force2d_large_distance(double r0,
                                             double q,
                                             double temperature,
                                             const CasimirQuadrature *quad,
                                             CasimirResult *out);

// 4D large-distance pressure with the thermal kernel (`T = 0` allowed).
//
// # Safety
// `quad` null or valid, `out` valid for writes.
CasimirStatus casimir_pressure4d_large_distance(double r0,
                                                double q,
                                                double temperature,
                                                const CasimirQuadrature *quad,
                                                CasimirResult *out);

// Classical 4D pressure `T ζ_{r0}(3)/(4πq³)`.
//
// # Safety
// `out` valid for writes.
CasimirStatus casimir_pressure4d_high_temperature(double r0,
                                                  double q,
                                                  double temperature,
                                                  CasimirResult *out);

// `Li_p(x)` for `|x| ≤ 1`, `p ≥ 1` (`x < 1` when `p = 1`).
//
// # Safety
// `out` valid for writes.
CasimirStatus casimir_polylog(double x, uint32_t p, double *out);

// Airy factor `g[ω]` of the cavity; needs real-frequency amplitudes.
//
// # Safety
// `cavity` valid handle, `out` valid for writes.
CasimirStatus casimir_airy_factor(const CasimirCavity *cavity, double omega, double *out);

// Cavity phase shift `Δ[ω]`; needs real-frequency amplitudes.
//
// # Safety
// `cavity` valid handle, `out` valid for writes.
CasimirStatus casimir_phase_shift(const CasimirCavity *cavity, double omega, double *out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* CASIMIR_H */
