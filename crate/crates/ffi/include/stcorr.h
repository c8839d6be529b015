/*
 * Copyright 2026 The stcorr Authors
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef STCORR_H
#define STCORR_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Result codes shared by all functions.
 */
typedef enum StcorrStatus {
  STCORR_STATUS_OK = 0,
  STCORR_STATUS_INVALID_ARGUMENT = 1,
  /**
   * Input failed a physical check (Hermitian, PSD, CPTP, unit trace).
   */
  STCORR_STATUS_VALIDATION = 2,
  /**
   * A requested representation does not exist for this value.
   */
  STCORR_STATUS_STATE = 3,
  STCORR_STATUS_FORMAT = 4,
  STCORR_STATUS_IO = 5,
  STCORR_STATUS_NULL_POINTER = 6,
  /**
   * A Rust panic was caught at the boundary; treat as a bug.
   */
  STCORR_STATUS_PANIC = 7,
} StcorrStatus;

/**
 * Opaque qubit channel.
 */
typedef struct StcorrChannel StcorrChannel;

/**
 * Opaque pseudo-density matrix.
 */
typedef struct StcorrPdm StcorrPdm;

/**
 * Correlation triple `(⟨σ1σ1⟩, ⟨σ2σ2⟩, ⟨σ3σ3⟩)`.
 */
typedef struct StcorrVec3 {
  double x;
  double y;
  double z;
} StcorrVec3;

typedef struct StcorrRegionReport {
  bool in_ts;
  bool in_tt;
  bool in_octahedron;
  bool in_elliptope;
  bool in_cube;
  double dist_octahedron;
  /**
   * `1 + 2xyz − x² − y² − z²`; negative outside the elliptope.
   */
  double elliptope_defect;
} StcorrRegionReport;

typedef struct StcorrCausalHypothesis {
  bool compatible_spatial;
  bool compatible_temporal_cptp;
  bool compatible_separable;
  bool requires_mixture;
  bool unphysical;
} StcorrCausalHypothesis;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next call into this library on the
 * same thread.
 */
const char *stcorr_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *stcorr_version(void);

/**
 * Extremal channel with angles `u ∈ [0, 2π]`, `v ∈ [0, π]` (radians) and
 * axis permutation given as three digits, e.g. 123 (identity) or 312.
 *
 * # Safety
 * `out` must be null or writable.
 */
enum StcorrStatus stcorr_channel_extremal(double u,
                                          double v,
                                          uint32_t permutation,
                                          struct StcorrChannel **out);

/**
 * Named channel: identity, fully-depolarizing, depolarizing, dephasing,
 * amplitude-damping, pauli-x, pauli-y, pauli-z. `param` is read only when
 * `has_param` is true.
 *
 * # Safety
 * `name` must be null or a NUL-terminated string; `out` null or writable.
 */
enum StcorrStatus stcorr_channel_named(const char *name,
                                       double param,
                                       bool has_param,
                                       struct StcorrChannel **out);

/**
 * Channel from a row-major 4×4 Pauli transfer matrix; fails unless CPTP.
 *
 * # Safety
 * `ptm` must be null or point to 16 doubles; `out` null or writable.
 */
enum StcorrStatus stcorr_channel_from_ptm(const double *ptm, struct StcorrChannel **out);

/**
 * Writes the row-major Pauli transfer matrix into `out[16]`.
 *
 * # Safety
 * `channel` must be null or a live handle; `out` null or 16 writable doubles.
 */
enum StcorrStatus stcorr_channel_ptm(const struct StcorrChannel *channel, double *out);

/**
 * # Safety
 * `channel` must be null or a live handle; `out` null or writable.
 */
enum StcorrStatus stcorr_channel_is_unital(const struct StcorrChannel *channel, bool *out);

/**
 * Releases a channel; null is ignored.
 *
 * # Safety
 * `channel` must be null or a handle not yet freed.
 */
void stcorr_channel_free(struct StcorrChannel *channel);

/**
 * Temporal PDM of a qubit with Bloch vector `bloch[3]` measured before and
 * after `channel`.
 *
 * # Safety
 * `bloch` must be null or point to 3 doubles; `channel` null or live;
 * `out` null or writable.
 */
enum StcorrStatus stcorr_pdm_temporal(const double *bloch,
                                      const struct StcorrChannel *channel,
                                      struct StcorrPdm **out);

/**
 * PDM of a two-qubit density matrix given as row-major real and imaginary parts.
 *
 * # Safety
 * `re` and `im` must be null or point to 16 doubles; `out` null or writable.
 */
enum StcorrStatus stcorr_pdm_spatial(const double *re, const double *im, struct StcorrPdm **out);

/**
 * PDM from a row-major correlation table with `T[0][0] = 1`.
 *
 * # Safety
 * `table16` must be null or point to 16 doubles; `out` null or writable.
 */
enum StcorrStatus stcorr_pdm_from_table(const double *table16, struct StcorrPdm **out);

/**
 * Writes the row-major correlation table `T[i][j] = Tr[(σi⊗σj) R]` into `out[16]`.
 *
 * # Safety
 * `pdm` must be null or live; `out` null or 16 writable doubles.
 */
enum StcorrStatus stcorr_pdm_table(const struct StcorrPdm *pdm, double *out);

/**
 * # Safety
 * `pdm` must be null or live; `out` null or writable.
 */
enum StcorrStatus stcorr_pdm_corr(const struct StcorrPdm *pdm, struct StcorrVec3 *out);

/**
 * Causality measure `‖R‖_tr − 1`.
 *
 * # Safety
 * `pdm` must be null or live; `out` null or writable.
 */
enum StcorrStatus stcorr_pdm_causality(const struct StcorrPdm *pdm, double *out);

/**
 * Releases a PDM; null is ignored.
 *
 * # Safety
 * `pdm` must be null or a handle not yet freed.
 */
void stcorr_pdm_free(struct StcorrPdm *pdm);

/**
 * Negativity of a two-qubit density matrix.
 *
 * # Safety
 * `re` and `im` must be null or point to 16 doubles; `out` null or writable.
 */
enum StcorrStatus stcorr_negativity(const double *re, const double *im, double *out);

/**
 * Euclidean distance to the octahedron `|x|+|y|+|z| ≤ 1`; NaN for non-finite input.
 */
double stcorr_dist_to_octahedron(struct StcorrVec3 point);

/**
 * # Safety
 * `out` must be null or writable.
 */
enum StcorrStatus stcorr_classify(struct StcorrVec3 point,
                                  double tol,
                                  struct StcorrRegionReport *out);

/**
 * # Safety
 * `out` must be null or writable.
 */
enum StcorrStatus stcorr_infer_causal(struct StcorrVec3 point,
                                      double tol,
                                      struct StcorrCausalHypothesis *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* STCORR_H */
