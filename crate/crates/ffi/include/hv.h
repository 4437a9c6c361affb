#ifndef HV_H
#define HV_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible function.
 */
typedef enum HvStatus {
  HV_STATUS_OK = 0,
  HV_STATUS_NULL_POINTER = 1,
  /**
   * Model parameters violate a constraint.
   */
  HV_STATUS_INVALID_MODEL = 2,
  /**
   * A vector, angle, or sample size is out of range.
   */
  HV_STATUS_INVALID_ARGUMENT = 3,
  /**
   * The quantity is undefined for this model (e.g. a zero vector).
   */
  HV_STATUS_UNDEFINED = 4,
  /**
   * An internal panic was caught at the boundary.
   */
  HV_STATUS_PANIC = 5,
} HvStatus;

typedef enum HvInequality {
  HV_INEQUALITY_CHSH = 0,
  HV_INEQUALITY_LEGGETT = 1,
  HV_INEQUALITY_BRANCIARD = 2,
} HvInequality;

/**
 * Opaque model handle.
 */
typedef struct HvModel HvModel;

typedef struct HvVec3 {
  double x;
  double y;
  double z;
} HvVec3;

/**
 * Hidden state for `hv_joint_table`. FHV reads `u` and `v`, THV reads `u`,
 * SHV reads `p`, QM reads nothing.
 */
typedef struct HvHidden {
  struct HvVec3 u;
  struct HvVec3 v;
  struct HvVec3 p;
} HvHidden;

/**
 * P(σ, τ) indexed by outcome signs.
 */
typedef struct HvTable {
  double pp;
  double pm;
  double mp;
  double mm;
} HvTable;

typedef struct HvMcEstimate {
  double mean;
  double stderr_;
  uint64_t n;
  uint64_t seed;
} HvMcEstimate;

typedef struct HvReport {
  double value;
  double bound;
  double margin;
  /**
   * 1 when margin > 0.
   */
  uint8_t violated;
} HvReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates an FHV model with bias function f(x) = x/2 for both parties.
 *
 * # Safety
 * `out` must be valid for a write of one pointer.
 */
enum HvStatus hv_model_fhv(double eta, struct HvModel **out);

/**
 * Creates an SHV model with constant p(λ) = p0.
 *
 * # Safety
 * `out` must be valid for a write of one pointer.
 */
enum HvStatus hv_model_shv_constant(struct HvVec3 p0, struct HvModel **out);

/**
 * Creates a THV model; fails with `InvalidModel` when ζ breaks positivity.
 *
 * # Safety
 * `out` must be valid for a write of one pointer.
 */
enum HvStatus hv_model_thv(double zeta, struct HvModel **out);

/**
 * # Safety
 * `out` must be valid for a write of one pointer.
 */
enum HvStatus hv_model_qm(struct HvModel **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `model` must be null or a handle not yet freed.
 */
void hv_model_free(struct HvModel *model);

/**
 * Joint outcome table at a fixed hidden state.
 *
 * # Safety
 * `model` must be a live handle and `out` valid for a write.
 */
enum HvStatus hv_joint_table(const struct HvModel *model,
                             struct HvVec3 a,
                             struct HvVec3 b,
                             struct HvHidden hidden,
                             struct HvTable *out);

/**
 * λ-averaged correlator C(a, b).
 *
 * # Safety
 * `model` must be a live handle and `out` valid for a write.
 */
enum HvStatus hv_correlator(const struct HvModel *model,
                            struct HvVec3 a,
                            struct HvVec3 b,
                            double *out);

/**
 * Monte-Carlo estimate of C(a, b); deterministic in (seed, shards, n).
 *
 * # Safety
 * `model` must be a live handle and `out` valid for a write.
 */
enum HvStatus hv_mc_correlator(const struct HvModel *model,
                               struct HvVec3 a,
                               struct HvVec3 b,
                               uint64_t n,
                               uint64_t seed,
                               uint64_t shards,
                               struct HvMcEstimate *out);

/**
 * Value, bound and margin of an inequality selected by an `HvInequality`
 * code. CHSH uses the optimal settings and ignores `phi`.
 *
 * # Safety
 * `model` must be a live handle and `out` valid for a write.
 */
enum HvStatus hv_inequality(const struct HvModel *model,
                            uint32_t inequality,
                            double phi,
                            struct HvReport *out);

/**
 * Message for the last failure on this thread, or null. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *hv_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HV_H */
