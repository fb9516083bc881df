#ifndef OSP_H
#define OSP_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum OspDensityModel {
  OSP_DENSITY_MODEL_U = 0,
  OSP_DENSITY_MODEL_V = 1,
} OspDensityModel;

typedef enum OspModel {
  OSP_MODEL_OSP = 0,
  OSP_MODEL_GROWTH = 1,
  OSP_MODEL_DUAL = 2,
} OspModel;

typedef enum OspSide {
  /**
   * `F_n`, summed over staircase tableaux.
   */
  OSP_SIDE_TABLEAUX = 0,
  /**
   * `G_n`, summed over sorting networks.
   */
  OSP_SIDE_NETWORKS = 1,
} OspSide;

typedef enum OspStatus {
  OSP_STATUS_OK = 0,
  OSP_STATUS_INVALID_ARGUMENT = 1,
  OSP_STATUS_RESOURCE = 2,
  /**
   * An evaluation point lies on a pole; draw another point.
   */
  OSP_STATUS_POLE_HIT = 3,
  OSP_STATUS_IO = 4,
  OSP_STATUS_NULL_POINTER = 5,
  OSP_STATUS_BUFFER_TOO_SMALL = 6,
  OSP_STATUS_PANIC = 7,
} OspStatus;

/**
 * Opaque generating-function vector.
 */
typedef struct OspGenFun OspGenFun;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the last failure on this thread. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *osp_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *osp_version(void);

/**
 * Builds `F_n` or `G_n` exactly. On success `*out` owns a new handle.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum OspStatus osp_genfun_build(uint32_t n, enum OspSide side, struct OspGenFun **out);

/**
 * Releases a handle; null is ignored.
 *
 * # Safety
 * `g` must come from [`osp_genfun_build`] and not be used afterwards.
 */
void osp_genfun_free(struct OspGenFun *g);

/**
 * Number of components, `(n-1)!`; 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live handle.
 */
size_t osp_genfun_len(const struct OspGenFun *g);

/**
 * Exact component-wise equality.
 *
 * # Safety
 * `a` and `b` must be live handles and `equal` a valid pointer.
 */
enum OspStatus osp_genfun_equal(const struct OspGenFun *a, const struct OspGenFun *b, bool *equal);

/**
 * Writes the canonical text of the component at permutation `perm`
 * (one-line notation, values `1..n-1`) into `buf`, NUL-terminated. The
 * required size including the NUL is stored in `*needed` even when `buf`
 * is too small.
 *
 * # Safety
 * `g` must be a live handle; `perm` must hold `perm_len` values; `buf`
 * must hold `buf_len` bytes or be null with `buf_len == 0`.
 */
enum OspStatus osp_genfun_component_text(const struct OspGenFun *g,
                                         const uint32_t *perm,
                                         size_t perm_len,
                                         char *buf,
                                         size_t buf_len,
                                         size_t *needed);

/**
 * Component residues at `point` modulo `prime`, in lexicographic order of
 * the permutations.
 *
 * # Safety
 * `point` must hold `point_len` values and `out` `out_len` values.
 */
enum OspStatus osp_genfun_eval_mod_p(const struct OspGenFun *g,
                                     const uint64_t *point,
                                     size_t point_len,
                                     uint64_t prime,
                                     uint64_t *out,
                                     size_t out_len);

/**
 * Randomized check of `F_n = G_n` at `points` points modulo `2^61 - 1`.
 *
 * # Safety
 * `equal` must be a valid pointer; `failure_log10` may be null.
 */
enum OspStatus osp_verify_modular(uint32_t n,
                                  uint32_t points,
                                  uint64_t seed,
                                  bool *equal,
                                  double *failure_log10);

/**
 * Sorting network of a staircase standard tableau.
 *
 * # Safety
 * `entries` must hold `len` values and `word` `word_len` values.
 */
enum OspStatus osp_edelman_greene(uint32_t n,
                                  const uint32_t *entries,
                                  size_t len,
                                  uint32_t *word,
                                  size_t word_len);

/**
 * Staircase tableau (row-major entries) of a sorting network.
 *
 * # Safety
 * `word` must hold `len` values and `entries` `entries_len` values.
 */
enum OspStatus osp_edelman_greene_inverse(uint32_t n,
                                          const uint32_t *word,
                                          size_t len,
                                          uint32_t *entries,
                                          size_t entries_len);

/**
 * Density of a sum of independent exponentials with the given rates.
 *
 * # Safety
 * `rates` must hold `len` values; `out` must be a valid pointer.
 */
enum OspStatus osp_hypoexp_density(const double *rates, size_t len, double u, double *out);

/**
 * Exact joint density of `U_n` or `V_n` (`n <= 5`) at `point`.
 *
 * # Safety
 * `point` must hold `len` values; `out` must be a valid pointer.
 */
enum OspStatus osp_joint_density(enum OspDensityModel model,
                                 uint32_t n,
                                 const double *point,
                                 size_t len,
                                 double *out);

/**
 * Times of trial `trial` of the stream seeded by `seed`; identical to the
 * corresponding row of the command-line sampler.
 *
 * # Safety
 * `times` must hold `len >= n-1` values.
 */
enum OspStatus osp_sample(enum OspModel model,
                          uint32_t n,
                          uint64_t seed,
                          uint64_t trial,
                          double *times,
                          size_t len);

/**
 * Corner vectors `V` and `W` of a staircase weight array given row-major.
 *
 * # Safety
 * `weights` must hold `len` values; `v` and `w` must each hold `out_len` values.
 */
enum OspStatus osp_lpp_corners(uint32_t n,
                               const double *weights,
                               size_t len,
                               double *v,
                               double *w,
                               size_t out_len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* OSP_H */
