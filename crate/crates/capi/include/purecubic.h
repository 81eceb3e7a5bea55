#ifndef PURECUBIC_H
#define PURECUBIC_H

/* Generated by cbindgen from purecubic-capi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Status codes shared by every entry point.
 */
typedef enum PcStatus {
  PC_STATUS_OK = 0,
  PC_STATUS_INVALID_INPUT = 1,
  PC_STATUS_UNDETERMINED = 2,
  PC_STATUS_BUDGET_EXCEEDED = 3,
  PC_STATUS_BUFFER_TOO_SMALL = 4,
  PC_STATUS_NULL_POINTER = 5,
  PC_STATUS_INTERNAL_ERROR = 6,
} PcStatus;

/*
 Verdict discriminants for the integer decision.
 */
typedef enum PcVerdictKind {
  PC_VERDICT_MONOGENIC = 0,
  PC_VERDICT_NOT_MONOGENIC = 1,
  PC_VERDICT_UNDETERMINED = 2,
} PcVerdictKind;

/*
 Opaque finite-field handle.
 */
typedef struct PcFqCtx PcFqCtx;

/*
 Result of deciding Q(cbrt(k^2 m)). Fields are meaningful according to
 `kind`: (x, y) for a monogenic witness, `modulus` for an obstruction,
 `height` for an exhausted search.
 */
typedef struct PcVerdictZ {
  enum PcVerdictKind kind;
  int64_t x;
  int64_t y;
  uint64_t modulus;
  uint64_t height;
} PcVerdictZ;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Library version as a static NUL-terminated string.
 */
const char *pc_version(void);

/*
 Decides monogenicity of Q(cbrt(k^2 m)) with the default search
 configuration. Returns PC_STATUS_UNDETERMINED (with the height in the
 verdict) when neither a witness nor an obstruction was found.
 */
enum PcStatus pc_decide_z(uint64_t k, uint64_t m, struct PcVerdictZ *out);

/*
 Renders the integral basis of Q(cbrt(n)) into `out`.
 */
enum PcStatus pc_basis_z(uint64_t n, char *out, size_t out_len);

/*
 Creates an F_q handle for q = p^e. The handle must be released with
 `pc_fq_free`.
 */
enum PcStatus pc_fq_new(uint64_t p, uint32_t e, struct PcFqCtx **out);

/*
 Releases a handle from `pc_fq_new`. NULL is accepted and ignored.
 */
void pc_fq_free(struct PcFqCtx *ctx);

/*
 Decides monogenicity of F_q(t, cbrt(g^2 h)) by complete search.
 `g_text` and `h_text` use the same grammar as the CLI (`t^2+t+1` or a
 `[c0,c1,...]` coefficient list). On a monogenic verdict the witness is
 rendered into `x_out`/`y_out` and `alpha_out` is set; otherwise
 `is_monogenic_out` is 0 and the buffers hold empty strings.
 */
enum PcStatus pc_decide_ff(const struct PcFqCtx *ctx,
                           const char *g_text,
                           const char *h_text,
                           int32_t *is_monogenic_out,
                           char *x_out,
                           size_t x_out_len,
                           char *y_out,
                           size_t y_out_len,
                           uint64_t *alpha_out);

/*
 Renders the integral basis of F_q(t, cbrt(f)) into `out`.
 */
enum PcStatus pc_basis_ff(const struct PcFqCtx *ctx, const char *f_text, char *out, size_t out_len);

/*
 Exact maximum of omega(P) over deg P <= n.
 */
enum PcStatus pc_omega_max(const struct PcFqCtx *ctx, uint64_t n, uint64_t *out);

/*
 Exact sum of 3^omega(P) over monic P of degree n, as a 128-bit value
 split into high and low 64-bit halves. `budget` caps the number of
 polynomials scanned (0 means the default).
 */
enum PcStatus pc_omega_sum(const struct PcFqCtx *ctx,
                           uint64_t n,
                           uint64_t budget,
                           uint64_t *out_hi,
                           uint64_t *out_lo);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PURECUBIC_H */
