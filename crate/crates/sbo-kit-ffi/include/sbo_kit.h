#ifndef SBO_KIT_H
#define SBO_KIT_H

#pragma once

/* Generated by cbindgen; edit cbindgen.toml and rebuild instead of editing this file. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Rendering formats for `sbo_operator_render`.
typedef enum SboFormat {
  SBO_FORMAT_PLAIN = 0,
  SBO_FORMAT_LATEX = 1,
  SBO_FORMAT_JSON = 2,
} SboFormat;

// Status codes returned by every fallible entry point.
typedef enum SboStatus {
  // Success.
  SBO_STATUS_OK = 0,
  // A parameter was out of range or otherwise malformed.
  SBO_STATUS_INVALID_ARGUMENT = 1,
  // The requested verification ran and at least one case failed.
  SBO_STATUS_VERIFY_FAILED = 2,
  // An internal invariant was violated (a bug); details via sbo_last_error.
  SBO_STATUS_PANIC = 3,
} SboStatus;

// Opaque operator handle: either a scalar symbol or a matrix operator.
typedef struct SboOperator SboOperator;

// Suite configuration mirrored over the ABI; zero fields fall back to the
// library defaults.
typedef struct SboSuiteConfig {
  uint32_t n_min;
  uint32_t n_max;
  int64_t l_max;
  uint32_t m_max;
  uint32_t k_max;
  int64_t grid;
  double tol;
} SboSuiteConfig;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// The most recent error message on this thread, or NULL when the last call
// succeeded. The pointer stays valid until the next failing call on the same
// thread; do not free it.
const char *sbo_last_error(void);

// ABI version; bumped on breaking changes to this header.
uint32_t sbo_abi_version(void);

// Build the scalar Juhl symbol of order l on R^n (symbolic lambda).
//
// # Safety
// `out` must be a valid pointer to an operator-handle slot.
enum SboStatus sbo_juhl_new(uint32_t n, int64_t l, struct SboOperator **out);

// Build the Branson operator on i-forms over R^n with order parameter l.
//
// # Safety
// `out` must be a valid pointer to an operator-handle slot.
enum SboStatus sbo_branson_new(uint32_t n, uint32_t i, uint32_t l, struct SboOperator **out);

// Build the matrix symmetry breaking operator C^{i,j} of order l
// (symbolic lambda).
//
// # Safety
// `out` must be a valid pointer to an operator-handle slot.
enum SboStatus sbo_operator_new(uint32_t n,
                                uint32_t i,
                                uint32_t j,
                                uint8_t kappa,
                                int64_t l,
                                struct SboOperator **out);

// Release an operator handle. NULL is allowed.
//
// # Safety
// `op` must have been produced by one of the constructors and not yet freed.
void sbo_operator_free(struct SboOperator *op);

// Render an operator; the returned string is freed with `sbo_string_free`.
//
// # Safety
// `op` must be a live handle and `out` a valid string slot.
enum SboStatus sbo_operator_render(const struct SboOperator *op, enum SboFormat format, char **out);

// True (1) when every entry of the operator is zero.
//
// # Safety
// `op` must be a live handle and `out` a valid slot.
enum SboStatus sbo_operator_is_zero(const struct SboOperator *op, int32_t *out);

// Run a named verification suite ("weyl", "gegenbauer", "juhl-form",
// "knapp-stein", "components", "prop-gc", "main-theorem", "vanish",
// "numeric" or "all"). Writes the JSON report when `json_out` is non-NULL
// and returns Ok when every case passed, VerifyFailed otherwise.
//
// # Safety
// `suite` must be a NUL-terminated string; `config` may be NULL for
// defaults; `json_out` may be NULL when the report is not wanted.
enum SboStatus sbo_verify(const char *suite, const struct SboSuiteConfig *config, char **json_out);

// Classify vanishing of the normalized operator family at rational
// (lambda, nu) given as "p/q" literals. Writes 1/0 into `vanishes` and the
// matched branch description into `branch_out` when non-NULL.
//
// # Safety
// `lambda` and `nu` must be NUL-terminated strings; `vanishes` must be a
// valid slot; `branch_out` may be NULL.
enum SboStatus sbo_vanish(const char *lambda,
                          const char *nu,
                          uint32_t n,
                          uint32_t i,
                          uint32_t j,
                          uint8_t kappa,
                          int32_t *vanishes,
                          char **branch_out);

// Free a string returned by this library. NULL is allowed.
//
// # Safety
// `s` must have been produced by this library and not yet freed.
void sbo_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SBO_KIT_H */
