#ifndef TRICHAIN_H
#define TRICHAIN_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TrichainStatus {
  TRICHAIN_STATUS_OK = 0,
  TRICHAIN_STATUS_NULL_ARGUMENT = 1,
  TRICHAIN_STATUS_INVALID_UTF8 = 2,
  TRICHAIN_STATUS_PARSE = 3,
  TRICHAIN_STATUS_DOMAIN = 4,
  TRICHAIN_STATUS_NOT_REGULAR = 5,
  TRICHAIN_STATUS_DEPTH_CAP = 6,
  TRICHAIN_STATUS_ORACLE_CAP = 7,
  TRICHAIN_STATUS_OUT_OF_RANGE = 8,
  TRICHAIN_STATUS_INTERNAL = 9,
  TRICHAIN_STATUS_PANIC = 10,
} TrichainStatus;

// Simple branches with multiplicity arrays.
typedef struct TrichainDecomposition TrichainDecomposition;

// Parsed zero-dimensional chain with its variable names.
typedef struct TrichainSystem TrichainSystem;

// Real zeros with multiplicities.
typedef struct TrichainZeros TrichainZeros;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or null. Valid until the
// next failing call on the same thread.
const char *trichain_last_error(void);

// Parses a system file (`vars:` line, `chain:` line, one polynomial per line).
//
// # Safety
// `source` is a NUL-terminated string; `out` is writable.
enum TrichainStatus trichain_system_parse(const char *source, struct TrichainSystem **out);

// # Safety
// `sys` is null or a handle from [`trichain_system_parse`], freed once.
void trichain_system_free(struct TrichainSystem *sys);

// # Safety
// `sys` is a live handle; `out` is writable.
enum TrichainStatus trichain_system_nvars(const struct TrichainSystem *sys, size_t *out);

// Local multiplicity at a zero given as comma-separated Gaussian rationals,
// e.g. `"1+1i,0"`.
//
// # Safety
// `sys` is a live handle; `point` is a NUL-terminated string; `out` is writable.
enum TrichainStatus trichain_mult(const struct TrichainSystem *sys,
                                  const char *point,
                                  uint64_t *out);

// Multiplicity at a rational zero by dual-space dimension, exploring orders
// up to `cap`.
//
// # Safety
// `sys` is a live handle; `point` is a NUL-terminated string; `out` is writable.
enum TrichainStatus trichain_oracle(const struct TrichainSystem *sys,
                                    const char *point,
                                    size_t cap,
                                    uint64_t *out);

// # Safety
// `sys` is a live handle; `out` is writable.
enum TrichainStatus trichain_decompose(const struct TrichainSystem *sys,
                                       struct TrichainDecomposition **out);

// # Safety
// `d` is null or a handle from [`trichain_decompose`], freed once.
void trichain_decomposition_free(struct TrichainDecomposition *d);

// # Safety
// `d` is a live handle; `out` is writable.
enum TrichainStatus trichain_decomposition_len(const struct TrichainDecomposition *d, size_t *out);

// Product of the multiplicity array of branch `i`.
//
// # Safety
// `d` is a live handle; `out` is writable.
enum TrichainStatus trichain_decomposition_product(const struct TrichainDecomposition *d,
                                                   size_t i,
                                                   uint64_t *out);

// Real zeros with multiplicities; `width` is null or a rational such as
// `"1/1000"` bounding every interval width.
//
// # Safety
// `sys` is a live handle; `width` is null or a NUL-terminated string; `out`
// is writable.
enum TrichainStatus trichain_isolate(const struct TrichainSystem *sys,
                                     const char *width,
                                     struct TrichainZeros **out);

// # Safety
// `z` is null or a handle from [`trichain_isolate`], freed once.
void trichain_zeros_free(struct TrichainZeros *z);

// # Safety
// `z` is a live handle; `out` is writable.
enum TrichainStatus trichain_zeros_len(const struct TrichainZeros *z, size_t *out);

// # Safety
// `z` is a live handle; `out` is writable.
enum TrichainStatus trichain_zeros_multiplicity(const struct TrichainZeros *z,
                                                size_t i,
                                                uint64_t *out);

// Endpoints of coordinate `var` of zero `i` as `p/q` strings. Both outputs
// are owned by the caller.
//
// # Safety
// `z` is a live handle; `lo` and `hi` are writable.
enum TrichainStatus trichain_zeros_interval(const struct TrichainZeros *z,
                                            size_t i,
                                            size_t var,
                                            char **lo,
                                            char **hi);

// Runs a CLI command (`decompose`, `mult`, `isolate`, `oracle`, `check`) and
// returns its JSON document. `point` and `width` may be null when unused.
//
// # Safety
// `sys` is a live handle; string arguments are null or NUL-terminated;
// `out` is writable.
enum TrichainStatus trichain_run_json(const struct TrichainSystem *sys,
                                      const char *command,
                                      const char *point,
                                      const char *width,
                                      char **out);

// # Safety
// `s` is null or a string returned by this library, freed once.
void trichain_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TRICHAIN_H */
