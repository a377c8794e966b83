#ifndef DERIVID_H
#define DERIVID_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define DERIVID_SIDE_LEFT 0

#define DERIVID_SIDE_RIGHT 1

#define DERIVID_MODE_RANDOM 0

#define DERIVID_MODE_EXHAUSTIVE 1

#define DERIVID_MODE_CROSSCHECK 2

#define DERIVID_THEOREM_FG 0

#define DERIVID_THEOREM_FD 1

#define DERIVID_THEOREM_RC 2

typedef enum DerividStatus {
  DERIVID_STATUS_OK = 0,
  // `derivid_verify` found a counterexample; the report is still written.
  DERIVID_STATUS_REFUTED = 1,
  DERIVID_STATUS_NULL_POINTER = 2,
  DERIVID_STATUS_INVALID_UTF8 = 3,
  DERIVID_STATUS_INVALID_ARGUMENT = 4,
  DERIVID_STATUS_PARSE_ERROR = 5,
  DERIVID_STATUS_CONTEXT_MISMATCH = 6,
  DERIVID_STATUS_ARITY_MISMATCH = 7,
  DERIVID_STATUS_UNKNOWN_NAME = 8,
  DERIVID_STATUS_CAP_EXCEEDED = 9,
  DERIVID_STATUS_BUDGET_EXCEEDED = 10,
  DERIVID_STATUS_PROBLEM_FILE = 11,
  DERIVID_STATUS_INTERNAL = 12,
} DerividStatus;

// Opaque operation handle.
typedef struct DerividOperation DerividOperation;

// Random argument generation for `derivid_verify`.
typedef struct DerividSampler {
  uint64_t seed;
  uint64_t trials;
  // Total degree bound of sampled polynomials.
  uint32_t max_degree;
  uint32_t coeff_bound;
  bool homogeneous;
} DerividSampler;

// Evaluator limits; pass NULL for the defaults.
typedef struct DerividCaps {
  size_t naive;
  size_t dp;
  uint64_t exhaustive_budget;
} DerividCaps;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread (empty after a success).
// The pointer stays valid until the next call on this thread.
const char *derivid_last_error(void);

// Library version, a static string.
const char *derivid_version(void);

// Release a string returned by this library. NULL is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void derivid_string_free(char *s);

// Default sampler: seed 0, 50 trials, degree 3, coefficients in [-5, 5].
struct DerividSampler derivid_sampler_default(void);

// Default caps: 8 / 22 / 10^7.
struct DerividCaps derivid_caps_default(void);

// Build a catalog operation (`"novikov"`, `"poisson:2"`, `"rc:1"`, ...).
//
// # Safety
// `name` must be a nul-terminated string; `out` must be writable.
enum DerividStatus derivid_operation_from_catalog(const char *name, struct DerividOperation **out);

// Build an operation from a JSON problem document.
//
// # Safety
// `json` must be a nul-terminated string; `out` must be writable.
enum DerividStatus derivid_operation_from_problem(const char *json, struct DerividOperation **out);

// The opposite operation `{a,b}^op = {b,a}` of a binary operation.
//
// # Safety
// `op` must be a live handle; `out` must be writable.
enum DerividStatus derivid_operation_opposite(const struct DerividOperation *op,
                                              struct DerividOperation **out);

// Release a handle. NULL is ignored.
//
// # Safety
// `op` must come from this library and not have been freed.
void derivid_operation_free(struct DerividOperation *op);

// Arity of the operation, or 0 for a NULL handle.
//
// # Safety
// `op` must be NULL or a live handle.
size_t derivid_operation_arity(const struct DerividOperation *op);

// JSON description: name, arity, variables, presentation and orders.
//
// # Safety
// `op` must be a live handle; `out` must be writable.
enum DerividStatus derivid_operation_describe(const struct DerividOperation *op, char **out);

// Apply the operation to `nargs` polynomial literals.
//
// # Safety
// `op` must be a live handle, `args` an array of `nargs` strings, `out` writable.
enum DerividStatus derivid_apply(const struct DerividOperation *op,
                                 const char *const *args,
                                 size_t nargs,
                                 char **out);

// `s_{nargs,side}` of a binary operation at the given arguments. `caps` may be NULL.
//
// # Safety
// As for [`derivid_apply`]; `caps` must be NULL or valid.
enum DerividStatus derivid_standard(const struct DerividOperation *op,
                                    uint32_t side,
                                    const char *const *args,
                                    size_t nargs,
                                    const struct DerividCaps *caps,
                                    char **out);

// k-ary standard polynomial with `degree` nested brackets; needs
// `degree * (k-1) + 1` arguments.
//
// # Safety
// As for [`derivid_standard`].
enum DerividStatus derivid_kary_standard(const struct DerividOperation *op,
                                         size_t degree,
                                         const char *const *args,
                                         size_t nargs,
                                         const struct DerividCaps *caps,
                                         char **out);

// Check `s_{degree,side} = 0` and write the JSON report. Returns
// `Refuted` (with the report written) when a counterexample is found.
// `sampler` and `caps` may be NULL for the defaults.
//
// # Safety
// `op` must be a live handle, `out` writable, the config pointers NULL or valid.
enum DerividStatus derivid_verify(const struct DerividOperation *op,
                                  uint32_t side,
                                  size_t degree,
                                  uint32_t mode,
                                  const struct DerividSampler *sampler,
                                  const struct DerividCaps *caps,
                                  char **out_report);

// Degree bound as JSON. `FG`: `(a, b) = (n, m)`; `FD`: `(dim g, m)`;
// `RC`: `a = n`, `b` ignored.
//
// # Safety
// `out` must be writable.
enum DerividStatus derivid_bound(uint32_t theorem, uint64_t a, uint64_t b, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DERIVID_H */
