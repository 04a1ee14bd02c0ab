#ifndef BSS_H
#define BSS_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Arithmetic operation selector for [`bss_number_arith`].
 */
typedef enum BssOp {
  BSS_OP_ADD = 0,
  BSS_OP_SUB = 1,
  BSS_OP_MUL = 2,
  BSS_OP_DIV = 3,
} BssOp;

/**
 * Verdict of a run, semi-decision or reduction.  Matches the CLI exit codes.
 */
typedef enum BssOutcome {
  BSS_OUTCOME_ACCEPT = 0,
  BSS_OUTCOME_REJECT = 1,
  BSS_OUTCOME_RUNNING = 2,
} BssOutcome;

/**
 * Result of every fallible call.
 */
typedef enum BssStatus {
  BSS_STATUS_OK = 0,
  BSS_STATUS_NULL_POINTER = 1,
  BSS_STATUS_INVALID_UTF8 = 2,
  BSS_STATUS_PARSE = 3,
  BSS_STATUS_INVALID_ARGUMENT = 4,
  BSS_STATUS_VALIDATION = 5,
  BSS_STATUS_RUNTIME = 6,
  /**
   * Zero denominator, division by zero, negative radicand or no real root.
   */
  BSS_STATUS_ARITHMETIC = 7,
  BSS_STATUS_DEGREE_CAP = 8,
  BSS_STATUS_BUDGET_EXHAUSTED = 9,
  BSS_STATUS_UNSUPPORTED = 10,
  BSS_STATUS_UNKNOWN_ID = 11,
  /**
   * A Rust panic was caught at the boundary.
   */
  BSS_STATUS_INTERNAL = 12,
} BssStatus;

/**
 * Opaque exact real algebraic number.
 */
typedef struct BssNumber BssNumber;

/**
 * Opaque parsed and validated program.
 */
typedef struct BssProgramHandle BssProgramHandle;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Error message of the latest call on this thread; empty after a success.
 * The pointer stays valid until the next call into this library on the same thread.
 */
const char *bss_last_error(void);

/**
 * Releases a string returned by this library.  Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void bss_string_free(char *s);

/**
 * Parses and validates assembly source.
 *
 * # Safety
 * `source` must be a NUL-terminated string; `out` must be writable.
 */
enum BssStatus bss_program_parse(const char *source, struct BssProgramHandle **out);

/**
 * Loads a program shipped with the library by name, such as `double`.
 *
 * # Safety
 * `name` must be a NUL-terminated string; `out` must be writable.
 */
enum BssStatus bss_program_shipped(const char *name, struct BssProgramHandle **out);

/**
 * Releases a program.  Null is ignored.
 *
 * # Safety
 * `p` must come from this library and not be freed twice.
 */
void bss_program_free(struct BssProgramHandle *p);

/**
 * Parses `a/b` or `[c0,...,ck]@(lo,hi)`.
 *
 * # Safety
 * `s` must be a NUL-terminated string; `out` must be writable.
 */
enum BssStatus bss_number_parse(const char *s, struct BssNumber **out);

/**
 * Releases a number.  Null is ignored.
 *
 * # Safety
 * `x` must come from this library and not be freed twice.
 */
void bss_number_free(struct BssNumber *x);

/**
 * Canonical text form of `x`.
 *
 * # Safety
 * `x` must be a live handle; `out` must be writable.
 */
enum BssStatus bss_number_to_string(const struct BssNumber *x, char **out);

/**
 * Degree of the minimal polynomial of `x`.
 *
 * # Safety
 * `x` must be a live handle; `out` must be writable.
 */
enum BssStatus bss_number_degree(const struct BssNumber *x, size_t *out);

/**
 * Exact `a op b` as a new handle.
 *
 * # Safety
 * `a` and `b` must be live handles; `out` must be writable.
 */
enum BssStatus bss_number_arith(enum BssOp op,
                                const struct BssNumber *a,
                                const struct BssNumber *b,
                                struct BssNumber **out);

/**
 * Sign of `a - b` as -1, 0 or 1.
 *
 * # Safety
 * `a` and `b` must be live handles; `out` must be writable.
 */
enum BssStatus bss_number_compare(const struct BssNumber *a,
                                  const struct BssNumber *b,
                                  int32_t *out);

/**
 * Runs `program` on `inputs`.  `oracle` may be null for none.  On a halt
 * `output` receives the space-separated output registers (`0` when all are
 * zero); when the budget runs out it receives null.
 *
 * # Safety
 * `inputs` must point to `n_inputs` live handles (or be null when zero);
 * `oracle` must be null or NUL-terminated; out-pointers must be writable.
 */
enum BssStatus bss_run(const struct BssProgramHandle *program,
                       const struct BssNumber *const *inputs,
                       size_t n_inputs,
                       const char *oracle,
                       uint64_t budget,
                       enum BssOutcome *outcome,
                       char **output);

/**
 * Runs the semi-decider of `problem` (`Q`, `A`, `SQ`, `ROOTFIELD:2,3`, ...)
 * on `x`.  On acceptance `certificate` receives its text; otherwise null.
 *
 * # Safety
 * `problem` must be NUL-terminated; `x` must be a live handle; out-pointers must be writable.
 */
enum BssStatus bss_semidecide(const char *problem,
                              const struct BssNumber *x,
                              uint64_t budget,
                              enum BssOutcome *outcome,
                              char **certificate);

/**
 * Runs a named reduction (`Q<=A`, `SQ<=Q`, ...) against its exact oracle.
 * `summary` receives a line such as `reject: deg=2`; `transcript`, when
 * not null, receives the full query transcript.  An exhausted budget is
 * reported as outcome `Running` with null strings.
 *
 * # Safety
 * `reduction` must be NUL-terminated; `x` must be a live handle; `outcome`
 * and `summary` must be writable; `transcript` may be null.
 */
enum BssStatus bss_reduce(const char *reduction,
                          const struct BssNumber *x,
                          uint64_t budget,
                          enum BssOutcome *outcome,
                          char **summary,
                          char **transcript);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* BSS_H */
