#ifndef DQ_H
#define DQ_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Which arithmetic operation [`dq_series_binary`] applies.
 */
typedef enum {
  DQ_OP_ADD = 0,
  DQ_OP_SUB = 1,
  DQ_OP_MUL = 2,
  DQ_OP_DIV = 3,
} DqOp;

/*
 Result codes shared by every entry point.
 */
typedef enum {
  DQ_STATUS_OK = 0,
  DQ_STATUS_NULL_POINTER = 1,
  DQ_STATUS_INVALID_UTF8 = 2,
  DQ_STATUS_SYNTAX = 3,
  DQ_STATUS_INDETERMINATE = 4,
  DQ_STATUS_ZERO_DIVISION = 5,
  DQ_STATUS_INVALID_STATE = 6,
  DQ_STATUS_INVALID_ARGUMENT = 7,
  DQ_STATUS_INTERNAL = 8,
} DqStatus;

/*
 An element of the ordered series field.
 */
typedef struct DqSeries DqSeries;

/*
 A Gaussian state.
 */
typedef struct DqState DqState;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message for the most recent failure on this thread, or null. The pointer
 stays valid until the next failing call on the same thread.
 */
const char *dq_last_error(void);

/*
 Releases a string returned by this library. Null is ignored.

 # Safety
 `s` must come from this library and not have been freed.
 */
void dq_string_free(char *s);

/*
 Sets the relative working precision used by non-terminating quotients and
 square roots. Values below one are rejected.
 */
DqStatus dq_set_default_order(int64_t order);

/*
 Parses a series literal such as `1/2*h - h^(3/2) + O(h^4)`.

 # Safety
 `text` must be a nul-terminated string; `out` must be writable.
 */
DqStatus dq_series_parse(const char *text, DqSeries **out);

/*
 Releases a series. Null is ignored.

 # Safety
 `s` must come from this library and not have been freed.
 */
void dq_series_free(DqSeries *s);

/*
 Canonical text of a series.

 # Safety
 `s` must be a live handle; `out` must be writable.
 */
DqStatus dq_series_to_string(const DqSeries *s, char **out);

/*
 `out = a op b`.

 # Safety
 `a` and `b` must be live handles; `out` must be writable.
 */
DqStatus dq_series_binary(DqOp op, const DqSeries *a, const DqSeries *b, DqSeries **out);

/*
 Writes -1, 0 or 1. Returns `Indeterminate` when every stored term
 cancelled below the truncation order.

 # Safety
 `s` must be a live handle; `out` must be writable.
 */
DqStatus dq_series_sign(const DqSeries *s, int32_t *out);

/*
 Builds a state from a name (`ground`, `ground(d)`, `squeezed(s)`,
 `correlated(c)`) or, when `spec` starts with `{`, from state JSON.

 # Safety
 `spec` must be a nul-terminated string; `out` must be writable.
 */
DqStatus dq_state_new(const char *spec, DqState **out);

/*
 Releases a state. Null is ignored.

 # Safety
 `s` must come from this library and not have been freed.
 */
void dq_state_free(DqState *s);

/*
 Number of degrees of freedom of a state.

 # Safety
 `s` must be a live handle; `out` must be writable.
 */
DqStatus dq_state_dim(const DqState *s, uintptr_t *out);

/*
 Expectation value of an observable, written as a series handle. Fails
 with `InvalidArgument` when the observable is not real.

 # Safety
 `state` must be a live handle, `obs` a nul-terminated string and `out`
 writable.
 */
DqStatus dq_state_expectation(const DqState *state, const char *obs, DqSeries **out);

/*
 Runs every uncertainty relation for `count` observables and writes a JSON
 array of verdicts (`relation`, `lhs`, `rhs`, `status`, `intelligent`,
 `witness`).

 # Safety
 `state` must be a live handle, `obs` must point to `count` nul-terminated
 strings and `out` must be writable.
 */
DqStatus dq_check_json(const DqState *state, const char *const *obs, uintptr_t count, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DQ_H */
