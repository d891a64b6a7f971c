#ifndef HIVERING_H
#define HIVERING_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum HrStatus {
  HR_STATUS_OK = 0,
  HR_STATUS_NULL_POINTER = 1,
  HR_STATUS_MALFORMED_INPUT = 2,
  HR_STATUS_DOMAIN = 3,
  HR_STATUS_INTERNAL = 4,
} HrStatus;

// The hives with one boundary, in enumeration order.
typedef struct HrHiveSet HrHiveSet;

// A finite integer combination of basis weights, terms in descending order.
typedef struct HrRingElement HrRingElement;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the most recent failure on this thread, or null. The pointer
// stays valid until the next failing call on this thread.
const char *hr_last_error(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must be null or a string obtained from this library, not yet freed.
void hr_string_free(char *s);

// Library version as a static string.
const char *hr_version(void);

// `max(a + c, b + d) - e`.
int64_t hr_octahedron_step(int64_t e, int64_t a, int64_t b, int64_t c, int64_t d);

// Number of hives with boundary `(lambda, mu, nu)`, each of length `n`.
//
// # Safety
// Each weight pointer must reference `n` readable values; `out` must be
// writable.
enum HrStatus hr_lr_coefficient(const int64_t *lambda,
                                const int64_t *mu,
                                const int64_t *nu,
                                uintptr_t n,
                                uint64_t *out);

// Product of two basis elements, as a new handle in `*out`.
//
// # Safety
// Weight pointers must reference `n` readable values; `out` must be
// writable.
enum HrStatus hr_product_expand(const int64_t *lambda,
                                const int64_t *mu,
                                uintptr_t n,
                                struct HrRingElement **out);

// Product with the `i`-th fundamental weight by the Pieri formula.
//
// # Safety
// `lambda` must reference `n` readable values; `out` must be writable.
enum HrStatus hr_pieri_expand(const int64_t *lambda,
                              uintptr_t n,
                              uintptr_t i,
                              struct HrRingElement **out);

// Number of terms; 0 for a null handle.
//
// # Safety
// `e` must be null or a live handle.
uintptr_t hr_ring_element_len(const struct HrRingElement *e);

// Length of the weights in the element.
//
// # Safety
// `e` must be null or a live handle.
uintptr_t hr_ring_element_size(const struct HrRingElement *e);

// Copies term `index` into `weight_out` (room for the element's size) and
// `coeff_out`.
//
// # Safety
// `e` must be a live handle, `weight_out` must have room for
// [`hr_ring_element_size`] values and `coeff_out` must be writable.
enum HrStatus hr_ring_element_term(const struct HrRingElement *e,
                                   uintptr_t index,
                                   int64_t *weight_out,
                                   int64_t *coeff_out);

// The element as JSON `[{"weight": [...], "coeff": c}, ...]`; free with
// [`hr_string_free`].
//
// # Safety
// `e` must be a live handle and `out` writable.
enum HrStatus hr_ring_element_to_json(const struct HrRingElement *e, char **out);

// # Safety
// `e` must be null or a live handle; it is invalid afterwards.
void hr_ring_element_free(struct HrRingElement *e);

// All hives with boundary `(lambda, mu, nu)` and lower-left label 0.
//
// # Safety
// Weight pointers must reference `n` readable values; `out` must be
// writable.
enum HrStatus hr_hive_set_enumerate(const int64_t *lambda,
                                    const int64_t *mu,
                                    const int64_t *nu,
                                    uintptr_t n,
                                    struct HrHiveSet **out);

// Number of hives; 0 for a null handle.
//
// # Safety
// `set` must be null or a live handle.
uintptr_t hr_hive_set_len(const struct HrHiveSet *set);

// Copies the labels of hive `index`, row by row from the apex and each row
// left to right, into `labels_out`, which has room for `capacity` values.
// `*written` receives the number of labels, `(n+1)(n+2)/2`.
//
// # Safety
// `set` must be a live handle, `labels_out` must have room for `capacity`
// values and `written` must be writable.
enum HrStatus hr_hive_set_labels(const struct HrHiveSet *set,
                                 uintptr_t index,
                                 int64_t *labels_out,
                                 uintptr_t capacity,
                                 uintptr_t *written);

// Hive `index` as JSON `{"n": n, "rows": [...]}`; free with
// [`hr_string_free`].
//
// # Safety
// `set` must be a live handle and `out` writable.
enum HrStatus hr_hive_set_to_json(const struct HrHiveSet *set, uintptr_t index, char **out);

// # Safety
// `set` must be null or a live handle; it is invalid afterwards.
void hr_hive_set_free(struct HrHiveSet *set);

// Excavates the top pair given as two hive JSON documents (or, when
// `inverse` is set, fills the bottom pair) and returns the resulting pair
// as JSON `{"left", "right", "shared"}`.
//
// # Safety
// `left_json` and `right_json` must be nul-terminated strings; `out` must
// be writable.
enum HrStatus hr_excavate_json(const char *left_json,
                               const char *right_json,
                               bool inverse,
                               char **out);

// Both sides of the associativity identity for `(lambda, mu, nu, pi)` and
// whether excavation maps one side bijectively onto the other.
//
// # Safety
// Weight pointers must reference `n` readable values; the out-parameters
// must be writable.
enum HrStatus hr_verify_assoc(const int64_t *lambda,
                              const int64_t *mu,
                              const int64_t *nu,
                              const int64_t *pi,
                              uintptr_t n,
                              uint64_t *lhs,
                              uint64_t *rhs,
                              bool *bijection_ok);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HIVERING_H */
