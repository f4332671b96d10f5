#ifndef ORBIFOCK_H
#define ORBIFOCK_H

/* Generated by cbindgen from the orbifock-capi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every fallible call. `Ok` is zero; anything else leaves a
// human-readable explanation in [`orbifock_last_error_message`].
typedef enum OrbifockStatus {
  // The call succeeded.
  ORBIFOCK_STATUS_OK = 0,
  // A required pointer argument was NULL.
  ORBIFOCK_STATUS_NULL_POINTER = 1,
  // A string argument was not valid UTF-8.
  ORBIFOCK_STATUS_INVALID_UTF8 = 2,
  // An input failed to parse (malformed JSON, rational, or name).
  ORBIFOCK_STATUS_PARSE_ERROR = 3,
  // A mathematical precondition or verification failed.
  ORBIFOCK_STATUS_MATH_ERROR = 4,
  // An output buffer was too small for the result.
  ORBIFOCK_STATUS_BUFFER_TOO_SMALL = 5,
  // An internal invariant was violated; the library state is unharmed
  // but the call produced no result.
  ORBIFOCK_STATUS_PANIC = 6,
} OrbifockStatus;

// Opaque handle to a finite-dimensional Lie algebra with rational
// structure constants.
typedef struct OrbifockAlgebra OrbifockAlgebra;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// A short static name for a status code, for logging; never freed.
const char *orbifock_status_name(enum OrbifockStatus status);

// Returns a copy of the error message from the most recent failed call on
// this thread, or NULL if the last call succeeded. Free the copy with
// `orbifock_string_free`.
char *orbifock_last_error_message(void);

// Frees a string returned by this library. NULL is ignored.
//
// # Safety
// `s` must be NULL or a string obtained from this library and not yet
// freed.
void orbifock_string_free(char *s);

// Parses an algebra from a JSON document (`{"dim", "basis", "brackets"}`)
// into a new handle. The bracket table is stored as given; computations
// that require the Jacobi identity verify it and fail with `MathError` if
// it does not hold.
//
// # Safety
// `json` must be a valid NUL-terminated string; `out` must be valid for
// writing one pointer. On `Ok` the caller owns the handle and must release
// it with `orbifock_algebra_free`.
enum OrbifockStatus orbifock_algebra_from_json(const char *json, struct OrbifockAlgebra **out);

// Builds a catalog algebra by name: `abelian<n>`, `heisenberg<2n+1>`,
// `filiform4`, `oscillator`, or `sl2`.
//
// # Safety
// `name` must be a valid NUL-terminated string; `out` must be valid for
// writing one pointer. On `Ok` the caller owns the handle.
enum OrbifockStatus orbifock_algebra_catalog(const char *name, struct OrbifockAlgebra **out);

// Releases an algebra handle. NULL is ignored.
//
// # Safety
// `ptr` must be NULL or a handle from this library not yet freed.
void orbifock_algebra_free(struct OrbifockAlgebra *ptr);

// Writes the dimension of the algebra to `out`.
//
// # Safety
// `ptr` must be a live handle; `out` must be valid for writing one value.
enum OrbifockStatus orbifock_algebra_dim(const struct OrbifockAlgebra *ptr, size_t *out);

// Serializes the algebra back to its JSON document form.
//
// # Safety
// `ptr` must be a live handle; `out` must be valid for writing one
// pointer. The returned string is freed with `orbifock_string_free`.
enum OrbifockStatus orbifock_algebra_to_json(const struct OrbifockAlgebra *ptr, char **out);

// Checks the Jacobi identity and writes a report document
// (`{"pass": bool, "failure"?: {...}}`).
//
// # Safety
// `ptr` must be a live handle; `out` must be valid for writing one
// pointer. The returned string is freed with `orbifock_string_free`.
enum OrbifockStatus orbifock_jacobi_json(const struct OrbifockAlgebra *ptr, char **out);

// Writes a structural classification document: dimension, basis labels,
// nilpotency (with class), solvability, center, and the dimensions of the
// lower central and derived series. Fails with `MathError` if the bracket
// violates the Jacobi identity.
//
// # Safety
// `ptr` must be a live handle; `out` must be valid for writing one
// pointer. The returned string is freed with `orbifock_string_free`.
enum OrbifockStatus orbifock_classify_json(const struct OrbifockAlgebra *ptr, char **out);

// Quantizes the algebra at a functional (comma-separated rationals in the
// dual basis) through its Vergne polarization and writes a document with
// the polarization, the differential operators, and the homomorphism
// check. Fails with `MathError` when a mathematical precondition does not
// hold (Jacobi violation, non-nilpotent algebra, ...).
//
// # Safety
// `ptr` must be a live handle; `functional` must be a valid NUL-terminated
// string; `out` must be valid for writing one pointer. The returned string
// is freed with `orbifock_string_free`.
enum OrbifockStatus orbifock_quantize_json(const struct OrbifockAlgebra *ptr,
                                           const char *functional,
                                           char **out);

// Writes the full highest-weight module report at the given central charge
// and weight (canonical rational strings) and level: Gram matrix, Kac
// determinant, singular vectors, and irreducible graded dimensions through
// the level.
//
// # Safety
// `c` and `h` must be valid NUL-terminated strings; `out` must be valid
// for writing one pointer. The returned string is freed with
// `orbifock_string_free`.
enum OrbifockStatus orbifock_verma_json(const char *c, const char *h, uint32_t level, char **out);

// Runs the Virasoro-relation check for the quadratic oscillator-mode
// operators on the charged Fock space and writes the report document. The
// status is `Ok` whether or not the relations hold; the document's
// `"pass"` field carries the verdict.
//
// # Safety
// `momentum` must be a valid NUL-terminated string; `out` must be valid
// for writing one pointer. The returned string is freed with
// `orbifock_string_free`.
enum OrbifockStatus orbifock_sugawara_check_json(uint32_t max_mode,
                                                 uint32_t max_level,
                                                 const char *momentum,
                                                 char **out);

// Computes the graded dimensions of the symmetric algebra over a graded
// space with `dims[i]` independent generators at level `i + 1`, writing
// levels `0..=max_level` into `out`. `out_len` must be exactly
// `max_level + 1`.
//
// # Safety
// `dims` must point to `dims_len` readable values (or be NULL when
// `dims_len` is 0); `out` must point to `out_len` writable values.
enum OrbifockStatus orbifock_expdim(const uint64_t *dims,
                                    size_t dims_len,
                                    uint32_t max_level,
                                    uint64_t *out,
                                    size_t out_len);

// Enumerates maximal parabolic towers above the composition given by
// `parts[0..parts_len]` and writes a document with the count, the Levi
// block data, and the chains (as arrays of compositions).
//
// # Safety
// `parts` must point to `parts_len` readable values; `out` must be valid
// for writing one pointer. The returned string is freed with
// `orbifock_string_free`.
enum OrbifockStatus orbifock_towers_json(const uint32_t *parts, size_t parts_len, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ORBIFOCK_H */
