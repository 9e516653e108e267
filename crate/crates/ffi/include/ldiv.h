#ifndef LDIV_H
#define LDIV_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Result codes shared by every fallible entry point.
 */
typedef enum LdivStatus {
  LDIV_STATUS_OK = 0,
  LDIV_STATUS_NULL_POINTER = 1,
  LDIV_STATUS_INVALID_ARGUMENT = 2,
  LDIV_STATUS_PARSE = 3,
  /*
   An internal consistency check failed or a budget was exhausted.
   */
  LDIV_STATUS_INTERNAL = 4,
  /*
   A Rust panic was caught at the boundary.
   */
  LDIV_STATUS_PANIC = 5,
} LdivStatus;

/*
 Opaque family handle.
 */
typedef struct LdivFamily LdivFamily;

/*
 Summary of the structure decomposition of a family over one prime.
 */
typedef struct LdivStructureSummary {
  /*
   `dim <F>_p`.
   */
  size_t d;
  /*
   `dim <F ∪ F·F>_p - d`.
   */
  size_t h;
  /*
   Number of coordinates in the residual part `B`.
   */
  size_t b_size;
  /*
   `dim <F|_B>_p`; never more than `2h`.
   */
  size_t dim_fb;
  /*
   Every certificate check passed.
   */
  bool checks_pass;
} LdivStructureSummary;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message describing the last failure on this thread, or null. The pointer
 stays valid until the next `ldiv_*` call on the same thread.
 */
const char *ldiv_last_error(void);

/*
 Builds `S(n, l)`, the unions of the first `floor(n / l)` blocks of `l`
 consecutive coordinates.

 # Safety
 `out` must be a valid pointer to writable storage for one handle.
 */
enum LdivStatus ldiv_family_s(size_t n, size_t l, struct LdivFamily **out);

/*
 Parses a family file (`n=<int> mod=<int>` header, one 0/1 string per
 member). The header modulus is written to `modulus_out` when it is not
 null.

 # Safety
 `text` must be a NUL-terminated string; `out` must be valid for one
 handle; `modulus_out` is null or valid for one `uint32_t`.
 */
enum LdivStatus ldiv_family_parse(const char *text, struct LdivFamily **out, uint32_t *modulus_out);

/*
 Renders the family in the canonical file format. Release the string with
 `ldiv_string_free`.

 # Safety
 `family` must be a live handle; `out` must be valid for one pointer.
 */
enum LdivStatus ldiv_family_format(const struct LdivFamily *family, uint32_t modulus, char **out);

/*
 Number of members, or 0 for a null handle.

 # Safety
 `family` is null or a live handle.
 */
size_t ldiv_family_len(const struct LdivFamily *family);

/*
 Ground-set size, or 0 for a null handle.

 # Safety
 `family` is null or a live handle.
 */
size_t ldiv_family_ground_size(const struct LdivFamily *family);

/*
 `dim <F>_p` for a prime `p`.

 # Safety
 `family` must be a live handle; `out` must be valid for one `size_t`.
 */
enum LdivStatus ldiv_family_dim_span(const struct LdivFamily *family, uint32_t p, size_t *out);

/*
 Whether every intersection of at most `k` members (repetition allowed)
 has size divisible by `l`.

 # Safety
 `family` must be a live handle; `out` must be valid for one `bool`.
 */
enum LdivStatus ldiv_family_is_k_closed(const struct LdivFamily *family,
                                        uint64_t k,
                                        uint32_t l,
                                        bool *out);

/*
 Whether every intersection of exactly `k` distinct members has size
 divisible by `l`.

 # Safety
 `family` must be a live handle; `out` must be valid for one `bool`.
 */
enum LdivStatus ldiv_family_is_weakly_k_closed(const struct LdivFamily *family,
                                               uint64_t k,
                                               uint32_t l,
                                               bool *out);

/*
 Structure decomposition over the prime `p`.

 # Safety
 `family` must be a live handle; `out` must be valid for one summary.
 */
enum LdivStatus ldiv_structure_summary(const struct LdivFamily *family,
                                       uint32_t p,
                                       struct LdivStructureSummary *out);

/*
 Releases a handle. Null is ignored.

 # Safety
 `family` is null or a handle from this library not yet freed.
 */
void ldiv_family_free(struct LdivFamily *family);

/*
 Releases a string returned by this library. Null is ignored.

 # Safety
 `s` is null or a string from this library not yet freed.
 */
void ldiv_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LDIV_H */
