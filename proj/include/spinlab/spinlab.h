/* spinlab C interface.
 *
 * Every fallible call returns a spinlab_status; on failure the message is
 * available from spinlab_last_error() until the next call on the same
 * thread.  Handles are opaque and released with their matching _free.
 */
#ifndef SPINLAB_H_
#define SPINLAB_H_

#include <stddef.h>
#include <stdint.h>

#if defined(SPINLAB_BUILDING)
#define SPINLAB_API __attribute__((visibility("default")))
#else
#define SPINLAB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum spinlab_status {
  SPINLAB_OK = 0,
  SPINLAB_E_INVALID_ARGUMENT = 1,
  SPINLAB_E_CONFIG_SYNTAX = 2,
  SPINLAB_E_NOT_AUTOMORPHISM = 3,
  SPINLAB_E_EVEN_DEGREE = 4,
  SPINLAB_E_EVEN_CLASS_NUMBER = 5,
  SPINLAB_E_C4_VIOLATION = 6,
  SPINLAB_E_BAD_UNIT = 7,
  SPINLAB_E_BAD_DISCRIMINANT = 8,
  SPINLAB_E_RAMIFIED_PRIME = 9,
  SPINLAB_E_GENERATOR_NOT_FOUND = 10,
  SPINLAB_E_AMBIGUOUS_SIGN = 11,
  SPINLAB_E_CONSISTENCY = 12,
  SPINLAB_E_IO = 13,
  SPINLAB_E_INTERNAL = 14
} spinlab_status;

typedef struct spinlab_text spinlab_text;
typedef struct spinlab_field spinlab_field;
typedef struct spinlab_sweep spinlab_sweep;

SPINLAB_API const char* spinlab_version(void);
SPINLAB_API const char* spinlab_status_name(spinlab_status status);
SPINLAB_API const char* spinlab_last_error(void);

/* Owned, NUL-terminated text. */
SPINLAB_API const char* spinlab_text_data(const spinlab_text* text);
SPINLAB_API size_t spinlab_text_size(const spinlab_text* text);
SPINLAB_API void spinlab_text_free(spinlab_text* text);

/* Exact counts s+ and s- as decimal strings.  prime_case selects the
 * specialised formula for prime n. */
SPINLAB_API spinlab_status spinlab_s_pair(int n, int prime_case, spinlab_text** plus,
                                          spinlab_text** minus);

/* Table rows "n | d(F+|S+) | d(F-|S-) | d(F|S)" plus any footnotes. */
SPINLAB_API spinlab_status spinlab_density_table(const int* rows, size_t count, spinlab_text** out);
/* Every density of one degree as "key = value" lines. */
SPINLAB_API spinlab_status spinlab_density_report(int n, spinlab_text** out);

SPINLAB_API spinlab_status spinlab_field_load_file(const char* path, spinlab_field** out);
SPINLAB_API spinlab_status spinlab_field_load_text(const char* text, spinlab_field** out);
SPINLAB_API void spinlab_field_free(spinlab_field* field);
SPINLAB_API int spinlab_field_degree(const spinlab_field* field);
SPINLAB_API const char* spinlab_field_name(const spinlab_field* field);

typedef struct spinlab_kernel_report {
  int n;
  uint64_t formula_plus, formula_minus;
  uint64_t star_plus, star_minus;
  uint64_t bmap_plus, bmap_minus;
  int star_one;
  int star_minus_one;
  int minus_one_symbol;
  int agree;
} spinlab_kernel_report;

/* Either output may be NULL. */
SPINLAB_API spinlab_status spinlab_verify_kernel(const spinlab_field* field, spinlab_kernel_report* report,
                                                 spinlab_text** text);

/* Runs the exhaustive cubic property suites. */
SPINLAB_API spinlab_status spinlab_selfcheck(const spinlab_field* field, int* passed, spinlab_text** text);

typedef struct spinlab_sweep_options {
  uint64_t limit;
  uint64_t chunk;
  unsigned threads; /* 0: hardware concurrency */
  int check_spin_relation;
  int check_r4_equivariance;
  int emit_csv;
  double radius_multiplier;
} spinlab_sweep_options;

typedef struct spinlab_tally {
  uint64_t s_plus, s_minus;
  uint64_t r_plus, r_minus;
  uint64_t f_plus, f_minus;
  uint64_t violations;
} spinlab_tally;

SPINLAB_API void spinlab_sweep_options_default(spinlab_sweep_options* opts);
/* A per-prime consistency failure returns SPINLAB_E_CONSISTENCY and names the prime. */
SPINLAB_API spinlab_status spinlab_sweep_run(const spinlab_field* field, const spinlab_sweep_options* opts,
                                             spinlab_sweep** out);
SPINLAB_API void spinlab_sweep_free(spinlab_sweep* sweep);
SPINLAB_API void spinlab_sweep_tally(const spinlab_sweep* sweep, spinlab_tally* out);
SPINLAB_API int spinlab_sweep_passed(const spinlab_sweep* sweep);
SPINLAB_API spinlab_status spinlab_sweep_report(const spinlab_sweep* sweep, spinlab_text** out);
/* Requires emit_csv in the options. */
SPINLAB_API spinlab_status spinlab_sweep_csv(const spinlab_sweep* sweep, spinlab_text** out);

#ifdef __cplusplus
}
#endif

#endif /* SPINLAB_H_ */
