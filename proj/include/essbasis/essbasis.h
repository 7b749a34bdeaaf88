/*
 * C interface to the essbasis library.
 *
 * Every function returns an eb_status. On failure the message for the calling
 * thread is available from eb_last_error() until the next call on that thread.
 * Strings handed out through `char**` parameters are owned by the caller and
 * released with eb_string_free(). Handles are released with their *_free
 * function; passing NULL to any *_free function is a no-op.
 */
#ifndef ESSBASIS_H_
#define ESSBASIS_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define EB_API __declspec(dllexport)
#else
#define EB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum eb_status {
  EB_OK = 0,
  EB_ERR_INVALID_ARGUMENT = 1,
  EB_ERR_PARSE = 2,
  EB_ERR_OVERFLOW = 3,
  EB_ERR_BUDGET = 4,
  EB_ERR_COVERAGE = 5,
  EB_ERR_IO = 6,
  EB_ERR_INTERNAL = 99
} eb_status;

typedef enum eb_probe_mode {
  EB_PROBE_FIXED_H = 0, /* h fixed, k varies */
  EB_PROBE_FIXED_K = 1  /* k fixed, h varies */
} eb_probe_mode;

typedef enum eb_e4_status {
  EB_E4_SATISFIED = 0,
  EB_E4_BUDGET_EXHAUSTED = 1
} eb_e4_status;

typedef struct eb_set eb_set;   /* finite truncation of a set of naturals */
typedef struct eb_plan eb_plan; /* block plan of the devolved-basis construction */

EB_API const char* eb_last_error(void);
EB_API const char* eb_status_name(eb_status status);
EB_API void eb_string_free(char* s);

/* Sets. Text and JSON formats are described in the README. */
EB_API eb_status eb_set_parse(const char* text, eb_set** out);
EB_API eb_status eb_set_from_members(uint64_t limit, const uint64_t* members, size_t count,
                                     eb_set** out);
EB_API eb_status eb_set_to_text(const eb_set* set, char** out);
EB_API eb_status eb_set_to_json(const eb_set* set, char** out);
EB_API eb_status eb_set_limit(const eb_set* set, uint64_t* out);
EB_API eb_status eb_set_size(const eb_set* set, uint64_t* out);
EB_API eb_status eb_set_contains(const eb_set* set, uint64_t x, int* out);
EB_API void eb_set_free(eb_set* set);

EB_API eb_status eb_sumset(const eb_set* set, uint32_t h, uint64_t limit, eb_set** out);
EB_API eb_status eb_is_basis_window(const eb_set* set, uint32_t h, uint64_t lo, uint64_t hi,
                                    int* out);
EB_API eb_status eb_representations_json(const eb_set* set, uint64_t target, uint64_t size_bound,
                                         char** out);

/* Essentiality. A head_bound of UINT64_MAX selects the default (limit / 2);
 * max_prime 0 leaves the prime search unrestricted. */
EB_API eb_status eb_progression_gap(const eb_set* set, uint64_t tail_cutoff, uint64_t* out);
EB_API eb_status eb_is_essential_json(const eb_set* set, const uint64_t* subset, size_t count,
                                      uint64_t tail_cutoff, char** out);
EB_API eb_status eb_essential_subsets_json(const eb_set* set, uint32_t k, uint64_t tail_cutoff,
                                           uint64_t head_bound, uint64_t max_prime, char** out);
EB_API eb_status eb_pairwise_coprime(const uint64_t* gaps, size_t count, int* out);

/* Bounds. */
EB_API eb_status eb_primorial_string(size_t n, char** out);
EB_API eb_status eb_bound_json(uint64_t k, uint64_t h, char** out);
EB_API eb_status eb_growth_ratio(size_t n, double* out);
EB_API eb_status eb_probe_tsv(eb_probe_mode mode, uint64_t fixed_value, const uint64_t* samples,
                              size_t count, char** out);

/* Construction. */
EB_API eb_status eb_plan_new(uint32_t h, eb_plan** out);
EB_API eb_status eb_plan_extend(eb_plan* plan, size_t progressions);
EB_API eb_status eb_plan_parse(const char* json, eb_plan** out);
EB_API eb_status eb_plan_to_json(const eb_plan* plan, char** out);
EB_API eb_status eb_plan_order(const eb_plan* plan, uint32_t* out);
EB_API eb_status eb_plan_progression_count(const eb_plan* plan, size_t* out);
EB_API eb_status eb_plan_interval_count(const eb_plan* plan, size_t* out);
EB_API void eb_plan_free(eb_plan* plan);

EB_API eb_status eb_plan_materialize(const eb_plan* plan, uint64_t limit, eb_set** out);
EB_API eb_status eb_verify_claim1(const eb_plan* plan, size_t n, int* out);
EB_API eb_status eb_verify_claim2(const eb_plan* plan, size_t n, int* out);
/* hits and blocks_examined may be NULL. */
EB_API eb_status eb_verify_e4(eb_plan* plan, uint64_t c, uint64_t d, uint64_t m,
                              uint64_t max_blocks, eb_e4_status* status, uint64_t* hits,
                              uint64_t* blocks_examined);
/* probes holds probe_count (c, d) pairs flattened; removals and limit are decimal strings. */
EB_API eb_status eb_devolved_spot_check(const eb_plan* plan, const char* const* removals,
                                        size_t removal_count, const uint64_t* probes,
                                        size_t probe_count, uint64_t m, const char* limit,
                                        int* out);

EB_API uint64_t eb_memory_budget_bits(void);
EB_API void eb_set_memory_budget_bits(uint64_t bits);

#ifdef __cplusplus
}
#endif

#endif /* ESSBASIS_H_ */
