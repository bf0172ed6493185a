#ifndef SSLAB_SSLAB_H
#define SSLAB_SSLAB_H

/* C interface to the sslab Subset Sum library.
 *
 * Every fallible call returns an sslab_status; on failure the message is
 * available from sslab_last_error() on the calling thread. Handles are
 * opaque and owned by the caller; strings returned through char** are
 * released with sslab_string_free. Item indices are 0-based here. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SSLAB_API __declspec(dllexport)
#else
#define SSLAB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sslab_status {
    SSLAB_OK = 0,
    SSLAB_INVALID_ARGUMENT = 1, /* null handle, unknown enum value */
    SSLAB_DOMAIN = 2,           /* value outside an operation's domain */
    SSLAB_CAPACITY = 3,         /* enumeration or table above the configured limits */
    SSLAB_CONTRACT = 4,         /* solver precondition violated */
    SSLAB_PARSE = 5,
    SSLAB_USE_DP = 6, /* target below 2n: use the pseudo-polynomial solver */
    SSLAB_IO = 7,
    SSLAB_INTERNAL = 8
} sslab_status;

typedef struct sslab_instance sslab_instance;
typedef struct sslab_rng sslab_rng;
typedef struct sslab_outcome sslab_outcome;
typedef struct sslab_reduction sslab_reduction;

SSLAB_API const char* sslab_version(void);
SSLAB_API const char* sslab_status_name(sslab_status status);
SSLAB_API const char* sslab_last_error(void);
SSLAB_API void sslab_string_free(char* s);

/* ---- instances ---- */

SSLAB_API sslab_status sslab_instance_from_u64(const uint64_t* weights, size_t n, uint64_t target,
                                               sslab_instance** out);
/* Weights and target as decimal strings, for values beyond 64 bits. */
SSLAB_API sslab_status sslab_instance_from_decimal(const char* const* weights, size_t n, const char* target,
                                                   sslab_instance** out);
SSLAB_API sslab_status sslab_instance_parse(const char* text, sslab_instance** out);
SSLAB_API sslab_status sslab_instance_read(const char* path, sslab_instance** out);
SSLAB_API sslab_status sslab_instance_write(const sslab_instance* instance, const char* path);
SSLAB_API sslab_status sslab_instance_format(const sslab_instance* instance, char** text);
SSLAB_API void sslab_instance_free(sslab_instance* instance);

SSLAB_API size_t sslab_instance_size(const sslab_instance* instance);
SSLAB_API sslab_status sslab_instance_weight(const sslab_instance* instance, size_t i, char** decimal);
SSLAB_API sslab_status sslab_instance_target(const sslab_instance* instance, char** decimal);
SSLAB_API sslab_status sslab_instance_total(const sslab_instance* instance, char** decimal);
/* n / log2 t; SSLAB_DOMAIN when t < 2. */
SSLAB_API sslab_status sslab_instance_density(const sslab_instance* instance, double* density);
/* Sets *is_solution to 1 when the hex mask selects items summing to t. */
SSLAB_API sslab_status sslab_instance_check_witness(const sslab_instance* instance, const char* hex,
                                                    int* is_solution);

/* ---- randomness ---- */

SSLAB_API sslab_status sslab_rng_new(uint64_t seed, sslab_rng** out);
SSLAB_API void sslab_rng_free(sslab_rng* rng);
SSLAB_API uint64_t sslab_rng_next(sslab_rng* rng);

/* ---- generators ---- */

typedef enum sslab_gen_kind {
    SSLAB_GEN_DENSITY = 0,         /* n items, t drawn so that n / log2 t ~ density */
    SSLAB_GEN_GEOMETRIC_PAIRS = 1, /* weights 1,1,3,3,9,9,...; t = one copy of each */
    SSLAB_GEN_PLANTED = 2,         /* random `bits`-bit weights, t = w(hidden subset) */
    SSLAB_GEN_ALL_EQUAL = 3,       /* n copies of `value` */
    SSLAB_GEN_SUPER_INCREASING = 4 /* weights 1,2,4,... */
} sslab_gen_kind;

typedef struct sslab_gen_params {
    sslab_gen_kind kind;
    size_t n;
    double density;     /* SSLAB_GEN_DENSITY */
    unsigned bits;      /* SSLAB_GEN_PLANTED */
    uint64_t value;     /* SSLAB_GEN_ALL_EQUAL */
    const char* target; /* decimal; ALL_EQUAL and SUPER_INCREASING. NULL: the first floor(n/2) items' sum */
} sslab_gen_params;

SSLAB_API void sslab_gen_params_init(sslab_gen_params* params);
/* planted_hex, when non-NULL, receives the hidden solution of a planted
 * instance (and NULL for the other kinds). */
SSLAB_API sslab_status sslab_generate(const sslab_gen_params* params, sslab_rng* rng, sslab_instance** out,
                                      char** planted_hex);

/* ---- analysis ---- */

typedef struct sslab_analysis {
    size_t n;
    uint64_t max_bin;
    uint64_t distinct_sums;
    uint64_t l2_norm_sq;
    int has_density;
    double density;
} sslab_analysis;

SSLAB_API sslab_status sslab_analyze(const sslab_instance* instance, size_t oracle_limit, sslab_analysis* out);

typedef enum sslab_regime { SSLAB_REGIME_SMALL_BIN = 0, SSLAB_REGIME_LARGE_BIN = 1, SSLAB_REGIME_GAP = 2 } sslab_regime;

typedef struct sslab_classification {
    size_t n;
    uint64_t beta;
    uint64_t distinct_sums;
    int has_density;
    double density;
    double epsilon;
    int small_bin;        /* beta <= 2^((0.5 - eps) n) */
    int large_bin;        /* beta >= 2^(0.661 n) */
    int many_sums;        /* sums >= 2^(0.997 n) */
    int sums_vs_bin_held; /* many_sums implies beta <= 2^(0.4996 n) */
    sslab_regime regime;
} sslab_classification;

SSLAB_API sslab_status sslab_classify(const sslab_instance* instance, size_t oracle_limit, double epsilon,
                                      sslab_classification* out);
SSLAB_API const char* sslab_regime_name(sslab_regime regime);

/* ---- solving ---- */

typedef enum sslab_algorithm {
    SSLAB_ALG_BRUTE = 0,
    SSLAB_ALG_DP = 1,
    SSLAB_ALG_MIM = 2,
    SSLAB_ALG_SS = 3,
    SSLAB_ALG_SAMPLER = 4,
    SSLAB_ALG_REPR = 5,
    SSLAB_ALG_FEWSUMS = 6,
    SSLAB_ALG_SMALLBIN = 7,
    SSLAB_ALG_LARGEBIN = 8,
    SSLAB_ALG_AUTO = 9,
    SSLAB_ALG_CLASSIFIED = 10
} sslab_algorithm;

SSLAB_API const char* sslab_algorithm_name(sslab_algorithm alg);
SSLAB_API sslab_status sslab_algorithm_from_name(const char* name, sslab_algorithm* alg);

typedef struct sslab_solve_options {
    sslab_algorithm alg;
    double epsilon;     /* smallbin, classified (default 1/6); auto (default 0.0004) */
    int has_epsilon;
    double gamma;       /* repr, fewsums; measured from the block when unset */
    int has_gamma;
    const size_t* block; /* repr, fewsums: 0-based item indices of M */
    size_t block_len;    /* 0 with block == NULL: the first floor(n/2) items */
    uint64_t budget;     /* step budget (sampler: number of samples) */
    int has_budget;
    size_t repetitions;  /* repr: passes (default 1); smallbin: 0 = n^2 */
    double sigma;        /* sampler */
    double budget_constant; /* auto */
    size_t oracle_limit;    /* classified */
} sslab_solve_options;

SSLAB_API void sslab_solve_options_init(sslab_solve_options* options);
SSLAB_API sslab_status sslab_solve(const sslab_instance* instance, const sslab_solve_options* options,
                                   sslab_rng* rng, sslab_outcome** out);

typedef struct sslab_counters {
    uint64_t sums_enumerated;
    uint64_t pairs_checked;
    uint64_t dict_lookups;
    uint64_t samples_drawn;
    uint64_t peak_retained;
    uint64_t list_entries;
    uint64_t steps;
} sslab_counters;

typedef struct sslab_iteration {
    int complementary;
    size_t s;
    size_t s1;
    size_t s2;
    uint64_t prime;
    uint64_t residue;
    uint64_t left_size;
    uint64_t right_size;
    uint64_t pairs_scanned;
    int skipped;
} sslab_iteration;

SSLAB_API int sslab_outcome_found(const sslab_outcome* outcome);
SSLAB_API int sslab_outcome_verified(const sslab_outcome* outcome);
SSLAB_API int sslab_outcome_budget_exhausted(const sslab_outcome* outcome);
/* Lowercase hex mask, bit i = item i. SSLAB_DOMAIN when nothing was found. */
SSLAB_API sslab_status sslab_outcome_witness_hex(const sslab_outcome* outcome, char** hex);
SSLAB_API const char* sslab_outcome_branch(const sslab_outcome* outcome);
SSLAB_API void sslab_outcome_counters(const sslab_outcome* outcome, sslab_counters* counters);
SSLAB_API size_t sslab_outcome_iteration_count(const sslab_outcome* outcome);
SSLAB_API sslab_status sslab_outcome_iteration(const sslab_outcome* outcome, size_t i, sslab_iteration* out);
SSLAB_API void sslab_outcome_free(sslab_outcome* outcome);

/* ---- bit-length reduction ---- */

SSLAB_API sslab_status sslab_reduce(const sslab_instance* instance, const char* bound_decimal, sslab_rng* rng,
                                    sslab_reduction** out);
/* A copy of the reduced instance (it may hold zero weights). */
SSLAB_API sslab_status sslab_reduction_instance(const sslab_reduction* reduction, sslab_instance** out);
SSLAB_API sslab_status sslab_reduction_prime(const sslab_reduction* reduction, char** decimal);
SSLAB_API uint64_t sslab_reduction_shift(const sslab_reduction* reduction);
SSLAB_API unsigned sslab_reduction_rounds(const sslab_reduction* reduction);
SSLAB_API void sslab_reduction_free(sslab_reduction* reduction);

typedef struct sslab_reduction_report {
    int solutions_preserved;
    int sums_preserved;
    int bins_preserved; /* -1 when B < 5 |w(2^[n])|^2 and the property is not evaluated */
    int bins_split_ok;
    uint64_t distinct_before;
    uint64_t distinct_after;
    uint64_t beta_before;
    uint64_t beta_after;
    uint64_t false_solutions;
    uint64_t lost_solutions;
} sslab_reduction_report;

SSLAB_API sslab_status sslab_reduction_check(const sslab_instance* original, const sslab_reduction* reduction,
                                             size_t oracle_limit, sslab_reduction_report* out);

/* ---- combinatorial checks ---- */

typedef enum sslab_check {
    SSLAB_CHECK_UDCP = 0,          /* the pair extracted from the instance is uniquely decodable */
    SSLAB_CHECK_L2IDENTITY = 1,    /* ||b||^2 = sum_i |B_(i/n)| 2^(n-i) */
    SSLAB_CHECK_CAUCHYSCHWARZ = 2, /* beta <= ||b_S|| ||b_T|| on every equi-partition (n <= 20) */
    SSLAB_CHECK_SUMSVSBIN = 3      /* sums >= 2^(0.997 n) implies beta <= 2^(0.4996 n) */
} sslab_check;

SSLAB_API const char* sslab_check_name(sslab_check check);
SSLAB_API sslab_status sslab_check_from_name(const char* name, sslab_check* check);
SSLAB_API sslab_status sslab_verify(const sslab_instance* instance, sslab_check check, size_t oracle_limit,
                                    int* holds);

#ifdef __cplusplus
}
#endif

#endif
