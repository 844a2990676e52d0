#ifndef FWC_FWC_H
#define FWC_FWC_H

/*
 * C interface to the trace-code library. Handles are opaque; every call
 * returns an fwc_status and, on failure, leaves a message retrievable with
 * fwc_last_error_message() on the calling thread. Strings returned through
 * char** out-parameters are owned by the caller and freed with
 * fwc_string_free().
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(FWC_BUILDING_LIBRARY)
#    define FWC_API __declspec(dllexport)
#  else
#    define FWC_API __declspec(dllimport)
#  endif
#else
#  define FWC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fwc_status {
    FWC_OK = 0,
    FWC_ERR_INVALID_ARGUMENT = 1,
    FWC_ERR_DOMAIN = 2,
    FWC_ERR_BUDGET = 3,
    FWC_ERR_MISMATCH = 4,  /* a report was produced but some check failed */
    FWC_ERR_CONSTANCY = 5,
    FWC_ERR_IO = 6,
    FWC_ERR_INTERNAL = 7
} fwc_status;

typedef struct fwc_field fwc_field;
typedef struct fwc_code fwc_code;

FWC_API const char* fwc_version(void);
FWC_API const char* fwc_last_error_message(void);
FWC_API const char* fwc_status_name(fwc_status status);
FWC_API void fwc_string_free(char* s);

/* modulus: m + 1 coefficients, constant first, or NULL to search for one. */
FWC_API fwc_status fwc_field_create(uint32_t p, uint32_t m, const uint32_t* modulus, size_t modulus_len,
                                    fwc_field** out);
FWC_API void fwc_field_destroy(fwc_field* field);
/* "p=3;m=2;modulus=2,1,1" */
FWC_API fwc_status fwc_field_describe(const fwc_field* field, char** out);
/* JSON summary: description, xi, its order, trace of every element when small. */
FWC_API fwc_status fwc_field_info_json(const fwc_field* field, char** out);

/* variant: "lift" or "units"; N is ignored for "units". */
FWC_API fwc_status fwc_code_create(const fwc_field* field, uint64_t N, const char* variant, fwc_code** out);
FWC_API void fwc_code_destroy(fwc_code* code);
FWC_API fwc_status fwc_code_params_json(const fwc_code* code, char** out);
/* r = r[0] + r[1] u + r[2] v + r[3] uv, field elements by index. */
FWC_API fwc_status fwc_code_lee_weight(const fwc_code* code, const uint64_t r[4], uint64_t* out);

typedef struct fwc_analyze_options {
    const char* method; /* "auto", "exhaustive", "class", "ideal" */
    uint64_t samples;   /* per class (units for "ideal") */
    uint64_t seed;
    uint64_t work_budget;
    unsigned threads; /* 0: hardware parallelism */
    int dual;         /* nonzero: run the dual-distance search */
    unsigned dual_cap;
} fwc_analyze_options;

typedef struct fwc_verify_options {
    uint64_t trials;
    uint64_t seed;
    int subcode_only;
} fwc_verify_options;

FWC_API void fwc_analyze_options_init(fwc_analyze_options* opts);
FWC_API void fwc_verify_options_init(fwc_verify_options* opts);

/* On FWC_OK or FWC_ERR_MISMATCH *json_out holds the report. */
FWC_API fwc_status fwc_analyze(const fwc_code* code, const fwc_analyze_options* opts, char** json_out);
FWC_API fwc_status fwc_dual(const fwc_code* code, unsigned cap, uint64_t work_budget, unsigned threads, char** json_out);
FWC_API fwc_status fwc_verify(const fwc_code* code, const fwc_verify_options* opts, char** json_out);

/* Rows [first, first + count) of the Gray image, one byte per symbol, plus a
 * JSON sidecar at path + ".json". */
FWC_API fwc_status fwc_export_codewords(const fwc_code* code, const char* path, uint64_t first, uint64_t count);

FWC_API fwc_status fwc_griesmer_sum(uint64_t k, uint64_t d, uint64_t p, uint64_t* out);
FWC_API fwc_status fwc_griesmer_json(uint64_t n, uint64_t k, uint64_t d, uint64_t p, char** json_out);

/* Converts the "rows" array of a report to CSV with header weight,frequency. */
FWC_API fwc_status fwc_report_rows_csv(const char* report_json, char** csv_out);

#ifdef __cplusplus
}
#endif

#endif /* FWC_FWC_H */
