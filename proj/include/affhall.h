/* C interface to the affhall engine. All strings returned through char** are owned by the
 * caller and must be released with ah_string_free. Handles are opaque. On failure a call
 * returns a nonzero status and ah_last_error() describes it (per thread). */
#ifndef AFFHALL_H
#define AFFHALL_H

#include <stddef.h>

#if defined(_WIN32)
#define AH_API __declspec(dllexport)
#else
#define AH_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
    AH_OK = 0,
    AH_E_MALFORMED = 1, /* unparsable or inconsistent input */
    AH_E_DOMAIN = 2,    /* input outside the mathematical domain */
    AH_E_BOUNDS = 3,    /* enumeration cap or index range */
    AH_E_WINDOW = 4,    /* truncation window problem */
    AH_E_INTERNAL = 5,
    AH_E_ARG = 6,       /* null pointer or bad enum value */
    AH_E_STALE = 7      /* convention record does not match this build */
} ah_status;

typedef enum { AH_FORMAT_JSON = 0, AH_FORMAT_TABLE = 1 } ah_format;

typedef enum { AH_TWIST_LITERAL = 0, AH_TWIST_OPPOSITE = 1, AH_TWIST_UNTWISTED = 2 } ah_twist;

typedef struct ah_rootsys ah_rootsys;
typedef struct ah_series ah_series;

AH_API const char* ah_version(void);
AH_API const char* ah_last_error(void);
AH_API void ah_string_free(char* s);

/* root systems: type in {A,B,C,D,E,F,G} */
AH_API ah_status ah_rootsys_new(char type, int rank, ah_rootsys** out);
AH_API void ah_rootsys_free(ah_rootsys* rs);
AH_API ah_status ah_rootsys_json(const ah_rootsys* rs, char** out);
AH_API ah_status ah_torsor_labels(const ah_rootsys* rs, long d, char** out);

/* lattice series */
AH_API void ah_series_free(ah_series* s);
AH_API ah_status ah_series_render(const ah_series* s, ah_format fmt, char** out);
AH_API ah_status ah_series_parse(const ah_rootsys* rs, const char* json, ah_series** out);
AH_API ah_status ah_series_equal(const ah_series* a, const ah_series* b, int* equal);
AH_API ah_status ah_series_size(const ah_series* s, size_t* n);
/* spec: "generic", "serre", "euler" or "point_count:<q>" */
AH_API ah_status ah_series_specialize(const ah_series* s, const char* spec, char** out);

/* b is a torsor label "f1,..,fr;m;-d"; H is the grade cutoff */
AH_API ah_status ah_eisenstein(const ah_rootsys* rs, const char* b, long H, int height_shift, ah_series** out);
AH_API ah_status ah_numerator(const ah_rootsys* rs, const char* b, long H, int height_shift, ah_series** out);
AH_API ah_status ah_hall(const ah_rootsys* rs, const char* b, long H, int closed, ah_twist rule, ah_series** out);
AH_API ah_status ah_weyl_kac(const ah_rootsys* rs, const char* b, long H, int direct, int imaginary, ah_series** out);
AH_API ah_status ah_theta_full(const ah_rootsys* rs, long d, long grade, ah_series** out);
/* f: comma-separated finite part, "" for zero */
AH_API ah_status ah_theta_zero(const ah_rootsys* rs, long d, const char* f, long order, ah_format fmt, char** out);
AH_API ah_status ah_blowup(const ah_rootsys* rs, const char* b, long order, const char* spec, ah_format fmt, char** out);
/* Serre model of genus g, Phi = (1 - s u)^(2g): coefficients u^0..u^n and the functional-equation residual */
AH_API ah_status ah_zeta(int genus, int n, const char* spec, ah_format fmt, char** out);

/* w: "e", "s0", "s1s0", "t:1,0", "t:1*s1"; *passed is 1 when the residual of `variant` vanishes */
AH_API ah_status ah_check_funceq(const ah_rootsys* rs, const char* b, long H, const char* w, int variant, int genus,
                                 int height_shift, char** out, int* passed);
AH_API ah_status ah_check_specializations(const ah_rootsys* rs, const char* b, long H, long order, char** out, int* passed);

/* kind: "subsheaves" (a=a1), "subbundles" (a=a1), "polar" (a=m, b=n), "symmetric" (a=n), "flags" (a=k1, b=k2) */
AH_API ah_status ah_oracle(const char* kind, long q, long a, long b, char** out);

/* rank-2 quot series (stream_json NULL: trivial bundle on P^1) and its functional-equation check */
AH_API ah_status ah_rank2(const char* stream_json, long order, int genus, int sL, int sz, char** out, int* passed);

/* convention record */
AH_API ah_status ah_conventions_resolve(char** out);
AH_API ah_status ah_conventions_hash(char** out);
/* validates a record; writes the resolved functional-equation variant (-1 when unresolved) */
AH_API ah_status ah_conventions_load(const char* json, int* funceq_variant);

#ifdef __cplusplus
}
#endif

#endif
