/*
 * C interface to the SL_N(Z) cohomology certification library.
 *
 * The library builds the complex of interior Voronoi cells for
 * N in {2, 3, 4}, assembles its equivariant chain complex over the
 * rational group ring, and certifies the corank of the modified
 * Laplacian evaluated in a fixed orthogonal representation.  All
 * arithmetic is exact; every reported rank is backed by verified
 * kernel vectors.
 *
 * Conventions:
 *   - Functions return slncoh_status; on failure the thread-local
 *     message from slncoh_last_error() describes the problem.
 *   - Strings returned through char** are heap-allocated and must be
 *     released with slncoh_string_free().
 *   - Complex handles are opaque and must be released with
 *     slncoh_complex_free().
 */
#ifndef SLNCOH_H
#define SLNCOH_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum slncoh_status {
    SLNCOH_OK = 0,
    SLNCOH_MISMATCH = 1, /* certified corank differs from the expected value */
    SLNCOH_USAGE = 2,    /* precondition violated or malformed input data */
    SLNCOH_INTERNAL = 3  /* internal invariant failed */
} slncoh_status;

typedef struct slncoh_complex slncoh_complex;

typedef struct slncoh_certificate {
    int n;       /* N of SL_N(Z) */
    int q;       /* cohomological degree N-1 */
    int degree;  /* homological degree N(N-1)/2 */
    int size;    /* rows of the representation-evaluated Laplacian */
    int rank;    /* exact certified rank */
    int corank;  /* size - rank: the certified cohomology dimension */
    double seconds;
    int from_cache; /* nonzero when the certificate was loaded, not recomputed */
} slncoh_certificate;

/* ------------------------------------------------------------------ */
/* Complex handles                                                     */

/* Build the complex for SL_n(Z) from the built-in perfect seed forms. */
slncoh_status slncoh_complex_build(int n, slncoh_complex** out);

/* Parse a serialized complex document; the document is validated. */
slncoh_status slncoh_complex_from_json(const char* json, slncoh_complex** out);

/* Canonical serialized form; byte-identical for equal complexes. */
slncoh_status slncoh_complex_to_json(const slncoh_complex* c, char** out_json);

slncoh_status slncoh_complex_rank(const slncoh_complex* c, int* out_n);

/* Number of cell orbits of one degree (0 outside the degree range). */
slncoh_status slncoh_complex_orbit_count(const slncoh_complex* c, int degree, int* out_count);

slncoh_status slncoh_complex_degree_range(const slncoh_complex* c, int* out_bottom,
                                          int* out_top);

/* Modified Laplacian of one degree as a group-ring matrix document. */
slncoh_status slncoh_laplacian_to_json(const slncoh_complex* c, int degree, char** out_json);

void slncoh_complex_free(slncoh_complex* c);

/* ------------------------------------------------------------------ */
/* Pipeline                                                            */

/*
 * Certify the corank of the evaluated modified Laplacian at the degree
 * carrying H^{N-1}(SL_n(Z), -).  cache_dir NULL selects the SLNCOH_CACHE
 * environment variable, then ".slncoh-cache"; use_cache zero disables
 * reading and writing of cached artifacts.  Either output pointer may
 * be NULL; out_json receives the stable certificate document.
 */
slncoh_status slncoh_certify(int n, const char* cache_dir, int use_cache,
                             slncoh_certificate* out_cert, char** out_json);

/*
 * Run every named invariant check on a freshly built complex and
 * representation.  Returns SLNCOH_OK when the suite ran; *out_ok tells
 * whether all checks passed.  The report lists each check by name.
 */
slncoh_status slncoh_verify(int n, char** out_report_json, int* out_ok);

/* Representation document with one entry per elementary generator. */
slncoh_status slncoh_rep_to_json(int n, char** out_json);

/* ------------------------------------------------------------------ */
/* Utilities                                                           */

/* Message for the most recent failure on this thread; never NULL. */
const char* slncoh_last_error(void);

void slncoh_string_free(char* s);

const char* slncoh_version(void);

#ifdef __cplusplus
}
#endif

#endif /* SLNCOH_H */
