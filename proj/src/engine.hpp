/**
 * Pipeline orchestration: build or load the complex, form the modified
 * Laplacian at the degree that carries H^{N-1}(SL_N(Z), -), evaluate it
 * under the certificate representation and certify the corank exactly.
 *
 * Intermediate artifacts (complex document, Laplacian document and the
 * certificate itself) are cached as JSON keyed by content hashes, so an
 * interrupted run resumes instead of recomputing.  The representation is
 * always rebuilt in process; its construction re-runs all of its own
 * structural checks, which is the point of an exact certificate.
 */
#pragma once

#include <string>
#include <vector>

#include "cellcomplex.hpp"
#include "reps.hpp"
#include "serialize.hpp"

namespace slncoh {

/** Homological degree N(N-1)/2 whose corank equals dim H^{N-1}. */
int target_degree(int n);

/** Trivial for N = 2 (sanity mode); the induced 156- and 105-dimensional
 *  representations for N = 3 and N = 4. */
OrthogonalRep certificate_representation(int n);

/** One-line description of the certificate representation. */
std::string representation_label(int n);

struct CohomologyCertificate {
    int n = 0;        // N of SL_N(Z)
    int q = 0;        // cohomological degree, N - 1
    int degree = 0;   // homological degree, N(N-1)/2
    std::string rep;  // coefficient representation label
    int size = 0;     // rows of the representation-evaluated Laplacian
    int rank = 0;     // exact certified rank
    int corank = 0;   // size - rank: the reported cohomology dimension
    double seconds = 0.0;    // wall clock of this call; not serialized
    bool from_cache = false; // loaded rather than recomputed
};

struct EngineOptions {
    /** Empty means: use SLNCOH_CACHE if set, else ".slncoh-cache". */
    std::string cache_dir;
    bool use_cache = true;
};

/** Flag value > SLNCOH_CACHE environment variable > ".slncoh-cache". */
std::string resolve_cache_dir(const std::string& flag_value);

CohomologyCertificate certify(int n, const EngineOptions& opts = {});

/** Stable fields only ({N, q, degree, rep, size, rank, corank} plus the
 *  input hashes); timing is deliberately excluded so that repeated runs
 *  emit identical bytes. */
Json certificate_to_json(const CohomologyCertificate& c,
                         const std::string& complex_hash,
                         const std::string& xi_hash);

/** Modified Laplacian assembled from a deserialized document. */
GroupRingMatrix document_laplacian_prime(const ComplexDocument& d, int degree);

/**
 * Independent route to the corank: the kernel of the evaluated modified
 * Laplacian equals ker pi(d_n) intersected with ker pi(star d_{n+1}) and
 * ker pi(1 - v).  Returns the dimension of that intersection.
 */
int hodge_kernel_dim(const CellComplex& c, int degree, const OrthogonalRep& rep);

struct CheckResult {
    std::string name;
    bool ok = false;
    std::string detail;
};

struct VerifyReport {
    int n = 0;
    std::vector<CheckResult> checks;
    bool ok = true;
};

/** Builds the complex afresh and runs every named invariant check. */
VerifyReport verify_all(int n);

Json report_to_json(const VerifyReport& r);

}  // namespace slncoh
