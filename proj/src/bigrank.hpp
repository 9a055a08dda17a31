/**
 * Certified rank computation for integer matrices that are too large for
 * fraction-free elimination to be comfortable.
 *
 * The scheme: eliminate modulo a word-sized prime to get a candidate rank r
 * together with pivot rows I and pivot columns J; the submatrix A[I,J] is
 * invertible mod p, which already proves rank(A) >= r over Q.  For every
 * non-pivot column we then produce an exact rational kernel vector by p-adic
 * lifting (Dixon) against A[I,J] and verify A v = 0 over Z on the full
 * matrix.  n - r independent verified kernel vectors prove rank(A) <= r,
 * so the returned rank is unconditionally correct.
 *
 * When lifting fails (an unlucky prime) the computation escalates through a
 * fixed prime list and finally falls back to plain fraction-free elimination,
 * so the routine is total, deterministic and always exact.
 */
#pragma once

#include <cstdint>

#include "exactmat.hpp"

namespace slncoh {

struct RankCertificate {
    int rank = 0;
    // Integer kernel vectors, one per non-pivot column, content 1, first
    // nonzero entry positive, each verified to satisfy A v = 0.
    std::vector<IntVec> kernel;
    // Prime and pivot positions witnessing rank >= rank (0 when the Bareiss
    // fallback produced the result and no modular witness exists).
    std::uint64_t prime = 0;
    std::vector<int> pivot_rows, pivot_cols;
};

/** Rank of a mod p by Gaussian elimination; pivot positions optionally out. */
int rank_mod_p(const IntMat& a, std::uint64_t p,
               std::vector<int>* pivot_rows = nullptr,
               std::vector<int>* pivot_cols = nullptr);

RankCertificate certified_rank(const IntMat& a);
RankCertificate certified_rank(const RatMat& a);

}  // namespace slncoh
