/**
 * Isometries between positive definite rational forms over SL_N(Z).
 *
 * all_isometries(q1, q2) returns every integer g with determinant one and
 * g^T q1 g = q2 (that is, q1 . g = q2 in the right-action convention).
 * The search fixes a basis u_1..u_N of short vectors of q2 and assigns
 * images w_i among the vectors of q1 of the matching value, pruning on
 * partial Gram products; a complete assignment is accepted only if the
 * resulting matrix is integral with determinant one.  The search is
 * exhaustive, so the empty result certifies inequivalence.
 */
#pragma once

#include <optional>

#include "exactmat.hpp"
#include "forms.hpp"

namespace slncoh {

/** Every g in SL_N(Z) with g^T q1 g = q2, in canonical (lex) order. */
std::vector<IntMat> all_isometries(const RatMat& q1, const RatMat& q2);

/** First isometry found, or nullopt when the forms are inequivalent. */
std::optional<IntMat> first_isometry(const RatMat& q1, const RatMat& q2);

bool is_equivalent(const RatMat& q1, const RatMat& q2);

/** The stabilizer { g : g^T q g = q }; always contains the identity. */
std::vector<IntMat> stabilizer(const RatMat& q);

struct OrbitMatch {
    int index;      // position in the catalog
    IntMat witness; // catalog[index] . witness == q
};

/**
 * Locate the catalog entry equivalent to q.  The catalog must contain at
 * most one entry per equivalence class; the full list is always scanned
 * and a second match raises a contract_error.  Returns nullopt when no
 * entry is equivalent.
 */
std::optional<OrbitMatch> match_orbit(const RatMat& q,
                                      const std::vector<RatMat>& catalog);

}  // namespace slncoh
