/**
 * Quadratic forms over Q and their short lattice vectors.
 *
 * Forms are symmetric rational matrices evaluated on integer column
 * vectors, q(v) = v^T q v.  Short vector enumeration runs on an exact
 * LDL^T factorisation, stepping each coordinate outward from its centre
 * until the budget is exhausted, so no floating point and no square roots
 * are involved anywhere.
 *
 * Vector sets are always kept in canonical form: one representative per
 * antipodal pair {v, -v} (first nonzero coordinate positive), sorted
 * lexicographically.  All cell-level machinery builds on such sets.
 *
 * The right action used throughout the library is
 *     (q . g)  = g^T q g        on forms,
 *     (v . g)  = g^T v          on vectors,
 * which makes the sum of rank-one forms of a vector set equivariant:
 * barycentre(m . g) = barycentre(m) . g.
 */
#pragma once

#include <vector>

#include "exactmat.hpp"

namespace slncoh {

using LatVec = std::vector<long>;

/** True when the first nonzero coordinate is positive (the zero vector is
 *  not canonical). */
bool is_canonical_vector(const LatVec& v);

/** The canonical representative of {v, -v}. */
LatVec canonical_vector(const LatVec& v);

bool lex_less(const LatVec& a, const LatVec& b);

/**
 * Canonicalise an arbitrary collection: one representative per antipodal
 * pair, sorted, duplicates removed.  Zero vectors are a contract_error.
 */
std::vector<LatVec> canonicalize_vector_set(const std::vector<LatVec>& vs);

/** True iff vs is nonempty, sorted, duplicate-free and all-canonical. */
bool is_canonical_vector_set(const std::vector<LatVec>& vs);

Rat eval_form(const RatMat& q, const LatVec& v);

/** The rank-one form v v^T. */
IntMat rank_one(const LatVec& v);

/**
 * Sum of the rank-one forms of the full antipodal closure of vs, i.e.
 * 2 * sum over the canonical representatives.  For the vector set of a
 * cell this is the cell's barycentre form, an interior point of the cell.
 */
RatMat barycentre(const std::vector<LatVec>& vs);

/** Dimension of the span of the rank-one forms of vs inside Sym_N. */
int rank_one_span_dim(const std::vector<LatVec>& vs);

struct ShortVectors {
    Rat min_value;                // minimum of q over nonzero integer vectors
    std::vector<LatVec> vectors;  // canonical set attaining it
};

/** Minimal vectors of a positive definite form (contract_error otherwise). */
ShortVectors minimal_vectors(const RatMat& q);

/** Canonical set of nonzero v with 0 < q(v) <= c; c >= 0 required. */
std::vector<LatVec> vectors_up_to(const RatMat& q, const Rat& c);

/** Canonical set of v with q(v) == c exactly. */
std::vector<LatVec> vectors_of_value(const RatMat& q, const Rat& c);

/**
 * Perfection: q is positive definite and the rank-one forms of its minimal
 * vectors span all of Sym_N (dimension N(N+1)/2).
 */
bool is_perfect(const RatMat& q);

/** Right action on forms: g^T q g. */
RatMat act_form(const RatMat& q, const IntMat& g);

/** Right action on vectors: g^T v. */
LatVec act_vector(const LatVec& v, const IntMat& g);

/** Canonical image of a canonical vector set under the right action. */
std::vector<LatVec> act_vector_set(const std::vector<LatVec>& vs, const IntMat& g);

/**
 * Representatives of the equivalence classes of perfect forms of minimal
 * value 2 in dimension N (N in 2..4): the root forms A_N, and additionally
 * D_4 when N = 4.
 */
std::vector<IntMat> perfect_seeds(int N);

}  // namespace slncoh
