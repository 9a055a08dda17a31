/**
 * Facet enumeration for polytopes given by their vertices (integer points
 * in an ambient R^D).  The polytope is first re-expressed in exact affine
 * coordinates on its own hull, then built up one vertex at a time while a
 * complete facet description is maintained (incremental double
 * description / beneath-beyond, all over Q).
 *
 * A facet is reported through its vertex indices and a supporting affine
 * functional on the ambient space that vanishes on the facet and is
 * strictly positive on every other input point.  Results are verified
 * against that definition before being returned.
 */
#pragma once

#include "exactmat.hpp"

namespace slncoh {

struct Facet {
    std::vector<int> vertex_indices;  // sorted positions in the input list
    RatVec functional;                // lambda . x + offset == 0 on the facet
    Rat offset;                       //   and > 0 on every other input point
};

/**
 * Dimension of the affine hull of the points (0 for a single point).
 * Points must be nonempty, of equal length and pairwise distinct.
 */
int affine_dim(const std::vector<IntVec>& pts);

/**
 * All facets of conv(pts), canonically ordered by vertex index lists.
 * Requires affine_dim(pts) >= 1.  Input points that are not extreme are
 * permitted; they simply end up on no facet (interior) or on the facets
 * whose supporting functional they satisfy.
 */
std::vector<Facet> facets(const std::vector<IntVec>& pts);

}  // namespace slncoh
