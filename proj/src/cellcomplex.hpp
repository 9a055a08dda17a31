/**
 * The equivariant cell complex of interior Voronoi cells.
 *
 * Cells are encoded by their sets of minimal vectors; the cell of a set m
 * is the convex hull of the rank-one forms vv^t with v in m.  Starting
 * from the perfect-form top cells, lower cells are found as polytope
 * facets, kept when their barycentre form is positive definite (interior
 * cells), and grouped into SL_N(Z)-orbits by barycentre equivalence.
 *
 * Each orbit representative carries its stabilizer with per-element
 * orientation signs and the resulting averaging idempotent.  The boundary
 * maps are stored in factored form, one (sign, witness) pair per facet;
 * the expanded group-ring matrices and the (modified) Laplacians are
 * assembled from these on demand.
 */
#pragma once

#include <vector>

#include "forms.hpp"
#include "groupring.hpp"
#include "isometry.hpp"

namespace slncoh {

struct CellOrbit {
    int degree = 0;
    /** Canonical representatives of the +/- pairs of minimal vectors. */
    std::vector<LatVec> vectors;
    RatMat barycentre;
    /** Indices into `vectors` whose rank-one forms span the cell. */
    std::vector<int> orientation_basis;
    std::vector<GroupElem> stabilizer;
    /** Orientation sign of the matching stabilizer element. */
    std::vector<int> eta;
    /** (1/|stabilizer|) * sum of eta(g) * g. */
    GroupRingElem idempotent;
};

/**
 * One factored boundary contribution: the facet of column orbit `col`
 * obtained by moving row orbit `row` with `g` enters the boundary map
 * with the given orientation sign.  The full group-ring entry at
 * (row, col) is the sum over its terms of sign * v_row * g.
 */
struct BoundaryTerm {
    int row = 0;
    int col = 0;
    int sign = 0;
    GroupElem g;
};

struct CellComplex {
    int rank = 0;  // size N of the matrices in SL_N(Z)
    /** orbits[k] holds the degree-k representatives in discovery order. */
    std::vector<std::vector<CellOrbit>> orbits;
    /** boundary[k] holds the factored terms of the degree-k boundary map. */
    std::vector<std::vector<BoundaryTerm>> boundary;

    int top_degree() const { return rank * (rank + 1) / 2 - 1; }
    int bottom_degree() const { return rank - 1; }
    int orbit_count(int degree) const;
};

/**
 * Build the complex for SL_n(Z) from the given perfect seed forms.
 * Seeds must be pairwise inequivalent perfect n x n forms covering all
 * top cells; the one-argument overload uses the built-in seed table.
 */
CellComplex build_complex(int n, const std::vector<IntMat>& seeds);
CellComplex build_complex(int n);

/**
 * Orientation sign of g as a map from `tau` onto a cell of `sigma`:
 * the moved cell must be sigma itself (equal degrees) or a facet of
 * sigma, otherwise this is a contract_error.  Signs compare the moved
 * orientation basis of tau against the basis of sigma, extending by an
 * appended rank-one form in the facet case.
 */
int eta_sign(const CellOrbit& tau, const CellOrbit& sigma, const GroupElem& g);

/**
 * Expanded boundary map of the given degree as a group-ring matrix with
 * rows indexed by degree-1 orbits and columns by degree orbits.  Out of
 * range degrees yield a matrix with zero rows and/or columns.
 */
GroupRingMatrix differential(const CellComplex& c, int degree);

/** Diagonal matrix of the characteristic idempotents of one degree. */
GroupRingMatrix idempotent_diagonal(const CellComplex& c, int degree);

/** Laplacian star(d_n) * d_n + d_{n+1} * star(d_{n+1}) of one degree. */
GroupRingMatrix laplacian(const CellComplex& c, int degree);

/** Laplacian plus diag(1 - v): acts as the identity off the complex. */
GroupRingMatrix laplacian_prime(const CellComplex& c, int degree);

}  // namespace slncoh
