/**
 * JSON serialization of the complex, group-ring matrices and certificates.
 *
 * All documents are exact: rationals are written as "num/den" strings
 * (denominator omitted when it is one), group elements as nested row-major
 * integer arrays, and every list is emitted in its canonical order, so a
 * given object always produces the same bytes.  Deserialization validates
 * shapes and value ranges and throws data_error on malformed documents.
 */
#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "cellcomplex.hpp"
#include "groupring.hpp"
#include "reps.hpp"

namespace slncoh {

using Json = nlohmann::ordered_json;

Json int_matrix_to_json(const IntMat& m);
IntMat int_matrix_from_json(const Json& j);

Json rat_matrix_to_json(const RatMat& m);
RatMat rat_matrix_from_json(const Json& j);

/**
 * Group-ring matrix as {N, degree, rows, cols, entries: [{row, col,
 * terms: [{g, coeff}]}]}.  Entries appear in row-major order, terms in
 * canonical element order, zero entries are omitted.  The degree field
 * is caller-supplied metadata (the boundary or Laplacian degree).
 */
Json ring_matrix_to_json(const GroupRingMatrix& m, int n, int degree);
GroupRingMatrix ring_matrix_from_json(const Json& j, int* n_out = nullptr,
                                      int* degree_out = nullptr);

/**
 * A cell complex parsed back from its document form: the orbit catalog
 * (with idempotents rebuilt from the stabilizer records) plus the
 * expanded boundary maps, indexed by degree like CellComplex::orbits.
 */
struct ComplexDocument {
    int rank = 0;
    std::vector<std::vector<CellOrbit>> orbits;
    /** differentials[k] is the degree-k boundary map (empty off-range). */
    std::vector<GroupRingMatrix> differentials;

    int top_degree() const { return rank * (rank + 1) / 2 - 1; }
    int bottom_degree() const { return rank - 1; }
    int orbit_count(int degree) const;
};

/**
 * Serialize to {N, orbits, differentials}.  Orbits are listed in
 * degree-descending catalog order; boundary maps are written expanded,
 * one record per degree from top down to bottom+1.
 */
Json complex_to_json(const CellComplex& c);
Json complex_to_json(const ComplexDocument& d);
ComplexDocument complex_from_json(const Json& j);

/**
 * Debugging document {p, dim, entries: [{g, m}]} for a representation,
 * with one dense rational matrix per requested group element.
 */
Json rep_to_json(const OrthogonalRep& rep, const std::vector<int>& elements);

/** j.dump with the project-wide layout plus a trailing newline. */
std::string json_print(const Json& j);

/** FNV-1a content hash, printed as 16 hex digits. */
std::string content_hash(const std::string& bytes);

}  // namespace slncoh
