#include "cellcomplex.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "polyhedra.hpp"

namespace slncoh {

namespace {

IntVec flatten_form(const IntMat& m) {
    IntVec out;
    out.reserve(static_cast<std::size_t>(m.rows()) * m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) out.push_back(m.at(i, j));
    return out;
}

/**
 * Coordinates on the span of a cell's orientation basis.  `rows` holds
 * the flattened basis forms; `cols` marks pivot positions where the rows
 * are invertible, so that a vector t of the span is recovered exactly as
 * span_coords(t) * rows.
 */
struct SpanCoords {
    RatMat rows;
    std::vector<int> cols;
    RatMat inv;  // inverse of the pivot column block
};

SpanCoords make_span_coords(const CellOrbit& o) {
    const int k = static_cast<int>(o.orientation_basis.size());
    const int nn = o.barycentre.rows() * o.barycentre.cols();
    SpanCoords s;
    s.rows = RatMat(k, nn);
    for (int i = 0; i < k; ++i) {
        IntVec f = flatten_form(rank_one(o.vectors[o.orientation_basis[i]]));
        for (int j = 0; j < nn; ++j) s.rows.at(i, j) = Rat(f[j]);
    }
    std::vector<int> pivots;
    rref(s.rows, &pivots);
    if (static_cast<int>(pivots.size()) != k)
        throw internal_error("cellcomplex: orientation basis is not independent");
    s.cols = pivots;
    RatMat block(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) block.at(i, j) = s.rows.at(i, pivots[j]);
    auto inv = inverse(block);
    if (!inv) throw internal_error("cellcomplex: pivot block not invertible");
    s.inv = *inv;
    return s;
}

/** Coefficients of t in the orientation basis; t must lie in the span. */
RatVec span_coords(const SpanCoords& s, const IntVec& t) {
    const int k = s.rows.rows();
    RatVec x(k);
    for (int j = 0; j < k; ++j) {
        Rat acc = 0;
        for (int i = 0; i < k; ++i) acc += Rat(t[s.cols[i]]) * s.inv.at(i, j);
        x[j] = acc;
    }
    for (int j = 0; j < static_cast<int>(t.size()); ++j) {
        Rat acc = 0;
        for (int i = 0; i < k; ++i) acc += x[i] * s.rows.at(i, j);
        if (acc != Rat(t[j]))
            throw internal_error("cellcomplex: form outside the span of the cell");
    }
    return x;
}

int sign_of(const Rat& d) {
    if (d == 0) throw internal_error("cellcomplex: degenerate orientation change");
    return d > 0 ? 1 : -1;
}

/**
 * Sign of g carrying tau's orientation basis into the span charted by
 * `sc` (used with sc of tau itself for stabilizer elements, and with sc
 * of an equal-degree target for transporters).
 */
int transport_sign(const CellOrbit& tau, const SpanCoords& sc, const IntMat& g) {
    const int k = static_cast<int>(tau.orientation_basis.size());
    RatMat x(k, k);
    for (int i = 0; i < k; ++i) {
        IntVec row =
            flatten_form(rank_one(act_vector(tau.vectors[tau.orientation_basis[i]], g)));
        RatVec co = span_coords(sc, row);
        for (int j = 0; j < k; ++j) x.at(i, j) = co[j];
    }
    return sign_of(det_exact(x));
}

/**
 * Sign of g carrying tau onto the facet of sigma with vector set
 * `facet_vectors`: the moved orientation basis of tau, extended by the
 * rank-one form of a minimal vector of sigma outside the facet, is
 * compared against sigma's basis.  Every choice of appended vector gives
 * the same sign because all candidates lie on the same side of the facet.
 */
int facet_sign(const CellOrbit& tau, const CellOrbit& sigma, const SpanCoords& sc,
               const IntMat& g, const std::vector<LatVec>& facet_vectors) {
    const int k = static_cast<int>(sigma.orientation_basis.size());
    if (static_cast<int>(tau.orientation_basis.size()) != k - 1)
        throw internal_error("cellcomplex: facet basis size mismatch");
    RatMat x(k, k);
    for (int i = 0; i + 1 < k; ++i) {
        IntVec row =
            flatten_form(rank_one(act_vector(tau.vectors[tau.orientation_basis[i]], g)));
        RatVec co = span_coords(sc, row);
        for (int j = 0; j < k; ++j) x.at(i, j) = co[j];
    }
    const LatVec* extra = nullptr;
    for (const LatVec& v : sigma.vectors) {
        if (!std::binary_search(facet_vectors.begin(), facet_vectors.end(), v, lex_less)) {
            extra = &v;
            break;
        }
    }
    if (extra == nullptr)
        throw internal_error("cellcomplex: facet uses every minimal vector of its cell");
    RatVec co = span_coords(sc, flatten_form(rank_one(*extra)));
    for (int j = 0; j < k; ++j) x.at(k - 1, j) = co[j];
    return sign_of(det_exact(x));
}

/** First subsequence of the rank-one forms that spans the cell. */
std::vector<int> greedy_orientation_basis(const std::vector<LatVec>& vectors, int need,
                                          int nn) {
    std::vector<int> picked;
    std::vector<IntVec> rows;
    for (int i = 0; i < static_cast<int>(vectors.size()); ++i) {
        if (static_cast<int>(picked.size()) == need) break;
        rows.push_back(flatten_form(rank_one(vectors[i])));
        IntMat m(static_cast<int>(rows.size()), nn);
        for (int r = 0; r < m.rows(); ++r)
            for (int j = 0; j < nn; ++j) m.at(r, j) = rows[r][j];
        if (rank_exact(m) == static_cast<int>(rows.size()))
            picked.push_back(i);
        else
            rows.pop_back();
    }
    if (static_cast<int>(picked.size()) != need)
        throw internal_error("cellcomplex: orientation basis short of the cell span");
    return picked;
}

/** Fill in degree, orientation data, stabilizer signs and the idempotent. */
void finalize_orbit(CellOrbit& o, int expected_degree) {
    if (!is_canonical_vector_set(o.vectors))
        throw internal_error("cellcomplex: orbit vector set is not canonical");
    const int nn = o.barycentre.rows() * o.barycentre.cols();
    if (rank_one_span_dim(o.vectors) != expected_degree + 1)
        throw internal_error("cellcomplex: cell degree does not match its span");
    o.degree = expected_degree;
    o.orientation_basis = greedy_orientation_basis(o.vectors, expected_degree + 1, nn);
    const SpanCoords sc = make_span_coords(o);

    o.stabilizer.clear();
    o.eta.clear();
    std::vector<IntMat> stab = stabilizer(o.barycentre);
    const Rat weight = Rat(1) / Rat(static_cast<long>(stab.size()));
    GroupRingElem::Builder builder;
    for (const IntMat& gm : stab) {
        if (act_vector_set(o.vectors, gm) != o.vectors)
            throw internal_error(
                "cellcomplex: stabilizer element does not preserve the minimal vectors");
        const int sign = transport_sign(o, sc, gm);
        o.stabilizer.push_back(GroupElem::from_matrix(gm));
        o.eta.push_back(sign);
        builder.add(o.stabilizer.back(), sign > 0 ? weight : -weight);
    }
    o.idempotent = builder.finish();
}

std::vector<RatMat> degree_barycentres(const std::vector<CellOrbit>& orbits) {
    std::vector<RatMat> out;
    out.reserve(orbits.size());
    for (const CellOrbit& o : orbits) out.push_back(o.barycentre);
    return out;
}

/** star(d_degree) * d_degree folded through the shared row idempotents:
 *  star(v g) * (v g') = g^-1 * v * g', saving a stabilizer-order factor
 *  over multiplying the expanded matrices. */
GroupRingMatrix differential_gram(const CellComplex& c, int degree) {
    const int cols = c.orbit_count(degree);
    std::vector<std::vector<const BoundaryTerm*>> by_row(c.orbit_count(degree - 1));
    for (const BoundaryTerm& t : c.boundary[degree]) by_row[t.row].push_back(&t);

    std::vector<std::vector<GroupRingElem::Builder>> acc(
        cols, std::vector<GroupRingElem::Builder>(cols));
    for (std::size_t r = 0; r < by_row.size(); ++r) {
        const GroupRingElem& v = c.orbits[degree - 1][r].idempotent;
        for (const BoundaryTerm* a : by_row[r]) {
            const GroupRingElem left =
                GroupRingElem::from_term(a->g.inverse(), Rat(1)) * v;
            for (const BoundaryTerm* b : by_row[r]) {
                const GroupRingElem mid = left * GroupRingElem::from_term(b->g, Rat(1));
                acc[a->col][b->col].add_scaled(mid, Rat(a->sign * b->sign));
            }
        }
    }
    GroupRingMatrix out(cols, cols);
    for (int i = 0; i < cols; ++i)
        for (int j = 0; j < cols; ++j) out.at(i, j) = acc[i][j].finish();
    return out;
}

}  // namespace

int CellComplex::orbit_count(int degree) const {
    if (degree < 0 || degree >= static_cast<int>(orbits.size())) return 0;
    return static_cast<int>(orbits[degree].size());
}

CellComplex build_complex(int n, const std::vector<IntMat>& seeds) {
    if (n < 2 || n > kMaxGroupDim)
        throw contract_error("build_complex: rank must be between 2 and 4");
    if (seeds.empty()) throw contract_error("build_complex: no seed forms given");

    CellComplex c;
    c.rank = n;
    const int top = c.top_degree();
    const int bottom = c.bottom_degree();
    c.orbits.assign(top + 1, {});
    c.boundary.assign(top + 1, {});

    for (const IntMat& seed : seeds) {
        if (seed.rows() != n || seed.cols() != n)
            throw contract_error("build_complex: seed size does not match the rank");
        const RatMat q = to_rational(seed);
        if (!is_perfect(q)) throw data_error("build_complex: seed form is not perfect");
        CellOrbit o;
        o.vectors = minimal_vectors(q).vectors;
        o.barycentre = barycentre(o.vectors);
        if (!is_positive_definite(o.barycentre))
            throw internal_error("cellcomplex: top cell barycentre not positive definite");
        if (match_orbit(o.barycentre, degree_barycentres(c.orbits[top])))
            throw data_error("build_complex: seed forms lie in one orbit");
        finalize_orbit(o, top);
        c.orbits[top].push_back(std::move(o));
    }

    // Walk the degrees downward.  Every representative's polytope of
    // rank-one forms is enumerated once; interior facets are matched into
    // the catalog one degree down (extending it when the orbit is new)
    // and recorded, then turned into boundary terms once the lower degree
    // is complete.
    for (int deg = top; deg > bottom; --deg) {
        struct FacetRecord {
            int col;
            int row;
            IntMat witness;
            std::vector<LatVec> vectors;
        };
        std::vector<FacetRecord> records;
        std::vector<RatMat> catalog;
        for (int col = 0; col < c.orbit_count(deg); ++col) {
            const CellOrbit& sigma = c.orbits[deg][col];
            std::vector<IntVec> pts;
            pts.reserve(sigma.vectors.size());
            for (const LatVec& v : sigma.vectors) pts.push_back(flatten_form(rank_one(v)));
            for (const Facet& f : facets(pts)) {
                std::vector<LatVec> sub;
                sub.reserve(f.vertex_indices.size());
                for (int idx : f.vertex_indices) sub.push_back(sigma.vectors[idx]);
                RatMat b = barycentre(sub);
                if (!is_positive_definite(b)) continue;  // cell on the boundary
                auto hit = match_orbit(b, catalog);
                int row;
                IntMat witness(n, n);
                if (hit) {
                    row = hit->index;
                    witness = hit->witness;
                } else {
                    CellOrbit t;
                    t.vectors = sub;
                    t.barycentre = b;
                    finalize_orbit(t, deg - 1);
                    row = c.orbit_count(deg - 1);
                    c.orbits[deg - 1].push_back(std::move(t));
                    catalog.push_back(b);
                    witness = IntMat::identity(n);
                }
                if (act_vector_set(c.orbits[deg - 1][row].vectors, witness) != sub)
                    throw internal_error(
                        "cellcomplex: orbit witness does not carry the minimal vectors");
                records.push_back({col, row, std::move(witness), std::move(sub)});
            }
        }
        std::vector<SpanCoords> coords;
        coords.reserve(c.orbits[deg].size());
        for (const CellOrbit& sigma : c.orbits[deg]) coords.push_back(make_span_coords(sigma));
        for (const FacetRecord& r : records) {
            const CellOrbit& tau = c.orbits[deg - 1][r.row];
            const CellOrbit& sigma = c.orbits[deg][r.col];
            const int sign = facet_sign(tau, sigma, coords[r.col], r.witness, r.vectors);
            c.boundary[deg].push_back({r.row, r.col, sign, GroupElem::from_matrix(r.witness)});
        }
    }
    return c;
}

CellComplex build_complex(int n) { return build_complex(n, perfect_seeds(n)); }

int eta_sign(const CellOrbit& tau, const CellOrbit& sigma, const GroupElem& g) {
    const IntMat gm = g.matrix();
    const std::vector<LatVec> moved = act_vector_set(tau.vectors, gm);
    if (tau.degree == sigma.degree) {
        if (moved != sigma.vectors)
            throw contract_error("eta_sign: element does not carry the cell onto the target");
        const SpanCoords sc = make_span_coords(sigma);
        return transport_sign(tau, sc, gm);
    }
    if (tau.degree + 1 == sigma.degree) {
        std::vector<IntVec> pts;
        pts.reserve(sigma.vectors.size());
        for (const LatVec& v : sigma.vectors) pts.push_back(flatten_form(rank_one(v)));
        bool is_facet = false;
        for (const Facet& f : facets(pts)) {
            std::vector<LatVec> sub;
            for (int idx : f.vertex_indices) sub.push_back(sigma.vectors[idx]);
            if (sub == moved) {
                is_facet = true;
                break;
            }
        }
        if (!is_facet)
            throw contract_error("eta_sign: the moved cell is not a facet of the target");
        const SpanCoords sc = make_span_coords(sigma);
        return facet_sign(tau, sigma, sc, gm, moved);
    }
    throw contract_error("eta_sign: cell degrees do not fit a face relation");
}

GroupRingMatrix differential(const CellComplex& c, int degree) {
    const int rows = c.orbit_count(degree - 1);
    const int cols = c.orbit_count(degree);
    GroupRingMatrix d(rows, cols);
    if (degree < 0 || degree >= static_cast<int>(c.boundary.size())) return d;
    std::map<std::pair<int, int>, GroupRingElem::Builder> acc;
    for (const BoundaryTerm& t : c.boundary[degree]) {
        const GroupRingElem translate =
            c.orbits[degree - 1][t.row].idempotent * GroupRingElem::from_term(t.g, Rat(1));
        acc[{t.row, t.col}].add_scaled(translate, Rat(t.sign));
    }
    for (auto& [key, builder] : acc) d.at(key.first, key.second) = builder.finish();
    return d;
}

GroupRingMatrix idempotent_diagonal(const CellComplex& c, int degree) {
    const int m = c.orbit_count(degree);
    GroupRingMatrix d(m, m);
    for (int i = 0; i < m; ++i) d.at(i, i) = c.orbits[degree][i].idempotent;
    return d;
}

GroupRingMatrix laplacian(const CellComplex& c, int degree) {
    if (degree < c.bottom_degree() || degree > c.top_degree())
        throw contract_error("laplacian: degree out of range");
    const int m = c.orbit_count(degree);
    GroupRingMatrix sum(m, m);
    if (degree > c.bottom_degree()) sum = sum + differential_gram(c, degree);
    if (degree < c.top_degree()) {
        const GroupRingMatrix d = differential(c, degree + 1);
        sum = sum + d * d.star();
    }
    return sum;
}

GroupRingMatrix laplacian_prime(const CellComplex& c, int degree) {
    GroupRingMatrix l = laplacian(c, degree);
    const GroupRingElem one = GroupRingElem::scalar(c.rank, Rat(1));
    for (int i = 0; i < l.rows(); ++i)
        l.at(i, i) = l.at(i, i) + one - c.orbits[degree][i].idempotent;
    return l;
}

}  // namespace slncoh
