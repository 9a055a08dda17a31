#include "serialize.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <set>
#include <utility>

#include "forms.hpp"

namespace slncoh {

namespace {

long get_long(const Json& j, const char* what) {
    if (!j.is_number_integer()) throw data_error(std::string(what) + ": expected an integer");
    return j.get<long>();
}

int get_int(const Json& j, const char* what) {
    const long v = get_long(j, what);
    if (v < -(1L << 30) || v > (1L << 30))
        throw data_error(std::string(what) + ": integer out of range");
    return static_cast<int>(v);
}

const Json& get_key(const Json& j, const char* key) {
    if (!j.is_object()) throw data_error(std::string("json: expected an object with '") + key + "'");
    auto it = j.find(key);
    if (it == j.end()) throw data_error(std::string("json: missing key '") + key + "'");
    return *it;
}

Rat get_rat(const Json& j, const char* what) {
    if (!j.is_string()) throw data_error(std::string(what) + ": expected a rational string");
    try {
        return rat_parse(j.get<std::string>());
    } catch (const error& e) {
        throw data_error(std::string(what) + ": " + e.what());
    }
}

GroupElem group_elem_from_json(const Json& j, int n) {
    IntMat m = int_matrix_from_json(j);
    if (m.rows() != n || m.cols() != n)
        throw data_error("group element: matrix has the wrong size");
    try {
        return GroupElem::from_matrix(m);
    } catch (const error& e) {
        throw data_error(std::string("group element: ") + e.what());
    }
}

Json terms_to_json(const GroupRingElem& e) {
    Json out = Json::array();
    for (const auto& [g, c] : e.terms()) {
        Json t;
        t["g"] = int_matrix_to_json(g.matrix());
        t["coeff"] = rat_print(c);
        out.push_back(std::move(t));
    }
    return out;
}

GroupRingElem terms_from_json(const Json& j, int n) {
    if (!j.is_array() || j.empty()) throw data_error("terms: expected a nonempty array");
    GroupRingElem::Builder b;
    for (const Json& t : j) {
        const Rat c = get_rat(get_key(t, "coeff"), "coeff");
        if (c == 0) throw data_error("terms: zero coefficient stored");
        b.add(group_elem_from_json(get_key(t, "g"), n), c);
    }
    GroupRingElem e = b.finish();
    if (e.is_zero()) throw data_error("terms: terms cancel to zero");
    return e;
}

/** {degree, rows, cols, entries} without the leading N key. */
Json ring_matrix_body(const GroupRingMatrix& m, int degree) {
    Json out;
    out["degree"] = degree;
    out["rows"] = m.rows();
    out["cols"] = m.cols();
    Json entries = Json::array();
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            if (m.at(i, j).is_zero()) continue;
            Json e;
            e["row"] = i;
            e["col"] = j;
            e["terms"] = terms_to_json(m.at(i, j));
            entries.push_back(std::move(e));
        }
    out["entries"] = std::move(entries);
    return out;
}

GroupRingMatrix ring_matrix_from_body(const Json& j, int n, int* degree_out) {
    const int degree = get_int(get_key(j, "degree"), "degree");
    const int rows = get_int(get_key(j, "rows"), "rows");
    const int cols = get_int(get_key(j, "cols"), "cols");
    if (rows < 0 || cols < 0) throw data_error("ring matrix: negative size");
    GroupRingMatrix m(rows, cols);
    const Json& entries = get_key(j, "entries");
    if (!entries.is_array()) throw data_error("ring matrix: entries must be an array");
    std::set<std::pair<int, int>> seen;
    for (const Json& e : entries) {
        const int r = get_int(get_key(e, "row"), "row");
        const int c = get_int(get_key(e, "col"), "col");
        if (r < 0 || r >= rows || c < 0 || c >= cols)
            throw data_error("ring matrix: entry position out of range");
        if (!seen.insert({r, c}).second)
            throw data_error("ring matrix: duplicate entry position");
        m.at(r, c) = terms_from_json(get_key(e, "terms"), n);
    }
    if (degree_out) *degree_out = degree;
    return m;
}

Json orbit_to_json(const CellOrbit& o) {
    Json out;
    out["degree"] = o.degree;
    Json vecs = Json::array();
    for (const LatVec& v : o.vectors) vecs.push_back(v);
    out["min_vectors"] = std::move(vecs);
    out["orientation_basis"] = o.orientation_basis;
    Json stab = Json::array();
    for (std::size_t k = 0; k < o.stabilizer.size(); ++k) {
        Json s;
        s["g"] = int_matrix_to_json(o.stabilizer[k].matrix());
        s["sign"] = o.eta[k];
        stab.push_back(std::move(s));
    }
    out["stabilizer"] = std::move(stab);
    out["barycentre"] = rat_matrix_to_json(o.barycentre);
    return out;
}

CellOrbit orbit_from_json(const Json& j, int n, int top, int bottom) {
    CellOrbit o;
    o.degree = get_int(get_key(j, "degree"), "degree");
    if (o.degree < bottom || o.degree > top)
        throw data_error("orbit: degree out of range");

    const Json& vecs = get_key(j, "min_vectors");
    if (!vecs.is_array() || vecs.empty())
        throw data_error("orbit: min_vectors must be a nonempty array");
    for (const Json& vj : vecs) {
        if (!vj.is_array() || static_cast<int>(vj.size()) != n)
            throw data_error("orbit: minimal vector has the wrong length");
        LatVec v;
        for (const Json& x : vj) v.push_back(get_long(x, "min_vectors"));
        o.vectors.push_back(std::move(v));
    }
    if (!is_canonical_vector_set(o.vectors))
        throw data_error("orbit: minimal vectors are not in canonical form");

    o.barycentre = rat_matrix_from_json(get_key(j, "barycentre"));
    if (o.barycentre.rows() != n || o.barycentre.cols() != n)
        throw data_error("orbit: barycentre has the wrong size");
    IntMat twice(n, n);
    for (const LatVec& v : o.vectors) {
        const IntMat r = rank_one(v);
        twice = twice + r + r;
    }
    if (o.barycentre != to_rational(twice))
        throw data_error("orbit: barycentre does not match the minimal vectors");

    const Json& basis = get_key(j, "orientation_basis");
    if (!basis.is_array() || static_cast<int>(basis.size()) != o.degree + 1)
        throw data_error("orbit: orientation basis must have degree+1 indices");
    int prev = -1;
    for (const Json& x : basis) {
        const int idx = get_int(x, "orientation_basis");
        if (idx <= prev || idx >= static_cast<int>(o.vectors.size()))
            throw data_error("orbit: orientation basis indices must be increasing and in range");
        o.orientation_basis.push_back(idx);
        prev = idx;
    }

    const Json& stab = get_key(j, "stabilizer");
    if (!stab.is_array() || stab.empty())
        throw data_error("orbit: stabilizer must be a nonempty array");
    bool has_identity = false;
    GroupRingElem::Builder idem;
    const Rat inv_order = Rat(1) / Rat(static_cast<long>(stab.size()));
    for (const Json& s : stab) {
        const GroupElem g = group_elem_from_json(get_key(s, "g"), n);
        const int sign = get_int(get_key(s, "sign"), "sign");
        if (sign != 1 && sign != -1) throw data_error("orbit: stabilizer sign must be +/-1");
        if (g == GroupElem::identity(n)) {
            if (sign != 1) throw data_error("orbit: identity must carry sign +1");
            has_identity = true;
        }
        o.stabilizer.push_back(g);
        o.eta.push_back(sign);
        idem.add(g, Rat(sign) * inv_order);
    }
    if (!has_identity) throw data_error("orbit: stabilizer does not contain the identity");
    o.idempotent = idem.finish();
    return o;
}

}  // namespace

Json int_matrix_to_json(const IntMat& m) {
    Json out = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.cols(); ++j) {
            if (!m.at(i, j).fits_slong_p())
                throw contract_error("int_matrix_to_json: entry does not fit a machine word");
            row.push_back(m.at(i, j).get_si());
        }
        out.push_back(std::move(row));
    }
    return out;
}

IntMat int_matrix_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw data_error("matrix: expected a nonempty array of rows");
    const int rows = static_cast<int>(j.size());
    if (!j[0].is_array() || j[0].empty()) throw data_error("matrix: rows must be nonempty arrays");
    const int cols = static_cast<int>(j[0].size());
    IntMat m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        const Json& row = j[i];
        if (!row.is_array() || static_cast<int>(row.size()) != cols)
            throw data_error("matrix: ragged rows");
        for (int c = 0; c < cols; ++c) m.at(i, c) = get_long(row[c], "matrix");
    }
    return m;
}

Json rat_matrix_to_json(const RatMat& m) {
    Json out = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(rat_print(m.at(i, j)));
        out.push_back(std::move(row));
    }
    return out;
}

RatMat rat_matrix_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw data_error("matrix: expected a nonempty array of rows");
    const int rows = static_cast<int>(j.size());
    if (!j[0].is_array() || j[0].empty()) throw data_error("matrix: rows must be nonempty arrays");
    const int cols = static_cast<int>(j[0].size());
    RatMat m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        const Json& row = j[i];
        if (!row.is_array() || static_cast<int>(row.size()) != cols)
            throw data_error("matrix: ragged rows");
        for (int c = 0; c < cols; ++c) m.at(i, c) = get_rat(row[c], "matrix");
    }
    return m;
}

Json ring_matrix_to_json(const GroupRingMatrix& m, int n, int degree) {
    Json out;
    out["N"] = n;
    Json body = ring_matrix_body(m, degree);
    for (auto& [key, value] : body.items()) out[key] = std::move(value);
    return out;
}

GroupRingMatrix ring_matrix_from_json(const Json& j, int* n_out, int* degree_out) {
    const int n = get_int(get_key(j, "N"), "N");
    if (n < 1 || n > kMaxGroupDim) throw data_error("ring matrix: N out of range");
    if (n_out) *n_out = n;
    return ring_matrix_from_body(j, n, degree_out);
}

int ComplexDocument::orbit_count(int degree) const {
    if (degree < 0 || degree >= static_cast<int>(orbits.size())) return 0;
    return static_cast<int>(orbits[static_cast<std::size_t>(degree)].size());
}

namespace {

template <typename ComplexLike, typename DiffFn>
Json complex_to_json_impl(const ComplexLike& c, DiffFn diff) {
    Json out;
    out["N"] = c.rank;
    Json orbits = Json::array();
    for (int deg = c.top_degree(); deg >= c.bottom_degree(); --deg)
        for (int k = 0; k < c.orbit_count(deg); ++k)
            orbits.push_back(orbit_to_json(c.orbits[static_cast<std::size_t>(deg)]
                                               [static_cast<std::size_t>(k)]));
    out["orbits"] = std::move(orbits);
    Json diffs = Json::array();
    for (int deg = c.top_degree(); deg > c.bottom_degree(); --deg)
        diffs.push_back(ring_matrix_body(diff(deg), deg));
    out["differentials"] = std::move(diffs);
    return out;
}

}  // namespace

Json complex_to_json(const CellComplex& c) {
    return complex_to_json_impl(c, [&](int deg) { return differential(c, deg); });
}

Json complex_to_json(const ComplexDocument& d) {
    return complex_to_json_impl(
        d, [&](int deg) { return d.differentials[static_cast<std::size_t>(deg)]; });
}

ComplexDocument complex_from_json(const Json& j) {
    ComplexDocument d;
    d.rank = get_int(get_key(j, "N"), "N");
    if (d.rank < 2 || d.rank > kMaxGroupDim) throw data_error("complex: N out of range");
    const int top = d.top_degree();
    const int bottom = d.bottom_degree();
    d.orbits.resize(static_cast<std::size_t>(top) + 1);

    const Json& orbits = get_key(j, "orbits");
    if (!orbits.is_array()) throw data_error("complex: orbits must be an array");
    int last_degree = top;
    for (const Json& oj : orbits) {
        CellOrbit o = orbit_from_json(oj, d.rank, top, bottom);
        if (o.degree > last_degree)
            throw data_error("complex: orbits must be listed in descending degree order");
        last_degree = o.degree;
        d.orbits[static_cast<std::size_t>(o.degree)].push_back(std::move(o));
    }
    for (int deg = bottom; deg <= top; ++deg)
        if (d.orbit_count(deg) == 0)
            throw data_error("complex: no orbits in an interior degree");

    d.differentials.resize(static_cast<std::size_t>(top) + 2);
    for (int deg = 0; deg <= top + 1; ++deg)
        d.differentials[static_cast<std::size_t>(deg)] =
            GroupRingMatrix(d.orbit_count(deg - 1), d.orbit_count(deg));
    const Json& diffs = get_key(j, "differentials");
    if (!diffs.is_array() || static_cast<int>(diffs.size()) != top - bottom)
        throw data_error("complex: expected one boundary record per degree above the bottom");
    int expect_degree = top;
    for (const Json& dj : diffs) {
        int degree = 0;
        GroupRingMatrix m = ring_matrix_from_body(dj, d.rank, &degree);
        if (degree != expect_degree)
            throw data_error("complex: boundary records must descend from the top degree");
        if (m.rows() != d.orbit_count(degree - 1) || m.cols() != d.orbit_count(degree))
            throw data_error("complex: boundary map size does not match the orbit counts");
        d.differentials[static_cast<std::size_t>(degree)] = std::move(m);
        --expect_degree;
    }
    return d;
}

Json rep_to_json(const OrthogonalRep& rep, const std::vector<int>& elements) {
    Json out;
    out["p"] = rep.group().modulus();
    out["dim"] = rep.dim();
    Json entries = Json::array();
    for (int e : elements) {
        Json r;
        r["g"] = int_matrix_to_json(rep.group().matrix_of(e));
        r["m"] = rat_matrix_to_json(rep.matrix(e));
        entries.push_back(std::move(r));
    }
    out["entries"] = std::move(entries);
    return out;
}

std::string json_print(const Json& j) { return j.dump(1) + "\n"; }

std::string content_hash(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

}  // namespace slncoh
