#include "isometry.hpp"

#include <algorithm>

namespace slncoh {

namespace {

Rat bilinear(const RatMat& q, const LatVec& x, const LatVec& y) {
    Rat acc(0);
    for (int i = 0; i < q.rows(); ++i) {
        if (x[i] == 0) continue;
        for (int j = 0; j < q.cols(); ++j) {
            if (y[j] == 0) continue;
            acc += q.at(i, j) * Rat(static_cast<long>(x[i]) * y[j]);
        }
    }
    return acc;
}

/**
 * A basis of Z^N drawn from short vectors of q, preferring the shortest
 * values.  Enumeration widens geometrically until the vectors span; the
 * greedy pass over (value, lex)-sorted candidates is deterministic.
 */
std::vector<LatVec> short_basis(const RatMat& q) {
    const int n = q.rows();
    Rat c = minimal_vectors(q).min_value;
    for (;;) {
        std::vector<LatVec> cand = vectors_up_to(q, c);
        std::vector<std::pair<Rat, LatVec>> by_value;
        for (LatVec& v : cand) by_value.emplace_back(eval_form(q, v), std::move(v));
        std::stable_sort(by_value.begin(), by_value.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
        std::vector<LatVec> basis;
        RatMat trial(n, n);
        int have = 0;
        for (const auto& [val, v] : by_value) {
            for (int j = 0; j < n; ++j) trial.at(have, j) = Rat(v[j]);
            RatMat sub(have + 1, n);
            for (int i = 0; i <= have; ++i)
                for (int j = 0; j < n; ++j) sub.at(i, j) = trial.at(i, j);
            if (rank_exact(sub) == have + 1) {
                basis.push_back(v);
                if (++have == n) return basis;
            }
        }
        c *= 2;
    }
}

struct Search {
    const RatMat& q1;
    int n;
    std::vector<LatVec> basis;            // u_i (columns of U)
    RatMat u_inv;                          // U^{-1}
    std::vector<std::vector<LatVec>> cand; // signed candidates per level
    RatMat gram;                           // target Gram u_i^T q2 u_j
    std::vector<LatVec> chosen;
    std::vector<IntMat> found;
    bool stop_at_first = false;

    bool descend(int i) {
        if (i == n) return emit();
        for (const LatVec& w : cand[i]) {
            bool ok = true;
            for (int j = 0; j < i && ok; ++j)
                ok = (bilinear(q1, w, chosen[j]) == gram.at(i, j));
            if (!ok) continue;
            chosen[i] = w;
            if (descend(i + 1)) return true;
        }
        return false;
    }

    bool emit() {
        // g maps u_i to w_i: g = W U^{-1}; keep it when integral in SL.
        RatMat w(n, n);
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i) w.at(i, k) = Rat(chosen[k][i]);
        RatMat g = w * u_inv;
        IntMat gi(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Rat e = g.at(i, j);
                e.canonicalize();
                if (e.get_den() != 1) return false;
                gi.at(i, j) = e.get_num();
            }
        if (det_exact(gi) != 1) return false;
        found.push_back(std::move(gi));
        return stop_at_first;
    }
};

std::vector<IntMat> run_search(const RatMat& q1, const RatMat& q2, bool first_only) {
    if (q1.rows() != q2.rows())
        throw contract_error("isometry: forms of different dimension");
    if (!is_positive_definite(q1) || !is_positive_definite(q2))
        throw contract_error("isometry: forms must be positive definite");
    const int n = q1.rows();

    // Cheap class invariants decide most negative queries instantly.
    if (det_exact(q1) != det_exact(q2)) return {};
    ShortVectors m1 = minimal_vectors(q1);
    ShortVectors m2 = minimal_vectors(q2);
    if (m1.min_value != m2.min_value || m1.vectors.size() != m2.vectors.size())
        return {};

    Search s{q1, n, short_basis(q2), RatMat(), {}, RatMat(n, n), {}, {}, first_only};
    RatMat u(n, n);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i) u.at(i, k) = Rat(s.basis[k][i]);
    auto ui = inverse(u);
    if (!ui) throw internal_error("isometry: short basis is singular");
    s.u_inv = *ui;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) s.gram.at(i, j) = bilinear(q2, s.basis[i], s.basis[j]);

    s.cand.resize(n);
    for (int i = 0; i < n; ++i) {
        const Rat value = s.gram.at(i, i);
        for (const LatVec& v : vectors_of_value(q1, value)) {
            s.cand[i].push_back(v);
            LatVec neg(v.size());
            for (std::size_t k = 0; k < v.size(); ++k) neg[k] = -v[k];
            s.cand[i].push_back(std::move(neg));
        }
        if (s.cand[i].empty()) return {};
    }

    s.chosen.assign(n, LatVec(n, 0));
    s.descend(0);
    std::sort(s.found.begin(), s.found.end(), [n](const IntMat& a, const IntMat& b) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (a.at(i, j) != b.at(i, j)) return a.at(i, j) < b.at(i, j);
        return false;
    });
    return std::move(s.found);
}

}  // namespace

std::vector<IntMat> all_isometries(const RatMat& q1, const RatMat& q2) {
    std::vector<IntMat> out = run_search(q1, q2, false);
    // Every reported g must genuinely transport q1 to q2.
    for (const IntMat& g : out)
        if (act_form(q1, g) != q2) throw internal_error("isometry: bad witness");
    return out;
}

std::optional<IntMat> first_isometry(const RatMat& q1, const RatMat& q2) {
    std::vector<IntMat> out = run_search(q1, q2, true);
    if (out.empty()) return std::nullopt;
    if (act_form(q1, out[0]) != q2) throw internal_error("isometry: bad witness");
    return out[0];
}

bool is_equivalent(const RatMat& q1, const RatMat& q2) {
    return first_isometry(q1, q2).has_value();
}

std::vector<IntMat> stabilizer(const RatMat& q) {
    std::vector<IntMat> s = all_isometries(q, q);
    if (s.empty()) throw internal_error("stabilizer: identity not found");
    return s;
}

std::optional<OrbitMatch> match_orbit(const RatMat& q,
                                      const std::vector<RatMat>& catalog) {
    std::optional<OrbitMatch> hit;
    for (std::size_t i = 0; i < catalog.size(); ++i) {
        auto g = first_isometry(catalog[i], q);
        if (!g) continue;
        if (hit)
            throw contract_error("match_orbit: catalog contains equivalent entries");
        hit = OrbitMatch{static_cast<int>(i), *g};
    }
    return hit;
}

}  // namespace slncoh
