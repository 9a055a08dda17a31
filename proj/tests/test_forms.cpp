/**
 * Tests for quadratic forms and short vector enumeration.  The independent
 * oracle here is a plain box search: bound each coordinate through the
 * inverse form, scan the whole box, filter exactly.  The recursive
 * enumeration must reproduce it verbatim on every input tried.
 */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "forms.hpp"

using namespace slncoh;

namespace {

IntMat make_int(const std::vector<std::vector<long>>& rows) {
    const int m = static_cast<int>(rows.size());
    const int n = m ? static_cast<int>(rows[0].size()) : 0;
    IntMat a(m, n);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) a.at(i, j) = rows[i][j];
    return a;
}

IntMat random_unimodular(std::mt19937_64& rng, int n, int factors) {
    std::uniform_int_distribution<int> idx(0, n - 1);
    std::uniform_int_distribution<long> val(-2, 2);
    IntMat g = IntMat::identity(n);
    for (int t = 0; t < factors; ++t) {
        int i = idx(rng), j = idx(rng);
        if (i == j) continue;
        IntMat e = IntMat::identity(n);
        e.at(i, j) = val(rng);
        g = g * e;
    }
    return g;
}

// Oracle: every coordinate of a vector with q(v) <= c satisfies
// v_i^2 <= c * (q^{-1})_ii, so a finite box certainly contains the whole
// answer; scan it and filter exactly.
std::vector<LatVec> box_vectors_up_to(const RatMat& q, const Rat& c) {
    const int n = q.rows();
    auto inv = inverse(q);
    REQUIRE(inv.has_value());
    std::vector<long> bound(n);
    for (int i = 0; i < n; ++i) {
        Rat lim = c * inv->at(i, i);
        Int ceil_lim;
        mpz_cdiv_q(ceil_lim.get_mpz_t(), lim.get_num().get_mpz_t(),
                   lim.get_den().get_mpz_t());
        if (ceil_lim < 0) ceil_lim = 0;
        Int root;
        mpz_sqrt(root.get_mpz_t(), ceil_lim.get_mpz_t());
        bound[i] = root.get_si() + 1;
    }
    std::vector<LatVec> hits;
    LatVec v(n, 0);
    for (int i = 0; i < n; ++i) v[i] = -bound[i];
    for (;;) {
        bool zero = true;
        for (long x : v) zero = zero && x == 0;
        if (!zero && eval_form(q, v) <= c) hits.push_back(v);
        int i = 0;
        while (i < n && v[i] == bound[i]) {
            v[i] = -bound[i];
            ++i;
        }
        if (i == n) break;
        ++v[i];
    }
    return canonicalize_vector_set(hits);
}

}  // namespace

TEST_CASE("vector canonicalisation") {
    CHECK(is_canonical_vector({1, -2}));
    CHECK_FALSE(is_canonical_vector({-1, 2}));
    CHECK_FALSE(is_canonical_vector({0, 0}));
    CHECK(is_canonical_vector({0, 3}));
    CHECK(canonical_vector({-1, 2}) == LatVec{1, -2});

    auto s = canonicalize_vector_set({{0, 1}, {0, -1}, {1, 1}, {1, 1}, {-1, 0}});
    CHECK(s == std::vector<LatVec>{{0, 1}, {1, 0}, {1, 1}});
    CHECK(is_canonical_vector_set(s));
    CHECK_FALSE(is_canonical_vector_set({}));
    CHECK_FALSE(is_canonical_vector_set({{1, 0}, {0, 1}}));  // unsorted
    CHECK_THROWS_AS(canonicalize_vector_set({{0, 0}}), contract_error);
}

TEST_CASE("evaluation and rank-one forms") {
    RatMat a2 = to_rational(make_int({{2, -1}, {-1, 2}}));
    CHECK(eval_form(a2, {1, 0}) == 2);
    CHECK(eval_form(a2, {1, 1}) == 2);
    CHECK(eval_form(a2, {1, -1}) == 6);
    CHECK(eval_form(a2, {2, 1}) == 6);
    CHECK(rank_one({1, -2}) == make_int({{1, -2}, {-2, 4}}));
    CHECK(rank_one({1, 1, 0}).is_symmetric());
}

TEST_CASE("minimal vectors of the seed forms") {
    auto s2 = perfect_seeds(2);
    REQUIRE(s2.size() == 1);
    ShortVectors m2 = minimal_vectors(to_rational(s2[0]));
    CHECK(m2.min_value == 2);
    CHECK(m2.vectors == std::vector<LatVec>{{0, 1}, {1, 0}, {1, 1}});

    auto s3 = perfect_seeds(3);
    REQUIRE(s3.size() == 1);
    CHECK(det_exact(s3[0]) == 4);
    ShortVectors m3 = minimal_vectors(to_rational(s3[0]));
    CHECK(m3.min_value == 2);
    CHECK(m3.vectors.size() == 6);  // 12 roots in antipodal pairs

    auto s4 = perfect_seeds(4);
    REQUIRE(s4.size() == 2);
    CHECK(det_exact(s4[0]) == 5);
    CHECK(det_exact(s4[1]) == 4);
    ShortVectors m4a = minimal_vectors(to_rational(s4[0]));
    CHECK(m4a.min_value == 2);
    CHECK(m4a.vectors.size() == 10);  // 20 roots
    ShortVectors m4d = minimal_vectors(to_rational(s4[1]));
    CHECK(m4d.min_value == 2);
    CHECK(m4d.vectors.size() == 12);  // 24 roots

    ShortVectors mi = minimal_vectors(to_rational(IntMat::identity(3)));
    CHECK(mi.min_value == 1);
    CHECK(mi.vectors == std::vector<LatVec>{{0, 0, 1}, {0, 1, 0}, {1, 0, 0}});
}

TEST_CASE("enumeration agrees with the box oracle") {
    std::mt19937_64 rng(20240815);
    // The seeds at several bounds.
    for (int n = 2; n <= 4; ++n)
        for (const IntMat& s : perfect_seeds(n)) {
            RatMat q = to_rational(s);
            for (long c : {1L, 2L, 4L, 6L}) {
                auto fast = vectors_up_to(q, Rat(c));
                CHECK(fast == box_vectors_up_to(q, Rat(c)));
                CHECK((fast.empty() || is_canonical_vector_set(fast)));
            }
        }
    // Random positive definite forms g^T g, some with rational scaling.
    for (int t = 0; t < 30; ++t) {
        int n = 2 + static_cast<int>(t % 3);
        IntMat g = random_unimodular(rng, n, 4);
        RatMat q = to_rational(g.transpose() * g);
        if (t % 3 == 0) {
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) q.at(i, j) /= 2;
        }
        Rat c = Rat(2 + t % 5);
        auto fast = vectors_up_to(q, c);
        auto oracle = box_vectors_up_to(q, c);
        CHECK(fast == oracle);
    }
}

TEST_CASE("level sets") {
    RatMat a2 = to_rational(make_int({{2, -1}, {-1, 2}}));
    auto shell = vectors_of_value(a2, Rat(6));
    CHECK(shell == std::vector<LatVec>{{1, -1}, {1, 2}, {2, 1}});
    CHECK(vectors_of_value(a2, Rat(3)).empty());
    CHECK(vectors_of_value(a2, Rat(0)).empty());
    // Scalar multiples appear at their own value.
    auto doubled = vectors_of_value(a2, Rat(8));
    CHECK(std::find(doubled.begin(), doubled.end(), LatVec{2, 2}) != doubled.end());
}

TEST_CASE("contract violations") {
    RatMat indef = to_rational(make_int({{1, 2}, {2, 1}}));
    CHECK_THROWS_AS(minimal_vectors(indef), contract_error);
    CHECK_THROWS_AS(vectors_up_to(indef, Rat(2)), contract_error);
    CHECK_THROWS_AS(is_perfect(indef), contract_error);
    RatMat a2 = to_rational(make_int({{2, -1}, {-1, 2}}));
    CHECK_THROWS_AS(vectors_up_to(a2, Rat(-1)), contract_error);
    CHECK_THROWS_AS(eval_form(a2, {1, 2, 3}), contract_error);
}

TEST_CASE("barycentres of the dimension-two cells") {
    // Top cell: the minimal vectors of the hexagonal form.
    RatMat top = barycentre({{0, 1}, {1, 0}, {1, 1}});
    CHECK(top == to_rational(make_int({{4, 2}, {2, 4}})));
    CHECK(is_positive_definite(top));
    // Its minimal vectors differ from the cell's own vector set: the
    // barycentre is an interior point, not the cell data itself.
    CHECK(minimal_vectors(top).vectors == std::vector<LatVec>{{0, 1}, {1, -1}, {1, 0}});

    // Edge cell: two basis vectors; barycentre twice the identity.
    RatMat edge = barycentre({{0, 1}, {1, 0}});
    CHECK(edge == to_rational(make_int({{2, 0}, {0, 2}})));

    CHECK(rank_one_span_dim({{0, 1}, {1, 0}, {1, 1}}) == 3);
    CHECK(rank_one_span_dim({{0, 1}, {1, 0}}) == 2);
    CHECK(rank_one_span_dim({{1, 0}}) == 1);
}

TEST_CASE("perfection") {
    for (int n = 2; n <= 4; ++n)
        for (const IntMat& s : perfect_seeds(n)) CHECK(is_perfect(to_rational(s)));
    CHECK_FALSE(is_perfect(to_rational(IntMat::identity(2))));
    CHECK_FALSE(is_perfect(to_rational(make_int({{2, 0}, {0, 3}}))));
    // The barycentre of the top cell is again perfect (it is hexagonal).
    CHECK(is_perfect(to_rational(make_int({{4, 2}, {2, 4}}))));
}

TEST_CASE("the right action is equivariant") {
    std::mt19937_64 rng(20240816);
    std::vector<LatVec> cell = {{0, 1}, {1, 0}, {1, 1}};
    RatMat q = barycentre(cell);
    for (int t = 0; t < 25; ++t) {
        IntMat g = random_unimodular(rng, 2, 5);
        IntMat h = random_unimodular(rng, 2, 5);
        // barycentre(m . g) = barycentre(m) . g
        CHECK(barycentre(act_vector_set(cell, g)) == act_form(q, g));
        // Right action composes: (q . g) . h = q . (g h)
        CHECK(act_form(act_form(q, g), h) == act_form(q, g * h));
        CHECK(act_vector(act_vector({1, 2}, g), h) == act_vector({1, 2}, g * h));
        // Equivalent forms represent the same values, so the minimal value
        // is an invariant of the class.
        CHECK(minimal_vectors(act_form(q, g)).min_value ==
              minimal_vectors(q).min_value);
    }
}
