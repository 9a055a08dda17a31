/**
 * Tests for the finite groups and the induced signed-permutation
 * representations.  Group orders are compared against the product
 * formula evaluated independently, the induced representations are
 * checked as exact orthogonal homomorphisms on large random samples,
 * and representing_matrix is validated for linearity, star-transpose
 * compatibility and multiplicativity.
 */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>
#include <vector>

#include "reps.hpp"

using namespace slncoh;

namespace {

long order_formula(int n, int q) {
    // |GL_n(F_q)| / (q - 1) = product over i of (q^n - q^i), divided by q-1.
    long gl = 1;
    long qn = 1;
    for (int k = 0; k < n; ++k) qn *= q;
    long qi = 1;
    for (int i = 0; i < n; ++i) {
        gl *= qn - qi;
        qi *= q;
    }
    return gl / (q - 1);
}

IntMat make_int(const std::vector<std::vector<long>>& rows) {
    const int m = static_cast<int>(rows.size());
    const int n = m ? static_cast<int>(rows[0].size()) : 0;
    IntMat a(m, n);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) a.at(i, j) = rows[i][j];
    return a;
}

/** Random product of elementary generators, as an integral element. */
GroupElem random_elem(int n, std::mt19937& rng, int length = 6) {
    const std::vector<GroupElem> gens = elementary_generators(n);
    GroupElem g = GroupElem::identity(n);
    std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
    std::uniform_int_distribution<int> flip(0, 1);
    for (int i = 0; i < length; ++i) {
        GroupElem e = gens[pick(rng)];
        g = flip(rng) ? g * e : g * e.inverse();
    }
    return g;
}

std::vector<int> reduced_generators(const OrthogonalRep& rep) {
    std::vector<int> out;
    for (const GroupElem& g : elementary_generators(rep.group().n()))
        out.push_back(rep.group().reduce(g));
    return out;
}

void check_monomial_homomorphism(const OrthogonalRep& rep, int pairs, std::mt19937& rng) {
    const int d = rep.dim();
    std::uniform_int_distribution<int> pick(0, rep.group().size() - 1);
    for (int k = 0; k < pairs; ++k) {
        const int a = pick(rng);
        const int b = pick(rng);
        const int ab = rep.group().multiply(a, b);
        for (int c = 0; c < d; ++c) {
            REQUIRE(rep.row_of(ab, c) == rep.row_of(a, rep.row_of(b, c)));
            REQUIRE(rep.sign_of(ab, c) ==
                    rep.sign_of(a, rep.row_of(b, c)) * rep.sign_of(b, c));
        }
    }
}

void check_signed_permutation(const OrthogonalRep& rep, int g) {
    std::set<int> rows;
    for (int c = 0; c < rep.dim(); ++c) {
        rows.insert(rep.row_of(g, c));
        const int s = rep.sign_of(g, c);
        REQUIRE((s == 1 || s == -1));
    }
    REQUIRE(static_cast<int>(rows.size()) == rep.dim());
}

}  // namespace

TEST_CASE("group orders match the product formula") {
    CHECK(order_formula(2, 2) == 6);
    CHECK(order_formula(3, 3) == 5616);
    CHECK(order_formula(4, 2) == 20160);
    CHECK(FiniteGroup::enumerate(2, 2)->size() == 6);
    CHECK(FiniteGroup::enumerate(3, 3)->size() == 5616);
    CHECK(FiniteGroup::enumerate(4, 2)->size() == 20160);
    CHECK_THROWS_AS((void)FiniteGroup::enumerate(3, 2), contract_error);
    CHECK_THROWS_AS((void)FiniteGroup::enumerate(2, 3), contract_error);
    CHECK_THROWS_AS((void)FiniteGroup::enumerate(5, 2), contract_error);
}

TEST_CASE("finite group arithmetic satisfies the group axioms") {
    std::mt19937 rng(11);
    for (auto [n, p] : {std::pair{2, 2}, {3, 3}, {4, 2}}) {
        auto g = FiniteGroup::enumerate(n, p);
        const int e = g->identity();
        CHECK(g->matrix_of(e) == IntMat::identity(n));
        std::uniform_int_distribution<int> pick(0, g->size() - 1);
        for (int k = 0; k < 200; ++k) {
            const int a = pick(rng);
            const int b = pick(rng);
            const int c = pick(rng);
            CHECK(g->multiply(g->multiply(a, b), c) == g->multiply(a, g->multiply(b, c)));
            CHECK(g->multiply(a, g->inverse(a)) == e);
            CHECK(g->multiply(g->inverse(a), a) == e);
            CHECK(g->multiply(e, a) == a);
            CHECK(g->multiply(a, e) == a);
            CHECK(g->index_of(g->matrix_of(a)) == a);
        }
    }
}

TEST_CASE("modular reduction is a homomorphism on integral elements") {
    std::mt19937 rng(12);
    for (auto [n, p] : {std::pair{2, 2}, {3, 3}, {4, 2}}) {
        auto grp = FiniteGroup::enumerate(n, p);
        CHECK(grp->reduce(GroupElem::identity(n)) == grp->identity());
        for (int k = 0; k < 50; ++k) {
            const GroupElem a = random_elem(n, rng);
            const GroupElem b = random_elem(n, rng);
            CHECK(grp->reduce(a * b) == grp->multiply(grp->reduce(a), grp->reduce(b)));
            CHECK(grp->reduce(a.inverse()) == grp->inverse(grp->reduce(a)));
        }
        // Entries shifted by multiples of p reduce to the same element.
        IntMat shift = IntMat::identity(n);
        shift.at(0, 1) = 1;
        IntMat shifted = shift;
        shifted.at(0, 1) = 1 + p;
        CHECK(grp->index_of(shift) == grp->index_of(shifted));
    }
    auto g22 = FiniteGroup::enumerate(2, 2);
    // Determinant zero mod 2: not in the group.
    CHECK_THROWS_AS((void)g22->index_of(make_int({{1, 1}, {1, 1}})), data_error);
    CHECK_THROWS_AS((void)g22->index_of(make_int({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})),
                    contract_error);
}

TEST_CASE("enumeration is deterministic") {
    auto a = FiniteGroup::enumerate(3, 3);
    auto b = FiniteGroup::enumerate(3, 3);
    REQUIRE(a->size() == b->size());
    std::mt19937 rng(13);
    std::uniform_int_distribution<int> pick(0, a->size() - 1);
    for (int k = 0; k < 100; ++k) {
        const int i = pick(rng);
        CHECK(a->matrix_of(i) == b->matrix_of(i));
    }
}

TEST_CASE("subgroup closure") {
    auto g = FiniteGroup::enumerate(2, 2);
    CHECK(subgroup_closure(*g, {g->identity()}) == std::vector<int>{g->identity()});
    // Closure of the elementary generators is everything.
    std::vector<int> gens;
    for (const GroupElem& e : elementary_generators(2)) gens.push_back(g->reduce(e));
    CHECK(static_cast<int>(subgroup_closure(*g, gens).size()) == g->size());
    // An order-two element closes to a two-element subgroup.
    const int a = g->index_of(make_int({{0, 1}, {1, 0}}));
    CHECK(g->multiply(a, a) == g->identity());
    const auto sub = subgroup_closure(*g, {a});
    CHECK(sub.size() == 2);
    CHECK(std::is_sorted(sub.begin(), sub.end()));
    CHECK_THROWS_AS((void)subgroup_closure(*g, {}), contract_error);
    CHECK_THROWS_AS((void)subgroup_closure(*g, {g->size()}), contract_error);
}

TEST_CASE("inducing the trivial representation of the whole group is trivial") {
    auto g = FiniteGroup::enumerate(2, 2);
    SubRep sub;
    for (int e = 0; e < g->size(); ++e) {
        sub.elements.push_back(e);
        sub.perm.push_back({0});
        sub.sign.push_back({1});
    }
    sub.dim = 1;
    const OrthogonalRep rep = OrthogonalRep::induce(g, sub);
    CHECK(rep.dim() == 1);
    for (int e = 0; e < g->size(); ++e) {
        CHECK(rep.row_of(e, 0) == 0);
        CHECK(rep.sign_of(e, 0) == 1);
    }
}

TEST_CASE("inducing from the identity subgroup gives the regular representation") {
    auto g = FiniteGroup::enumerate(2, 2);
    SubRep sub;
    sub.elements = {g->identity()};
    sub.dim = 1;
    sub.perm = {{0}};
    sub.sign = {{1}};
    const OrthogonalRep rep = OrthogonalRep::induce(g, sub);
    CHECK(rep.dim() == g->size());
    std::mt19937 rng(14);
    check_monomial_homomorphism(rep, 500, rng);
    for (int e = 0; e < g->size(); ++e) check_signed_permutation(rep, e);
    // The regular representation fixes exactly the all-ones line.
    CHECK(invariant_vector_dim(rep, reduced_generators(rep)) == 1);
}

TEST_CASE("induce validates the subgroup and the blocks") {
    auto g = FiniteGroup::enumerate(2, 2);
    // An order-three element: closure has three elements.
    const int r = g->index_of(make_int({{0, 1}, {1, 1}}));
    const auto c3 = subgroup_closure(*g, {r});
    REQUIRE(c3.size() == 3);

    SubRep bad;
    bad.elements = {std::min(g->identity(), r), std::max(g->identity(), r)};  // not closed
    bad.dim = 1;
    bad.perm = {{0}, {0}};
    bad.sign = {{1}, {1}};
    CHECK_THROWS_AS((void)OrthogonalRep::induce(g, bad), contract_error);

    SubRep nonhom;
    nonhom.elements = c3;
    nonhom.dim = 1;
    for (int e : c3) {
        nonhom.perm.push_back({0});
        nonhom.sign.push_back({e == g->identity() ? 1 : -1});  // order 3, signs break
    }
    CHECK_THROWS_AS((void)OrthogonalRep::induce(g, nonhom), data_error);

    SubRep noid;
    noid.elements = {r};
    noid.dim = 1;
    noid.perm = {{0}};
    noid.sign = {{1}};
    CHECK_THROWS_AS((void)OrthogonalRep::induce(g, noid), contract_error);
}

TEST_CASE("certified representations have the published dimensions") {
    const OrthogonalRep p2 = make_pi(2);
    CHECK(p2.dim() == 1);
    CHECK(p2.group().size() == 6);
    CHECK(p2.group().modulus() == 2);

    const OrthogonalRep p3 = make_pi(3);
    CHECK(p3.dim() == 156);
    CHECK(p3.group().size() == 5616);
    CHECK(p3.group().modulus() == 3);

    const OrthogonalRep p4 = make_pi(4);
    CHECK(p4.dim() == 105);
    CHECK(p4.group().size() == 20160);
    CHECK(p4.group().modulus() == 2);

    CHECK_THROWS_AS((void)make_pi(1), contract_error);
    CHECK_THROWS_AS((void)make_pi(5), contract_error);
}

TEST_CASE("certified representations are orthogonal homomorphisms") {
    std::mt19937 rng(15);
    for (int n : {3, 4}) {
        const OrthogonalRep rep = make_pi(n);
        check_monomial_homomorphism(rep, 10000, rng);
        std::uniform_int_distribution<int> pick(0, rep.group().size() - 1);
        for (int k = 0; k < 64; ++k) {
            const int e = pick(rng);
            check_signed_permutation(rep, e);
            // The inverse acts as the transpose.
            const int inv = rep.group().inverse(e);
            for (int c = 0; c < rep.dim(); ++c) {
                const int row = rep.row_of(e, c);
                CHECK(rep.row_of(inv, row) == c);
                CHECK(rep.sign_of(inv, row) == rep.sign_of(e, c));
            }
        }
        // Identity maps to the identity matrix.
        for (int c = 0; c < rep.dim(); ++c) {
            CHECK(rep.row_of(rep.group().identity(), c) == c);
            CHECK(rep.sign_of(rep.group().identity(), c) == 1);
        }
        // Exact dense orthogonality on a few samples.
        for (int k = 0; k < 3; ++k) {
            const RatMat m = rep.matrix(pick(rng));
            CHECK(m.transpose() * m == to_rational(IntMat::identity(rep.dim())));
        }
    }
}

TEST_CASE("certified representations have no invariant vectors beyond rank two") {
    const OrthogonalRep p2 = make_pi(2);
    CHECK(invariant_vector_dim(p2, reduced_generators(p2)) == 1);
    const OrthogonalRep p3 = make_pi(3);
    CHECK(invariant_vector_dim(p3, reduced_generators(p3)) == 0);
    const OrthogonalRep p4 = make_pi(4);
    CHECK(invariant_vector_dim(p4, reduced_generators(p4)) == 0);
}

TEST_CASE("representation tables are deterministic") {
    const OrthogonalRep a = make_pi(3);
    const OrthogonalRep b = make_pi(3);
    std::mt19937 rng(16);
    std::uniform_int_distribution<int> pick(0, a.group().size() - 1);
    for (int k = 0; k < 50; ++k) {
        const int e = pick(rng);
        for (int c = 0; c < a.dim(); ++c) {
            CHECK(a.row_of(e, c) == b.row_of(e, c));
            CHECK(a.sign_of(e, c) == b.sign_of(e, c));
        }
    }
}

TEST_CASE("representing_matrix evaluates group-ring matrices blockwise") {
    std::mt19937 rng(17);
    const OrthogonalRep rep = make_pi(3);
    const int n = 3;
    const int d = rep.dim();

    // The scalar identity evaluates to the identity block.
    GroupRingMatrix one(1, 1);
    one.at(0, 0) = GroupRingElem::scalar(n, Rat(1));
    CHECK(representing_matrix(one, rep) == to_rational(IntMat::identity(d)));

    // Random elements: linearity, star-transpose, multiplicativity.
    auto random_ring_elem = [&](int terms) {
        GroupRingElem::Builder b;
        std::uniform_int_distribution<int> coeff(-3, 3);
        std::uniform_int_distribution<int> den(1, 4);
        for (int k = 0; k < terms; ++k)
            b.add(random_elem(n, rng), Rat(coeff(rng)) / Rat(den(rng)));
        return b.finish();
    };
    for (int k = 0; k < 3; ++k) {
        GroupRingMatrix x(1, 1), y(1, 1);
        x.at(0, 0) = random_ring_elem(3);
        y.at(0, 0) = random_ring_elem(3);
        const RatMat rx = representing_matrix(x, rep);
        const RatMat ry = representing_matrix(y, rep);
        CHECK(representing_matrix(x + y, rep) == rx + ry);
        CHECK(representing_matrix(x.star(), rep) == rx.transpose());
        CHECK(representing_matrix(x * y, rep) == rx * ry);
    }

    // Block layout of a rectangular matrix.
    GroupRingMatrix m(2, 1);
    const GroupElem g1 = random_elem(n, rng);
    const GroupElem g2 = random_elem(n, rng);
    m.at(0, 0) = GroupRingElem::from_term(g1, Rat(2));
    m.at(1, 0) = GroupRingElem::from_term(g2, Rat(-1, 2));
    const RatMat big = representing_matrix(m, rep);
    REQUIRE(big.rows() == 2 * d);
    REQUIRE(big.cols() == d);
    const int e1 = rep.group().reduce(g1);
    const int e2 = rep.group().reduce(g2);
    for (int c = 0; c < d; ++c) {
        CHECK(big.at(rep.row_of(e1, c), c) == Rat(2 * rep.sign_of(e1, c)));
        CHECK(big.at(d + rep.row_of(e2, c), c) == Rat(rep.sign_of(e2, c)) / Rat(-2));
    }

    // Entries congruent mod p represent identically.
    GroupRingMatrix u(1, 1), v(1, 1);
    IntMat shift = IntMat::identity(n);
    shift.at(0, 1) = 1;
    IntMat shifted = shift;
    shifted.at(0, 1) = 1 + rep.group().modulus();
    u.at(0, 0) = GroupRingElem::from_term(GroupElem::from_matrix(shift), Rat(1));
    v.at(0, 0) = GroupRingElem::from_term(GroupElem::from_matrix(shifted), Rat(1));
    CHECK(representing_matrix(u, rep) == representing_matrix(v, rep));
}
