/**
 * Tests for the facet enumeration.  The oracle scans every subset of the
 * input of the right size, fits the hyperplane through it when one exists,
 * and keeps it when all points lie weakly on one side; collecting the
 * distinct supports gives the complete facet list of small polytopes by
 * exhaustion.
 */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <random>
#include <set>

#include "polyhedra.hpp"

using namespace slncoh;

namespace {

std::vector<IntVec> make_points(const std::vector<std::vector<long>>& rows) {
    std::vector<IntVec> pts;
    for (const auto& r : rows) {
        IntVec p;
        for (long x : r) p.emplace_back(x);
        pts.push_back(std::move(p));
    }
    return pts;
}

std::set<std::vector<int>> supports(const std::vector<Facet>& fs) {
    std::set<std::vector<int>> s;
    for (const Facet& f : fs) s.insert(f.vertex_indices);
    return s;
}

// Exhaustive oracle: every size-a subset that spans an affine hyperplane
// and has the whole point set weakly on one side contributes its full
// support set as a facet.
std::set<std::vector<int>> oracle_facet_supports(const std::vector<IntVec>& pts) {
    const int m = static_cast<int>(pts.size());
    const int a = affine_dim(pts);
    const int amb = static_cast<int>(pts[0].size());
    std::set<std::vector<int>> found;
    std::vector<int> idx(a);
    // Iterate over all size-a index subsets.
    std::function<void(int, int)> rec = [&](int start, int k) {
        if (k == a) {
            // Affine functional vanishing on the subset: kernel of [p | 1].
            RatMat sys(a, amb + 1);
            for (int r = 0; r < a; ++r) {
                for (int j = 0; j < amb; ++j) sys.at(r, j) = Rat(pts[idx[r]][j]);
                sys.at(r, amb) = 1;
            }
            for (const RatVec& k_vec : kernel_basis(sys)) {
                std::vector<int> zero;
                bool pos = false, neg = false;
                for (int i = 0; i < m; ++i) {
                    Rat v = k_vec[amb];
                    for (int j = 0; j < amb; ++j) v += k_vec[j] * Rat(pts[i][j]);
                    if (v == 0)
                        zero.push_back(i);
                    else
                        (v > 0 ? pos : neg) = true;
                }
                if (pos && neg) continue;        // not supporting
                if (!pos && !neg) continue;      // all points on the plane
                // The zero set must span a facet, not a lower face.
                std::vector<IntVec> zpts;
                for (int i : zero) zpts.push_back(pts[i]);
                if (static_cast<int>(zpts.size()) >= a && affine_dim(zpts) == a - 1)
                    found.insert(zero);
            }
            return;
        }
        for (int i = start; i < m; ++i) {
            idx[k] = i;
            rec(i + 1, k + 1);
        }
    };
    if (a >= 1) rec(0, 0);
    return found;
}

void check_against_oracle(const std::vector<IntVec>& pts) {
    auto fs = facets(pts);
    CHECK(supports(fs) == oracle_facet_supports(pts));
    // Facet verification is built in; double-check the reported invariants.
    const int a = affine_dim(pts);
    for (const Facet& f : fs) {
        CHECK(static_cast<int>(f.vertex_indices.size()) >= a);
        CHECK(std::is_sorted(f.vertex_indices.begin(), f.vertex_indices.end()));
    }
}

}  // namespace

TEST_CASE("affine dimension") {
    CHECK(affine_dim(make_points({{3, 4}})) == 0);
    CHECK(affine_dim(make_points({{0, 0}, {2, 2}})) == 1);
    CHECK(affine_dim(make_points({{0, 0}, {1, 1}, {2, 2}})) == 1);
    CHECK(affine_dim(make_points({{0, 0}, {1, 0}, {0, 1}})) == 2);
    CHECK(affine_dim(make_points({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})) == 2);
    CHECK_THROWS_AS(affine_dim({}), contract_error);
    CHECK_THROWS_AS(affine_dim(make_points({{1, 0}, {1, 0}})), contract_error);
}

TEST_CASE("interval facets") {
    auto fs = facets(make_points({{0, 0, 0}, {2, 4, 6}, {1, 2, 3}}));
    REQUIRE(fs.size() == 2);
    CHECK(fs[0].vertex_indices == std::vector<int>{0});
    CHECK(fs[1].vertex_indices == std::vector<int>{1});
}

TEST_CASE("triangle facets") {
    auto pts = make_points({{0, 0}, {3, 0}, {0, 3}});
    auto fs = facets(pts);
    REQUIRE(fs.size() == 3);
    CHECK(supports(fs) ==
          std::set<std::vector<int>>{{0, 1}, {0, 2}, {1, 2}});
    check_against_oracle(pts);
}

TEST_CASE("square with interior point") {
    auto pts = make_points({{0, 0}, {2, 0}, {0, 2}, {2, 2}, {1, 1}});
    auto fs = facets(pts);
    CHECK(fs.size() == 4);
    for (const Facet& f : fs)
        CHECK(std::find(f.vertex_indices.begin(), f.vertex_indices.end(), 4) ==
              f.vertex_indices.end());
    check_against_oracle(pts);
}

TEST_CASE("point on an edge is reported on that facet") {
    auto pts = make_points({{0, 0}, {4, 0}, {0, 4}, {2, 0}});
    auto fs = facets(pts);
    REQUIRE(fs.size() == 3);
    CHECK(supports(fs) ==
          std::set<std::vector<int>>{{0, 1, 3}, {0, 2}, {1, 2}});
    check_against_oracle(pts);
}

TEST_CASE("cube has six square facets") {
    std::vector<std::vector<long>> rows;
    for (long x : {0, 1})
        for (long y : {0, 1})
            for (long z : {0, 1}) rows.push_back({x, y, z});
    auto pts = make_points(rows);
    auto fs = facets(pts);
    CHECK(fs.size() == 6);
    std::vector<int> on_count(8, 0);
    for (const Facet& f : fs) {
        CHECK(f.vertex_indices.size() == 4);
        for (int i : f.vertex_indices) ++on_count[i];
    }
    for (int c : on_count) CHECK(c == 3);  // every vertex on dim many facets
    check_against_oracle(pts);
}

TEST_CASE("octahedron and simplex") {
    auto oct = make_points(
        {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}});
    CHECK(facets(oct).size() == 8);
    check_against_oracle(oct);

    auto simplex = make_points({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    CHECK(facets(simplex).size() == 4);
    check_against_oracle(simplex);
}

TEST_CASE("lower-dimensional polytope in a higher ambient space") {
    // A triangle on the plane x + y + z = 1.
    auto pts = make_points({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    auto fs = facets(pts);
    REQUIRE(fs.size() == 3);
    CHECK(supports(fs) == std::set<std::vector<int>>{{0, 1}, {0, 2}, {1, 2}});
    check_against_oracle(pts);
}

TEST_CASE("rank-one triangle from the hexagonal cell") {
    // Flattened v v^T for v in {e1, e2, e1 + e2}; the shape every
    // top-dimensional cell computation starts from.
    auto pts = make_points({{1, 0, 0, 0}, {0, 0, 0, 1}, {1, 1, 1, 1}});
    CHECK(affine_dim(pts) == 2);
    auto fs = facets(pts);
    REQUIRE(fs.size() == 3);
    CHECK(supports(fs) == std::set<std::vector<int>>{{0, 1}, {0, 2}, {1, 2}});
    check_against_oracle(pts);
}

TEST_CASE("degenerate inputs are contract errors") {
    CHECK_THROWS_AS(facets(make_points({{1, 1}})), contract_error);
    CHECK_THROWS_AS(facets(make_points({{1, 1}, {1, 1}})), contract_error);
    CHECK_THROWS_AS(facets({}), contract_error);
}

TEST_CASE("random small polytopes match the oracle") {
    std::mt19937_64 rng(20240817);
    int tried = 0;
    while (tried < 25) {
        const int d = 2 + static_cast<int>(tried % 2);
        std::uniform_int_distribution<long> coord(0, 3);
        std::set<std::vector<long>> uniq;
        const int count = 4 + static_cast<int>(tried % 4);
        for (int i = 0; i < count; ++i) {
            std::vector<long> p(d);
            for (long& x : p) x = coord(rng);
            uniq.insert(p);
        }
        std::vector<std::vector<long>> rows(uniq.begin(), uniq.end());
        auto pts = make_points(rows);
        if (static_cast<int>(pts.size()) < d + 1 || affine_dim(pts) < d) continue;
        check_against_oracle(pts);
        ++tried;
    }
}
