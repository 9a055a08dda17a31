#include "polyhedra.hpp"

#include <algorithm>
#include <set>

namespace slncoh {

namespace {

void validate_points(const std::vector<IntVec>& pts) {
    if (pts.empty()) throw contract_error("polytope: no points");
    for (const IntVec& p : pts)
        if (p.size() != pts[0].size() || p.empty())
            throw contract_error("polytope: mixed point dimensions");
    std::set<IntVec> seen(pts.begin(), pts.end());
    if (seen.size() != pts.size()) throw contract_error("polytope: duplicate points");
}

// Affine functional on the coordinate space: f . c + f0.
struct Ineq {
    RatVec f;
    Rat f0;
};

Rat eval_ineq(const Ineq& q, const RatVec& c) {
    Rat v = q.f0;
    for (std::size_t i = 0; i < q.f.size(); ++i)
        if (q.f[i] != 0 && c[i] != 0) v += q.f[i] * c[i];
    return v;
}

// Scale to a primitive integer vector, preserving orientation.
void normalize_ineq(Ineq& q) {
    Int l = q.f0.get_den();
    for (const Rat& x : q.f) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den().get_mpz_t());
    Int g = 0;
    auto scaled_num = [&](const Rat& x) {
        Rat v = x * Rat(l);
        v.canonicalize();
        return v.get_num();
    };
    std::vector<Int> nums;
    nums.reserve(q.f.size() + 1);
    for (const Rat& x : q.f) nums.push_back(scaled_num(x));
    nums.push_back(scaled_num(q.f0));
    for (const Int& x : nums) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 0) throw internal_error("normalize_ineq: zero functional");
    for (std::size_t i = 0; i < q.f.size(); ++i) q.f[i] = Rat(nums[i] / g);
    q.f0 = Rat(nums.back() / g);
}

bool same_ineq(const Ineq& a, const Ineq& b) {
    return a.f0 == b.f0 && a.f == b.f;
}

// Affine dimension of a coordinate subset (-1 when empty, 0 for a point).
int affine_dim_coords(const std::vector<RatVec>& cs) {
    if (cs.empty()) return -1;
    if (cs.size() == 1) return 0;
    RatMat d(static_cast<int>(cs.size()) - 1, static_cast<int>(cs[0].size()));
    for (std::size_t i = 1; i < cs.size(); ++i)
        for (std::size_t j = 0; j < cs[0].size(); ++j)
            d.at(static_cast<int>(i) - 1, static_cast<int>(j)) = cs[i][j] - cs[0][j];
    return rank_exact(d);
}

// The unique (up to scale) affine functional vanishing on an affinely
// independent point set of size a inside an a-dimensional coordinate
// space, oriented to be positive at `inside`.
Ineq hyperplane_through(const std::vector<RatVec>& pts, const RatVec& inside) {
    const int a = static_cast<int>(inside.size());
    RatMat sys(static_cast<int>(pts.size()), a + 1);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (int j = 0; j < a; ++j) sys.at(static_cast<int>(i), j) = pts[i][j];
        sys.at(static_cast<int>(i), a) = 1;
    }
    auto kb = kernel_basis(sys);
    if (kb.size() != 1) throw internal_error("hyperplane_through: degenerate input");
    Ineq q;
    q.f.assign(kb[0].begin(), kb[0].begin() + a);
    q.f0 = kb[0][a];
    const Rat v = eval_ineq(q, inside);
    if (v == 0) throw internal_error("hyperplane_through: reference point on plane");
    if (v < 0) {
        for (Rat& x : q.f) x = -x;
        q.f0 = -q.f0;
    }
    normalize_ineq(q);
    return q;
}

}  // namespace

int affine_dim(const std::vector<IntVec>& pts) {
    validate_points(pts);
    if (pts.size() == 1) return 0;
    IntMat d(static_cast<int>(pts.size()) - 1, static_cast<int>(pts[0].size()));
    for (std::size_t i = 1; i < pts.size(); ++i)
        for (std::size_t j = 0; j < pts[0].size(); ++j)
            d.at(static_cast<int>(i) - 1, static_cast<int>(j)) = pts[i][j] - pts[0][j];
    return rank_exact(d);
}

std::vector<Facet> facets(const std::vector<IntVec>& pts) {
    validate_points(pts);
    const int m = static_cast<int>(pts.size());
    const int dim_amb = static_cast<int>(pts[0].size());

    // ----- affine coordinates on the hull --------------------------------
    // Greedy basis of difference vectors, then c(x) = R (x - p0) with
    // R = (B B^T)^{-1} B, which is a left inverse of B^T on the hull.
    std::vector<int> basis_rows;
    {
        std::vector<IntVec> chosen;
        for (int i = 1; i < m; ++i) {
            IntVec d(dim_amb);
            for (int j = 0; j < dim_amb; ++j) d[static_cast<std::size_t>(j)] =
                pts[i][j] - pts[0][j];
            chosen.push_back(d);
            IntMat trial(static_cast<int>(chosen.size()), dim_amb);
            for (std::size_t r = 0; r < chosen.size(); ++r)
                for (int j = 0; j < dim_amb; ++j)
                    trial.at(static_cast<int>(r), j) = chosen[r][j];
            if (rank_exact(trial) == static_cast<int>(chosen.size()))
                basis_rows.push_back(i);
            else
                chosen.pop_back();
        }
    }
    const int a = static_cast<int>(basis_rows.size());
    if (a < 1) throw contract_error("facets: polytope has affine dimension 0");

    RatMat b(a, dim_amb);
    for (int r = 0; r < a; ++r)
        for (int j = 0; j < dim_amb; ++j)
            b.at(r, j) = Rat(pts[basis_rows[r]][j] - pts[0][j]);
    auto gram_inv = inverse(b * b.transpose());
    if (!gram_inv) throw internal_error("facets: basis Gram matrix singular");
    RatMat r_map = *gram_inv * b;  // a x dim_amb

    std::vector<RatVec> coords(m);
    for (int i = 0; i < m; ++i) {
        RatVec w(dim_amb);
        for (int j = 0; j < dim_amb; ++j) w[j] = Rat(pts[i][j] - pts[0][j]);
        coords[i] = mat_vec(r_map, w);
        // R is only a coordinate map on the hull itself; verify membership.
        RatVec back = mat_vec(b.transpose(), coords[i]);
        if (back != w) throw internal_error("facets: point outside affine hull basis");
    }

    // ----- facet inequalities in coordinate space ------------------------
    std::vector<Ineq> fs;
    std::vector<int> processed;

    if (a == 1) {
        // An interval: the two extreme points are the facets.
        int lo = 0, hi = 0;
        for (int i = 1; i < m; ++i) {
            if (coords[i][0] < coords[lo][0]) lo = i;
            if (coords[i][0] > coords[hi][0]) hi = i;
        }
        Ineq low{{Rat(1)}, -coords[lo][0]};
        Ineq high{{Rat(-1)}, coords[hi][0]};
        normalize_ineq(low);
        normalize_ineq(high);
        fs = {low, high};
    } else {
        // Initial simplex: a+1 affinely independent points, greedily.
        std::vector<int> simplex = {0};
        std::vector<RatVec> sc = {coords[0]};
        for (int i = 1; i < m && static_cast<int>(simplex.size()) < a + 1; ++i) {
            sc.push_back(coords[i]);
            if (affine_dim_coords(sc) == static_cast<int>(sc.size()) - 1)
                simplex.push_back(i);
            else
                sc.pop_back();
        }
        if (static_cast<int>(simplex.size()) != a + 1)
            throw internal_error("facets: affine dimension inconsistency");

        for (int omit = 0; omit <= a; ++omit) {
            std::vector<RatVec> on;
            for (int k = 0; k <= a; ++k)
                if (k != omit) on.push_back(coords[simplex[k]]);
            fs.push_back(hyperplane_through(on, coords[simplex[omit]]));
        }
        processed = simplex;

        std::vector<bool> in_simplex(m, false);
        for (int s : simplex) in_simplex[s] = true;

        for (int i = 0; i < m; ++i) {
            if (in_simplex[i]) continue;
            std::vector<Rat> vals(fs.size());
            bool outside = false;
            for (std::size_t k = 0; k < fs.size(); ++k) {
                vals[k] = eval_ineq(fs[k], coords[i]);
                outside = outside || vals[k] < 0;
            }
            if (!outside) {
                processed.push_back(i);
                continue;
            }
            std::vector<Ineq> next;
            for (std::size_t k = 0; k < fs.size(); ++k)
                if (vals[k] >= 0) next.push_back(fs[k]);
            // Each ridge between a visible and an invisible facet spawns
            // the new facet through that ridge and the new point.
            for (std::size_t kp = 0; kp < fs.size(); ++kp) {
                if (vals[kp] <= 0) continue;
                for (std::size_t kn = 0; kn < fs.size(); ++kn) {
                    if (vals[kn] >= 0) continue;
                    std::vector<RatVec> common;
                    for (int j : processed)
                        if (eval_ineq(fs[kp], coords[j]) == 0 &&
                            eval_ineq(fs[kn], coords[j]) == 0)
                            common.push_back(coords[j]);
                    if (affine_dim_coords(common) != a - 2) continue;
                    Ineq g;
                    g.f.resize(a);
                    for (int j = 0; j < a; ++j)
                        g.f[j] = vals[kp] * fs[kn].f[j] - vals[kn] * fs[kp].f[j];
                    g.f0 = vals[kp] * fs[kn].f0 - vals[kn] * fs[kp].f0;
                    normalize_ineq(g);
                    bool dup = false;
                    for (const Ineq& q : next) dup = dup || same_ineq(q, g);
                    if (!dup) next.push_back(g);
                }
            }
            fs = std::move(next);
            processed.push_back(i);
        }
    }

    // ----- translate back to the ambient space and verify ----------------
    std::vector<Facet> out;
    for (const Ineq& q : fs) {
        Facet fac;
        // lambda = R^T f ; offset = f0 - lambda . p0
        fac.functional.assign(dim_amb, Rat(0));
        for (int j = 0; j < dim_amb; ++j)
            for (int k = 0; k < a; ++k) fac.functional[j] += r_map.at(k, j) * q.f[k];
        fac.offset = q.f0;
        for (int j = 0; j < dim_amb; ++j)
            fac.offset -= fac.functional[j] * Rat(pts[0][j]);
        for (int i = 0; i < m; ++i) {
            Rat v = fac.offset;
            for (int j = 0; j < dim_amb; ++j) v += fac.functional[j] * Rat(pts[i][j]);
            if (v < 0) throw internal_error("facets: functional negative on a point");
            if (v == 0) fac.vertex_indices.push_back(i);
        }
        {
            std::vector<RatVec> on;
            for (int i : fac.vertex_indices) on.push_back(coords[i]);
            if (affine_dim_coords(on) != a - 1)
                throw internal_error("facets: support has wrong dimension");
        }
        out.push_back(std::move(fac));
    }
    std::sort(out.begin(), out.end(), [](const Facet& x, const Facet& y) {
        return x.vertex_indices < y.vertex_indices;
    });
    for (std::size_t i = 1; i < out.size(); ++i)
        if (out[i].vertex_indices == out[i - 1].vertex_indices)
            throw internal_error("facets: duplicate facet support");
    return out;
}

}  // namespace slncoh
