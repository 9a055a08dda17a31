#include "reps.hpp"

#include <algorithm>
#include <deque>
#include <random>

#include "bigrank.hpp"

namespace slncoh {

namespace {

long group_order(int n, int p) {
    long order = 1;
    for (int i = 0; i < n * (n - 1) / 2; ++i) order *= p;
    for (int i = 2; i <= n; ++i) {
        long q = 1;
        for (int k = 0; k < i; ++k) q *= p;
        order *= q - 1;
    }
    return order;
}

int det_mod(const std::array<std::uint8_t, 16>& m, int n, int p) {
    if (n == 1) return m[0] % p;
    int acc = 0;
    for (int c = 0; c < n; ++c) {
        std::array<std::uint8_t, 16> sub{};
        for (int i = 1; i < n; ++i) {
            int k = 0;
            for (int j = 0; j < n; ++j) {
                if (j == c) continue;
                sub[(i - 1) * (n - 1) + k] = m[i * n + j];
                ++k;
            }
        }
        int term = m[c] * det_mod(sub, n - 1, p) % p;
        if (c % 2) term = (p - term) % p;
        acc = (acc + term) % p;
    }
    return acc;
}

std::array<std::uint8_t, 16> adjugate_mod(const std::array<std::uint8_t, 16>& m, int n,
                                          int p) {
    std::array<std::uint8_t, 16> out{};
    if (n == 1) {
        out[0] = 1;
        return out;
    }
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            std::array<std::uint8_t, 16> minor{};
            int r = 0;
            for (int a = 0; a < n; ++a) {
                if (a == i) continue;
                int k = 0;
                for (int b = 0; b < n; ++b) {
                    if (b == j) continue;
                    minor[r * (n - 1) + k] = m[a * n + b];
                    ++k;
                }
                ++r;
            }
            int cof = det_mod(minor, n - 1, p);
            if ((i + j) % 2) cof = (p - cof) % p;
            out[j * n + i] = static_cast<std::uint8_t>(cof % p);
        }
    }
    return out;
}

IntMat make_mat(int n, const std::vector<long>& flat) {
    IntMat m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m.at(i, j) = flat[i * n + j];
    return m;
}

}  // namespace

std::uint32_t FiniteGroup::encode(const std::array<std::uint8_t, 16>& m) const {
    std::uint32_t code = 0;
    for (int k = n_ * n_ - 1; k >= 0; --k) code = code * p_ + m[k];
    return code;
}

int FiniteGroup::mul_raw(int a, int b, std::array<std::uint8_t, 16>& out) const {
    const auto& x = mats_[a];
    const auto& y = mats_[b];
    for (int i = 0; i < n_; ++i) {
        for (int j = 0; j < n_; ++j) {
            int acc = 0;
            for (int k = 0; k < n_; ++k) acc += x[i * n_ + k] * y[k * n_ + j];
            out[i * n_ + j] = static_cast<std::uint8_t>(acc % p_);
        }
    }
    const std::int32_t idx = lookup_[encode(out)];
    if (idx < 0) throw internal_error("finite group is not closed under products");
    return idx;
}

int FiniteGroup::multiply(int a, int b) const {
    if (a < 0 || a >= size() || b < 0 || b >= size())
        throw contract_error("multiply: element index out of range");
    std::array<std::uint8_t, 16> tmp{};
    return mul_raw(a, b, tmp);
}

int FiniteGroup::inverse(int a) const {
    if (a < 0 || a >= size()) throw contract_error("inverse: element index out of range");
    return inv_[a];
}

IntMat FiniteGroup::matrix_of(int index) const {
    if (index < 0 || index >= size())
        throw contract_error("matrix_of: element index out of range");
    IntMat m(n_, n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) m.at(i, j) = mats_[index][i * n_ + j];
    return m;
}

int FiniteGroup::index_of(const IntMat& m) const {
    if (!m.is_square() || m.rows() != n_)
        throw contract_error("index_of: matrix size does not match the group");
    std::array<std::uint8_t, 16> a{};
    for (int i = 0; i < n_; ++i) {
        for (int j = 0; j < n_; ++j) {
            Int r = m.at(i, j) % p_;
            if (r < 0) r += p_;
            a[i * n_ + j] = static_cast<std::uint8_t>(r.get_si());
        }
    }
    const std::int32_t idx = lookup_[encode(a)];
    if (idx < 0) throw data_error("index_of: matrix is not in the group");
    return idx;
}

int FiniteGroup::reduce(const GroupElem& g) const {
    if (g.n() != n_) throw contract_error("reduce: element size does not match the group");
    try {
        return index_of(g.matrix());
    } catch (const data_error&) {
        throw internal_error("reduce: determinant-one matrix missing from the group");
    }
}

std::shared_ptr<const FiniteGroup> FiniteGroup::enumerate(int n, int p) {
    const bool supported = (n == 2 && p == 2) || (n == 3 && p == 3) || (n == 4 && p == 2);
    if (!supported) throw contract_error("enumerate: supported parameters are (2,2), (3,3), (4,2)");

    auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
    g->n_ = n;
    g->p_ = p;
    std::uint32_t space = 1;
    for (int k = 0; k < n * n; ++k) space *= static_cast<std::uint32_t>(p);
    g->lookup_.assign(space, -1);

    const long expected = group_order(n, p);

    // Generators: elementary matrices E_ij(1) mod p.
    std::vector<std::array<std::uint8_t, 16>> gens;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            std::array<std::uint8_t, 16> e{};
            for (int k = 0; k < n; ++k) e[k * n + k] = 1;
            e[i * n + j] = 1;
            gens.push_back(e);
        }
    }

    std::array<std::uint8_t, 16> id{};
    for (int k = 0; k < n; ++k) id[k * n + k] = 1;

    // Breadth-first closure over right multiplication by the generators.
    std::vector<std::array<std::uint8_t, 16>> found;
    std::vector<std::uint32_t> seen_codes;
    std::deque<int> queue;
    auto push = [&](const std::array<std::uint8_t, 16>& m) {
        const std::uint32_t code = g->encode(m);
        if (g->lookup_[code] >= 0) return;
        if (static_cast<long>(found.size()) >= expected)
            throw internal_error("enumerate: closure exceeds the group order");
        g->lookup_[code] = static_cast<std::int32_t>(found.size());
        queue.push_back(static_cast<int>(found.size()));
        found.push_back(m);
        seen_codes.push_back(code);
    };
    push(id);
    while (!queue.empty()) {
        const auto cur = found[static_cast<std::size_t>(queue.front())];
        queue.pop_front();
        for (const auto& e : gens) {
            std::array<std::uint8_t, 16> prod{};
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) {
                    int acc = 0;
                    for (int k = 0; k < n; ++k) acc += cur[i * n + k] * e[k * n + j];
                    prod[i * n + j] = static_cast<std::uint8_t>(acc % p);
                }
            }
            push(prod);
        }
    }
    if (static_cast<long>(found.size()) != expected)
        throw internal_error("enumerate: closure does not reach the group order");

    // Re-index in sorted code order for a canonical element list.
    std::sort(seen_codes.begin(), seen_codes.end());
    g->codes_ = seen_codes;
    g->mats_.resize(found.size());
    for (std::size_t i = 0; i < g->codes_.size(); ++i) {
        const std::int32_t old = g->lookup_[g->codes_[i]];
        g->mats_[i] = found[static_cast<std::size_t>(old)];
        g->lookup_[g->codes_[i]] = static_cast<std::int32_t>(i);
    }
    g->identity_ = g->lookup_[g->encode(id)];

    g->inv_.resize(g->mats_.size());
    for (std::size_t i = 0; i < g->mats_.size(); ++i) {
        if (det_mod(g->mats_[i], n, p) != 1 % p)
            throw internal_error("enumerate: element with determinant not one");
        const auto adj = adjugate_mod(g->mats_[i], n, p);
        const std::int32_t j = g->lookup_[g->encode(adj)];
        if (j < 0) throw internal_error("enumerate: inverse missing from the closure");
        g->inv_[i] = j;
        std::array<std::uint8_t, 16> tmp{};
        if (g->mul_raw(static_cast<int>(i), j, tmp) != g->identity_)
            throw internal_error("enumerate: adjugate is not the inverse");
    }
    return g;
}

std::vector<int> subgroup_closure(const FiniteGroup& g, const std::vector<int>& generators) {
    if (generators.empty()) throw contract_error("subgroup_closure: no generators");
    std::vector<char> in(static_cast<std::size_t>(g.size()), 0);
    std::vector<int> members;
    std::deque<int> queue;
    auto push = [&](int e) {
        if (in[static_cast<std::size_t>(e)]) return;
        in[static_cast<std::size_t>(e)] = 1;
        members.push_back(e);
        queue.push_back(e);
    };
    push(g.identity());
    for (int e : generators) {
        if (e < 0 || e >= g.size())
            throw contract_error("subgroup_closure: generator index out of range");
        push(e);
    }
    while (!queue.empty()) {
        const int cur = queue.front();
        queue.pop_front();
        for (int e : generators) push(g.multiply(cur, e));
    }
    std::sort(members.begin(), members.end());
    return members;
}

int OrthogonalRep::row_of(int g, int col) const {
    if (g < 0 || g >= group_->size() || col < 0 || col >= dim_)
        throw contract_error("row_of: index out of range");
    return perm_[static_cast<std::size_t>(g) * dim_ + col];
}

int OrthogonalRep::sign_of(int g, int col) const {
    if (g < 0 || g >= group_->size() || col < 0 || col >= dim_)
        throw contract_error("sign_of: index out of range");
    return sign_[static_cast<std::size_t>(g) * dim_ + col];
}

RatMat OrthogonalRep::matrix(int g) const {
    RatMat m(dim_, dim_);
    for (int c = 0; c < dim_; ++c) m.at(row_of(g, c), c) = Rat(sign_of(g, c));
    return m;
}

OrthogonalRep OrthogonalRep::trivial(std::shared_ptr<const FiniteGroup> g) {
    OrthogonalRep rep;
    rep.group_ = std::move(g);
    rep.dim_ = 1;
    rep.perm_.assign(static_cast<std::size_t>(rep.group_->size()), 0);
    rep.sign_.assign(static_cast<std::size_t>(rep.group_->size()), 1);
    return rep;
}

OrthogonalRep OrthogonalRep::induce(std::shared_ptr<const FiniteGroup> g, const SubRep& sub) {
    const FiniteGroup& G = *g;
    const int count = static_cast<int>(sub.elements.size());
    if (count == 0) throw contract_error("induce: empty subgroup");
    if (sub.dim < 1) throw contract_error("induce: block dimension must be positive");
    if (static_cast<int>(sub.perm.size()) != count ||
        static_cast<int>(sub.sign.size()) != count)
        throw contract_error("induce: block table size mismatch");

    std::vector<std::int32_t> pos(static_cast<std::size_t>(G.size()), -1);
    for (int k = 0; k < count; ++k) {
        const int e = sub.elements[k];
        if (e < 0 || e >= G.size()) throw contract_error("induce: element out of range");
        if (k > 0 && sub.elements[k - 1] >= e)
            throw contract_error("induce: subgroup elements must be sorted and distinct");
        pos[static_cast<std::size_t>(e)] = k;
        if (static_cast<int>(sub.perm[k].size()) != sub.dim ||
            static_cast<int>(sub.sign[k].size()) != sub.dim)
            throw contract_error("induce: block size mismatch");
        for (int c = 0; c < sub.dim; ++c) {
            if (sub.perm[k][c] < 0 || sub.perm[k][c] >= sub.dim)
                throw contract_error("induce: block row out of range");
            if (sub.sign[k][c] != 1 && sub.sign[k][c] != -1)
                throw contract_error("induce: block signs must be +/-1");
        }
    }
    const int idpos = pos[static_cast<std::size_t>(G.identity())];
    if (idpos < 0) throw contract_error("induce: subgroup must contain the identity");
    for (int c = 0; c < sub.dim; ++c)
        if (sub.perm[idpos][c] != c || sub.sign[idpos][c] != 1)
            throw data_error("induce: identity block is not the identity matrix");

    // Closure under product and inverse, and the block homomorphism rule.
    for (int a = 0; a < count; ++a) {
        if (pos[static_cast<std::size_t>(G.inverse(sub.elements[a]))] < 0)
            throw contract_error("induce: subgroup not closed under inverse");
        for (int b = 0; b < count; ++b) {
            const int ab = G.multiply(sub.elements[a], sub.elements[b]);
            const std::int32_t k = pos[static_cast<std::size_t>(ab)];
            if (k < 0) throw contract_error("induce: subgroup not closed under product");
            for (int c = 0; c < sub.dim; ++c) {
                const int row = sub.perm[a][sub.perm[b][c]];
                const int sgn = sub.sign[a][sub.perm[b][c]] * sub.sign[b][c];
                if (sub.perm[k][c] != row || sub.sign[k][c] != sgn)
                    throw data_error("induce: blocks do not form a homomorphism");
            }
        }
    }

    // First-seen left-coset transversal in canonical element order.
    std::vector<std::int32_t> coset_of(static_cast<std::size_t>(G.size()), -1);
    std::vector<int> reps;
    for (int e = 0; e < G.size(); ++e) {
        if (coset_of[static_cast<std::size_t>(e)] >= 0) continue;
        const int k = static_cast<int>(reps.size());
        reps.push_back(e);
        for (int h = 0; h < count; ++h) {
            const int eh = G.multiply(e, sub.elements[h]);
            if (coset_of[static_cast<std::size_t>(eh)] >= 0)
                throw internal_error("induce: left cosets are not disjoint");
            coset_of[static_cast<std::size_t>(eh)] = k;
        }
    }
    if (static_cast<int>(reps.size()) * count != G.size())
        throw internal_error("induce: cosets do not partition the group");

    OrthogonalRep rep;
    rep.group_ = g;
    rep.dim_ = static_cast<int>(reps.size()) * sub.dim;
    if (rep.dim_ > 0xffff) throw contract_error("induce: induced dimension too large");
    rep.perm_.assign(static_cast<std::size_t>(G.size()) * rep.dim_, 0);
    rep.sign_.assign(static_cast<std::size_t>(G.size()) * rep.dim_, 0);
    std::vector<char> row_used(static_cast<std::size_t>(rep.dim_));
    for (int e = 0; e < G.size(); ++e) {
        std::fill(row_used.begin(), row_used.end(), 0);
        const std::size_t base = static_cast<std::size_t>(e) * rep.dim_;
        for (int j = 0; j < static_cast<int>(reps.size()); ++j) {
            const int gj = G.multiply(e, reps[j]);
            const int i = coset_of[static_cast<std::size_t>(gj)];
            const int h = G.multiply(G.inverse(reps[static_cast<std::size_t>(i)]), gj);
            const std::int32_t hp = pos[static_cast<std::size_t>(h)];
            if (hp < 0)
                throw internal_error("induce: coset displacement left the subgroup");
            for (int c = 0; c < sub.dim; ++c) {
                const int col = j * sub.dim + c;
                const int row = i * sub.dim + sub.perm[hp][c];
                rep.perm_[base + col] = static_cast<std::uint16_t>(row);
                rep.sign_[base + col] = static_cast<std::int8_t>(sub.sign[hp][c]);
                if (row_used[static_cast<std::size_t>(row)])
                    throw internal_error("induce: image is not a signed permutation");
                row_used[static_cast<std::size_t>(row)] = 1;
            }
        }
    }
    return rep;
}

namespace {

/** Membership flags over group indices for a sorted member list. */
std::vector<char> member_flags(const FiniteGroup& g, const std::vector<int>& members) {
    std::vector<char> in(static_cast<std::size_t>(g.size()), 0);
    for (int e : members) in[static_cast<std::size_t>(e)] = 1;
    return in;
}

void check_normal(const FiniteGroup& g, const std::vector<int>& big_gens,
                  const std::vector<int>& sub, const std::vector<char>& in_sub) {
    for (int gen : big_gens) {
        const int gi = g.inverse(gen);
        for (int m : sub) {
            const int conj = g.multiply(g.multiply(gi, m), gen);
            if (!in_sub[static_cast<std::size_t>(conj)])
                throw data_error("subgroup data: smaller subgroup is not normal");
        }
    }
}

OrthogonalRep make_pi3() {
    auto g = FiniteGroup::enumerate(3, 3);
    const auto s = g->index_of(make_mat(3, {0, 0, 1, 0, 2, 0, 1, 1, 0}));
    const auto t = g->index_of(make_mat(3, {1, 2, 0, 0, 2, 0, 1, 1, 2}));
    // The printed generator a coincides with s; both are embedded as given.
    const auto a = g->index_of(make_mat(3, {0, 0, 1, 0, 2, 0, 1, 1, 0}));
    const auto b = g->index_of(make_mat(3, {0, 1, 2, 0, 1, 0, 1, 2, 2}));

    const std::vector<int> hn = subgroup_closure(*g, {s, t});
    if (static_cast<int>(hn.size()) != 36)
        throw data_error("subgroup data: order of the rank-3 subgroup is not 36");
    const std::vector<int> h = subgroup_closure(*g, {s, a, b});
    if (static_cast<int>(h.size()) != 18)
        throw data_error("subgroup data: order of the rank-3 normal subgroup is not 18");
    const std::vector<char> in_h = member_flags(*g, h);
    for (int e : h)
        if (!std::binary_search(hn.begin(), hn.end(), e))
            throw data_error("subgroup data: normal subgroup not contained in the larger one");
    check_normal(*g, {s, t}, h, in_h);

    SubRep sub;
    sub.elements = hn;
    sub.dim = 1;
    for (int e : hn) {
        sub.perm.push_back({0});
        sub.sign.push_back({in_h[static_cast<std::size_t>(e)] ? 1 : -1});
    }
    OrthogonalRep rep = OrthogonalRep::induce(g, sub);
    if (rep.dim() != 156) throw internal_error("induced rank-3 dimension is not 156");
    return rep;
}

OrthogonalRep make_pi4() {
    auto g = FiniteGroup::enumerate(4, 2);
    const auto s = g->index_of(make_mat(4, {1, 0, 0, 0, 0, 0, 0, 1, 1, 1, 0, 1, 1, 0, 1, 1}));
    const auto t = g->index_of(make_mat(4, {0, 1, 1, 0, 0, 1, 1, 1, 1, 1, 1, 1, 0, 0, 1, 1}));
    const auto a = g->index_of(make_mat(4, {1, 0, 1, 1, 0, 1, 1, 1, 0, 0, 1, 0, 0, 0, 0, 1}));
    const auto b = g->index_of(make_mat(4, {1, 1, 1, 0, 1, 0, 0, 0, 0, 0, 1, 0, 1, 0, 1, 1}));
    const auto c = g->index_of(make_mat(4, {0, 1, 1, 1, 1, 0, 1, 1, 0, 0, 1, 0, 0, 0, 0, 1}));
    const auto d = g->index_of(make_mat(4, {1, 0, 1, 0, 0, 1, 1, 0, 0, 0, 1, 0, 0, 0, 0, 1}));
    const auto e = g->index_of(make_mat(4, {0, 1, 0, 1, 0, 1, 0, 0, 0, 0, 1, 0, 1, 1, 0, 0}));
    const auto f = g->index_of(make_mat(4, {1, 0, 0, 0, 1, 0, 1, 1, 0, 0, 1, 0, 1, 1, 1, 0}));
    const auto x = g->index_of(make_mat(4, {0, 1, 0, 0, 0, 1, 1, 1, 1, 1, 1, 1, 0, 0, 0, 1}));
    const auto y = g->index_of(make_mat(4, {0, 1, 0, 0, 0, 0, 0, 1, 1, 1, 0, 1, 0, 1, 1, 1}));

    const std::vector<int> hn = subgroup_closure(*g, {s, t});
    if (static_cast<int>(hn.size()) != 576)
        throw data_error("subgroup data: order of the rank-4 subgroup is not 576");
    const std::vector<int> h = subgroup_closure(*g, {a, b, c, d, e, f});
    if (static_cast<int>(h.size()) != 96)
        throw data_error("subgroup data: order of the rank-4 normal subgroup is not 96");
    const std::vector<char> in_h = member_flags(*g, h);
    const std::vector<char> in_hn = member_flags(*g, hn);
    for (int m : h)
        if (!in_hn[static_cast<std::size_t>(m)])
            throw data_error("subgroup data: normal subgroup not contained in the larger one");
    if (!in_hn[static_cast<std::size_t>(x)] || !in_hn[static_cast<std::size_t>(y)])
        throw data_error("subgroup data: quotient generators lie outside the subgroup");
    check_normal(*g, {s, t}, h, in_h);

    const int x2 = g->multiply(x, x);
    const int yx = g->multiply(y, x);
    const int yx2 = g->multiply(y, x2);
    const auto in = [&](int m) { return in_h[static_cast<std::size_t>(m)] != 0; };
    if (!in(g->multiply(x2, x)) || !in(g->multiply(y, y)) || !in(g->multiply(yx, yx)))
        throw data_error("subgroup data: quotient relations fail");
    if (in(x) || in(x2) || in(y) || in(yx) || in(yx2))
        throw data_error("subgroup data: quotient generators degenerate");

    // rho on the six cosets H, xH, x^2H, yH, yxH, yx^2H: the identity,
    // the three-cycles, and the negated transpositions.
    const int coset_reps[6] = {g->identity(), x, x2, y, yx, yx2};
    const int rho_perm[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1},
                                {1, 0, 2}, {0, 2, 1}, {2, 1, 0}};
    const int rho_sign[6] = {1, 1, 1, -1, -1, -1};

    SubRep sub;
    sub.elements = hn;
    sub.dim = 3;
    int label_count[6] = {0, 0, 0, 0, 0, 0};
    for (int m : hn) {
        int label = -1;
        for (int k = 0; k < 6; ++k) {
            if (in(g->multiply(g->inverse(coset_reps[k]), m))) {
                if (label >= 0) throw data_error("subgroup data: cosets overlap");
                label = k;
            }
        }
        if (label < 0) throw data_error("subgroup data: element in no listed coset");
        ++label_count[label];
        sub.perm.push_back(
            {rho_perm[label][0], rho_perm[label][1], rho_perm[label][2]});
        sub.sign.push_back({rho_sign[label], rho_sign[label], rho_sign[label]});
    }
    for (int k = 0; k < 6; ++k)
        if (label_count[k] != 96)
            throw data_error("subgroup data: coset sizes are not uniform");

    OrthogonalRep rep = OrthogonalRep::induce(g, sub);
    if (rep.dim() != 105) throw internal_error("induced rank-4 dimension is not 105");
    return rep;
}

}  // namespace

OrthogonalRep make_pi(int n) {
    if (n == 2) return OrthogonalRep::trivial(FiniteGroup::enumerate(2, 2));
    if (n == 3) return make_pi3();
    if (n == 4) return make_pi4();
    throw contract_error("make_pi: rank must be 2, 3 or 4");
}

std::vector<GroupElem> elementary_generators(int n) {
    if (n < 2 || n > kMaxGroupDim)
        throw contract_error("elementary_generators: rank must be between 2 and 4");
    std::vector<GroupElem> out;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            IntMat m = IntMat::identity(n);
            m.at(i, j) = 1;
            out.push_back(GroupElem::from_matrix(m));
        }
    }
    return out;
}

int invariant_vector_dim(const OrthogonalRep& rep, const std::vector<int>& generators) {
    if (generators.empty()) throw contract_error("invariant_vector_dim: no generators");
    const int d = rep.dim();
    IntMat stacked(static_cast<int>(generators.size()) * d, d);
    for (std::size_t k = 0; k < generators.size(); ++k) {
        const int g = generators[k];
        for (int c = 0; c < d; ++c) {
            stacked.at(static_cast<int>(k) * d + rep.row_of(g, c), c) += rep.sign_of(g, c);
            stacked.at(static_cast<int>(k) * d + c, c) -= 1;
        }
    }
    return d - certified_rank(stacked).rank;
}

RatMat representing_matrix(const GroupRingMatrix& m, const OrthogonalRep& rep) {
    const int d = rep.dim();
    RatMat out(m.rows() * d, m.cols() * d);
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) {
            for (const auto& [g, coeff] : m.at(i, j).terms()) {
                const int e = rep.group().reduce(g);
                for (int c = 0; c < d; ++c)
                    out.at(i * d + rep.row_of(e, c), j * d + c) +=
                        coeff * Rat(rep.sign_of(e, c));
            }
        }
    }
    return out;
}

}  // namespace slncoh
