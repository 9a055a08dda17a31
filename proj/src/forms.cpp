#include "forms.hpp"

#include <algorithm>

namespace slncoh {

bool is_canonical_vector(const LatVec& v) {
    for (long x : v) {
        if (x > 0) return true;
        if (x < 0) return false;
    }
    return false;  // the zero vector
}

LatVec canonical_vector(const LatVec& v) {
    if (is_canonical_vector(v)) return v;
    LatVec w(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) w[i] = -v[i];
    return w;
}

bool lex_less(const LatVec& a, const LatVec& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::vector<LatVec> canonicalize_vector_set(const std::vector<LatVec>& vs) {
    std::vector<LatVec> out;
    out.reserve(vs.size());
    for (const LatVec& v : vs) {
        if (!vs.empty() && v.size() != vs[0].size())
            throw contract_error("vector set: mixed dimensions");
        LatVec c = canonical_vector(v);
        if (!is_canonical_vector(c)) throw contract_error("vector set: zero vector");
        out.push_back(std::move(c));
    }
    std::sort(out.begin(), out.end(), lex_less);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool is_canonical_vector_set(const std::vector<LatVec>& vs) {
    if (vs.empty()) return false;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (vs[i].size() != vs[0].size()) return false;
        if (!is_canonical_vector(vs[i])) return false;
        if (i > 0 && !lex_less(vs[i - 1], vs[i])) return false;
    }
    return true;
}

Rat eval_form(const RatMat& q, const LatVec& v) {
    if (static_cast<int>(v.size()) != q.rows() || !q.is_square())
        throw contract_error("eval_form: size mismatch");
    Rat acc(0);
    for (int i = 0; i < q.rows(); ++i) {
        if (v[i] == 0) continue;
        for (int j = 0; j < q.cols(); ++j) {
            if (v[j] == 0) continue;
            acc += q.at(i, j) * Rat(static_cast<long>(v[i]) * v[j]);
        }
    }
    return acc;
}

IntMat rank_one(const LatVec& v) {
    const int n = static_cast<int>(v.size());
    IntMat m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m.at(i, j) = static_cast<long>(v[i]) * v[j];
    return m;
}

RatMat barycentre(const std::vector<LatVec>& vs) {
    if (!is_canonical_vector_set(vs))
        throw contract_error("barycentre: input is not a canonical vector set");
    const int n = static_cast<int>(vs[0].size());
    RatMat q(n, n);
    for (const LatVec& v : vs)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                q.at(i, j) += Rat(2 * static_cast<long>(v[i]) * v[j]);
    return q;
}

int rank_one_span_dim(const std::vector<LatVec>& vs) {
    if (vs.empty()) return 0;
    const int n = static_cast<int>(vs[0].size());
    IntMat rows(static_cast<int>(vs.size()), n * n);
    for (std::size_t k = 0; k < vs.size(); ++k) {
        IntMat r = rank_one(vs[k]);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) rows.at(static_cast<int>(k), i * n + j) = r.at(i, j);
    }
    return rank_exact(rows);
}

namespace {

long ceil_rat(const Rat& x) {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
    if (!q.fits_slong_p()) throw internal_error("enumeration coordinate out of range");
    return q.get_si();
}

/**
 * Exact short vector enumeration on q = L D L^T:
 *     q(x) = sum_i d_i (x_i + c_i)^2,   c_i = sum_{j > i} L_ji x_j.
 * Coordinates are fixed from the last to the first; each one sweeps
 * outward from the centre -c_i in both directions until its term alone
 * exceeds the remaining budget, which is exact and needs no square roots.
 */
class Enumerator {
  public:
    Enumerator(Ldl f, Rat bound) : f_(std::move(f)), bound_(std::move(bound)) {
        n_ = static_cast<int>(f_.d.size());
    }

    std::vector<LatVec> run() {
        x_.assign(n_, 0);
        out_.clear();
        if (bound_ >= 0) descend(n_ - 1, bound_);
        std::sort(out_.begin(), out_.end(), lex_less);
        return std::move(out_);
    }

  private:
    void descend(int i, const Rat& budget) {
        if (i < 0) {
            emit();
            return;
        }
        Rat c(0);
        for (int j = i + 1; j < n_; ++j)
            if (x_[j] != 0) c += f_.l.at(j, i) * Rat(x_[j]);
        const long start = ceil_rat(-c);
        for (long xi = start;; ++xi) {
            Rat off = Rat(xi) + c;
            Rat term = f_.d[i] * off * off;
            if (term > budget) break;
            x_[i] = xi;
            descend(i - 1, budget - term);
        }
        for (long xi = start - 1;; --xi) {
            Rat off = Rat(xi) + c;
            Rat term = f_.d[i] * off * off;
            if (term > budget) break;
            x_[i] = xi;
            descend(i - 1, budget - term);
        }
        x_[i] = 0;
    }

    void emit() {
        // Each antipodal pair is visited twice; keep the canonical half.
        if (is_canonical_vector(x_)) out_.push_back(x_);
    }

    Ldl f_;
    Rat bound_;
    int n_;
    LatVec x_;
    std::vector<LatVec> out_;
};

void require_posdef(const RatMat& q, const char* who) {
    if (!is_positive_definite(q))
        throw contract_error(std::string(who) + ": form is not positive definite");
}

}  // namespace

std::vector<LatVec> vectors_up_to(const RatMat& q, const Rat& c) {
    require_posdef(q, "vectors_up_to");
    if (c < 0) throw contract_error("vectors_up_to: negative bound");
    Enumerator e(ldl_decompose(q), c);
    return e.run();
}

std::vector<LatVec> vectors_of_value(const RatMat& q, const Rat& c) {
    std::vector<LatVec> out;
    if (c <= 0) return out;
    for (LatVec& v : vectors_up_to(q, c)) {
        if (eval_form(q, v) == c) out.push_back(std::move(v));
    }
    return out;
}

ShortVectors minimal_vectors(const RatMat& q) {
    require_posdef(q, "minimal_vectors");
    Rat bound = q.at(0, 0);
    for (int i = 1; i < q.rows(); ++i) bound = std::min(bound, q.at(i, i));
    std::vector<LatVec> cand = vectors_up_to(q, bound);
    if (cand.empty()) throw internal_error("minimal_vectors: empty candidate set");
    ShortVectors sv;
    sv.min_value = bound;
    for (const LatVec& v : cand) sv.min_value = std::min(sv.min_value, eval_form(q, v));
    for (LatVec& v : cand)
        if (eval_form(q, v) == sv.min_value) sv.vectors.push_back(std::move(v));
    return sv;
}

bool is_perfect(const RatMat& q) {
    require_posdef(q, "is_perfect");
    const int n = q.rows();
    return rank_one_span_dim(minimal_vectors(q).vectors) == n * (n + 1) / 2;
}

RatMat act_form(const RatMat& q, const IntMat& g) {
    if (!g.is_square() || g.rows() != q.rows())
        throw contract_error("act_form: size mismatch");
    RatMat gr = to_rational(g);
    return gr.transpose() * q * gr;
}

LatVec act_vector(const LatVec& v, const IntMat& g) {
    const int n = g.rows();
    if (!g.is_square() || static_cast<int>(v.size()) != n)
        throw contract_error("act_vector: size mismatch");
    LatVec w(n, 0);
    for (int i = 0; i < n; ++i) {
        Int acc = 0;
        for (int j = 0; j < n; ++j) acc += g.at(j, i) * v[j];  // g^T v
        if (!acc.fits_slong_p()) throw internal_error("act_vector: entry out of range");
        w[i] = acc.get_si();
    }
    return w;
}

std::vector<LatVec> act_vector_set(const std::vector<LatVec>& vs, const IntMat& g) {
    if (!is_canonical_vector_set(vs))
        throw contract_error("act_vector_set: input is not a canonical vector set");
    std::vector<LatVec> out;
    out.reserve(vs.size());
    for (const LatVec& v : vs) out.push_back(act_vector(v, g));
    return canonicalize_vector_set(out);
}

std::vector<IntMat> perfect_seeds(int N) {
    if (N < 2 || N > 4) throw contract_error("perfect_seeds: N must be 2..4");
    auto a_n = [](int n) {
        IntMat m(n, n);
        for (int i = 0; i < n; ++i) {
            m.at(i, i) = 2;
            if (i + 1 < n) {
                m.at(i, i + 1) = -1;
                m.at(i + 1, i) = -1;
            }
        }
        return m;
    };
    std::vector<IntMat> seeds = {a_n(N)};
    if (N == 4) {
        IntMat d4(4, 4);
        const long rows[4][4] = {{2, 0, -1, 0}, {0, 2, -1, 0}, {-1, -1, 2, -1}, {0, 0, -1, 2}};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) d4.at(i, j) = rows[i][j];
        seeds.push_back(d4);
    }
    return seeds;
}

}  // namespace slncoh
