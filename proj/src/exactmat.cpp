#include "exactmat.hpp"

#include <algorithm>
#include <cctype>

namespace slncoh {

Rat rat_parse(const std::string& s) {
    auto check_int = [](const std::string& t) {
        if (t.empty()) return false;
        std::size_t i = (t[0] == '-') ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
        return true;
    };
    std::string num = s, den = "1";
    if (auto pos = s.find('/'); pos != std::string::npos) {
        num = s.substr(0, pos);
        den = s.substr(pos + 1);
    }
    if (!check_int(num) || !check_int(den))
        throw data_error("rat_parse: malformed rational '" + s + "'");
    const Int n(num), d(den);
    if (d == 0) throw data_error("rat_parse: zero denominator in '" + s + "'");
    Rat r(n, d);
    r.canonicalize();
    return r;
}

std::string rat_print(const Rat& x) {
    Rat c = x;
    c.canonicalize();  // mpq_class does not canonicalise two-argument input
    if (c.get_den() == 1) return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

RatMat to_rational(const IntMat& m) {
    RatMat r(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r.at(i, j) = Rat(m.at(i, j));
    return r;
}

IntMat to_integer_rows(const RatMat& m, std::vector<Int>* scales) {
    IntMat r(m.rows(), m.cols());
    if (scales) scales->assign(m.rows(), Int(1));
    for (int i = 0; i < m.rows(); ++i) {
        Int lcm = 1;
        for (int j = 0; j < m.cols(); ++j)
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), m.at(i, j).get_den().get_mpz_t());
        for (int j = 0; j < m.cols(); ++j) {
            Rat v = m.at(i, j) * Rat(lcm);
            v.canonicalize();
            if (v.get_den() != 1) throw internal_error("to_integer_rows: scaling failed");
            r.at(i, j) = v.get_num();
        }
        if (scales) (*scales)[i] = lcm;
    }
    return r;
}

namespace {

Int exact_div(const Int& a, const Int& b) {
    Int q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

}  // namespace

Int det_exact(const IntMat& m) {
    if (!m.is_square()) throw contract_error("det_exact: matrix not square");
    const int n = m.rows();
    if (n == 0) return 1;
    IntMat a = m;
    int sign = 1;
    Int prev = 1;
    for (int k = 0; k + 1 < n; ++k) {
        int piv = -1;
        for (int r = k; r < n; ++r)
            if (a.at(r, k) != 0) { piv = r; break; }
        if (piv < 0) return 0;
        if (piv != k) {
            for (int j = k; j < n; ++j) std::swap(a.at(k, j), a.at(piv, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j)
                a.at(i, j) = exact_div(a.at(k, k) * a.at(i, j) - a.at(i, k) * a.at(k, j), prev);
            a.at(i, k) = 0;
        }
        prev = a.at(k, k);
    }
    return sign * a.at(n - 1, n - 1);
}

Rat det_exact(const RatMat& m) {
    if (!m.is_square()) throw contract_error("det_exact: matrix not square");
    std::vector<Int> scales;
    IntMat a = to_integer_rows(m, &scales);
    Rat d(det_exact(a));
    for (const Int& s : scales) d /= Rat(s);
    d.canonicalize();
    return d;
}

int rank_exact(const IntMat& m) {
    IntMat a = m;
    const int rows = a.rows(), cols = a.cols();
    Int prev = 1;
    int k = 0;
    while (k < rows && k < cols) {
        // Full pivoting: any nonzero entry of the trailing block will do.
        int pr = -1, pc = -1;
        for (int i = k; i < rows && pr < 0; ++i)
            for (int j = k; j < cols; ++j)
                if (a.at(i, j) != 0) { pr = i; pc = j; break; }
        if (pr < 0) break;
        if (pr != k)
            for (int j = 0; j < cols; ++j) std::swap(a.at(k, j), a.at(pr, j));
        if (pc != k)
            for (int i = 0; i < rows; ++i) std::swap(a.at(i, k), a.at(i, pc));
        for (int i = k + 1; i < rows; ++i) {
            for (int j = k + 1; j < cols; ++j)
                a.at(i, j) = exact_div(a.at(k, k) * a.at(i, j) - a.at(i, k) * a.at(k, j), prev);
            a.at(i, k) = 0;
        }
        prev = a.at(k, k);
        ++k;
    }
    return k;
}

int rank_exact(const RatMat& m) { return rank_exact(to_integer_rows(m)); }

RatMat rref(const RatMat& m, std::vector<int>* pivots) {
    RatMat a = m;
    const int rows = a.rows(), cols = a.cols();
    if (pivots) pivots->clear();
    int row = 0;
    for (int col = 0; col < cols && row < rows; ++col) {
        int piv = -1;
        for (int r = row; r < rows; ++r)
            if (a.at(r, col) != 0) { piv = r; break; }
        if (piv < 0) continue;
        if (piv != row)
            for (int j = 0; j < cols; ++j) std::swap(a.at(row, j), a.at(piv, j));
        const Rat inv = 1 / a.at(row, col);
        for (int j = col; j < cols; ++j) a.at(row, j) *= inv;
        for (int r = 0; r < rows; ++r) {
            if (r == row || a.at(r, col) == 0) continue;
            const Rat f = a.at(r, col);
            for (int j = col; j < cols; ++j) a.at(r, j) -= f * a.at(row, j);
        }
        if (pivots) pivots->push_back(col);
        ++row;
    }
    return a;
}

std::optional<RatVec> solve(const RatMat& a, const RatVec& b) {
    if (static_cast<int>(b.size()) != a.rows())
        throw contract_error("solve: rhs size mismatch");
    RatMat aug(a.rows(), a.cols() + 1);
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
        aug.at(i, a.cols()) = b[i];
    }
    std::vector<int> piv;
    RatMat r = rref(aug, &piv);
    if (!piv.empty() && piv.back() == a.cols()) return std::nullopt;
    RatVec x(a.cols(), Rat(0));
    for (std::size_t k = 0; k < piv.size(); ++k) x[piv[k]] = r.at(static_cast<int>(k), a.cols());
    return x;
}

std::vector<RatVec> kernel_basis(const RatMat& a) {
    std::vector<int> piv;
    RatMat r = rref(a, &piv);
    std::vector<bool> is_pivot(a.cols(), false);
    for (int c : piv) is_pivot[c] = true;
    std::vector<RatVec> basis;
    for (int f = 0; f < a.cols(); ++f) {
        if (is_pivot[f]) continue;
        RatVec x(a.cols(), Rat(0));
        x[f] = 1;
        for (std::size_t k = 0; k < piv.size(); ++k) x[piv[k]] = -r.at(static_cast<int>(k), f);
        basis.push_back(std::move(x));
    }
    return basis;
}

std::optional<RatMat> inverse(const RatMat& a) {
    if (!a.is_square()) throw contract_error("inverse: matrix not square");
    const int n = a.rows();
    RatMat aug(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug.at(i, j) = a.at(i, j);
        aug.at(i, n + i) = 1;
    }
    std::vector<int> piv;
    RatMat r = rref(aug, &piv);
    if (static_cast<int>(piv.size()) < n || piv[n - 1] != n - 1) return std::nullopt;
    RatMat inv(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv.at(i, j) = r.at(i, n + j);
    return inv;
}

RatVec mat_vec(const RatMat& a, const RatVec& x) {
    if (static_cast<int>(x.size()) != a.cols())
        throw contract_error("mat_vec: size mismatch");
    RatVec y(a.rows(), Rat(0));
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (a.at(i, j) != 0 && x[j] != 0) y[i] += a.at(i, j) * x[j];
    return y;
}

namespace {

// Shared worker: LDL^T by symmetric elimination, stopping at the first
// non-positive pivot.  Positive definiteness is exactly "all pivots > 0"
// (Sylvester), so the same loop serves both entry points.
std::optional<Ldl> try_ldl(const RatMat& q) {
    const int n = q.rows();
    RatMat a = q;
    Ldl out;
    out.l = RatMat::identity(n);
    out.d.assign(n, Rat(0));
    for (int k = 0; k < n; ++k) {
        const Rat piv = a.at(k, k);
        if (piv <= 0) return std::nullopt;
        out.d[k] = piv;
        for (int i = k + 1; i < n; ++i) out.l.at(i, k) = a.at(i, k) / piv;
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                a.at(i, j) -= a.at(i, k) * a.at(k, j) / piv;
    }
    return out;
}

}  // namespace

bool is_positive_definite(const RatMat& q) {
    if (!q.is_symmetric()) throw contract_error("is_positive_definite: matrix not symmetric");
    return try_ldl(q).has_value();
}

Ldl ldl_decompose(const RatMat& q) {
    if (!q.is_symmetric()) throw contract_error("ldl_decompose: matrix not symmetric");
    auto r = try_ldl(q);
    if (!r) throw contract_error("ldl_decompose: matrix not positive definite");
    return *r;
}

}  // namespace slncoh
