#include "bigrank.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

namespace slncoh {

namespace {

// Word-sized primes for the candidate elimination; all below 2^31 so that
// products fit comfortably in 64 bits.
constexpr std::uint64_t kPrimes[] = {2147483629u, 2147483587u, 2147483579u,
                                     2147483563u, 2147483549u};

// Entries above this bit size route to the fraction-free fallback; the
// machine-word residual arithmetic below is sized for this bound.
constexpr int kMaxEntryBits = 48;

// Matrices smaller than this are cheaper to handle by plain elimination.
constexpr int kDixonMinDim = 40;

std::uint64_t mod_reduce_entry(const Int& v, std::uint64_t p) {
    return mpz_fdiv_ui(v.get_mpz_t(), p);
}

int max_entry_bits(const IntMat& a) {
    std::size_t bits = 0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            const Int& v = a.at(i, j);
            if (v != 0) bits = std::max(bits, mpz_sizeinbase(v.get_mpz_t(), 2));
        }
    return static_cast<int>(bits);
}

// Divide an integer vector by its content and make the first nonzero entry
// positive, so kernel vectors have one canonical representative.
void normalize_int_vec(IntVec& v) {
    Int g = 0;
    for (const Int& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g > 1)
        for (Int& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    for (const Int& x : v) {
        if (x == 0) continue;
        if (x < 0)
            for (Int& y : v) y = -y;
        break;
    }
}

/**
 * Exact batch check that A v = 0 for every candidate v, done modulo enough
 * 60-bit primes that the residue bound exceeds any possible entry of A v.
 * This keeps verification fast even when kernel entries are huge, and it is
 * still unconditional: |(Av)_i| <= n * max|A| * max|v| < product of primes.
 */
bool verify_kernel_batch(const IntMat& a, const std::vector<IntVec>& kernel) {
    if (kernel.empty()) return true;
    const int m = a.rows(), n = a.cols();
    std::size_t bits_w = 1;
    for (const IntVec& v : kernel)
        for (const Int& x : v)
            if (x != 0) bits_w = std::max(bits_w, mpz_sizeinbase(x.get_mpz_t(), 2));
    const std::size_t need = bits_w + max_entry_bits(a) + 40;  // generous slack

    Int q("1152921504606846976");  // 2^60; nextprime walks upward from here
    std::size_t have = 0;
    while (have < need) {
        mpz_nextprime(q.get_mpz_t(), q.get_mpz_t());
        const std::uint64_t p = q.get_ui();
        // Reduce the kernel vectors once per prime.
        std::vector<std::vector<std::uint64_t>> kv;
        kv.reserve(kernel.size());
        for (const IntVec& v : kernel) {
            std::vector<std::uint64_t> r(n);
            for (int j = 0; j < n; ++j) r[j] = mod_reduce_entry(v[j], p);
            kv.push_back(std::move(r));
        }
        std::vector<std::uint64_t> row(n);
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < n; ++j) row[j] = mod_reduce_entry(a.at(i, j), p);
            for (const auto& v : kv) {
                unsigned __int128 acc = 0;
                // Terms are < 2^122, so reduce every 16 to stay below 2^128.
                for (int j = 0; j < n; ++j) {
                    acc += static_cast<unsigned __int128>(row[j]) * v[j];
                    if ((j & 15) == 15) acc %= p;
                }
                if (acc % p != 0) return false;
            }
        }
        have += 60;
    }
    return true;
}

RankCertificate fallback_bareiss(const IntMat& a) {
    RankCertificate cert;
    cert.rank = rank_exact(a);
    for (const RatVec& x : kernel_basis(to_rational(a))) {
        Int lcm = 1;
        for (const Rat& e : x)
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), e.get_den().get_mpz_t());
        IntVec w(x.size());
        for (std::size_t j = 0; j < x.size(); ++j) {
            Rat v = x[j] * Rat(lcm);
            v.canonicalize();
            w[j] = v.get_num();
        }
        normalize_int_vec(w);
        cert.kernel.push_back(std::move(w));
    }
    if (!verify_kernel_batch(a, cert.kernel))
        throw internal_error("certified_rank: fallback kernel failed verification");
    return cert;
}

struct LuModP {
    std::uint64_t p = 0;
    int n = 0;
    std::vector<std::uint64_t> lu;  // packed L (below diagonal) and U
    std::vector<int> perm;          // row permutation applied to the input

    std::uint64_t& at(int i, int j) { return lu[static_cast<std::size_t>(i) * n + j]; }
    const std::uint64_t& at(int i, int j) const {
        return lu[static_cast<std::size_t>(i) * n + j];
    }
};

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
    // Extended Euclid; p is prime and a != 0 mod p.
    std::int64_t t = 0, nt = 1;
    std::int64_t r = static_cast<std::int64_t>(p), nr = static_cast<std::int64_t>(a % p);
    while (nr != 0) {
        const std::int64_t q = r / nr;
        std::swap(t -= q * nt, nt);
        std::swap(r -= q * nr, nr);
    }
    if (t < 0) t += static_cast<std::int64_t>(p);
    return static_cast<std::uint64_t>(t);
}

bool lu_factor(std::vector<std::int64_t>& sub, int n, std::uint64_t p, LuModP& out) {
    out.p = p;
    out.n = n;
    out.lu.assign(static_cast<std::size_t>(n) * n, 0);
    out.perm.resize(n);
    std::iota(out.perm.begin(), out.perm.end(), 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::int64_t v = sub[static_cast<std::size_t>(i) * n + j] %
                             static_cast<std::int64_t>(p);
            if (v < 0) v += static_cast<std::int64_t>(p);
            out.at(i, j) = static_cast<std::uint64_t>(v);
        }
    for (int k = 0; k < n; ++k) {
        int piv = -1;
        for (int i = k; i < n; ++i)
            if (out.at(i, k) != 0) { piv = i; break; }
        if (piv < 0) return false;
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(out.at(k, j), out.at(piv, j));
            std::swap(out.perm[k], out.perm[piv]);
        }
        const std::uint64_t inv = inv_mod(out.at(k, k), p);
        for (int i = k + 1; i < n; ++i) {
            if (out.at(i, k) == 0) continue;
            const std::uint64_t f = (out.at(i, k) * inv) % p;
            out.at(i, k) = f;
            for (int j = k + 1; j < n; ++j) {
                const std::uint64_t sub_v = (f * out.at(k, j)) % p;
                out.at(i, j) = (out.at(i, j) + p - sub_v) % p;
            }
        }
    }
    return true;
}

void lu_solve(const LuModP& lu, const std::vector<std::uint64_t>& b,
              std::vector<std::uint64_t>& x) {
    const int n = lu.n;
    const std::uint64_t p = lu.p;
    x.resize(n);
    for (int i = 0; i < n; ++i) x[i] = b[lu.perm[i]] % p;
    for (int i = 1; i < n; ++i) {
        std::uint64_t acc = x[i];
        for (int j = 0; j < i; ++j)
            acc = (acc + p * p - (lu.at(i, j) * x[j]) % p) % p;
        x[i] = acc;
    }
    for (int i = n - 1; i >= 0; --i) {
        std::uint64_t acc = x[i];
        for (int j = i + 1; j < n; ++j)
            acc = (acc + p * p - (lu.at(i, j) * x[j]) % p) % p;
        x[i] = (acc * inv_mod(lu.at(i, i), p)) % p;
    }
}

bool rational_reconstruct(const Int& x, const Int& modulus, Int& num, Int& den) {
    Int bound;
    mpz_fdiv_q_ui(bound.get_mpz_t(), modulus.get_mpz_t(), 2);
    mpz_sqrt(bound.get_mpz_t(), bound.get_mpz_t());
    Int r0 = modulus, r1 = x % modulus;
    if (r1 < 0) r1 += modulus;
    Int t0 = 0, t1 = 1;
    while (r1 > bound) {
        Int q = r0 / r1;
        Int r2 = r0 - q * r1;
        r0 = r1; r1 = r2;
        Int t2 = t0 - q * t1;
        t0 = t1; t1 = t2;
    }
    if (t1 == 0) return false;
    if (t1 < 0) { t1 = -t1; r1 = -r1; }
    if (t1 > bound) return false;
    num = r1;
    den = t1;
    return true;
}

/**
 * Solve A_sub y = b over Q by p-adic lifting, where lu factors A_sub mod p.
 * Returns false when no reconstruction within the lifting budget verifies;
 * the caller then escalates to the next prime.
 */
bool dixon_solve(const std::vector<std::int64_t>& sub, const LuModP& lu,
                 const std::vector<std::int64_t>& b0, int k_max, RatVec& out) {
    const int n = lu.n;
    const std::uint64_t p = lu.p;
    std::vector<std::int64_t> b = b0;
    std::vector<std::vector<std::uint64_t>> digits;
    std::vector<std::uint64_t> bm(n), x(n);
    int next_checkpoint = 30;
    for (int k = 1; k <= k_max; ++k) {
        for (int i = 0; i < n; ++i) {
            std::int64_t v = b[i] % static_cast<std::int64_t>(p);
            if (v < 0) v += static_cast<std::int64_t>(p);
            bm[i] = static_cast<std::uint64_t>(v);
        }
        lu_solve(lu, bm, x);
        digits.push_back(x);
        for (int i = 0; i < n; ++i) {
            __int128 acc = b[i];
            const std::int64_t* row = &sub[static_cast<std::size_t>(i) * n];
            for (int j = 0; j < n; ++j)
                acc -= static_cast<__int128>(row[j]) * static_cast<std::int64_t>(x[j]);
            if (acc % static_cast<std::int64_t>(p) != 0) return false;  // cannot happen
            acc /= static_cast<std::int64_t>(p);
            if (acc > INT64_MAX / 2 || acc < INT64_MIN / 2) return false;
            b[i] = static_cast<std::int64_t>(acc);
        }
        if (k != k_max && k < next_checkpoint) continue;
        next_checkpoint *= 2;
        // Attempt rational reconstruction of the accumulated digits.
        Int modulus;
        mpz_ui_pow_ui(modulus.get_mpz_t(), p, k);
        out.assign(n, Rat(0));
        bool ok = true;
        for (int i = 0; i < n && ok; ++i) {
            Int acc = 0;
            for (int d = k - 1; d >= 0; --d) {
                acc *= static_cast<unsigned long>(p);
                acc += static_cast<unsigned long>(digits[d][i]);
            }
            Int num, den;
            if (!rational_reconstruct(acc, modulus, num, den)) {
                ok = false;
                break;
            }
            out[i] = Rat(num, den);
            out[i].canonicalize();
        }
        if (!ok) continue;
        // Cheap local check before the caller's full verification: the
        // reconstructed y must reproduce b0 on the square system.
        Int lcm = 1;
        for (const Rat& e : out)
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), e.get_den().get_mpz_t());
        IntVec y(n);
        for (int j = 0; j < n; ++j) {
            Rat v = out[j] * Rat(lcm);
            v.canonicalize();
            y[j] = v.get_num();
        }
        bool good = true;
        for (int i = 0; i < n && good; ++i) {
            Int acc = 0;
            for (int j = 0; j < n; ++j) acc += Int(sub[static_cast<std::size_t>(i) * n + j]) * y[j];
            good = (acc == Int(b0[i]) * lcm);
        }
        if (good) return true;
    }
    return false;
}

}  // namespace

int rank_mod_p(const IntMat& a, std::uint64_t p, std::vector<int>* pivot_rows,
               std::vector<int>* pivot_cols) {
    if (p < 2 || p >= (1ull << 31)) throw contract_error("rank_mod_p: prime out of range");
    const int m = a.rows(), n = a.cols();
    if (pivot_rows) pivot_rows->clear();
    if (pivot_cols) pivot_cols->clear();
    std::vector<std::uint64_t> w(static_cast<std::size_t>(m) * n);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j)
            w[static_cast<std::size_t>(i) * n + j] = mod_reduce_entry(a.at(i, j), p);
    std::vector<int> orig_row(m);
    std::iota(orig_row.begin(), orig_row.end(), 0);
    auto at = [&](int i, int j) -> std::uint64_t& {
        return w[static_cast<std::size_t>(i) * n + j];
    };
    int rank = 0;
    for (int col = 0; col < n && rank < m; ++col) {
        int piv = -1;
        for (int r = rank; r < m; ++r)
            if (at(r, col) != 0) { piv = r; break; }
        if (piv < 0) continue;
        if (piv != rank) {
            for (int j = col; j < n; ++j) std::swap(at(rank, j), at(piv, j));
            std::swap(orig_row[rank], orig_row[piv]);
        }
        const std::uint64_t inv = inv_mod(at(rank, col), p);
        for (int r = rank + 1; r < m; ++r) {
            if (at(r, col) == 0) continue;
            const std::uint64_t f = (at(r, col) * inv) % p;
            for (int j = col; j < n; ++j) {
                const std::uint64_t sub_v = (f * at(rank, j)) % p;
                at(r, j) = (at(r, j) + p - sub_v) % p;
            }
        }
        if (pivot_rows) pivot_rows->push_back(orig_row[rank]);
        if (pivot_cols) pivot_cols->push_back(col);
        ++rank;
    }
    return rank;
}

RankCertificate certified_rank(const IntMat& a) {
    const int m = a.rows(), n = a.cols();
    const int bits = max_entry_bits(a);
    if (m == 0 || n == 0 || std::min(m, n) < kDixonMinDim || bits > kMaxEntryBits)
        return fallback_bareiss(a);

    for (std::uint64_t p : kPrimes) {
        std::vector<int> rows, cols;
        const int r = rank_mod_p(a, p, &rows, &cols);
        if (r == 0) {
            if (a.is_zero()) break;  // genuine zero matrix: fallback handles it
            continue;                 // a vanished mod p; try another prime
        }
        // Pivot submatrix and its LU factorisation mod p.  Its invertibility
        // mod p already certifies rank(a) >= r.
        std::vector<std::int64_t> sub(static_cast<std::size_t>(r) * r);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j)
                sub[static_cast<std::size_t>(i) * r + j] = a.at(rows[i], cols[j]).get_si();
        LuModP lu;
        if (!lu_factor(sub, r, p, lu)) continue;

        const int k_max =
            static_cast<int>((static_cast<long>(r) * (2 * bits + 12) + 64) / 31) + 8;
        std::vector<bool> is_pivot_col(n, false);
        for (int c : cols) is_pivot_col[c] = true;

        RankCertificate cert;
        cert.rank = r;
        cert.prime = p;
        cert.pivot_rows = rows;
        cert.pivot_cols = cols;
        bool ok = true;
        for (int f = 0; f < n && ok; ++f) {
            if (is_pivot_col[f]) continue;
            std::vector<std::int64_t> b(r);
            for (int i = 0; i < r; ++i) b[i] = a.at(rows[i], f).get_si();
            RatVec y;
            if (!dixon_solve(sub, lu, b, k_max, y)) {
                ok = false;
                break;
            }
            // Kernel vector: y on the pivot columns, -1 on column f.
            Int lcm = 1;
            for (const Rat& e : y)
                mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), e.get_den().get_mpz_t());
            IntVec w(n, Int(0));
            for (int j = 0; j < r; ++j) {
                Rat v = y[j] * Rat(lcm);
                v.canonicalize();
                w[cols[j]] = v.get_num();
            }
            w[f] = -lcm;
            normalize_int_vec(w);
            cert.kernel.push_back(std::move(w));
        }
        if (!ok) continue;
        if (!verify_kernel_batch(a, cert.kernel)) continue;
        return cert;
    }
    return fallback_bareiss(a);
}

RankCertificate certified_rank(const RatMat& a) {
    return certified_rank(to_integer_rows(a));
}

}  // namespace slncoh
