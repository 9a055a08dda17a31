#include "groupring.hpp"

#include <algorithm>
#include <unordered_map>

namespace slncoh {

namespace {

struct Rec {
    std::int8_t n;
    std::array<std::int32_t, 16> e;
    std::uint32_t inv;  // id of the inverse, or kNoInv while unknown
};

constexpr std::uint32_t kNoInv = 0xffffffffu;

using Key = std::array<std::int32_t, 17>;  // dimension followed by entries

struct KeyHash {
    std::size_t operator()(const Key& k) const {
        std::uint64_t h = 1469598103934665603ull;  // FNV-1a
        const unsigned char* p = reinterpret_cast<const unsigned char*>(k.data());
        for (std::size_t i = 0; i < sizeof(Key); ++i) {
            h ^= p[i];
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

}  // namespace

/**
 * Process-wide intern pool for group elements.  Ids are assigned in first
 * appearance order; matrices, inverses and canonical comparisons all go
 * through here.  Single-threaded by design, like the rest of the library.
 */
class ElemRegistry {
  public:
    static ElemRegistry& get() {
        static ElemRegistry r;
        return r;
    }

    std::uint32_t intern(int n, const std::array<std::int64_t, 16>& entries) {
        Key k{};
        k[0] = n;
        for (int i = 0; i < n * n; ++i) {
            if (entries[i] > INT32_MAX || entries[i] < INT32_MIN)
                throw contract_error("GroupElem: entry exceeds supported range");
            k[i + 1] = static_cast<std::int32_t>(entries[i]);
        }
        auto it = idx_.find(k);
        if (it != idx_.end()) return it->second;
        Rec r;
        r.n = static_cast<std::int8_t>(n);
        r.e.fill(0);
        for (int i = 0; i < n * n; ++i) r.e[i] = k[i + 1];
        r.inv = kNoInv;
        const auto id = static_cast<std::uint32_t>(recs_.size());
        recs_.push_back(r);
        idx_.emplace(k, id);
        return id;
    }

    const Rec& rec(std::uint32_t id) const { return recs_[id]; }

    std::uint32_t mul(std::uint32_t a, std::uint32_t b) {
        const Rec& ra = recs_[a];
        const Rec& rb = recs_[b];
        if (ra.n != rb.n) throw contract_error("GroupElem: dimension mismatch");
        const int n = ra.n;
        std::array<std::int64_t, 16> c{};
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                __int128 acc = 0;
                for (int k = 0; k < n; ++k)
                    acc += static_cast<__int128>(ra.e[i * n + k]) * rb.e[k * n + j];
                if (acc > INT32_MAX || acc < INT32_MIN)
                    throw contract_error("GroupElem: entry exceeds supported range");
                c[i * n + j] = static_cast<std::int64_t>(acc);
            }
        return intern(n, c);
    }

    std::uint32_t inverse(std::uint32_t id) {
        if (recs_[id].inv != kNoInv) return recs_[id].inv;
        const Rec r = recs_[id];
        const int n = r.n;
        // Determinant one, so the inverse is the adjugate.
        std::array<std::int64_t, 16> inv{};
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const __int128 m = minor_det(r, j, i);
                const __int128 v = (((i + j) & 1) ? -m : m);
                if (v > INT32_MAX || v < INT32_MIN)
                    throw contract_error("GroupElem: entry exceeds supported range");
                inv[i * n + j] = static_cast<std::int64_t>(v);
            }
        const std::uint32_t vid = intern(n, inv);
        recs_[id].inv = vid;
        recs_[vid].inv = id;
        return vid;
    }

    static GroupElem make(std::uint32_t id);

  private:
    // Determinant of the submatrix with row `ri` and column `cj` removed.
    // 128-bit intermediates: three int32 factors can exceed 64 bits.
    static __int128 minor_det(const Rec& r, int ri, int cj) {
        const int n = r.n;
        __int128 m[9];
        int k = 0;
        for (int i = 0; i < n; ++i) {
            if (i == ri) continue;
            for (int j = 0; j < n; ++j) {
                if (j == cj) continue;
                m[k++] = r.e[i * n + j];
            }
        }
        switch (n - 1) {
            case 0: return 1;
            case 1: return m[0];
            case 2: return m[0] * m[3] - m[1] * m[2];
            case 3:
                return m[0] * (m[4] * m[8] - m[5] * m[7]) -
                       m[1] * (m[3] * m[8] - m[5] * m[6]) +
                       m[2] * (m[3] * m[7] - m[4] * m[6]);
            default:
                throw internal_error("minor_det: unsupported dimension");
        }
    }

    std::vector<Rec> recs_;
    std::unordered_map<Key, std::uint32_t, KeyHash> idx_;
};

GroupElem ElemRegistry::make(std::uint32_t id) { return GroupElem(id); }

GroupElem GroupElem::identity(int n) {
    return from_matrix(IntMat::identity(n));
}

GroupElem GroupElem::from_matrix(const IntMat& m) {
    if (!m.is_square() || m.rows() < 1 || m.rows() > kMaxGroupDim)
        throw contract_error("GroupElem: dimension must be 1..4");
    if (det_exact(m) != 1)
        throw contract_error("GroupElem: determinant must be 1");
    const int n = m.rows();
    std::array<std::int64_t, 16> e{};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (!m.at(i, j).fits_slong_p())
                throw contract_error("GroupElem: entry exceeds supported range");
            e[i * n + j] = m.at(i, j).get_si();
        }
    return GroupElem(ElemRegistry::get().intern(n, e));
}

int GroupElem::n() const { return ElemRegistry::get().rec(id_).n; }

long GroupElem::entry(int i, int j) const {
    const Rec& r = ElemRegistry::get().rec(id_);
    if (i < 0 || i >= r.n || j < 0 || j >= r.n)
        throw contract_error("GroupElem: index out of range");
    return r.e[i * r.n + j];
}

IntMat GroupElem::matrix() const {
    const Rec& r = ElemRegistry::get().rec(id_);
    IntMat m(r.n, r.n);
    for (int i = 0; i < r.n; ++i)
        for (int j = 0; j < r.n; ++j) m.at(i, j) = r.e[i * r.n + j];
    return m;
}

GroupElem GroupElem::operator*(const GroupElem& o) const {
    return GroupElem(ElemRegistry::get().mul(id_, o.id_));
}

GroupElem GroupElem::inverse() const {
    return GroupElem(ElemRegistry::get().inverse(id_));
}

int GroupElem::lex_compare(const GroupElem& a, const GroupElem& b) {
    const Rec& ra = ElemRegistry::get().rec(a.id_);
    const Rec& rb = ElemRegistry::get().rec(b.id_);
    if (ra.n != rb.n) return ra.n < rb.n ? -1 : 1;
    for (int i = 0; i < ra.n * ra.n; ++i)
        if (ra.e[i] != rb.e[i]) return ra.e[i] < rb.e[i] ? -1 : 1;
    return 0;
}

// ---------------------------------------------------------------------------
// GroupRingElem
// ---------------------------------------------------------------------------

namespace {

Int lcm_int(const Int& a, const Int& b) {
    Int l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

}  // namespace

void GroupRingElem::normalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::size_t w = 0;
    for (std::size_t i = 0; i < terms_.size();) {
        std::uint32_t id = terms_[i].first;
        Int sum = 0;
        while (i < terms_.size() && terms_[i].first == id) sum += terms_[i++].second;
        if (sum != 0) terms_[w++] = {id, std::move(sum)};
    }
    terms_.resize(w);
    if (terms_.empty()) {
        den_ = 1;
        return;
    }
    if (den_ < 0) {
        den_ = -den_;
        for (auto& t : terms_) t.second = -t.second;
    }
    Int g = den_;
    for (const auto& t : terms_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.second.get_mpz_t());
        if (g == 1) break;
    }
    if (g > 1) {
        mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
        for (auto& t : terms_)
            mpz_divexact(t.second.get_mpz_t(), t.second.get_mpz_t(), g.get_mpz_t());
    }
}

int GroupRingElem::dim_or_zero() const {
    return terms_.empty() ? 0 : ElemRegistry::get().rec(terms_[0].first).n;
}

GroupRingElem GroupRingElem::from_term(const GroupElem& g, const Rat& coeff) {
    GroupRingElem x;
    Rat c = coeff;
    c.canonicalize();
    if (c == 0) return x;
    x.den_ = c.get_den();
    x.terms_.emplace_back(g.id(), c.get_num());
    return x;
}

GroupRingElem GroupRingElem::from_terms(
    const std::vector<std::pair<GroupElem, Rat>>& terms) {
    Builder b;
    for (const auto& [g, c] : terms) b.add(g, c);
    return b.finish();
}

GroupRingElem GroupRingElem::scalar(int n, const Rat& c) {
    return from_term(GroupElem::identity(n), c);
}

std::vector<GroupElem> GroupRingElem::support() const {
    std::vector<GroupElem> s;
    s.reserve(terms_.size());
    for (const auto& t : terms_) s.push_back(ElemRegistry::make(t.first));
    std::sort(s.begin(), s.end(), [](const GroupElem& a, const GroupElem& b) {
        return GroupElem::lex_compare(a, b) < 0;
    });
    return s;
}

Rat GroupRingElem::coeff(const GroupElem& g) const {
    auto it = std::lower_bound(
        terms_.begin(), terms_.end(), g.id(),
        [](const auto& t, std::uint32_t id) { return t.first < id; });
    if (it == terms_.end() || it->first != g.id()) return Rat(0);
    Rat c(it->second, den_);
    c.canonicalize();
    return c;
}

std::vector<std::pair<GroupElem, Rat>> GroupRingElem::terms() const {
    std::vector<std::pair<GroupElem, Rat>> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
        Rat c(t.second, den_);
        c.canonicalize();
        out.emplace_back(ElemRegistry::make(t.first), c);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return GroupElem::lex_compare(a.first, b.first) < 0;
    });
    return out;
}

GroupRingElem GroupRingElem::operator+(const GroupRingElem& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    if (dim_or_zero() != o.dim_or_zero())
        throw contract_error("GroupRingElem: dimension mismatch");
    GroupRingElem r;
    r.den_ = lcm_int(den_, o.den_);
    Int f1, f2;
    mpz_divexact(f1.get_mpz_t(), r.den_.get_mpz_t(), den_.get_mpz_t());
    mpz_divexact(f2.get_mpz_t(), r.den_.get_mpz_t(), o.den_.get_mpz_t());
    r.terms_.reserve(terms_.size() + o.terms_.size());
    for (const auto& t : terms_) r.terms_.emplace_back(t.first, t.second * f1);
    for (const auto& t : o.terms_) r.terms_.emplace_back(t.first, t.second * f2);
    r.normalize();
    return r;
}

GroupRingElem GroupRingElem::operator-() const {
    GroupRingElem r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
}

GroupRingElem GroupRingElem::operator-(const GroupRingElem& o) const {
    return *this + (-o);
}

GroupRingElem GroupRingElem::operator*(const GroupRingElem& o) const {
    if (is_zero() || o.is_zero()) return GroupRingElem();
    if (dim_or_zero() != o.dim_or_zero())
        throw contract_error("GroupRingElem: dimension mismatch");
    ElemRegistry& reg = ElemRegistry::get();
    std::unordered_map<std::uint32_t, Int> acc;
    acc.reserve(terms_.size() * o.terms_.size());
    for (const auto& [ga, na] : terms_)
        for (const auto& [gb, nb] : o.terms_) acc[reg.mul(ga, gb)] += na * nb;
    GroupRingElem r;
    r.den_ = den_ * o.den_;
    r.terms_.reserve(acc.size());
    for (auto& [id, num] : acc)
        if (num != 0) r.terms_.emplace_back(id, std::move(num));
    r.normalize();
    return r;
}

GroupRingElem GroupRingElem::scaled(const Rat& c) const {
    Rat cc = c;
    cc.canonicalize();
    if (cc == 0 || is_zero()) return GroupRingElem();
    GroupRingElem r = *this;
    r.den_ *= cc.get_den();
    for (auto& t : r.terms_) t.second *= cc.get_num();
    r.normalize();
    return r;
}

GroupRingElem GroupRingElem::star() const {
    ElemRegistry& reg = ElemRegistry::get();
    GroupRingElem r;
    r.den_ = den_;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.emplace_back(reg.inverse(t.first), t.second);
    r.normalize();
    return r;
}

void GroupRingElem::Builder::add(const GroupElem& g, const Rat& coeff) {
    Rat c = coeff;
    c.canonicalize();
    if (c == 0) return;
    if (!sums_.empty() &&
        ElemRegistry::get().rec(sums_[0].first).n != g.n())
        throw contract_error("GroupRingElem: dimension mismatch");
    const Int l = lcm_int(den_, c.get_den());
    if (l != den_) {
        Int f;
        mpz_divexact(f.get_mpz_t(), l.get_mpz_t(), den_.get_mpz_t());
        for (auto& s : sums_) s.second *= f;
        den_ = l;
    }
    Int f;
    mpz_divexact(f.get_mpz_t(), den_.get_mpz_t(), c.get_den().get_mpz_t());
    sums_.emplace_back(g.id(), c.get_num() * f);
}

void GroupRingElem::Builder::add_scaled(const GroupRingElem& x, const Rat& factor) {
    Rat f = factor;
    f.canonicalize();
    if (f == 0) return;
    for (const auto& t : x.terms_) {
        Rat c(t.second * f.get_num(), x.den_ * f.get_den());
        c.canonicalize();
        add(ElemRegistry::make(t.first), c);
    }
}

GroupRingElem GroupRingElem::Builder::finish() const {
    GroupRingElem r;
    r.den_ = den_;
    r.terms_ = sums_;
    r.normalize();
    return r;
}

// ---------------------------------------------------------------------------
// GroupRingMatrix
// ---------------------------------------------------------------------------

GroupRingMatrix::GroupRingMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0) throw contract_error("GroupRingMatrix: negative dimension");
    a_.resize(static_cast<std::size_t>(rows) * cols);
}

GroupRingMatrix GroupRingMatrix::identity(int size, int n) {
    GroupRingMatrix m(size, size);
    for (int i = 0; i < size; ++i) m.at(i, i) = GroupRingElem::scalar(n, Rat(1));
    return m;
}

void GroupRingMatrix::check(int i, int j) const {
    if (i < 0 || i >= rows_ || j < 0 || j >= cols_)
        throw contract_error("GroupRingMatrix: index out of range");
}

GroupRingElem& GroupRingMatrix::at(int i, int j) {
    check(i, j);
    return a_[static_cast<std::size_t>(i) * cols_ + j];
}

const GroupRingElem& GroupRingMatrix::at(int i, int j) const {
    check(i, j);
    return a_[static_cast<std::size_t>(i) * cols_ + j];
}

GroupRingMatrix GroupRingMatrix::operator+(const GroupRingMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw contract_error("GroupRingMatrix+: shape mismatch");
    GroupRingMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
    return r;
}

GroupRingMatrix GroupRingMatrix::operator-(const GroupRingMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw contract_error("GroupRingMatrix-: shape mismatch");
    GroupRingMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
    return r;
}

GroupRingMatrix GroupRingMatrix::operator*(const GroupRingMatrix& o) const {
    if (cols_ != o.rows_) throw contract_error("GroupRingMatrix*: shape mismatch");
    GroupRingMatrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const GroupRingElem& x = at(i, k);
            if (x.is_zero()) continue;
            for (int j = 0; j < o.cols_; ++j) {
                if (o.at(k, j).is_zero()) continue;
                r.at(i, j) = r.at(i, j) + x * o.at(k, j);
            }
        }
    return r;
}

GroupRingMatrix GroupRingMatrix::star() const {
    GroupRingMatrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j).star();
    return r;
}

bool GroupRingMatrix::operator==(const GroupRingMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

bool GroupRingMatrix::is_zero() const {
    for (const auto& x : a_)
        if (!x.is_zero()) return false;
    return true;
}

}  // namespace slncoh
