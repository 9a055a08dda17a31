/**
 * Dense matrices over exact scalars (GMP integers and rationals) together
 * with the fraction-free elimination routines the rest of the library is
 * built on: determinant, rank, reduced row echelon form, linear solving,
 * kernel bases, positive definiteness and LDL^T factorisation.
 *
 * Everything here is exact; there is no floating point anywhere.
 */
#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace slncoh {

using Int = mpz_class;
using Rat = mpq_class;

/** Base class of everything this library throws on purpose. */
struct error : std::runtime_error {
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

/** The caller violated a documented precondition. */
struct contract_error : error {
    explicit contract_error(const std::string& what) : error(what) {}
};

/** External input (a file, a CLI argument) is malformed. */
struct data_error : error {
    explicit data_error(const std::string& what) : error(what) {}
};

/** An invariant maintained by the library itself failed; always a bug. */
struct internal_error : error {
    explicit internal_error(const std::string& what) : error(what) {}
};

/** Parse "a/b" or "a" into a reduced rational.  Throws data_error. */
Rat rat_parse(const std::string& s);

/** Print canonically: denominator omitted when it is 1. */
std::string rat_print(const Rat& x);

/**
 * Minimal dense row-major matrix.  Indices are 0-based and range-checked;
 * an out-of-range access is a contract_error.
 */
template <class T>
class Mat {
  public:
    Mat() : rows_(0), cols_(0) {}

    Mat(int rows, int cols) : rows_(rows), cols_(cols) {
        if (rows < 0 || cols < 0)
            throw contract_error("Mat: negative dimension");
        a_.resize(static_cast<std::size_t>(rows) * cols);
    }

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    T& at(int i, int j) {
        check(i, j);
        return a_[static_cast<std::size_t>(i) * cols_ + j];
    }
    const T& at(int i, int j) const {
        check(i, j);
        return a_[static_cast<std::size_t>(i) * cols_ + j];
    }

    Mat transpose() const {
        Mat t(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    Mat operator*(const Mat& o) const {
        if (cols_ != o.rows_) throw contract_error("Mat*: shape mismatch");
        Mat r(rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                const T& aik = at(i, k);
                if (aik == 0) continue;
                for (int j = 0; j < o.cols_; ++j)
                    r.at(i, j) += aik * o.at(k, j);
            }
        return r;
    }

    Mat operator+(const Mat& o) const {
        require_same_shape(o, "Mat+");
        Mat r(rows_, cols_);
        for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
        return r;
    }

    Mat operator-(const Mat& o) const {
        require_same_shape(o, "Mat-");
        Mat r(rows_, cols_);
        for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
        return r;
    }

    bool operator==(const Mat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }
    bool operator!=(const Mat& o) const { return !(*this == o); }

    bool is_square() const { return rows_ == cols_; }

    bool is_symmetric() const {
        if (!is_square()) return false;
        for (int i = 0; i < rows_; ++i)
            for (int j = i + 1; j < cols_; ++j)
                if (at(i, j) != at(j, i)) return false;
        return true;
    }

    bool is_zero() const {
        for (const T& x : a_)
            if (x != 0) return false;
        return true;
    }

  private:
    void check(int i, int j) const {
        if (i < 0 || i >= rows_ || j < 0 || j >= cols_)
            throw contract_error("Mat: index out of range");
    }
    void require_same_shape(const Mat& o, const char* who) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw contract_error(std::string(who) + ": shape mismatch");
    }

    int rows_, cols_;
    std::vector<T> a_;
};

using IntMat = Mat<Int>;
using RatMat = Mat<Rat>;

using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

RatMat to_rational(const IntMat& m);

/**
 * Scale every row of m by the lcm of its denominators so the result is
 * integral.  Row scaling by positive factors preserves rank and kernel.
 * The per-row factors are returned through scales when non-null.
 */
IntMat to_integer_rows(const RatMat& m, std::vector<Int>* scales = nullptr);

/** Exact determinant by fraction-free (Bareiss) elimination. */
Int det_exact(const IntMat& m);
Rat det_exact(const RatMat& m);

/** Exact rank by fraction-free elimination with full pivoting. */
int rank_exact(const IntMat& m);
int rank_exact(const RatMat& m);

/**
 * Reduced row echelon form over Q.  Returns the echelon matrix; the pivot
 * column indices (in order) are written to *pivots when non-null.  This is
 * deliberately the most naive possible elimination so it can serve as an
 * independent oracle for the fraction-free routines.
 */
RatMat rref(const RatMat& m, std::vector<int>* pivots = nullptr);

/** A particular solution of A x = b, or nullopt when the system is
 *  inconsistent.  b must have A.rows() entries. */
std::optional<RatVec> solve(const RatMat& a, const RatVec& b);

/** Basis of the right kernel { x : A x = 0 }, one vector per free column. */
std::vector<RatVec> kernel_basis(const RatMat& a);

/** Exact inverse of a square matrix, or nullopt when singular. */
std::optional<RatMat> inverse(const RatMat& a);

/** Matrix-vector product. */
RatVec mat_vec(const RatMat& a, const RatVec& x);

/**
 * Sylvester test: a symmetric rational matrix is positive definite iff
 * its LDL^T factorisation exists with all pivots positive.  Non-symmetric
 * input is a contract_error.
 */
bool is_positive_definite(const RatMat& q);

/**
 * LDL^T factorisation of a symmetric positive definite matrix: q = L D L^T
 * with L unit lower triangular.  Throws contract_error when q is not
 * positive definite.
 */
struct Ldl {
    RatMat l;
    RatVec d;
};
Ldl ldl_decompose(const RatMat& q);

}  // namespace slncoh
