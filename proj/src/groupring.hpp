/**
 * The rational group ring of SL_N(Z) and matrices over it.
 *
 * Group elements are integer N x N matrices of determinant one.  Every
 * distinct matrix is interned once in a process-wide registry and handled
 * by a 32-bit id afterwards, which keeps ring elements compact (an id plus
 * a numerator per term) and makes equality and hashing trivial.  A ring
 * element stores its terms sorted by id over a single shared denominator;
 * the normal form (denominator positive, gcd of all numerators and the
 * denominator equal to one, no zero terms) is unique, so operator== is
 * plain structural comparison.
 *
 * The star involution sends a group element to its inverse and extends to
 * matrices as conjugate transpose (transpose plus entrywise star).
 */
#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "exactmat.hpp"

namespace slncoh {

constexpr int kMaxGroupDim = 4;

class GroupElem {
  public:
    GroupElem() = delete;

    static GroupElem identity(int n);

    /** Intern an integer matrix; dimension 1..4 and determinant 1 required. */
    static GroupElem from_matrix(const IntMat& m);

    int n() const;
    long entry(int i, int j) const;
    IntMat matrix() const;

    GroupElem operator*(const GroupElem& o) const;
    GroupElem inverse() const;

    bool operator==(const GroupElem& o) const { return id_ == o.id_; }
    bool operator!=(const GroupElem& o) const { return id_ != o.id_; }

    std::uint32_t id() const { return id_; }

    /** Canonical order: dimension, then lexicographic on flattened entries. */
    static int lex_compare(const GroupElem& a, const GroupElem& b);

  private:
    explicit GroupElem(std::uint32_t id) : id_(id) {}
    std::uint32_t id_;

    friend class ElemRegistry;
};

struct GroupElemHash {
    std::size_t operator()(const GroupElem& g) const {
        return std::hash<std::uint32_t>()(g.id());
    }
};

/**
 * An element of Q[SL_N(Z)] with finite support.  All terms of one element
 * must share the group dimension; mixing dimensions is a contract_error.
 */
class GroupRingElem {
  public:
    /** The zero element (support empty); usable with any dimension. */
    GroupRingElem() : den_(1) {}

    static GroupRingElem from_term(const GroupElem& g, const Rat& coeff);
    static GroupRingElem from_terms(const std::vector<std::pair<GroupElem, Rat>>& terms);

    /** The scalar c embedded as c times the identity of SL_n(Z). */
    static GroupRingElem scalar(int n, const Rat& c);

    bool is_zero() const { return terms_.empty(); }
    int support_size() const { return static_cast<int>(terms_.size()); }

    /** Support in canonical (matrix-lexicographic) order. */
    std::vector<GroupElem> support() const;

    Rat coeff(const GroupElem& g) const;

    /** Terms in canonical order, coefficients as reduced rationals. */
    std::vector<std::pair<GroupElem, Rat>> terms() const;

    GroupRingElem operator+(const GroupRingElem& o) const;
    GroupRingElem operator-(const GroupRingElem& o) const;
    GroupRingElem operator*(const GroupRingElem& o) const;
    GroupRingElem operator-() const;
    GroupRingElem scaled(const Rat& c) const;
    GroupRingElem star() const;

    bool operator==(const GroupRingElem& o) const {
        return den_ == o.den_ && terms_ == o.terms_;
    }
    bool operator!=(const GroupRingElem& o) const { return !(*this == o); }

    /**
     * Low-level access for evaluation loops: numerators over the shared
     * denominator, sorted by element id.  The coefficient of raw term
     * (id, num) is num / shared_den.
     */
    const Int& shared_den() const { return den_; }
    const std::vector<std::pair<std::uint32_t, Int>>& raw_terms() const { return terms_; }

    /** Accumulate raw terms and build the normal form once at the end. */
    class Builder {
      public:
        void add(const GroupElem& g, const Rat& coeff);
        void add_scaled(const GroupRingElem& x, const Rat& factor);
        GroupRingElem finish() const;

      private:
        // Accumulates over a common denominator that grows by lcm.
        Int den_ = 1;
        std::vector<std::pair<std::uint32_t, Int>> sums_;  // unsorted, may repeat
    };

  private:
    Int den_;
    std::vector<std::pair<std::uint32_t, Int>> terms_;

    void normalize();
    int dim_or_zero() const;
};

/** Dense matrix over the group ring. */
class GroupRingMatrix {
  public:
    GroupRingMatrix() : rows_(0), cols_(0) {}
    GroupRingMatrix(int rows, int cols);

    /** Identity matrix whose diagonal is the identity of SL_n(Z). */
    static GroupRingMatrix identity(int size, int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    GroupRingElem& at(int i, int j);
    const GroupRingElem& at(int i, int j) const;

    GroupRingMatrix operator+(const GroupRingMatrix& o) const;
    GroupRingMatrix operator-(const GroupRingMatrix& o) const;
    GroupRingMatrix operator*(const GroupRingMatrix& o) const;

    /** Conjugate transpose: transpose and apply star entrywise. */
    GroupRingMatrix star() const;

    bool operator==(const GroupRingMatrix& o) const;
    bool operator!=(const GroupRingMatrix& o) const { return !(*this == o); }

    bool is_zero() const;

  private:
    int rows_, cols_;
    std::vector<GroupRingElem> a_;
    void check(int i, int j) const;
};

}  // namespace slncoh
