/**
 * Finite special linear groups over Z/p, monomial orthogonal
 * representations, induction from a subgroup, and evaluation of
 * group-ring matrices as exact rational block matrices.
 *
 * The certified representation for rank N is built from explicit
 * generator data: a subgroup chain H normal in H_N <= SL_N(Z/p) with a
 * sign (N=3) or signed three-dimensional (N=4) representation of the
 * quotient H_N/H, lifted to H_N and induced up to the full group.  All
 * representation matrices are signed permutation matrices and are
 * stored as one (row, sign) pair per column.
 */
#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <vector>

#include "exactmat.hpp"
#include "groupring.hpp"

namespace slncoh {

/** Complete multiplication structure of SL_n(Z/p). */
class FiniteGroup {
  public:
    /** Breadth-first closure from the elementary matrices; the element
     *  count is checked against the group order formula.  Supported
     *  parameters: (2,2), (3,3), (4,2). */
    static std::shared_ptr<const FiniteGroup> enumerate(int n, int p);

    int n() const { return n_; }
    int modulus() const { return p_; }
    int size() const { return static_cast<int>(codes_.size()); }
    int identity() const { return identity_; }

    int multiply(int a, int b) const;
    int inverse(int a) const;

    /** Matrix of the element with entries in [0, p). */
    IntMat matrix_of(int index) const;
    /** Index of an integer matrix after reduction mod p; data_error when
     *  the reduction is not in the group (determinant not 1 mod p). */
    int index_of(const IntMat& m) const;
    /** Modular image of an integral group element.  The image of a
     *  determinant-one matrix is always present; absence is an
     *  internal_error. */
    int reduce(const GroupElem& g) const;

  private:
    FiniteGroup() = default;

    int n_ = 0;
    int p_ = 0;
    int identity_ = 0;
    std::vector<std::uint32_t> codes_;            // sorted packed matrices
    std::vector<std::int32_t> lookup_;            // code -> index, -1 absent
    std::vector<std::array<std::uint8_t, 16>> mats_;
    std::vector<std::int32_t> inv_;

    std::uint32_t encode(const std::array<std::uint8_t, 16>& m) const;
    int mul_raw(int a, int b, std::array<std::uint8_t, 16>& out) const;
};

/** Subgroup closure of the given generator indices, sorted. */
std::vector<int> subgroup_closure(const FiniteGroup& g, const std::vector<int>& generators);

/**
 * A monomial representation of a subgroup, the input of induction: the
 * subgroup elements (sorted group indices) and, per element, the signed
 * permutation of its block in column form.
 */
struct SubRep {
    std::vector<int> elements;
    int dim = 0;
    std::vector<std::vector<int>> perm;  // [element][column] -> row
    std::vector<std::vector<int>> sign;  // [element][column] -> +/-1
};

/** An orthogonal representation by signed permutation matrices. */
class OrthogonalRep {
  public:
    int dim() const { return dim_; }
    const FiniteGroup& group() const { return *group_; }
    const std::shared_ptr<const FiniteGroup>& group_ptr() const { return group_; }

    /** Row of the unique nonzero entry in the given column of the
     *  matrix of element g. */
    int row_of(int g, int col) const;
    /** Sign of that entry. */
    int sign_of(int g, int col) const;
    /** Dense rational matrix of the element. */
    RatMat matrix(int g) const;

    /** Dimension-one representation sending everything to +1. */
    static OrthogonalRep trivial(std::shared_ptr<const FiniteGroup> g);

    /** Induced representation for a fixed left-coset transversal chosen
     *  in first-seen order: block (i,j) of the image of g is the block
     *  of r_i^-1 g r_j when that element lies in the subgroup, else
     *  zero.  Validates the subgroup and the block homomorphism. */
    static OrthogonalRep induce(std::shared_ptr<const FiniteGroup> g, const SubRep& sub);

  private:
    OrthogonalRep() = default;

    std::shared_ptr<const FiniteGroup> group_;
    int dim_ = 0;
    std::vector<std::uint16_t> perm_;  // [g * dim + col] -> row
    std::vector<std::int8_t> sign_;
};

/**
 * The certified representation for rank n: the trivial representation
 * of SL_2(Z/2) for n = 2, the induced sign representation of dimension
 * 156 for n = 3 (p = 3), and the induced signed-permutation
 * representation of dimension 105 for n = 4 (p = 2).  The embedded
 * subgroup data is structure-checked on every call (orders, normality,
 * quotient relations); violations raise data_error.
 */
OrthogonalRep make_pi(int n);

/** The elementary matrices E_ij(1), i != j, generating SL_n(Z). */
std::vector<GroupElem> elementary_generators(int n);

/**
 * Dimension of the common fixed space of the generators' images: the
 * corank of the stacked matrices (pi(g) - identity), computed with the
 * certified exact rank.
 */
int invariant_vector_dim(const OrthogonalRep& rep, const std::vector<int>& generators);

/**
 * Block evaluation of a group-ring matrix: entry (i,j) contributes the
 * sum of coeff * pi(reduction of g) over its terms to block (i,j); the
 * result is a (rows*dim) x (cols*dim) rational matrix.
 */
RatMat representing_matrix(const GroupRingMatrix& m, const OrthogonalRep& rep);

}  // namespace slncoh
