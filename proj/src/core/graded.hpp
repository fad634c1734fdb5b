#pragma once

#include "core/types.hpp"

#include <span>
#include <string>
#include <vector>

namespace su22 {

// Z2-graded vector space: a dimension plus a Grassmann parity (0 bosonic,
// 1 fermionic) per basis vector.
struct GradedSpace {
    int dim = 0;
    std::vector<int> parity;

    GradedSpace() = default;
    GradedSpace(int d, std::vector<int> p);

    // The fundamental 4-dimensional space with parities (0,0,1,1).
    static GradedSpace fundamental();
    static GradedSpace trivial();  // dim 1, even

    int n_even() const;
    int n_odd() const;
    bool operator==(const GradedSpace& o) const { return dim == o.dim && parity == o.parity; }
    bool operator!=(const GradedSpace& o) const { return !(*this == o); }
};

GradedSpace tensor(const GradedSpace& a, const GradedSpace& b);

// Ordered list of factor spaces plus the composite space. The composite index
// of (i_1,...,i_n) is mixed-radix with the first factor most significant, so a
// two-site index (i1,i2) over the fundamental space is 4*i1 + i2 (0-based).
class TensorLayout {
  public:
    explicit TensorLayout(std::vector<GradedSpace> factors);

    int rank() const { return static_cast<int>(factors_.size()); }
    long dim() const { return composite_.dim; }
    const GradedSpace& factor(int k) const { return factors_[k]; }
    const std::vector<GradedSpace>& factors() const { return factors_; }
    const GradedSpace& composite() const { return composite_; }

    void split(long index, std::span<int> digits) const;
    long fuse(std::span<const int> digits) const;

    TensorLayout without_factor(int k) const;

  private:
    std::vector<GradedSpace> factors_;
    GradedSpace composite_;
    std::vector<long> stride_;
};

// Dense complex-matrix operator tagged with its graded domain and codomain.
// mat is codomain.dim x domain.dim; row = output index, column = input index.
struct GradedOperator {
    GradedSpace domain, codomain;
    Mat mat;

    GradedOperator() = default;
    GradedOperator(GradedSpace dom, GradedSpace cod, Mat m);

    static GradedOperator identity(const GradedSpace& v);
    static GradedOperator zero(const GradedSpace& dom, const GradedSpace& cod);
    // |ket><bra| on v (0-based indices)
    static GradedOperator unit(const GradedSpace& v, int ket, int bra);

    bool is_square() const { return domain == codomain; }

    GradedOperator operator*(const GradedOperator& rhs) const;  // composition
    GradedOperator operator+(const GradedOperator& rhs) const;
    GradedOperator operator-(const GradedOperator& rhs) const;
    GradedOperator operator*(Cplx a) const;
    GradedOperator adjoint() const;
};

inline GradedOperator operator*(Cplx a, const GradedOperator& x) { return x * a; }

// Super tensor product. For A = sum A^a_b |b><a| and B = sum B^g_d |d><g| the
// rule is (A (x) B)^{ag}_{bd} = (-1)^{[p(a)+p(b)] p(d)} A^a_b B^g_d, with p(a)
// read in A's domain, p(b) in A's codomain and p(d) in B's codomain. This is
// the single sign-convention source; embeddings and swaps derive from it.
GradedOperator super_tensor(const GradedOperator& a, const GradedOperator& b);

// Graded permutation on V (x) V: P^{a1 a2}_{b1 b2} = (-1)^{p(a1)p(a2)}
// delta_{a1 b2} delta_{b1 a2}; P|a1 a2> = (-1)^{p(a1)p(a2)} |a2 a1>.
GradedOperator graded_permutation(const GradedSpace& v);

// Graded swap V (x) W -> W (x) V, |v w> -> (-1)^{p(v)p(w)} |w v>.
// Reduces to graded_permutation when V == W.
GradedOperator swap_op(const GradedSpace& v, const GradedSpace& w);

// X on A (x) B re-expressed with the factors exchanged, as an operator on
// B (x) A. For the fundamental R-matrix this realises R_21 = P R_12 P.
GradedOperator exchange_factors(const GradedOperator& x, const GradedSpace& a,
                                const GradedSpace& b);

// Embed an operator acting on the listed factor positions (strictly
// increasing, 0-based) into the full layout, identity elsewhere, with the
// grading signs implied by iterated super_tensor. Works for rectangular
// operators as long as domain and codomain factor through the same positions.
GradedOperator embed(const GradedOperator& a, const TensorLayout& layout,
                     std::span<const int> positions);

// M * embed(A) without forming the embedded matrix.
void embed_apply_right(Mat& m, const GradedOperator& a, const TensorLayout& layout,
                       std::span<const int> positions);

// Super partial trace over factor k: weights (-1)^{p(a)} plus the
// compensation making str_k(B (x) C) = B * str(C) hold for any factor slot.
GradedOperator super_partial_trace(const GradedOperator& x, const TensorLayout& layout, int k);

// Super transposition in factor k: indices of that factor are transposed with
// the sign (-1)^{p(i)[p(i)+p(j)]}.
GradedOperator super_transpose(const GradedOperator& x, const TensorLayout& layout, int k);

// Full supertrace sum_a (-1)^{p(a)} X[a,a].
Cplx supertrace(const GradedOperator& x);

double rel_residual(const GradedOperator& lhs, const GradedOperator& rhs);

}  // namespace su22
