#pragma once

// Finite-dimensional C*-algebras as canonical block algebras
// M = M_{d_1} (+) ... (+) M_{d_K} with the matrix-unit basis
// e^{(i)}_{kl}, plus the Artin-Wedderburn realization of abstract
// *-algebras given by structure constants.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wka/report.hpp"
#include "wka/tensor.hpp"

namespace wka {

class FdAlgebra {
public:
    struct Label {
        std::size_t block;
        std::size_t row;
        std::size_t col;
    };
    /// e_a e_b = e_r; all other basis products vanish.
    struct MultEntry {
        std::size_t a;
        std::size_t b;
        std::size_t r;
    };

    explicit FdAlgebra(std::vector<std::size_t> block_shape);

    const std::vector<std::size_t>& block_shape() const { return shape_; }
    std::size_t dim() const { return dim_; }
    std::size_t num_blocks() const { return shape_.size(); }
    std::size_t block_size(std::size_t i) const { return shape_[i]; }
    std::size_t offset(std::size_t i) const { return offsets_[i]; }
    std::size_t index(std::size_t block, std::size_t row, std::size_t col) const
    { return offsets_[block] + row * shape_[block] + col; }
    Label label(std::size_t a) const { return labels_[a]; }
    /// "e[i](k,l)" with 1-based indices.
    std::string label_name(std::size_t a) const;
    /// Index of e_a^*.
    std::size_t star_index(std::size_t a) const { return star_[a]; }
    const std::vector<MultEntry>& mult_entries() const { return mult_; }
    bool same_shape(const FdAlgebra& other) const { return shape_ == other.shape_; }

    CVector unit() const;
    CVector basis(std::size_t a) const;
    CVector multiply(const CVector& x, const CVector& y) const;
    CVector star(const CVector& x) const;
    /// Matrix P with x^* = P conj(x).
    CMatrix star_matrix() const;
    /// Structure constants as Tensor3: T(a, b, r) = coefficient of e_r in e_a e_b.
    Tensor3 mult_tensor() const;

    /// Matrices of y -> x y and y -> y x on coefficient vectors.
    CMatrix left_mult(const CVector& x) const;
    CMatrix right_mult(const CVector& x) const;

    std::vector<CMatrix> to_blocks(const CVector& x) const;
    CVector from_blocks(const std::vector<CMatrix>& blocks) const;
    /// Block-diagonal matrix of size sum(d_i) representing x.
    CMatrix to_matrix(const CVector& x) const;

    /// Coefficients of the block-trace functional tau (tau(e^{(i)}_{kk}) = 1).
    CVector block_trace() const;
    /// Coefficients of theta(x) = Tr(L_x), theta(e^{(i)}_{kk}) = d_i.
    CVector regular_trace_coeffs() const;
    CVector central_projection(std::size_t block) const;
    /// Coefficient of the block component i of x, zero elsewhere.
    CVector compress(const CVector& x, std::size_t block) const;

    /// Smallest eigenvalue of the hermitian part of x over all blocks.
    double min_eigenvalue(const CVector& x) const;

    // Elements of M (x) M are dim x dim coefficient matrices C with
    // C(a, b) the coefficient of e_a (x) e_b.
    CMatrix tensor_multiply(const CMatrix& a, const CMatrix& b) const;
    /// Block-pair form of a tensor: entry (i*K + j) is the M_{d_i d_j} matrix
    /// of the (i, j) component, empty when that component vanishes.
    std::vector<CMatrix> tensor_blocks(const CMatrix& c) const;
    CMatrix tensor_from_blocks(const std::vector<CMatrix>& blocks) const;
    std::vector<CMatrix> tensor_blocks_multiply(const std::vector<CMatrix>& a,
                                                const std::vector<CMatrix>& b) const;
    CMatrix tensor_star(const CMatrix& c) const;
    /// Multiplication map mu: M (x) M -> M.
    CVector mu(const CMatrix& c) const;
    /// Embeds elementary tensor x (x) y.
    static CMatrix elementary_tensor(const CVector& x, const CVector& y);

private:
    std::vector<std::size_t> shape_;
    std::vector<std::size_t> offsets_;
    std::size_t dim_ = 0;
    std::vector<Label> labels_;
    std::vector<std::size_t> star_;
    std::vector<MultEntry> mult_;
};

using AlgebraPtr = std::shared_ptr<const FdAlgebra>;

AlgebraPtr make_algebra(std::vector<std::size_t> block_shape);

struct AlgElement {
    AlgebraPtr parent;
    CVector coeffs;

    AlgElement(AlgebraPtr p, CVector c);
    static AlgElement unit(AlgebraPtr p);
    static AlgElement basis(AlgebraPtr p, std::size_t a);
};

AlgElement multiply(const AlgElement& x, const AlgElement& y);
AlgElement star(const AlgElement& x);
AlgElement operator+(const AlgElement& x, const AlgElement& y);
AlgElement operator*(cplx s, const AlgElement& x);

struct Functional {
    AlgebraPtr parent;
    CVector coeffs;

    Functional(AlgebraPtr p, CVector c);
    cplx operator()(const AlgElement& x) const;
    cplx operator()(const CVector& x) const;
};

/// Linear span of elements; the stored basis columns are orthonormal in the
/// coefficient (Hilbert-Schmidt) inner product.
class SubalgebraBasis {
public:
    SubalgebraBasis(AlgebraPtr parent, const CMatrix& spanning, const Tolerance& tol = {});

    const AlgebraPtr& parent() const { return parent_; }
    const CMatrix& basis() const { return basis_; }
    std::size_t dim() const { return static_cast<std::size_t>(basis_.cols()); }
    AlgElement element(std::size_t i) const;
    CMatrix projector() const { return basis_ * basis_.adjoint(); }
    /// Distance of x from the span.
    double distance(const CVector& x) const;
    bool contains_unit(const Tolerance& tol = {}) const;
    /// Max residual of products and adjoints of basis elements leaving the span.
    double closure_residual() const;

private:
    AlgebraPtr parent_;
    CMatrix basis_;
};

Functional regular_trace(const AlgebraPtr& a);
SubalgebraBasis commutant(const SubalgebraBasis& s, const Tolerance& tol = {});
SubalgebraBasis center(const AlgebraPtr& a, const Tolerance& tol = {});
std::vector<AlgElement> minimal_central_projections(const AlgebraPtr& a);

/// An algebra given by structure constants on a basis b_0..b_{n-1}.
struct AbstractStarAlgebra {
    /// left[i] is the matrix of y -> b_i y.
    std::vector<CMatrix> left;
    /// x^* = star * conj(x).
    CMatrix star;
    CVector unit;
    /// Positive definite form, <x, y> = y^H form x.
    CMatrix form;

    std::size_t dim() const { return unit.size(); }
    CMatrix left_mult(const CVector& x) const;
    CVector multiply(const CVector& x, const CVector& y) const;
    CVector apply_star(const CVector& x) const { return star * x.conjugate(); }

    /// From T(a, b, r) = coefficient of b_r in b_a b_b.
    static AbstractStarAlgebra from_tensor(const Tensor3& mult, const CMatrix& star,
                                           const CVector& unit, const CMatrix& form);
};

struct WedderburnResult {
    AlgebraPtr algebra;
    /// Column a holds the abstract coordinates of the canonical e_a.
    CMatrix iso;
    CMatrix iso_inverse;
    /// Max deviation of iso from a *-isomorphism.
    double residual = 0.0;
};

/// Throws NotSemisimple (degenerate form or failed decomposition) and
/// NotStarClosed (involution axioms violated).
WedderburnResult wedderburn_realize(const AbstractStarAlgebra& assoc, const Tolerance& tol = {},
                                    unsigned seed = 7);

/// Realizes a *-subalgebra of a canonical algebra; iso columns are elements
/// of the parent (matrix units of the subalgebra).
WedderburnResult realize_subalgebra(const SubalgebraBasis& s, const Tolerance& tol = {});

/// E given as a dim x dim matrix on coefficient vectors.
VerificationReport check_conditional_expectation(const AlgebraPtr& a, const CMatrix& e,
                                                 const SubalgebraBasis& target,
                                                 const std::optional<CVector>& trace,
                                                 const Tolerance& tol = {});

} // namespace wka
