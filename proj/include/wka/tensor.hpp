#pragma once

// Dense complex linear algebra used by every other module: matrices,
// order-3 tensors, Kronecker products, rank factorization and affine
// solution spaces. Thin layer over Eigen.

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "wka/errors.hpp"

namespace wka {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

/// Equality policy shared by all checks: |lhs - rhs| <= abs_tol entrywise.
struct Tolerance {
    double abs_tol = 1e-9;
    double rel_cap = 1e-6;

    Tolerance() = default;
    explicit Tolerance(double abs, double rel = 1e-6);

    /// Default tolerance, overridable through the WKA_TOL environment variable.
    static Tolerance from_env();
};

/// Order-3 tensor, T(i, j, k) = coefficient of b_j (x) b_k in the image of b_i.
class Tensor3 {
public:
    Tensor3() = default;
    Tensor3(std::size_t d0, std::size_t d1, std::size_t d2);

    std::array<std::size_t, 3> dims() const { return dims_; }

    cplx& operator()(std::size_t i, std::size_t j, std::size_t k)
    { return data_[(i * dims_[1] + j) * dims_[2] + k]; }
    cplx operator()(std::size_t i, std::size_t j, std::size_t k) const
    { return data_[(i * dims_[1] + j) * dims_[2] + k]; }

    /// Slice i as a d1 x d2 matrix.
    CMatrix slice(std::size_t i) const;
    void set_slice(std::size_t i, const CMatrix& m);

    /// (d1*d2) x d0 matrix whose column i is the flattened slice i.
    CMatrix as_matrix() const;
    static Tensor3 from_matrix(const CMatrix& m, std::size_t d1, std::size_t d2);

private:
    std::array<std::size_t, 3> dims_{0, 0, 0};
    std::vector<cplx> data_;
};

CMatrix kron(const CMatrix& a, const CMatrix& b);
CVector kron(const CVector& a, const CVector& b);

/// Minimal decomposition t = sum_i left_i (x) right_i.
struct RankFactorization {
    std::vector<CVector> left;
    std::vector<CVector> right;

    std::size_t rank() const { return left.size(); }
    CMatrix reconstruct(std::size_t rows, std::size_t cols) const;
};

/// Rank cutoff sigma > max(rows, cols) * abs_tol * sigma_max.
RankFactorization rank_factorization(const CMatrix& t, const Tolerance& tol);

/// Antilinear involution on coefficient vectors.
using Involution = std::function<CVector(const CVector&)>;

/// Factorization of a self-adjoint t (t^* = t under star (x) star) whose left
/// and right factors are self-adjoint, so both spans are *-closed.
RankFactorization rank_factorization(const CMatrix& t, const Tolerance& tol, const Involution& star);

/// Rank of a matrix under the same cutoff as rank_factorization.
std::size_t numerical_rank(const CMatrix& m, const Tolerance& tol);

/// Orthonormal basis of the column span.
CMatrix orthonormal_span(const CMatrix& m, const Tolerance& tol);

/// Orthonormal basis of the null space of m.
CMatrix null_space(const CMatrix& m, const Tolerance& tol);

struct LinearConstraint {
    CMatrix matrix;
    CVector rhs;
};

/// particular + span(null_basis); null_basis columns are orthonormal.
struct AffineSpace {
    CVector particular;
    CMatrix null_basis;
    double residual = 0.0;

    std::size_t dimension() const { return static_cast<std::size_t>(null_basis.cols()); }
    bool unique() const { return null_basis.cols() == 0; }
};

/// Solves the stacked system; throws Inconsistent when the least-squares
/// residual exceeds 10 * abs_tol.
AffineSpace solve_affine_space(const std::vector<LinearConstraint>& constraints,
                               const Tolerance& tol);

double max_abs(const CMatrix& m);
double max_abs(const CVector& v);

} // namespace wka
