#include "wka/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

namespace wka {

Tolerance::Tolerance(double abs, double rel) : abs_tol(abs), rel_cap(rel)
{
    if (!(abs > 0.0))
        throw InvalidArgument("abs_tol must be positive");
    if (rel < 0.0)
        throw InvalidArgument("rel_cap must be nonnegative");
}

Tolerance Tolerance::from_env()
{
    if (const char* env = std::getenv("WKA_TOL")) {
        char* end = nullptr;
        double v = std::strtod(env, &end);
        if (end != env && v > 0.0)
            return Tolerance(v);
    }
    return Tolerance{};
}

Tensor3::Tensor3(std::size_t d0, std::size_t d1, std::size_t d2)
    : dims_{d0, d1, d2}, data_(d0 * d1 * d2, cplx(0.0))
{
    if (d0 == 0 || d1 == 0 || d2 == 0)
        throw InvalidArgument("Tensor3 dimensions must be positive");
}

CMatrix Tensor3::slice(std::size_t i) const
{
    CMatrix m(dims_[1], dims_[2]);
    for (std::size_t j = 0; j < dims_[1]; ++j)
        for (std::size_t k = 0; k < dims_[2]; ++k)
            m(j, k) = (*this)(i, j, k);
    return m;
}

void Tensor3::set_slice(std::size_t i, const CMatrix& m)
{
    for (std::size_t j = 0; j < dims_[1]; ++j)
        for (std::size_t k = 0; k < dims_[2]; ++k)
            (*this)(i, j, k) = m(j, k);
}

CMatrix Tensor3::as_matrix() const
{
    CMatrix m(dims_[1] * dims_[2], dims_[0]);
    for (std::size_t i = 0; i < dims_[0]; ++i)
        for (std::size_t jk = 0; jk < dims_[1] * dims_[2]; ++jk)
            m(jk, i) = data_[i * dims_[1] * dims_[2] + jk];
    return m;
}

Tensor3 Tensor3::from_matrix(const CMatrix& m, std::size_t d1, std::size_t d2)
{
    if (static_cast<std::size_t>(m.rows()) != d1 * d2)
        throw InvalidArgument("Tensor3::from_matrix: row count does not match d1*d2");
    Tensor3 t(m.cols(), d1, d2);
    for (Eigen::Index i = 0; i < m.cols(); ++i)
        for (std::size_t jk = 0; jk < d1 * d2; ++jk)
            t.data_[i * d1 * d2 + jk] = m(jk, i);
    return t;
}

CMatrix kron(const CMatrix& a, const CMatrix& b)
{
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

CVector kron(const CVector& a, const CVector& b)
{
    CVector out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i)
        out.segment(i * b.size(), b.size()) = a(i) * b;
    return out;
}

namespace {

// Relative cutoff dim * tol * sigma_max, floored at tol so that a matrix that
// vanishes up to rounding has rank 0.
double cutoff(const CMatrix& m, double sigma_max, const Tolerance& tol)
{
    return std::max(static_cast<double>(std::max(m.rows(), m.cols())) * tol.abs_tol * sigma_max,
                    tol.abs_tol);
}

std::size_t rank_from(const RVector& sv, double cut)
{
    std::size_t r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > cut)
            ++r;
    return r;
}

} // namespace

CMatrix RankFactorization::reconstruct(std::size_t rows, std::size_t cols) const
{
    CMatrix m = CMatrix::Zero(rows, cols);
    for (std::size_t i = 0; i < left.size(); ++i)
        m += left[i] * right[i].transpose();
    return m;
}

RankFactorization rank_factorization(const CMatrix& t, const Tolerance& tol)
{
    RankFactorization out;
    if (t.size() == 0)
        return out;
    Eigen::JacobiSVD<CMatrix> svd(t, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const RVector& sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) == 0.0)
        return out;
    std::size_t r = rank_from(sv, cutoff(t, sv(0), tol));
    for (std::size_t i = 0; i < r; ++i) {
        out.left.push_back(svd.matrixU().col(i) * sv(i));
        out.right.push_back(svd.matrixV().col(i).conjugate());
    }
    return out;
}

RankFactorization rank_factorization(const CMatrix& t, const Tolerance& tol, const Involution& star)
{
    RankFactorization plain = rank_factorization(t, tol);
    const std::size_t r = plain.rank();
    if (r == 0)
        return plain;
    const Eigen::Index n = t.rows();
    // greedy choice of independent self-adjoint combinations x + x^*, i(x - x^*)
    CMatrix chosen(n, 0);
    CMatrix q(n, 0);
    // candidates that are rounding noise relative to their source are skipped
    auto try_add = [&](CVector v, double scale) {
        if (static_cast<std::size_t>(chosen.cols()) == r)
            return;
        const double norm = v.norm();
        if (!(norm > 1e-6 * scale))
            return;
        CVector res = v - q * (q.adjoint() * v);
        if (res.norm() <= 1e-6 * norm)
            return;
        chosen.conservativeResize(Eigen::NoChange, chosen.cols() + 1);
        chosen.col(chosen.cols() - 1) = v;
        q.conservativeResize(Eigen::NoChange, q.cols() + 1);
        q.col(q.cols() - 1) = res / res.norm();
    };
    for (std::size_t i = 0; i < r; ++i) {
        const CVector& x = plain.left[i];
        CVector xs = star(x);
        try_add((x + xs) / 2.0, x.norm());
        try_add((x - xs) / cplx(0.0, 2.0), x.norm());
    }
    if (static_cast<std::size_t>(chosen.cols()) != r)
        return plain;
    // t = X Y^T, Y^T = X^+ t
    CMatrix yt = chosen.completeOrthogonalDecomposition().solve(t);
    RankFactorization out;
    for (std::size_t i = 0; i < r; ++i) {
        out.left.push_back(chosen.col(i));
        CVector y = yt.row(i).transpose();
        out.right.push_back((y + star(y)) / 2.0);
    }
    return out;
}

std::size_t numerical_rank(const CMatrix& m, const Tolerance& tol)
{
    if (m.size() == 0)
        return 0;
    Eigen::JacobiSVD<CMatrix> svd(m);
    const RVector& sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) == 0.0)
        return 0;
    return rank_from(sv, cutoff(m, sv(0), tol));
}

CMatrix orthonormal_span(const CMatrix& m, const Tolerance& tol)
{
    if (m.cols() == 0 || m.rows() == 0)
        return CMatrix(m.rows(), 0);
    Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeThinU);
    const RVector& sv = svd.singularValues();
    if (sv(0) == 0.0)
        return CMatrix(m.rows(), 0);
    std::size_t r = rank_from(sv, cutoff(m, sv(0), tol));
    return svd.matrixU().leftCols(r);
}

CMatrix null_space(const CMatrix& m, const Tolerance& tol)
{
    const Eigen::Index n = m.cols();
    if (m.rows() == 0)
        return CMatrix::Identity(n, n);
    Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullV);
    const RVector& sv = svd.singularValues();
    std::size_t r = (sv.size() == 0 || sv(0) == 0.0) ? 0 : rank_from(sv, cutoff(m, sv(0), tol));
    return svd.matrixV().rightCols(n - static_cast<Eigen::Index>(r));
}

AffineSpace solve_affine_space(const std::vector<LinearConstraint>& constraints,
                               const Tolerance& tol)
{
    if (constraints.empty())
        throw InvalidArgument("solve_affine_space: no constraints");
    const Eigen::Index n = constraints.front().matrix.cols();
    Eigen::Index rows = 0;
    for (const auto& c : constraints) {
        if (c.matrix.cols() != n)
            throw InvalidArgument("solve_affine_space: constraint column counts differ");
        if (c.rhs.size() != c.matrix.rows())
            throw InvalidArgument("solve_affine_space: rhs length mismatch");
        rows += c.matrix.rows();
    }
    CMatrix a(rows, n);
    CVector b(rows);
    Eigen::Index at = 0;
    for (const auto& c : constraints) {
        a.middleRows(at, c.matrix.rows()) = c.matrix;
        b.segment(at, c.rhs.size()) = c.rhs;
        at += c.matrix.rows();
    }

    AffineSpace out;
    Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeFullV);
    const RVector& sv = svd.singularValues();
    std::size_t r = (sv.size() == 0 || sv(0) == 0.0) ? 0 : rank_from(sv, cutoff(a, sv(0), tol));

    out.particular = CVector::Zero(n);
    for (std::size_t i = 0; i < r; ++i) {
        cplx coef = svd.matrixU().col(i).dot(b) / sv(i);
        out.particular += coef * svd.matrixV().col(i);
    }
    out.null_basis = svd.matrixV().rightCols(n - static_cast<Eigen::Index>(r));
    out.residual = rows > 0 ? max_abs(CVector(a * out.particular - b)) : 0.0;
    if (out.residual > 10.0 * tol.abs_tol)
        throw Inconsistent("least-squares residual " + std::to_string(out.residual)
                           + " exceeds 10*tol");
    return out;
}

double max_abs(const CMatrix& m)
{
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double max_abs(const CVector& v)
{
    return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
}

} // namespace wka
