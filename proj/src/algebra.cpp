#include "wka/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <Eigen/Eigenvalues>

namespace wka {

using RowMajor = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// ---------------------------------------------------------------- FdAlgebra

FdAlgebra::FdAlgebra(std::vector<std::size_t> block_shape) : shape_(std::move(block_shape))
{
    if (shape_.empty())
        throw InvalidArgument("block shape must be nonempty");
    for (std::size_t d : shape_)
        if (d == 0)
            throw InvalidArgument("block sizes must be positive");
    for (std::size_t i = 0; i < shape_.size(); ++i) {
        const std::size_t d = shape_[i];
        offsets_.push_back(dim_);
        for (std::size_t k = 0; k < d; ++k)
            for (std::size_t l = 0; l < d; ++l)
                labels_.push_back({i, k, l});
        dim_ += d * d;
    }
    star_.resize(dim_);
    for (std::size_t a = 0; a < dim_; ++a) {
        const Label& lb = labels_[a];
        star_[a] = index(lb.block, lb.col, lb.row);
    }
    for (std::size_t i = 0; i < shape_.size(); ++i) {
        const std::size_t d = shape_[i];
        for (std::size_t k = 0; k < d; ++k)
            for (std::size_t l = 0; l < d; ++l)
                for (std::size_t m = 0; m < d; ++m)
                    mult_.push_back({index(i, k, l), index(i, l, m), index(i, k, m)});
    }
}

std::string FdAlgebra::label_name(std::size_t a) const
{
    const Label& lb = labels_.at(a);
    return "e[" + std::to_string(lb.block + 1) + "](" + std::to_string(lb.row + 1) + ","
        + std::to_string(lb.col + 1) + ")";
}

CVector FdAlgebra::unit() const
{
    CVector u = CVector::Zero(dim_);
    for (std::size_t i = 0; i < shape_.size(); ++i)
        for (std::size_t k = 0; k < shape_[i]; ++k)
            u(index(i, k, k)) = 1.0;
    return u;
}

CVector FdAlgebra::basis(std::size_t a) const
{
    if (a >= dim_)
        throw IndexOutOfRange("basis index " + std::to_string(a));
    CVector v = CVector::Zero(dim_);
    v(a) = 1.0;
    return v;
}

namespace {

void check_len(const FdAlgebra& alg, const CVector& x)
{
    if (static_cast<std::size_t>(x.size()) != alg.dim())
        throw InvalidArgument("coefficient vector has length " + std::to_string(x.size())
                              + ", expected " + std::to_string(alg.dim()));
}

} // namespace

CVector FdAlgebra::multiply(const CVector& x, const CVector& y) const
{
    check_len(*this, x);
    check_len(*this, y);
    CVector out(dim_);
    for (std::size_t i = 0; i < shape_.size(); ++i) {
        const Eigen::Index d = shape_[i];
        Eigen::Map<const RowMajor> xm(x.data() + offsets_[i], d, d);
        Eigen::Map<const RowMajor> ym(y.data() + offsets_[i], d, d);
        Eigen::Map<RowMajor> om(out.data() + offsets_[i], d, d);
        om.noalias() = xm * ym;
    }
    return out;
}

CVector FdAlgebra::star(const CVector& x) const
{
    check_len(*this, x);
    CVector out(dim_);
    for (std::size_t a = 0; a < dim_; ++a)
        out(star_[a]) = std::conj(x(a));
    return out;
}

CMatrix FdAlgebra::star_matrix() const
{
    CMatrix p = CMatrix::Zero(dim_, dim_);
    for (std::size_t a = 0; a < dim_; ++a)
        p(star_[a], a) = 1.0;
    return p;
}

Tensor3 FdAlgebra::mult_tensor() const
{
    Tensor3 t(dim_, dim_, dim_);
    for (const auto& m : mult_)
        t(m.a, m.b, m.r) = 1.0;
    return t;
}

CMatrix FdAlgebra::left_mult(const CVector& x) const
{
    check_len(*this, x);
    CMatrix l = CMatrix::Zero(dim_, dim_);
    for (std::size_t i = 0; i < shape_.size(); ++i) {
        const std::size_t d = shape_[i];
        const std::size_t o = offsets_[i];
        // x e_{mn} = sum_k x_{km} e_{kn}
        for (std::size_t k = 0; k < d; ++k)
            for (std::size_t m = 0; m < d; ++m) {
                const cplx v = x(o + k * d + m);
                if (v == cplx(0.0))
                    continue;
                for (std::size_t n = 0; n < d; ++n)
                    l(o + k * d + n, o + m * d + n) += v;
            }
    }
    return l;
}

CMatrix FdAlgebra::right_mult(const CVector& x) const
{
    check_len(*this, x);
    CMatrix r = CMatrix::Zero(dim_, dim_);
    for (std::size_t i = 0; i < shape_.size(); ++i) {
        const std::size_t d = shape_[i];
        const std::size_t o = offsets_[i];
        // e_{km} x = sum_n x_{mn} e_{kn}
        for (std::size_t m = 0; m < d; ++m)
            for (std::size_t n = 0; n < d; ++n) {
                const cplx v = x(o + m * d + n);
                if (v == cplx(0.0))
                    continue;
                for (std::size_t k = 0; k < d; ++k)
                    r(o + k * d + n, o + k * d + m) += v;
            }
    }
    return r;
}

std::vector<CMatrix> FdAlgebra::to_blocks(const CVector& x) const
{
    check_len(*this, x);
    std::vector<CMatrix> out;
    for (std::size_t i = 0; i < shape_.size(); ++i) {
        const Eigen::Index d = shape_[i];
        out.emplace_back(Eigen::Map<const RowMajor>(x.data() + offsets_[i], d, d));
    }
    return out;
}

CVector FdAlgebra::from_blocks(const std::vector<CMatrix>& blocks) const
{
    if (blocks.size() != shape_.size())
        throw InvalidArgument("block count mismatch");
    CVector out(dim_);
    for (std::size_t i = 0; i < shape_.size(); ++i) {
        const Eigen::Index d = shape_[i];
        if (blocks[i].rows() != d || blocks[i].cols() != d)
            throw InvalidArgument("block size mismatch");
        Eigen::Map<RowMajor>(out.data() + offsets_[i], d, d) = blocks[i];
    }
    return out;
}

CMatrix FdAlgebra::to_matrix(const CVector& x) const
{
    const std::size_t total = std::accumulate(shape_.begin(), shape_.end(), std::size_t{0});
    CMatrix m = CMatrix::Zero(total, total);
    auto blocks = to_blocks(x);
    std::size_t at = 0;
    for (std::size_t i = 0; i < shape_.size(); ++i) {
        m.block(at, at, shape_[i], shape_[i]) = blocks[i];
        at += shape_[i];
    }
    return m;
}

CVector FdAlgebra::block_trace() const
{
    return unit();
}

CVector FdAlgebra::regular_trace_coeffs() const
{
    CVector t = CVector::Zero(dim_);
    for (std::size_t i = 0; i < shape_.size(); ++i)
        for (std::size_t k = 0; k < shape_[i]; ++k)
            t(index(i, k, k)) = static_cast<double>(shape_[i]);
    return t;
}

CVector FdAlgebra::central_projection(std::size_t block) const
{
    if (block >= shape_.size())
        throw IndexOutOfRange("block " + std::to_string(block));
    CVector p = CVector::Zero(dim_);
    for (std::size_t k = 0; k < shape_[block]; ++k)
        p(index(block, k, k)) = 1.0;
    return p;
}

CVector FdAlgebra::compress(const CVector& x, std::size_t block) const
{
    CVector out = CVector::Zero(dim_);
    const std::size_t o = offsets_[block];
    const std::size_t len = shape_[block] * shape_[block];
    out.segment(o, len) = x.segment(o, len);
    return out;
}

double FdAlgebra::min_eigenvalue(const CVector& x) const
{
    double m = INFINITY;
    for (const CMatrix& b : to_blocks(x)) {
        CMatrix h = (b + b.adjoint()) / 2.0;
        Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
        m = std::min(m, es.eigenvalues().minCoeff());
    }
    return m;
}

CMatrix FdAlgebra::tensor_multiply(const CMatrix& a, const CMatrix& b) const
{
    CMatrix out = CMatrix::Zero(dim_, dim_);
    for (std::size_t i = 0; i < shape_.size(); ++i) {
        for (std::size_t j = 0; j < shape_.size(); ++j) {
            const std::size_t di = shape_[i], dj = shape_[j];
            const std::size_t oi = offsets_[i], oj = offsets_[j];
            const std::size_t s = di * dj;
            // Block (i,j) of M (x) M is M_{di dj}; entry [(k,m),(l,n)] holds
            // the coefficient of e^{(i)}_{kl} (x) e^{(j)}_{mn}.
            CMatrix xa(s, s), xb(s, s);
            for (std::size_t k = 0; k < di; ++k)
                for (std::size_t l = 0; l < di; ++l)
                    for (std::size_t m = 0; m < dj; ++m)
                        for (std::size_t n = 0; n < dj; ++n) {
                            xa(k * dj + m, l * dj + n) = a(oi + k * di + l, oj + m * dj + n);
                            xb(k * dj + m, l * dj + n) = b(oi + k * di + l, oj + m * dj + n);
                        }
            if (xa.isZero(0.0) || xb.isZero(0.0))
                continue;
            CMatrix xc = xa * xb;
            for (std::size_t k = 0; k < di; ++k)
                for (std::size_t l = 0; l < di; ++l)
                    for (std::size_t m = 0; m < dj; ++m)
                        for (std::size_t n = 0; n < dj; ++n)
                            out(oi + k * di + l, oj + m * dj + n) = xc(k * dj + m, l * dj + n);
        }
    }
    return out;
}

std::vector<CMatrix> FdAlgebra::tensor_blocks(const CMatrix& c) const
{
    const std::size_t k = shape_.size();
    std::vector<CMatrix> out(k * k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            const std::size_t di = shape_[i], dj = shape_[j];
            const std::size_t oi = offsets_[i], oj = offsets_[j];
            if (c.block(oi, oj, di * di, dj * dj).isZero(0.0))
                continue;
            CMatrix x(di * dj, di * dj);
            for (std::size_t a = 0; a < di; ++a)
                for (std::size_t l = 0; l < di; ++l)
                    for (std::size_t m = 0; m < dj; ++m)
                        for (std::size_t n = 0; n < dj; ++n)
                            x(a * dj + m, l * dj + n) = c(oi + a * di + l, oj + m * dj + n);
            out[i * k + j] = std::move(x);
        }
    return out;
}

CMatrix FdAlgebra::tensor_from_blocks(const std::vector<CMatrix>& blocks) const
{
    const std::size_t k = shape_.size();
    if (blocks.size() != k * k)
        throw InvalidArgument("tensor block count mismatch");
    CMatrix out = CMatrix::Zero(dim_, dim_);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            const CMatrix& x = blocks[i * k + j];
            if (x.size() == 0)
                continue;
            const std::size_t di = shape_[i], dj = shape_[j];
            const std::size_t oi = offsets_[i], oj = offsets_[j];
            for (std::size_t a = 0; a < di; ++a)
                for (std::size_t l = 0; l < di; ++l)
                    for (std::size_t m = 0; m < dj; ++m)
                        for (std::size_t n = 0; n < dj; ++n)
                            out(oi + a * di + l, oj + m * dj + n) = x(a * dj + m, l * dj + n);
        }
    return out;
}

std::vector<CMatrix> FdAlgebra::tensor_blocks_multiply(const std::vector<CMatrix>& a,
                                                       const std::vector<CMatrix>& b) const
{
    std::vector<CMatrix> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].size() != 0 && b[i].size() != 0)
            out[i].noalias() = a[i] * b[i];
    return out;
}

CMatrix FdAlgebra::tensor_star(const CMatrix& c) const
{
    CMatrix out(dim_, dim_);
    for (std::size_t a = 0; a < dim_; ++a)
        for (std::size_t b = 0; b < dim_; ++b)
            out(star_[a], star_[b]) = std::conj(c(a, b));
    return out;
}

CVector FdAlgebra::mu(const CMatrix& c) const
{
    CVector out = CVector::Zero(dim_);
    for (const auto& m : mult_)
        out(m.r) += c(m.a, m.b);
    return out;
}

CMatrix FdAlgebra::elementary_tensor(const CVector& x, const CVector& y)
{
    return x * y.transpose();
}

AlgebraPtr make_algebra(std::vector<std::size_t> block_shape)
{
    return std::make_shared<const FdAlgebra>(std::move(block_shape));
}

// ------------------------------------------------------ elements, functionals

AlgElement::AlgElement(AlgebraPtr p, CVector c) : parent(std::move(p)), coeffs(std::move(c))
{
    if (!parent)
        throw InvalidArgument("element without parent algebra");
    check_len(*parent, coeffs);
}

AlgElement AlgElement::unit(AlgebraPtr p)
{
    CVector u = p->unit();
    return AlgElement(std::move(p), std::move(u));
}

AlgElement AlgElement::basis(AlgebraPtr p, std::size_t a)
{
    CVector b = p->basis(a);
    return AlgElement(std::move(p), std::move(b));
}

namespace {

void same_parent(const AlgebraPtr& a, const AlgebraPtr& b)
{
    if (a != b && !a->same_shape(*b))
        throw MismatchedParent("operands belong to different algebras");
}

} // namespace

AlgElement multiply(const AlgElement& x, const AlgElement& y)
{
    same_parent(x.parent, y.parent);
    return AlgElement(x.parent, x.parent->multiply(x.coeffs, y.coeffs));
}

AlgElement star(const AlgElement& x)
{
    return AlgElement(x.parent, x.parent->star(x.coeffs));
}

AlgElement operator+(const AlgElement& x, const AlgElement& y)
{
    same_parent(x.parent, y.parent);
    return AlgElement(x.parent, x.coeffs + y.coeffs);
}

AlgElement operator*(cplx s, const AlgElement& x)
{
    return AlgElement(x.parent, s * x.coeffs);
}

Functional::Functional(AlgebraPtr p, CVector c) : parent(std::move(p)), coeffs(std::move(c))
{
    if (!parent)
        throw InvalidArgument("functional without parent algebra");
    check_len(*parent, coeffs);
}

cplx Functional::operator()(const AlgElement& x) const
{
    same_parent(parent, x.parent);
    return coeffs.transpose() * x.coeffs;
}

cplx Functional::operator()(const CVector& x) const
{
    check_len(*parent, x);
    return coeffs.transpose() * x;
}

// ------------------------------------------------------------ subalgebras

SubalgebraBasis::SubalgebraBasis(AlgebraPtr parent, const CMatrix& spanning, const Tolerance& tol)
    : parent_(std::move(parent))
{
    if (static_cast<std::size_t>(spanning.rows()) != parent_->dim())
        throw InvalidArgument("spanning set has wrong row count");
    basis_ = orthonormal_span(spanning, tol);
}

AlgElement SubalgebraBasis::element(std::size_t i) const
{
    return AlgElement(parent_, basis_.col(i));
}

double SubalgebraBasis::distance(const CVector& x) const
{
    CVector r = x - basis_ * (basis_.adjoint() * x);
    return max_abs(r);
}

bool SubalgebraBasis::contains_unit(const Tolerance& tol) const
{
    return distance(parent_->unit()) <= tol.abs_tol;
}

double SubalgebraBasis::closure_residual() const
{
    double worst = 0.0;
    for (Eigen::Index i = 0; i < basis_.cols(); ++i) {
        worst = std::max(worst, distance(parent_->star(basis_.col(i))));
        for (Eigen::Index j = 0; j < basis_.cols(); ++j)
            worst = std::max(worst, distance(parent_->multiply(basis_.col(i), basis_.col(j))));
    }
    return worst;
}

Functional regular_trace(const AlgebraPtr& a)
{
    return Functional(a, a->regular_trace_coeffs());
}

SubalgebraBasis commutant(const SubalgebraBasis& s, const Tolerance& tol)
{
    const FdAlgebra& a = *s.parent();
    const Eigen::Index n = a.dim();
    if (s.dim() == 0)
        return SubalgebraBasis(s.parent(), CMatrix::Identity(n, n), tol);
    CMatrix stacked(n * s.dim(), n);
    for (std::size_t i = 0; i < s.dim(); ++i) {
        CVector b = s.basis().col(i);
        stacked.middleRows(i * n, n) = a.left_mult(b) - a.right_mult(b);
    }
    return SubalgebraBasis(s.parent(), null_space(stacked, tol), tol);
}

SubalgebraBasis center(const AlgebraPtr& a, const Tolerance& tol)
{
    SubalgebraBasis all(a, CMatrix::Identity(a->dim(), a->dim()), tol);
    return commutant(all, tol);
}

std::vector<AlgElement> minimal_central_projections(const AlgebraPtr& a)
{
    std::vector<AlgElement> out;
    for (std::size_t i = 0; i < a->num_blocks(); ++i)
        out.emplace_back(a, a->central_projection(i));
    return out;
}

// ---------------------------------------------------- abstract *-algebras

CMatrix AbstractStarAlgebra::left_mult(const CVector& x) const
{
    const Eigen::Index n = dim();
    CMatrix l = CMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        if (x(i) != cplx(0.0))
            l += x(i) * left[i];
    return l;
}

CVector AbstractStarAlgebra::multiply(const CVector& x, const CVector& y) const
{
    return left_mult(x) * y;
}

AbstractStarAlgebra AbstractStarAlgebra::from_tensor(const Tensor3& mult, const CMatrix& star,
                                                     const CVector& unit, const CMatrix& form)
{
    const auto d = mult.dims();
    if (d[0] != d[1] || d[1] != d[2])
        throw InvalidArgument("multiplication tensor must be cubic");
    AbstractStarAlgebra out;
    const std::size_t n = d[0];
    for (std::size_t a = 0; a < n; ++a) {
        CMatrix l(n, n);
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t r = 0; r < n; ++r)
                l(r, b) = mult(a, b, r);
        out.left.push_back(std::move(l));
    }
    out.star = star;
    out.unit = unit;
    out.form = form;
    return out;
}

namespace {

CVector random_vector(std::mt19937_64& rng, Eigen::Index n)
{
    std::normal_distribution<double> nd(0.0, 1.0);
    CVector v(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        double re = nd(rng);
        double im = nd(rng);
        v(i) = cplx(re, im);
    }
    return v;
}

// Groups sorted eigenvalues into clusters separated by gaps larger than sep.
std::vector<std::vector<Eigen::Index>> cluster_eigenvalues(const RVector& ev, double sep)
{
    std::vector<std::vector<Eigen::Index>> out;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (i == 0 || ev(i) - ev(i - 1) > sep)
            out.emplace_back();
        out.back().push_back(i);
    }
    return out;
}

struct BlockUnits {
    std::size_t d;
    std::vector<CVector> units; // row-major e_{kl}
};

} // namespace

WedderburnResult wedderburn_realize(const AbstractStarAlgebra& assoc, const Tolerance& tol,
                                    unsigned seed)
{
    const Eigen::Index n = assoc.dim();
    if (n == 0 || static_cast<Eigen::Index>(assoc.left.size()) != n
        || assoc.star.rows() != n || assoc.star.cols() != n || assoc.form.rows() != n
        || assoc.form.cols() != n)
        throw InvalidArgument("inconsistent abstract algebra dimensions");

    const double check_tol = std::max(1e-7, 1e3 * tol.abs_tol);

    // involution axioms
    double star_res = max_abs(CMatrix(assoc.star * assoc.star.conjugate()
                                      - CMatrix::Identity(n, n)));
    star_res = std::max(star_res, max_abs(CVector(assoc.apply_star(assoc.unit) - assoc.unit)));
    {
        std::vector<CMatrix> lstar(n);
        for (Eigen::Index j = 0; j < n; ++j)
            lstar[j] = assoc.left_mult(assoc.star.col(j));
        for (Eigen::Index i = 0; i < n && star_res <= check_tol; ++i)
            for (Eigen::Index j = 0; j < n; ++j) {
                CVector lhs = assoc.apply_star(assoc.left[i].col(j));
                CVector rhs = lstar[j] * assoc.star.col(i);
                star_res = std::max(star_res, max_abs(CVector(lhs - rhs)));
            }
    }
    if (star_res > check_tol)
        throw NotStarClosed("involution axioms violated, residual " + std::to_string(star_res));

    // GNS form
    CMatrix q = (assoc.form + assoc.form.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<CMatrix> qes(q);
    const RVector& qev = qes.eigenvalues();
    if (!(qev.maxCoeff() > 0.0) || qev.minCoeff() <= static_cast<double>(n) * tol.abs_tol
                                                        * qev.maxCoeff())
        throw NotSemisimple("GNS form is degenerate");
    RVector sq = qev.cwiseSqrt();
    CMatrix w = qes.eigenvectors() * sq.cast<cplx>().asDiagonal() * qes.eigenvectors().adjoint();
    CMatrix winv = qes.eigenvectors() * sq.cwiseInverse().cast<cplx>().asDiagonal()
        * qes.eigenvectors().adjoint();
    auto lambda = [&](const CVector& x) -> CMatrix {
        CMatrix l = w * assoc.left_mult(x) * winv;
        return (l + l.adjoint()).eval() / 2.0; // only used on self-adjoint x
    };
    auto from_proj = [&](const CMatrix& pi) -> CVector { return winv * (pi * (w * assoc.unit)); };

    // center
    CMatrix stacked(n * n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        CMatrix r(n, n);
        for (Eigen::Index j = 0; j < n; ++j)
            r.col(j) = assoc.left[j].col(i);
        stacked.middleRows(i * n, n) = assoc.left[i] - r;
    }
    CMatrix z_basis = null_space(stacked, Tolerance(std::max(tol.abs_tol, 1e-10)));
    const Eigen::Index c = z_basis.cols();
    if (c == 0)
        throw NotSemisimple("trivial center");

    std::mt19937_64 rng(seed);
    std::vector<CMatrix> central;
    for (int attempt = 0; attempt < 20 && central.empty(); ++attempt) {
        CVector z = z_basis * random_vector(rng, c);
        z = (z + assoc.apply_star(z)) / 2.0;
        Eigen::SelfAdjointEigenSolver<CMatrix> es(lambda(z));
        const RVector& ev = es.eigenvalues();
        double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
        auto clusters = cluster_eigenvalues(ev, 1e-5 * scale);
        if (static_cast<Eigen::Index>(clusters.size()) != c)
            continue;
        for (const auto& cl : clusters) {
            CMatrix v(n, cl.size());
            for (std::size_t k = 0; k < cl.size(); ++k)
                v.col(k) = es.eigenvectors().col(cl[k]);
            central.push_back(v);
        }
    }
    if (central.empty())
        throw NotSemisimple("could not separate minimal central projections");

    std::vector<BlockUnits> blocks;
    for (const CMatrix& v : central) {
        const std::size_t rank = v.cols();
        const std::size_t d = static_cast<std::size_t>(std::llround(std::sqrt(double(rank))));
        if (d * d != rank)
            throw NotSemisimple("central summand of non-square dimension");
        CVector pk = from_proj(v * v.adjoint());
        BlockUnits bu{d, {}};
        if (d == 1) {
            bu.units.push_back(pk);
            blocks.push_back(std::move(bu));
            continue;
        }
        std::vector<CVector> minimal;
        for (int attempt = 0; attempt < 20 && minimal.empty(); ++attempt) {
            CVector r = random_vector(rng, n);
            r = (r + assoc.apply_star(r)) / 2.0;
            CVector h = assoc.multiply(assoc.multiply(pk, r), pk);
            CMatrix hk = v.adjoint() * lambda(h) * v;
            hk = (hk + hk.adjoint()).eval() / 2.0;
            Eigen::SelfAdjointEigenSolver<CMatrix> es(hk);
            const RVector& ev = es.eigenvalues();
            double scale = std::max(1e-300, ev.cwiseAbs().maxCoeff());
            bool ok = true;
            for (std::size_t j = 0; j < d && ok; ++j) {
                double lo = ev(j * d), hi = ev(j * d + d - 1);
                if (hi - lo > 1e-7 * scale)
                    ok = false;
                if (j > 0 && lo - ev(j * d - 1) < 1e-3 * scale)
                    ok = false;
            }
            if (!ok)
                continue;
            for (std::size_t j = 0; j < d; ++j) {
                CMatrix u = v * es.eigenvectors().middleCols(j * d, d);
                minimal.push_back(from_proj(u * u.adjoint()));
            }
        }
        if (minimal.empty())
            throw NotSemisimple("could not split a simple summand into minimal projections");

        // e_{1j} from p_1 b p_j, normalized so that e_{1j} e_{1j}^* = p_1
        std::vector<CVector> row(d);
        row[0] = minimal[0];
        CMatrix lp1 = assoc.left_mult(minimal[0]);
        for (std::size_t j = 1; j < d; ++j) {
            CMatrix rpj(n, n);
            for (Eigen::Index m = 0; m < n; ++m)
                rpj.col(m) = assoc.left[m] * minimal[j];
            // column m of rpj * lp1 is p_1 b_m p_j
            CMatrix cand = rpj * lp1;
            Eigen::Index best = 0;
            cand.colwise().norm().maxCoeff(&best);
            CVector u = cand.col(best);
            CVector uu = assoc.multiply(u, assoc.apply_star(u));
            cplx cval = minimal[0].dot(uu) / minimal[0].squaredNorm();
            if (!(std::abs(cval) > 0.0))
                throw NotSemisimple("failed to build matrix units");
            row[j] = u / std::sqrt(cval);
        }
        std::vector<CVector> col(d);
        for (std::size_t j = 0; j < d; ++j)
            col[j] = assoc.apply_star(row[j]);
        bu.units.resize(d * d);
        for (std::size_t k = 0; k < d; ++k)
            for (std::size_t l = 0; l < d; ++l)
                bu.units[k * d + l] = (k == 0) ? row[l] : assoc.multiply(col[k], row[l]);
        blocks.push_back(std::move(bu));
    }

    std::stable_sort(blocks.begin(), blocks.end(),
                     [](const BlockUnits& a, const BlockUnits& b) { return a.d < b.d; });
    std::vector<std::size_t> shape;
    for (const auto& b : blocks)
        shape.push_back(b.d);
    WedderburnResult out;
    out.algebra = make_algebra(shape);
    const FdAlgebra& canon = *out.algebra;
    if (static_cast<Eigen::Index>(canon.dim()) != n)
        throw NotSemisimple("block dimensions do not add up");
    out.iso.resize(n, n);
    for (std::size_t i = 0; i < blocks.size(); ++i)
        for (std::size_t kl = 0; kl < blocks[i].units.size(); ++kl)
            out.iso.col(canon.offset(i) + kl) = blocks[i].units[kl];
    Eigen::FullPivLU<CMatrix> lu(out.iso);
    if (!lu.isInvertible())
        throw NotSemisimple("matrix units are linearly dependent");
    out.iso_inverse = lu.inverse();

    // verify the realization: products, involution and unit
    double res = max_abs(CVector(out.iso * canon.unit() - assoc.unit));
    for (Eigen::Index a = 0; a < n; ++a) {
        CMatrix lhs = assoc.left_mult(out.iso.col(a)) * out.iso;
        CMatrix rhs = out.iso * canon.left_mult(canon.basis(a));
        res = std::max(res, max_abs(CMatrix(lhs - rhs)));
        res = std::max(res, max_abs(CVector(assoc.apply_star(out.iso.col(a))
                                            - out.iso.col(canon.star_index(a)))));
    }
    out.residual = res;
    if (res > check_tol)
        throw NotSemisimple("realization residual " + std::to_string(res));
    return out;
}

WedderburnResult realize_subalgebra(const SubalgebraBasis& s, const Tolerance& tol)
{
    const FdAlgebra& a = *s.parent();
    const CMatrix& b = s.basis();
    const Eigen::Index m = b.cols();
    if (m == 0)
        throw InvalidArgument("empty subalgebra");
    AbstractStarAlgebra abs;
    for (Eigen::Index i = 0; i < m; ++i)
        abs.left.push_back(b.adjoint() * a.left_mult(b.col(i)) * b);
    abs.star = b.adjoint() * a.star_matrix() * b.conjugate();
    abs.unit = b.adjoint() * a.unit();
    abs.form = CMatrix::Identity(m, m);
    if (s.distance(a.unit()) > std::max(1e-7, 1e3 * tol.abs_tol))
        throw InvalidArgument("subalgebra does not contain the unit");
    WedderburnResult r = wedderburn_realize(abs, tol);
    r.iso = b * r.iso;
    r.iso_inverse = r.iso_inverse * b.adjoint();
    return r;
}

// ------------------------------------------------ conditional expectations

VerificationReport check_conditional_expectation(const AlgebraPtr& ap, const CMatrix& e,
                                                 const SubalgebraBasis& target,
                                                 const std::optional<CVector>& trace,
                                                 const Tolerance& tol)
{
    const FdAlgebra& a = *ap;
    const Eigen::Index n = a.dim();
    if (e.rows() != n || e.cols() != n)
        throw InvalidArgument("expectation matrix has wrong size");
    VerificationReport rep(tol.abs_tol);
    const CMatrix& tb = target.basis();

    rep.add("unital", max_abs(CVector(e * a.unit() - a.unit())));
    rep.add("range", max_abs(CMatrix(e - target.projector() * e)));
    rep.add("idempotent_on_target", max_abs(CMatrix(e * tb - tb)));

    double left = 0.0, right = 0.0;
    for (Eigen::Index i = 0; i < tb.cols(); ++i) {
        CVector t = tb.col(i);
        CMatrix lt = a.left_mult(t), rt = a.right_mult(t);
        left = std::max(left, max_abs(CMatrix(e * lt - lt * e)));
        right = std::max(right, max_abs(CMatrix(e * rt - rt * e)));
    }
    rep.add("left_module", left);
    rep.add("right_module", right);

    double star_res = 0.0;
    for (Eigen::Index x = 0; x < n; ++x) {
        CVector ex = e.col(x);
        CVector exs = e.col(a.star_index(x));
        star_res = std::max(star_res, max_abs(CVector(exs - a.star(ex))));
    }
    rep.add("star_preserving", star_res);

    // complete positivity through the Choi matrix of each block
    double min_choi = INFINITY;
    for (std::size_t i = 0; i < a.num_blocks(); ++i) {
        const std::size_t d = a.block_size(i);
        const std::size_t total = a.to_matrix(a.unit()).rows();
        CMatrix choi = CMatrix::Zero(d * total, d * total);
        for (std::size_t k = 0; k < d; ++k)
            for (std::size_t l = 0; l < d; ++l)
                choi.block(k * total, l * total, total, total)
                    = a.to_matrix(e.col(a.index(i, k, l)));
        CMatrix h = (choi + choi.adjoint()) / 2.0;
        Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
        min_choi = std::min(min_choi, es.eigenvalues().minCoeff());
    }
    rep.add("positive", std::max(0.0, -min_choi), "min Choi eigenvalue " + std::to_string(min_choi));

    // faithfulness: Q_ab = tau(E(e_a^* e_b)) positive definite
    CVector t = (a.block_trace().transpose() * e).transpose();
    CMatrix q = CMatrix::Zero(n, n);
    for (Eigen::Index x = 0; x < n; ++x)
        for (Eigen::Index y = 0; y < n; ++y) {
            auto lx = a.label(x), ly = a.label(y);
            if (lx.block == ly.block && lx.row == ly.row)
                q(x, y) = t(a.index(lx.block, lx.col, ly.col));
        }
    CMatrix qh = (q + q.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<CMatrix> qes(qh, Eigen::EigenvaluesOnly);
    double qmin = qes.eigenvalues().minCoeff();
    rep.add_flag("faithful", qmin > tol.abs_tol, qmin, "min eigenvalue of tau(E(x^*x)) form");

    if (trace) {
        CVector lhs = (trace->transpose() * e).transpose();
        rep.add("trace_preserving", max_abs(CVector(lhs - *trace)));
    }
    return rep;
}

} // namespace wka
