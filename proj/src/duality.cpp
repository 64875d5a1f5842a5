#include "wka/duality.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "internal.hpp"

namespace wka {

DualResult dual_with_pairing(const WeakKac& w, const Tolerance& tol)
{
    const FdAlgebra& a = w.algebra();
    const std::size_t n = a.dim();
    const CMatrix& d = w.coproduct_matrix();
    const CMatrix& s = w.antipode();

    // abstract dual on the dual basis: product = transpose of Delta, unit = eps
    AbstractStarAlgebra abs;
    abs.left.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        CMatrix l(n, n);
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t x = 0; x < n; ++x)
                l(x, b) = d(i * n + b, x);
        abs.left[i] = std::move(l);
    }
    // <alpha^*, x> = conj <alpha, S(x)^*>
    abs.star = (a.star_matrix() * s).transpose();
    abs.unit = w.counit();
    // <alpha, beta> = (beta^* alpha)(p_eps)
    HaarProjection hp = haar_projection(w, tol);
    const CMatrix cp = w.delta(hp.p.coeffs);
    abs.form = abs.star.transpose() * cp;

    WedderburnResult wr;
    try {
        wr = wedderburn_realize(abs, tol);
    } catch (const NotSemisimple& ex) {
        if (std::string(ex.what()).find("degenerate") != std::string::npos)
            throw GramDegenerate(std::string("dual GNS form: ") + ex.what());
        throw;
    }
    const CMatrix& phi = wr.iso;
    const CMatrix& phi_inv = wr.iso_inverse;

    // coproduct = transpose of multiplication, transported to canonical coordinates
    CMatrix dd(n * n, n);
    const CMatrix phi_inv_t = phi_inv.transpose();
    for (std::size_t j = 0; j < n; ++j) {
        CMatrix c = detail::product_form(a, phi.col(j));
        dd.col(j) = vec(CMatrix(phi_inv * c * phi_inv_t));
    }
    CMatrix sd = phi_inv * s.transpose() * phi;
    CVector epsd = phi.transpose() * a.unit();
    WeakKac out(wr.algebra, dd, sd, epsd);
    out.name = w.name.empty() ? std::string("dual") : "dual(" + w.name + ")";
    return DualResult{out, phi, phi_inv};
}

WeakKac dual(const WeakKac& w, const Tolerance& tol)
{
    return dual_with_pairing(w, tol).dual;
}

VerificationReport check_pairing(const WeakKac& w, const DualResult& dr, const Tolerance& tol,
                                 unsigned seed)
{
    const FdAlgebra& a = w.algebra();
    const FdAlgebra& da = dr.dual.algebra();
    const std::size_t n = a.dim();
    const CMatrix& phi = dr.pairing;
    VerificationReport rep(tol.abs_tol);
    std::mt19937_64 rng(seed);
    double prod = 0.0, cop = 0.0, anti = 0.0, inv = 0.0;
    for (int t = 0; t < 20; ++t) {
        CVector al = detail::random_vector(rng, n), be = detail::random_vector(rng, n);
        CVector x = detail::random_vector(rng, n), y = detail::random_vector(rng, n);
        CVector fa = phi * al, fb = phi * be;
        // <alpha beta, x> = <alpha (x) beta, Delta(x)>
        cplx l1 = (CVector(phi * da.multiply(al, be)).transpose() * x)(0);
        cplx r1 = (fa.transpose() * w.delta(x) * fb)(0);
        prod = std::max(prod, std::abs(l1 - r1) / std::max(1.0, std::abs(r1)));
        // <Delta^(alpha), x (x) y> = <alpha, xy>
        CVector px = phi.transpose() * x, py = phi.transpose() * y;
        cplx l2 = (px.transpose() * dr.dual.delta(al) * py)(0);
        cplx r2 = (fa.transpose() * a.multiply(x, y))(0);
        cop = std::max(cop, std::abs(l2 - r2) / std::max(1.0, std::abs(r2)));
        // <S^ alpha, x> = <alpha, S x>
        cplx l3 = (CVector(phi * dr.dual.antipode() * al).transpose() * x)(0);
        cplx r3 = (fa.transpose() * w.antipode() * x)(0);
        anti = std::max(anti, std::abs(l3 - r3) / std::max(1.0, std::abs(r3)));
        // <alpha^*, x> = conj <alpha, S(x)^*>
        cplx l4 = (CVector(phi * da.star(al)).transpose() * x)(0);
        cplx r4 = std::conj((fa.transpose() * a.star(w.antipode() * x))(0));
        inv = std::max(inv, std::abs(l4 - r4) / std::max(1.0, std::abs(r4)));
    }
    rep.add("product", prod, "<ab, x> = <a x b, Delta(x)>, relative");
    rep.add("coproduct", cop, "<Delta^(a), x x y> = <a, xy>, relative");
    rep.add("antipode", anti, "<S^a, x> = <a, Sx>, relative");
    rep.add("involution", inv, "<a^*, x> = conj <a, S(x)^*>, relative");
    rep.add("unit", max_abs(CVector(phi * da.unit() - w.counit())), "1^ = eps");
    rep.add("counit", max_abs(CVector(dr.dual.counit() - phi.transpose() * a.unit())),
            "eps^(a) = <a, 1>");

    HaarProjection hp = haar_projection(w, tol);
    HaarTrace ht = normalized_haar_trace(dr.dual, tol, false);
    rep.add("haar_symmetric", max_abs(CVector(ht.phi.coeffs - phi.transpose() * hp.p.coeffs)),
            "normalized Haar trace of the dual = p_eps");
    const std::size_t nt = target_subalgebra(w.algebra_ptr(), w.coproduct_matrix(), tol).dim();
    const std::size_t ns_d =
        source_subalgebra(dr.dual.algebra_ptr(), dr.dual.coproduct_matrix(), tol).dim();
    rep.add_flag("cartan_dims", nt == ns_d, 0.0,
                 "dim N_t = " + std::to_string(nt) + ", dim N_s of dual = " + std::to_string(ns_d));
    return rep;
}

CMatrix pairing_isomorphism(const DualResult& dual_of_b, const CMatrix& p)
{
    return dual_of_b.pairing_inverse * p.transpose();
}

ConvolutionUnit convolution_unit(const AlgebraPtr& ap, const CMatrix& delta, const CMatrix& s,
                                 const CVector& phi, const Tolerance& tol)
{
    const FdAlgebra& a = *ap;
    const Eigen::Index n = a.dim();
    const CMatrix f = detail::product_form(a, phi);
    CMatrix m(2 * n * n, n);
    CVector rhs(2 * n * n);
    for (Eigen::Index x = 0; x < n; ++x) {
        CMatrix c = unvec(delta.col(x), n);
        m.middleRows(x * n, n) = f.transpose() * c * f;
        m.middleRows(n * n + x * n, n) = f.transpose() * c.transpose() * f;
        rhs.segment(x * n, n) = f.row(x).transpose();
        rhs.segment(n * n + x * n, n) = f.row(x).transpose();
    }
    AffineSpace sol;
    try {
        sol = solve_affine_space({{m, rhs}}, tol);
    } catch (const Inconsistent& ex) {
        throw NoUnit(std::string("convolution algebra has no unit: ") + ex.what());
    }
    if (!sol.unique())
        throw NoUnit("convolution unit is not unique");
    ConvolutionUnit out{sol.particular, VerificationReport(tol.abs_tol)};
    out.report.add("solve_residual", sol.residual);
    out.report.add("antipode", max_abs(CVector(s * out.unit - out.unit)), "S(1^) = 1^");
    out.report.add("self_adjoint", max_abs(CVector(a.star(out.unit) - out.unit)), "1^* = 1^");
    return out;
}

CVector counit_from_haar(const AlgebraPtr& a, const CMatrix& delta, const CMatrix& s,
                         const CVector& phi, const Tolerance& tol)
{
    ConvolutionUnit cu = convolution_unit(a, delta, s, phi, tol);
    return detail::product_form(*a, phi).transpose() * cu.unit;
}

WeakKac generalized_to_weak(const AlgebraPtr& a, const CMatrix& delta, const CMatrix& s,
                            const CVector& phi, const Tolerance& tol)
{
    return WeakKac(a, delta, s, counit_from_haar(a, delta, s, phi, tol));
}

BidualityResult biduality_isomorphism(const WeakKac& w, const Tolerance& tol)
{
    DualResult d1 = dual_with_pairing(w, tol);
    DualResult d2 = dual_with_pairing(d1.dual, tol);
    // x -> evaluation at x, a functional on the dual with coefficients Phi_1^T x
    BidualityResult out;
    out.iso = d2.pairing_inverse * d1.pairing.transpose();
    out.report = check_morphism(w, d2.dual, out.iso, tol);
    const std::size_t r = numerical_rank(out.iso, tol);
    out.report.add_flag("bijective", r == w.dim(), 0.0, "rank " + std::to_string(r));
    return out;
}

} // namespace wka
