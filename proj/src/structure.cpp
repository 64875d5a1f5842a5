#include <algorithm>
#include <cmath>
#include <map>

#include <Eigen/Eigenvalues>

#include "internal.hpp"
#include "wka/weak_kac.hpp"

namespace wka {

CounitalRepresentation counital_representation(const WeakKac& w, const Tolerance& tol)
{
    const FdAlgebra& a = w.algebra();
    const std::size_t n = a.dim();
    const CVector& eps = w.counit();
    const CMatrix et = target_counital_map(w.algebra_ptr(), w.coproduct_matrix(), w.antipode());
    const SubalgebraBasis nt = target_subalgebra(w.algebra_ptr(), w.coproduct_matrix(), tol);
    const CMatrix& b = nt.basis();
    const std::size_t r = nt.dim();

    CounitalRepresentation out;
    out.report = VerificationReport(tol.abs_tol);
    auto& rep = out.report;
    out.space = b;

    // (x, y) = eps(y^* x)
    out.gram.resize(r, r);
    for (std::size_t j = 0; j < r; ++j)
        for (std::size_t i = 0; i < r; ++i)
            out.gram(j, i) = (eps.transpose() * a.multiply(a.star(b.col(j)), b.col(i)))(0);
    {
        CMatrix h = (out.gram + out.gram.adjoint()) / 2.0;
        Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
        const double gmin = r ? es.eigenvalues().minCoeff() : 0.0;
        if (r == 0 || !(gmin > tol.abs_tol))
            throw GramDegenerate("eps is not positive definite on N_t, min eigenvalue "
                                 + std::to_string(gmin));
        rep.add_flag("gram_positive", true, gmin, "min eigenvalue of eps(y^* x) on N_t");
        rep.add("gram_hermitian", max_abs(CMatrix(out.gram - out.gram.adjoint())));
    }

    // pi(x) y = eps_t(x y) on N_t
    out.pi.resize(n);
    for (std::size_t x = 0; x < n; ++x)
        out.pi[x] = b.adjoint() * et * a.left_mult(a.basis(x)) * b;
    out.character.resize(n);
    for (std::size_t x = 0; x < n; ++x)
        out.character(x) = out.pi[x].trace();

    double mult = 0.0;
    std::vector<std::vector<long>> prod(n, std::vector<long>(n, -1));
    for (const auto& m : a.mult_entries())
        prod[m.a][m.b] = static_cast<long>(m.r);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            CMatrix p = out.pi[x] * out.pi[y];
            const long z = prod[x][y];
            mult = std::max(mult, z < 0 ? max_abs(p) : max_abs(CMatrix(p - out.pi[z])));
        }
    rep.add("multiplicative", mult, "pi(xy) = pi(x)pi(y)");
    CMatrix pu = CMatrix::Zero(r, r);
    for (std::size_t x = 0; x < n; ++x)
        pu += a.unit()(x) * out.pi[x];
    rep.add("unital", max_abs(CMatrix(pu - CMatrix::Identity(r, r))));
    const CMatrix ginv = out.gram.inverse();
    double st = 0.0;
    for (std::size_t x = 0; x < n; ++x)
        st = std::max(st, max_abs(CMatrix(out.pi[a.star_index(x)] - ginv * out.pi[x].adjoint() * out.gram)));
    rep.add("star", st, "pi(x^*) = pi(x)^* for the eps inner product");
    rep.add("trace_range", max_abs(CMatrix(et - nt.projector() * et)), "eps_t(M) in N_t");

    // chi(x) = eps(mu Delta(x))
    double chi = 0.0;
    for (std::size_t x = 0; x < n; ++x)
        chi = std::max(chi, std::abs(out.character(x)
                                     - (eps.transpose() * a.mu(w.delta_basis(x)))(0)));
    rep.add("character_formula", chi, "chi_eps(x) = eps(mu Delta(x))");

    // nu_i = Tr pi(e^{(i)}_{11})
    double frac = 0.0;
    bool multfree = true;
    for (std::size_t i = 0; i < a.num_blocks(); ++i) {
        const cplx v = out.character(a.index(i, 0, 0));
        const long k = std::lround(v.real());
        frac = std::max(frac, std::abs(v - cplx(static_cast<double>(k))));
        out.multiplicities.push_back(k);
        if (k > 0)
            out.support.push_back(i);
        if (k > 1)
            multfree = false;
    }
    rep.add("multiplicities_integral", frac, 1e-6, "nu_i = Tr pi(p_i) rounded");
    rep.add_flag("multiplicity_free", multfree, 0.0, "nu_i = 1 on the support");

    // the support is closed under i -> i^*
    bool selfconj = true;
    for (std::size_t i : out.support) {
        CVector sp = w.antipode() * a.central_projection(i);
        bool found = false;
        for (std::size_t j : out.support)
            if (max_abs(CVector(sp - a.central_projection(j))) <= 1e-6)
                found = true;
        selfconj = selfconj && found;
    }
    rep.add_flag("support_self_conjugate", selfconj);

    // chi_eps is a two-sided unit for (chi_i x chi_j) o Delta
    const CMatrix& d = w.coproduct_matrix();
    CMatrix left(n, n), right(n, n); // row x: chi_eps^T C_x, (C_x chi_eps)^T
    for (std::size_t x = 0; x < n; ++x) {
        CMatrix c = unvec(d.col(x), n);
        left.row(x) = out.character.transpose() * c;
        right.row(x) = (c * out.character).transpose();
    }
    double unit = 0.0;
    for (std::size_t j = 0; j < a.num_blocks(); ++j) {
        CVector chij = a.central_projection(j);
        unit = std::max(unit, max_abs(CVector(left * chij - chij)));
        unit = std::max(unit, max_abs(CVector(right * chij - chij)));
    }
    rep.add("unit_of_fusion", unit, "chi_eps . chi_j = chi_j . chi_eps = chi_j");
    CVector sum = CVector::Zero(n);
    for (std::size_t i : out.support)
        sum += a.central_projection(i);
    rep.add("character_sum", max_abs(CVector(sum - out.character)), "chi_eps = sum over support");
    return out;
}

FusionTable fusion_ring(const WeakKac& w, const Tolerance& tol)
{
    const FdAlgebra& a = w.algebra();
    const std::size_t n = a.dim();
    const std::size_t k = a.num_blocks();
    const CMatrix& d = w.coproduct_matrix();
    FusionTable out;
    out.report = VerificationReport(tol.abs_tol);
    auto& rep = out.report;
    for (std::size_t i = 0; i < k; ++i)
        out.characters.push_back(a.central_projection(i));

    out.n.assign(k, std::vector<std::vector<long>>(k, std::vector<long>(k, 0)));
    double frac = 0.0, recon = 0.0;
    long most_negative = 0;
    for (std::size_t i = 0; i < k; ++i) {
        // t(b, x) = sum_a chi_i(a) Delta(e_x)(a, b)
        CMatrix t = CMatrix::Zero(n, n);
        for (std::size_t aa = 0; aa < n; ++aa) {
            const cplx ci = out.characters[i](aa);
            if (ci == cplx(0.0))
                continue;
            for (std::size_t b = 0; b < n; ++b)
                t.row(b) += ci * d.row(aa * n + b);
        }
        for (std::size_t j = 0; j < k; ++j) {
            CVector psi = t.transpose() * out.characters[j];
            CVector rebuilt = CVector::Zero(n);
            for (std::size_t m = 0; m < k; ++m) {
                const cplx v = psi(a.index(m, 0, 0));
                const long r = std::lround(v.real());
                frac = std::max(frac, std::abs(v - cplx(static_cast<double>(r))));
                most_negative = std::min(most_negative, r);
                out.n[i][j][m] = r;
                rebuilt += v * out.characters[m];
            }
            recon = std::max(recon, max_abs(CVector(psi - rebuilt)));
        }
    }
    if (frac > 1e-6 || most_negative < 0)
        throw NonIntegralMultiplicity("fusion coefficients deviate from nonnegative integers by "
                                      + std::to_string(frac));
    rep.add("integral", frac, 1e-6, "distance of N_ij^k to integers");
    rep.add("decomposition", recon, "(chi_i x chi_j) o Delta in span{chi_k}");

    out.involution.assign(k, k);
    double inv_res = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        CVector cs = w.antipode().transpose() * out.characters[i];
        double best = INFINITY;
        for (std::size_t j = 0; j < k; ++j) {
            double dist = max_abs(CVector(cs - out.characters[j]));
            if (dist < best) {
                best = dist;
                out.involution[i] = j;
            }
        }
        inv_res = std::max(inv_res, best);
    }
    rep.add("involution", inv_res, "chi_i o S = chi_{i*}");
    bool antimult = true, invol = true;
    for (std::size_t i = 0; i < k; ++i) {
        invol = invol && out.involution[out.involution[i]] == i;
        for (std::size_t j = 0; j < k; ++j)
            for (std::size_t m = 0; m < k; ++m)
                if (out.n[i][j][m]
                    != out.n[out.involution[j]][out.involution[i]][out.involution[m]])
                    antimult = false;
    }
    rep.add_flag("involution_order_two", invol);
    rep.add_flag("involution_antimultiplicative", antimult, 0.0, "N_ij^k = N_{j*i*}^{k*}");

    CounitalRepresentation rho = counital_representation(w, tol);
    out.support = rho.support;
    long unit_err = 0;
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t m = 0; m < k; ++m) {
            long l = 0, r = 0;
            for (std::size_t s : out.support) {
                l += out.n[s][j][m];
                r += out.n[j][s][m];
            }
            const long want = (j == m) ? 1 : 0;
            unit_err = std::max(unit_err, std::max(std::labs(l - want), std::labs(r - want)));
        }
    rep.add("unit", static_cast<double>(unit_err), "sum over support of N_sj^k = delta_jk");
    return out;
}

WeakKac restrict_to_blocks(const WeakKac& w, const std::vector<std::size_t>& blocks)
{
    const FdAlgebra& a = w.algebra();
    if (blocks.empty())
        throw InvalidArgument("restriction to an empty set of blocks");
    std::vector<std::size_t> shape, sel;
    for (std::size_t i : blocks) {
        if (i >= a.num_blocks())
            throw IndexOutOfRange("block " + std::to_string(i));
        shape.push_back(a.block_size(i));
        for (std::size_t kl = 0; kl < a.block_size(i) * a.block_size(i); ++kl)
            sel.push_back(a.offset(i) + kl);
    }
    AlgebraPtr q = make_algebra(shape);
    const std::size_t m = sel.size(), n = a.dim();
    CMatrix d(m * m, m), s(m, m);
    CVector eps(m);
    for (std::size_t j = 0; j < m; ++j) {
        const CMatrix c = w.delta_basis(sel[j]);
        for (std::size_t p = 0; p < m; ++p)
            for (std::size_t r = 0; r < m; ++r)
                d(p * m + r, j) = c(sel[p], sel[r]);
        for (std::size_t p = 0; p < m; ++p)
            s(p, j) = w.antipode()(sel[p], sel[j]);
        eps(j) = w.counit()(sel[j]);
    }
    (void)n;
    WeakKac out(q, d, s, eps);
    out.name = w.name.empty() ? std::string() : w.name + "|blocks";
    return out;
}

CounitalQuotient counital_quotient(const WeakKac& w, const Tolerance& tol)
{
    CounitalRepresentation rho = counital_representation(w, tol);
    WeakKac q = restrict_to_blocks(w, rho.support);
    const FdAlgebra& a = w.algebra();
    CMatrix map = CMatrix::Zero(q.dim(), a.dim());
    std::size_t at = 0;
    for (std::size_t i : rho.support)
        for (std::size_t kl = 0; kl < a.block_size(i) * a.block_size(i); ++kl)
            map(at++, a.offset(i) + kl) = 1.0;
    VerificationReport rep(tol.abs_tol);
    rep.merge(verify_weak_kac(q, tol), "quotient");
    rep.merge(check_morphism(w, q, map, tol), "map");
    return CounitalQuotient{q, map, rho.support, rep};
}

KacBimoduleResult check_kac_bimodule(const AlgebraPtr& ap, const CMatrix& delta, const CMatrix& s,
                                     const Tolerance& tol)
{
    const FdAlgebra& a = *ap;
    const std::size_t n = a.dim();
    const CVector u = a.unit();
    KacBimoduleResult out;
    out.report = VerificationReport(tol.abs_tol);
    auto& rep = out.report;
    const auto c = detail::coproduct_slices(delta, n);
    VerificationReport pre(tol.abs_tol);
    detail::add_bialgebra_checks(pre, a, delta, c, s, tol);

    const CMatrix e = unvec(delta * u, n);
    const CMatrix et = target_counital_map(ap, delta, s);
    const CMatrix es = source_counital_map(ap, delta, s);
    const SubalgebraBasis nt = target_subalgebra(ap, delta, tol);
    const SubalgebraBasis ns = source_subalgebra(ap, delta, tol);
    pre.add("counital.target_unital", max_abs(CVector(et * u - u)), "eps_t(1) = 1");
    pre.add("counital.source_unital", max_abs(CVector(es * u - u)), "eps_s(1) = 1");
    pre.add("counital.target_range", max_abs(CMatrix(et - nt.projector() * et)), "eps_t(M) in N_t");
    pre.add("counital.source_range", max_abs(CMatrix(es - ns.projector() * es)), "eps_s(M) in N_s");
    double t3 = 0.0, s3 = 0.0;
    for (std::size_t x = 0; x < n; ++x) {
        const CVector ex = a.basis(x);
        t3 = std::max(t3, max_abs(CMatrix(c[x] * et.transpose() - a.right_mult(ex) * e)));
        s3 = std::max(s3, max_abs(CMatrix(es * c[x] - e * a.left_mult(ex).transpose())));
    }
    pre.add("counital.target_coproduct", t3, "(id x eps_t)Delta(x) = e(x x 1)");
    pre.add("counital.source_coproduct", s3, "(eps_s x id)Delta(x) = (1 x x)e");
    pre.add("counital.antipode", max_abs(CMatrix(s * et - es * s)), "S eps_t = eps_s S");
    pre.add_flag("counital.cartan_nonzero", nt.dim() > 0 && ns.dim() > 0);
    out.preconditions = pre.passed();
    rep.merge(pre, "pre");

    // theta_t(y) = Tr(L_y on N_t), eps = theta_t o eps_t; theta_s likewise
    auto restricted_trace = [&](const SubalgebraBasis& sub, const CVector& y) -> cplx {
        const CMatrix& b = sub.basis();
        return (b.adjoint() * a.left_mult(y) * b).trace();
    };
    CVector eps(n), eps_s(n);
    for (std::size_t x = 0; x < n; ++x) {
        eps(x) = restricted_trace(nt, et.col(x));
        eps_s(x) = restricted_trace(ns, es.col(x));
    }
    rep.add("theta_consistency", max_abs(CVector(eps - eps_s)), "theta_s o eps_s = theta_t o eps_t");
    double counit = 0.0;
    for (std::size_t x = 0; x < n; ++x)
        counit = std::max(counit, max_abs(CVector(c[x] * eps - a.basis(x))));
    rep.add("counit_condition", counit, "(id x eps)Delta = id");
    if (out.preconditions && rep.at("counit_condition").pass) {
        WeakKac w(ap, delta, s, eps);
        rep.merge(verify_weak_kac(w, tol), "weak_kac");
        out.counit = eps;
    }
    return out;
}

CVector recover_counit_strict(const AlgebraPtr& a, const CMatrix& delta, const CMatrix& s,
                              const Tolerance& tol)
{
    KacBimoduleResult r = check_kac_bimodule(a, delta, s, tol);
    if (!r.preconditions)
        throw NotCounital("generalized counital bialgebra conditions fail");
    if (!r.counit)
        throw NotCounital("(id x eps)Delta = id fails, residual "
                          + std::to_string(r.report.at("counit_condition").residual));
    return *r.counit;
}

namespace {

// Null-space coefficients c of central elements sum_i c_i P_i lying in N_s and N_t.
CMatrix hyper_center_coefficients(const WeakKac& w, const Tolerance& tol)
{
    const FdAlgebra& a = w.algebra();
    const std::size_t k = a.num_blocks();
    const Eigen::Index n = a.dim();
    CMatrix z(n, k);
    for (std::size_t i = 0; i < k; ++i)
        z.col(i) = a.central_projection(i);
    const SubalgebraBasis ns = source_subalgebra(w.algebra_ptr(), w.coproduct_matrix(), tol);
    const SubalgebraBasis nt = target_subalgebra(w.algebra_ptr(), w.coproduct_matrix(), tol);
    CMatrix m(2 * n, k);
    m.topRows(n) = (CMatrix::Identity(n, n) - ns.projector()) * z;
    m.bottomRows(n) = (CMatrix::Identity(n, n) - nt.projector()) * z;
    return null_space(m, tol);
}

} // namespace

SubalgebraBasis hyper_center(const WeakKac& w, const Tolerance& tol)
{
    const FdAlgebra& a = w.algebra();
    CMatrix coef = hyper_center_coefficients(w, tol);
    CMatrix z(a.dim(), a.num_blocks());
    for (std::size_t i = 0; i < a.num_blocks(); ++i)
        z.col(i) = a.central_projection(i);
    return SubalgebraBasis(w.algebra_ptr(), z * coef, tol);
}

std::optional<std::pair<WeakKac, WeakKac>> decompose_if_split(const WeakKac& w, const Tolerance& tol)
{
    const FdAlgebra& a = w.algebra();
    CMatrix coef = hyper_center_coefficients(w, tol);
    const std::size_t k = a.num_blocks();
    // blocks belong to the same minimal projection of the hyper-center iff their rows agree
    std::vector<std::size_t> cls(k, k);
    std::size_t classes = 0;
    for (std::size_t i = 0; i < k; ++i) {
        if (cls[i] != k)
            continue;
        cls[i] = classes;
        for (std::size_t j = i + 1; j < k; ++j)
            if (cls[j] == k && max_abs(CMatrix(coef.row(i) - coef.row(j))) <= 1e-6)
                cls[j] = classes;
        ++classes;
    }
    if (classes < 2)
        return std::nullopt;
    std::vector<std::size_t> first, rest;
    for (std::size_t i = 0; i < k; ++i)
        (cls[i] == 0 ? first : rest).push_back(i);
    return std::make_pair(restrict_to_blocks(w, first), restrict_to_blocks(w, rest));
}

VerificationReport check_morphism(const WeakKac& w1, const WeakKac& w2, const CMatrix& pi,
                                  const Tolerance& tol)
{
    const FdAlgebra& a1 = w1.algebra();
    const FdAlgebra& a2 = w2.algebra();
    const std::size_t n1 = a1.dim(), n2 = a2.dim();
    if (static_cast<std::size_t>(pi.rows()) != n2 || static_cast<std::size_t>(pi.cols()) != n1)
        throw InvalidArgument("morphism matrix must be dim(w2) x dim(w1)");
    VerificationReport rep(tol.abs_tol);
    rep.add("unital", max_abs(CVector(pi * a1.unit() - a2.unit())), "pi(1) = 1");
    double mult = 0.0, star = 0.0, cop = 0.0;
    for (std::size_t x = 0; x < n1; ++x) {
        CVector px = pi.col(x);
        mult = std::max(mult, max_abs(CMatrix(pi * a1.left_mult(a1.basis(x)) - a2.left_mult(px) * pi)));
        star = std::max(star, max_abs(CVector(pi.col(a1.star_index(x)) - a2.star(px))));
        cop = std::max(cop, max_abs(CMatrix(pi * w1.delta_basis(x) * pi.transpose() - w2.delta(px))));
    }
    rep.add("multiplicative", mult, "pi(xy) = pi(x)pi(y)");
    rep.add("star", star, "pi(x^*) = pi(x)^*");
    rep.add("coproduct", cop, "(pi x pi)Delta_1 = Delta_2 pi");
    rep.add("antipode", max_abs(CMatrix(pi * w1.antipode() - w2.antipode() * pi)), "pi S_1 = S_2 pi");
    rep.add("counit", max_abs(CVector(pi.transpose() * w2.counit() - w1.counit())), "eps_2 pi = eps_1");

    const SubalgebraBasis ns1 = source_subalgebra(w1.algebra_ptr(), w1.coproduct_matrix(), tol);
    const SubalgebraBasis ns2 = source_subalgebra(w2.algebra_ptr(), w2.coproduct_matrix(), tol);
    CMatrix img = pi * ns1.basis();
    double dist = 0.0;
    for (Eigen::Index i = 0; i < img.cols(); ++i)
        dist = std::max(dist, ns2.distance(img.col(i)));
    const std::size_t rank = numerical_rank(img, tol);
    const bool bij = rank == ns1.dim() && ns1.dim() == ns2.dim() && dist <= tol.abs_tol;
    rep.add_flag("cartan_bijective", bij, dist,
                 "rank " + std::to_string(rank) + ", dim N_s " + std::to_string(ns1.dim()) + " -> "
                     + std::to_string(ns2.dim()));
    return rep;
}

VerificationReport invariant_report(const WeakKac& w, const Tolerance& tol)
{
    const FdAlgebra& a = w.algebra();
    const std::size_t n = a.dim();
    const CVector& eps = w.counit();
    const CMatrix& s = w.antipode();
    const CMatrix e = w.e();
    const CMatrix et = target_counital_map(w.algebra_ptr(), w.coproduct_matrix(), s);
    const CMatrix es = source_counital_map(w.algebra_ptr(), w.coproduct_matrix(), s);
    const SubalgebraBasis nt = target_subalgebra(w.algebra_ptr(), w.coproduct_matrix(), tol);
    VerificationReport rep(tol.abs_tol);
    auto ev = [&](const CVector& x) -> cplx { return (eps.transpose() * x)(0); };

    rep.add("eps_one_equals_dim_nt", std::abs(ev(a.unit()) - cplx(static_cast<double>(nt.dim()))),
            "eps(1) = dim N_t = " + std::to_string(nt.dim()));

    std::mt19937_64 rng(99);
    double pos = 0.0, bimod = 0.0;
    for (int t = 0; t < 100; ++t) {
        CVector x = detail::random_vector(rng, n), y = detail::random_vector(rng, n);
        cplx lhs = ev(a.multiply(a.star(et * x), et * y));
        cplx rhs = ev(a.multiply(a.star(x), y));
        pos = std::max(pos, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
        CVector m1 = nt.basis() * detail::random_vector(rng, nt.dim());
        CVector m2 = nt.basis() * detail::random_vector(rng, nt.dim());
        CVector l = et * a.multiply(a.multiply(m1, s * m2), x);
        CVector r = a.multiply(a.multiply(m1, et * x), m2);
        bimod = std::max(bimod, max_abs(CVector(l - r)) / std::max(1.0, max_abs(r)));
    }
    rep.add("positivity_identity", pos, "eps(eps_t(x)^* eps_t(y)) = eps(x^* y), relative");
    rep.add("bimodule_map", bimod, "eps_t(n S(n') x) = n eps_t(x) n', relative");

    HaarProjection hp = haar_projection(w, tol);
    const CVector& p = hp.p.coeffs;
    const CMatrix rp = a.right_mult(p);
    const std::size_t dim_mp = numerical_rank(rp, tol);
    rep.add_flag("support.dimension", dim_mp == nt.dim(), 0.0,
                 "dim Mp = " + std::to_string(dim_mp) + ", dim N_t = " + std::to_string(nt.dim()));
    rep.add("support.target", max_abs(CMatrix(rp - rp * et)), "x p = eps_t(x) p");
    rep.add("support.source", max_abs(CMatrix(a.left_mult(p) - a.left_mult(p) * es)),
            "p x = p eps_s(x)");

    double nondeg = INFINITY;
    for (int t = 0; t < 20; ++t) {
        CVector x = detail::random_vector(rng, n);
        const double nx = x.norm();
        nondeg = std::min(nondeg, CMatrix(e * a.right_mult(x).transpose()).norm() / nx);
        nondeg = std::min(nondeg, CMatrix(a.right_mult(x) * e).norm() / nx);
    }
    rep.add_flag("positivity.nondegenerate", nondeg > tol.abs_tol, nondeg,
                 "min |e(1 x x)|/|x| and |e(x x 1)|/|x|");

    // R*_alpha y = (id x alpha)Delta(y)
    const CMatrix& d = w.coproduct_matrix();
    auto rstar = [&](const CVector& alpha) {
        CMatrix m(n, n);
        for (std::size_t y = 0; y < n; ++y)
            m.col(y) = unvec(d.col(y), n) * alpha;
        return m;
    };
    double rl_a = 0.0, rl_b = 0.0;
    for (int t = 0; t < 5; ++t) {
        CVector x = detail::random_vector(rng, n), alpha = detail::random_vector(rng, n);
        CMatrix lhs = rstar(alpha) * a.left_mult(x);
        // alpha_(1)(x_(2)) L_{x_(1)} R*_{alpha_(2)} = sum_b L_{C(:,b)} R*_{beta_b},
        // beta_b(v) = alpha(e_b v)
        const CMatrix c = w.delta(x);
        const CMatrix f = detail::product_form(a, alpha);
        CMatrix rhs = CMatrix::Zero(n, n);
        for (std::size_t b = 0; b < n; ++b) {
            if (c.col(b).isZero(0.0))
                continue;
            rhs += a.left_mult(c.col(b)) * rstar(f.row(b).transpose());
        }
        rl_a = std::max(rl_a, max_abs(CMatrix(lhs - rhs)) / std::max(1.0, max_abs(lhs)));
        CMatrix l2 = rstar(et.transpose() * alpha);
        CMatrix r2 = a.left_mult(e * alpha);
        rl_b = std::max(rl_b, max_abs(CMatrix(l2 - r2)) / std::max(1.0, max_abs(r2)));
    }
    rep.add("rl.product", rl_a, "R*_a L_x = a_(1)(x_(2)) L_{x_(1)} R*_{a_(2)}, relative");
    rep.add("rl.counital", rl_b, "R*_{eps^_t(a)} = L_{(id x a)e}, relative");
    return rep;
}

Triviality triviality(const WeakKac& w)
{
    const FdAlgebra& a = w.algebra();
    const std::size_t n = a.dim();
    Triviality t;
    for (std::size_t x = 0; x < n; ++x) {
        CMatrix l = a.left_mult(a.basis(x)), r = a.right_mult(a.basis(x));
        t.commutator = std::max(t.commutator, max_abs(CMatrix(l - r)));
        CMatrix c = w.delta_basis(x);
        t.cocommutator = std::max(t.cocommutator, max_abs(CMatrix(c - c.transpose())));
    }
    const CVector u = a.unit();
    t.unit_defect = max_abs(CMatrix(w.e() - u * u.transpose()));
    return t;
}

} // namespace wka
