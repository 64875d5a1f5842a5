#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "internal.hpp"
#include "wka/duality.hpp"
#include "wka/weak_kac.hpp"

namespace wka {

namespace {

// Rows phi_kl = 0 (k != l) and phi_kk = phi_11 on every block.
CMatrix trace_constraints(const FdAlgebra& a)
{
    const Eigen::Index n = a.dim();
    std::vector<CVector> rows;
    for (std::size_t i = 0; i < a.num_blocks(); ++i) {
        const std::size_t d = a.block_size(i);
        for (std::size_t k = 0; k < d; ++k)
            for (std::size_t l = 0; l < d; ++l) {
                CVector r = CVector::Zero(n);
                if (k != l) {
                    r(a.index(i, k, l)) = 1.0;
                } else if (k > 0) {
                    r(a.index(i, k, k)) = 1.0;
                    r(a.index(i, 0, 0)) = -1.0;
                } else {
                    continue;
                }
                rows.push_back(r);
            }
    }
    CMatrix m(rows.size(), n);
    for (std::size_t i = 0; i < rows.size(); ++i)
        m.row(i) = rows[i].transpose();
    return m;
}

// Haar-trace conditions without normalization: (id x phi)Delta = (eps_t x phi)Delta,
// phi o S = phi, phi tracial.
std::vector<LinearConstraint> haar_trace_equations(const WeakKac& w)
{
    const FdAlgebra& a = w.algebra();
    const Eigen::Index n = a.dim();
    const CMatrix et = target_counital_map(w.algebra_ptr(), w.coproduct_matrix(), w.antipode());
    CMatrix inv(n * n, n);
    for (Eigen::Index x = 0; x < n; ++x) {
        CMatrix c = w.delta_basis(x);
        inv.middleRows(x * n, n) = c - et * c;
    }
    std::vector<LinearConstraint> cons;
    cons.push_back({inv, CVector::Zero(n * n)});
    cons.push_back({CMatrix(w.antipode().transpose() - CMatrix::Identity(n, n)), CVector::Zero(n)});
    CMatrix tr = trace_constraints(a);
    if (tr.rows() > 0)
        cons.push_back({tr, CVector::Zero(tr.rows())});
    return cons;
}

double max_col_norm_scale(const CMatrix& m)
{
    return std::max(1.0, max_abs(m));
}

} // namespace

CVector support_projection(const FdAlgebra& a, const CVector& f, const Tolerance& tol)
{
    CVector p = CVector::Zero(a.dim());
    double scale = 0.0;
    std::vector<CMatrix> dens;
    for (std::size_t i = 0; i < a.num_blocks(); ++i) {
        const std::size_t d = a.block_size(i);
        CMatrix rho(d, d);
        for (std::size_t k = 0; k < d; ++k)
            for (std::size_t l = 0; l < d; ++l)
                rho(l, k) = f(a.index(i, k, l));
        rho = (rho + rho.adjoint()).eval() / 2.0;
        scale = std::max(scale, max_abs(rho));
        dens.push_back(rho);
    }
    for (std::size_t i = 0; i < a.num_blocks(); ++i) {
        const std::size_t d = a.block_size(i);
        Eigen::SelfAdjointEigenSolver<CMatrix> es(dens[i]);
        CMatrix proj = CMatrix::Zero(d, d);
        for (std::size_t k = 0; k < d; ++k)
            if (es.eigenvalues()(k) > std::max(1e-6, 1e3 * tol.abs_tol) * scale)
                proj += es.eigenvectors().col(k) * es.eigenvectors().col(k).adjoint();
        for (std::size_t k = 0; k < d; ++k)
            for (std::size_t l = 0; l < d; ++l)
                p(a.index(i, k, l)) = proj(k, l);
    }
    return p;
}

HaarProjection haar_projection(const WeakKac& w, const Tolerance& tol)
{
    const FdAlgebra& a = w.algebra();
    const Eigen::Index n = a.dim();
    const CMatrix et = target_counital_map(w.algebra_ptr(), w.coproduct_matrix(), w.antipode());
    const CMatrix es = source_counital_map(w.algebra_ptr(), w.coproduct_matrix(), w.antipode());
    const CVector u = a.unit();

    // x Lambda = eps_t(x) Lambda, S(Lambda) = Lambda, eps_t(Lambda) = 1
    CMatrix m(n * n, n);
    for (Eigen::Index x = 0; x < n; ++x)
        m.middleRows(x * n, n) = a.left_mult(a.basis(x)) - a.left_mult(et.col(x));
    std::vector<LinearConstraint> cons;
    cons.push_back({m, CVector::Zero(n * n)});
    cons.push_back({CMatrix(w.antipode() - CMatrix::Identity(n, n)), CVector::Zero(n)});
    cons.push_back({et, u});
    AffineSpace sol;
    try {
        sol = solve_affine_space(cons, tol);
    } catch (const Inconsistent& ex) {
        throw NoSolution(std::string("Haar projection equations: ") + ex.what());
    }
    if (!sol.unique())
        throw NonUnique("Haar projection equations have a " + std::to_string(sol.dimension())
                        + "-dimensional solution space");

    HaarProjection out{AlgElement(w.algebra_ptr(), sol.particular), CVector(), VerificationReport(tol.abs_tol)};
    auto& rep = out.report;
    const CVector& p = sol.particular;
    rep.add("solve_residual", sol.residual);
    rep.add_flag("unique", true, 0.0, "null space dimension 0");
    rep.add("projection", max_abs(CVector(a.multiply(p, p) - p)), "p^2 = p");
    rep.add("self_adjoint", max_abs(CVector(a.star(p) - p)), "p^* = p");

    // independent route: support of eps from its density matrices
    out.support = support_projection(a, w.counit(), tol);
    rep.add("two_oracle", max_abs(CVector(out.support - p)), "affine solve vs support of eps");
    const CVector& eps = w.counit();
    rep.add("support.right", max_abs(CVector(a.right_mult(p).transpose() * eps - eps)), "eps(xp) = eps(x)");
    rep.add("support.left", max_abs(CVector(a.left_mult(p).transpose() * eps - eps)), "eps(px) = eps(x)");

    // I_s = {y : yx = y eps_s(x)}, I_t = {y : xy = eps_t(x) y}; I_s & I_t = pMp
    CMatrix ideals(2 * n * n, n);
    for (Eigen::Index x = 0; x < n; ++x) {
        ideals.middleRows(x * n, n) = a.right_mult(a.basis(x)) - a.right_mult(es.col(x));
        ideals.middleRows(n * n + x * n, n) = m.middleRows(x * n, n);
    }
    CMatrix inter = null_space(ideals, tol);
    CMatrix pmp = orthonormal_span(CMatrix(a.left_mult(p) * a.right_mult(p)), tol);
    const bool same_dim = inter.cols() == pmp.cols();
    rep.add_flag("ideals.dimension", same_dim, 0.0,
                 "dim I_s&I_t = " + std::to_string(inter.cols()) + ", dim pMp = "
                     + std::to_string(pmp.cols()));
    rep.add("ideals.span",
            same_dim ? max_abs(CMatrix(inter * inter.adjoint() - pmp * pmp.adjoint())) : INFINITY,
            "I_s & I_t = pMp");
    return out;
}

HaarTrace normalized_haar_trace(const WeakKac& w, const Tolerance& tol, bool cross_check)
{
    const FdAlgebra& a = w.algebra();
    const Eigen::Index n = a.dim();
    auto cons = haar_trace_equations(w);
    cons.push_back({w.e(), a.unit()}); // (id x phi)e = 1
    AffineSpace sol;
    try {
        sol = solve_affine_space(cons, tol);
    } catch (const Inconsistent& ex) {
        throw NoSolution(std::string("normalized Haar trace equations: ") + ex.what());
    }
    if (!sol.unique())
        throw NonUnique("normalized Haar trace equations have a "
                        + std::to_string(sol.dimension()) + "-dimensional solution space");
    HaarTrace out{Functional(w.algebra_ptr(), sol.particular), VerificationReport(tol.abs_tol)};
    auto& rep = out.report;
    const CVector& phi = sol.particular;
    rep.add("solve_residual", sol.residual);
    rep.add_flag("unique", true, 0.0, "null space dimension 0");
    double wmin = INFINITY;
    for (std::size_t i = 0; i < a.num_blocks(); ++i)
        wmin = std::min(wmin, phi(a.index(i, 0, 0)).real());
    rep.add_flag("faithful", wmin > tol.abs_tol, wmin, "min block weight");
    double imag = 0.0;
    for (Eigen::Index x = 0; x < n; ++x)
        imag = std::max(imag, std::abs(phi(a.star_index(x)) - std::conj(phi(x))));
    rep.add("hermitian", imag, "phi(x^*) = conj phi(x)");
    if (cross_check) {
        DualResult d = dual_with_pairing(w, tol);
        HaarProjection hp = haar_projection(d.dual, tol);
        rep.add("dual_haar_projection", max_abs(CVector(d.pairing * hp.p.coeffs - phi)),
                "phi_eps = p_eps of the dual under the pairing");
    }
    return out;
}

HaarCone haar_trace_cone(const WeakKac& w, const Tolerance& tol)
{
    const FdAlgebra& a = w.algebra();
    const Eigen::Index n = a.dim();
    auto stack = [&](const std::vector<LinearConstraint>& cons) {
        Eigen::Index rows = 0;
        for (const auto& c : cons)
            rows += c.matrix.rows();
        CMatrix m(rows, n);
        Eigen::Index at = 0;
        for (const auto& c : cons) {
            m.middleRows(at, c.matrix.rows()) = c.matrix;
            at += c.matrix.rows();
        }
        return m;
    };
    std::vector<LinearConstraint> cons = haar_trace_equations(w);
    const CMatrix traces = stack(cons);
    const CMatrix tr = trace_constraints(a);
    if (tr.rows() > 0)
        cons.pop_back();
    const CMatrix functionals = stack(cons);

    HaarCone out;
    out.span = null_space(traces, tol);
    const CMatrix fspan = null_space(functionals, tol);
    out.report = VerificationReport(tol.abs_tol);
    auto& rep = out.report;

    DualResult d = dual_with_pairing(w, tol);
    const FdAlgebra& da = d.dual.algebra();
    CounitalRepresentation rho = counital_representation(d.dual, tol);
    HaarProjection hp = haar_projection(d.dual, tol);
    const std::size_t k = rho.support.size();
    CMatrix q(n, k);
    for (std::size_t i = 0; i < k; ++i) {
        q.col(i) = d.pairing * da.compress(hp.p.coeffs, rho.support[i]);
        out.functionals.push_back(q.col(i));
    }
    const double qscale = std::max(1.0, max_abs(q));
    rep.add_flag("functionals.dimension", static_cast<std::size_t>(fspan.cols()) == k, 0.0,
                 "Haar functionals " + std::to_string(fspan.cols()) + ", counital blocks of dual "
                     + std::to_string(k));
    rep.add("functionals.in_span", max_abs(CMatrix(q - fspan * (fspan.adjoint() * q))) / qscale,
            "each P_i p_eps of the dual is a Haar functional");

    // tracial combinations sum_i l_i q_i
    const CMatrix lam = tr.rows() > 0 ? null_space(CMatrix(tr * q), tol) : CMatrix::Identity(k, k);
    rep.add_flag("dimension", lam.cols() == out.span.cols(), 0.0,
                 "Haar traces " + std::to_string(out.span.cols()) + ", tracial combinations "
                     + std::to_string(lam.cols()));

    // classes of blocks whose coefficients agree in every tracial combination
    std::vector<std::size_t> cls(k, k);
    std::size_t ncls = 0;
    for (std::size_t i = 0; i < k; ++i) {
        if (cls[i] != k)
            continue;
        cls[i] = ncls;
        for (std::size_t j = i + 1; j < k; ++j)
            if (cls[j] == k && max_abs(CVector((lam.row(i) - lam.row(j)).transpose())) <= 1e-6)
                cls[j] = ncls;
        ++ncls;
    }
    rep.add_flag("rays.partition", ncls == static_cast<std::size_t>(lam.cols()), 0.0,
                 std::to_string(ncls) + " classes for a " + std::to_string(lam.cols())
                     + "-dimensional cone");
    CVector total = CVector::Zero(n);
    double in_span = 0.0, positivity = 0.0;
    for (std::size_t c = 0; c < ncls; ++c) {
        CVector ray = CVector::Zero(n);
        for (std::size_t i = 0; i < k; ++i)
            if (cls[i] == c)
                ray += q.col(i);
        out.rays.push_back(ray);
        total += ray;
        in_span = std::max(in_span, max_abs(CVector(ray - out.span * (out.span.adjoint() * ray))));
        // a tracial functional is positive iff every block weight is >= 0
        for (std::size_t b = 0; b < a.num_blocks(); ++b)
            positivity = std::max(positivity, std::max(0.0, -ray(a.index(b, 0, 0)).real()));
    }
    rep.add("rays.in_span", in_span, "each ray is a Haar trace");
    rep.add("rays.positive", positivity, "rays are positive functionals");
    HaarTrace phi = normalized_haar_trace(w, tol, false);
    rep.add("rays.sum", max_abs(CVector(total - phi.phi.coeffs)), "sum of rays = phi_eps");
    return out;
}

HaarExpectations haar_conditional_expectations(const WeakKac& w, const CVector& phi,
                                               const Tolerance& tol)
{
    const FdAlgebra& a = w.algebra();
    const AlgebraPtr& ap = w.algebra_ptr();
    const std::size_t n = a.dim();
    const CMatrix& s = w.antipode();
    const CMatrix e = w.e();
    const auto c = detail::coproduct_slices(w.coproduct_matrix(), n);
    HaarExpectations out;
    out.et.resize(n, n);
    out.es.resize(n, n);
    out.eo.resize(n, n);
    CMatrix et_alt(n, n);
    for (std::size_t x = 0; x < n; ++x) {
        const CMatrix lxt = a.left_mult(a.basis(x)).transpose();
        out.et.col(x) = c[x] * phi;
        et_alt.col(x) = s * e * lxt * phi;
        out.es.col(x) = c[x].transpose() * phi;
        out.eo.col(x) = a.mu(CMatrix(s * e * lxt));
    }
    out.report = VerificationReport(tol.abs_tol);
    auto& rep = out.report;
    rep.add("et.formulas_agree", max_abs(CMatrix(out.et - et_alt)),
            "(id x phi)Delta(x) = (S x phi)((1 x x)e)");

    const SubalgebraBasis nt = target_subalgebra(ap, w.coproduct_matrix(), tol);
    const SubalgebraBasis ns = source_subalgebra(ap, w.coproduct_matrix(), tol);
    const SubalgebraBasis rel = commutant(nt, tol);
    rep.merge(check_conditional_expectation(ap, out.et, nt, phi, tol), "et");
    rep.merge(check_conditional_expectation(ap, out.es, ns, phi, tol), "es");
    rep.merge(check_conditional_expectation(ap, out.eo, rel, phi, tol), "eo");

    double haar_t = 0.0, haar_s = 0.0;
    for (std::size_t x = 0; x < n; ++x) {
        haar_t = std::max(haar_t, max_abs(CMatrix(c[x] * out.et.transpose()
                                                  - unvec(w.coproduct_matrix() * out.et.col(x), n))));
        haar_s = std::max(haar_s, max_abs(CMatrix(out.es * c[x]
                                                  - unvec(w.coproduct_matrix() * out.es.col(x), n))));
    }
    rep.add("et.haar", haar_t, "(id x E_t)Delta = Delta E_t");
    rep.add("es.haar", haar_s, "(E_s x id)Delta = Delta E_s");
    rep.add("antipode_intertwines", max_abs(CMatrix(out.et * s - s * out.es)), "E_t S = S E_s");

    // (E_t x E_t)(Delta(x)(y x z)) = flip (E_t x E_t)((S(y) x x)Delta(z))
    std::mt19937_64 rng(2024);
    double flip = 0.0;
    for (int t = 0; t < 200; ++t) {
        CVector x = detail::random_vector(rng, n);
        CVector y = detail::random_vector(rng, n);
        CVector z = detail::random_vector(rng, n);
        CMatrix dx = w.delta(x), dz = w.delta(z);
        CMatrix lhs = out.et * (a.right_mult(y) * dx * a.right_mult(z).transpose()) * out.et.transpose();
        CMatrix rhs = out.et * (a.left_mult(s * y) * dz * a.left_mult(x).transpose()) * out.et.transpose();
        const double scale = std::max(1.0, max_abs(lhs));
        flip = std::max(flip, max_abs(CMatrix(lhs - rhs.transpose())) / scale);
    }
    rep.add("flip_identity", flip, "200 random triples, relative");

    // e(1 x y)e = e(1 x E(y)) = (1 x E(y))e
    double sandwich = 0.0;
    for (std::size_t y = 0; y < n; ++y) {
        CMatrix lhs = a.tensor_multiply(CMatrix(e * a.right_mult(a.basis(y)).transpose()), e);
        CVector ey = out.eo.col(y);
        sandwich = std::max(sandwich, max_abs(CMatrix(lhs - e * a.right_mult(ey).transpose())));
        sandwich = std::max(sandwich, max_abs(CMatrix(lhs - e * a.left_mult(ey).transpose())));
    }
    rep.add("eo.sandwich", sandwich, "e(1 x y)e = e(1 x E(y)) = (1 x E(y))e");

    HaarCone cone = haar_trace_cone(w, tol);
    double cone_inv = 0.0;
    for (const CVector& ray : cone.rays)
        cone_inv = std::max(cone_inv, max_abs(CVector(out.eo.transpose() * ray - ray)));
    rep.add("eo.cone_invariant", cone_inv, "phi o E = phi for every extremal Haar trace");
    return out;
}

VerificationReport check_generalized_kac(const AlgebraPtr& ap, const CMatrix& delta,
                                         const CMatrix& s, const CVector& phi, const Tolerance& tol)
{
    const FdAlgebra& a = *ap;
    const std::size_t n = a.dim();
    if (static_cast<std::size_t>(phi.size()) != n)
        throw InvalidArgument("functional has wrong length");
    const CMatrix tr = trace_constraints(a);
    const double trace_res = tr.rows() ? max_abs(CVector(tr * phi)) : 0.0;
    if (trace_res > std::max(tol.abs_tol, 1e-12) * max_col_norm_scale(phi.transpose()))
        throw NotTracial("functional is not a trace, residual " + std::to_string(trace_res));
    double wmin = INFINITY;
    for (std::size_t i = 0; i < a.num_blocks(); ++i)
        wmin = std::min(wmin, phi(a.index(i, 0, 0)).real());
    if (!(wmin > tol.abs_tol))
        throw NotFaithful("trace has a block weight " + std::to_string(wmin));

    VerificationReport rep(tol.abs_tol);
    rep.add("tracial", trace_res);
    rep.add_flag("faithful", true, wmin, "min block weight");
    rep.add("phi_antipode", max_abs(CVector(s.transpose() * phi - phi)), "phi o S = phi");

    // (id x phi)[(1 x y)Delta(x)] = S[(id x phi)(Delta(y)(1 x x))]
    const auto c = detail::coproduct_slices(delta, n);
    const CMatrix f = detail::product_form(a, phi); // f(a, b) = phi(e_a e_b)
    std::vector<CMatrix> rhs(n, CMatrix(n, n));     // rhs[x].col(y) = C_y f.col(x)
    for (std::size_t y = 0; y < n; ++y) {
        CMatrix cf = c[y] * f;
        for (std::size_t x = 0; x < n; ++x)
            rhs[x].col(y) = cf.col(x);
    }
    double haar = 0.0;
    for (std::size_t x = 0; x < n; ++x) {
        CMatrix lhs = c[x] * f.transpose(); // column y: C_x f(y, .)
        haar = std::max(haar, max_abs(CMatrix(lhs - s * rhs[x])));
    }
    rep.add("haar_identity", haar, "(id x phi)((1 x y)Delta(x)) = S (id x phi)(Delta(y)(1 x x))");

    // (theta x id)Delta(x) = (theta x S)(e(x x 1)) for the regular trace theta
    const CVector theta = a.regular_trace_coeffs();
    const CMatrix e = unvec(delta * a.unit(), n);
    double reg = 0.0;
    for (std::size_t x = 0; x < n; ++x) {
        CVector lhs = c[x].transpose() * theta;
        CVector r = s * (a.right_mult(a.basis(x)) * e).transpose() * theta;
        reg = std::max(reg, max_abs(CVector(lhs - r)));
    }
    rep.add("regular_trace_identity", reg, "(theta x id)Delta(x) = (theta x S)(e(x x 1))");
    return rep;
}

VerificationReport check_generalized_kac(const WeakKac& w, const CVector& phi, const Tolerance& tol)
{
    VerificationReport rep = check_generalized_kac(w.algebra_ptr(), w.coproduct_matrix(),
                                                   w.antipode(), phi, tol);
    const FdAlgebra& a = w.algebra();
    const std::size_t n = a.dim();
    const CMatrix& s = w.antipode();
    const CVector u = a.unit();
    const CVector theta = a.regular_trace_coeffs();
    HaarProjection hp = haar_projection(w, tol);
    const CMatrix dp = w.delta(hp.p.coeffs);

    rep.add("theta_lemma",
            std::max(max_abs(CVector(dp.transpose() * theta - u)), max_abs(CVector(dp * theta - u))),
            "(theta x id)Delta(p) = (id x theta)Delta(p) = 1");

    CMatrix eval = CMatrix::Zero(n, n);
    for (std::size_t i = 0; i < a.num_blocks(); ++i) {
        const std::size_t d = a.block_size(i);
        for (std::size_t k = 0; k < d; ++k)
            for (std::size_t l = 0; l < d; ++l)
                eval += a.basis(a.index(i, k, l)) * s.col(a.index(i, l, k)).transpose()
                    / static_cast<double>(d);
    }
    rep.add("evaluation", max_abs(CMatrix(dp - eval)),
            "Delta(p) = sum_i 1/d_i sum_kl e_kl x S(e_lk)");
    rep.add("evaluation_flip", max_abs(CMatrix(dp - dp.transpose())), "flip Delta(p) = Delta(p)");

    // R_ij = (P_i x P_j)Delta(p) is a rank-one projection iff j = i*
    const std::size_t k = a.num_blocks();
    std::vector<std::size_t> conj(k, k);
    for (std::size_t i = 0; i < k; ++i) {
        CVector sp = s * a.central_projection(i);
        for (std::size_t j = 0; j < k; ++j)
            if (max_abs(CVector(sp - a.central_projection(j))) <= 1e-6)
                conj[i] = j;
    }
    auto blocks = a.tensor_blocks(dp);
    bool ranks_ok = true;
    double proj_res = 0.0;
    std::string note;
    for (std::size_t i = 0; i < k; ++i) {
        if (conj[i] == k) {
            ranks_ok = false;
            note = "S does not permute the central projections";
            continue;
        }
        for (std::size_t j = 0; j < k; ++j) {
            const CMatrix& r = blocks[i * k + j];
            const std::size_t rank = r.size() == 0 ? 0 : numerical_rank(r, Tolerance(1e-8));
            const std::size_t want = (j == conj[i]) ? 1 : 0;
            if (rank != want) {
                ranks_ok = false;
                note = "block (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") rank "
                    + std::to_string(rank);
            }
            if (r.size() != 0)
                proj_res = std::max(proj_res, max_abs(CMatrix(r * r - r)));
        }
    }
    rep.add_flag("rank_one_blocks", ranks_ok, 0.0, note.empty() ? "rank R_ij = delta_{i j*}" : note);
    rep.add("rank_one_projection", proj_res, "R_ij^2 = R_ij");
    return rep;
}

} // namespace wka
