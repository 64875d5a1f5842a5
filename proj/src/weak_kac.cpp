#include "wka/weak_kac.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "internal.hpp"

namespace wka {

CVector vec(const CMatrix& c)
{
    const Eigen::Index n = c.rows();
    CVector v(n * c.cols());
    for (Eigen::Index a = 0; a < n; ++a)
        for (Eigen::Index b = 0; b < c.cols(); ++b)
            v(a * c.cols() + b) = c(a, b);
    return v;
}

CMatrix unvec(const CVector& v, std::size_t n)
{
    if (static_cast<std::size_t>(v.size()) != n * n)
        throw InvalidArgument("unvec: length is not n^2");
    CMatrix c(n, n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            c(a, b) = v(a * n + b);
    return c;
}

WeakKac::WeakKac(AlgebraPtr algebra, CMatrix coproduct, CMatrix antipode, CVector counit)
    : algebra_(std::move(algebra)), delta_(std::move(coproduct)), s_(std::move(antipode)),
      eps_(std::move(counit))
{
    if (!algebra_)
        throw InvalidArgument("weak Kac algebra without algebra");
    const Eigen::Index n = algebra_->dim();
    if (delta_.rows() != n * n || delta_.cols() != n)
        throw InvalidArgument("coproduct matrix must be dim^2 x dim");
    if (s_.rows() != n || s_.cols() != n)
        throw InvalidArgument("antipode matrix must be dim x dim");
    if (eps_.size() != n)
        throw InvalidArgument("counit must have dim coefficients");
}

Tensor3 WeakKac::coproduct() const
{
    return Tensor3::from_matrix(delta_, dim(), dim());
}

void for_tuples(const std::vector<std::size_t>& sizes,
                const std::function<void(const std::vector<std::size_t>&)>& fn, unsigned seed)
{
    double total = 1.0;
    for (std::size_t s : sizes) {
        if (s == 0)
            return;
        total *= static_cast<double>(s);
    }
    std::vector<std::size_t> idx(sizes.size(), 0);
    if (total <= 1e5) {
        while (true) {
            fn(idx);
            std::size_t k = sizes.size();
            while (k > 0) {
                --k;
                if (++idx[k] < sizes[k])
                    break;
                idx[k] = 0;
                if (k == 0)
                    return;
            }
            if (sizes.empty())
                return;
        }
    }
    std::mt19937_64 rng(seed);
    for (int t = 0; t < 200; ++t) {
        for (std::size_t k = 0; k < sizes.size(); ++k)
            idx[k] = std::uniform_int_distribution<std::size_t>(0, sizes[k] - 1)(rng);
        fn(idx);
    }
}

namespace detail {

std::vector<CMatrix> coproduct_slices(const CMatrix& delta, std::size_t n)
{
    std::vector<CMatrix> c(n);
    for (std::size_t x = 0; x < n; ++x)
        c[x] = unvec(delta.col(x), n);
    return c;
}

double block_diff(const std::vector<CMatrix>& a, const std::vector<CMatrix>& b)
{
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const bool ea = a[i].size() == 0, eb = b[i].size() == 0;
        if (ea && eb)
            continue;
        if (ea)
            worst = std::max(worst, max_abs(b[i]));
        else if (eb)
            worst = std::max(worst, max_abs(a[i]));
        else
            worst = std::max(worst, max_abs(CMatrix(a[i] - b[i])));
    }
    return worst;
}

CMatrix product_form(const FdAlgebra& a, const CVector& f)
{
    const Eigen::Index n = a.dim();
    CMatrix g = CMatrix::Zero(n, n);
    for (const auto& m : a.mult_entries())
        g(m.a, m.b) = f(m.r);
    return g;
}

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

SubalgebraBasis solution_subalgebra(const AlgebraPtr& a, const CMatrix& m, const Tolerance& tol)
{
    return SubalgebraBasis(a, null_space(m, tol), tol);
}

Tolerance rank_tol(const Tolerance& tol)
{
    return tol;
}

void add_bialgebra_checks(VerificationReport& rep, const FdAlgebra& a, const CMatrix& delta,
                          const std::vector<CMatrix>& c, const CMatrix& s, const Tolerance& tol)
{
    const std::size_t n = a.dim();
    const Eigen::Index nn = static_cast<Eigen::Index>(n);

    // (Delta (x) id) Delta = (id (x) Delta) Delta
    double coassoc = 0.0;
    for (std::size_t x = 0; x < n; ++x) {
        CMatrix lhs = delta * c[x];                 // [(p,q), r]
        CMatrix rhs = c[x] * delta.transpose();     // [p, (q,r)]
        for (Eigen::Index p = 0; p < nn; ++p)
            for (Eigen::Index q = 0; q < nn; ++q)
                for (Eigen::Index r = 0; r < nn; ++r)
                    coassoc = std::max(coassoc, std::abs(lhs(p * nn + q, r) - rhs(p, q * nn + r)));
    }
    rep.add("coproduct.coassociative", coassoc, "(Delta x id)Delta = (id x Delta)Delta");

    // Delta(e_a e_b) = Delta(e_a) Delta(e_b) over all basis pairs
    std::vector<std::vector<CMatrix>> blocks(n);
    for (std::size_t x = 0; x < n; ++x)
        blocks[x] = a.tensor_blocks(c[x]);
    std::vector<std::vector<long>> prod(n, std::vector<long>(n, -1));
    for (const auto& m : a.mult_entries())
        prod[m.a][m.b] = static_cast<long>(m.r);
    const std::vector<CMatrix> zero(a.num_blocks() * a.num_blocks());
    double mult = 0.0;
    for_tuples({n, n}, [&](const std::vector<std::size_t>& t) {
        auto p = a.tensor_blocks_multiply(blocks[t[0]], blocks[t[1]]);
        const long r = prod[t[0]][t[1]];
        mult = std::max(mult, detail::block_diff(p, r < 0 ? zero : blocks[r]));
    });
    rep.add("coproduct.multiplicative", mult, "Delta(xy) = Delta(x)Delta(y)");

    double star_res = 0.0;
    for (std::size_t x = 0; x < n; ++x)
        star_res = std::max(star_res,
                            max_abs(CMatrix(c[a.star_index(x)] - a.tensor_star(c[x]))));
    rep.add("coproduct.star", star_res, "Delta(x^*) = Delta(x)^*");

    {
        Eigen::JacobiSVD<CMatrix> svd(delta);
        const RVector& sv = svd.singularValues();
        const std::size_t r = numerical_rank(delta, tol);
        const double ratio = sv.size() && sv(0) > 0.0 ? sv(sv.size() - 1) / sv(0) : 0.0;
        rep.add_flag("coproduct.injective", r == n, ratio,
                     "rank " + std::to_string(r) + " of " + std::to_string(n));
    }

    // S(x y) = S(y) S(x): S L_x = R_{S x} S
    double anti = 0.0;
    for (std::size_t x = 0; x < n; ++x) {
        CMatrix lhs = s * a.left_mult(a.basis(x));
        CMatrix rhs = a.right_mult(s.col(x)) * s;
        anti = std::max(anti, max_abs(CMatrix(lhs - rhs)));
    }
    rep.add("antipode.antimultiplicative", anti, "S(xy) = S(y)S(x)");
    rep.add("antipode.involutive", max_abs(CMatrix(s * s - CMatrix::Identity(nn, nn))), "S^2 = id");
    rep.add("antipode.unital", max_abs(CVector(s * a.unit() - a.unit())), "S(1) = 1");
    double sstar = 0.0;
    for (std::size_t x = 0; x < n; ++x)
        sstar = std::max(sstar, max_abs(CVector(s.col(a.star_index(x)) - a.star(s.col(x)))));
    rep.add("antipode.star", sstar, "S(x^*) = S(x)^*");
    double scop = 0.0;
    for (std::size_t x = 0; x < n; ++x) {
        CMatrix lhs = s * c[x] * s.transpose();
        CMatrix rhs = unvec(delta * s.col(x), n).transpose();
        scop = std::max(scop, max_abs(CMatrix(lhs - rhs)));
    }
    rep.add("antipode.coproduct", scop, "(S x S)Delta = flip Delta S");
}

} // namespace detail

CMatrix target_counital_map(const AlgebraPtr& ap, const CMatrix& delta, const CMatrix& s)
{
    const std::size_t n = ap->dim();
    CMatrix et(n, n);
    for (std::size_t x = 0; x < n; ++x)
        et.col(x) = ap->mu(unvec(delta.col(x), n) * s.transpose());
    return et;
}

CMatrix source_counital_map(const AlgebraPtr& ap, const CMatrix& delta, const CMatrix& s)
{
    const std::size_t n = ap->dim();
    CMatrix es(n, n);
    for (std::size_t x = 0; x < n; ++x)
        es.col(x) = ap->mu(s * unvec(delta.col(x), n));
    return es;
}

VerificationReport verify_weak_kac(const WeakKac& w, const Tolerance& tol)
{
    VerificationReport rep(tol.abs_tol);
    const FdAlgebra& a = w.algebra();
    const std::size_t n = a.dim();
    const CMatrix& s = w.antipode();
    const CVector& eps = w.counit();
    const auto c = detail::coproduct_slices(w.coproduct_matrix(), n);

    detail::add_bialgebra_checks(rep, a, w.coproduct_matrix(), c, s, tol);

    // counit property
    double left = 0.0, right = 0.0;
    for (std::size_t x = 0; x < n; ++x) {
        left = std::max(left, max_abs(CVector(c[x].transpose() * eps - a.basis(x))));
        right = std::max(right, max_abs(CVector(c[x] * eps - a.basis(x))));
    }
    rep.add("counit.left", left, "(eps x id)Delta = id");
    rep.add("counit.right", right, "(id x eps)Delta = id");

    // axiom 1
    double eps_star = 0.0;
    for (std::size_t x = 0; x < n; ++x)
        eps_star = std::max(eps_star, std::abs(eps(a.star_index(x)) - std::conj(eps(x))));
    rep.add("axiom1.antipode", max_abs(CVector(s.transpose() * eps - eps)), "eps o S = eps");
    rep.add("axiom1.star", eps_star, "eps(x^*) = conj eps(x)");

    const CMatrix e = w.e();
    const CMatrix g = detail::product_form(a, eps);
    const CMatrix et = target_counital_map(w.algebra_ptr(), w.coproduct_matrix(), s);
    const CMatrix es = source_counital_map(w.algebra_ptr(), w.coproduct_matrix(), s);

    std::vector<CMatrix> lt(n), rt(n);
    for (std::size_t x = 0; x < n; ++x) {
        lt[x] = a.left_mult(a.basis(x)).transpose();
        rt[x] = a.right_mult(a.basis(x)).transpose();
    }

    // axiom 2: (eps x eps)((x (x) 1) e (1 (x) y)) = eps(xy)
    const double ax2 = max_abs(CMatrix(g * e * g - g));
    rep.add("axiom2", ax2, "(eps x eps)((x x 1)e(1 x y)) = eps(xy)");
    // axiom 3: (eps_s x id)Delta(x) = (1 (x) x) e
    double ax3 = 0.0;
    for (std::size_t x = 0; x < n; ++x)
        ax3 = std::max(ax3, max_abs(CMatrix(es * c[x] - e * lt[x])));
    rep.add("axiom3", ax3, "(eps_s x id)Delta(x) = (1 x x)e");

    double a2 = 0.0, a3 = 0.0, a2p = 0.0, a3p = 0.0, a3pp = 0.0;
    const CMatrix ge = g * e;
    const CMatrix eg = e * g;
    const CMatrix egt = e * g.transpose();
    for (std::size_t x = 0; x < n; ++x) {
        a2 = std::max(a2, max_abs(CMatrix(ge * rt[x] - g * c[x])));
        a3 = std::max(a3, max_abs(CMatrix(eg * c[x] - e * rt[x])));
        a2p = std::max(a2p, max_abs(CMatrix(lt[x].transpose() * e.transpose() * g
                                            - c[x].transpose() * g)));
        a3p = std::max(a3p, max_abs(CMatrix(egt * c[x] - e * lt[x])));
        a3pp = std::max(a3pp, max_abs(CMatrix(c[x] * et.transpose()
                                              - rt[x].transpose() * e)));
    }
    rep.add("A2", a2, "(eps x id)((x x 1)e(1 x y)) = (eps x id)((x x 1)Delta(y))");
    rep.add("A3", a3, "(id x eps x id)((e x 1)(1 x Delta(x))) = e(1 x x)");
    rep.add("A4", max_abs(CMatrix(es - e * g.transpose())), "eps_s(x) = (id x eps)((1 x x)e)");
    rep.add("A2'", a2p, "(eps x id)(Delta(x)(y x 1)) = x (eps x id)(e(y x 1))");
    rep.add("A3'", a3p, "(id x eps x id)((1 x Delta(x))(e x 1)) = (1 x x)e");
    rep.add("A3''", a3pp, "(id x eps_t)Delta(x) = e(x x 1)");
    rep.add("A3*", max_abs(CMatrix(e * g * e - e)), "(id x eps x id)((e x 1)(1 x e)) = e");
    rep.add("A4'", max_abs(CMatrix(et - e.transpose() * g)), "eps_t(x) = (eps x id)(e(x x 1))");

    const bool lhs = rep.at("axiom2").pass && rep.at("axiom3").pass;
    const bool rhs = rep.at("A2").pass && rep.at("A3").pass && rep.at("A4").pass;
    rep.add_flag("axioms.cross_consistency", lhs == rhs, 0.0,
                 std::string("2)&3) ") + (lhs ? "hold" : "fail") + ", A2&A3&A4 "
                     + (rhs ? "hold" : "fail"));
    return rep;
}

CounitalMaps counital_maps(const WeakKac& w, const Tolerance& tol)
{
    CounitalMaps out;
    out.report = VerificationReport(tol.abs_tol);
    const FdAlgebra& a = w.algebra();
    const CVector u = a.unit();
    out.target = target_counital_map(w.algebra_ptr(), w.coproduct_matrix(), w.antipode());
    out.source = source_counital_map(w.algebra_ptr(), w.coproduct_matrix(), w.antipode());
    const SubalgebraBasis nt = target_subalgebra(w.algebra_ptr(), w.coproduct_matrix(), tol);
    const SubalgebraBasis ns = source_subalgebra(w.algebra_ptr(), w.coproduct_matrix(), tol);
    auto& r = out.report;
    r.add("target.unital", max_abs(CVector(out.target * u - u)));
    r.add("source.unital", max_abs(CVector(out.source * u - u)));
    r.add("target.idempotent", max_abs(CMatrix(out.target * out.target - out.target)));
    r.add("source.idempotent", max_abs(CMatrix(out.source * out.source - out.source)));
    r.add("target.range", max_abs(CMatrix(out.target - nt.projector() * out.target)));
    r.add("source.range", max_abs(CMatrix(out.source - ns.projector() * out.source)));
    r.add("target.onto", max_abs(CMatrix(out.target * nt.basis() - nt.basis())));
    r.add("source.onto", max_abs(CMatrix(out.source * ns.basis() - ns.basis())));
    r.add("antipode_intertwines",
          max_abs(CMatrix(w.antipode() * out.target - out.source * w.antipode())),
          "S eps_t = eps_s S");
    return out;
}

SubalgebraBasis source_subalgebra(const AlgebraPtr& ap, const CMatrix& delta, const Tolerance& tol)
{
    const FdAlgebra& a = *ap;
    const std::size_t n = a.dim();
    const CMatrix e = unvec(delta * a.unit(), n);
    const Eigen::Index nn = static_cast<Eigen::Index>(n);
    CMatrix m(2 * nn * nn, nn);
    for (std::size_t x = 0; x < n; ++x) {
        // Delta(x) = e(1 (x) x) = (1 (x) x)e
        CVector ex = a.basis(x);
        CVector r1 = vec(CMatrix(e * a.right_mult(ex).transpose()));
        CVector r2 = vec(CMatrix(e * a.left_mult(ex).transpose()));
        m.col(x).head(nn * nn) = delta.col(x) - r1;
        m.col(x).tail(nn * nn) = delta.col(x) - r2;
    }
    return detail::solution_subalgebra(ap, m, detail::rank_tol(tol));
}

SubalgebraBasis target_subalgebra(const AlgebraPtr& ap, const CMatrix& delta, const Tolerance& tol)
{
    const FdAlgebra& a = *ap;
    const std::size_t n = a.dim();
    const CMatrix e = unvec(delta * a.unit(), n);
    const Eigen::Index nn = static_cast<Eigen::Index>(n);
    CMatrix m(2 * nn * nn, nn);
    for (std::size_t x = 0; x < n; ++x) {
        // Delta(x) = e(x (x) 1) = (x (x) 1)e
        CVector ex = a.basis(x);
        CVector r1 = vec(CMatrix(a.right_mult(ex) * e));
        CVector r2 = vec(CMatrix(a.left_mult(ex) * e));
        m.col(x).head(nn * nn) = delta.col(x) - r1;
        m.col(x).tail(nn * nn) = delta.col(x) - r2;
    }
    return detail::solution_subalgebra(ap, m, detail::rank_tol(tol));
}

CartanPair cartan_subalgebras(const WeakKac& w, const Tolerance& tol)
{
    const FdAlgebra& a = w.algebra();
    const AlgebraPtr& ap = w.algebra_ptr();
    const std::size_t n = a.dim();
    const CMatrix e = w.e();
    const CMatrix& s = w.antipode();
    const CVector& eps = w.counit();

    RankFactorization rf = rank_factorization(e, tol, [&](const CVector& v) { return a.star(v); });
    const std::size_t r = rf.rank();
    CMatrix xs(n, r), ys(n, r);
    for (std::size_t i = 0; i < r; ++i) {
        xs.col(i) = rf.left[i];
        ys.col(i) = rf.right[i];
    }
    VerificationReport rep(tol.abs_tol);

    // defining relations
    double ns_def = 0.0, nt_def = 0.0;
    for (std::size_t i = 0; i < r; ++i) {
        const CVector x = xs.col(i), y = ys.col(i);
        const double sx = std::max(1.0, max_abs(x)), sy = std::max(1.0, max_abs(y));
        CMatrix dx = w.delta(x);
        ns_def = std::max(ns_def, max_abs(CMatrix(dx - e * a.right_mult(x).transpose())) / sx);
        ns_def = std::max(ns_def, max_abs(CMatrix(dx - e * a.left_mult(x).transpose())) / sx);
        CMatrix dy = w.delta(y);
        nt_def = std::max(nt_def, max_abs(CMatrix(dy - a.right_mult(y) * e)) / sy);
        nt_def = std::max(nt_def, max_abs(CMatrix(dy - a.left_mult(y) * e)) / sy);
    }
    const double mismatch_tol = std::max(1e-7, 1e2 * tol.abs_tol);
    if (ns_def > mismatch_tol)
        throw CartanMismatch("span of left factors violates Delta(x) = e(1 x x), residual "
                             + std::to_string(ns_def));
    if (nt_def > mismatch_tol)
        throw CartanMismatch("span of right factors violates Delta(y) = e(y x 1), residual "
                             + std::to_string(nt_def));
    rep.add("ns.defining", ns_def, "Delta(x) = e(1 x x) = (1 x x)e");
    rep.add("nt.defining", nt_def, "Delta(y) = e(y x 1) = (y x 1)e");

    SubalgebraBasis ns(ap, xs, tol), nt(ap, ys, tol);
    rep.add_flag("dims_equal", ns.dim() == nt.dim() && ns.dim() == r, 0.0,
                 "dim N_s = " + std::to_string(ns.dim()) + ", dim N_t = " + std::to_string(nt.dim()));
    rep.add("ns.closed", ns.closure_residual());
    rep.add("nt.closed", nt.closure_residual());
    rep.add("ns.unit", ns.distance(a.unit()));
    rep.add("nt.unit", nt.distance(a.unit()));

    // the equation-defined solution spaces coincide with the factor spans
    SubalgebraBasis ns_eq = source_subalgebra(ap, w.coproduct_matrix(), tol);
    SubalgebraBasis nt_eq = target_subalgebra(ap, w.coproduct_matrix(), tol);
    rep.add_flag("ns.equations_dim", ns_eq.dim() == ns.dim(), 0.0,
                 std::to_string(ns_eq.dim()) + " solutions");
    rep.add_flag("nt.equations_dim", nt_eq.dim() == nt.dim(), 0.0,
                 std::to_string(nt_eq.dim()) + " solutions");
    rep.add("ns.equations_span", max_abs(CMatrix(ns_eq.projector() - ns.projector())));
    rep.add("nt.equations_span", max_abs(CMatrix(nt_eq.projector() - nt.projector())));

    double comm = 0.0;
    for (std::size_t i = 0; i < ns.dim(); ++i)
        for (std::size_t j = 0; j < nt.dim(); ++j) {
            CVector x = ns.basis().col(i), y = nt.basis().col(j);
            comm = std::max(comm, max_abs(CVector(a.multiply(x, y) - a.multiply(y, x))));
        }
    rep.add("commute", comm, "[N_s, N_t] = 0");

    double s_map = 0.0;
    for (std::size_t i = 0; i < ns.dim(); ++i)
        s_map = std::max(s_map, nt.distance(s * ns.basis().col(i)));
    rep.add("antipode_maps_ns_to_nt", s_map, "S(N_s) = N_t");

    rep.add("e_factorization", max_abs(CMatrix(e - xs * ys.transpose())), "e = sum x_i (x) y_i");

    // (Delta x id)e = (e x 1)(1 x e): compare as n x n^2 slices over the last leg
    {
        const CMatrix& d = w.coproduct_matrix();
        CMatrix lhs = d * e; // [(p,q), r]
        double res = 0.0;
        // (e x 1)(1 x e) = sum_{a,b,c,d} e_ab e_cd  e_a (x) e_b e_c (x) e_d
        CMatrix rhs = CMatrix::Zero(n * n, n);
        for (const auto& m : a.mult_entries())
            for (std::size_t p = 0; p < n; ++p) {
                const cplx v = e(p, m.a);
                if (v == cplx(0.0))
                    continue;
                for (std::size_t q = 0; q < n; ++q)
                    rhs(p * n + m.r, q) += v * e(m.b, q);
            }
        res = max_abs(CMatrix(lhs - rhs));
        rep.add("coproduct_of_e", res, "(Delta x id)e = (e x 1)(1 x e)");
    }

    // e(S(y) (x) 1) = e(1 (x) y) and (S(y) (x) 1)e = (1 (x) y)e for y in N_t
    double crucial = 0.0;
    for (std::size_t j = 0; j < nt.dim(); ++j) {
        CVector y = nt.basis().col(j);
        CVector sy = s * y;
        crucial = std::max(crucial, max_abs(CMatrix(a.right_mult(sy) * e
                                                    - e * a.right_mult(y).transpose())));
        crucial = std::max(crucial, max_abs(CMatrix(a.left_mult(sy) * e
                                                    - e * a.left_mult(y).transpose())));
    }
    rep.add("crucial", crucial, "e(S(y) x 1) = e(1 x y)");

    // eps(y_i x_k) = eps(x_k y_i) = delta_ik
    CMatrix g1(r, r), g2(r, r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t k = 0; k < r; ++k) {
            g1(i, k) = (eps.transpose() * a.multiply(ys.col(i), xs.col(k)))(0);
            g2(i, k) = (eps.transpose() * a.multiply(xs.col(k), ys.col(i)))(0);
        }
    rep.add("biorthogonal",
            std::max(max_abs(CMatrix(g1 - CMatrix::Identity(r, r))),
                     max_abs(CMatrix(g2 - CMatrix::Identity(r, r)))),
            "eps(y_i x_k) = eps(x_k y_i) = delta_ik");

    // e = sum_alpha 1/n_alpha sum_pq f_pq (x) S(f_qp) for matrix units f of N_s
    {
        WedderburnResult wr = realize_subalgebra(ns, tol);
        const FdAlgebra& sub = *wr.algebra;
        CMatrix rebuilt = CMatrix::Zero(n, n);
        for (std::size_t al = 0; al < sub.num_blocks(); ++al) {
            const std::size_t d = sub.block_size(al);
            for (std::size_t p = 0; p < d; ++p)
                for (std::size_t q = 0; q < d; ++q) {
                    CVector fpq = wr.iso.col(sub.index(al, p, q));
                    CVector fqp = wr.iso.col(sub.index(al, q, p));
                    rebuilt += fpq * (s * fqp).transpose() / static_cast<double>(d);
                }
        }
        rep.add("formula_for_e", max_abs(CMatrix(rebuilt - e)),
                "e from a matrix-unit system of N_s");
    }

    CartanPair out{ns, nt, {}, {}, rep};
    for (std::size_t i = 0; i < r; ++i) {
        out.x.push_back(xs.col(i));
        out.y.push_back(ys.col(i));
    }
    return out;
}

} // namespace wka
