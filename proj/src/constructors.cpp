#include "wka/constructors.hpp"

#include <cmath>
#include <map>
#include <numeric>

#include "wka/duality.hpp"

namespace wka {

namespace {

struct Entry {
    Eigen::Index row;
    Eigen::Index col;
    cplx value;
};

// Moves structure given on a construction basis to canonical coordinates,
// where column j of phi holds the construction coordinates of e_j.
Realized transport(const AlgebraPtr& alg, const CMatrix& phi, const CMatrix& phi_inv,
                   const CMatrix& d_abs, const CMatrix& s_abs, const CVector& eps_abs)
{
    const std::size_t n = alg->dim();
    const CMatrix dphi = d_abs * phi;
    const CMatrix phi_inv_t = phi_inv.transpose();
    CMatrix d(n * n, n);
    for (std::size_t j = 0; j < n; ++j)
        d.col(j) = vec(CMatrix(phi_inv * unvec(dphi.col(j), n) * phi_inv_t));
    CMatrix s = phi_inv * s_abs * phi;
    CVector eps = phi.transpose() * eps_abs;
    return Realized{WeakKac(alg, d, s, eps), phi, phi_inv};
}

Realized realize(const AbstractStarAlgebra& abs, const CMatrix& d_abs, const CMatrix& s_abs,
                 const CVector& eps_abs, const Tolerance& tol)
{
    WedderburnResult wr = wedderburn_realize(abs, tol);
    return transport(wr.algebra, wr.iso, wr.iso_inverse, d_abs, s_abs, eps_abs);
}

// Gram matrix form(Y, X) = phi(b_Y^* b_X) for a functional phi on the construction basis.
CMatrix gns_form(const AbstractStarAlgebra& abs, const CVector& phi)
{
    const Eigen::Index n = abs.dim();
    CMatrix form(n, n);
    for (Eigen::Index y = 0; y < n; ++y) {
        CVector ys = abs.star.col(y);
        CMatrix ly = abs.left_mult(ys);
        for (Eigen::Index x = 0; x < n; ++x)
            form(y, x) = (phi.transpose() * ly.col(x))(0);
    }
    return form;
}

std::size_t wrap(long x, std::size_t n)
{
    const long m = static_cast<long>(n);
    return static_cast<std::size_t>(((x - 1) % m + m) % m) + 1;
}

std::vector<std::vector<Entry>> nonzeros(const WeakKac& w)
{
    const std::size_t n = w.dim();
    std::vector<std::vector<Entry>> out(n);
    for (std::size_t x = 0; x < n; ++x) {
        const CMatrix c = w.delta_basis(x);
        for (Eigen::Index p = 0; p < c.rows(); ++p)
            for (Eigen::Index q = 0; q < c.cols(); ++q)
                if (c(p, q) != cplx(0.0))
                    out[x].push_back({p, q, c(p, q)});
    }
    return out;
}

std::string shape_name(const std::vector<std::size_t>& shape)
{
    std::string s;
    for (std::size_t i = 0; i < shape.size(); ++i)
        s += (i ? "," : "") + std::to_string(shape[i]);
    return s;
}

} // namespace

Realized groupoid_algebra_realized(const Groupoid& g, const Tolerance& tol)
{
    const std::size_t n = g.size();
    CMatrix d_abs = CMatrix::Zero(n * n, n);
    CMatrix s_abs = CMatrix::Zero(n, n);
    CVector eps_abs = CVector::Ones(n);
    for (std::size_t x = 0; x < n; ++x) {
        d_abs(x * n + x, x) = 1.0;
        s_abs(g.inverse(x), x) = 1.0;
    }

    if (g.is_principal()) {
        // components of the unit space and positions of units inside them
        std::vector<std::size_t> comp(n, Groupoid::npos), pos(n, 0);
        std::vector<std::size_t> shape;
        for (std::size_t u : g.units()) {
            if (comp[u] != Groupoid::npos)
                continue;
            const std::size_t c = shape.size();
            std::size_t k = 0;
            for (std::size_t v : g.units())
                for (std::size_t x = 0; x < n; ++x)
                    if (g.source(x) == u && g.target(x) == v) {
                        comp[v] = c;
                        pos[v] = k++;
                    }
            shape.push_back(k);
        }
        AlgebraPtr alg = make_algebra(shape);
        CMatrix phi = CMatrix::Zero(n, n);
        for (std::size_t x = 0; x < n; ++x) {
            const std::size_t c = comp[g.target(x)];
            phi(x, alg->index(c, pos[g.target(x)], pos[g.source(x)])) = 1.0;
        }
        Realized r = transport(alg, phi, phi.transpose(), d_abs, s_abs, eps_abs);
        return r;
    }

    AbstractStarAlgebra abs;
    abs.left.assign(n, CMatrix::Zero(n, n));
    abs.star = CMatrix::Zero(n, n);
    abs.unit = CVector::Zero(n);
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y)
            if (g.compose(x, y) != Groupoid::npos)
                abs.left[x](g.compose(x, y), y) = 1.0;
        abs.star(g.inverse(x), x) = 1.0;
    }
    for (std::size_t u : g.units())
        abs.unit(u) = 1.0;
    // tau(g) = [g is a unit] gives <x, y> = delta_xy on group elements
    abs.form = CMatrix::Identity(n, n);
    return realize(abs, d_abs, s_abs, eps_abs, tol);
}

WeakKac groupoid_algebra(const Groupoid& g, const Tolerance& tol)
{
    return groupoid_algebra_realized(g, tol).w;
}

WeakKac groupoid_function_algebra(const Groupoid& g)
{
    const std::size_t n = g.size();
    AlgebraPtr alg = make_algebra(std::vector<std::size_t>(n, 1));
    CMatrix d = CMatrix::Zero(n * n, n);
    CMatrix s = CMatrix::Zero(n, n);
    CVector eps = CVector::Zero(n);
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
            const std::size_t z = g.compose(x, y);
            if (z != Groupoid::npos)
                d(x * n + y, z) = 1.0;
        }
        s(g.inverse(x), x) = 1.0;
        if (g.is_unit(x))
            eps(x) = 1.0;
    }
    return WeakKac(alg, d, s, eps);
}

std::size_t elementary_row(const std::vector<std::size_t>& shape, std::size_t alpha, std::size_t i,
                           std::size_t j)
{
    std::size_t off = 0;
    for (std::size_t a = 0; a < alpha; ++a)
        off += shape[a] * shape[a];
    return off + i * shape[alpha] + j;
}

namespace {

struct Composite {
    std::size_t alpha;
    std::size_t i;
    std::size_t j;
};

std::vector<Composite> composites(const std::vector<std::size_t>& shape)
{
    std::vector<Composite> out;
    for (std::size_t a = 0; a < shape.size(); ++a)
        for (std::size_t i = 0; i < shape[a]; ++i)
            for (std::size_t j = 0; j < shape[a]; ++j)
                out.push_back({a, i, j});
    return out;
}

void check_shape(const std::vector<std::size_t>& shape, const char* who)
{
    if (shape.empty())
        throw InvalidArgument(std::string(who) + ": empty block shape");
    for (std::size_t s : shape)
        if (s == 0)
            throw InvalidArgument(std::string(who) + ": zero block size");
}

} // namespace

WeakKac elementary(const std::vector<std::size_t>& shape)
{
    check_shape(shape, "elementary");
    const std::vector<Composite> rows = composites(shape);
    const std::size_t m = rows.size();
    const std::size_t n = m * m;
    AlgebraPtr alg = make_algebra({m});
    CMatrix d = CMatrix::Zero(n * n, n);
    CMatrix s = CMatrix::Zero(n, n);
    CVector eps = CVector::Zero(n);
    auto row = [&](std::size_t a, std::size_t i, std::size_t j) {
        return elementary_row(shape, a, i, j);
    };
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < m; ++c) {
            const auto [a, i, j] = rows[r];
            const auto [b, k, l] = rows[c];
            const std::size_t x = r * m + c;
            const double na = static_cast<double>(shape[a]), nb = static_cast<double>(shape[b]);
            const double scale = 1.0 / std::sqrt(na * nb);
            for (std::size_t u = 0; u < shape[a]; ++u)
                for (std::size_t v = 0; v < shape[b]; ++v) {
                    const std::size_t left = row(a, i, u) * m + row(b, k, v);
                    const std::size_t right = row(a, u, j) * m + row(b, v, l);
                    d(left * n + right, x) += scale;
                }
            s(row(b, l, k) * m + row(a, j, i), x) = 1.0;
            if (i == j && k == l)
                eps(x) = std::sqrt(na * nb);
        }
    WeakKac w(alg, d, s, eps);
    w.name = "elementary(" + shape_name(shape) + ")";
    return w;
}

TwistedElementary elementary_twist(const std::vector<std::size_t>& shape, const CMatrix& lambda,
                                   const Tolerance& tol)
{
    check_shape(shape, "elementary_twist");
    const std::size_t k = shape.size();
    if (static_cast<std::size_t>(lambda.rows()) != k || static_cast<std::size_t>(lambda.cols()) != k)
        throw InvalidCocycle("lambda must be " + std::to_string(k) + " x " + std::to_string(k));
    const double eps = std::max(tol.abs_tol, 1e-12);
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) {
            if (std::abs(std::abs(lambda(a, b)) - 1.0) > eps)
                throw InvalidCocycle("not unimodular at (" + std::to_string(a + 1) + "," +
                                     std::to_string(b + 1) + ")");
            if (std::abs(lambda(b, a) - std::conj(lambda(a, b))) > eps)
                throw InvalidCocycle("not hermitian at (" + std::to_string(a + 1) + "," +
                                     std::to_string(b + 1) + ")");
            for (std::size_t c = 0; c < k; ++c)
                if (std::abs(lambda(a, b) * lambda(b, c) - lambda(a, c)) > eps)
                    throw InvalidCocycle("cocycle condition fails at (" + std::to_string(a + 1) +
                                         "," + std::to_string(b + 1) + "," +
                                         std::to_string(c + 1) + ")");
        }

    const WeakKac base = elementary(shape);
    const std::vector<Composite> rows = composites(shape);
    const std::size_t m = rows.size(), n = m * m;
    CMatrix d = base.coproduct_matrix();
    CMatrix s = base.antipode();
    CVector e = base.counit();
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < m; ++c) {
            const std::size_t x = r * m + c;
            const cplx l = lambda(rows[r].alpha, rows[c].alpha);
            d.col(x) *= l;
            s.col(x) *= std::conj(l) * std::conj(l);
            e(x) *= std::conj(l);
        }
    (void)n;
    TwistedElementary out{WeakKac(base.algebra_ptr(), d, s, e), shape, lambda};
    out.w.name = "twist(" + shape_name(shape) + ")";
    return out;
}

CMatrix twist_isomorphism(const TwistedElementary& t)
{
    const std::vector<Composite> rows = composites(t.shape);
    const std::size_t m = rows.size();
    CMatrix p = CMatrix::Zero(m * m, m * m);
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < m; ++c)
            p(r * m + c, r * m + c) = t.lambda(rows[r].alpha, rows[c].alpha);
    return p;
}

CMatrix untwist_isomorphism(const TwistedElementary& t)
{
    return twist_isomorphism(t).conjugate();
}

CMatrix random_cocycle(std::size_t blocks, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
    std::vector<cplx> mu(blocks);
    for (auto& z : mu)
        z = std::polar(1.0, angle(rng));
    CMatrix l(blocks, blocks);
    for (std::size_t a = 0; a < blocks; ++a)
        for (std::size_t b = 0; b < blocks; ++b)
            l(a, b) = a == b ? cplx(1.0) : mu[a] * std::conj(mu[b]);
    return l;
}

namespace {

// Canonical index of e^{(a b)}_{(i k),(j l)} in dual_elementary(shape).
struct DualElementaryIndex {
    std::vector<std::size_t> shape;
    AlgebraPtr alg;

    std::size_t operator()(std::size_t a, std::size_t b, std::size_t i, std::size_t k,
                           std::size_t j, std::size_t l) const
    {
        const std::size_t nb = shape[b];
        return alg->index(a * shape.size() + b, i * nb + k, j * nb + l);
    }
};

DualElementaryIndex dual_elementary_index(const std::vector<std::size_t>& shape)
{
    std::vector<std::size_t> blocks;
    for (std::size_t a : shape)
        for (std::size_t b : shape)
            blocks.push_back(a * b);
    return DualElementaryIndex{shape, make_algebra(blocks)};
}

} // namespace

WeakKac dual_elementary(const std::vector<std::size_t>& shape)
{
    check_shape(shape, "dual_elementary");
    const DualElementaryIndex idx = dual_elementary_index(shape);
    const std::size_t n = idx.alg->dim(), K = shape.size();
    CMatrix d = CMatrix::Zero(n * n, n);
    CMatrix s = CMatrix::Zero(n, n);
    CVector eps = CVector::Zero(n);
    for (std::size_t a = 0; a < K; ++a)
        for (std::size_t b = 0; b < K; ++b)
            for (std::size_t i = 0; i < shape[a]; ++i)
                for (std::size_t j = 0; j < shape[a]; ++j)
                    for (std::size_t k = 0; k < shape[b]; ++k)
                        for (std::size_t l = 0; l < shape[b]; ++l) {
                            const std::size_t x = idx(a, b, i, k, j, l);
                            for (std::size_t c = 0; c < K; ++c) {
                                const double w = 1.0 / static_cast<double>(shape[c]);
                                for (std::size_t p = 0; p < shape[c]; ++p)
                                    for (std::size_t q = 0; q < shape[c]; ++q)
                                        d(idx(a, c, i, p, j, q) * n + idx(c, b, p, k, q, l), x) += w;
                            }
                            s(idx(b, a, l, j, k, i), x) = 1.0;
                            if (a == b && i == k && j == l)
                                eps(x) = static_cast<double>(shape[a]);
                        }
    WeakKac w(idx.alg, d, s, eps);
    w.name = "dual_elementary(" + shape_name(shape) + ")";
    return w;
}

CMatrix dual_elementary_pairing(const std::vector<std::size_t>& shape)
{
    const DualElementaryIndex idx = dual_elementary_index(shape);
    const std::size_t m = composites(shape).size();
    CMatrix p = CMatrix::Zero(idx.alg->dim(), m * m);
    const std::size_t K = shape.size();
    for (std::size_t a = 0; a < K; ++a)
        for (std::size_t b = 0; b < K; ++b)
            for (std::size_t i = 0; i < shape[a]; ++i)
                for (std::size_t j = 0; j < shape[a]; ++j)
                    for (std::size_t k = 0; k < shape[b]; ++k)
                        for (std::size_t l = 0; l < shape[b]; ++l) {
                            // e^(ab)_{(ik),(jl)} = sqrt(n_a n_b) C^{kl b}_{ij a}, dual to E^{kl b}_{ij a}
                            const std::size_t e = elementary_row(shape, a, i, j) * m +
                                                  elementary_row(shape, b, k, l);
                            p(idx(a, b, i, k, j, l), e) =
                                std::sqrt(static_cast<double>(shape[a] * shape[b]));
                        }
    return p;
}

GroupAction trivial_action(const WeakKac& w, const Groupoid& group)
{
    return GroupAction{group, std::vector<CMatrix>(group.size(), CMatrix::Identity(w.dim(), w.dim()))};
}

GroupAction shift_action(std::size_t n)
{
    GroupAction act{cyclic_group(n), {}};
    for (std::size_t m = 0; m < n; ++m) {
        CMatrix a = CMatrix::Zero(n * n, n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                a(((i + m) % n) * n + (j + m) % n, i * n + j) = 1.0;
        act.maps.push_back(a);
    }
    return act;
}

VerificationReport validate_action(const WeakKac& w, const GroupAction& act, const Tolerance& tol)
{
    VerificationReport rep(tol.abs_tol);
    const FdAlgebra& a = w.algebra();
    const std::size_t n = w.dim();
    const Groupoid& g = act.group;
    rep.add_flag("group", g.is_group(), 0.0, "acting groupoid has a single unit");
    const bool sizes = act.maps.size() == g.size() &&
                       std::all_of(act.maps.begin(), act.maps.end(), [&](const CMatrix& m) {
                           return static_cast<std::size_t>(m.rows()) == n &&
                                  static_cast<std::size_t>(m.cols()) == n;
                       });
    rep.add_flag("sizes", sizes, 0.0, "one dim x dim map per group element");
    if (!sizes || !g.is_group())
        return rep;
    for (std::size_t x = 0; x < g.size(); ++x) {
        const CMatrix& m = act.maps[x];
        const std::string tag = "[" + g.label(x) + "]";
        double mult = 0.0, st = 0.0, cop = 0.0;
        for (std::size_t p = 0; p < n; ++p) {
            const CVector mp = m.col(p);
            for (std::size_t q = 0; q < n; ++q)
                mult = std::max(mult, max_abs(CVector(m * a.multiply(a.basis(p), a.basis(q)) -
                                                      a.multiply(mp, m.col(q)))));
            st = std::max(st, max_abs(CVector(m * a.star(a.basis(p)) - a.star(mp))));
            cop = std::max(cop, max_abs(CMatrix(w.delta(mp) - m * w.delta_basis(p) * m.transpose())));
        }
        rep.add("multiplicative" + tag, mult, "(xy) <| g = (x <| g)(y <| g)");
        rep.add("star" + tag, st, "x^* <| g = (x <| g)^*");
        rep.add("unital" + tag, max_abs(CVector(m * a.unit() - a.unit())), "1 <| g = 1");
        rep.add("coproduct" + tag, cop, "Delta(m <| g) = Delta(m) <| (g (x) g)");
        rep.add("antipode" + tag, max_abs(CMatrix(w.antipode() * m - m * w.antipode())),
                "S(m <| g) = S(m) <| g");
        rep.add("counit" + tag, max_abs(CVector(m.transpose() * w.counit() - w.counit())),
                "eps(m <| g) = eps(m)");
    }
    double law = 0.0;
    for (std::size_t x = 0; x < g.size(); ++x)
        for (std::size_t y = 0; y < g.size(); ++y)
            law = std::max(law, max_abs(CMatrix(act.maps[y] * act.maps[x] -
                                                act.maps[g.compose(x, y)])));
    rep.add("right_action", law, "(m <| g) <| h = m <| gh");
    rep.add("identity", max_abs(CMatrix(act.maps[g.units()[0]] - CMatrix::Identity(n, n))),
            "m <| 1 = m");
    return rep;
}

Realized crossed_product_realized(const WeakKac& w, const GroupAction& act, const Tolerance& tol)
{
    VerificationReport vr = validate_action(w, act, tol);
    if (!vr.passed()) {
        for (const auto& [name, c] : vr.checks())
            if (!c.pass)
                throw InvalidAction(name + " (residual " + std::to_string(c.residual) + ")");
    }
    const FdAlgebra& a = w.algebra();
    const Groupoid& g = act.group;
    const std::size_t n = w.dim(), ng = g.size(), N = n * ng;
    const std::size_t one = g.units()[0];
    auto idx = [&](std::size_t p, std::size_t x) { return x * n + p; };

    AbstractStarAlgebra abs;
    abs.left.assign(N, CMatrix::Zero(N, N));
    for (std::size_t x = 0; x < ng; ++x)
        for (std::size_t y = 0; y < ng; ++y) {
            const std::size_t xy = g.compose(x, y);
            for (std::size_t p = 0; p < n; ++p) {
                const CMatrix lp = a.left_mult(act.maps[y].col(p));
                for (std::size_t q = 0; q < n; ++q)
                    for (std::size_t r = 0; r < n; ++r)
                        if (lp(r, q) != cplx(0.0))
                            abs.left[idx(p, x)](idx(r, xy), idx(q, y)) = lp(r, q);
            }
        }
    abs.star = CMatrix::Zero(N, N);
    CMatrix s_abs = CMatrix::Zero(N, N);
    CMatrix d_abs = CMatrix::Zero(N * N, N);
    CVector eps_abs(N);
    for (std::size_t x = 0; x < ng; ++x) {
        const std::size_t xi = g.inverse(x);
        for (std::size_t p = 0; p < n; ++p) {
            const CVector mp = act.maps[xi].col(p);
            const CVector st = a.star(mp);
            const CVector sp = w.antipode() * mp;
            const CMatrix c = w.delta_basis(p);
            for (std::size_t r = 0; r < n; ++r) {
                abs.star(idx(r, xi), idx(p, x)) = st(r);
                s_abs(idx(r, xi), idx(p, x)) = sp(r);
                for (std::size_t q = 0; q < n; ++q)
                    if (c(r, q) != cplx(0.0))
                        d_abs(idx(r, x) * N + idx(q, x), idx(p, x)) = c(r, q);
            }
            eps_abs(idx(p, x)) = w.counit()(p);
        }
    }
    abs.unit = CVector::Zero(N);
    abs.unit.segment(idx(0, one), n) = a.unit();
    // dual trace tau(m (x) g) = [g = 1] tau(m) with the block trace of M
    CVector trace = CVector::Zero(N);
    trace.segment(idx(0, one), n) = a.block_trace();
    abs.form = gns_form(abs, trace);
    Realized r = realize(abs, d_abs, s_abs, eps_abs, tol);
    r.w.name = w.name.empty() ? std::string("crossed_product") : "crossed_product(" + w.name + ")";
    return r;
}

WeakKac crossed_product(const WeakKac& w, const GroupAction& act, const Tolerance& tol)
{
    return crossed_product_realized(w, act, tol).w;
}

std::size_t cube_index(std::size_t n, long k, long i, long j)
{
    const std::size_t kk = wrap(k, n), ii = wrap(i, n), jj = wrap(j, n);
    return (kk - 1) * n * n + (ii - 1) * n + (jj - 1);
}

WeakKac cube_family(std::size_t n)
{
    if (n < 2)
        throw InvalidArgument("cube_family: n must be >= 2");
    AlgebraPtr alg = make_algebra(std::vector<std::size_t>(n, n));
    const std::size_t dim = n * n * n;
    const long m = static_cast<long>(n);
    CMatrix d = CMatrix::Zero(dim * dim, dim);
    CMatrix s = CMatrix::Zero(dim, dim);
    CVector eps = CVector::Zero(dim);
    for (long k = 1; k <= m; ++k)
        for (long i = 1; i <= m; ++i)
            for (long j = 1; j <= m; ++j) {
                const std::size_t x = cube_index(n, k, i, j);
                for (long r = 1; r <= m; ++r)
                    d(cube_index(n, r, i, j) * dim + cube_index(n, k - r, i + r, j + r), x) += 1.0;
                s(cube_index(n, m - k, j + k, i + k), x) = 1.0;
                if (k == m)
                    eps(x) = 1.0;
            }
    WeakKac w(alg, d, s, eps);
    w.name = "cube_family(" + std::to_string(n) + ")";
    return w;
}

CMatrix cube_to_crossed_product(std::size_t n, const Realized& cp)
{
    const std::size_t dim = n * n * n, nn = n * n;
    const long m = static_cast<long>(n);
    CMatrix abs = CMatrix::Zero(dim, dim);
    for (long k = 1; k <= m; ++k)
        for (long i = 1; i <= m; ++i)
            for (long j = 1; j <= m; ++j) {
                // point mass of the morphism (j, j+k) of K_n, group element g^(j-i)
                const std::size_t pm = (wrap(j, n) - 1) * n + (wrap(j + k, n) - 1);
                const std::size_t gexp = wrap(j - i, n) % n;
                abs(gexp * nn + pm, cube_index(n, k, i, j)) = 1.0;
            }
    return cp.iso_inverse * abs;
}

WeakKac tensor_product(const WeakKac& w1, const WeakKac& w2)
{
    const FdAlgebra& a1 = w1.algebra();
    const FdAlgebra& a2 = w2.algebra();
    const std::size_t k2 = a2.num_blocks();
    std::vector<std::size_t> shape;
    for (std::size_t i = 0; i < a1.num_blocks(); ++i)
        for (std::size_t j = 0; j < k2; ++j)
            shape.push_back(a1.block_size(i) * a2.block_size(j));
    AlgebraPtr alg = make_algebra(shape);
    const std::size_t n1 = a1.dim(), n2 = a2.dim(), n = alg->dim();
    std::vector<std::size_t> tau(n1 * n2);
    for (std::size_t x = 0; x < n1; ++x)
        for (std::size_t y = 0; y < n2; ++y) {
            const auto l1 = a1.label(x);
            const auto l2 = a2.label(y);
            const std::size_t dj = a2.block_size(l2.block);
            tau[x * n2 + y] = alg->index(l1.block * k2 + l2.block, l1.row * dj + l2.row,
                                         l1.col * dj + l2.col);
        }
    const auto nz1 = nonzeros(w1), nz2 = nonzeros(w2);
    CMatrix d = CMatrix::Zero(n * n, n);
    CMatrix s = CMatrix::Zero(n, n);
    CVector eps(n);
    for (std::size_t x = 0; x < n1; ++x)
        for (std::size_t y = 0; y < n2; ++y) {
            const std::size_t col = tau[x * n2 + y];
            for (const Entry& e1 : nz1[x])
                for (const Entry& e2 : nz2[y])
                    d(tau[e1.row * n2 + e2.row] * n + tau[e1.col * n2 + e2.col], col) +=
                        e1.value * e2.value;
            for (std::size_t p = 0; p < n1; ++p)
                for (std::size_t q = 0; q < n2; ++q)
                    s(tau[p * n2 + q], col) = w1.antipode()(p, x) * w2.antipode()(q, y);
            eps(col) = w1.counit()(x) * w2.counit()(y);
        }
    WeakKac w(alg, d, s, eps);
    w.name = "(" + w1.name + ")x(" + w2.name + ")";
    return w;
}

WeakKac direct_sum(const WeakKac& w1, const WeakKac& w2)
{
    std::vector<std::size_t> shape = w1.algebra().block_shape();
    for (std::size_t b : w2.algebra().block_shape())
        shape.push_back(b);
    AlgebraPtr alg = make_algebra(shape);
    const std::size_t n1 = w1.dim(), n2 = w2.dim(), n = n1 + n2;
    CMatrix d = CMatrix::Zero(n * n, n);
    CMatrix s = CMatrix::Zero(n, n);
    CVector eps(n);
    for (std::size_t x = 0; x < n1; ++x) {
        const CMatrix c = w1.delta_basis(x);
        for (std::size_t p = 0; p < n1; ++p)
            for (std::size_t q = 0; q < n1; ++q)
                d(p * n + q, x) = c(p, q);
    }
    for (std::size_t x = 0; x < n2; ++x) {
        const CMatrix c = w2.delta_basis(x);
        for (std::size_t p = 0; p < n2; ++p)
            for (std::size_t q = 0; q < n2; ++q)
                d((n1 + p) * n + n1 + q, n1 + x) = c(p, q);
    }
    s.topLeftCorner(n1, n1) = w1.antipode();
    s.bottomRightCorner(n2, n2) = w2.antipode();
    eps.head(n1) = w1.counit();
    eps.tail(n2) = w2.counit();
    WeakKac w(alg, d, s, eps);
    w.name = "(" + w1.name + ")+(" + w2.name + ")";
    return w;
}

std::vector<WeakKac> catalog(bool with_duals, unsigned seed, const Tolerance& tol)
{
    std::vector<WeakKac> out;
    const std::vector<std::pair<std::string, Groupoid>> groupoids = {
        {"Z2", cyclic_group(2)},
        {"Z3", cyclic_group(3)},
        {"K2", pair_groupoid(2)},
        {"K3", pair_groupoid(3)},
        {"Z2+1", disjoint_union(cyclic_group(2), pair_groupoid(1))},
    };
    for (const auto& [name, g] : groupoids) {
        WeakKac ca = groupoid_algebra(g, tol);
        ca.name = "C[" + name + "]";
        out.push_back(ca);
        WeakKac cf = groupoid_function_algebra(g);
        cf.name = "C(" + name + ")";
        out.push_back(cf);
    }
    const std::vector<std::vector<std::size_t>> shapes = {{1}, {1, 1}, {1, 1, 1}, {1, 2}, {2}};
    for (const auto& sh : shapes) {
        out.push_back(elementary(sh));
        out.push_back(dual_elementary(sh));
    }
    for (std::size_t n = 2; n <= 4; ++n)
        out.push_back(cube_family(n));

    WeakKac k2 = groupoid_function_algebra(pair_groupoid(2));
    k2.name = "C(K2)";
    WeakKac k3 = groupoid_function_algebra(pair_groupoid(3));
    k3.name = "C(K3)";
    WeakKac z2 = groupoid_function_algebra(cyclic_group(2));
    z2.name = "C(Z2)";
    out.push_back(crossed_product(k2, shift_action(2), tol));
    out.push_back(crossed_product(k3, shift_action(3), tol));
    out.push_back(crossed_product(z2, trivial_action(z2, cyclic_group(2)), tol));

    std::mt19937_64 rng(seed);
    const std::vector<std::vector<std::size_t>> twist_shapes = {
        {1, 1}, {1, 2}, {1, 1, 1}, {2, 1}, {1, 1, 2}};
    std::vector<WeakKac> twists;
    for (std::size_t t = 0; t < twist_shapes.size(); ++t) {
        TwistedElementary te =
            elementary_twist(twist_shapes[t], random_cocycle(twist_shapes[t].size(), rng), tol);
        te.w.name += "#" + std::to_string(t + 1);
        twists.push_back(te.w);
    }

    if (with_duals) {
        const std::size_t base = out.size();
        for (std::size_t i = 0; i < base; ++i)
            out.push_back(dual(out[i], tol));
    }
    out.insert(out.end(), twists.begin(), twists.end());
    return out;
}

} // namespace wka
