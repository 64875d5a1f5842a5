#include "support.hpp"

#include "wka/algebra.hpp"

using namespace wka;
using wka::testing::random_vector;

namespace {

CVector e(const FdAlgebra& a, std::size_t block, std::size_t k, std::size_t l)
{ return a.basis(a.index(block, k, l)); }

const std::vector<std::vector<std::size_t>> shapes = {{1}, {2}, {1, 1, 2}, {1, 2}, {3}, {2, 2, 1}};

} // namespace

TEST_CASE("block shapes determine dimension")
{
    CHECK(make_algebra({1})->dim() == 1);
    CHECK(make_algebra({2})->dim() == 4);
    CHECK(make_algebra({1, 1, 2})->dim() == 6);
    CHECK_THROWS_AS(make_algebra({2, 0}), InvalidArgument);
    CHECK_THROWS_AS(make_algebra({}), InvalidArgument);
}

TEST_CASE("products and involution on matrix units")
{
    auto a = make_algebra({2});
    std::mt19937_64 rng(1);
    const CVector x = random_vector(4, rng);
    CHECK(max_abs(CVector(a->multiply(a->unit(), x) - x)) < 1e-14);
    CHECK(max_abs(CVector(a->multiply(x, a->unit()) - x)) < 1e-14);
    CHECK(max_abs(CVector(a->multiply(e(*a, 0, 0, 0), e(*a, 0, 0, 1)) - e(*a, 0, 0, 1))) == 0.0);
    const cplx s(2.0, 3.0);
    CHECK(max_abs(CVector(a->star(s * x) - std::conj(s) * a->star(x))) < 1e-14);
}

TEST_CASE("regular trace")
{
    CHECK(std::abs(regular_trace(make_algebra({1}))(make_algebra({1})->unit()) - 1.0) < 1e-14);
    for (std::size_t n : {2, 3}) {
        auto a = make_algebra({n});
        // Tr of y -> e_11 y in the regular representation
        const cplx brute = a->left_mult(e(*a, 0, 0, 0)).trace();
        CHECK(std::abs(brute - double(n)) < 1e-14);
        CHECK(std::abs(regular_trace(a)(e(*a, 0, 0, 0)) - brute) < 1e-14);
    }
    auto b = make_algebra({1, 2});
    CHECK(std::abs(regular_trace(b)(b->unit()) - 5.0) < 1e-14);
}

TEST_CASE("commutant and center")
{
    auto m2 = make_algebra({2});
    SubalgebraBasis scalars(m2, CMatrix(m2->unit()));
    CHECK(commutant(scalars).dim() == 4);
    const auto z = center(m2);
    CHECK(z.dim() == 1);
    CHECK(z.distance(m2->unit()) < 1e-12);

    // diagonal C^2 in M_2: x commutes with e_11 and e_22 iff x is diagonal
    CMatrix diag(4, 2);
    diag.col(0) = e(*m2, 0, 0, 0);
    diag.col(1) = e(*m2, 0, 1, 1);
    SubalgebraBasis d(m2, diag);
    const auto c = commutant(d);
    CHECK(c.dim() == 2);
    CHECK(c.distance(e(*m2, 0, 0, 0)) < 1e-12);
    CHECK(c.distance(e(*m2, 0, 1, 1)) < 1e-12);
}

TEST_CASE("minimal central projections")
{
    CHECK(minimal_central_projections(make_algebra({2})).size() == 1);
    auto b = make_algebra({1, 2});
    const auto p = minimal_central_projections(b);
    REQUIRE(p.size() == 2);
    CHECK(max_abs(CVector(p[0].coeffs - b->central_projection(0))) == 0.0);
    CHECK(max_abs(CVector(p[1].coeffs - b->central_projection(1))) == 0.0);
    // abelian algebra of dimension 4: every point mass is minimal central
    auto ab = make_algebra({1, 1, 1, 1});
    const auto q = minimal_central_projections(ab);
    REQUIRE(q.size() == 4);
    for (std::size_t i = 0; i < 4; ++i)
        CHECK(max_abs(CVector(q[i].coeffs - ab->basis(i))) == 0.0);
}

TEST_CASE("Wedderburn realization of a full matrix algebra")
{
    auto m2 = make_algebra({2});
    const auto assoc = AbstractStarAlgebra::from_tensor(m2->mult_tensor(), m2->star_matrix(),
                                                        m2->unit(), CMatrix::Identity(4, 4));
    const auto r = wedderburn_realize(assoc);
    CHECK(r.algebra->block_shape() == std::vector<std::size_t>{2});
    CHECK(r.residual < 1e-10);
    // the isomorphism is unitary for the Hilbert-Schmidt form
    CHECK(max_abs(CMatrix(r.iso.adjoint() * r.iso - CMatrix::Identity(4, 4))) < 1e-10);
}

TEST_CASE("Wedderburn realization of the group algebra of Z2")
{
    Tensor3 t(2, 2, 2);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            t(a, b, (a + b) % 2) = 1.0;
    CVector unit(2);
    unit << 1, 0;
    const auto r = wedderburn_realize(AbstractStarAlgebra::from_tensor(
        t, CMatrix::Identity(2, 2), unit, CMatrix::Identity(2, 2)));
    CHECK(r.algebra->block_shape() == std::vector<std::size_t>{1, 1});
    // minimal idempotents are (1 +- g)/2 from the characters +-1
    for (int i = 0; i < 2; ++i) {
        const CVector p = r.iso.col(i);
        CHECK(std::abs(p(0) - 0.5) < 1e-12);
        CHECK(std::abs(std::abs(p(1)) - 0.5) < 1e-12);
    }
}

TEST_CASE("Wedderburn realization of the convolution algebra of K2 is M2")
{
    // point masses d_(i,j), index 2 i + j; d_x * d_y = d_xy when composable
    Tensor3 t(4, 4, 4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                t(i * 2 + j, j * 2 + k, i * 2 + k) = 1.0;
    CMatrix star = CMatrix::Zero(4, 4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            star(j * 2 + i, i * 2 + j) = 1.0;
    CVector unit = CVector::Zero(4);
    unit(0) = unit(3) = 1.0;
    const auto r = wedderburn_realize(
        AbstractStarAlgebra::from_tensor(t, star, unit, CMatrix::Identity(4, 4)));
    CHECK(r.algebra->block_shape() == std::vector<std::size_t>{2});
    CHECK(r.residual < 1e-10);
}

TEST_CASE("conditional expectations")
{
    auto m2 = make_algebra({2});
    SubalgebraBasis all(m2, CMatrix::Identity(4, 4));
    CHECK_REPORT(check_conditional_expectation(m2, CMatrix::Identity(4, 4), all,
                                               m2->block_trace()),
                 1e-12);

    // E(x) = Tr(x)/2 1 onto the scalars
    SubalgebraBasis scalars(m2, CMatrix(m2->unit()));
    const CMatrix e = m2->unit() * m2->block_trace().transpose() / 2.0;
    CHECK_REPORT(check_conditional_expectation(m2, e, scalars, m2->block_trace()), 1e-12);

    const auto zero = check_conditional_expectation(m2, CMatrix::Zero(4, 4), scalars, std::nullopt);
    CHECK_FALSE(zero.passed());
    CHECK_FALSE(zero.at("unital").pass);
}

TEST_CASE("block algebra axioms hold exhaustively")
{
    std::mt19937_64 rng(7);
    for (const auto& s : shapes) {
        auto a = make_algebra(s);
        const std::size_t n = a->dim();
        double assoc = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k) {
                    const CVector x = a->basis(i), y = a->basis(j), z = a->basis(k);
                    assoc = std::max(assoc, max_abs(CVector(a->multiply(a->multiply(x, y), z) -
                                                            a->multiply(x, a->multiply(y, z)))));
                }
        CHECK(assoc == 0.0);
        for (int t = 0; t < 100; ++t) {
            const CVector x = random_vector(n, rng);
            CHECK(max_abs(CVector(a->star(a->star(x)) - x)) < 1e-14);
            const cplx tau = a->block_trace().transpose() * a->multiply(a->star(x), x);
            CHECK(tau.real() > 0.0);
            CHECK(std::abs(tau.imag()) < 1e-10 * tau.real());
        }
    }
}

TEST_CASE("double commutant of a unital *-subalgebra is itself")
{
    auto a = make_algebra({1, 2});
    // C 1 (+) diagonal of M_2: spanned by e[1], e[2](1,1), e[2](2,2)
    CMatrix gens(5, 3);
    gens.col(0) = e(*a, 0, 0, 0);
    gens.col(1) = e(*a, 1, 0, 0);
    gens.col(2) = e(*a, 1, 1, 1);
    SubalgebraBasis s(a, gens);
    const auto cc = commutant(commutant(s));
    CHECK(cc.dim() == s.dim());
    for (int i = 0; i < 3; ++i)
        CHECK(cc.distance(gens.col(i)) < 1e-12);
}

TEST_CASE("Wedderburn round trip reproduces structure constants")
{
    for (const auto& s : shapes) {
        auto a = make_algebra(s);
        const auto r = wedderburn_realize(AbstractStarAlgebra::from_tensor(
            a->mult_tensor(), a->star_matrix(), a->unit(),
            CMatrix::Identity(a->dim(), a->dim())));
        CHECK(r.algebra->block_shape().size() == s.size());
        CHECK(r.residual < 1e-8);
        std::mt19937_64 rng(3);
        const CVector x = random_vector(a->dim(), rng), y = random_vector(a->dim(), rng);
        // the realization transports the product: iso(xy) = iso(x) iso(y)
        const CVector xs = r.iso_inverse * x, ys = r.iso_inverse * y;
        CHECK(max_abs(CVector(r.iso * r.algebra->multiply(xs, ys) - a->multiply(x, y))) < 1e-8);
    }
}
