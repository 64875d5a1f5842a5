#include "support.hpp"

#include "wka/constructors.hpp"
#include "wka/duality.hpp"

using namespace wka;

namespace {

const Tolerance tol;

// K_n point masses d_(i,j) sit at index i * n + j (0-based)
std::size_t pm(std::size_t n, std::size_t i, std::size_t j) { return i * n + j; }

CVector canonical(const Realized& r, const CVector& construction)
{ return r.iso_inverse * construction; }

CVector construction_functional(const Realized& r, const CVector& canonical_functional)
{ return r.iso_inverse.transpose() * canonical_functional; }

CVector unit_vector(std::size_t n, std::size_t i)
{
    CVector v = CVector::Zero(static_cast<Eigen::Index>(n));
    v(static_cast<Eigen::Index>(i)) = 1.0;
    return v;
}

} // namespace

TEST_CASE("function algebra of Z2 is a Kac algebra with e = 1 (x) 1")
{
    const auto w = groupoid_function_algebra(cyclic_group(2));
    CHECK_REPORT(verify_weak_kac(w, tol), 1e-12);
    const CVector one = w.algebra().unit();
    CHECK(max_abs(CMatrix(w.e() - one * one.transpose())) < 1e-14);
}

TEST_CASE("function algebra of K2 has eps(d_g) = [g is a unit]")
{
    const auto w = groupoid_function_algebra(pair_groupoid(2));
    CHECK_REPORT(verify_weak_kac(w, tol), 1e-12);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            CHECK(w.counit()(pm(2, i, j)) == cplx(i == j ? 1.0 : 0.0));
}

TEST_CASE("zero counit fails the counit axioms")
{
    const auto w = groupoid_function_algebra(pair_groupoid(2));
    const auto r = verify_weak_kac(w.with_counit(CVector::Zero(4)), tol);
    CHECK_FALSE(r.passed());
    CHECK_FALSE(r.at("counit.left").pass);
    CHECK_FALSE(r.at("counit.right").pass);
}

TEST_CASE("counital maps of group and groupoid algebras")
{
    const auto z3 = groupoid_algebra_realized(cyclic_group(3), tol);
    const auto cz = counital_maps(z3.w, tol);
    for (std::size_t g = 0; g < 3; ++g) {
        const CVector img = cz.target * canonical(z3, unit_vector(3, g));
        CHECK(max_abs(CVector(img - z3.w.algebra().unit())) < 1e-12);
    }

    // eps_t(g) = t(g) = g g^-1 on the pair groupoid
    const Groupoid k3 = pair_groupoid(3);
    const auto r = groupoid_algebra_realized(k3, tol);
    const auto cm = counital_maps(r.w, tol);
    for (std::size_t x = 0; x < k3.size(); ++x) {
        const std::size_t t = k3.compose(x, k3.inverse(x));
        CHECK(t == k3.target(x));
        const CVector got = r.iso * (cm.target * canonical(r, unit_vector(9, x)));
        CHECK(max_abs(CVector(got - unit_vector(9, t))) < 1e-12);
    }
}

TEST_CASE("counital maps of the cube family")
{
    for (std::size_t n : {2, 3}) {
        const auto w = cube_family(n);
        const auto cm = counital_maps(w, tol);
        CHECK_REPORT(cm.report, 1e-12);
        const long m = static_cast<long>(n);
        for (long k = 1; k <= m; ++k)
            for (long i = 1; i <= m; ++i)
                for (long j = 1; j <= m; ++j) {
                    const CVector x = w.algebra().basis(cube_index(n, k, i, j));
                    CVector target = CVector::Zero(w.dim()), source = CVector::Zero(w.dim());
                    if (k == m)
                        for (long r = 1; r <= m; ++r) {
                            target(cube_index(n, r, i, i)) += 1.0;
                            source(cube_index(n, m - r, j + r, j + r)) += 1.0;
                        }
                    CHECK(max_abs(CVector(cm.target * x - target)) < 1e-12);
                    CHECK(max_abs(CVector(cm.source * x - source)) < 1e-12);
                }
    }
}

TEST_CASE("Cartan subalgebras")
{
    const auto f = groupoid_function_algebra(pair_groupoid(2));
    // brute-force rank of e = number of units of K2
    const auto cf = cartan_subalgebras(f, tol);
    CHECK(cf.ns.dim() == 2);
    CHECK(cf.nt.dim() == 2);
    // N_s = functions constant on source fibres
    CVector src = CVector::Zero(4);
    src(pm(2, 0, 0)) = src(pm(2, 1, 0)) = 1.0;
    CHECK(cf.ns.distance(src) < 1e-12);
    CHECK(cf.nt.distance(src) > 0.1);

    // F_pq = sum_i E_(a i p),(a i q) are matrix units of N_s in M(C (+) M_2)
    const std::vector<std::size_t> shape{1, 2};
    const auto m = elementary(shape);
    const auto cm = cartan_subalgebras(m, tol);
    CHECK(cm.ns.dim() == 5);
    auto unit_f = [&](std::size_t a, std::size_t p, std::size_t q) {
        CVector v = CVector::Zero(25);
        for (std::size_t i = 0; i < shape[a]; ++i)
            v(elementary_row(shape, a, i, p) * 5 + elementary_row(shape, a, i, q)) += 1.0;
        return v;
    };
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t p = 0; p < shape[a]; ++p)
            for (std::size_t q = 0; q < shape[a]; ++q) {
                CHECK(cm.ns.distance(unit_f(a, p, q)) < 1e-12);
                for (std::size_t s = 0; s < shape[a]; ++s) {
                    const CVector prod = m.algebra().multiply(unit_f(a, p, q), unit_f(a, q, s));
                    CHECK(max_abs(CVector(prod - unit_f(a, p, s))) < 1e-12);
                }
            }

    const auto z2 = groupoid_algebra(cyclic_group(2), tol);
    const auto cz = cartan_subalgebras(z2, tol);
    CHECK(cz.ns.dim() == 1);
    CHECK(cz.nt.dim() == 1);
}

TEST_CASE("Haar projections")
{
    const auto z2 = groupoid_algebra_realized(cyclic_group(2), tol);
    const auto hp = haar_projection(z2.w, tol);
    CHECK_REPORT(hp.report, 1e-12);
    const CVector p = z2.iso * hp.p.coeffs;
    CHECK(std::abs(p(0) - 0.5) < 1e-12);
    CHECK(std::abs(p(1) - 0.5) < 1e-12);

    for (std::size_t n : {2, 3}) {
        const auto f = groupoid_function_algebra(pair_groupoid(n));
        CVector want = CVector::Zero(n * n);
        for (std::size_t i = 0; i < n; ++i)
            want(pm(n, i, i)) = 1.0;
        CHECK(max_abs(CVector(haar_projection(f, tol).p.coeffs - want)) < 1e-12);
    }

    const auto fz3 = groupoid_function_algebra(cyclic_group(3));
    CHECK(max_abs(CVector(haar_projection(fz3, tol).p.coeffs - unit_vector(3, 0))) < 1e-12);
}

TEST_CASE("counital representation")
{
    const auto z3 = groupoid_algebra(cyclic_group(3), tol);
    const auto rz = counital_representation(z3, tol);
    CHECK(rz.space.cols() == 1);
    CHECK(rz.support.size() == 1);

    const auto f = groupoid_function_algebra(pair_groupoid(2));
    const auto rf = counital_representation(f, tol);
    CHECK(rf.space.cols() == 2);
    CHECK(rf.support == std::vector<std::size_t>{pm(2, 0, 0), pm(2, 1, 1)});
    for (long nu : rf.multiplicities)
        CHECK(nu <= 1);

    for (const auto& shape : std::vector<std::vector<std::size_t>>{{1, 1}, {1, 2}, {2}}) {
        std::size_t dim_a = 0;
        for (std::size_t d : shape)
            dim_a += d * d;
        CHECK(static_cast<std::size_t>(counital_representation(elementary(shape), tol).space.cols()) ==
              dim_a);
    }
}

TEST_CASE("fusion rings")
{
    // the two characters of Z2 multiply like the group
    const auto z2 = fusion_ring(groupoid_algebra(cyclic_group(2), tol), tol);
    CHECK_REPORT(z2.report, 1e-9);
    REQUIRE(z2.n.size() == 2);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            long total = 0;
            for (std::size_t k = 0; k < 2; ++k)
                total += z2.n[i][j][k];
            CHECK(total == 1);
        }
    const std::size_t u = z2.support.at(0);
    for (std::size_t i = 0; i < 2; ++i)
        CHECK(z2.n[u][i][i] == 1);

    // d_x x d_y = d_xy when composable
    const Groupoid k2 = pair_groupoid(2);
    const auto fk = fusion_ring(groupoid_function_algebra(k2), tol);
    for (std::size_t x = 0; x < 4; ++x)
        for (std::size_t y = 0; y < 4; ++y)
            for (std::size_t z = 0; z < 4; ++z)
                CHECK(fk.n[x][y][z] == (k2.compose(x, y) == z ? 1 : 0));

    // cube_family(n): Delta(f^k_11) = sum_r f^r_11 (x) f^(k-r)_(1+r,1+r) gives the Z/n table
    for (std::size_t n : {2, 3}) {
        const auto w = cube_family(n);
        const auto fc = fusion_ring(w, tol);
        REQUIRE(fc.n.size() == n);
        auto block = [&](long k) { return w.algebra().label(cube_index(n, k, 1, 1)).block; };
        const long m = static_cast<long>(n);
        for (long a = 1; a <= m; ++a)
            for (long b = 1; b <= m; ++b)
                for (long c = 1; c <= m; ++c)
                    CHECK(fc.n[block(a)][block(b)][block(c)] == ((a + b - c) % m == 0 ? 1 : 0));
    }
}

TEST_CASE("counital quotients")
{
    const auto z3 = counital_quotient(groupoid_algebra(cyclic_group(3), tol), tol);
    CHECK(z3.quotient.dim() == 1);
    const auto m = counital_quotient(elementary({1, 2}), tol);
    CHECK(m.quotient.dim() == 25);
    const auto f = counital_quotient(groupoid_function_algebra(pair_groupoid(2)), tol);
    CHECK(f.quotient.dim() == 2);
    CHECK_REPORT(verify_weak_kac(f.quotient, tol), 1e-12);
}

TEST_CASE("normalized Haar traces")
{
    const auto z3 = groupoid_algebra_realized(cyclic_group(3), tol);
    const auto pz = normalized_haar_trace(z3.w, tol);
    CHECK_REPORT(pz.report, 1e-9);
    CHECK(max_abs(CVector(construction_functional(z3, pz.phi.coeffs) - unit_vector(3, 0))) <
          1e-12);

    // (id (x) phi) e = 1 with phi = c Tr on each block forces c = 1/n
    for (std::size_t n : {2, 3}) {
        const auto w = cube_family(n);
        const auto ht = normalized_haar_trace(w, tol);
        const long m = static_cast<long>(n);
        for (long k = 1; k <= m; ++k)
            for (long i = 1; i <= m; ++i)
                for (long j = 1; j <= m; ++j)
                    CHECK(std::abs(ht.phi.coeffs(cube_index(n, k, i, j)) -
                                   (i == j ? 1.0 / double(n) : 0.0)) < 1e-12);
    }

    // crossed product: phi(m (x) g) = [g = 1] phi(m)
    const auto base = groupoid_function_algebra(pair_groupoid(2));
    const auto cp = crossed_product_realized(base, shift_action(2), tol);
    const CVector phi_cp = construction_functional(cp, normalized_haar_trace(cp.w, tol).phi.coeffs);
    const CVector phi = normalized_haar_trace(base, tol).phi.coeffs;
    for (std::size_t g = 0; g < 2; ++g)
        for (std::size_t a = 0; a < 4; ++a)
            CHECK(std::abs(phi_cp(g * 4 + a) - (g == 0 ? phi(a) : 0.0)) < 1e-12);
}

TEST_CASE("Haar trace cone")
{
    // C K2: the Haar functionals are P_i p of the dual for both units, only
    // their equal-weight combination is tracial
    const auto k2 = groupoid_algebra(pair_groupoid(2), tol);
    const auto cone = haar_trace_cone(k2, tol);
    CHECK_REPORT(cone.report, 1e-9);
    CHECK(cone.functionals.size() == 2);
    CHECK(cone.span.cols() == 1);
    CHECK(cone.rays.size() == 1);

    // C(K2) is commutative: every P_i p is a trace
    const auto f = haar_trace_cone(groupoid_function_algebra(pair_groupoid(2)), tol);
    CHECK_REPORT(f.report, 1e-9);
    CHECK(f.rays.size() == f.functionals.size());
}

TEST_CASE("conditional expectations built from the Haar trace")
{
    const auto z3 = groupoid_algebra(cyclic_group(3), tol);
    const auto phz = normalized_haar_trace(z3, tol).phi.coeffs;
    const auto ez = haar_conditional_expectations(z3, phz, tol);
    CHECK_REPORT(ez.report, 1e-9);
    CHECK(max_abs(CMatrix(ez.et - z3.algebra().unit() * phz.transpose())) < 1e-12);

    // (id (x) phi) Delta(d_(i,j)) = sum_k d_(i,k) phi(d_(k,j)) = (1/2) sum_k d_(i,k)
    const auto f = groupoid_function_algebra(pair_groupoid(2));
    const auto phf = normalized_haar_trace(f, tol).phi.coeffs;
    CHECK(max_abs(CVector(phf - CVector::Constant(4, 0.5))) < 1e-12);
    const auto ef = haar_conditional_expectations(f, phf, tol);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            CVector want = CVector::Zero(4);
            want(pm(2, i, 0)) = want(pm(2, i, 1)) = 0.5;
            CHECK(max_abs(CVector(ef.et * unit_vector(4, pm(2, i, j)) - want)) < 1e-12);
        }

    const auto c2 = cube_family(2);
    const auto ec = haar_conditional_expectations(c2, normalized_haar_trace(c2, tol).phi.coeffs, tol);
    const auto nt = cartan_subalgebras(c2, tol).nt;
    for (std::size_t a = 0; a < c2.dim(); ++a)
        CHECK(nt.distance(ec.et.col(a)) < 1e-12);
}

TEST_CASE("generalized Kac conditions")
{
    for (const auto& w : {groupoid_function_algebra(pair_groupoid(2)), cube_family(2),
                          elementary({1, 2})}) {
        const auto phi = normalized_haar_trace(w, tol).phi.coeffs;
        CHECK_REPORT(check_generalized_kac(w, phi, tol), 1e-9);
        CHECK_REPORT(check_generalized_kac(w, w.algebra().regular_trace_coeffs(), tol), 1e-9);
    }
    // a faithful but non-invariant trace: unequal block weights on cube_family(2)
    const auto c2 = cube_family(2);
    CVector phi = normalized_haar_trace(c2, tol).phi.coeffs;
    for (long i = 1; i <= 2; ++i)
        phi(cube_index(2, 1, i, i)) *= 3.0;
    const auto r = check_generalized_kac(c2, phi, tol);
    CHECK(r.max_residual() > 1e-3);
}

TEST_CASE("Kac bimodule recovers the counit")
{
    const auto f = groupoid_function_algebra(pair_groupoid(2));
    const auto kf = check_kac_bimodule(f.algebra_ptr(), f.coproduct_matrix(), f.antipode(), tol);
    REQUIRE(kf.counit);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            CHECK(std::abs((*kf.counit)(pm(2, i, j)) - (i == j ? 1.0 : 0.0)) < 1e-12);

    const std::vector<std::size_t> shape{1, 2};
    const auto m = elementary(shape);
    const auto km = check_kac_bimodule(m.algebra_ptr(), m.coproduct_matrix(), m.antipode(), tol);
    REQUIRE(km.counit);
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b)
            for (std::size_t i = 0; i < shape[a]; ++i)
                for (std::size_t j = 0; j < shape[a]; ++j)
                    for (std::size_t k = 0; k < shape[b]; ++k)
                        for (std::size_t l = 0; l < shape[b]; ++l) {
                            const std::size_t x = elementary_row(shape, a, i, j) * 5 +
                                                  elementary_row(shape, b, k, l);
                            const double want = (i == j && k == l)
                                                    ? std::sqrt(double(shape[a] * shape[b]))
                                                    : 0.0;
                            CHECK(std::abs((*km.counit)(x) - want) < 1e-12);
                        }

    const auto scaled =
        check_kac_bimodule(m.algebra_ptr(), 2.0 * m.coproduct_matrix(), m.antipode(), tol);
    CHECK_FALSE(scaled.report.passed());
    CHECK_FALSE(scaled.report.at("counit_condition").pass);
    CHECK_THROWS_AS(recover_counit_strict(m.algebra_ptr(), 2.0 * m.coproduct_matrix(),
                                          m.antipode(), tol),
                    NotCounital);
}

TEST_CASE("hyper-center and splitting")
{
    const auto m = elementary({1, 2});
    CHECK(hyper_center(m, tol).dim() == 1);
    CHECK_FALSE(decompose_if_split(m, tol).has_value());

    const auto a = groupoid_function_algebra(cyclic_group(2));
    const auto b = groupoid_function_algebra(pair_groupoid(2));
    const auto s = direct_sum(a, b);
    CHECK(hyper_center(s, tol).dim() >= 2);
    const auto parts = decompose_if_split(s, tol);
    REQUIRE(parts.has_value());
    CHECK(parts->first.dim() + parts->second.dim() == 6);
    CHECK_REPORT(verify_weak_kac(parts->first, tol), 1e-12);
    CHECK_REPORT(verify_weak_kac(parts->second, tol), 1e-12);

    CHECK(hyper_center(cube_family(2), tol).dim() == 1);
}

TEST_CASE("morphism checks")
{
    const auto f = groupoid_function_algebra(pair_groupoid(2));
    CHECK_REPORT(check_morphism(f, f, CMatrix::Identity(4, 4), tol), 1e-12);

    const auto q = counital_quotient(f, tol);
    const auto r = check_morphism(f, q.quotient, q.map, tol);
    CHECK_REPORT(r, 1e-12);
    CHECK(r.at("cartan_bijective").pass);

    const auto z = check_morphism(f, f, CMatrix::Zero(4, 4), tol);
    CHECK_FALSE(z.passed());
    CHECK_FALSE(z.at("unital").pass);
}
