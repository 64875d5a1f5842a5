#include "support.hpp"

#include "wka/constructors.hpp"
#include "wka/duality.hpp"

using namespace wka;

namespace {

const Tolerance tol;

const std::vector<WeakKac>& members()
{
    static const std::vector<WeakKac> cat = catalog(false);
    return cat;
}

} // namespace

TEST_CASE("structural invariants hold on every catalog member")
{
    for (const auto& w : members()) {
        INFO(w.name);
        // eps(1) = dim N_t, positivity identity, bimodule map, supports, RL identities
        CHECK_REPORT(invariant_report(w, tol), 1e-8);
    }
}

TEST_CASE("counital maps, Cartan subalgebras and Haar data on every catalog member")
{
    for (const auto& w : members()) {
        INFO(w.name);
        CHECK_REPORT(counital_maps(w, tol).report, 1e-8);
        CHECK_REPORT(cartan_subalgebras(w, tol).report, 1e-8);
        CHECK_REPORT(haar_projection(w, tol).report, 1e-8);
        CHECK_REPORT(haar_trace_cone(w, tol).report, 1e-8);
        CHECK_REPORT(counital_quotient(w, tol).report, 1e-8);
    }
}

TEST_CASE("Haar projection is the unique solution with x p = eps_t(x) p")
{
    for (const auto& w : members()) {
        INFO(w.name);
        const CVector p = haar_projection(w, tol).p.coeffs;
        const CMatrix et = counital_maps(w, tol).target;
        double worst = 0.0;
        for (std::size_t a = 0; a < w.dim(); ++a) {
            const CVector x = w.algebra().basis(a);
            worst = std::max(worst, max_abs(CVector(w.algebra().multiply(x, p) -
                                                    w.algebra().multiply(et * x, p))));
        }
        CHECK(worst <= 1e-8);
        CHECK(max_abs(CVector(w.antipode() * p - p)) <= 1e-8);
    }
}

TEST_CASE("ideals of the form M p_eps have dimension dim N_t")
{
    for (const auto& w : members()) {
        INFO(w.name);
        const CVector p = haar_projection(w, tol).p.coeffs;
        CMatrix ideal(w.dim(), w.dim());
        for (std::size_t a = 0; a < w.dim(); ++a)
            ideal.col(a) = w.algebra().multiply(w.algebra().basis(a), p);
        CHECK(numerical_rank(ideal, tol) == cartan_subalgebras(w, tol).nt.dim());
    }
}

TEST_CASE("random direct sums and tensor products remain weak Kac algebras")
{
    std::mt19937_64 rng(17);
    const std::vector<WeakKac> small = {groupoid_function_algebra(cyclic_group(2)),
                                        groupoid_algebra(pair_groupoid(2), tol),
                                        elementary({1, 1}), dual_elementary({1, 1}),
                                        groupoid_algebra(cyclic_group(3), tol)};
    std::uniform_int_distribution<std::size_t> pick(0, small.size() - 1);
    for (int t = 0; t < 6; ++t) {
        const auto& a = small[pick(rng)];
        const auto& b = small[pick(rng)];
        const auto w = t % 2 ? direct_sum(a, b) : tensor_product(a, b);
        INFO(w.name);
        CHECK_REPORT(verify_weak_kac(w, tol), 1e-8);
        CHECK_REPORT(invariant_report(w, tol), 1e-8);
    }
}
