#pragma once

// Weak Kac algebras (M, Delta, S, eps) on canonical block algebras, the axiom
// verifier and the derived structures: counital maps, Cartan subalgebras,
// Haar projection and traces, conditional expectations, the counital
// representation, fusion ring, counital quotient and characterizations.

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wka/algebra.hpp"

namespace wka {

/// Row-major flattening of a coefficient matrix of M (x) M and its inverse.
CVector vec(const CMatrix& c);
CMatrix unvec(const CVector& v, std::size_t n);

/// Coproduct as a dim^2 x dim matrix (column x = vec of Delta(e_x)), antipode
/// as a linear matrix, counit as coefficient covector.
class WeakKac {
public:
    WeakKac(AlgebraPtr algebra, CMatrix coproduct, CMatrix antipode, CVector counit);

    const FdAlgebra& algebra() const { return *algebra_; }
    const AlgebraPtr& algebra_ptr() const { return algebra_; }
    std::size_t dim() const { return algebra_->dim(); }

    const CMatrix& coproduct_matrix() const { return delta_; }
    /// T(i, j, k) = coefficient of e_j (x) e_k in Delta(e_i).
    Tensor3 coproduct() const;
    const CMatrix& antipode() const { return s_; }
    const CVector& counit() const { return eps_; }
    Functional counit_functional() const { return Functional(algebra_, eps_); }

    CMatrix delta(const CVector& x) const { return unvec(delta_ * x, dim()); }
    CMatrix delta_basis(std::size_t a) const { return unvec(delta_.col(a), dim()); }
    /// e = Delta(1).
    CMatrix e() const { return delta(algebra_->unit()); }

    WeakKac with_counit(const CVector& eps) const { return WeakKac(algebra_, delta_, s_, eps); }

    std::string name;

private:
    AlgebraPtr algebra_;
    CMatrix delta_;
    CMatrix s_;
    CVector eps_;
};

/// Runs fn over all index tuples when their number is <= 1e5, otherwise over
/// 200 random tuples drawn with a fixed seed.
void for_tuples(const std::vector<std::size_t>& sizes,
                const std::function<void(const std::vector<std::size_t>&)>& fn,
                unsigned seed = 12345);

VerificationReport verify_weak_kac(const WeakKac& w, const Tolerance& tol = {});

struct CounitalMaps {
    CMatrix target; // eps_t = mu (id (x) S) Delta
    CMatrix source; // eps_s = mu (S (x) id) Delta
    VerificationReport report;
};
CMatrix target_counital_map(const AlgebraPtr& a, const CMatrix& delta, const CMatrix& s);
CMatrix source_counital_map(const AlgebraPtr& a, const CMatrix& delta, const CMatrix& s);
CounitalMaps counital_maps(const WeakKac& w, const Tolerance& tol = {});

struct CartanPair {
    SubalgebraBasis ns;
    SubalgebraBasis nt;
    /// e = sum_i x_i (x) y_i with self-adjoint x_i, y_i.
    std::vector<CVector> x;
    std::vector<CVector> y;
    VerificationReport report;
};
/// Throws CartanMismatch when span{x_i} violates the defining relation of N_s.
CartanPair cartan_subalgebras(const WeakKac& w, const Tolerance& tol = {});

/// Solution spaces of the defining equations of N_s and N_t (no counit needed).
SubalgebraBasis source_subalgebra(const AlgebraPtr& a, const CMatrix& delta, const Tolerance& tol);
SubalgebraBasis target_subalgebra(const AlgebraPtr& a, const CMatrix& delta, const Tolerance& tol);

struct HaarProjection {
    AlgElement p;
    /// Support projection of eps from its density matrices.
    CVector support;
    VerificationReport report;
};
/// Throws NoSolution or NonUnique.
HaarProjection haar_projection(const WeakKac& w, const Tolerance& tol = {});
/// Support projection of a positive functional on a canonical algebra.
CVector support_projection(const FdAlgebra& a, const CVector& functional, const Tolerance& tol);

struct CounitalRepresentation {
    /// Basis of N_t carrying the representation and its Gram matrix eps(y_j^* y_i).
    CMatrix space;
    CMatrix gram;
    /// pi(e_a) for each basis element, in the coordinates of `space`.
    std::vector<CMatrix> pi;
    CVector character;
    /// Blocks i of M with nu_i > 0.
    std::vector<std::size_t> support;
    /// nu_i for every block i of M.
    std::vector<long> multiplicities;
    VerificationReport report;
};
/// Throws GramDegenerate when eps is not positive definite on N_t.
CounitalRepresentation counital_representation(const WeakKac& w, const Tolerance& tol = {});

struct FusionTable {
    /// chi_i = trace of the i-th block.
    std::vector<CVector> characters;
    /// n[i][j][k] = multiplicity of pi_k in pi_i x pi_j.
    std::vector<std::vector<std::vector<long>>> n;
    std::vector<std::size_t> involution;
    std::vector<std::size_t> support;
    VerificationReport report;
};
/// Throws NonIntegralMultiplicity.
FusionTable fusion_ring(const WeakKac& w, const Tolerance& tol = {});

struct CounitalQuotient {
    WeakKac quotient;
    /// Matrix of x -> P_eps x into the quotient coordinates.
    CMatrix map;
    std::vector<std::size_t> blocks;
    VerificationReport report;
};
CounitalQuotient counital_quotient(const WeakKac& w, const Tolerance& tol = {});

struct HaarTrace {
    Functional phi;
    VerificationReport report;
};
/// Unique normalized Haar trace; cross_check compares with the Haar
/// projection of the dual. Throws NoSolution or NonUnique.
HaarTrace normalized_haar_trace(const WeakKac& w, const Tolerance& tol = {},
                                bool cross_check = true);

struct HaarCone {
    /// Columns span the (unnormalized) Haar trace solutions.
    CMatrix span;
    /// P_i p of the dual for each counital block i of the dual, as functionals
    /// on M; each is a Haar functional, not necessarily tracial.
    std::vector<CVector> functionals;
    /// Extremal rays of the cone of Haar traces: sums of the functionals over
    /// the classes on which tracial combinations have equal coefficients.
    std::vector<CVector> rays;
    VerificationReport report;
};
HaarCone haar_trace_cone(const WeakKac& w, const Tolerance& tol = {});

struct HaarExpectations {
    CMatrix et;
    CMatrix es;
    CMatrix eo; // onto the relative commutant of N_t
    VerificationReport report;
};
HaarExpectations haar_conditional_expectations(const WeakKac& w, const CVector& phi,
                                               const Tolerance& tol = {});

/// Generalized Kac conditions for a trace phi. Throws NotFaithful / NotTracial.
VerificationReport check_generalized_kac(const AlgebraPtr& a, const CMatrix& delta,
                                         const CMatrix& s, const CVector& phi,
                                         const Tolerance& tol = {});
/// Adds the regular-trace identity and the Delta(p_eps) evaluation checks.
VerificationReport check_generalized_kac(const WeakKac& w, const CVector& phi,
                                         const Tolerance& tol = {});

struct KacBimoduleResult {
    VerificationReport report;
    std::optional<CVector> counit;
    bool preconditions = false;
};
/// Recovers eps = theta_t o eps_t from (M, Delta, S); never throws on
/// failed conditions, they are recorded in the report.
KacBimoduleResult check_kac_bimodule(const AlgebraPtr& a, const CMatrix& delta, const CMatrix& s,
                                     const Tolerance& tol = {});
/// Same, but throws NotCounital when the preconditions fail and returns the
/// counit only when (id (x) eps) Delta = id holds.
CVector recover_counit_strict(const AlgebraPtr& a, const CMatrix& delta, const CMatrix& s,
                              const Tolerance& tol = {});

SubalgebraBasis hyper_center(const WeakKac& w, const Tolerance& tol = {});
/// Restriction to the blocks selected by a central projection.
WeakKac restrict_to_blocks(const WeakKac& w, const std::vector<std::size_t>& blocks);
std::optional<std::pair<WeakKac, WeakKac>> decompose_if_split(const WeakKac& w,
                                                              const Tolerance& tol = {});

/// pi given as a dim(w2) x dim(w1) matrix.
VerificationReport check_morphism(const WeakKac& w1, const WeakKac& w2, const CMatrix& pi,
                                  const Tolerance& tol = {});

/// Identities every weak Kac algebra satisfies beyond the axioms: eps(1) =
/// dim N_t, positivity and bimodule properties of eps_t, the support
/// relations, nondegeneracy of e, and the regular-representation operator
/// identities.
VerificationReport invariant_report(const WeakKac& w, const Tolerance& tol = {});

/// min over commutativity and cocommutativity residuals.
struct Triviality {
    double commutator = 0.0;
    double cocommutator = 0.0;
    double unit_defect = 0.0; // |e - 1 (x) 1|
};
Triviality triviality(const WeakKac& w);

} // namespace wka
