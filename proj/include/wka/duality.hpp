#pragma once

// The dual weak Kac algebra through the canonical pairing, the convolution
// unit of a Haar trace, the counit recovered from a Haar trace and biduality.

#include "wka/weak_kac.hpp"

namespace wka {

struct DualResult {
    WeakKac dual;
    /// Column j holds the coefficients (on the basis of M) of the functional
    /// realized by the canonical basis element j of the dual.
    CMatrix pairing;
    CMatrix pairing_inverse;
};

/// Throws GramDegenerate when the GNS form built from p_eps is degenerate.
DualResult dual_with_pairing(const WeakKac& w, const Tolerance& tol = {});
WeakKac dual(const WeakKac& w, const Tolerance& tol = {});

/// <Delta^(alpha), x (x) y> = <alpha, xy> and <alpha beta, x> = <alpha (x) beta, Delta(x)>
/// plus the remaining transported structure, on random elements.
VerificationReport check_pairing(const WeakKac& w, const DualResult& d, const Tolerance& tol = {},
                                 unsigned seed = 11);

/// Map A -> dual(B) sending a to the functional b -> a^T p b, where the
/// second argument is the pairing matrix p (dim A x dim B).
CMatrix pairing_isomorphism(const DualResult& dual_of_b, const CMatrix& p);

struct ConvolutionUnit {
    CVector unit;
    VerificationReport report;
};
/// Unit of y1 * y2 defined by phi(x (y1 * y2)) = (phi (x) phi)(Delta(x)(y1 (x) y2)).
/// Throws NoUnit.
ConvolutionUnit convolution_unit(const AlgebraPtr& a, const CMatrix& delta, const CMatrix& s,
                                 const CVector& phi, const Tolerance& tol = {});
/// eps(x) = phi(1^ x).
CVector counit_from_haar(const AlgebraPtr& a, const CMatrix& delta, const CMatrix& s,
                         const CVector& phi, const Tolerance& tol = {});
WeakKac generalized_to_weak(const AlgebraPtr& a, const CMatrix& delta, const CMatrix& s,
                            const CVector& phi, const Tolerance& tol = {});

struct BidualityResult {
    VerificationReport report;
    /// dim x dim matrix of w -> dual(dual(w)).
    CMatrix iso;
};
BidualityResult biduality_isomorphism(const WeakKac& w, const Tolerance& tol = {});

} // namespace wka
