#pragma once

// Concrete weak Kac algebras: groupoid algebras and their duals, elementary
// algebras with their twists and duals, crossed products by finite group
// actions, the n^3 family, tensor products and direct sums.

#include <random>
#include <string>
#include <vector>

#include "wka/groupoid.hpp"
#include "wka/weak_kac.hpp"

namespace wka {

/// A weak Kac algebra built on a construction basis and realized on a
/// canonical block algebra.
struct Realized {
    WeakKac w;
    /// Column a holds the construction-basis coordinates of the canonical e_a.
    CMatrix iso;
    CMatrix iso_inverse;
};

/// CG with Delta(g) = g (x) g, S(g) = g^-1, eps(g) = 1. Principal groupoids are
/// realized exactly (a morphism from unit j to unit i is the matrix unit
/// e_ij of its component); the rest through Wedderburn realization.
Realized groupoid_algebra_realized(const Groupoid& g, const Tolerance& tol = {});
WeakKac groupoid_algebra(const Groupoid& g, const Tolerance& tol = {});

/// C(G) on point masses: Delta(d_g) = sum_{xy=g} d_x (x) d_y, S(d_g) = d_{g^-1},
/// eps(d_g) = [g is a unit].
WeakKac groupoid_function_algebra(const Groupoid& g);

/// Elementary weak Kac algebra M(A) on M_n, n = sum n_a^2.
WeakKac elementary(const std::vector<std::size_t>& shape);

/// Composite row index of (alpha, i, j) in M(A): rows are ordered by alpha,
/// then i, then j.
std::size_t elementary_row(const std::vector<std::size_t>& shape, std::size_t alpha,
                           std::size_t i, std::size_t j);

struct TwistedElementary {
    WeakKac w;
    std::vector<std::size_t> shape;
    /// lambda(alpha, beta).
    CMatrix lambda;
};

/// Delta~ = lambda_a^b Delta on E^{kl b}_{ij a}; S and eps are the ones making
/// E -> lambda_a^b E an isomorphism from M(A). Throws InvalidCocycle.
TwistedElementary elementary_twist(const std::vector<std::size_t>& shape, const CMatrix& lambda,
                                   const Tolerance& tol = {});
/// M(A) -> twisted: E^{kl b}_{ij a} -> lambda_a^b E^{kl b}_{ij a}.
CMatrix twist_isomorphism(const TwistedElementary& t);
/// twisted -> M(A): the inverse map, E -> conj(lambda_a^b) E.
CMatrix untwist_isomorphism(const TwistedElementary& t);
/// lambda_a^b = mu_a conj(mu_b) for random phases mu.
CMatrix random_cocycle(std::size_t blocks, std::mt19937_64& rng);

/// Dual of M(A) on comatrix units, block shape (n_a n_b) over pairs (a, b).
WeakKac dual_elementary(const std::vector<std::size_t>& shape);
/// Pairing matrix <e^_x, E_y> between the canonical basis of
/// dual_elementary(shape) and that of elementary(shape).
CMatrix dual_elementary_pairing(const std::vector<std::size_t>& shape);

/// Right action of a finite group: maps[g] is the matrix of m -> m <| g.
struct GroupAction {
    Groupoid group;
    std::vector<CMatrix> maps;
};

GroupAction trivial_action(const WeakKac& w, const Groupoid& group);
/// Z/n acting on C(K_n) by d_(i,j) <| g = d_(i+1,j+1).
GroupAction shift_action(std::size_t n);

/// Automorphism, Delta/S/eps compatibility per group element and the
/// right-action law.
VerificationReport validate_action(const WeakKac& w, const GroupAction& act,
                                   const Tolerance& tol = {});

/// Construction basis m (x) g with index g * dim(w) + a. Throws InvalidAction.
Realized crossed_product_realized(const WeakKac& w, const GroupAction& act,
                                  const Tolerance& tol = {});
WeakKac crossed_product(const WeakKac& w, const GroupAction& act, const Tolerance& tol = {});

/// The n^3-dimensional family on n copies of M_n with matrix units f^k_ij.
WeakKac cube_family(std::size_t n);
/// Canonical index of f^k_ij (1-based k, i, j, reduced modulo n into 1..n).
std::size_t cube_index(std::size_t n, long k, long i, long j);
/// f^k_ij -> (d_(j,j+k), g^(j-i)) as a map from cube_family(n) to the
/// canonical basis of the crossed product cp.
CMatrix cube_to_crossed_product(std::size_t n, const Realized& cp);

WeakKac tensor_product(const WeakKac& a, const WeakKac& b);
WeakKac direct_sum(const WeakKac& a, const WeakKac& b);

/// Groupoid algebras and function algebras of Z/2, Z/3, K_2, K_3 and
/// Z/2 |_| {u}; elementary algebras and their duals for the shapes
/// (1), (1,1), (1,1,1), (1,2), (2); cube_family(2..4); three crossed
/// products; five random twists. Duals of all of these when requested.
std::vector<WeakKac> catalog(bool with_duals, unsigned seed = 2024, const Tolerance& tol = {});

} // namespace wka
