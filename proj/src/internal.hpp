#pragma once

// Helpers shared by the wka-core and duality sources.

#include <random>
#include <vector>

#include "wka/weak_kac.hpp"

namespace wka::detail {

/// Delta(e_x) for every basis element.
std::vector<CMatrix> coproduct_slices(const CMatrix& delta, std::size_t n);

/// Max entry of a - b where empty blocks count as zero.
double block_diff(const std::vector<CMatrix>& a, const std::vector<CMatrix>& b);

/// Coassociativity, multiplicativity, *-compatibility and injectivity of
/// Delta; antimultiplicativity, involutivity, unitality, *-compatibility and
/// coproduct compatibility of S.
void add_bialgebra_checks(VerificationReport& rep, const FdAlgebra& a, const CMatrix& delta,
                          const std::vector<CMatrix>& c, const CMatrix& s, const Tolerance& tol);

/// G(a, b) = f(e_a e_b).
CMatrix product_form(const FdAlgebra& a, const CVector& f);

CVector random_vector(std::mt19937_64& rng, Eigen::Index n);

/// Solution space {x : m x = 0} as a subalgebra basis.
SubalgebraBasis solution_subalgebra(const AlgebraPtr& a, const CMatrix& m, const Tolerance& tol);

/// Tolerance for rank decisions on stacked constraint systems.
Tolerance rank_tol(const Tolerance& tol);

} // namespace wka::detail
