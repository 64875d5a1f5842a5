#include "support.hpp"

#include "wka/tensor.hpp"

using namespace wka;
using wka::testing::random_matrix;
using wka::testing::random_vector;

TEST_CASE("kron of identities is the identity")
{
    const CMatrix i2 = CMatrix::Identity(2, 2);
    CHECK(max_abs(CMatrix(kron(i2, i2) - CMatrix::Identity(4, 4))) == 0.0);
}

TEST_CASE("kron of rank-one diagonals")
{
    CMatrix a = CMatrix::Zero(2, 2), b = CMatrix::Zero(2, 2);
    a(0, 0) = 1.0;
    b(1, 1) = 1.0;
    CMatrix want = CMatrix::Zero(4, 4);
    want(1, 1) = 1.0;
    CHECK(max_abs(CMatrix(kron(a, b) - want)) == 0.0);
}

TEST_CASE("kron of matrix units follows lexicographic index arithmetic")
{
    // e_12 (x) e_21: row (i, k) -> 2 i + k, column (j, l) -> 2 j + l
    CMatrix a = CMatrix::Zero(2, 2), b = CMatrix::Zero(2, 2);
    a(0, 1) = 1.0;
    b(1, 0) = 1.0;
    const CMatrix k = kron(a, b);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
            const int i = r / 2, kk = r % 2, j = c / 2, l = c % 2;
            const double want = (i == 0 && j == 1 && kk == 1 && l == 0) ? 1.0 : 0.0;
            CHECK(k(r, c) == cplx(want));
        }
}

TEST_CASE("kron is bilinear and associative on random triples")
{
    std::mt19937_64 rng(1);
    for (int t = 0; t < 10; ++t) {
        CMatrix a = random_matrix(2, 3, rng), b = random_matrix(3, 2, rng),
                c = random_matrix(2, 2, rng), a2 = random_matrix(2, 3, rng);
        const cplx s(0.3, -1.2);
        CHECK(max_abs(CMatrix(kron(CMatrix(kron(a, b)), c) - kron(a, CMatrix(kron(b, c))))) <
              1e-12);
        CHECK(max_abs(CMatrix(kron(CMatrix(s * a + a2), b) - (s * kron(a, b) + kron(a2, b)))) <
              1e-12);
    }
}

TEST_CASE("rank factorization of a product tensor has rank one")
{
    std::mt19937_64 rng(2);
    const CVector v = random_vector(3, rng), w = random_vector(4, rng);
    const CMatrix t = v * w.transpose();
    const auto f = rank_factorization(t, Tolerance{});
    CHECK(f.rank() == 1);
    CHECK(max_abs(CMatrix(f.reconstruct(3, 4) - t)) < 1e-12);
}

TEST_CASE("rank factorization of e for the function algebra of K2")
{
    // basis d_(1,1), d_(1,2), d_(2,1), d_(2,2); e = sum over composable pairs
    // (x, y) with s(x) = t(y) of d_x (x) d_y
    CMatrix e = CMatrix::Zero(4, 4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                e(i * 2 + j, j * 2 + k) = 1.0;
    // brute-force rank: count independent rows by elimination on this 0/1 matrix
    Eigen::FullPivLU<CMatrix> lu(e);
    CHECK(lu.rank() == 2);
    CHECK(rank_factorization(e, Tolerance{}).rank() == 2);
}

TEST_CASE("rank factorization of a unital coproduct is 1 (x) 1")
{
    const CMatrix e = CMatrix::Ones(4, 1) * CMatrix::Ones(1, 4);
    CHECK(rank_factorization(e, Tolerance{}).rank() == 1);
}

TEST_CASE("rank factorization reconstructs random low-rank tensors")
{
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> rk(1, 4);
    for (int t = 0; t < 100; ++t) {
        const int r = rk(rng);
        const CMatrix m = random_matrix(6, r, rng) * random_matrix(r, 5, rng);
        const auto f = rank_factorization(m, Tolerance{});
        CHECK(f.rank() == static_cast<std::size_t>(r));
        CHECK(max_abs(CMatrix(f.reconstruct(6, 5) - m)) <= 1e-9 * std::max(1.0, max_abs(m)));
    }
}

TEST_CASE("self-adjoint rank factorization returns self-adjoint factors")
{
    // star = entrywise conjugation; t = sum of x_i (x) x_i with real x_i
    std::mt19937_64 rng(4);
    std::normal_distribution<double> g;
    CMatrix t = CMatrix::Zero(4, 4);
    for (int i = 0; i < 2; ++i) {
        CVector x(4);
        for (auto& c : x)
            c = g(rng);
        t += x * x.transpose();
    }
    const Involution conj = [](const CVector& v) { return CVector(v.conjugate()); };
    const auto f = rank_factorization(t, Tolerance{}, conj);
    CHECK(f.rank() == 2);
    for (std::size_t i = 0; i < f.rank(); ++i) {
        CHECK(max_abs(CVector(f.left[i] - f.left[i].conjugate())) < 1e-10);
        CHECK(max_abs(CVector(f.right[i] - f.right[i].conjugate())) < 1e-10);
    }
    CHECK(max_abs(CMatrix(f.reconstruct(4, 4) - t)) < 1e-10);
}

TEST_CASE("affine space without constraints is the whole space")
{
    const auto s = solve_affine_space({{CMatrix::Zero(1, 3), CVector::Zero(1)}}, Tolerance{});
    CHECK(s.dimension() == 3);
}

TEST_CASE("affine space of a square regular system is a point")
{
    CMatrix a(2, 2);
    a << 1, 1, 1, -1;
    CVector b(2);
    b << 1, 1;
    const auto s = solve_affine_space({{a, b}}, Tolerance{});
    CHECK(s.unique());
    CHECK(std::abs(s.particular(0) - 1.0) < 1e-12);
    CHECK(std::abs(s.particular(1)) < 1e-12);
}

TEST_CASE("Haar projection equations of the group algebra of Z2 have one solution")
{
    // basis (1, g); x Lambda = eps(x) Lambda with eps(g) = 1, plus eps(Lambda) = 1
    // Lambda = a + b g: g Lambda = b + a g = Lambda -> a = b; eps: a + b = 1
    CMatrix lg(2, 2);
    lg << 0, 1, 1, 0;
    CMatrix eq = lg - CMatrix::Identity(2, 2);
    CMatrix norm(1, 2);
    norm << 1, 1;
    const auto s =
        solve_affine_space({{eq, CVector::Zero(2)}, {norm, CVector::Ones(1)}}, Tolerance{});
    CHECK(s.unique());
    // brute force over a grid of the 2-dim coefficient space
    double best = 1e9, ba = 0, bb = 0;
    for (int i = 0; i <= 100; ++i)
        for (int j = 0; j <= 100; ++j) {
            const double a = i / 100.0, b = j / 100.0;
            const double r = std::abs(b - a) + std::abs(a + b - 1.0);
            if (r < best)
                best = r, ba = a, bb = b;
        }
    CHECK(std::abs(s.particular(0) - ba) < 1e-12);
    CHECK(std::abs(s.particular(1) - bb) < 1e-12);
}

TEST_CASE("inconsistent systems throw and reported solutions solve the system")
{
    CMatrix a(2, 1);
    a << 1, 1;
    CVector b(2);
    b << 0, 1;
    CHECK_THROWS_AS(solve_affine_space({{a, b}}, Tolerance{}), Inconsistent);

    std::mt19937_64 rng(5);
    for (int t = 0; t < 20; ++t) {
        const CMatrix m = random_matrix(3, 5, rng);
        const CVector rhs = m * random_vector(5, rng);
        const auto s = solve_affine_space({{m, rhs}}, Tolerance{});
        CHECK(s.dimension() == 2);
        CHECK(max_abs(CVector(m * s.particular - rhs)) <= 1e-9 * std::max(1.0, max_abs(rhs)));
        CHECK(max_abs(CMatrix(m * s.null_basis)) <= 1e-9 * max_abs(m));
    }
}

TEST_CASE("inconsistency is raised only above ten times the tolerance")
{
    CMatrix a(2, 1);
    a << 1, 1;
    CVector b(2);
    const Tolerance tol(1e-6);
    b << 0, 2e-6; // least-squares residual 1e-6 < 10 * 1e-6
    CHECK_NOTHROW(solve_affine_space({{a, b}}, tol));
    b << 0, 1e-4;
    CHECK_THROWS_AS(solve_affine_space({{a, b}}, tol), Inconsistent);
}
