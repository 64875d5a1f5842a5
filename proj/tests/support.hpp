#pragma once

#include <random>
#include <string>

#include <doctest.h>

#include "wka/report.hpp"
#include "wka/tensor.hpp"

namespace wka::testing {

/// Flags must pass; thresholded checks are judged against `limit`.
inline bool passes_at(const VerificationReport& r, double limit)
{
    for (const auto& [name, c] : r.checks()) {
        if (c.flag ? !c.pass : !(c.residual <= limit))
            return false;
    }
    return true;
}

inline std::string failures(const VerificationReport& r) { return r.to_text(); }

inline CVector random_vector(std::size_t n, std::mt19937_64& rng)
{
    std::normal_distribution<double> g;
    CVector v(static_cast<Eigen::Index>(n));
    for (auto& x : v)
        x = cplx(g(rng), g(rng));
    return v;
}

inline CMatrix random_matrix(std::size_t r, std::size_t c, std::mt19937_64& rng)
{
    std::normal_distribution<double> g;
    CMatrix m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            m(i, j) = cplx(g(rng), g(rng));
    return m;
}

} // namespace wka::testing

#define CHECK_REPORT(report, limit) \
    do { \
        const auto& rep_ = (report); \
        INFO(rep_.to_text()); \
        CHECK(::wka::testing::passes_at(rep_, (limit))); \
    } while (0)
