#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "smoothlab/arith.hpp"
#include "smoothlab/dirichlet.hpp"
#include "smoothlab/error.hpp"

using namespace smoothlab;

namespace {

double diagonal(const SupportSet& s, double sigma) {
    double d = 0;
    for (auto n : s.members) d += std::pow(static_cast<double>(n), -2 * sigma);
    return d;
}

}  // namespace

TEST_CASE("support sets") {
    const auto small = build_support(SmoothParams::from_xy(1e4, 10));
    CHECK(small.members == std::vector<uint64_t>{48, 49, 50, 54, 56});

    const auto big = build_support(SmoothParams::from_xy(1e8, 1e4));
    CHECK(big.lo == 465);
    CHECK(big.hi == 1000);
    CHECK(big.size() == 536);  // 1e4 exceeds every prime factor in range
    CHECK(big.members.front() == 465);
    CHECK(big.members.back() == 1000);

    CHECK(build_support(SmoothParams::from_xy(16, 2)).empty());
    CHECK_THROWS_AS(build_support(SmoothParams::from_xy(4, 2)), error);

    // Bounds are exact at integer endpoints: x = 2^12, y = 2^6 gives
    // [64 * 2^{-2}, 64 * 2^{-3/2}] = [16, 22.6].
    const auto exact = build_support(SmoothParams::from_xy(4096, 64));
    CHECK(exact.lo == 16);
    CHECK(exact.hi == 22);

    const auto strict = build_support(SmoothParams::from_xy(1e4, 7), true);
    for (auto n : strict.members) CHECK(is_smooth(n, 7, true));
}

TEST_CASE("synthetic supports") {
    const auto s = SupportSet::from_members({3, 5, 8});
    CHECK(s.lo == 3);
    CHECK(s.hi == 8);
    CHECK_THROWS_AS(SupportSet::from_members({5, 3}), error);
    CHECK_THROWS_AS(SupportSet::from_members({0, 3}), error);
    CHECK(SupportSet::from_members({}).empty());
}

TEST_CASE("M(s) evaluation") {
    const DirichletPoly poly(build_support(SmoothParams::from_xy(1e4, 10)));
    const double m1 = m_eval(poly, {1, 0}).real();
    CHECK(m1 == doctest::Approx(1.0 / 48 + 1.0 / 49 + 1.0 / 50 + 1.0 / 54 + 1.0 / 56).epsilon(1e-14));
    CHECK(m1 == doctest::Approx(0.0976).epsilon(1e-3));
    CHECK(m_eval(poly, {0, 0}).real() == 5);

    std::complex<double> brute = 0;
    const std::complex<double> s{0.5, 1234.5};
    for (auto n : poly.support().members) brute += std::exp(-s * std::log(static_cast<double>(n)));
    CHECK(std::abs(m_eval(poly, s) - brute) <= 1e-12);

    // conj(M(s)) = M(conj(s)) for real coefficients
    CHECK(std::abs(std::conj(m_eval(poly, s)) - m_eval(poly, std::conj(s))) <= 1e-13);
    CHECK(m_eval(DirichletPoly{}, {1, 0}) == std::complex<double>(0, 0));
}

TEST_CASE("M(1) and M(0) bound checks") {
    const auto table = build_rho_table();
    const auto p = SmoothParams::from_xy(1e8, 1e4);
    const DirichletPoly poly(build_support(p));
    const auto r = m1_lower_bound_check(p, poly, table);
    CHECK(r.m1 == doctest::Approx(0.7677).epsilon(1e-3));
    CHECK(r.bound == doctest::Approx(0.3838).epsilon(1e-3));
    CHECK(r.pass);
    CHECK(r.m0 == 536);
    CHECK(r.m0_pass);
}

TEST_CASE("mean square integral") {
    const DirichletPoly one(SupportSet::from_members({7}));
    // |7^{-s}|^2 = 7^{-2 sigma}: exact for Simpson.
    CHECK(mean_square_integral(one, 0.5, -10, 10, 0.01) == doctest::Approx(20.0 / 7).epsilon(1e-12));

    const DirichletPoly two(SupportSet::from_members({2, 3}));
    // |2^{-it} + 3^{-it}|^2 = 2 + 2 cos(t log 1.5)
    const double T = 40;
    const double exact = 2 * T + 2 * std::sin(T * std::log(1.5)) / std::log(1.5);
    CHECK(mean_square_integral(two, 0, 0, T, 0.01) == doctest::Approx(exact).epsilon(1e-9));

    const DirichletPoly poly(build_support(SmoothParams::from_xy(1e4, 10)));
    for (double sigma : {0.0, 0.5, 1.0})
        for (double T : {1e2, 1e3, 1e4}) {
            const double h = default_mean_square_step(poly);
            const double m = mean_square_integral(poly, sigma, -T, T, h);
            CHECK(m <= mv_bound(poly, sigma, T));
            // symmetric window = twice the half window
            CHECK(m == doctest::Approx(2 * mean_square_integral(poly, sigma, 0, T, h)).epsilon(1e-10));
        }
    const double Tr = 100.0 * 56;
    const double ratio = mean_square_integral(poly, 0.5, -Tr, Tr, default_mean_square_step(poly)) /
                         (2 * Tr * diagonal(poly.support(), 0.5));
    CHECK(ratio >= 0.9);
    CHECK(ratio <= 1.1);

    CHECK_THROWS_AS(mean_square_integral(poly, 0, 0, 10, 10.0), error);
    CHECK_THROWS_AS(mean_square_integral(poly, 0, 5, 1, 0.01), error);
    CHECK(mv_bound(poly, 0, 1) == doctest::Approx((2 + kMeanValueKappa * 56) * 5));
}
