#include <doctest.h>

#include <cmath>

#include "smoothlab/error.hpp"
#include "smoothlab/kernels.hpp"

using namespace smoothlab;

namespace {

constexpr KernelSpec kLog{KernelKind::log, 0};
constexpr KernelSpec kMin{KernelKind::minlog, 0.1};
constexpr KernelSpec kTent{KernelKind::sqrt_tent, 0.1};

double numeric(const KernelSpec& k, double xi, double c, double T = 1e4) {
    return kernel_numeric(k, xi, c, T, kernel_max_step(k, xi)).value;
}

}  // namespace

TEST_CASE("closed forms") {
    CHECK(kernel_closed(kLog, std::exp(1.0)) == doctest::Approx(1));
    CHECK(kernel_closed(kLog, 0.5) == 0);
    CHECK(kernel_closed(kMin, std::exp(-0.1)) == doctest::Approx(0.1));
    CHECK(kernel_closed(kTent, 1.0) == doctest::Approx(0.2));
    CHECK(kernel_closed(kMin, 0.5) == 0);
    CHECK(kernel_closed(kMin, 1.0) == 0);
    CHECK(kernel_closed(kMin, std::exp(-0.2)) == doctest::Approx(0).epsilon(1e-15));
    CHECK_THROWS_AS(kernel_closed(kLog, 0), error);
    CHECK_THROWS_AS(kernel_closed(kLog, -1), error);
    CHECK_THROWS_AS(kernel_closed({KernelKind::minlog, 0}, 1), error);
}

TEST_CASE("closed-form symmetries") {
    for (double lx = -0.2; lx <= 0; lx += 0.013) {
        const double xi = std::exp(lx);
        CHECK(kernel_closed(kMin, xi) == doctest::Approx(kernel_closed(kMin, std::exp(-0.2) / xi)));
    }
    for (double lx = 0; lx <= 0.25; lx += 0.017)
        CHECK(kernel_closed(kTent, std::exp(lx)) / std::exp(lx / 2) ==
              doctest::Approx(kernel_closed(kTent, std::exp(-lx)) / std::exp(-lx / 2)));
}

TEST_CASE("line integrals reproduce the closed forms") {
    const double T = 1e4;
    CHECK(std::fabs(numeric(kLog, std::exp(1.0), 1.5) - 1) <= 10 / T);
    CHECK(std::fabs(numeric(kMin, 1.0, 1.1)) <= 10 / T);
    CHECK(std::fabs(numeric(kTent, std::exp(0.1), 1.1) - std::exp(0.05) * 0.1) <= 10 / T);

    // Away from kinks the error sits far inside the envelope.
    for (double xi : {0.3, 0.85, 0.9, 0.95, 1.05, 1.2, 3.0}) {
        CAPTURE(xi);
        for (const auto& k : {kLog, kMin, kTent}) {
            const auto r = kernel_numeric(k, xi, 1.1, T, kernel_max_step(k, xi));
            const double env = 20 * (1 + std::pow(xi, 1.1)) / T;
            CHECK(std::fabs(r.value - kernel_closed(k, xi)) <= env);
            CHECK(std::fabs(r.imag) <= env);
        }
    }
}

TEST_CASE("independence from the abscissa") {
    const double T = 1e4;
    for (double xi : {0.88, 0.93, 1.07}) {
        for (const auto& k : {kLog, kMin, kTent}) {
            const double env = 20 * (1 + std::pow(xi, 2.0)) / T;
            CHECK(std::fabs(numeric(k, xi, 1.1) - numeric(k, xi, 2.0)) <= 2 * env);
        }
    }
}

TEST_CASE("precondition checks") {
    CHECK_THROWS_AS(kernel_numeric(kTent, 1.0, 0.5, 100, 0.01), error);
    CHECK_THROWS_AS(kernel_numeric(kLog, 1.0, 0.0, 100, 0.01), error);
    CHECK_THROWS_AS(kernel_numeric(kLog, 1.0, 1.1, -1, 0.01), error);
    CHECK_THROWS_AS(kernel_numeric(kLog, 1.0, 1.1, 100, 0.5), error);
    CHECK_NOTHROW(kernel_numeric(kTent, 1.0, 0.6, 100, kernel_max_step(kTent, 1.0)));
    CHECK(kernel_max_step(kLog, std::exp(3.0)) == doctest::Approx(0.1 / 3));
}
