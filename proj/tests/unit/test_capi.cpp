#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>
#include <thread>
#include <vector>

#include "smoothlab/smoothlab.h"

TEST_CASE("status codes and errors") {
    CHECK(std::string(sl_status_name(SL_OK)) == "ok");
    CHECK(std::string(sl_status_name(SL_ERR_LOAD)) == "load error");
    uint64_t n = 0;
    CHECK(sl_psi_count(100, 1.5, 0, &n) == SL_ERR_RANGE);
    CHECK(std::string(sl_last_error()).find("y >= 2") != std::string::npos);
    CHECK(sl_psi_count(100, 5, 0, nullptr) == SL_ERR_INVALID_ARGUMENT);
    sl_params p{};
    CHECK(sl_params_from_z(1e4, 10, -1, &p) == SL_ERR_DOMAIN);
    CHECK(std::string(sl_version()).size() > 0);

    // Errors are per thread.
    std::string other;
    std::thread t([&] {
        uint64_t m = 0;
        sl_d3_count(0, &m);
        other = sl_last_error();
    });
    t.join();
    CHECK(other.find("d3") != std::string::npos);
    CHECK(std::string(sl_last_error()).find("d3") == std::string::npos);
}

TEST_CASE("arithmetic through the C API") {
    uint64_t n = 0;
    REQUIRE(sl_psi_count(100, 5, 0, &n) == SL_OK);
    CHECK(n == 34);

    sl_u64_list* spf = nullptr;
    REQUIRE(sl_spf_segment(2, 5, &spf) == SL_OK);
    REQUIRE(sl_u64_list_size(spf) == 5);
    const uint64_t want[] = {2, 3, 2, 5, 2};
    CHECK(std::memcmp(sl_u64_list_data(spf), want, sizeof want) == 0);
    sl_u64_list_free(spf);

    sl_u64_list* found = nullptr;
    REQUIRE(sl_smooth_in_interval(47, 9, 10, 0, 2, &found) == SL_OK);
    CHECK(sl_u64_list_size(found) == 5);
    CHECK(sl_u64_list_data(found)[0] == 48);
    sl_u64_list_free(found);

    uint64_t primes[4];
    uint32_t exps[4];
    size_t count = 0;
    REQUIRE(sl_factorize(360, primes, exps, 4, &count) == SL_OK);
    CHECK(count == 3);
    CHECK(primes[0] == 2);
    CHECK(exps[0] == 3);
    REQUIRE(sl_factorize(2 * 3 * 5 * 7 * 11, primes, exps, 2, &count) == SL_OK);
    CHECK(count == 5);

    int smooth = 0;
    REQUIRE(sl_is_smooth(49, 7, 1, &smooth) == SL_OK);
    CHECK(smooth == 0);
    double lam = 0;
    REQUIRE(sl_von_mangoldt(27, &lam) == SL_OK);
    CHECK(lam == doctest::Approx(std::log(3.0)));
    REQUIRE(sl_d3_count(12, &n) == SL_OK);
    CHECK(n == 18);
    sl_u64_list_free(nullptr);
}

TEST_CASE("rho, support and kernels") {
    sl_rho_table* rho = nullptr;
    REQUIRE(sl_rho_table_new(0, 0, &rho) == SL_OK);
    CHECK(sl_rho_table_step(rho) == 1.0 / 1024);
    CHECK(sl_rho_table_u_max(rho) == 50);
    double v = 0;
    REQUIRE(sl_rho(rho, 2, &v) == SL_OK);
    CHECK(v == doctest::Approx(1 - std::log(2.0)).epsilon(1e-10));
    CHECK(sl_rho(rho, 60, &v) == SL_ERR_RANGE);
    CHECK(sl_rho_table_new(1.0 / 7, 10, &rho) != SL_OK);  // rho untouched on failure

    sl_params p{};
    REQUIRE(sl_params_from_xy(1e8, 1e4, &p) == SL_OK);
    sl_support* s = nullptr;
    REQUIRE(sl_support_build(&p, 0, 1, &s) == SL_OK);
    CHECK(sl_support_size(s) == 536);
    uint64_t lo = 0, hi = 0;
    sl_support_bounds(s, &lo, &hi);
    CHECK(lo == 465);
    CHECK(hi == 1000);
    sl_m1_report m{};
    REQUIRE(sl_m1_check(&p, s, rho, &m) == SL_OK);
    CHECK(m.m1 == doctest::Approx(0.7677).epsilon(1e-3));
    CHECK(m.pass == 1);
    double re = 0, im = 0;
    REQUIRE(sl_m_eval(s, 0, 0, &re, &im) == SL_OK);
    CHECK(re == 536);
    sl_support_free(s);

    const uint64_t members[] = {48, 96};
    REQUIRE(sl_support_from_members(members, 2, &s) == SL_OK);
    double j2 = 0;
    REQUIRE(sl_j2(0.01, s, &j2) == SL_OK);
    CHECK(j2 == doctest::Approx(-0.02 * std::log(2.0) / 96));
    double ms = 0, bound = 0;
    REQUIRE(sl_mean_square(s, 0.5, -100, 100, 0, &ms) == SL_OK);
    REQUIRE(sl_mv_bound(s, 0.5, 100, &bound) == SL_OK);
    CHECK(ms <= bound);
    CHECK(sl_mean_square_default_step(s) > 0);
    sl_support_free(s);
    const uint64_t bad[] = {5, 3};
    CHECK(sl_support_from_members(bad, 2, &s) == SL_ERR_INVALID_ARGUMENT);

    double closed = 0;
    REQUIRE(sl_kernel_closed(SL_KERNEL_SQRT_TENT, 0.1, 1.0, &closed) == SL_OK);
    CHECK(closed == doctest::Approx(0.2));
    REQUIRE(sl_kernel_numeric(SL_KERNEL_LOG, 0, std::exp(1.0), 1.5, 1e4, 0, &re, &im) == SL_OK);
    CHECK(std::fabs(re - 1) <= 1e-3);
    CHECK(sl_kernel_closed(SL_KERNEL_LOG, 0, -1.0, &closed) == SL_ERR_DOMAIN);
    CHECK(sl_kernel_closed(static_cast<sl_kernel_kind>(9), 0.1, 1.0, &closed) == SL_ERR_INVALID_ARGUMENT);

    sl_theorem_z tz{};
    REQUIRE(sl_theorem_z_compute(1e8, 100, 1, rho, &tz) == SL_OK);
    CHECK(tz.z == doctest::Approx(1.3035e5).epsilon(1e-4));
    sl_rho_table_free(rho);
}

TEST_CASE("zeros and the explicit formula") {
    sl_zero_table* z = nullptr;
    CHECK(sl_zero_table_load("/nonexistent/zeros", &z) == SL_ERR_IO);
    REQUIRE(sl_zero_table_load(SMOOTHLAB_ZEROS_FIXTURE, &z) == SL_OK);
    CHECK(sl_zero_table_size(z) >= 100000);
    CHECK(sl_zero_table_data(z)[0] == doctest::Approx(14.134725141734693));
    sl_count_report c{};
    REQUIRE(sl_zero_count_check(z, 100, &c) == SL_OK);
    CHECK(c.n_table == 29);
    CHECK(c.flagged == 0);
    CHECK(c.window_checked == 1);

    sl_params p{};
    REQUIRE(sl_params_from_z(1e6, 50, 1000, &p) == SL_OK);
    sl_support* s = nullptr;
    REQUIRE(sl_support_build(&p, 0, 1, &s) == SL_OK);
    sl_ireport r{};
    REQUIRE(sl_explicit_i(&p, s, z, 1e4, 0, 2, &r) == SL_OK);
    CHECK(r.support_size == 59);
    CHECK(r.analytic == r.main_term - r.zero_sum);
    CHECK(r.relative_gap < 0.2);
    double arith = 0;
    int smooth = 0;
    REQUIRE(sl_arithmetic_side(&p, s, 0, 1, &arith, &smooth) == SL_OK);
    CHECK(arith == r.arithmetic);
    CHECK(smooth == 1);
    double main = 0;
    REQUIRE(sl_main_term(&p, s, &main) == SL_OK);
    CHECK(main == r.main_term);
    sl_zero_sum zs{};
    REQUIRE(sl_zero_sum_i(&p, s, z, 1e4, 1, &zs) == SL_OK);
    CHECK(zs.value == r.zero_sum);
    CHECK(sl_zero_sum_i(&p, s, z, 1e9, 1, &zs) == SL_ERR_RANGE);

    size_t needed = 0;
    REQUIRE(sl_ireport_format(&r, SL_FORMAT_JSON, nullptr, 0, &needed) == SL_OK);
    std::vector<char> buf(needed + 1);
    REQUIRE(sl_ireport_format(&r, SL_FORMAT_JSON, buf.data(), buf.size(), &needed) == SL_OK);
    CHECK(std::string(buf.data()).find("\"relative_gap\":") != std::string::npos);
    REQUIRE(sl_ireport_format(nullptr, SL_FORMAT_CSV_HEADER, nullptr, 0, &needed) == SL_OK);
    std::vector<char> hdr(needed + 1);
    REQUIRE(sl_ireport_format(nullptr, SL_FORMAT_CSV_HEADER, hdr.data(), hdr.size(), &needed) == SL_OK);
    CHECK(std::string(hdr.data()).rfind("x,y,u,", 0) == 0);

    sl_sin_sum ss{};
    REQUIRE(sl_zero_sum_sin(s, z, p.delta, 1e4, &ss) == SL_OK);
    CHECK(ss.bound_applicable == 1);
    CHECK(ss.value >= ss.lower_bound);
    sl_support_free(s);
    sl_zero_table_free(z);
}
