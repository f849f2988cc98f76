#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "smoothlab/arith.hpp"
#include "smoothlab/error.hpp"
#include "smoothlab/explicit_formula.hpp"

using namespace smoothlab;

namespace {

const ZeroTable& fixture() {
    static const ZeroTable t = load_zeros(SMOOTHLAB_ZEROS_FIXTURE);
    return t;
}

// Base prime of a prime power by trial division, else 0.
uint64_t prime_power_base(uint64_t r) {
    if (r < 2) return 0;
    uint64_t p = r;
    for (uint64_t d = 2; d * d <= r; ++d)
        if (r % d == 0) {
            p = d;
            break;
        }
    while (r % p == 0) r /= p;
    return r == 1 ? p : 0;
}

// n-loop oracle: every n in the interval, every ordered divisor pair (m1, m2)
// from the support, r = n / (m1 m2) tested directly.
std::vector<ArithTerm> brute_terms(const SmoothParams& p, const SupportSet& s) {
    std::vector<ArithTerm> out;
    const auto lo = static_cast<uint64_t>(std::ceil(p.x));
    const auto hi = static_cast<uint64_t>(std::floor(p.x + p.z));
    for (uint64_t n = lo; n <= hi; ++n)
        for (uint64_t m1 : s.members) {
            if (n % m1) continue;
            for (uint64_t m2 : s.members) {
                if ((n / m1) % m2) continue;
                if (const uint64_t b = prime_power_base(n / m1 / m2)) out.push_back({n, b, 1});
            }
        }
    return normalize_terms(std::move(out));
}

long double brute_value(const SmoothParams& p, const std::vector<ArithTerm>& terms) {
    long double s = 0;
    const long double x = p.x;
    const long double top = x * std::exp(2.0L * p.delta);
    for (const auto& t : terms) {
        const long double n = static_cast<long double>(t.n);
        const long double w = std::min(std::log(top / n), std::log(n / x));
        if (w > 0) s += w * t.multiplicity * std::log(static_cast<long double>(t.prime));
    }
    return s;
}

// Zero sum from the bottom up in extended precision, no shared helpers.
long double ascending_zero_sum(const SmoothParams& p, const SupportSet& s, double T) {
    using cld = std::complex<long double>;
    const long double lx = std::log(static_cast<long double>(p.x));
    cld total = 0;
    for (double g : fixture().gammas()) {
        if (g > T) break;
        for (int sign : {1, -1}) {
            const long double gam = sign * static_cast<long double>(g);
            const cld rho{0.5L, gam};
            cld m = 0;
            for (auto n : s.members) {
                const long double ln = std::log(static_cast<long double>(n));
                m += std::exp(-0.5L * ln) * cld{std::cos(gam * ln), -std::sin(gam * ln)};
            }
            const cld xr = std::sqrt(static_cast<long double>(p.x)) * cld{std::cos(gam * lx), std::sin(gam * lx)};
            const cld k = (std::exp(static_cast<long double>(p.delta) * rho) - 1.0L) / rho;
            total += m * m * xr * k * k;
        }
    }
    return total.real();
}

}  // namespace

TEST_CASE("arithmetic side equals the n-loop oracle exactly") {
    for (const auto& p : {SmoothParams::from_delta(1e4, 10, 0.005), SmoothParams::from_z(1e6, 50, 1000),
                          SmoothParams::from_z(2e5, 30, 4000)}) {
        CAPTURE(p.x);
        const auto support = build_support(p);
        const auto fast = arithmetic_side(p, support);
        const auto oracle = brute_terms(p, support);
        CHECK(fast.terms == oracle);
        CHECK(fast.value == fold_arithmetic_terms(p, oracle));
        CHECK(static_cast<double>(brute_value(p, oracle)) == doctest::Approx(fast.value).epsilon(1e-13));
        CHECK(fast.value >= 0);
        CHECK(fast.contributors_smooth);
        CHECK(arithmetic_side(p, support, false, 4).value == fast.value);

        // explicit upper bound: 2 delta log(x e^{2 delta}) sum_{smooth n} d3(n)
        double d3sum = 0;
        for (auto n : smooth_in_interval(p.x, p.z, p.y)) d3sum += static_cast<double>(d3_count(n));
        CHECK(fast.value <= 2 * p.delta * std::log(p.x + p.z) * d3sum);

        // doubling every Lambda weight doubles the result
        auto doubled = fast.terms;
        for (auto& t : doubled) t.multiplicity *= 2;
        CHECK(fold_arithmetic_terms(p, doubled) == 2 * fast.value);
    }
}

TEST_CASE("arithmetic side degenerate cases") {
    const auto p = SmoothParams::from_delta(1e4, 10, 0.005);
    CHECK(arithmetic_side_i(p, SupportSet{}) == 0);
    // No r m1 m2 with Lambda(r) > 0 lands in (1e4, 1e4 + 1].
    const auto tiny = SmoothParams::from_z(1e4, 10, 0.5);
    CHECK(arithmetic_side_i(tiny, build_support(tiny)) == 0);
    CHECK(arithmetic_weight(p, 10000) == 0);
    CHECK(arithmetic_weight(p, 10050) == doctest::Approx(std::log(1.005)).epsilon(1e-9));
}

TEST_CASE("main term") {
    const auto p = SmoothParams::from_delta(1e4, 10, 0.005);
    const DirichletPoly poly(build_support(p));
    CHECK(main_term_i(p, poly) == doctest::Approx(2.39e-3).epsilon(5e-3));
    CHECK(main_term_i(p, DirichletPoly{}) == 0);
    const auto q = SmoothParams::from_delta(1e4, 10, 1e-6);
    const double m1 = m_eval(poly, {1, 0}).real();
    CHECK(main_term_i(q, poly) / (1e-12) == doctest::Approx(1e4 * m1 * m1).epsilon(1e-2));
}

TEST_CASE("zero sum against an ascending extended-precision oracle") {
    const auto p = SmoothParams::from_z(1e6, 50, 1000);
    const auto support = build_support(p);
    const DirichletPoly poly(support);
    for (double T : {1e2, 1e3, 1e4}) {
        CAPTURE(T);
        const auto spec = ContourSpec::make(p, T, fixture());
        const auto zs = zero_sum_i(p, poly, fixture(), spec);
        const double oracle = static_cast<double>(ascending_zero_sum(p, support, T));
        CHECK(std::fabs(zs.value - oracle) <= 1e-9 * std::fabs(oracle));
        CHECK(std::fabs(zs.imag_residue) <= 1e-9 * std::fabs(zs.value));
        CHECK(zs.zeros_used == fixture().count_up_to(T));
        CHECK(zs.last_term > 0);
        const auto zs3 = zero_sum_i(p, poly, fixture(), spec, 3);
        CHECK(zs3.value == zs.value);
    }
}

TEST_CASE("zero sum degenerate cases and contour") {
    const auto p = SmoothParams::from_z(1e6, 50, 1000);
    const DirichletPoly poly(build_support(p));
    const auto low = ContourSpec::make(p, 10, fixture());
    CHECK(low.c == doctest::Approx(1 + 1 / std::log(1e6)));
    CHECK(zero_sum_i(p, poly, fixture(), low).value == 0);
    const auto spec = ContourSpec::make(p, 100, fixture());
    CHECK(zero_sum_i(p, DirichletPoly{}, fixture(), spec).value == 0);
    CHECK_THROWS_AS(ContourSpec::make(p, 1e9, fixture()), error);
    CHECK_THROWS_AS(ContourSpec::make(p, 100, ZeroTable{}), error);

    const auto r = i_two_sided(p, SupportSet{}, DirichletPoly{}, fixture(), spec);
    CHECK(r.arithmetic == 0);
    CHECK(r.main_term == 0);
    CHECK(r.zero_sum == 0);
    CHECK(r.analytic == 0);
    CHECK(r.relative_gap == 0);
}

TEST_CASE("two-sided report") {
    const auto p = SmoothParams::from_z(1e6, 50, 1000);
    const auto support = build_support(p);
    const DirichletPoly poly(support);
    const auto spec = ContourSpec::make(p, 1e4, fixture());
    const auto r = i_two_sided(p, support, poly, fixture(), spec);
    CHECK(r.analytic == r.main_term - r.zero_sum);
    CHECK(r.relative_gap == doctest::Approx(std::fabs(r.arithmetic - r.analytic) / r.arithmetic));
    CHECK(r.support_size == 59);
    CHECK(r.leftline_budget > 0);

    const auto json = to_json(r);
    CHECK(json.find("{\"x\":1000000,\"y\":50,") == 0);
    CHECK(json == to_json(i_two_sided(p, support, poly, fixture(), spec, false, 2)));
    const auto row = to_csv_row(r);
    const auto header = csv_header();
    CHECK(std::count(row.begin(), row.end(), ',') == std::count(header.begin(), header.end(), ','));
}

TEST_CASE("sin-weighted zero sum") {
    const auto p = SmoothParams::from_z(1e6, 50, 1000);
    const DirichletPoly poly(build_support(p));
    CHECK(zero_sum_sin(DirichletPoly{}, fixture(), p.delta, 1e4).value == 0);
    double prev = 0;
    for (double T : {50.0, 100.0, 1000.0, 3000.0, 1e4}) {
        const auto s = zero_sum_sin(poly, fixture(), p.delta, T);
        CHECK(s.value >= prev);
        prev = s.value;
    }
    // 1/delta ~ 2001: the bound applies once T covers it.
    const auto s = zero_sum_sin(poly, fixture(), p.delta, 1e4);
    CHECK(s.bound_applicable);
    CHECK(s.value >= s.lower_bound);
    CHECK_FALSE(zero_sum_sin(poly, fixture(), p.delta, 100).bound_applicable);
    CHECK_THROWS_AS(zero_sum_sin(poly, ZeroTable{}, p.delta, 100), error);
}

TEST_CASE("J2 closed form") {
    const double delta = 0.01;
    CHECK(j2_closed_form(delta, SupportSet::from_members({48, 96})) ==
          doctest::Approx(-2 * delta * std::log(2.0) / 96).epsilon(1e-14));
    CHECK(j2_closed_form(delta, SupportSet::from_members({48, 49, 50, 54, 56})) == 0);
    CHECK(j2_closed_form(delta, SupportSet::from_members({})) == 0);
    // 12 = 2^2 * 3: 24 = 2 * 12, 36 = 3 * 12, 48 = 4 * 12, 48 = 2 * 24, 72 = 3 * 24, 72 = 2 * 36
    const double want = -2 * delta *
                        (std::log(2.0) / 24 + std::log(3.0) / 36 + 2 * std::log(2.0) / 48 +
                         (std::log(3.0) + std::log(2.0)) / 72);
    CHECK(j2_closed_form(delta, SupportSet::from_members({12, 24, 36, 48, 72})) ==
          doctest::Approx(want).epsilon(1e-13));

    std::mt19937_64 rng(12345);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<uint64_t> m;
        for (uint64_t n = 2; n < 400; ++n)
            if (rng() % 7 == 0) m.push_back(n);
        CHECK(j2_closed_form(delta, SupportSet::from_members(m)) <= 0);
    }
    const auto p = SmoothParams::from_xy(1e8, 1e4);
    const auto sp = SmoothParams::from_delta(1e8, 1e4, 1e-3);
    CHECK(j2_closed_form(sp, build_support(p)) < 0);
}

TEST_CASE("theorem-mode interval length") {
    const auto table = build_rho_table();
    const auto t = theorem_z(1e8, 100, 1, table);
    CHECK(t.u == doctest::Approx(4));
    CHECK(t.rho_half_u == doctest::Approx(1 - std::log(2.0)).epsilon(1e-10));
    CHECK(t.z == doctest::Approx(4e4 / (1 - std::log(2.0))).epsilon(1e-9));
    CHECK(t.z == doctest::Approx(1.3035e5).epsilon(1e-4));
    CHECK(std::fabs(t.x * std::exp(2 * t.delta) - (t.x + t.z)) <= 1e-12 * (t.x + t.z));
    CHECK_FALSE(t.in_range);

    const auto sq = theorem_z(1e10, 1e5, 1, table);
    CHECK(sq.z == doctest::Approx(2e5).epsilon(1e-12));
    CHECK(theorem_z(1e8, 100, 2, table).z == doctest::Approx(2 * t.z).epsilon(1e-15));

    CHECK_THROWS_AS(theorem_z(10, 100, 1, table), error);
    CHECK_THROWS_AS(theorem_z(1e8, 100, 0, table), error);
    CHECK_THROWS_AS(theorem_z(std::pow(2.0, 200), 2, 1, table), error);  // u/2 = 100 > u_max

    const auto wide = build_rho_table(1.0 / 64, 140);
    try {
        theorem_z(std::pow(2.0, 270), 2, 1, wide);
        FAIL("expected a precision error");
    } catch (const error& e) {
        CHECK(e.code() == errc::precision);
    }
}
