#include "smoothlab/dirichlet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include "smoothlab/arith.hpp"
#include "smoothlab/error.hpp"
#include "smoothlab/summation.hpp"

namespace smoothlab {

namespace {

using u128 = unsigned __int128;

constexpr long double kTwoPi = 2 * std::numbers::pi_v<long double>;

std::optional<u128> checked_pow(u128 base, int e) {
    u128 r = 1;
    for (int i = 0; i < e; ++i) {
        if (base != 0 && r > std::numeric_limits<u128>::max() / base) return std::nullopt;
        r *= base;
    }
    return r;
}

std::optional<u128> checked_mul(std::optional<u128> a, std::optional<u128> b) {
    if (!a || !b) return std::nullopt;
    if (*a != 0 && *b > std::numeric_limits<u128>::max() / *a) return std::nullopt;
    return *a * *b;
}

bool integral(double v) { return std::floor(v) == v && v < 1e15; }

// n^a * y^b compared with x^c using exact 128-bit arithmetic where everything
// is an integer and fits, otherwise in long double logarithms.
int compare_power(std::uint64_t n, int a, double y, int b, double x, int c) {
    if (integral(x) && integral(y)) {
        const auto lhs = checked_mul(checked_pow(n, a), checked_pow(static_cast<u128>(y), b));
        const auto rhs = checked_pow(static_cast<u128>(x), c);
        if (lhs && rhs) return (*lhs > *rhs) - (*lhs < *rhs);
    }
    const long double lhs = a * std::log(static_cast<long double>(n)) +
                            b * std::log(static_cast<long double>(y));
    const long double rhs = c * std::log(static_cast<long double>(x));
    return (lhs > rhs) - (lhs < rhs);
}

// phase mod 2pi, for cos/sin in double precision
double reduce_phase(long double phase) { return static_cast<double>(std::remainder(phase, kTwoPi)); }

}  // namespace

SupportSet SupportSet::from_members(std::vector<std::uint64_t> members) {
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (members[i] == 0) fail(errc::invalid_argument, "support members must be >= 1");
        if (i > 0 && members[i] <= members[i - 1])
            fail(errc::invalid_argument, "support members must be strictly ascending");
    }
    SupportSet s;
    if (!members.empty()) {
        s.lo = members.front();
        s.hi = members.back();
    }
    s.members = std::move(members);
    return s;
}

DirichletPoly::DirichletPoly(SupportSet support) : support_(std::move(support)) {
    logs_.reserve(support_.members.size());
    for (auto n : support_.members) logs_.push_back(std::log(static_cast<long double>(n)));
}

SupportSet build_support(const SmoothParams& params, bool strict, unsigned threads) {
    const long double sx = std::sqrt(static_cast<long double>(params.x));
    const long double lower = sx * std::pow(static_cast<long double>(params.y), -1.0L / 3);
    const long double upper = sx * std::pow(static_cast<long double>(params.y), -0.25L);
    if (lower < 2 - 1e-12L) fail(errc::domain, "support needs sqrt(x) y^{-1/3} >= 2");
    if (upper > static_cast<long double>(kIntegerCeiling))
        fail(errc::range, "support bound exceeds the 2^62 integer ceiling");

    // n >= sqrt(x) y^{-1/3}  <=>  n^6 y^2 >= x^3
    auto ge_lower = [&](std::uint64_t n) { return compare_power(n, 6, params.y, 2, params.x, 3) >= 0; };
    // n <= sqrt(x) y^{-1/4}  <=>  n^4 y <= x^2
    auto le_upper = [&](std::uint64_t n) { return compare_power(n, 4, params.y, 1, params.x, 2) <= 0; };

    auto lo = static_cast<std::uint64_t>(std::ceil(lower));
    while (lo > 2 && ge_lower(lo - 1)) --lo;
    while (!ge_lower(lo)) ++lo;
    auto hi = static_cast<std::uint64_t>(std::floor(upper));
    while (le_upper(hi + 1)) ++hi;
    while (hi > 0 && !le_upper(hi)) --hi;

    SupportSet s;
    s.lo = lo;
    s.hi = hi;
    if (hi >= lo) s.members = smooth_in_range(lo, hi, params.y, strict, threads);
    return s;
}

std::complex<double> m_eval(const DirichletPoly& poly, std::complex<double> s) {
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
        fail(errc::domain, "M(s) needs a finite argument");
    compensated_complex_sum<double> acc;
    const auto& logs = poly.logs();
    for (std::size_t i = 0; i < logs.size(); ++i) {
        const double mag = static_cast<double>(std::exp(-static_cast<long double>(s.real()) * logs[i]));
        const double ph = reduce_phase(static_cast<long double>(s.imag()) * logs[i]);
        acc.add({mag * std::cos(ph), -mag * std::sin(ph)});
    }
    return acc.value();
}

M1Report m1_lower_bound_check(const SmoothParams& params, const DirichletPoly& poly,
                              const RhoTable& rho_table) {
    M1Report r;
    r.m1 = m_eval(poly, {1.0, 0.0}).real();
    r.bound = rho(params.u / 2, rho_table) * std::log(params.y) / 24;
    r.ratio = r.bound > 0 ? r.m1 / r.bound : 0;
    r.pass = !poly.support().empty() && r.m1 >= r.bound;
    r.m0 = static_cast<double>(poly.support().size());
    r.m0_bound = std::sqrt(params.x) * std::pow(params.y, -0.25);
    r.m0_pass = r.m0 <= r.m0_bound;
    return r;
}

double default_mean_square_step(const DirichletPoly& poly) {
    if (poly.support().empty()) return 0.05;
    const double ratio = static_cast<double>(poly.n_max()) / static_cast<double>(poly.n_min());
    return 0.05 / std::log(ratio + 2);
}

double max_mean_square_step(const DirichletPoly& poly) {
    if (poly.support().size() < 2) return std::numeric_limits<double>::infinity();
    const double ratio = static_cast<double>(poly.n_max()) / static_cast<double>(poly.n_min());
    return std::numbers::pi / (4 * std::log(ratio));
}

double mean_square_integral(const DirichletPoly& poly, double sigma, double t_lo, double t_hi,
                            double step) {
    if (!(t_lo < t_hi) || !std::isfinite(t_lo) || !std::isfinite(t_hi))
        fail(errc::range, "mean-square integral needs finite t_lo < t_hi");
    if (!(step > 0)) fail(errc::range, "mean-square step must be positive");
    if (step > max_mean_square_step(poly))
        fail(errc::range, "mean-square step too coarse for the support bandwidth");
    if (poly.support().empty()) return 0.0;

    auto intervals = static_cast<std::size_t>(std::ceil((t_hi - t_lo) / step));
    if (intervals < 2) intervals = 2;
    if (intervals % 2) ++intervals;
    const double h = (t_hi - t_lo) / static_cast<double>(intervals);

    const auto& logs = poly.logs();
    const std::size_t terms = logs.size();
    std::vector<std::complex<double>> rot(terms), cur(terms);
    for (std::size_t i = 0; i < terms; ++i) {
        const double ph = reduce_phase(static_cast<long double>(h) * logs[i]);
        rot[i] = {std::cos(ph), -std::sin(ph)};
    }
    // n^{-sigma - it}, advanced by rotation and re-anchored periodically.
    auto anchor = [&](std::size_t j) {
        const long double t = static_cast<long double>(t_lo) + static_cast<long double>(j) * h;
        for (std::size_t i = 0; i < terms; ++i) {
            const double mag = static_cast<double>(std::exp(-static_cast<long double>(sigma) * logs[i]));
            const double ph = reduce_phase(t * logs[i]);
            cur[i] = {mag * std::cos(ph), -mag * std::sin(ph)};
        }
    };
    constexpr std::size_t kAnchorEvery = 128;

    compensated_sum<double> acc;
    for (std::size_t j = 0; j <= intervals; ++j) {
        if (j % kAnchorEvery == 0) {
            anchor(j);
        } else {
            for (std::size_t i = 0; i < terms; ++i) cur[i] *= rot[i];
        }
        std::complex<double> m{0, 0};
        for (std::size_t i = 0; i < terms; ++i) m += cur[i];
        const double w = (j == 0 || j == intervals) ? 1.0 : (j % 2 ? 4.0 : 2.0);
        acc.add(w * std::norm(m));
    }
    return acc.value() * h / 3;
}

double mv_bound(const DirichletPoly& poly, double sigma, double T) {
    if (!(T > 0)) fail(errc::range, "mv_bound needs T > 0");
    if (poly.support().empty()) return 0.0;
    compensated_sum<double> diag;
    for (auto l : poly.logs()) diag.add(static_cast<double>(std::exp(-2 * sigma * l)));
    return (2 * T + kMeanValueKappa * static_cast<double>(poly.n_max())) * diag.value();
}

}  // namespace smoothlab
