#include "smoothlab/explicit_formula.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "smoothlab/arith.hpp"
#include "smoothlab/error.hpp"
#include "smoothlab/json_writer.hpp"
#include "smoothlab/parallel.hpp"
#include "smoothlab/summation.hpp"

namespace smoothlab {

namespace {

constexpr long double kTwoPiL = 2 * std::numbers::pi_v<long double>;
constexpr std::size_t kZeroBlock = 2048;

// gamma * log_x reduced mod 2 pi. Beyond 1e8 the product is formed in
// double-double so the reduction does not lose the phase.
double phase_mod_2pi(double gamma, long double log_x) {
    const long double p = static_cast<long double>(gamma) * log_x;
    if (std::fabs(p) <= 1e8L) return static_cast<double>(std::remainder(p, kTwoPiL));
    const double lh = static_cast<double>(log_x);
    const double ll = static_cast<double>(log_x - lh);
    const double ph = gamma * lh;
    const double pl = std::fma(gamma, lh, -ph) + gamma * ll;
    constexpr double two_pi_hi = 6.283185307179586;
    constexpr double two_pi_lo = 2.4492935982947064e-16;
    const double k = std::nearbyint(ph / two_pi_hi);
    double r = std::fma(-k, two_pi_hi, ph);
    r = (r - k * two_pi_lo) + pl;
    return std::remainder(r, 2 * std::numbers::pi);
}

// e^{a + ib} - 1 without cancellation for small a, b.
std::complex<double> exp_minus_one(double a, double b) {
    const double em = std::expm1(a);
    const double half = std::sin(b / 2);
    return {em * std::cos(b) - 2 * half * half, (1 + em) * std::sin(b)};
}

// M(1/2 + i t) from precomputed n^{-1/2} and log n.
std::complex<double> m_half_line(const std::vector<double>& inv_sqrt,
                                 const std::vector<long double>& logs, double t) {
    compensated_complex_sum<double> acc;
    for (std::size_t i = 0; i < logs.size(); ++i) {
        const double ph = static_cast<double>(std::remainder(static_cast<long double>(t) * logs[i], kTwoPiL));
        acc.add({inv_sqrt[i] * std::cos(ph), -inv_sqrt[i] * std::sin(ph)});
    }
    return acc.value();
}

std::vector<double> inverse_square_roots(const DirichletPoly& poly) {
    std::vector<double> v;
    v.reserve(poly.support().size());
    for (auto n : poly.support().members) v.push_back(1.0 / std::sqrt(static_cast<double>(n)));
    return v;
}

void require_zeros(const ZeroTable& zeros) {
    if (zeros.empty()) fail(errc::invalid_argument, "zero table is empty");
}

}  // namespace

ContourSpec ContourSpec::make(const SmoothParams& params, double t_zeros, const ZeroTable& zeros) {
    require_zeros(zeros);
    if (!(t_zeros > 0) || !std::isfinite(t_zeros))
        fail(errc::range, "zero truncation height must be positive");
    if (t_zeros > zeros.max_height())
        fail(errc::range, "zero truncation height beyond the loaded table");
    ContourSpec spec;
    spec.c = 1 + 1 / std::log(params.x);
    spec.t_zeros = t_zeros;
    return spec;
}

double arithmetic_weight(const SmoothParams& params, std::uint64_t n) {
    const long double x = params.x;
    const long double l = std::log1p((static_cast<long double>(n) - x) / x);
    const long double two_delta = 2.0L * params.delta;
    if (l < 0 || l > two_delta) return 0.0;
    return static_cast<double>(std::max(0.0L, std::min(two_delta - l, l)));
}

std::vector<ArithTerm> normalize_terms(std::vector<ArithTerm> terms) {
    std::sort(terms.begin(), terms.end(), [](const ArithTerm& a, const ArithTerm& b) {
        return a.n != b.n ? a.n < b.n : a.prime < b.prime;
    });
    std::vector<ArithTerm> out;
    for (const auto& t : terms) {
        if (!out.empty() && out.back().n == t.n && out.back().prime == t.prime)
            out.back().multiplicity += t.multiplicity;
        else
            out.push_back(t);
    }
    return out;
}

double fold_arithmetic_terms(const SmoothParams& params, std::span<const ArithTerm> terms) {
    compensated_sum<double> acc;
    for (const auto& t : terms)
        acc.add(arithmetic_weight(params, t.n) * static_cast<double>(t.multiplicity) *
                std::log(static_cast<double>(t.prime)));
    return acc.value();
}

ArithmeticSide arithmetic_side(const SmoothParams& params, const SupportSet& support, bool strict,
                               unsigned threads) {
    ArithmeticSide out;
    const long double top = static_cast<long double>(params.x) + static_cast<long double>(params.z);
    if (top > static_cast<long double>(kIntegerCeiling))
        fail(errc::range, "x e^{2 delta} exceeds the 2^62 integer ceiling");
    out.n_lo = static_cast<std::uint64_t>(std::ceil(static_cast<long double>(params.x)));
    out.n_hi = static_cast<std::uint64_t>(std::floor(top));
    if (support.empty() || out.n_hi < out.n_lo) return out;

    const auto& m = support.members;
    const std::uint64_t m_min = m.front();
    if (m_min > kIntegerCeiling / m_min) fail(errc::range, "support products overflow");
    const std::uint64_t r_max = out.n_hi / (m_min * m_min);
    const auto base = prime_power_base_table(r_max);

    std::vector<std::vector<ArithTerm>> parts(m.size());
    for_each_block(m.size(), threads, [&](std::size_t i) {
        auto& local = parts[i];
        for (std::uint64_t m2 : m) {
            const std::uint64_t prod = m[i] * m2;
            const std::uint64_t r_lo = (out.n_lo + prod - 1) / prod;
            const std::uint64_t r_hi = out.n_hi / prod;
            for (std::uint64_t r = std::max<std::uint64_t>(r_lo, 2); r <= r_hi; ++r)
                if (base[r] != 0) local.push_back({r * prod, base[r], 1});
        }
    });
    std::vector<ArithTerm> all;
    for (auto& p : parts) all.insert(all.end(), p.begin(), p.end());
    out.terms = normalize_terms(std::move(all));
    out.value = fold_arithmetic_terms(params, out.terms);

    std::uint64_t last = 0;
    for (const auto& t : out.terms) {
        if (t.n == last) continue;
        last = t.n;
        if (arithmetic_weight(params, t.n) > 0 && !is_smooth(t.n, params.y, strict))
            out.contributors_smooth = false;
    }
    return out;
}

double arithmetic_side_i(const SmoothParams& params, const SupportSet& support, bool strict,
                         unsigned threads) {
    return arithmetic_side(params, support, strict, threads).value;
}

double main_term_i(const SmoothParams& params, const DirichletPoly& poly) {
    const double m1 = m_eval(poly, {1.0, 0.0}).real();
    const double e = std::expm1(params.delta);
    return params.x * e * e * m1 * m1;
}

ZeroSum zero_sum_i(const SmoothParams& params, const DirichletPoly& poly, const ZeroTable& zeros,
                   const ContourSpec& spec, unsigned threads) {
    require_zeros(zeros);
    ZeroSum out;
    const std::size_t count = zeros.count_up_to(spec.t_zeros);
    if (poly.support().empty() || count == 0) return out;

    const auto inv_sqrt = inverse_square_roots(poly);
    const auto& logs = poly.logs();
    const long double log_x = std::log(static_cast<long double>(params.x));
    const double sqrt_x = std::sqrt(params.x);
    const double delta = params.delta;
    const auto& g = zeros.gammas();

    auto term = [&](double gamma, double sign) {
        const std::complex<double> s{0.5, sign * gamma};
        const std::complex<double> mv = m_half_line(inv_sqrt, logs, sign * gamma);
        const double ph = phase_mod_2pi(sign * gamma, log_x);
        const std::complex<double> xs = sqrt_x * std::complex<double>{std::cos(ph), std::sin(ph)};
        const std::complex<double> k = exp_minus_one(delta / 2, delta * sign * gamma) / s;
        return mv * mv * xs * (k * k);
    };

    // Blocks run over indices in descending gamma; block sums are combined in
    // block order, independent of the worker count.
    const std::size_t blocks = (count + kZeroBlock - 1) / kZeroBlock;
    std::vector<std::complex<double>> partial(blocks);
    for_each_block(blocks, threads, [&](std::size_t b) {
        compensated_complex_sum<double> acc;
        const std::size_t hi = count - b * kZeroBlock;  // exclusive
        const std::size_t lo = hi > kZeroBlock ? hi - kZeroBlock : 0;
        for (std::size_t i = hi; i-- > lo;) {
            acc.add(term(g[i], 1.0));
            acc.add(term(g[i], -1.0));
        }
        partial[b] = acc.value();
    });
    compensated_complex_sum<double> total;
    for (const auto& p : partial) total.add(p);
    const std::complex<double> sum = total.value();
    out.value = sum.real();
    out.imag_residue = sum.imag();
    out.last_term = std::abs(term(g[count - 1], 1.0) + term(g[count - 1], -1.0));
    out.zeros_used = count;
    return out;
}

double leftline_budget(const SmoothParams& params, double m1) {
    const double d = params.delta;
    const double sx = std::sqrt(params.x);
    return d * d * std::log(params.x) * (sx / std::sqrt(params.y)) *
           (sx / std::pow(params.y, 0.25) + 1 / d) * m1;
}

IReport i_two_sided(const SmoothParams& params, const SupportSet& support,
                    const DirichletPoly& poly, const ZeroTable& zeros, const ContourSpec& spec,
                    bool strict, unsigned threads) {
    IReport r;
    r.x = params.x;
    r.y = params.y;
    r.u = params.u;
    r.delta = params.delta;
    r.z = params.z;
    r.c = spec.c;
    r.t_zeros = spec.t_zeros;
    r.support_size = support.size();
    if (support.empty()) return r;

    const auto arith = arithmetic_side(params, support, strict, threads);
    r.arithmetic = arith.value;
    r.contributors_smooth = arith.contributors_smooth;
    r.main_term = main_term_i(params, poly);
    const auto zs = zero_sum_i(params, poly, zeros, spec, threads);
    r.zero_sum = zs.value;
    r.zero_sum_imag = zs.imag_residue;
    r.last_term = zs.last_term;
    r.zeros_used = zs.zeros_used;
    r.analytic = r.main_term - r.zero_sum;
    r.leftline_budget = leftline_budget(params, m_eval(poly, {1.0, 0.0}).real());
    constexpr double tiny = std::numeric_limits<double>::min();
    r.relative_gap = std::fabs(r.arithmetic - r.analytic) / std::max(std::fabs(r.arithmetic), tiny);
    return r;
}

std::string to_json(const IReport& r) {
    JsonWriter w;
    w.begin_object()
        .field("x", r.x)
        .field("y", r.y)
        .field("u", r.u)
        .field("delta", r.delta)
        .field("z", r.z)
        .field("c", r.c)
        .field("t_zeros", r.t_zeros)
        .field("arithmetic", r.arithmetic)
        .field("main_term", r.main_term)
        .field("zero_sum", r.zero_sum)
        .field("analytic", r.analytic)
        .field("leftline_budget", r.leftline_budget)
        .field("relative_gap", r.relative_gap)
        .field("zero_sum_imag", r.zero_sum_imag)
        .field("last_term", r.last_term)
        .field("zeros_used", r.zeros_used)
        .field("support_size", r.support_size)
        .field("contributors_smooth", r.contributors_smooth)
        .end_object();
    return w.str();
}

std::string csv_header() {
    return "x,y,u,delta,z,c,t_zeros,arithmetic,main_term,zero_sum,analytic,leftline_budget,"
           "relative_gap,zero_sum_imag,last_term,zeros_used,support_size,contributors_smooth";
}

std::string to_csv_row(const IReport& r) {
    std::string row;
    char buf[40];
    auto real = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.17g,", v);
        row += buf;
    };
    for (double v : {r.x, r.y, r.u, r.delta, r.z, r.c, r.t_zeros, r.arithmetic, r.main_term,
                     r.zero_sum, r.analytic, r.leftline_budget, r.relative_gap, r.zero_sum_imag,
                     r.last_term})
        real(v);
    row += std::to_string(r.zeros_used) + "," + std::to_string(r.support_size) + "," +
           (r.contributors_smooth ? "1" : "0");
    return row;
}

SinZeroSum zero_sum_sin(const DirichletPoly& poly, const ZeroTable& zeros, double delta, double T) {
    require_zeros(zeros);
    if (!(delta > 0)) fail(errc::domain, "delta must be positive");
    SinZeroSum out;
    const std::size_t count = zeros.count_up_to(T);
    out.zeros_used = count;
    out.bound_applicable = T >= 1 / delta && zeros.max_height() >= 1 / delta;
    if (poly.support().empty()) return out;

    const auto inv_sqrt = inverse_square_roots(poly);
    const auto& logs = poly.logs();
    const auto& g = zeros.gammas();
    compensated_sum<double> acc;
    compensated_sum<double> low;
    for (std::size_t i = count; i-- > 0;) {
        const double m2 = std::norm(m_half_line(inv_sqrt, logs, g[i]));
        const double w = 2 * std::sin(delta * g[i]) / g[i];
        acc.add(2 * m2 * w * w);
        if (g[i] <= 1 / delta) low.add(m2);
    }
    out.value = acc.value();
    const double two_over_pi = 2 / std::numbers::pi;
    out.lower_bound = 2 * two_over_pi * two_over_pi * delta * delta * low.value();
    return out;
}

double j2_closed_form(double delta, const SupportSet& support) {
    const auto& m = support.members;
    compensated_sum<double> acc;
    for (std::size_t j = 0; j < m.size(); ++j) {
        double inner = 0;
        for (std::size_t i = 0; i < j && m[i] <= m[j] / 2; ++i)
            if (m[j] % m[i] == 0) inner += von_mangoldt(m[j] / m[i]);
        if (inner > 0) acc.add(inner / static_cast<double>(m[j]));
    }
    return -2 * delta * acc.value();
}

double j2_closed_form(const SmoothParams& params, const SupportSet& support) {
    return j2_closed_form(params.delta, support);
}

TheoremZ theorem_z(double x, double y, double B, const RhoTable& rho_table) {
    if (!std::isfinite(x) || !std::isfinite(y) || !(y >= 2) || !(x >= y))
        fail(errc::domain, "theorem_z needs x >= y >= 2");
    if (!(B > 0) || !std::isfinite(B)) fail(errc::domain, "B must be positive");
    TheoremZ t;
    t.x = x;
    t.y = y;
    t.B = B;
    t.u = std::log(x) / std::log(y);
    if (t.u / 2 > rho_table.u_max()) fail(errc::range, "u/2 beyond the rho table");
    const long double r = rho_table.value(t.u / 2);
    const long double z = static_cast<long double>(B) * t.u * std::sqrt(static_cast<long double>(x)) / r;
    if (r < static_cast<long double>(DBL_MIN) || !(z < static_cast<long double>(DBL_MAX)))
        fail(errc::precision,
             "rho(u/2) underflows double precision; use the extended-precision RhoTable::value");
    t.rho_half_u = static_cast<double>(r);
    t.z = static_cast<double>(z);
    t.delta = 0.5 * std::log1p(t.z / x);
    t.inv_delta = 1 / t.delta;
    t.sqrt_x_over_y14 = std::sqrt(x) / std::pow(y, 0.25);
    t.inverse_delta_dominates = t.inv_delta >= t.sqrt_x_over_y14;
    if (x > std::numbers::e) {
        t.range_threshold = theorem_range_threshold(x);
        t.in_range = y >= t.range_threshold;
    } else {
        t.range_threshold = std::numeric_limits<double>::infinity();
    }
    return t;
}

}  // namespace smoothlab
