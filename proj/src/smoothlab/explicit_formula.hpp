#pragma once

// Two evaluations of
//
//   I = (1/2 pi i) int_(c) -zeta'/zeta(s) M(s)^2 x^s (e^{delta s} - 1)^2 / s^2 ds
//
// The arithmetic side expands the Dirichlet series and applies the MINLOG
// kernel; the analytic side is the pole at s = 1 minus the sum over zeros
// rho = 1/2 + i gamma (RH assumed). The remaining integral on Re(s) = -1/2 is
// not evaluated; IReport only carries a budget for it.

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "smoothlab/dickman.hpp"
#include "smoothlab/dirichlet.hpp"
#include "smoothlab/params.hpp"
#include "smoothlab/zeta_zeros.hpp"

namespace smoothlab {

struct ContourSpec {
    double c = 0;        // 1 + 1/log x
    double t_zeros = 0;  // zero-sum truncation height

    static ContourSpec make(const SmoothParams& params, double t_zeros, const ZeroTable& zeros);
};

// n = r m1 m2 with Lambda(r) = log prime, counted `multiplicity` times.
struct ArithTerm {
    std::uint64_t n = 0;
    std::uint64_t prime = 0;
    std::uint64_t multiplicity = 0;
    auto operator<=>(const ArithTerm&) const = default;
};

struct ArithmeticSide {
    std::vector<ArithTerm> terms;  // sorted by (n, prime), merged
    double value = 0;
    bool contributors_smooth = true;
    std::uint64_t n_lo = 0;  // integer range [ceil(x), floor(x e^{2 delta})]
    std::uint64_t n_hi = 0;
};

// min(log(e^{2 delta} x / n), log(n / x)) on [x, x e^{2 delta}], clamped at 0.
double arithmetic_weight(const SmoothParams& params, std::uint64_t n);

// Sorts by (n, prime) and merges duplicate (n, prime) entries.
std::vector<ArithTerm> normalize_terms(std::vector<ArithTerm> terms);

// sum weight(n) * multiplicity * log(prime), compensated, in term order.
double fold_arithmetic_terms(const SmoothParams& params, std::span<const ArithTerm> terms);

ArithmeticSide arithmetic_side(const SmoothParams& params, const SupportSet& support,
                               bool strict = false, unsigned threads = 1);
double arithmetic_side_i(const SmoothParams& params, const SupportSet& support,
                         bool strict = false, unsigned threads = 1);

// x (e^delta - 1)^2 M(1)^2
double main_term_i(const SmoothParams& params, const DirichletPoly& poly);

struct ZeroSum {
    double value = 0;         // real part of the paired partial sum
    double imag_residue = 0;  // imaginary part left after pairing rho with conj(rho)
    double last_term = 0;     // |paired term| at the largest included gamma
    std::size_t zeros_used = 0;
};

// sum over gamma <= t_zeros of M(rho)^2 x^rho ((e^{delta rho} - 1) / rho)^2,
// rho = 1/2 +- i gamma, summed from the largest gamma down.
ZeroSum zero_sum_i(const SmoothParams& params, const DirichletPoly& poly, const ZeroTable& zeros,
                   const ContourSpec& spec, unsigned threads = 1);

struct IReport {
    double x = 0, y = 0, u = 0, delta = 0, z = 0, c = 0, t_zeros = 0;
    double arithmetic = 0;
    double main_term = 0;
    double zero_sum = 0;
    double analytic = 0;  // main_term - zero_sum
    double leftline_budget = 0;
    double relative_gap = 0;
    double zero_sum_imag = 0;
    double last_term = 0;
    std::uint64_t zeros_used = 0;
    std::uint64_t support_size = 0;
    bool contributors_smooth = true;
};

IReport i_two_sided(const SmoothParams& params, const SupportSet& support,
                    const DirichletPoly& poly, const ZeroTable& zeros, const ContourSpec& spec,
                    bool strict = false, unsigned threads = 1);

// delta^2 log x (sqrt x / sqrt y)(sqrt x / y^{1/4} + 1/delta) M(1), constant 1.
double leftline_budget(const SmoothParams& params, double m1);

std::string to_json(const IReport& r);
// Field order: x,y,u,delta,z,c,t_zeros,arithmetic,main_term,zero_sum,analytic,
// leftline_budget,relative_gap,zero_sum_imag,last_term,zeros_used,support_size,
// contributors_smooth
std::string csv_header();
std::string to_csv_row(const IReport& r);

struct SinZeroSum {
    double value = 0;  // sum over 0 < gamma <= T, doubled for conjugates
    // 2 (2/pi)^2 delta^2 sum_{gamma <= 1/delta} |M(1/2 + i gamma)|^2
    double lower_bound = 0;
    bool bound_applicable = false;  // T >= 1/delta and the table reaches 1/delta
    std::size_t zeros_used = 0;
};

SinZeroSum zero_sum_sin(const DirichletPoly& poly, const ZeroTable& zeros, double delta, double T);

// -2 delta sum_{m2} (1/m2) sum_{n m1 = m2} Lambda(n), m1, m2 in the support.
double j2_closed_form(double delta, const SupportSet& support);
double j2_closed_form(const SmoothParams& params, const SupportSet& support);

struct TheoremZ {
    double x = 0, y = 0, B = 0;
    double u = 0;
    double rho_half_u = 0;
    double z = 0;
    double delta = 0;
    double inv_delta = 0;
    double sqrt_x_over_y14 = 0;
    bool inverse_delta_dominates = false;  // 1/delta >= sqrt(x) / y^{1/4}
    double range_threshold = 0;            // exp(5 sqrt(log x log log x))
    bool in_range = false;
};

// z = B u sqrt(x) / rho(u/2).
TheoremZ theorem_z(double x, double y, double B, const RhoTable& rho_table);

}  // namespace smoothlab
