#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "smoothlab/dickman.hpp"
#include "smoothlab/params.hpp"

namespace smoothlab {

// The y-smooth integers in [ceil(sqrt(x) y^{-1/3}), floor(sqrt(x) y^{-1/4})].
struct SupportSet {
    std::uint64_t lo = 1;  // rounded-inward integer bounds; hi < lo for an empty range
    std::uint64_t hi = 0;
    std::vector<std::uint64_t> members;

    bool empty() const { return members.empty(); }
    std::size_t size() const { return members.size(); }

    // Synthetic supports; members must be ascending, distinct and >= 1.
    static SupportSet from_members(std::vector<std::uint64_t> members);
};

// M(s) = sum_{n in support} n^{-s}.
class DirichletPoly {
public:
    DirichletPoly() = default;
    explicit DirichletPoly(SupportSet support);

    const SupportSet& support() const { return support_; }
    const std::vector<long double>& logs() const { return logs_; }
    std::uint64_t n_min() const { return support_.empty() ? 0 : support_.members.front(); }
    std::uint64_t n_max() const { return support_.empty() ? 0 : support_.members.back(); }

private:
    SupportSet support_;
    std::vector<long double> logs_;
};

SupportSet build_support(const SmoothParams& params, bool strict = false, unsigned threads = 1);

std::complex<double> m_eval(const DirichletPoly& poly, std::complex<double> s);

struct M1Report {
    double m1 = 0;
    double bound = 0;  // rho(u/2) log(y) / 24
    double ratio = 0;  // m1 / bound
    bool pass = false;
    double m0 = 0;
    double m0_bound = 0;  // sqrt(x) / y^{1/4}
    bool m0_pass = false;
};

M1Report m1_lower_bound_check(const SmoothParams& params, const DirichletPoly& poly,
                              const RhoTable& rho_table);

// 0.05 / log(n_max / n_min + 2).
double default_mean_square_step(const DirichletPoly& poly);
// Coarsest step accepted: pi / (4 log(n_max / n_min)).
double max_mean_square_step(const DirichletPoly& poly);

// Composite Simpson for the integral of |M(sigma + it)|^2 over [t_lo, t_hi].
double mean_square_integral(const DirichletPoly& poly, double sigma, double t_lo, double t_hi,
                            double step);

// (2T + 3 pi n_max) * sum n^{-2 sigma}: comparator for the integral over |t| <= T.
double mv_bound(const DirichletPoly& poly, double sigma, double T);

inline constexpr double kMeanValueKappa = 3.0 * 3.14159265358979323846;

}  // namespace smoothlab
