#include "smoothlab/dickman.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "smoothlab/error.hpp"

namespace smoothlab {

namespace {

struct PieceSum {
    long double known = 0;     // in units of h
    long double last_weight = 0;  // coefficient of the final node, units of h
};

// Quadrature over nodes [i0, i0 + n] lying in one smooth piece of rho.
// Even n: composite Simpson. Odd n >= 3: a 3/8 panel first, Simpson after.
// n == 1: the three-node rule reaching one node to the left when that node is
// available, otherwise the trapezoid. The final node is excluded from `known`
// when `last_unknown` is set.
PieceSum integrate_piece(const std::vector<long double>& f, std::size_t i0, std::size_t n,
                         bool last_unknown, bool left_node_ok) {
    PieceSum out;
    auto add = [&](std::size_t idx, long double w) {
        if (last_unknown && idx == i0 + n)
            out.last_weight += w;
        else
            out.known += w * f[idx];
    };
    if (n == 1) {
        if (left_node_ok && !last_unknown) {
            add(i0 - 1, -1.0L / 12);
            add(i0, 8.0L / 12);
            add(i0 + 1, 5.0L / 12);
        } else {
            add(i0, 0.5L);
            add(i0 + 1, 0.5L);
        }
        return out;
    }
    std::size_t start = i0;
    std::size_t rest = n;
    if (n % 2 == 1) {
        add(i0, 3.0L / 8);
        add(i0 + 1, 9.0L / 8);
        add(i0 + 2, 9.0L / 8);
        add(i0 + 3, 3.0L / 8);
        start = i0 + 3;
        rest = n - 3;
    }
    if (rest > 0) {
        add(start, 1.0L / 3);
        for (std::size_t j = 1; j < rest; ++j) add(start + j, (j % 2 == 1) ? 4.0L / 3 : 2.0L / 3);
        add(start + rest, 1.0L / 3);
    }
    return out;
}

}  // namespace

RhoTable::RhoTable(std::size_t nodes_per_unit, double u_max)
    : per_unit_(nodes_per_unit), u_max_(u_max) {
    if (per_unit_ < 8 || per_unit_ % 2 != 0)
        fail(errc::invalid_argument, "rho grid needs an even number (>= 8) of nodes per unit");
    if (!(u_max_ >= 1) || !std::isfinite(u_max_) || u_max_ > 1000)
        fail(errc::invalid_argument, "rho table u_max must lie in [1, 1000]");

    const std::size_t n = per_unit_;
    const std::size_t last = static_cast<std::size_t>(std::ceil(u_max_)) * n;
    const long double h = 1.0L / static_cast<long double>(n);
    values_.assign(last + 1, 1.0L);

    for (std::size_t k = n + 1; k <= last; ++k) {
        const long double u = static_cast<long double>(k) * h;
        const std::size_t m = k / n;
        const std::size_t rem = k % n;
        PieceSum total;
        if (rem == 0) {
            total = integrate_piece(values_, k - n, n, true, false);
        } else {
            // Window [u - 1, u] split at the integer m, where rho loses smoothness.
            const PieceSum left = integrate_piece(values_, k - n, n - rem, false, true);
            const PieceSum right = integrate_piece(values_, m * n, rem, true, false);
            total.known = left.known + right.known;
            total.last_weight = right.last_weight;
        }
        values_[k] = (total.known * h) / (u - total.last_weight * h);
    }
}

long double RhoTable::value(double u) const {
    if (!(u >= 0) || u > u_max_)
        fail(errc::range, "rho argument " + std::to_string(u) + " outside [0, " +
                              std::to_string(u_max_) + "]");
    if (u <= 1) return 1.0L;
    const long double s = static_cast<long double>(u) * static_cast<long double>(per_unit_);
    const auto k0 = static_cast<std::size_t>(std::floor(s));
    if (static_cast<long double>(k0) == s) return values_[k0];

    const std::size_t seg_lo = (k0 / per_unit_) * per_unit_;
    const std::size_t seg_hi = seg_lo + per_unit_;
    std::size_t j0 = k0 >= 1 ? k0 - 1 : 0;
    j0 = std::clamp(j0, seg_lo, seg_hi - 3);
    const long double x = s - static_cast<long double>(j0);
    const long double l0 = -(x - 1) * (x - 2) * (x - 3) / 6;
    const long double l1 = x * (x - 2) * (x - 3) / 2;
    const long double l2 = -x * (x - 1) * (x - 3) / 2;
    const long double l3 = x * (x - 1) * (x - 2) / 6;
    return l0 * values_[j0] + l1 * values_[j0 + 1] + l2 * values_[j0 + 2] + l3 * values_[j0 + 3];
}

RhoTable build_rho_table(double step, double u_max) {
    if (!(step > 0)) fail(errc::invalid_argument, "rho step must be positive");
    const double nodes = std::round(1.0 / step);
    if (std::fabs(nodes * step - 1.0) > 1e-9)
        fail(errc::invalid_argument, "rho step must be the reciprocal of an even integer");
    return RhoTable(static_cast<std::size_t>(nodes), u_max);
}

double rho(double u, const RhoTable& table) { return static_cast<double>(table.value(u)); }

double rho_asymptotic_report(double u) { return std::pow(u, -u / 2); }

}  // namespace smoothlab
