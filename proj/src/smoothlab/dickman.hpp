#pragma once

#include <cstddef>
#include <vector>

namespace smoothlab {

// Dickman rho on the grid u = k * step, 0 <= u <= u_max. The step is 1/N for
// an even N so that every integer breakpoint of rho is a grid node.
class RhoTable {
public:
    static constexpr std::size_t kDefaultNodesPerUnit = 1024;
    static constexpr double kDefaultUMax = 50.0;

    explicit RhoTable(std::size_t nodes_per_unit = kDefaultNodesPerUnit,
                      double u_max = kDefaultUMax);

    double step() const { return 1.0 / static_cast<double>(per_unit_); }
    std::size_t nodes_per_unit() const { return per_unit_; }
    double u_max() const { return u_max_; }
    const std::vector<long double>& values() const { return values_; }

    // rho(u) by 4-point Lagrange interpolation inside the unit segment that
    // contains u, in extended precision.
    long double value(double u) const;

private:
    std::size_t per_unit_;
    double u_max_;
    std::vector<long double> values_;
};

// Builds the table from rho(u) = (1/u) * integral_{u-1}^{u} rho(t) dt.
RhoTable build_rho_table(double step = 1.0 / RhoTable::kDefaultNodesPerUnit,
                         double u_max = RhoTable::kDefaultUMax);

double rho(double u, const RhoTable& table);

// Crude comparator u^{-u/2} for rho(u/2).
double rho_asymptotic_report(double u);

}  // namespace smoothlab
