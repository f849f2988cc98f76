#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace smoothlab {

inline constexpr double kFirstZeroOrdinate = 14.134725141734693;

// Ascending positive ordinates gamma of zeros 1/2 + i gamma.
class ZeroTable {
public:
    ZeroTable() = default;
    // Validates: strictly ascending, every entry > 14.
    explicit ZeroTable(std::vector<double> gammas, std::optional<std::int64_t> start_index = {});

    const std::vector<double>& gammas() const { return gammas_; }
    std::size_t size() const { return gammas_.size(); }
    bool empty() const { return gammas_.empty(); }
    double max_height() const { return gammas_.empty() ? 0.0 : gammas_.back(); }
    std::optional<std::int64_t> start_index() const { return start_index_; }

    // #{gamma <= T}
    std::size_t count_up_to(double T) const;

private:
    std::vector<double> gammas_;
    std::optional<std::int64_t> start_index_;
};

// One decimal ordinate per line; '#' lines are comments. A comment of the form
// "# start_index: 1" declares that the table starts at the first zero, which
// is then checked against 14.134725 +- 1e-4. Errors carry the line number.
ZeroTable parse_zeros(std::istream& in, const std::string& source = "<stream>");
ZeroTable load_zeros(const std::string& path);
void write_zeros(const ZeroTable& table, const std::string& path);
void write_zeros(const ZeroTable& table, std::ostream& out);

// (T / 2pi) log(T / (2 pi e)) + 7/8
double riemann_von_mangoldt(double T);

struct CountReport {
    double T = 0;
    std::size_t n_table = 0;
    double n_rvm = 0;
    double deviation = 0;  // n_table - n_rvm
    double tolerance = 0;  // 2 + 0.2 log T
    // Turing-style window: integral of S(t) = N_table(t) - rvm(t) over a window
    // of length kTuringWindow next to T. A single missing zero shifts it by the
    // window length, far outside the bound; the pointwise test cannot see that.
    double window_lo = 0, window_hi = 0;
    double s_integral = 0;
    double s_bound = 0;  // 2.30 + 0.128 log(window_hi / 2 pi)
    bool window_checked = false;
    bool flagged = false;
};

inline constexpr double kTuringWindow = 20.0;

CountReport count_check(const ZeroTable& table, double T);

// Largest gap between consecutive ordinates (0 for fewer than two).
double max_gap(const ZeroTable& table);

}  // namespace smoothlab
