#include "smoothlab/zeta_zeros.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "smoothlab/error.hpp"

namespace smoothlab {

namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void load_fail(const std::string& source, std::size_t line, const std::string& why) {
    fail(errc::load, source + ":" + std::to_string(line) + ": " + why);
}

}  // namespace

ZeroTable::ZeroTable(std::vector<double> gammas, std::optional<std::int64_t> start_index)
    : gammas_(std::move(gammas)), start_index_(start_index) {
    for (std::size_t i = 0; i < gammas_.size(); ++i) {
        if (!std::isfinite(gammas_[i]) || gammas_[i] <= 14.0)
            fail(errc::invalid_argument, "zero ordinates must be finite and > 14");
        if (i > 0 && gammas_[i] <= gammas_[i - 1])
            fail(errc::invalid_argument, "zero ordinates must be strictly ascending");
    }
}

std::size_t ZeroTable::count_up_to(double T) const {
    return static_cast<std::size_t>(std::upper_bound(gammas_.begin(), gammas_.end(), T) -
                                    gammas_.begin());
}

ZeroTable parse_zeros(std::istream& in, const std::string& source) {
    std::vector<double> gammas;
    std::optional<std::int64_t> start_index;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string_view line = trim(raw);
        if (line.empty()) continue;
        if (line.front() == '#') {
            const std::string_view body = trim(line.substr(1));
            constexpr std::string_view key = "start_index:";
            if (body.starts_with(key)) {
                const std::string_view v = trim(body.substr(key.size()));
                std::int64_t idx = 0;
                auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), idx);
                if (ec != std::errc() || p != v.data() + v.size())
                    load_fail(source, line_no, "malformed start_index directive");
                start_index = idx;
            }
            continue;
        }
        double g = 0;
        auto [p, ec] = std::from_chars(line.data(), line.data() + line.size(), g);
        if (ec != std::errc() || p != line.data() + line.size() || !std::isfinite(g))
            load_fail(source, line_no, "unparseable ordinate '" + std::string(line) + "'");
        if (g <= 0) load_fail(source, line_no, "non-positive ordinate");
        if (g <= 14.0) load_fail(source, line_no, "ordinate below the first zero");
        if (!gammas.empty() && g <= gammas.back())
            load_fail(source, line_no, "ordinates not strictly ascending");
        if (gammas.empty() && start_index == 1 && std::fabs(g - kFirstZeroOrdinate) > 1e-4)
            load_fail(source, line_no, "table claims to start at the first zero but does not");
        gammas.push_back(g);
    }
    return ZeroTable(std::move(gammas), start_index);
}

ZeroTable load_zeros(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(errc::io, "cannot open zeros file '" + path + "'");
    return parse_zeros(in, path);
}

void write_zeros(const ZeroTable& table, std::ostream& out) {
    if (table.start_index()) out << "# start_index: " << *table.start_index() << '\n';
    char buf[64];
    for (double g : table.gammas()) {
        std::snprintf(buf, sizeof buf, "%.17g\n", g);
        out << buf;
    }
}

void write_zeros(const ZeroTable& table, const std::string& path) {
    std::ofstream out(path);
    if (!out) fail(errc::io, "cannot write zeros file '" + path + "'");
    write_zeros(table, out);
    if (!out) fail(errc::io, "write failed for '" + path + "'");
}

double riemann_von_mangoldt(double T) {
    constexpr double two_pi = 2 * std::numbers::pi;
    return T / two_pi * std::log(T / (two_pi * std::numbers::e)) + 0.875;
}

namespace {

// Antiderivative of riemann_von_mangoldt.
double rvm_primitive(double t) {
    constexpr double two_pi = 2 * std::numbers::pi;
    return t * t / (2 * two_pi) * (std::log(t / (two_pi * std::numbers::e)) - 0.5) + 0.875 * t;
}

// Exact integral of N_table(t) - rvm(t) over [a, b]; N_table is a step function.
double s_integral(const ZeroTable& table, double a, double b) {
    const auto& g = table.gammas();
    double steps = 0;
    auto it = std::upper_bound(g.begin(), g.end(), a);
    std::size_t n = static_cast<std::size_t>(it - g.begin());
    double left = a;
    for (; it != g.end() && *it <= b; ++it, ++n) {
        steps += static_cast<double>(n) * (*it - left);
        left = *it;
    }
    steps += static_cast<double>(n) * (b - left);
    return steps - (rvm_primitive(b) - rvm_primitive(a));
}

}  // namespace

CountReport count_check(const ZeroTable& table, double T) {
    if (!(T > 0) || T > table.max_height())
        fail(errc::range, "count check height beyond the table");
    CountReport r;
    r.T = T;
    r.n_table = table.count_up_to(T);
    r.n_rvm = riemann_von_mangoldt(T);
    r.deviation = static_cast<double>(r.n_table) - r.n_rvm;
    r.tolerance = 2 + 0.2 * std::log(T);
    r.flagged = std::fabs(r.deviation) > r.tolerance;

    if (T + kTuringWindow <= table.max_height()) {
        r.window_lo = T;
        r.window_hi = T + kTuringWindow;
    } else if (T - kTuringWindow >= kFirstZeroOrdinate - 1) {
        r.window_lo = T - kTuringWindow;
        r.window_hi = T;
    }
    if (r.window_hi > r.window_lo) {
        r.window_checked = true;
        r.s_integral = s_integral(table, r.window_lo, r.window_hi);
        r.s_bound = 2.30 + 0.128 * std::log(r.window_hi / (2 * std::numbers::pi));
        r.flagged = r.flagged || std::fabs(r.s_integral) > r.s_bound;
    }
    return r;
}

double max_gap(const ZeroTable& table) {
    double g = 0;
    const auto& v = table.gammas();
    for (std::size_t i = 1; i < v.size(); ++i) g = std::max(g, v[i] - v[i - 1]);
    return g;
}

}  // namespace smoothlab
