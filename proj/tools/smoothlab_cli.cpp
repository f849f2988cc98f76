// smoothlab command-line front end. Talks to the library only through the C API.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "smoothlab/json_writer.hpp"
#include "smoothlab/smoothlab.h"

namespace {

// ---- errors and exit codes ------------------------------------------------

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void check(sl_status s) {
    if (s != SL_OK)
        throw UsageError(std::string(sl_status_name(s)) + ": " + sl_last_error());
}

template <typename T, void (*Free)(T*)>
struct Deleter {
    void operator()(T* p) const { Free(p); }
};
using RhoPtr = std::unique_ptr<sl_rho_table, Deleter<sl_rho_table, sl_rho_table_free>>;
using SupportPtr = std::unique_ptr<sl_support, Deleter<sl_support, sl_support_free>>;
using ZerosPtr = std::unique_ptr<sl_zero_table, Deleter<sl_zero_table, sl_zero_table_free>>;
using ListPtr = std::unique_ptr<sl_u64_list, Deleter<sl_u64_list, sl_u64_list_free>>;

// ---- report model -----------------------------------------------------------

using Scalar = std::variant<double, uint64_t, bool, std::string, std::vector<uint64_t>>;

struct Record {
    std::vector<std::pair<std::string, Scalar>> fields;
    Record& add(std::string k, Scalar v) {
        fields.emplace_back(std::move(k), std::move(v));
        return *this;
    }
};

struct Report {
    std::string command;
    Record params;
    Record fields;
    std::string table_name;
    std::vector<Record> rows;
};

void write_json_scalar(smoothlab::JsonWriter& w, const Scalar& v) {
    std::visit(
        [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, std::vector<uint64_t>>) {
                w.begin_array();
                for (uint64_t n : x) w.value(n);
                w.end_array();
            } else if constexpr (std::is_same_v<T, std::string>) {
                w.value(std::string_view(x));
            } else {
                w.value(x);
            }
        },
        v);
}

void write_json_record(smoothlab::JsonWriter& w, const Record& r) {
    for (const auto& [k, v] : r.fields) {
        w.key(k);
        write_json_scalar(w, v);
    }
}

std::string text_scalar(const Scalar& v) {
    return std::visit(
        [](const auto& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, double>) {
                char buf[40];
                std::snprintf(buf, sizeof buf, "%.12g", x);
                return buf;
            } else if constexpr (std::is_same_v<T, uint64_t>) {
                return std::to_string(x);
            } else if constexpr (std::is_same_v<T, bool>) {
                return x ? "true" : "false";
            } else if constexpr (std::is_same_v<T, std::string>) {
                return x;
            } else {
                std::string s;
                for (size_t i = 0; i < x.size(); ++i) {
                    if (i) s += ' ';
                    s += std::to_string(x[i]);
                }
                return s;
            }
        },
        v);
}

// CSV cells use the JSON number rendering so rows diff cleanly.
std::string csv_scalar(const Scalar& v) {
    if (std::holds_alternative<double>(v)) {
        smoothlab::JsonWriter w;
        w.value(std::get<double>(v));
        return w.str();
    }
    std::string s = text_scalar(v);
    if (std::holds_alternative<std::vector<uint64_t>>(v)) std::replace(s.begin(), s.end(), ' ', ';');
    return s;
}

void emit(const Report& r, const std::string& format) {
    if (format == "json") {
        smoothlab::JsonWriter w;
        w.begin_object();
        w.field("command", std::string_view(r.command));
        w.key("params").begin_object();
        write_json_record(w, r.params);
        w.end_object();
        write_json_record(w, r.fields);
        if (!r.table_name.empty()) {
            w.key(r.table_name).begin_array();
            for (const auto& row : r.rows) {
                w.begin_object();
                write_json_record(w, row);
                w.end_object();
            }
            w.end_array();
        }
        w.end_object();
        std::cout << w.str() << '\n';
    } else if (format == "csv") {
        // Tables become one line per row with the parameters repeated; scalar
        // reports become a single row.
        std::vector<Record> rows = r.rows;
        if (r.table_name.empty()) rows.push_back(r.fields);
        bool header = true;
        for (const auto& row : rows) {
            Record all = r.params;
            for (const auto& f : row.fields) all.fields.push_back(f);
            if (header) {
                for (size_t i = 0; i < all.fields.size(); ++i)
                    std::cout << (i ? "," : "") << all.fields[i].first;
                std::cout << '\n';
                header = false;
            }
            for (size_t i = 0; i < all.fields.size(); ++i)
                std::cout << (i ? "," : "") << csv_scalar(all.fields[i].second);
            std::cout << '\n';
        }
    } else {
        auto print = [](const Record& rec) {
            for (const auto& [k, v] : rec.fields) std::cout << k << ": " << text_scalar(v) << '\n';
        };
        print(r.params);
        print(r.fields);
        if (!r.rows.empty()) {
            for (size_t i = 0; i < r.rows.front().fields.size(); ++i)
                std::cout << (i ? "\t" : "") << r.rows.front().fields[i].first;
            std::cout << '\n';
            for (const auto& row : r.rows) {
                for (size_t i = 0; i < row.fields.size(); ++i)
                    std::cout << (i ? "\t" : "") << text_scalar(row.fields[i].second);
                std::cout << '\n';
            }
        }
    }
}

// ---- shared option handling -------------------------------------------------

struct Common {
    std::string format = "json";
    unsigned threads = 1;
    bool strict = false;
};

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--format", c.format, "Output format")
        ->check(CLI::IsMember({"json", "csv", "text"}))
        ->capture_default_str();
    sub->add_option("--threads", c.threads, "Worker thread cap (output does not depend on it)")
        ->check(CLI::Range(1u, 1024u))
        ->capture_default_str();
}

void add_strict(CLI::App* sub, Common& c) {
    sub->add_flag("--strict-smooth", c.strict, "Count p < y as smooth instead of p <= y");
}

struct Interval {
    std::optional<double> z;
    std::optional<double> delta;
};

void add_interval(CLI::App* sub, Interval& iv) {
    sub->add_option("--z", iv.z, "Interval length: (x, x + z]");
    sub->add_option("--delta", iv.delta, "Interval as x e^{2 delta} = x + z");
}

sl_params resolve_interval(double x, double y, const Interval& iv) {
    if (iv.z && iv.delta) throw UsageError("give exactly one of --z and --delta");
    if (!iv.z && !iv.delta) throw UsageError("an interval is required: pass --z or --delta");
    sl_params p{};
    if (iv.z)
        check(sl_params_from_z(x, y, *iv.z, &p));
    else
        check(sl_params_from_delta(x, y, *iv.delta, &p));
    return p;
}

void echo_params(Record& r, const sl_params& p, bool with_interval = true) {
    r.add("x", p.x).add("y", p.y).add("u", p.u);
    if (with_interval) r.add("delta", p.delta).add("z", p.z);
}

ZerosPtr load_zero_table(const std::string& flag_value, std::string& resolved) {
    resolved = flag_value;
    if (resolved.empty()) {
        const char* env = std::getenv("SMOOTHLAB_ZEROS");
        if (env) resolved = env;
    }
    if (resolved.empty())
        throw UsageError("no zero table: pass --zeros <path> or set SMOOTHLAB_ZEROS");
    sl_zero_table* t = nullptr;
    check(sl_zero_table_load(resolved.c_str(), &t));
    return ZerosPtr(t);
}

RhoPtr make_rho(double u_needed) {
    sl_rho_table* t = nullptr;
    const double u_max = std::max(50.0, std::ceil(u_needed) + 1);
    check(sl_rho_table_new(0, u_max, &t));
    return RhoPtr(t);
}

SupportPtr make_support(const sl_params& p, const Common& c) {
    sl_support* s = nullptr;
    check(sl_support_build(&p, c.strict, c.threads, &s));
    return SupportPtr(s);
}

std::vector<uint64_t> members_of(const sl_support* s) {
    const uint64_t* m = sl_support_members(s);
    return std::vector<uint64_t>(m, m + sl_support_size(s));
}

double rho_at(const sl_rho_table* t, double u) {
    double v = 0;
    check(sl_rho(t, u, &v));
    return v;
}

// ---- subcommands ------------------------------------------------------------

struct PsiCmd {
    Common c;
    double x = 0, y = 0;
};

int run_psi(const PsiCmd& a) {
    uint64_t n = 0;
    check(sl_psi_count(a.x, a.y, a.c.strict, &n));
    Report r;
    r.command = "psi";
    r.params.add("x", a.x).add("y", a.y).add("strict_smooth", a.c.strict);
    r.fields.add("psi", n);
    emit(r, a.c.format);
    return kExitOk;
}

struct RhoCmd {
    Common c;
    std::vector<double> u;
    bool dump = false;
    double dump_step = 0.125;
    double u_max = 50;
    double step = 1.0 / 1024;
};

int run_rho(const RhoCmd& a) {
    if (a.u.empty() && !a.dump) throw UsageError("rho needs --u values or --dump");
    if (!(a.dump_step > 0)) throw UsageError("--dump-step must be positive");
    sl_rho_table* raw = nullptr;
    check(sl_rho_table_new(a.step, a.u_max, &raw));
    RhoPtr table(raw);
    Report r;
    r.command = "rho";
    r.params.add("step", sl_rho_table_step(table.get())).add("u_max", sl_rho_table_u_max(table.get()));
    r.table_name = "values";
    std::vector<double> us = a.u;
    if (a.dump) {
        const auto n = static_cast<long>(std::floor(a.u_max / a.dump_step + 1e-9));
        for (long k = 0; k <= n; ++k) us.push_back(static_cast<double>(k) * a.dump_step);
    }
    for (double u : us) {
        Record row;
        row.add("u", u).add("rho", rho_at(table.get(), u));
        r.rows.push_back(std::move(row));
    }
    emit(r, a.c.format);
    return kExitOk;
}

struct FindSmoothCmd {
    Common c;
    double x = 0, y = 0;
    Interval iv;
    bool theorem = false;
    double B = 1;
    std::optional<double> epsilon;
    bool count_only = false;
};

int run_find_smooth(const FindSmoothCmd& a) {
    Report r;
    r.command = "find-smooth";
    const double u = std::log(a.x) / std::log(a.y);
    RhoPtr table = make_rho(u);
    double z = 0;
    bool verify_ok = true;
    if (a.theorem) {
        if (a.iv.z || a.iv.delta) throw UsageError("--theorem computes z; drop --z/--delta");
        sl_theorem_z t{};
        check(sl_theorem_z_compute(a.x, a.y, a.B, table.get(), &t));
        z = t.z;
        r.params.add("x", t.x).add("y", t.y).add("u", t.u).add("delta", t.delta).add("z", t.z);
        r.params.add("B", t.B).add("mode", std::string("theorem"));
        r.fields.add("rho_half_u", t.rho_half_u)
            .add("inv_delta", t.inv_delta)
            .add("sqrt_x_over_y14", t.sqrt_x_over_y14)
            .add("inverse_delta_dominates", t.inverse_delta_dominates != 0)
            .add("range_threshold", t.range_threshold)
            .add("in_theorem_range", t.in_range != 0);
    } else {
        const sl_params p = resolve_interval(a.x, a.y, a.iv);
        z = p.z;
        echo_params(r.params, p);
        r.params.add("mode", std::string("interval"));
    }
    r.params.add("strict_smooth", a.c.strict);
    if (a.epsilon) r.params.add("epsilon", *a.epsilon);

    sl_u64_list* raw = nullptr;
    check(sl_smooth_in_interval(a.x, z, a.y, a.c.strict, a.c.threads, &raw));
    ListPtr found(raw);
    const size_t count = sl_u64_list_size(found.get());
    const double heuristic = z * rho_at(table.get(), u);
    r.fields.add("count", static_cast<uint64_t>(count))
        .add("heuristic", heuristic)
        .add("count_over_heuristic", heuristic > 0 ? static_cast<double>(count) / heuristic : 0.0);
    if (a.epsilon) r.fields.add("z_x_minus_epsilon", z * std::pow(a.x, -*a.epsilon));
    if (!a.count_only) {
        const uint64_t* d = sl_u64_list_data(found.get());
        r.fields.add("smooth", std::vector<uint64_t>(d, d + count));
    }
    // The 1/delta and range conditions are asymptotic and reported only; the
    // verification is that the theorem-mode interval is not empty.
    if (a.theorem) {
        verify_ok = count > 0;
        r.fields.add("pass", verify_ok);
    }
    emit(r, a.c.format);
    return verify_ok ? kExitOk : kExitVerifyFailed;
}

struct SupportCmd {
    Common c;
    double x = 0, y = 0;
    bool count_only = false;
};

int run_support(const SupportCmd& a) {
    sl_params p{};
    check(sl_params_from_xy(a.x, a.y, &p));
    SupportPtr s = make_support(p, a.c);
    RhoPtr table = make_rho(p.u / 2);
    sl_m1_report m{};
    check(sl_m1_check(&p, s.get(), table.get(), &m));
    uint64_t lo = 0, hi = 0;
    sl_support_bounds(s.get(), &lo, &hi);

    Report r;
    r.command = "support";
    echo_params(r.params, p, false);
    r.params.add("strict_smooth", a.c.strict);
    r.fields.add("lo", lo).add("hi", hi).add("size", static_cast<uint64_t>(sl_support_size(s.get())));
    r.fields.add("m1", m.m1).add("m1_bound", m.bound).add("m1_ratio", m.ratio).add("m1_pass", m.pass != 0);
    r.fields.add("m0", m.m0).add("m0_bound", m.m0_bound).add("m0_pass", m.m0_pass != 0);
    if (!a.count_only) r.fields.add("members", members_of(s.get()));
    emit(r, a.c.format);
    // The M(1) lower bound is informational; only the trivial M(0) bound gates.
    return m.m0_pass ? kExitOk : kExitVerifyFailed;
}

struct KernelsCmd {
    Common c;
    std::string kernel = "all";
    double delta = 0.1;
    double span_factor = 3;  // samples cover |log xi| <= span_factor * delta
    double c_line = 1.1;
    double T = 1e4;
    unsigned samples = 50;
};

std::vector<double> kernel_kinks(sl_kernel_kind k, double delta) {
    switch (k) {
        case SL_KERNEL_LOG: return {1.0};
        case SL_KERNEL_MINLOG: return {std::exp(-2 * delta), std::exp(-delta), 1.0};
        case SL_KERNEL_SQRT_TENT: return {std::exp(-2 * delta), 1.0, std::exp(2 * delta)};
    }
    return {};
}

// Deterministic log-uniform samples on [e^{-span}, e^{span}] (golden-ratio
// sequence). Samples within 1e-3 of a kink in log xi are pushed off it.
std::vector<double> kernel_samples(sl_kernel_kind k, double delta, double span, unsigned n) {
    const double golden = 0.6180339887498949;
    const auto kinks = kernel_kinks(k, delta);
    std::vector<double> out;
    for (unsigned i = 0; i < n; ++i) {
        const double t = std::fmod(0.5 + golden * i, 1.0);
        double lx = span * (2 * t - 1);
        for (double kink : kinks) {
            const double lk = std::log(kink);
            if (std::fabs(lx - lk) <= 1e-3) lx = lk + (lx >= lk ? 2e-3 : -2e-3);
        }
        out.push_back(std::exp(lx));
    }
    return out;
}

int run_kernels(const KernelsCmd& a) {
    std::vector<std::pair<sl_kernel_kind, std::string>> kinds;
    if (a.kernel == "all" || a.kernel == "log") kinds.emplace_back(SL_KERNEL_LOG, "log");
    if (a.kernel == "all" || a.kernel == "minlog") kinds.emplace_back(SL_KERNEL_MINLOG, "minlog");
    if (a.kernel == "all" || a.kernel == "sqrt-tent")
        kinds.emplace_back(SL_KERNEL_SQRT_TENT, "sqrt-tent");

    Report r;
    r.command = "kernels verify";
    r.params.add("delta", a.delta).add("span", a.span_factor * a.delta).add("c", a.c_line).add("T", a.T).add("samples", uint64_t{a.samples});
    r.table_name = "samples";
    bool all_pass = true;
    for (const auto& [kind, name] : kinds) {
        for (double xi : kernel_samples(kind, a.delta, a.span_factor * a.delta, a.samples)) {
            double closed = 0, re = 0, im = 0;
            check(sl_kernel_closed(kind, a.delta, xi, &closed));
            check(sl_kernel_numeric(kind, a.delta, xi, a.c_line, a.T, 0, &re, &im));
            const double err = std::fabs(re - closed);
            const double tol = 20 * (1 + std::pow(xi, a.c_line)) / a.T;
            const bool pass = err <= tol;
            all_pass = all_pass && pass;
            Record row;
            row.add("kernel", name).add("xi", xi).add("closed", closed).add("numeric", re);
            row.add("imag", im).add("error", err).add("tolerance", tol).add("pass", pass);
            r.rows.push_back(std::move(row));
        }
    }
    r.fields.add("pass", all_pass);
    emit(r, a.c.format);
    return all_pass ? kExitOk : kExitVerifyFailed;
}

struct MvCmd {
    Common c;
    double x = 0, y = 0;
    std::vector<double> sigma{0.0, 0.5, 1.0};
    std::vector<double> heights{1e2, 1e3, 1e4};
    double ratio_factor = 100;
};

int run_mv(const MvCmd& a) {
    sl_params p{};
    check(sl_params_from_xy(a.x, a.y, &p));
    SupportPtr s = make_support(p, a.c);
    const auto members = members_of(s.get());
    if (members.empty()) throw UsageError("mv verify: the support is empty");

    Report r;
    r.command = "mv verify";
    echo_params(r.params, p, false);
    r.params.add("strict_smooth", a.c.strict).add("window", std::string("symmetric"));
    const double t_ratio = a.ratio_factor * static_cast<double>(members.back());
    r.params.add("ratio_T", t_ratio);
    r.fields.add("support_size", static_cast<uint64_t>(members.size()));
    r.table_name = "checks";
    bool all_pass = true;
    for (double sigma : a.sigma) {
        for (double T : a.heights) {
            double integral = 0, bound = 0;
            check(sl_mean_square(s.get(), sigma, -T, T, 0, &integral));
            check(sl_mv_bound(s.get(), sigma, T, &bound));
            const bool pass = integral <= bound;
            all_pass = all_pass && pass;
            Record row;
            row.add("check", std::string("bound")).add("sigma", sigma).add("T", T);
            row.add("integral", integral).add("reference", bound).add("ratio", integral / bound);
            row.add("pass", pass);
            r.rows.push_back(std::move(row));
        }
        double integral = 0, diag = 0;
        check(sl_mean_square(s.get(), sigma, -t_ratio, t_ratio, 0, &integral));
        for (uint64_t n : members) diag += std::pow(static_cast<double>(n), -2 * sigma);
        const double reference = 2 * t_ratio * diag;
        const double ratio = integral / reference;
        const bool pass = ratio >= 0.9 && ratio <= 1.1;
        all_pass = all_pass && pass;
        Record row;
        row.add("check", std::string("ratio")).add("sigma", sigma).add("T", t_ratio);
        row.add("integral", integral).add("reference", reference).add("ratio", ratio).add("pass", pass);
        r.rows.push_back(std::move(row));
    }
    r.fields.add("pass", all_pass);
    emit(r, a.c.format);
    return all_pass ? kExitOk : kExitVerifyFailed;
}

struct ExplicitCmd {
    Common c;
    double x = 0, y = 0;
    Interval iv;
    std::string zeros;
    std::vector<double> t_zeros;
    std::optional<double> t_line;
};

int run_explicit(const ExplicitCmd& a) {
    const sl_params p = resolve_interval(a.x, a.y, a.iv);
    std::string path;
    ZerosPtr zeros = load_zero_table(a.zeros, path);
    SupportPtr s = make_support(p, a.c);
    std::vector<double> heights = a.t_zeros;
    if (heights.empty()) heights.push_back(sl_zero_table_max_height(zeros.get()));

    Report r;
    r.command = "explicit-i";
    echo_params(r.params, p);
    r.params.add("c", 1 + 1 / std::log(p.x)).add("strict_smooth", a.c.strict);
    if (a.t_line) r.params.add("t_line", *a.t_line);
    r.params.add("zeros", path);
    r.table_name = "reports";
    for (double T : heights) {
        sl_ireport ir{};
        check(sl_explicit_i(&p, s.get(), zeros.get(), T, a.c.strict, a.c.threads, &ir));
        Record row;
        row.add("t_zeros", ir.t_zeros)
            .add("arithmetic", ir.arithmetic)
            .add("main_term", ir.main_term)
            .add("zero_sum", ir.zero_sum)
            .add("analytic", ir.analytic)
            .add("leftline_budget", ir.leftline_budget)
            .add("relative_gap", ir.relative_gap)
            .add("zero_sum_imag", ir.zero_sum_imag)
            .add("last_term", ir.last_term)
            .add("zeros_used", ir.zeros_used)
            .add("support_size", ir.support_size)
            .add("contributors_smooth", ir.contributors_smooth != 0);
        r.rows.push_back(std::move(row));
    }
    emit(r, a.c.format);
    return kExitOk;
}

struct SinCmd {
    Common c;
    double x = 0, y = 0;
    Interval iv;
    std::string zeros;
    std::optional<double> t_zeros;
};

int run_sin(const SinCmd& a) {
    const sl_params p = resolve_interval(a.x, a.y, a.iv);
    std::string path;
    ZerosPtr zeros = load_zero_table(a.zeros, path);
    SupportPtr s = make_support(p, a.c);
    const double T = a.t_zeros.value_or(sl_zero_table_max_height(zeros.get()));
    sl_sin_sum out{};
    check(sl_zero_sum_sin(s.get(), zeros.get(), p.delta, T, &out));

    Report r;
    r.command = "zero-sum-sin";
    echo_params(r.params, p);
    r.params.add("T", T).add("strict_smooth", a.c.strict).add("zeros", path);
    const bool pass = !out.bound_applicable || out.value >= out.lower_bound;
    r.fields.add("value", out.value)
        .add("lower_bound", out.lower_bound)
        .add("bound_applicable", out.bound_applicable != 0)
        .add("zeros_used", out.zeros_used)
        .add("pass", pass);
    emit(r, a.c.format);
    return pass ? kExitOk : kExitVerifyFailed;
}

struct J2Cmd {
    Common c;
    std::optional<double> x, y;
    Interval iv;
    std::vector<uint64_t> members;
};

int run_j2(const J2Cmd& a) {
    Report r;
    r.command = "j2";
    SupportPtr s;
    double delta = 0;
    if (!a.members.empty()) {
        if (a.x || a.y) throw UsageError("--members replaces --x/--y");
        if (!a.iv.delta || a.iv.z) throw UsageError("--members needs --delta");
        delta = *a.iv.delta;
        sl_support* raw = nullptr;
        check(sl_support_from_members(a.members.data(), a.members.size(), &raw));
        s.reset(raw);
        r.params.add("delta", delta).add("members", a.members);
    } else {
        if (!a.x || !a.y) throw UsageError("j2 needs --x and --y, or --members with --delta");
        const sl_params p = resolve_interval(*a.x, *a.y, a.iv);
        delta = p.delta;
        s = make_support(p, a.c);
        echo_params(r.params, p);
        r.params.add("strict_smooth", a.c.strict);
    }
    double j2 = 0;
    check(sl_j2(delta, s.get(), &j2));
    const bool pass = j2 <= 0;
    r.fields.add("j2", j2).add("support_size", static_cast<uint64_t>(sl_support_size(s.get())));
    r.fields.add("nonpositive", pass);
    emit(r, a.c.format);
    return pass ? kExitOk : kExitVerifyFailed;
}

struct ZerosCmd {
    Common c;
    std::string zeros;
    std::vector<double> heights{100, 1000};
};

int run_zeros(const ZerosCmd& a) {
    std::string path;
    ZerosPtr zeros = load_zero_table(a.zeros, path);
    const size_t n = sl_zero_table_size(zeros.get());
    const double* g = sl_zero_table_data(zeros.get());
    double gap = 0;
    for (size_t i = 1; i < n; ++i) gap = std::max(gap, g[i] - g[i - 1]);

    Report r;
    r.command = "zeros check";
    r.params.add("zeros", path);
    r.fields.add("size", static_cast<uint64_t>(n))
        .add("first", n ? g[0] : 0.0)
        .add("max_height", sl_zero_table_max_height(zeros.get()))
        .add("max_gap", gap);
    r.table_name = "counts";
    bool all_pass = true;
    for (double T : a.heights) {
        sl_count_report c{};
        check(sl_zero_count_check(zeros.get(), T, &c));
        all_pass = all_pass && !c.flagged;
        Record row;
        row.add("T", c.T).add("n_table", c.n_table).add("n_rvm", c.n_rvm);
        row.add("deviation", c.deviation).add("tolerance", c.tolerance);
        row.add("s_integral", c.s_integral).add("s_bound", c.s_bound);
        row.add("window_checked", c.window_checked != 0).add("pass", c.flagged == 0);
        r.rows.push_back(std::move(row));
    }
    r.fields.add("pass", all_pass);
    emit(r, a.c.format);
    return all_pass ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"smoothlab: smooth numbers in short intervals"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(sl_version()));

    int status = kExitOk;
    auto guard = [&status](auto fn) {
        return [&status, fn] { status = fn(); };
    };

    PsiCmd psi;
    auto* psi_cmd = app.add_subcommand("psi", "Count y-smooth n <= x");
    psi_cmd->add_option("--x", psi.x, "Upper limit")->required();
    psi_cmd->add_option("--y", psi.y, "Smoothness bound")->required();
    add_strict(psi_cmd, psi.c);
    add_common(psi_cmd, psi.c);
    psi_cmd->callback(guard([&] { return run_psi(psi); }));

    RhoCmd rho;
    auto* rho_cmd = app.add_subcommand("rho", "Dickman rho values or a table dump");
    rho_cmd->add_option("--u", rho.u, "Evaluation points");
    rho_cmd->add_flag("--dump", rho.dump, "Dump rho on [0, u_max] every --dump-step");
    rho_cmd->add_option("--dump-step", rho.dump_step)->capture_default_str();
    rho_cmd->add_option("--u-max", rho.u_max, "Table extent")->capture_default_str();
    rho_cmd->add_option("--step", rho.step, "Grid step, 1/N for even N")->capture_default_str();
    add_common(rho_cmd, rho.c);
    rho_cmd->callback(guard([&] { return run_rho(rho); }));

    FindSmoothCmd fs;
    auto* fs_cmd = app.add_subcommand("find-smooth", "List y-smooth integers in (x, x + z]");
    fs_cmd->add_option("--x", fs.x)->required();
    fs_cmd->add_option("--y", fs.y)->required();
    add_interval(fs_cmd, fs.iv);
    fs_cmd->add_flag("--theorem", fs.theorem, "Take z = B u sqrt(x) / rho(u/2)");
    fs_cmd->add_option("--B", fs.B, "Constant in the theorem-mode z")->capture_default_str();
    fs_cmd->add_option("--epsilon", fs.epsilon, "Report z x^{-epsilon} alongside the count");
    fs_cmd->add_flag("--count-only", fs.count_only, "Omit the list of integers");
    add_strict(fs_cmd, fs.c);
    add_common(fs_cmd, fs.c);
    fs_cmd->callback(guard([&] { return run_find_smooth(fs); }));

    SupportCmd sup;
    auto* sup_cmd = app.add_subcommand("support", "Support set, M(1), M(0) and their bounds");
    sup_cmd->add_option("--x", sup.x)->required();
    sup_cmd->add_option("--y", sup.y)->required();
    sup_cmd->add_flag("--count-only", sup.count_only, "Omit the member list");
    add_strict(sup_cmd, sup.c);
    add_common(sup_cmd, sup.c);
    sup_cmd->callback(guard([&] { return run_support(sup); }));

    KernelsCmd ker;
    auto* ker_cmd = app.add_subcommand("kernels", "Perron kernel checks");
    ker_cmd->require_subcommand(1);
    auto* ker_verify = ker_cmd->add_subcommand("verify", "Numeric line integral vs closed form");
    ker_verify->add_option("--kernel", ker.kernel)
        ->check(CLI::IsMember({"all", "log", "minlog", "sqrt-tent"}))
        ->capture_default_str();
    ker_verify->add_option("--delta", ker.delta)->capture_default_str();
    ker_verify->add_option("--span", ker.span_factor, "Sample |log xi| <= span * delta")
        ->capture_default_str();
    ker_verify->add_option("--c", ker.c_line, "Real part of the line")->capture_default_str();
    ker_verify->add_option("--t-line", ker.T, "Truncation height of the line integral")
        ->capture_default_str();
    ker_verify->add_option("--samples", ker.samples, "Sample points per kernel")
        ->check(CLI::Range(1u, 100000u))
        ->capture_default_str();
    add_common(ker_verify, ker.c);
    ker_verify->callback(guard([&] { return run_kernels(ker); }));

    MvCmd mv;
    auto* mv_cmd = app.add_subcommand("mv", "Mean-value checks for M(s)");
    mv_cmd->require_subcommand(1);
    auto* mv_verify = mv_cmd->add_subcommand("verify", "Mean square over |t| <= T vs the bound");
    mv_verify->add_option("--x", mv.x)->required();
    mv_verify->add_option("--y", mv.y)->required();
    mv_verify->add_option("--sigma", mv.sigma)->capture_default_str();
    mv_verify->add_option("--t-line", mv.heights, "Heights T")->capture_default_str();
    mv_verify->add_option("--ratio-factor", mv.ratio_factor, "Diagonal check at T = factor * n_max")
        ->capture_default_str();
    add_strict(mv_verify, mv.c);
    add_common(mv_verify, mv.c);
    mv_verify->callback(guard([&] { return run_mv(mv); }));

    ExplicitCmd ex;
    auto* ex_cmd = app.add_subcommand("explicit-i", "Both sides of the explicit formula for I");
    ex_cmd->add_option("--x", ex.x)->required();
    ex_cmd->add_option("--y", ex.y)->required();
    add_interval(ex_cmd, ex.iv);
    ex_cmd->add_option("--zeros", ex.zeros, "Zero table (default: $SMOOTHLAB_ZEROS)");
    ex_cmd->add_option("--t-zeros", ex.t_zeros, "Zero-sum truncation heights");
    ex_cmd->add_option("--t-line", ex.t_line, "Recorded only; the left-line integral is budgeted");
    add_strict(ex_cmd, ex.c);
    add_common(ex_cmd, ex.c);
    ex_cmd->callback(guard([&] { return run_explicit(ex); }));

    SinCmd sin;
    auto* sin_cmd = app.add_subcommand("zero-sum-sin", "Sum of |M(rho)|^2 (2 sin(delta gamma)/gamma)^2");
    sin_cmd->add_option("--x", sin.x)->required();
    sin_cmd->add_option("--y", sin.y)->required();
    add_interval(sin_cmd, sin.iv);
    sin_cmd->add_option("--zeros", sin.zeros, "Zero table (default: $SMOOTHLAB_ZEROS)");
    sin_cmd->add_option("--t-zeros", sin.t_zeros, "Truncation height");
    add_strict(sin_cmd, sin.c);
    add_common(sin_cmd, sin.c);
    sin_cmd->callback(guard([&] { return run_sin(sin); }));

    J2Cmd j2;
    auto* j2_cmd = app.add_subcommand("j2", "Closed form of J2");
    j2_cmd->add_option("--x", j2.x);
    j2_cmd->add_option("--y", j2.y);
    add_interval(j2_cmd, j2.iv);
    j2_cmd->add_option("--members", j2.members, "Synthetic support (ascending)");
    add_strict(j2_cmd, j2.c);
    add_common(j2_cmd, j2.c);
    j2_cmd->callback(guard([&] { return run_j2(j2); }));

    ZerosCmd zc;
    auto* zeros_cmd = app.add_subcommand("zeros", "Zero table utilities");
    zeros_cmd->require_subcommand(1);
    auto* zeros_check = zeros_cmd->add_subcommand("check", "Counts vs Riemann-von Mangoldt");
    zeros_check->add_option("--zeros", zc.zeros, "Zero table (default: $SMOOTHLAB_ZEROS)");
    zeros_check->add_option("--at", zc.heights, "Heights T")->capture_default_str();
    add_common(zeros_check, zc.c);
    zeros_check->callback(guard([&] { return run_zeros(zc); }));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return status;
}
