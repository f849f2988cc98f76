#include "smoothlab/smoothlab.h"

#include <cstring>
#include <new>
#include <string>
#include <vector>

#include "smoothlab/arith.hpp"
#include "smoothlab/dickman.hpp"
#include "smoothlab/dirichlet.hpp"
#include "smoothlab/error.hpp"
#include "smoothlab/explicit_formula.hpp"
#include "smoothlab/kernels.hpp"
#include "smoothlab/params.hpp"
#include "smoothlab/zeta_zeros.hpp"

namespace sl = smoothlab;

struct sl_u64_list {
    std::vector<uint64_t> values;
};
struct sl_rho_table {
    sl::RhoTable table;
};
struct sl_support {
    sl::DirichletPoly poly;
};
struct sl_zero_table {
    sl::ZeroTable table;
};

namespace {

thread_local std::string last_error;

sl_status to_status(sl::errc code) {
    switch (code) {
        case sl::errc::domain: return SL_ERR_DOMAIN;
        case sl::errc::range: return SL_ERR_RANGE;
        case sl::errc::load: return SL_ERR_LOAD;
        case sl::errc::io: return SL_ERR_IO;
        case sl::errc::invalid_argument: return SL_ERR_INVALID_ARGUMENT;
        case sl::errc::precision: return SL_ERR_PRECISION;
    }
    return SL_ERR_INTERNAL;
}

template <typename Fn>
sl_status guarded(Fn&& fn) {
    try {
        fn();
        return SL_OK;
    } catch (const sl::error& e) {
        last_error = e.what();
        return to_status(e.code());
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
        return SL_ERR_NO_MEMORY;
    } catch (const std::exception& e) {
        last_error = e.what();
        return SL_ERR_INTERNAL;
    } catch (...) {
        last_error = "unknown error";
        return SL_ERR_INTERNAL;
    }
}

void require(const void* p, const char* what) {
    if (p == nullptr) sl::fail(sl::errc::invalid_argument, std::string(what) + " is NULL");
}

sl::SmoothParams from_c(const sl_params* p) {
    require(p, "params");
    sl::SmoothParams out;
    out.x = p->x;
    out.y = p->y;
    out.u = p->u;
    out.delta = p->delta;
    out.z = p->z;
    return out;
}

void to_c(const sl::SmoothParams& p, sl_params* out) {
    out->x = p.x;
    out->y = p.y;
    out->u = p.u;
    out->delta = p.delta;
    out->z = p.z;
}

sl::KernelSpec kernel_spec(sl_kernel_kind kind, double delta) {
    switch (kind) {
        case SL_KERNEL_LOG: return {sl::KernelKind::log, delta};
        case SL_KERNEL_MINLOG: return {sl::KernelKind::minlog, delta};
        case SL_KERNEL_SQRT_TENT: return {sl::KernelKind::sqrt_tent, delta};
    }
    sl::fail(sl::errc::invalid_argument, "unknown kernel kind");
}

sl::IReport from_c(const sl_ireport* r) {
    sl::IReport o;
    o.x = r->x;
    o.y = r->y;
    o.u = r->u;
    o.delta = r->delta;
    o.z = r->z;
    o.c = r->c;
    o.t_zeros = r->t_zeros;
    o.arithmetic = r->arithmetic;
    o.main_term = r->main_term;
    o.zero_sum = r->zero_sum;
    o.analytic = r->analytic;
    o.leftline_budget = r->leftline_budget;
    o.relative_gap = r->relative_gap;
    o.zero_sum_imag = r->zero_sum_imag;
    o.last_term = r->last_term;
    o.zeros_used = r->zeros_used;
    o.support_size = r->support_size;
    o.contributors_smooth = r->contributors_smooth != 0;
    return o;
}

}  // namespace

extern "C" {

const char* sl_status_name(sl_status status) {
    switch (status) {
        case SL_OK: return "ok";
        case SL_ERR_DOMAIN: return "domain error";
        case SL_ERR_RANGE: return "range error";
        case SL_ERR_LOAD: return "load error";
        case SL_ERR_IO: return "i/o error";
        case SL_ERR_INVALID_ARGUMENT: return "invalid argument";
        case SL_ERR_PRECISION: return "precision error";
        case SL_ERR_NO_MEMORY: return "out of memory";
        case SL_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* sl_last_error(void) { return last_error.c_str(); }

const char* sl_version(void) { return "0.1.0"; }

size_t sl_u64_list_size(const sl_u64_list* list) { return list ? list->values.size() : 0; }
const uint64_t* sl_u64_list_data(const sl_u64_list* list) {
    return list ? list->values.data() : nullptr;
}
void sl_u64_list_free(sl_u64_list* list) { delete list; }

sl_status sl_params_from_xy(double x, double y, sl_params* out) {
    return guarded([&] {
        require(out, "out");
        to_c(sl::SmoothParams::from_xy(x, y), out);
    });
}

sl_status sl_params_from_z(double x, double y, double z, sl_params* out) {
    return guarded([&] {
        require(out, "out");
        to_c(sl::SmoothParams::from_z(x, y, z), out);
    });
}

sl_status sl_params_from_delta(double x, double y, double delta, sl_params* out) {
    return guarded([&] {
        require(out, "out");
        to_c(sl::SmoothParams::from_delta(x, y, delta), out);
    });
}

sl_status sl_theorem_range(double x, double y, double* threshold, int* holds) {
    return guarded([&] {
        require(threshold, "threshold");
        require(holds, "holds");
        *threshold = sl::theorem_range_threshold(x);
        *holds = sl::in_theorem_range(x, y) ? 1 : 0;
    });
}

sl_status sl_spf_segment(uint64_t lo, uint64_t len, sl_u64_list** out) {
    return guarded([&] {
        require(out, "out");
        auto seg = sl::sieve_spf_segment(lo, len);
        auto v = seg.values();
        *out = new sl_u64_list{std::vector<uint64_t>(v.begin(), v.end())};
    });
}

sl_status sl_factorize(uint64_t n, uint64_t* primes, uint32_t* exponents, size_t cap,
                       size_t* count) {
    return guarded([&] {
        require(count, "count");
        const auto f = sl::factorize(n);
        *count = f.factors.size();
        for (size_t i = 0; i < f.factors.size() && i < cap; ++i) {
            if (primes) primes[i] = f.factors[i].prime;
            if (exponents) exponents[i] = f.factors[i].exponent;
        }
    });
}

sl_status sl_is_smooth(uint64_t n, double y, int strict, int* out) {
    return guarded([&] {
        require(out, "out");
        *out = sl::is_smooth(n, y, strict != 0) ? 1 : 0;
    });
}

sl_status sl_von_mangoldt(uint64_t n, double* out) {
    return guarded([&] {
        require(out, "out");
        *out = sl::von_mangoldt(n);
    });
}

sl_status sl_d3_count(uint64_t n, uint64_t* out) {
    return guarded([&] {
        require(out, "out");
        *out = sl::d3_count(n);
    });
}

sl_status sl_psi_count(double x, double y, int strict, uint64_t* out) {
    return guarded([&] {
        require(out, "out");
        sl::PsiOptions opts;
        opts.strict = strict != 0;
        *out = sl::psi_count(x, y, opts);
    });
}

sl_status sl_smooth_in_interval(double x, double z, double y, int strict, unsigned threads,
                                sl_u64_list** out) {
    return guarded([&] {
        require(out, "out");
        *out = new sl_u64_list{sl::smooth_in_interval(x, z, y, strict != 0, threads)};
    });
}

sl_status sl_rho_table_new(double step, double u_max, sl_rho_table** out) {
    return guarded([&] {
        require(out, "out");
        const double s = step > 0 ? step : 1.0 / sl::RhoTable::kDefaultNodesPerUnit;
        const double m = u_max > 0 ? u_max : sl::RhoTable::kDefaultUMax;
        *out = new sl_rho_table{sl::build_rho_table(s, m)};
    });
}

void sl_rho_table_free(sl_rho_table* table) { delete table; }
double sl_rho_table_step(const sl_rho_table* table) { return table ? table->table.step() : 0; }
double sl_rho_table_u_max(const sl_rho_table* table) { return table ? table->table.u_max() : 0; }

sl_status sl_rho(const sl_rho_table* table, double u, double* out) {
    return guarded([&] {
        require(table, "table");
        require(out, "out");
        *out = sl::rho(u, table->table);
    });
}

double sl_rho_asymptotic(double u) { return sl::rho_asymptotic_report(u); }

sl_status sl_support_build(const sl_params* params, int strict, unsigned threads,
                           sl_support** out) {
    return guarded([&] {
        require(out, "out");
        auto set = sl::build_support(from_c(params), strict != 0, threads);
        *out = new sl_support{sl::DirichletPoly(std::move(set))};
    });
}

sl_status sl_support_from_members(const uint64_t* members, size_t count, sl_support** out) {
    return guarded([&] {
        require(out, "out");
        if (count > 0) require(members, "members");
        std::vector<uint64_t> v(members, members + count);
        *out = new sl_support{sl::DirichletPoly(sl::SupportSet::from_members(std::move(v)))};
    });
}

void sl_support_free(sl_support* support) { delete support; }
size_t sl_support_size(const sl_support* support) {
    return support ? support->poly.support().size() : 0;
}
const uint64_t* sl_support_members(const sl_support* support) {
    return support ? support->poly.support().members.data() : nullptr;
}
void sl_support_bounds(const sl_support* support, uint64_t* lo, uint64_t* hi) {
    if (!support) return;
    if (lo) *lo = support->poly.support().lo;
    if (hi) *hi = support->poly.support().hi;
}

sl_status sl_m_eval(const sl_support* support, double re, double im, double* out_re,
                    double* out_im) {
    return guarded([&] {
        require(support, "support");
        require(out_re, "out_re");
        require(out_im, "out_im");
        const auto v = sl::m_eval(support->poly, {re, im});
        *out_re = v.real();
        *out_im = v.imag();
    });
}

sl_status sl_m1_check(const sl_params* params, const sl_support* support,
                      const sl_rho_table* rho_table, sl_m1_report* out) {
    return guarded([&] {
        require(support, "support");
        require(rho_table, "rho_table");
        require(out, "out");
        const auto r = sl::m1_lower_bound_check(from_c(params), support->poly, rho_table->table);
        *out = {r.m1, r.bound, r.ratio, r.pass ? 1 : 0, r.m0, r.m0_bound, r.m0_pass ? 1 : 0};
    });
}

double sl_mean_square_default_step(const sl_support* support) {
    return support ? sl::default_mean_square_step(support->poly) : 0;
}

sl_status sl_mean_square(const sl_support* support, double sigma, double t_lo, double t_hi,
                         double step, double* out) {
    return guarded([&] {
        require(support, "support");
        require(out, "out");
        const double h = step > 0 ? step : sl::default_mean_square_step(support->poly);
        *out = sl::mean_square_integral(support->poly, sigma, t_lo, t_hi, h);
    });
}

sl_status sl_mv_bound(const sl_support* support, double sigma, double T, double* out) {
    return guarded([&] {
        require(support, "support");
        require(out, "out");
        *out = sl::mv_bound(support->poly, sigma, T);
    });
}

sl_status sl_kernel_closed(sl_kernel_kind kind, double delta, double xi, double* out) {
    return guarded([&] {
        require(out, "out");
        *out = sl::kernel_closed(kernel_spec(kind, delta), xi);
    });
}

sl_status sl_kernel_numeric(sl_kernel_kind kind, double delta, double xi, double c, double T,
                            double step, double* out_re, double* out_im) {
    return guarded([&] {
        require(out_re, "out_re");
        require(out_im, "out_im");
        const auto spec = kernel_spec(kind, delta);
        if (!(xi > 0)) sl::fail(sl::errc::domain, "kernel argument must be positive");
        const double h = step > 0 ? step : sl::kernel_max_step(spec, xi);
        const auto r = sl::kernel_numeric(spec, xi, c, T, h);
        *out_re = r.value;
        *out_im = r.imag;
    });
}

sl_status sl_zero_table_load(const char* path, sl_zero_table** out) {
    return guarded([&] {
        require(path, "path");
        require(out, "out");
        *out = new sl_zero_table{sl::load_zeros(path)};
    });
}

sl_status sl_zero_table_write(const sl_zero_table* table, const char* path) {
    return guarded([&] {
        require(table, "table");
        require(path, "path");
        sl::write_zeros(table->table, std::string(path));
    });
}

void sl_zero_table_free(sl_zero_table* table) { delete table; }
size_t sl_zero_table_size(const sl_zero_table* table) { return table ? table->table.size() : 0; }
const double* sl_zero_table_data(const sl_zero_table* table) {
    return table ? table->table.gammas().data() : nullptr;
}
double sl_zero_table_max_height(const sl_zero_table* table) {
    return table ? table->table.max_height() : 0;
}

sl_status sl_zero_count_check(const sl_zero_table* table, double T, sl_count_report* out) {
    return guarded([&] {
        require(table, "table");
        require(out, "out");
        const auto r = sl::count_check(table->table, T);
        *out = {r.T,          r.n_table,   r.n_rvm,      r.deviation,
                r.tolerance,  r.window_lo, r.window_hi,  r.s_integral,
                r.s_bound,    r.window_checked ? 1 : 0, r.flagged ? 1 : 0};
    });
}

sl_status sl_arithmetic_side(const sl_params* params, const sl_support* support, int strict,
                             unsigned threads, double* out, int* contributors_smooth) {
    return guarded([&] {
        require(support, "support");
        require(out, "out");
        const auto a = sl::arithmetic_side(from_c(params), support->poly.support(), strict != 0,
                                           threads);
        *out = a.value;
        if (contributors_smooth) *contributors_smooth = a.contributors_smooth ? 1 : 0;
    });
}

sl_status sl_main_term(const sl_params* params, const sl_support* support, double* out) {
    return guarded([&] {
        require(support, "support");
        require(out, "out");
        *out = sl::main_term_i(from_c(params), support->poly);
    });
}

sl_status sl_zero_sum_i(const sl_params* params, const sl_support* support,
                        const sl_zero_table* zeros, double t_zeros, unsigned threads,
                        sl_zero_sum* out) {
    return guarded([&] {
        require(support, "support");
        require(zeros, "zeros");
        require(out, "out");
        const auto p = from_c(params);
        const auto spec = sl::ContourSpec::make(p, t_zeros, zeros->table);
        const auto r = sl::zero_sum_i(p, support->poly, zeros->table, spec, threads);
        *out = {r.value, r.imag_residue, r.last_term, r.zeros_used};
    });
}

sl_status sl_explicit_i(const sl_params* params, const sl_support* support,
                        const sl_zero_table* zeros, double t_zeros, int strict, unsigned threads,
                        sl_ireport* out) {
    return guarded([&] {
        require(support, "support");
        require(zeros, "zeros");
        require(out, "out");
        const auto p = from_c(params);
        const auto spec = sl::ContourSpec::make(p, t_zeros, zeros->table);
        const auto r = sl::i_two_sided(p, support->poly.support(), support->poly, zeros->table,
                                       spec, strict != 0, threads);
        *out = {r.x,          r.y,
                r.u,          r.delta,
                r.z,          r.c,
                r.t_zeros,    r.arithmetic,
                r.main_term,  r.zero_sum,
                r.analytic,   r.leftline_budget,
                r.relative_gap, r.zero_sum_imag,
                r.last_term,  r.zeros_used,
                r.support_size, r.contributors_smooth ? 1 : 0};
    });
}

sl_status sl_ireport_format(const sl_ireport* report, sl_report_format format, char* buf,
                            size_t cap, size_t* needed) {
    return guarded([&] {
        require(needed, "needed");
        std::string text;
        switch (format) {
            case SL_FORMAT_JSON:
                require(report, "report");
                text = sl::to_json(from_c(report));
                break;
            case SL_FORMAT_CSV_ROW:
                require(report, "report");
                text = sl::to_csv_row(from_c(report));
                break;
            case SL_FORMAT_CSV_HEADER:
                text = sl::csv_header();
                break;
            default:
                sl::fail(sl::errc::invalid_argument, "unknown report format");
        }
        *needed = text.size();
        if (buf && cap > text.size()) std::memcpy(buf, text.c_str(), text.size() + 1);
    });
}

sl_status sl_zero_sum_sin(const sl_support* support, const sl_zero_table* zeros, double delta,
                          double T, sl_sin_sum* out) {
    return guarded([&] {
        require(support, "support");
        require(zeros, "zeros");
        require(out, "out");
        const auto r = sl::zero_sum_sin(support->poly, zeros->table, delta, T);
        *out = {r.value, r.lower_bound, r.bound_applicable ? 1 : 0, r.zeros_used};
    });
}

sl_status sl_j2(double delta, const sl_support* support, double* out) {
    return guarded([&] {
        require(support, "support");
        require(out, "out");
        *out = sl::j2_closed_form(delta, support->poly.support());
    });
}

sl_status sl_theorem_z_compute(double x, double y, double B, const sl_rho_table* rho_table,
                               sl_theorem_z* out) {
    return guarded([&] {
        require(rho_table, "rho_table");
        require(out, "out");
        const auto t = sl::theorem_z(x, y, B, rho_table->table);
        *out = {t.x,
                t.y,
                t.B,
                t.u,
                t.rho_half_u,
                t.z,
                t.delta,
                t.inv_delta,
                t.sqrt_x_over_y14,
                t.inverse_delta_dominates ? 1 : 0,
                t.range_threshold,
                t.in_range ? 1 : 0};
    });
}

}  // extern "C"
