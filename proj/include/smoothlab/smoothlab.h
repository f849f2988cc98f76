#ifndef SMOOTHLAB_H
#define SMOOTHLAB_H

/*
 * smoothlab C API.
 *
 * Every fallible call returns an sl_status; on failure a message describing
 * the error is available from sl_last_error() on the calling thread until the
 * next failing call. Handles are opaque, owned by the caller, and released
 * with the matching *_free function (NULL is accepted). Handles are immutable
 * after construction and may be shared between threads.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(SMOOTHLAB_BUILDING)
#    define SL_API __declspec(dllexport)
#  else
#    define SL_API __declspec(dllimport)
#  endif
#else
#  define SL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sl_status {
    SL_OK = 0,
    SL_ERR_DOMAIN = 1,
    SL_ERR_RANGE = 2,
    SL_ERR_LOAD = 3,
    SL_ERR_IO = 4,
    SL_ERR_INVALID_ARGUMENT = 5,
    SL_ERR_PRECISION = 6,
    SL_ERR_NO_MEMORY = 7,
    SL_ERR_INTERNAL = 8
} sl_status;

SL_API const char* sl_status_name(sl_status status);
SL_API const char* sl_last_error(void);
SL_API const char* sl_version(void);

typedef struct sl_u64_list sl_u64_list;
typedef struct sl_rho_table sl_rho_table;
typedef struct sl_support sl_support;
typedef struct sl_zero_table sl_zero_table;

/* ---- integer lists ---------------------------------------------------- */

SL_API size_t sl_u64_list_size(const sl_u64_list* list);
SL_API const uint64_t* sl_u64_list_data(const sl_u64_list* list);
SL_API void sl_u64_list_free(sl_u64_list* list);

/* ---- problem instance ------------------------------------------------- */

typedef struct sl_params {
    double x;
    double y;
    double u;     /* log x / log y */
    double delta; /* x e^{2 delta} = x + z */
    double z;
} sl_params;

/* delta = z = 0; for support-level calls that ignore the interval. */
SL_API sl_status sl_params_from_xy(double x, double y, sl_params* out);
SL_API sl_status sl_params_from_z(double x, double y, double z, sl_params* out);
SL_API sl_status sl_params_from_delta(double x, double y, double delta, sl_params* out);
/* exp(5 sqrt(log x log log x)); *holds is 1 when y reaches it. */
SL_API sl_status sl_theorem_range(double x, double y, double* threshold, int* holds);

/* ---- arithmetic ------------------------------------------------------- */

/* Smallest prime factor of lo .. lo + len - 1, one entry per integer. */
SL_API sl_status sl_spf_segment(uint64_t lo, uint64_t len, sl_u64_list** out);
/* Writes up to cap (prime, exponent) pairs; *count receives the total. */
SL_API sl_status sl_factorize(uint64_t n, uint64_t* primes, uint32_t* exponents, size_t cap,
                              size_t* count);
SL_API sl_status sl_is_smooth(uint64_t n, double y, int strict, int* out);
SL_API sl_status sl_von_mangoldt(uint64_t n, double* out);
SL_API sl_status sl_d3_count(uint64_t n, uint64_t* out);
SL_API sl_status sl_psi_count(double x, double y, int strict, uint64_t* out);
/* y-smooth n with x < n <= x + z, ascending. */
SL_API sl_status sl_smooth_in_interval(double x, double z, double y, int strict, unsigned threads,
                                       sl_u64_list** out);

/* ---- Dickman rho ------------------------------------------------------ */

/* step <= 0 and u_max <= 0 select the defaults (1/1024 and 50). */
SL_API sl_status sl_rho_table_new(double step, double u_max, sl_rho_table** out);
SL_API void sl_rho_table_free(sl_rho_table* table);
SL_API double sl_rho_table_step(const sl_rho_table* table);
SL_API double sl_rho_table_u_max(const sl_rho_table* table);
SL_API sl_status sl_rho(const sl_rho_table* table, double u, double* out);
/* u^{-u/2} */
SL_API double sl_rho_asymptotic(double u);

/* ---- Dirichlet polynomial M(s) ---------------------------------------- */

SL_API sl_status sl_support_build(const sl_params* params, int strict, unsigned threads,
                                  sl_support** out);
SL_API sl_status sl_support_from_members(const uint64_t* members, size_t count, sl_support** out);
SL_API void sl_support_free(sl_support* support);
SL_API size_t sl_support_size(const sl_support* support);
SL_API const uint64_t* sl_support_members(const sl_support* support);
/* Rounded-inward integer bounds of the support interval. */
SL_API void sl_support_bounds(const sl_support* support, uint64_t* lo, uint64_t* hi);

SL_API sl_status sl_m_eval(const sl_support* support, double re, double im, double* out_re,
                           double* out_im);

typedef struct sl_m1_report {
    double m1;
    double bound; /* rho(u/2) log(y) / 24 */
    double ratio;
    int pass;
    double m0;
    double m0_bound; /* sqrt(x) / y^{1/4} */
    int m0_pass;
} sl_m1_report;

SL_API sl_status sl_m1_check(const sl_params* params, const sl_support* support,
                             const sl_rho_table* rho_table, sl_m1_report* out);
SL_API double sl_mean_square_default_step(const sl_support* support);
/* step <= 0 selects the default step. */
SL_API sl_status sl_mean_square(const sl_support* support, double sigma, double t_lo, double t_hi,
                                double step, double* out);
SL_API sl_status sl_mv_bound(const sl_support* support, double sigma, double T, double* out);

/* ---- Perron kernels --------------------------------------------------- */

typedef enum sl_kernel_kind {
    SL_KERNEL_LOG = 0,
    SL_KERNEL_MINLOG = 1,
    SL_KERNEL_SQRT_TENT = 2
} sl_kernel_kind;

SL_API sl_status sl_kernel_closed(sl_kernel_kind kind, double delta, double xi, double* out);
/* step <= 0 selects the coarsest admissible step. */
SL_API sl_status sl_kernel_numeric(sl_kernel_kind kind, double delta, double xi, double c,
                                   double T, double step, double* out_re, double* out_im);

/* ---- zeta zeros ------------------------------------------------------- */

SL_API sl_status sl_zero_table_load(const char* path, sl_zero_table** out);
SL_API sl_status sl_zero_table_write(const sl_zero_table* table, const char* path);
SL_API void sl_zero_table_free(sl_zero_table* table);
SL_API size_t sl_zero_table_size(const sl_zero_table* table);
SL_API const double* sl_zero_table_data(const sl_zero_table* table);
SL_API double sl_zero_table_max_height(const sl_zero_table* table);

typedef struct sl_count_report {
    double T;
    uint64_t n_table;
    double n_rvm;
    double deviation;
    double tolerance;
    /* Integral of N_table - rvm over [window_lo, window_hi] against a
       Turing-type bound; catches single missing zeros. */
    double window_lo, window_hi;
    double s_integral;
    double s_bound;
    int window_checked;
    int flagged;
} sl_count_report;

SL_API sl_status sl_zero_count_check(const sl_zero_table* table, double T, sl_count_report* out);

/* ---- explicit formula ------------------------------------------------- */

SL_API sl_status sl_arithmetic_side(const sl_params* params, const sl_support* support,
                                    int strict, unsigned threads, double* out,
                                    int* contributors_smooth);
SL_API sl_status sl_main_term(const sl_params* params, const sl_support* support, double* out);

typedef struct sl_zero_sum {
    double value;
    double imag_residue;
    double last_term;
    uint64_t zeros_used;
} sl_zero_sum;

SL_API sl_status sl_zero_sum_i(const sl_params* params, const sl_support* support,
                               const sl_zero_table* zeros, double t_zeros, unsigned threads,
                               sl_zero_sum* out);

typedef struct sl_ireport {
    double x, y, u, delta, z, c, t_zeros;
    double arithmetic;
    double main_term;
    double zero_sum;
    double analytic;
    double leftline_budget;
    double relative_gap;
    double zero_sum_imag;
    double last_term;
    uint64_t zeros_used;
    uint64_t support_size;
    int contributors_smooth;
} sl_ireport;

SL_API sl_status sl_explicit_i(const sl_params* params, const sl_support* support,
                               const sl_zero_table* zeros, double t_zeros, int strict,
                               unsigned threads, sl_ireport* out);

typedef enum sl_report_format {
    SL_FORMAT_JSON = 0,
    SL_FORMAT_CSV_ROW = 1,
    SL_FORMAT_CSV_HEADER = 2
} sl_report_format;

/* Writes a NUL-terminated rendering into buf when cap suffices; *needed
   receives the length excluding the terminator. */
SL_API sl_status sl_ireport_format(const sl_ireport* report, sl_report_format format, char* buf,
                                   size_t cap, size_t* needed);

typedef struct sl_sin_sum {
    double value;
    double lower_bound;
    int bound_applicable;
    uint64_t zeros_used;
} sl_sin_sum;

SL_API sl_status sl_zero_sum_sin(const sl_support* support, const sl_zero_table* zeros,
                                 double delta, double T, sl_sin_sum* out);
SL_API sl_status sl_j2(double delta, const sl_support* support, double* out);

typedef struct sl_theorem_z {
    double x, y, B;
    double u;
    double rho_half_u;
    double z;
    double delta;
    double inv_delta;
    double sqrt_x_over_y14;
    int inverse_delta_dominates;
    double range_threshold;
    int in_range;
} sl_theorem_z;

SL_API sl_status sl_theorem_z_compute(double x, double y, double B, const sl_rho_table* rho_table,
                                      sl_theorem_z* out);

#ifdef __cplusplus
}
#endif

#endif /* SMOOTHLAB_H */
