#include "smoothlab/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "smoothlab/error.hpp"
#include "smoothlab/summation.hpp"

namespace smoothlab {

void validate(const KernelSpec& spec) {
    if (spec.kind != KernelKind::log && !(spec.delta > 0))
        fail(errc::domain, "MINLOG and SQRT_TENT kernels need delta > 0");
    if (!std::isfinite(spec.delta)) fail(errc::domain, "kernel delta must be finite");
}

const char* kernel_name(KernelKind kind) {
    switch (kind) {
        case KernelKind::log: return "LOG";
        case KernelKind::minlog: return "MINLOG";
        case KernelKind::sqrt_tent: return "SQRT_TENT";
    }
    return "?";
}

double kernel_closed(const KernelSpec& spec, double xi) {
    validate(spec);
    if (!(xi > 0) || !std::isfinite(xi)) fail(errc::domain, "kernel argument must be positive");
    const double lx = std::log(xi);
    const double d = spec.delta;
    switch (spec.kind) {
        case KernelKind::log:
            return lx >= 0 ? lx : 0.0;
        case KernelKind::minlog:
            return (lx >= -2 * d && lx <= 0) ? std::min(lx + 2 * d, -lx) : 0.0;
        case KernelKind::sqrt_tent:
            return std::fabs(lx) <= 2 * d ? std::sqrt(xi) * (2 * d - std::fabs(lx)) : 0.0;
    }
    return 0.0;
}

double kernel_max_step(const KernelSpec& spec, double xi) {
    const double d = spec.kind == KernelKind::log ? 0.0 : spec.delta;
    return 0.1 / std::max(1.0, std::fabs(std::log(xi)) + 2 * d);
}

KernelNumeric kernel_numeric(const KernelSpec& spec, double xi, double c, double T, double step) {
    validate(spec);
    if (!(xi > 0) || !std::isfinite(xi)) fail(errc::domain, "kernel argument must be positive");
    const double c_min = spec.kind == KernelKind::sqrt_tent ? 0.5 : 0.0;
    if (!(c > c_min) || !std::isfinite(c)) fail(errc::range, "abscissa c outside the legal half-plane");
    if (!(T > 0) || !std::isfinite(T)) fail(errc::range, "truncation height T must be positive");
    if (!(step > 0) || step > kernel_max_step(spec, xi))
        fail(errc::range, "step does not resolve the kernel oscillation");

    const double lx = std::log(xi);
    const double d = spec.delta;
    auto integrand = [&](double t) -> std::complex<double> {
        const std::complex<double> s{c, t};
        const std::complex<double> xs = std::exp(s * lx);
        switch (spec.kind) {
            case KernelKind::log:
                return xs / (s * s);
            case KernelKind::minlog: {
                const std::complex<double> e = std::exp(d * s) - 1.0;
                return xs * (e * e) / (s * s);
            }
            case KernelKind::sqrt_tent: {
                const std::complex<double> w = s - 0.5;
                const std::complex<double> sh = std::exp(d * w) - std::exp(-d * w);
                return xs * (sh * sh) / (w * w);
            }
        }
        return {};
    };

    auto intervals = static_cast<long long>(std::ceil(2 * T / step));
    if (intervals % 2) ++intervals;
    const double h = 2 * T / static_cast<double>(intervals);
    compensated_complex_sum<double> acc;
    for (long long j = 0; j <= intervals; ++j) {
        const double t = -T + static_cast<double>(j) * h;
        const double w = (j == 0 || j == intervals) ? 1.0 : (j % 2 ? 4.0 : 2.0);
        acc.add(w * integrand(t));
    }
    // ds = i dt cancels the i in 1/(2 pi i).
    const std::complex<double> total = acc.value() * (h / 3) / (2 * std::numbers::pi);
    return {total.real(), total.imag()};
}

}  // namespace smoothlab
