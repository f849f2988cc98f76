#pragma once

// Inverse Mellin transforms along Re(s) = c:
//
//   LOG        xi^s / s^2                                   -> log xi on xi >= 1
//   MINLOG     xi^s (e^{delta s} - 1)^2 / s^2               -> tent on [e^{-2delta}, 1]
//   SQRT_TENT  xi^s (2 sinh(delta (s - 1/2)) / (s - 1/2))^2 -> sqrt(xi)(2delta - |log xi|)

namespace smoothlab {

enum class KernelKind { log, minlog, sqrt_tent };

struct KernelSpec {
    KernelKind kind = KernelKind::log;
    double delta = 0;  // unused by LOG
};

void validate(const KernelSpec& spec);

double kernel_closed(const KernelSpec& spec, double xi);

struct KernelNumeric {
    double value = 0;  // real part of the truncated line integral
    double imag = 0;   // should vanish up to truncation
};

// (1 / 2 pi i) * integral over s = c + it, |t| <= T, composite Simpson.
KernelNumeric kernel_numeric(const KernelSpec& spec, double xi, double c, double T, double step);

// Coarsest step accepted by kernel_numeric: 0.1 / max(1, |log xi| + 2 delta).
double kernel_max_step(const KernelSpec& spec, double xi);

const char* kernel_name(KernelKind kind);

}  // namespace smoothlab
