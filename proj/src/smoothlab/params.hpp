#pragma once

namespace smoothlab {

// A problem instance: x, the smoothness bound y = x^{1/u}, and the interval
// (x, x + z] written as x * e^{2 delta} = x + z.
struct SmoothParams {
    double x = 0;
    double y = 0;
    double u = 0;
    double delta = 0;
    double z = 0;

    // No interval: delta = z = 0. Enough for anything that depends on x, y only.
    static SmoothParams from_xy(double x, double y);
    static SmoothParams from_z(double x, double y, double z);
    static SmoothParams from_delta(double x, double y, double delta);
    // As from_z, additionally requiring y >= exp(5 sqrt(log x log log x)).
    static SmoothParams theorem_mode(double x, double y, double z);
};

// exp(5 sqrt(log x * log log x)); requires x > e.
double theorem_range_threshold(double x);
bool in_theorem_range(double x, double y);

}  // namespace smoothlab
