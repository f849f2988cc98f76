#include "smoothlab/params.hpp"

#include <cmath>
#include <numbers>

#include "smoothlab/error.hpp"

namespace smoothlab {

namespace {

void check_xy(double x, double y) {
    if (!std::isfinite(x) || !std::isfinite(y)) fail(errc::domain, "x and y must be finite");
    if (!(y >= 2)) fail(errc::domain, "y must be >= 2");
    if (!(x >= y)) fail(errc::domain, "x must be >= y");
}

}  // namespace

SmoothParams SmoothParams::from_xy(double x, double y) {
    check_xy(x, y);
    SmoothParams p;
    p.x = x;
    p.y = y;
    p.u = std::log(x) / std::log(y);
    return p;
}

SmoothParams SmoothParams::from_z(double x, double y, double z) {
    check_xy(x, y);
    if (!(z > 0) || !std::isfinite(z)) fail(errc::domain, "z must be positive and finite");
    SmoothParams p;
    p.x = x;
    p.y = y;
    p.u = std::log(x) / std::log(y);
    p.z = z;
    p.delta = 0.5 * std::log1p(z / x);
    return p;
}

SmoothParams SmoothParams::from_delta(double x, double y, double delta) {
    check_xy(x, y);
    if (!(delta > 0) || !std::isfinite(delta)) fail(errc::domain, "delta must be positive");
    SmoothParams p;
    p.x = x;
    p.y = y;
    p.u = std::log(x) / std::log(y);
    p.delta = delta;
    p.z = x * std::expm1(2 * delta);
    return p;
}

SmoothParams SmoothParams::theorem_mode(double x, double y, double z) {
    SmoothParams p = from_z(x, y, z);
    if (!in_theorem_range(x, y))
        fail(errc::domain, "y is below exp(5 sqrt(log x log log x))");
    return p;
}

double theorem_range_threshold(double x) {
    if (!(x > std::numbers::e)) fail(errc::domain, "theorem range needs x > e");
    const double lx = std::log(x);
    return std::exp(5 * std::sqrt(lx * std::log(lx)));
}

bool in_theorem_range(double x, double y) {
    return x > std::numbers::e && y >= theorem_range_threshold(x) && x >= y;
}

}  // namespace smoothlab
