// gen_zeros: tabulate ordinates of the nontrivial zeros of zeta(s) up to a
// given height.
//
// Z(t) is evaluated with the Riemann-Siegel formula carrying the remainder
// terms C0..C4. Zeros are isolated through Gram points grouped into Rosser
// blocks: a block spanning k Gram intervals must show k sign changes of Z,
// and blocks that do not are subdivided until they do. Every bracket is then
// polished with TOMS 748.
//
//   gen_zeros --height 100100 --out data/zeta_zeros.txt
//
// tools/build_zero_fixture.py wraps this and verifies the output with mpmath.

#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "rs_coefficients.inc"

namespace {

using real = long double;

constexpr real kPi = std::numbers::pi_v<long double>;
constexpr int kTaylorOrder = sizeof(kPsiTaylor) / sizeof(kPsiTaylor[0]);

real theta(real t) {
    const real inv = 1.0L / t;
    const real inv2 = inv * inv;
    return t / 2 * std::log(t / (2 * kPi)) - t / 2 - kPi / 8 +
           inv * (1.0L / 48 +
                  inv2 * (7.0L / 5760 +
                          inv2 * (31.0L / 80640 +
                                  inv2 * (127.0L / 430080 + inv2 * (511.0L / 1216512)))));
}

// j-th derivative of psi at p = 1/2 + q.
real psi_derivative(int j, real q) {
    real acc = 0;
    for (int k = kTaylorOrder - 1; k >= j; --k) {
        real falling = 1;
        for (int i = 0; i < j; ++i) falling *= static_cast<real>(k - i);
        acc = acc * q + kPsiTaylor[k] * falling;
    }
    return acc;
}

real hardy_z(real t) {
    const real a = std::sqrt(t / (2 * kPi));
    const auto n_terms = static_cast<std::int64_t>(std::floor(a));
    const real p = a - static_cast<real>(n_terms);
    const real th = theta(t);

    real sum = 0;
    for (std::int64_t n = 1; n <= n_terms; ++n) {
        const real ln = std::log(static_cast<real>(n));
        sum += std::cos(th - t * ln) / std::sqrt(static_cast<real>(n));
    }
    sum *= 2;

    const real q = p - 0.5L;
    real d[13];
    for (int j = 0; j <= 12; ++j) d[j] = psi_derivative(j, q);
    const real pi2 = kPi * kPi;
    const real pi4 = pi2 * pi2;
    const real pi6 = pi4 * pi2;
    const real pi8 = pi4 * pi4;
    const real c0 = d[0];
    const real c1 = -d[3] / (96 * pi2);
    const real c2 = d[2] / (64 * pi2) + d[6] / (18432 * pi4);
    const real c3 = -d[1] / (64 * pi2) - d[5] / (3840 * pi4) - d[9] / (5308416 * pi6);
    const real c4 = d[0] / (128 * pi2) + 19 * d[4] / (24576 * pi4) + 11 * d[8] / (5898240 * pi6) +
                    d[12] / (2038431744.0L * pi8);

    const real w = 1 / a;  // (2 pi / t)^{1/2}
    const real rem = c0 + w * (c1 + w * (c2 + w * (c3 + w * c4)));
    const real sign = (n_terms - 1) % 2 == 0 ? 1.0L : -1.0L;
    return sum + sign * std::sqrt(w) * rem;
}

real gram_point(std::int64_t n, real guess) {
    real t = guess;
    for (int it = 0; it < 60; ++it) {
        const real f = theta(t) - static_cast<real>(n) * kPi;
        const real df = 0.5L * std::log(t / (2 * kPi));
        const real step = f / df;
        t -= step;
        if (std::fabs(step) < 1e-15L * t) break;
    }
    return t;
}

struct Sample {
    real t;
    real z;
};

int count_sign_changes(const std::vector<Sample>& s) {
    int c = 0;
    for (std::size_t i = 1; i < s.size(); ++i)
        if ((s[i - 1].z < 0) != (s[i].z < 0)) ++c;
    return c;
}

// Halve every gap in a block's sample set.
std::vector<Sample> refine(const std::vector<Sample>& s) {
    std::vector<Sample> out;
    out.reserve(2 * s.size());
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        out.push_back(s[i]);
        const real mid = 0.5L * (s[i].t + s[i + 1].t);
        out.push_back({mid, hardy_z(mid)});
    }
    out.push_back(s.back());
    return out;
}

real polish(const Sample& lo, const Sample& hi) {
    std::uintmax_t iters = 200;
    auto tol = [](real a, real b) { return std::fabs(b - a) <= 1e-14L * std::fabs(a); };
    auto [a, b] = boost::math::tools::toms748_solve([](real t) { return hardy_z(t); }, lo.t, hi.t,
                                                    lo.z, hi.z, tol, iters);
    return 0.5L * (a + b);
}

void usage() {
    std::fprintf(stderr,
                 "usage: gen_zeros --height H --out PATH\n"
                 "       gen_zeros --eval T      (print Z(T))\n");
}

}  // namespace

int main(int argc, char** argv) {
    real height = 0;
    const char* out_path = nullptr;
    for (int i = 1; i < argc; ++i) {
        if (!std::strcmp(argv[i], "--height") && i + 1 < argc) {
            height = std::strtold(argv[++i], nullptr);
        } else if (!std::strcmp(argv[i], "--out") && i + 1 < argc) {
            out_path = argv[++i];
        } else if (!std::strcmp(argv[i], "--eval") && i + 1 < argc) {
            for (++i; i < argc; ++i) {
                const real t = std::strtold(argv[i], nullptr);
                std::printf("%.21Lg %.21Lg\n", t, hardy_z(t));
            }
            return 0;
        } else {
            usage();
            return 2;
        }
    }
    if (height < 20 || !out_path) {
        usage();
        return 2;
    }

    // Gram points g_{-1}, g_0, ... until past the target height.
    std::vector<Sample> gram;
    real g = 9.6669;
    for (std::int64_t n = -1;; ++n) {
        g = gram_point(n, g);
        gram.push_back({g, hardy_z(g)});
        if (g > height) break;
        g += 2 * kPi / std::log(g / (2 * kPi));
    }
    auto good = [&](std::size_t idx) {
        const std::int64_t n = static_cast<std::int64_t>(idx) - 1;
        const real signed_z = (n % 2 == 0) ? gram[idx].z : -gram[idx].z;
        return signed_z > 0;
    };

    std::vector<real> zeros;
    std::size_t block_start = 0;
    while (!good(block_start)) ++block_start;
    std::size_t rosser_violations = 0;
    std::size_t refined_blocks = 0;
    for (std::size_t i = block_start + 1; i < gram.size(); ++i) {
        if (!good(i)) continue;
        std::vector<Sample> block(gram.begin() + static_cast<std::ptrdiff_t>(block_start),
                                  gram.begin() + static_cast<std::ptrdiff_t>(i) + 1);
        const int expected = static_cast<int>(i - block_start);
        int depth = 0;
        while (count_sign_changes(block) < expected && depth < 14) {
            block = refine(block);
            ++depth;
        }
        if (depth > 0) ++refined_blocks;
        if (count_sign_changes(block) != expected) {
            ++rosser_violations;
            std::fprintf(stderr, "block [%.6Lf, %.6Lf]: expected %d sign changes, found %d\n",
                         block.front().t, block.back().t, expected, count_sign_changes(block));
        }
        for (std::size_t k = 1; k < block.size(); ++k)
            if ((block[k - 1].z < 0) != (block[k].z < 0))
                zeros.push_back(polish(block[k - 1], block[k]));
        block_start = i;
    }
    if (rosser_violations) {
        std::fprintf(stderr, "%zu blocks failed; refusing to write table\n", rosser_violations);
        return 1;
    }

    std::FILE* f = std::fopen(out_path, "w");
    if (!f) {
        std::perror(out_path);
        return 1;
    }
    std::size_t written = 0;
    for (real z : zeros)
        if (z <= height) ++written;
    std::fprintf(f, "# Ordinates of the nontrivial zeros of zeta(s), one per line, ascending.\n");
    std::fprintf(f, "# Riemann-Siegel (C0..C4) with Gram/Rosser isolation; tools/gen_zeros.cpp\n");
    std::fprintf(f, "# start_index: 1\n");
    std::fprintf(f, "# count: %zu\n", written);
    std::fprintf(f, "# height: %.3Lf\n", height);
    for (real z : zeros)
        if (z <= height) std::fprintf(f, "%.12Lf\n", z);
    std::fclose(f);
    std::fprintf(stderr, "wrote %zu zeros below %.3Lf (%zu blocks refined)\n", written, height,
                 refined_blocks);
    return 0;
}
