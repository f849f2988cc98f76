#include "smoothlab/arith.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <unordered_map>

#include "smoothlab/error.hpp"
#include "smoothlab/parallel.hpp"

namespace smoothlab {

namespace {

constexpr std::uint64_t kSegmentBlock = 1 << 15;

// Recursion on Psi(v, p_k) = 1 + sum_{i <= k} Psi(v / p_i, p_i).
class PsiRecursion {
public:
    explicit PsiRecursion(std::vector<std::uint64_t> primes) : primes_(std::move(primes)) {}

    std::uint64_t count(std::uint64_t v, std::ptrdiff_t k) {
        if (v == 0) return 0;
        if (k < 0) return 1;
        if (primes_[static_cast<std::size_t>(k)] >= v) return v;
        if (k == 0) return static_cast<std::uint64_t>(std::bit_width(v));
        const Key key{v, k};
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        std::uint64_t total = 1;
        for (std::ptrdiff_t i = 0; i <= k; ++i) {
            const std::uint64_t p = primes_[static_cast<std::size_t>(i)];
            if (p > v) break;
            total += count(v / p, i);
        }
        memo_.emplace(key, total);
        return total;
    }

private:
    struct Key {
        std::uint64_t v;
        std::ptrdiff_t k;
        bool operator==(const Key&) const = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& key) const noexcept {
            return std::hash<std::uint64_t>{}(key.v * 0x9E3779B97F4A7C15ULL ^
                                              static_cast<std::uint64_t>(key.k));
        }
    };

    std::vector<std::uint64_t> primes_;
    std::unordered_map<Key, std::uint64_t, KeyHash> memo_;
};

std::uint64_t psi_by_sieve(std::uint64_t n, std::uint64_t pmax) {
    // Largest prime factor of every m <= n: later (larger) primes overwrite.
    std::vector<std::uint32_t> lpf(n + 1, 0);
    for (std::uint64_t p = 2; p <= n; ++p) {
        if (lpf[p] != 0) continue;
        for (std::uint64_t m = p; m <= n; m += p) lpf[m] = static_cast<std::uint32_t>(p);
    }
    std::uint64_t count = n >= 1 ? 1 : 0;
    for (std::uint64_t m = 2; m <= n; ++m)
        if (lpf[m] <= pmax) ++count;
    return count;
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1;
    for (a %= m; e > 0; e >>= 1, a = mul_mod(a, a, m))
        if (e & 1) r = mul_mod(r, a, m);
    return r;
}

// Deterministic Miller-Rabin: the first twelve prime bases cover all n < 2^64.
bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    constexpr std::uint64_t bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (std::uint64_t p : bases)
        if (n % p == 0) return n == p;
    std::uint64_t d = n - 1;
    const int s = std::countr_zero(d);
    d >>= s;
    for (std::uint64_t a : bases) {
        std::uint64_t x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s && composite; ++r) {
            x = mul_mod(x, x, n);
            if (x == n - 1) composite = false;
        }
        if (composite) return false;
    }
    return true;
}

// Brent's variant of Pollard rho; n is odd, composite and free of tiny factors.
std::uint64_t rho_divisor(std::uint64_t n) {
    for (std::uint64_t c = 1;; ++c) {
        auto f = [&](std::uint64_t v) { return (mul_mod(v, v, n) + c) % n; };
        std::uint64_t y = 2, x = 2, q = 1, g = 1, ys = 2;
        constexpr std::uint64_t batch = 128;
        for (std::uint64_t r = 1; g == 1; r <<= 1) {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i) y = f(y);
            for (std::uint64_t k = 0; k < r && g == 1; k += batch) {
                ys = y;
                for (std::uint64_t i = 0; i < std::min(batch, r - k); ++i) {
                    y = f(y);
                    q = mul_mod(q, x > y ? x - y : y - x, n);
                }
                g = std::gcd(q, n);
            }
        }
        if (g == n) {
            do {
                ys = f(ys);
                g = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

constexpr std::uint64_t kTrialLimit = 1000;

// Smallest prime factor of a cofactor with no prime factor below kTrialLimit.
std::uint64_t smallest_factor_large(std::uint64_t n) {
    if (is_prime_u64(n)) return n;
    const std::uint64_t d = rho_divisor(n);
    return std::min(smallest_factor_large(d), smallest_factor_large(n / d));
}

std::uint64_t smallest_factor_trial(std::uint64_t n) {
    if (n % 2 == 0) return 2;
    if (n % 3 == 0) return 3;
    for (std::uint64_t d = 5; d <= n / d; d += 6) {
        if (n % d == 0) return d;
        if (n % (d + 2) == 0) return d + 2;
        if (d > kTrialLimit) return smallest_factor_large(n);
    }
    return n;
}

void check_range(std::uint64_t n, const char* what) {
    if (n > kIntegerCeiling)
        fail(errc::range, std::string(what) + " exceeds the 2^62 integer ceiling");
}

}  // namespace

std::uint64_t isqrt(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
    while (r > 0 && r > n / r) --r;
    while ((r + 1) <= n / (r + 1)) ++r;
    return r;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
    std::vector<std::uint64_t> primes;
    if (limit < 2) return primes;
    std::vector<bool> composite(limit + 1, false);
    for (std::uint64_t p = 2; p <= limit; ++p) {
        if (composite[p]) continue;
        primes.push_back(p);
        if (p <= limit / p)
            for (std::uint64_t m = p * p; m <= limit; m += p) composite[m] = true;
    }
    return primes;
}

std::uint64_t smooth_prime_bound(double y, bool strict) {
    if (!std::isfinite(y) || y >= static_cast<double>(kIntegerCeiling)) return kIntegerCeiling;
    if (y < 1) return 0;
    const double fl = std::floor(y);
    auto bound = static_cast<std::uint64_t>(fl);
    if (strict && fl == y) --bound;
    return bound;
}

SpfSegment sieve_spf_segment(std::uint64_t lo, std::uint64_t len) {
    if (lo < 2) fail(errc::range, "segment start must be >= 2");
    if (len < 1) fail(errc::range, "segment length must be >= 1");
    if (lo > kIntegerCeiling || len > kIntegerCeiling - lo + 1)
        fail(errc::range, "segment end exceeds the 2^62 integer ceiling");
    const std::uint64_t last = lo + len - 1;
    std::vector<std::uint64_t> spf(len, 0);
    // Short segments high up: base primes would dwarf the segment, so factor
    // each entry directly instead.
    if (isqrt(last) > std::max<std::uint64_t>(std::uint64_t{1} << 20, 16 * len)) {
        for (std::uint64_t i = 0; i < len; ++i) spf[i] = smallest_factor_trial(lo + i);
        return SpfSegment(lo, std::move(spf));
    }
    for (std::uint64_t p : primes_up_to(isqrt(last))) {
        std::uint64_t start = std::max(p * p, (lo + p - 1) / p * p);
        for (std::uint64_t m = start; m <= last; m += p)
            if (spf[m - lo] == 0) spf[m - lo] = p;
    }
    for (std::uint64_t i = 0; i < len; ++i)
        if (spf[i] == 0) spf[i] = lo + i;
    return SpfSegment(lo, std::move(spf));
}

Factorization factorize(std::uint64_t n, const SpfSegment& seg) {
    if (n == 0) fail(errc::domain, "cannot factorize 0");
    check_range(n, "n");
    Factorization f;
    f.n = n;
    std::uint64_t m = n;
    while (m > 1) {
        const std::uint64_t p = seg.contains(m) ? seg.spf(m) : smallest_factor_trial(m);
        std::uint32_t e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        f.factors.push_back({p, e});
    }
    return f;
}

Factorization factorize(std::uint64_t n) { return factorize(n, SpfSegment{}); }

bool is_smooth(std::uint64_t n, double y, bool strict) {
    if (n == 0) fail(errc::domain, "smoothness of 0 is undefined");
    const std::uint64_t pmax = smooth_prime_bound(y, strict);
    std::uint64_t m = n;
    for (std::uint64_t d = 2; d <= pmax && d <= m / d; d += (d == 2 ? 1 : 2))
        while (m % d == 0) m /= d;
    // m is now 1 or has no factor <= min(pmax, sqrt(m)).
    return m <= pmax || m == 1;
}

double von_mangoldt(std::uint64_t n) {
    if (n == 0) fail(errc::domain, "von Mangoldt of 0 is undefined");
    if (n == 1) return 0.0;
    const std::uint64_t p = smallest_factor_trial(n);
    std::uint64_t m = n;
    while (m % p == 0) m /= p;
    return m == 1 ? std::log(static_cast<double>(p)) : 0.0;
}

std::vector<std::uint64_t> prime_power_base_table(std::uint64_t limit) {
    check_range(limit, "prime-power table limit");
    std::vector<std::uint64_t> base(limit + 1, 0);
    for (std::uint64_t p : primes_up_to(limit)) {
        for (std::uint64_t q = p;; q *= p) {
            base[q] = p;
            if (q > limit / p) break;
        }
    }
    return base;
}

std::uint64_t psi_count(double x, double y, const PsiOptions& opts) {
    if (!(x >= 1) || !std::isfinite(x)) fail(errc::range, "psi_count requires x >= 1");
    if (!(y >= 2)) fail(errc::range, "psi_count requires y >= 2");
    if (x > static_cast<double>(kIntegerCeiling))
        fail(errc::range, "x exceeds the 2^62 integer ceiling");
    const auto n = static_cast<std::uint64_t>(std::floor(x));
    const std::uint64_t pmax = smooth_prime_bound(y, opts.strict);
    if (pmax >= n) return n;
    if (n < opts.sieve_threshold) return psi_by_sieve(n, pmax);
    if (pmax > (std::uint64_t{1} << 32))
        fail(errc::range, "psi_count recursion supports y <= 2^32");
    auto primes = primes_up_to(pmax);
    const auto k = static_cast<std::ptrdiff_t>(primes.size()) - 1;
    PsiRecursion rec(std::move(primes));
    return rec.count(n, k);
}

std::pair<std::uint64_t, std::uint64_t> interval_endpoints(double x, double z) {
    if (!std::isfinite(x) || !std::isfinite(z) || x < 0 || z < 0)
        fail(errc::range, "interval requires finite x >= 0 and z >= 0");
    const long double top = static_cast<long double>(x) + static_cast<long double>(z);
    if (top > static_cast<long double>(kIntegerCeiling))
        fail(errc::range, "x + z exceeds the 2^62 integer ceiling");
    const auto lo = static_cast<std::uint64_t>(std::floor(static_cast<long double>(x))) + 1;
    const auto hi = static_cast<std::uint64_t>(std::floor(top));
    return {lo, hi};
}

std::vector<std::uint64_t> smooth_in_range(std::uint64_t lo, std::uint64_t hi, double y,
                                           bool strict, unsigned threads) {
    check_range(hi, "range end");
    if (lo == 0) lo = 1;
    if (hi < lo) return {};
    const std::uint64_t pmax = smooth_prime_bound(y, strict);
    const auto primes = primes_up_to(std::min(pmax, isqrt(hi)));
    const std::uint64_t blocks = (hi - lo) / kSegmentBlock + 1;

    std::vector<std::vector<std::uint64_t>> found(blocks);
    for_each_block(blocks, threads, [&](std::size_t b) {
        const std::uint64_t b_lo = lo + b * kSegmentBlock;
        const std::uint64_t b_hi = std::min(hi, b_lo + kSegmentBlock - 1);
        std::vector<std::uint64_t> residual(b_hi - b_lo + 1);
        for (std::uint64_t i = 0; i < residual.size(); ++i) residual[i] = b_lo + i;
        for (std::uint64_t p : primes) {
            for (std::uint64_t m = (b_lo + p - 1) / p * p; m <= b_hi; m += p) {
                std::uint64_t& r = residual[m - b_lo];
                do r /= p;
                while (r % p == 0);
            }
        }
        // Survivors carry 1 or a single prime above sqrt(hi).
        auto& out = found[b];
        for (std::uint64_t i = 0; i < residual.size(); ++i)
            if (residual[i] <= pmax || residual[i] == 1) out.push_back(b_lo + i);
    });

    std::vector<std::uint64_t> result;
    for (auto& part : found) result.insert(result.end(), part.begin(), part.end());
    return result;
}

std::vector<std::uint64_t> smooth_in_interval(double x, double z, double y, bool strict,
                                              unsigned threads) {
    const auto [lo, hi] = interval_endpoints(x, z);
    return smooth_in_range(lo, hi, y, strict, threads);
}

std::uint64_t d3_count(const Factorization& f) {
    std::uint64_t total = 1;
    for (const auto& pp : f.factors) {
        const std::uint64_t e = pp.exponent;
        total *= (e + 1) * (e + 2) / 2;
    }
    return total;
}

std::uint64_t d3_count(std::uint64_t n) {
    if (n == 0) fail(errc::domain, "d3 of 0 is undefined");
    return d3_count(factorize(n));
}

}  // namespace smoothlab
