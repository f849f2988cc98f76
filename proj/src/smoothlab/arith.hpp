#pragma once

// Integer substrate: sieves, factorization, smoothness, Psi(x, y).
//
// All integers live in [0, 2^62]; anything that would step outside that
// range is rejected with errc::range before any arithmetic happens.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace smoothlab {

inline constexpr std::uint64_t kIntegerCeiling = std::uint64_t{1} << 62;

std::uint64_t isqrt(std::uint64_t n);

// Primes p <= limit, ascending.
std::vector<std::uint64_t> primes_up_to(std::uint64_t limit);

// Largest prime allowed by the smoothness bound y. With `strict` the bound is
// p < y, otherwise p <= y.
std::uint64_t smooth_prime_bound(double y, bool strict = false);

// Smallest-prime-factor table for [lo, lo + size).
class SpfSegment {
public:
    SpfSegment() = default;
    SpfSegment(std::uint64_t lo, std::vector<std::uint64_t> values)
        : lo_(lo), values_(std::move(values)) {}

    std::uint64_t lo() const { return lo_; }
    std::uint64_t hi() const { return lo_ + values_.size(); }  // exclusive
    std::size_t size() const { return values_.size(); }
    bool contains(std::uint64_t n) const { return n >= lo_ && n - lo_ < values_.size(); }
    std::uint64_t spf(std::uint64_t n) const { return values_[n - lo_]; }
    std::span<const std::uint64_t> values() const { return values_; }

private:
    std::uint64_t lo_ = 2;
    std::vector<std::uint64_t> values_;
};

struct PrimePower {
    std::uint64_t prime;
    std::uint32_t exponent;
    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

struct Factorization {
    std::uint64_t n = 1;
    std::vector<PrimePower> factors;  // ascending primes

    std::uint64_t largest_prime() const { return factors.empty() ? 1 : factors.back().prime; }
};

SpfSegment sieve_spf_segment(std::uint64_t lo, std::uint64_t len);

// Uses the segment while the cofactor stays inside it, trial division after.
Factorization factorize(std::uint64_t n, const SpfSegment& seg);
Factorization factorize(std::uint64_t n);

bool is_smooth(std::uint64_t n, double y, bool strict = false);

double von_mangoldt(std::uint64_t n);

// Prime p when n = p^k (k >= 1), else 0; table entry k holds the value for k.
std::vector<std::uint64_t> prime_power_base_table(std::uint64_t limit);

struct PsiOptions {
    bool strict = false;
    // Below this, count by direct sieve enumeration instead of the recursion.
    std::uint64_t sieve_threshold = 1'000'000;
};

// Number of n <= x all of whose prime factors are at most y.
std::uint64_t psi_count(double x, double y, const PsiOptions& opts = {});

// Ascending y-smooth integers in the closed range [lo, hi].
std::vector<std::uint64_t> smooth_in_range(std::uint64_t lo, std::uint64_t hi, double y,
                                           bool strict = false, unsigned threads = 1);

// Ascending y-smooth integers n with x < n <= x + z.
std::vector<std::uint64_t> smooth_in_interval(double x, double z, double y, bool strict = false,
                                              unsigned threads = 1);

// Integer endpoints of (x, x + z]: first n > x and last n <= x + z.
std::pair<std::uint64_t, std::uint64_t> interval_endpoints(double x, double z);

std::uint64_t d3_count(std::uint64_t n);
std::uint64_t d3_count(const Factorization& f);

}  // namespace smoothlab
