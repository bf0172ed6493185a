#include "sslab/numeric.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include <boost/multiprecision/miller_rabin.hpp>

namespace sslab {

double entropy(std::span<const double> probabilities)
{
    if (probabilities.empty()) throw DomainError("entropy of an empty distribution");
    double total = 0;
    double h = 0;
    for (double x : probabilities) {
        if (!(x >= 0.0) || x > 1.0 + kEntropyTolerance) {
            throw DomainError("entropy: component outside [0, 1]");
        }
        total += x;
        if (x > 0) h -= x * std::log2(x);
    }
    if (std::fabs(total - 1.0) > kEntropyTolerance) {
        throw DomainError("entropy: components do not sum to 1");
    }
    return h;
}

double binary_entropy(double x)
{
    const double p[2] = {x, 1.0 - x};
    return entropy(p);
}

bool entropy_around_half_bound(double alpha)
{
    if (!(alpha >= 0.0 && alpha <= 0.5)) {
        throw DomainError("entropy_around_half_bound: alpha outside [0, 1/2]");
    }
    return binary_entropy(0.5 - alpha) <= 1.0 - 2.0 * alpha * alpha / std::numbers::ln2 + kEntropyTolerance;
}

namespace {

using u128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint64_t m)
{
    std::uint64_t r = 1 % m;
    base %= m;
    while (e) {
        if (e & 1) r = mul_mod(r, base, m);
        base = mul_mod(base, base, m);
        e >>= 1;
    }
    return r;
}

// Miller-Rabin with the first twelve prime bases; deterministic below 2^64.
bool miller_rabin_u64(std::uint64_t m)
{
    static constexpr std::uint64_t kBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (auto p : kBases) {
        if (m % p == 0) return m == p;
    }
    std::uint64_t d = m - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    for (auto a : kBases) {
        auto x = pow_mod(a, d, m);
        if (x == 1 || x == m - 1) continue;
        bool composite = true;
        for (int i = 1; i < r; ++i) {
            x = mul_mod(x, x, m);
            if (x == m - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

}  // namespace

bool is_prime(std::uint64_t m)
{
    if (m < 2) throw DomainError("is_prime: argument must be >= 2");
    return miller_rabin_u64(m);
}

bool is_prime(const BigInt& m)
{
    if (m < 2) throw DomainError("is_prime: argument must be >= 2");
    if (m <= UINT64_MAX) return miller_rabin_u64(static_cast<std::uint64_t>(m));
    // 40 random-base rounds: error below 4^-40. Fixed seed keeps it reproducible.
    std::mt19937_64 gen(0x5eed5eedULL);
    return boost::multiprecision::miller_rabin_test(m, 40, gen);
}

std::uint64_t random_prime(std::uint64_t r, RandomSource& rng)
{
    if (r < 3) throw DomainError("random_prime: r must be >= 3");
    if (r > (UINT64_MAX >> 1)) return static_cast<std::uint64_t>(random_prime(BigInt(r), rng));
    for (;;) {
        auto candidate = rng.uniform_between(r, 2 * r);
        if (miller_rabin_u64(candidate)) return candidate;
    }
}

BigInt random_prime(const BigInt& r, RandomSource& rng)
{
    if (r < 3) throw DomainError("random_prime: r must be >= 3");
    if (r <= (UINT64_MAX >> 1)) return BigInt(random_prime(static_cast<std::uint64_t>(r), rng));
    const BigInt hi = 2 * r;
    for (;;) {
        BigInt candidate = rng.uniform_between(r, hi);
        if (is_prime(candidate)) return candidate;
    }
}

double log2_big(const BigInt& x)
{
    if (x <= 0) throw DomainError("log2 of a non-positive number");
    const auto top = boost::multiprecision::msb(x);
    const unsigned shift = top > 60 ? static_cast<unsigned>(top - 60) : 0U;
    const BigInt head = x >> shift;
    return std::log2(static_cast<double>(head)) + static_cast<double>(shift);
}

double binomial_log2(std::uint64_t n, std::uint64_t k)
{
    if (k > n) return -INFINITY;
    const std::uint64_t parts[2] = {k, n - k};
    return multinomial_log2(parts);
}

double multinomial_log2(std::span<const std::uint64_t> parts)
{
    if (parts.empty()) throw DomainError("multinomial of no parts");
    std::uint64_t total = 0;
    for (auto p : parts) total += p;
    if (total <= 4096) {
        // Exact product of binomials.
        BigInt value = 1;
        std::uint64_t remaining = total;
        for (auto p : parts) {
            BigInt c = 1;
            for (std::uint64_t i = 1; i <= p; ++i) {
                c *= remaining - p + i;
                c /= i;
            }
            value *= c;
            remaining -= p;
        }
        return log2_big(value);
    }
    double ln = std::lgamma(static_cast<double>(total) + 1.0);
    for (auto p : parts) ln -= std::lgamma(static_cast<double>(p) + 1.0);
    return ln / std::numbers::ln2;
}

}  // namespace sslab
