#pragma once

#include <cstdint>
#include <span>

#include "sslab/core.hpp"

namespace sslab {

inline constexpr double kEntropyTolerance = 1e-12;
inline constexpr double kLogTolerance = 1e-9;

// Shannon entropy in bits of a probability vector, with 0 log 0 = 0.
double entropy(std::span<const double> probabilities);
// h(x) = h(x, 1 - x).
double binary_entropy(double x);

// Evaluates h(1/2 - alpha) <= 1 - 2 alpha^2 / ln 2 for alpha in [0, 1/2].
bool entropy_around_half_bound(double alpha);

// Exact for m < 2^64 (deterministic Miller-Rabin); above that the error
// probability is below 2^-80.
bool is_prime(std::uint64_t m);
bool is_prime(const BigInt& m);

// Uniform prime in [r, 2r] by rejection sampling. Requires r >= 3.
std::uint64_t random_prime(std::uint64_t r, RandomSource& rng);
BigInt random_prime(const BigInt& r, RandomSource& rng);

double multinomial_log2(std::span<const std::uint64_t> parts);
double binomial_log2(std::uint64_t n, std::uint64_t k);

// log2 of a positive big integer.
double log2_big(const BigInt& x);

}  // namespace sslab
