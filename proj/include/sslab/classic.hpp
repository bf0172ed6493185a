#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "sslab/core.hpp"
#include "sslab/outcome.hpp"

namespace sslab {

inline constexpr std::size_t kMeetInMiddleLimit = 52;
inline constexpr std::size_t kQuarterLimit = 16;
inline constexpr std::size_t kSamplerLimit = 40;

// Bellman's reachable-sums table over [0, t].
SolverOutcome bellman_dp(const Instance& instance);

// Horowitz-Sahni. Splits at floor(n/2); ties go to the smallest witness mask.
SolverOutcome meet_in_middle(const Instance& instance);

// Schroeppel-Shamir: both half-sum streams come out of heaps fed by quarter
// lists, so only O(2^(n/4)) sums are retained. Returns the same witness as
// meet_in_middle.
SolverOutcome schroeppel_shamir(const Instance& instance);

/// Table of exact subset counts per residue class, used to draw uniform
/// samples from {X : w(X) = c mod q} with n table steps per draw.
class ResidueSampler {
public:
    ResidueSampler(const Instance& instance, std::uint64_t modulus);

    std::uint64_t modulus() const { return modulus_; }
    std::uint64_t class_size(std::uint64_t residue) const;
    // Uniform member of the residue class as a mask; nullopt when empty.
    std::optional<std::uint64_t> draw(std::uint64_t residue, RandomSource& rng) const;

private:
    std::uint64_t count(std::size_t item, std::uint64_t residue) const
    {
        return table_[item * modulus_ + residue];
    }

    std::size_t n_ = 0;
    std::uint64_t modulus_ = 0;
    std::vector<std::uint64_t> weight_residues_;
    // table_[i * q + c]: subsets of items i..n-1 with sum = c (mod q).
    std::vector<std::uint64_t> table_;
};

// Lower end r of the prime interval [r, 2r] for the sampler's modulus.
std::uint64_t sampler_modulus_floor(std::size_t n, double sigma);

// Samples the class t mod q for a random prime q of about (1-sigma)n/2 bits
// and stops at the first exact solution or after `budget` draws.
SolverOutcome modular_sampler(const Instance& instance, double sigma, RandomSource& rng,
                              std::uint64_t budget);
SolverOutcome modular_sampler_with_modulus(const Instance& instance, std::uint64_t modulus,
                                           RandomSource& rng, std::uint64_t budget);

}  // namespace sslab
