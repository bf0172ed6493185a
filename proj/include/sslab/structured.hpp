#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "sslab/core.hpp"
#include "sslab/outcome.hpp"

namespace sslab {

/// Derived parameters of one representation-technique iteration over a
/// sum-rich block M. Fractions are relative to |M| (sigma*) or n (mu, lambda).
struct ReprParams {
    std::size_t n = 0;
    std::size_t m = 0;  // |M|
    std::size_t s = 0;  // assumed |X ∩ M|
    std::size_t s1 = 0;
    std::size_t s2 = 0;
    double mu = 0;
    double gamma = 0;
    double sigma = 0;
    double sigma1 = 0;
    double sigma2 = 0;
    double pi = 0;      // gamma - 1 + sigma
    double lambda = 0;  // (1-mu)/2 + (h(sigma/2) - h(sigma1)) mu
    std::uint64_t prime = 0;
    std::uint64_t residue = 0;  // t_L, uniform in [0, prime)
    std::size_t left_size = 0;   // ceil(lambda n), clamped to n - |M|
    std::size_t right_size = 0;  // n - |M| - left_size
    // The prime interval [2^(pi|M|), 2^(pi|M|+1)] held no prime >= 3 and
    // was raised to [3, 6].
    bool prime_clamped = false;

    // Size of the brute-forced part L1 when splitting a side of `side_size`
    // items for the list construction: floor((side + h(sigma/2)|M|)/2).
    std::size_t half_split(std::size_t side_size) const;
};

// Computes sigma, pi, lambda and the list sizes, then draws the prime p and
// the residue t_L. Throws ContractError when a precondition fails.
ReprParams derive_params(std::size_t n, const Subset& block, double gamma, std::size_t s,
                         std::size_t s1, RandomSource& rng);

// Recomputes only the deterministic part (no prime, no residue).
ReprParams derive_shape(std::size_t n, const Subset& block, double gamma, std::size_t s,
                        std::size_t s1);

struct FilteredEntry {
    std::uint64_t mask = 0;
    BigInt sum;
};

/// All S ⊆ side ∪ M with |S ∩ M| = s_i and w(S) = residue (mod p).
struct FilteredList {
    std::uint64_t prime = 0;
    std::uint64_t residue = 0;
    std::vector<FilteredEntry> entries;
    // Sums generated by the two half enumerations.
    std::uint64_t enumerated = 0;
};

FilteredList build_filtered_list(const Instance& instance, const Subset& side, const Subset& block,
                                 std::size_t s_i, std::uint64_t prime, std::uint64_t residue,
                                 std::size_t split_size);

struct ManySumsOptions {
    // Abort with "none" once this many counted steps have been spent. When
    // unset, 64 n^2 times the predicted steps of one pass, times repetitions.
    std::optional<std::uint64_t> step_budget;
    // Independent passes over fresh (p, t_L) draws.
    std::size_t repetitions = 1;
};

// Predicted steps of one pass over all (target, s, s1), from the list-size
// and list-construction bounds (the bin-dependent pair term is left out).
double predicted_many_sums_steps(std::size_t n, std::size_t block_size, double gamma);

// Monte Carlo solver for blocks with |w(2^M)| >= 2^(gamma |M|). Never returns
// an unverified witness. Throws ContractError if |M| > n/2, M is empty, or
// the block is not sum-rich enough.
SolverOutcome solve_many_sums(const Instance& instance, const Subset& block, double gamma,
                              RandomSource& rng, const ManySumsOptions& options = {});

// Deterministic solver for blocks with |w(2^M)| <= 2^(gamma |M|): meet in the
// middle over a deduplicated split sized to the block's sum count.
SolverOutcome solve_few_sums(const Instance& instance, const Subset& block, double gamma);

}  // namespace sslab
