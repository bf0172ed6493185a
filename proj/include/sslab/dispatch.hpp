#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "sslab/core.hpp"
#include "sslab/outcome.hpp"

namespace sslab {

struct SmallBinOptions {
    double epsilon = 1.0 / 6.0;
    // Total step budget across preprocessing, classification and solving.
    std::optional<std::uint64_t> step_budget;
    // Passes of the representation solver; 0 means n^2.
    std::size_t repetitions = 0;
};

// Consecutive blocks of ceil(mu n) items with mu = 3 eps / 2.
std::vector<Subset> small_bin_partition(std::size_t n, double epsilon);

// Small-bin driver: hash to short weights if needed, then either run the
// representation solver on a sum-rich block or, when every block is
// sum-poor, join the deduplicated sum sets of the two halves of the blocks.
SolverOutcome solve_small_bin(const Instance& instance, double epsilon, RandomSource& rng);
SolverOutcome solve_small_bin(const Instance& instance, RandomSource& rng,
                              const SmallBinOptions& options);

// The sum-poor branch on its own. Exact on every instance.
SolverOutcome small_bin_join(const Instance& instance, double epsilon,
                             std::optional<std::uint64_t> step_budget = std::nullopt);

// Large-bin driver: take the half of a fixed equi-partition with fewer
// distinct sums as the block for solve_few_sums. Exact.
SolverOutcome solve_large_bin(const Instance& instance);

struct AutoOptions {
    // Epsilon handed to the small-bin driver in step 1. 0.0004 covers bins up
    // to 2^(0.4996 n).
    double epsilon = 0.0004;
    // Step-1 budget; when unset, budget_constant * 2^(0.49991 n) * n^2.
    std::optional<std::uint64_t> step_budget;
    double budget_constant = 4.0;
};

std::uint64_t default_auto_budget(std::size_t n, double budget_constant = 4.0);
// Hashing bound of step 2: 10 * 2^ceil(0.997 n).
BigInt auto_reduction_bound(std::size_t n);

// Two-step pipeline: the small-bin driver under a budget, then hashing to
// density about 1/0.997 and meet in the middle on the reduced instance (up to
// n fresh hashings). Any witness from step 2 is re-verified against the
// original instance.
SolverOutcome solve_auto(const Instance& instance, RandomSource& rng,
                         std::optional<std::uint64_t> budget = std::nullopt);
SolverOutcome solve_auto(const Instance& instance, RandomSource& rng, const AutoOptions& options);

enum class Regime { SmallBin, LargeBin, Gap };
const char* regime_name(Regime regime);

struct Classification {
    std::size_t n = 0;
    std::uint64_t beta = 0;
    std::uint64_t distinct_sums = 0;
    std::optional<double> density;
    double epsilon = 1.0 / 6.0;
    bool small_bin = false;      // beta <= 2^((0.5 - eps) n)
    bool large_bin = false;      // beta >= 2^(0.661 n)
    bool many_sums = false;      // |w(2^[n])| >= 2^(0.997 n)
    bool sums_vs_bin_held = true;  // many_sums implies beta <= 2^(0.4996 n)
    Regime regime = Regime::Gap;
};

Classification classify(const Instance& instance, std::size_t oracle_limit,
                        double epsilon = 1.0 / 6.0);

// Routes to the small-bin or the large-bin driver according to classify().
SolverOutcome solve_classified(const Instance& instance, RandomSource& rng, std::size_t oracle_limit,
                               double epsilon = 1.0 / 6.0);

// x >= 2^(num/den * n) and x <= 2^(num/den * n), decided exactly.
bool at_least_power(std::uint64_t x, std::int64_t num, std::int64_t den, std::size_t n);
bool at_most_power(std::uint64_t x, std::int64_t num, std::int64_t den, std::size_t n);

/// Running-time exponents of the small-bin driver as functions of epsilon.
struct SmallBinExponents {
    double many_sums_term = 0;   // 0.5 + 0.8113 mu - gamma mu
    double bin_term = 0;         // 0.5 - eps + (1.5 - gamma) mu
    double join_term = 0;        // gamma / 2
    double headline = 0;         // 0.5 - eps/4 + 3 eps^2 / 4
};

SmallBinExponents small_bin_exponents(double epsilon);

using Rational = boost::rational<std::int64_t>;
// 0.5 - eps/4 + 3 eps^2/4 in exact arithmetic.
Rational small_bin_headline_exponent(Rational epsilon);

}  // namespace sslab
