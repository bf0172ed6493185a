#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "sslab/core.hpp"
#include "sslab/outcome.hpp"

namespace sslab {

// Largest coordinate set the exhaustive oracle will enumerate.
inline constexpr std::size_t kEnumerationLimit = 26;

/// b_S: sum value -> number of subsets of S reaching it. Entries are sorted
/// by sum and every count is positive.
struct SumHistogram {
    Subset over;
    std::vector<std::pair<BigInt, std::uint64_t>> entries;

    std::uint64_t mass() const;
    std::uint64_t max_count() const;
    std::uint64_t count(const BigInt& sum) const;
    std::size_t support() const { return entries.size(); }
};

SumHistogram enumerate_histogram(const Instance& instance, const Subset& over);

// beta(w): the largest bin over all of [n].
std::uint64_t max_bin(const Instance& instance);

// |w(2^S)|, computed by a deduplicating merge so the cost follows the number
// of distinct sums rather than 2^|S|.
std::uint64_t distinct_sums(const Instance& instance, const Subset& over);
std::uint64_t distinct_sums(const Instance& instance);

// Exhaustive search. Returns the witness with the numerically smallest mask.
SolverOutcome brute_solve(const Instance& instance);

}  // namespace sslab
