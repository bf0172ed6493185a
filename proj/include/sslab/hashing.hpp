#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "sslab/core.hpp"

namespace sslab {

struct ReductionRound {
    BigInt prime;
    std::uint64_t shift = 0;
};

/// Result of hashing an instance modulo a random prime p drawn from
/// [B log2 t, 2 B log2 t]: w'_i = w_i mod p and t' = (t mod p) + r p.
struct ReductionRecord {
    BigInt bound;           // B
    BigInt prime;           // p of the final round
    std::uint64_t shift = 0;  // r of the final round
    unsigned rounds = 0;
    std::vector<ReductionRound> history;
    Instance reduced;
};

// Upper limit 4 n B log2 B that every reduced weight and target stays below.
BigInt property1_bound(std::size_t n, const BigInt& bound);
bool satisfies_property1(const Instance& reduced, const BigInt& bound);

// Throws DomainError for B < 2 and UseDynamicProgramming for t < 2n. The
// construction is re-applied (at most three more times) while the output
// violates the 4 n B log2 B bound, then fails loudly.
ReductionRecord reduce_bitlength(const Instance& instance, const BigInt& bound, RandomSource& rng);

struct ReductionReport {
    bool solutions_preserved = false;  // w(X) = t  <=>  w'(X) = t'
    bool sums_preserved = false;       // |w|/2 <= |w'| <= n |w|
    // Bin sizes beta(w)/n <= beta(w') <= beta(w); only evaluated when
    // B >= 5 |w(2^[n])|^2.
    std::optional<bool> bins_preserved;
    // Every original bin lands in at most n reduced bins.
    bool bins_split_ok = false;
    std::uint64_t distinct_before = 0;
    std::uint64_t distinct_after = 0;
    std::uint64_t beta_before = 0;
    std::uint64_t beta_after = 0;
    // Subsets X with w'(X) = t' but w(X) != t.
    std::uint64_t false_solutions = 0;
    // Subsets X with w(X) = t but w'(X) != t'.
    std::uint64_t lost_solutions = 0;
};

ReductionReport check_reduction_properties(const Instance& original, const ReductionRecord& record,
                                           std::size_t oracle_limit);

}  // namespace sslab
