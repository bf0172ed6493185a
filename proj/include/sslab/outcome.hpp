#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sslab/core.hpp"

namespace sslab {

/// Exact work counters. Budgets and scaling checks are stated against these,
/// not against wall-clock time.
struct Counters {
    std::uint64_t sums_enumerated = 0;
    std::uint64_t pairs_checked = 0;
    std::uint64_t dict_lookups = 0;
    std::uint64_t samples_drawn = 0;
    // Largest number of partial sums held in memory at once.
    std::uint64_t peak_retained = 0;
    // Entries emitted into filtered lists (representation solver only).
    std::uint64_t list_entries = 0;

    std::uint64_t steps() const
    {
        return sums_enumerated + pairs_checked + dict_lookups + samples_drawn + list_entries;
    }

    Counters& operator+=(const Counters& other);
};

/// One (target, s, s1) iteration of the representation solver.
struct IterationRecord {
    bool complementary = false;
    std::size_t s = 0;
    std::size_t s1 = 0;
    std::size_t s2 = 0;
    std::uint64_t prime = 0;
    std::uint64_t residue = 0;
    std::uint64_t left_size = 0;
    std::uint64_t right_size = 0;
    std::uint64_t pairs_scanned = 0;
    bool skipped = false;
};

struct SolverOutcome {
    std::optional<Subset> witness;
    Counters cost;
    // Set once the witness has been re-summed against the instance.
    bool verified = false;
    bool budget_exhausted = false;
    std::string branch;
    std::vector<IterationRecord> iterations;

    bool found() const { return witness.has_value(); }
};

// Attaches `witness` after exact re-summation. A mismatch is a solver bug and
// throws std::logic_error.
void accept_witness(SolverOutcome& outcome, const Instance& instance, Subset witness);

}  // namespace sslab
