#include "sslab/oracle.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "detail/oracle_impl.hpp"
#include "detail/sums.hpp"

namespace sslab {

void accept_witness(SolverOutcome& outcome, const Instance& instance, Subset witness)
{
    if (!instance.is_solution(witness)) {
        throw std::logic_error("solver produced a witness that does not reach the target");
    }
    outcome.witness = std::move(witness);
    outcome.verified = true;
}

Counters& Counters::operator+=(const Counters& other)
{
    sums_enumerated += other.sums_enumerated;
    pairs_checked += other.pairs_checked;
    dict_lookups += other.dict_lookups;
    samples_drawn += other.samples_drawn;
    peak_retained = std::max(peak_retained, other.peak_retained);
    list_entries += other.list_entries;
    return *this;
}

std::uint64_t SumHistogram::mass() const
{
    std::uint64_t m = 0;
    for (const auto& [sum, c] : entries) m += c;
    return m;
}

std::uint64_t SumHistogram::max_count() const
{
    std::uint64_t m = 0;
    for (const auto& [sum, c] : entries) m = std::max(m, c);
    return m;
}

std::uint64_t SumHistogram::count(const BigInt& sum) const
{
    auto it = std::lower_bound(entries.begin(), entries.end(), sum,
                               [](const auto& e, const BigInt& v) { return e.first < v; });
    return (it != entries.end() && it->first == sum) ? it->second : 0;
}

namespace {

void check_oracle_size(std::size_t k)
{
    if (k > kEnumerationLimit) {
        throw CapacityError("oracle enumeration over " + std::to_string(k) + " items exceeds the limit of " +
                            std::to_string(kEnumerationLimit));
    }
}

void check_subset(const Instance& instance, const Subset& over)
{
    if (over.universe() != instance.size()) throw DomainError("subset universe does not match instance");
}

}  // namespace

SumHistogram enumerate_histogram(const Instance& instance, const Subset& over)
{
    check_subset(instance, over);
    check_oracle_size(over.size());
    return detail::with_sum_type(instance, [&](auto tag) {
        using Sum = typename decltype(tag)::type;
        const auto w = detail::weights_as<Sum>(instance);
        SumHistogram h;
        h.over = over;
        for (auto& [sum, c] : detail::histogram<Sum>(w, over.indices())) {
            h.entries.emplace_back(detail::to_big(sum), c);
        }
        return h;
    });
}

std::uint64_t max_bin(const Instance& instance)
{
    check_oracle_size(instance.size());
    return detail::with_sum_type(instance, [&](auto tag) {
        using Sum = typename decltype(tag)::type;
        const auto w = detail::weights_as<Sum>(instance);
        std::uint64_t best = 0;
        for (const auto& [sum, c] : detail::histogram<Sum>(w, Subset::full(instance.size()).indices())) {
            best = std::max(best, c);
        }
        return best;
    });
}

std::uint64_t distinct_sums(const Instance& instance, const Subset& over)
{
    check_subset(instance, over);
    detail::require_mask_universe(instance.size(), "distinct_sums");
    return detail::with_sum_type(instance, [&](auto tag) {
        using Sum = typename decltype(tag)::type;
        const auto w = detail::weights_as<Sum>(instance);
        return static_cast<std::uint64_t>(detail::distinct_sum_set<Sum>(w, over.indices()).size());
    });
}

std::uint64_t distinct_sums(const Instance& instance)
{
    return distinct_sums(instance, Subset::full(instance.size()));
}

SolverOutcome brute_solve(const Instance& instance)
{
    const std::size_t n = instance.size();
    check_oracle_size(n);
    return detail::with_sum_type(instance, [&](auto tag) {
        using Sum = typename decltype(tag)::type;
        const auto w = detail::weights_as<Sum>(instance);
        const Sum t = detail::to_sum<Sum>(instance.target());
        SolverOutcome out;
        out.branch = "brute";
        // Gray-code walk: one addition or subtraction per subset.
        std::uint64_t mask = 0;
        Sum sum = 0;
        std::optional<std::uint64_t> best;
        if (sum == t) best = 0;
        const std::uint64_t total = std::uint64_t{1} << n;
        for (std::uint64_t i = 1; i < total; ++i) {
            const int bit = std::countr_zero(i);
            const std::uint64_t b = std::uint64_t{1} << bit;
            if (mask & b) {
                sum -= w[static_cast<std::size_t>(bit)];
            } else {
                sum += w[static_cast<std::size_t>(bit)];
            }
            mask ^= b;
            if (sum == t && (!best || mask < *best)) best = mask;
        }
        out.cost.sums_enumerated = total;
        if (best) accept_witness(out, instance, Subset::from_mask(*best, n));
        return out;
    });
}

}  // namespace sslab
