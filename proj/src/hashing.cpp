#include "sslab/hashing.hpp"

#include <algorithm>
#include <cmath>

#include "detail/sums.hpp"
#include "sslab/numeric.hpp"
#include "sslab/oracle.hpp"

namespace sslab {

namespace {

constexpr unsigned kFixedPointBits = 32;
constexpr unsigned kMaxRounds = 4;  // the first application plus three re-applications

// floor(x * 2^32) for a non-negative double.
BigInt fixed_point(double x)
{
    return BigInt(static_cast<std::uint64_t>(std::floor(std::ldexp(x, kFixedPointBits))));
}

// One application of the prime-mod construction.
ReductionRound hash_once(const Instance& current, const BigInt& bound, RandomSource& rng,
                         std::vector<BigInt>& weights, BigInt& target)
{
    const std::size_t n = current.size();
    const double log_t = current.target() >= 2 ? log2_big(current.target()) : 1.0;
    // Prime interval lower end: ceil(B log2 t), never below 3.
    BigInt low = ((bound * fixed_point(log_t)) >> kFixedPointBits) + 1;
    if (low < 3) low = 3;
    ReductionRound round;
    round.prime = random_prime(low, rng);
    round.shift = n > 0 ? rng.uniform_below(static_cast<std::uint64_t>(n)) : 0;
    weights.clear();
    for (const auto& w : current.weights()) weights.push_back(w % round.prime);
    target = current.target() % round.prime + BigInt(round.shift) * round.prime;
    return round;
}

}  // namespace

BigInt property1_bound(std::size_t n, const BigInt& bound)
{
    if (bound < 2) throw DomainError("property1_bound: B must be >= 2");
    return (BigInt(4 * n) * bound * fixed_point(log2_big(bound))) >> kFixedPointBits;
}

bool satisfies_property1(const Instance& reduced, const BigInt& bound)
{
    const BigInt limit = property1_bound(reduced.size(), bound);
    if (reduced.target() >= limit) return false;
    return std::all_of(reduced.weights().begin(), reduced.weights().end(),
                       [&](const BigInt& w) { return w < limit; });
}

ReductionRecord reduce_bitlength(const Instance& instance, const BigInt& bound, RandomSource& rng)
{
    if (bound < 2) throw DomainError("reduce_bitlength: B must be >= 2");
    const std::size_t n = instance.size();
    if (instance.target() < 2 * BigInt(n) || instance.target() < 2) {
        throw UseDynamicProgramming("target below 2n: solve directly with the pseudo-polynomial table");
    }
    ReductionRecord record;
    record.bound = bound;
    Instance current = instance;
    std::vector<BigInt> weights;
    BigInt target;
    while (true) {
        auto round = hash_once(current, bound, rng, weights, target);
        record.history.push_back(round);
        record.prime = round.prime;
        record.shift = round.shift;
        ++record.rounds;
        current = Instance::with_residues(weights, target);
        if (satisfies_property1(current, bound)) break;
        if (record.rounds >= kMaxRounds) {
            throw Error("bit-length reduction still above 4nB log2 B after " +
                        std::to_string(kMaxRounds - 1) + " re-applications");
        }
    }
    record.reduced = std::move(current);
    return record;
}

namespace {

template <class SumA, class SumB>
ReductionReport check_impl(const Instance& original, const ReductionRecord& record, const BigInt& bound)
{
    const std::size_t n = original.size();
    std::vector<std::size_t> items;
    for (std::size_t i = 0; i < n; ++i) items.push_back(i);
    const auto wa = detail::weights_as<SumA>(original);
    const auto wb = detail::weights_as<SumB>(record.reduced);
    const SumA ta = detail::to_sum<SumA>(original.target());
    const SumB tb = detail::to_sum<SumB>(record.reduced.target());
    const auto a = detail::all_subset_sums(wa, items);
    const auto b = detail::all_subset_sums(wb, items);

    ReductionReport rep;
    for (std::size_t x = 0; x < a.size(); ++x) {
        const bool hit_a = a[x].sum == ta;
        const bool hit_b = b[x].sum == tb;
        if (hit_b && !hit_a) ++rep.false_solutions;
        if (hit_a && !hit_b) ++rep.lost_solutions;
    }
    rep.solutions_preserved = rep.false_solutions == 0 && rep.lost_solutions == 0;

    // Bins on both sides, plus the original-bin -> reduced-bin split.
    std::vector<SumA> sa;
    std::vector<SumB> sb;
    std::vector<std::pair<SumA, SumB>> pairs;
    sa.reserve(a.size());
    sb.reserve(a.size());
    pairs.reserve(a.size());
    for (std::size_t x = 0; x < a.size(); ++x) {
        sa.push_back(a[x].sum);
        sb.push_back(b[x].sum);
        pairs.emplace_back(a[x].sum, b[x].sum);
    }
    auto bins = [](auto& v, std::uint64_t& distinct, std::uint64_t& beta) {
        std::sort(v.begin(), v.end());
        distinct = 0;
        beta = 0;
        for (std::size_t i = 0; i < v.size();) {
            std::size_t j = i;
            while (j < v.size() && v[j] == v[i]) ++j;
            ++distinct;
            beta = std::max<std::uint64_t>(beta, j - i);
            i = j;
        }
    };
    bins(sa, rep.distinct_before, rep.beta_before);
    bins(sb, rep.distinct_after, rep.beta_after);

    rep.sums_preserved = 2 * rep.distinct_after >= rep.distinct_before &&
                         rep.distinct_after <= n * rep.distinct_before;
    if (bound >= 5 * BigInt(rep.distinct_before) * rep.distinct_before) {
        rep.bins_preserved = n * rep.beta_after >= rep.beta_before && rep.beta_after <= rep.beta_before;
    }

    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    rep.bins_split_ok = true;
    for (std::size_t i = 0; i < pairs.size();) {
        std::size_t j = i;
        while (j < pairs.size() && pairs[j].first == pairs[i].first) ++j;
        if (j - i > std::max<std::size_t>(n, 1)) rep.bins_split_ok = false;
        i = j;
    }
    return rep;
}

}  // namespace

ReductionReport check_reduction_properties(const Instance& original, const ReductionRecord& record,
                                           std::size_t oracle_limit)
{
    const std::size_t n = original.size();
    if (n > oracle_limit || n > kEnumerationLimit) {
        throw CapacityError("check_reduction_properties: instance larger than the oracle limit");
    }
    if (record.reduced.size() != n) throw DomainError("reduction record does not match instance");
    return detail::with_sum_type(original, [&](auto ta) {
        return detail::with_sum_type(record.reduced, [&](auto tb) {
            return check_impl<typename decltype(ta)::type, typename decltype(tb)::type>(original, record,
                                                                                    record.bound);
        });
    });
}

}  // namespace sslab
