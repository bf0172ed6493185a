#include "sslab/combinatorics.hpp"

#include <algorithm>
#include <bit>
#include <unordered_set>

#include "detail/oracle_impl.hpp"
#include "detail/sums.hpp"
#include "sslab/dispatch.hpp"
#include "sslab/oracle.hpp"

namespace sslab {

using detail::u128;

UdcpPair::UdcpPair(std::size_t n, std::vector<std::uint64_t> a, std::vector<std::uint64_t> b)
    : n_(n), a_(std::move(a)), b_(std::move(b))
{
    detail::require_mask_universe(n, "UdcpPair");
    const std::uint64_t limit = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    for (auto* v : {&a_, &b_}) {
        for (auto x : *v) {
            if (x & ~limit) throw DomainError("UdcpPair: vector longer than n");
        }
        std::sort(v->begin(), v->end());
        v->erase(std::unique(v->begin(), v->end()), v->end());
    }
}

namespace {

// Bit i of x moved to bit 2i, so that two spread vectors add coordinatewise
// without carries.
u128 spread(std::uint64_t x)
{
    u128 out = 0;
    while (x) {
        const int i = std::countr_zero(x);
        out |= u128{1} << (2 * i);
        x &= x - 1;
    }
    return out;
}

void check_ternary_size(std::size_t n)
{
    if (n > kTernaryLimit) {
        throw CapacityError("ternary enumeration over " + std::to_string(n) + " items exceeds the limit of " +
                            std::to_string(kTernaryLimit));
    }
}

}  // namespace

bool check_udcp(const UdcpPair& pair)
{
    const auto& a = pair.a();
    const auto& b = pair.b();
    if (!b.empty() && a.size() > kUdcpCapacity / b.size()) {
        throw CapacityError("check_udcp: |A| |B| exceeds 2^26");
    }
    std::vector<u128> sb;
    sb.reserve(b.size());
    for (auto y : b) sb.push_back(spread(y));
    std::unordered_set<u128, detail::SumHash> seen;
    seen.reserve(a.size() * b.size());
    for (auto x : a) {
        const u128 sx = spread(x);
        for (auto y : sb) {
            if (!seen.insert(sx + y).second) return false;
        }
    }
    return true;
}

UdcpPair udcp_from_instance(const Instance& instance, std::size_t oracle_limit)
{
    const std::size_t n = instance.size();
    if (n > oracle_limit || n > kEnumerationLimit) {
        throw CapacityError("udcp_from_instance: instance larger than the oracle limit");
    }
    return detail::with_sum_type(instance, [&](auto tag) {
        using Sum = typename decltype(tag)::type;
        const auto w = detail::weights_as<Sum>(instance);
        std::vector<std::size_t> items(n);
        for (std::size_t i = 0; i < n; ++i) items[i] = i;

        std::vector<std::uint64_t> a;
        for (const auto& e : detail::distinct_sum_set(w, items)) a.push_back(e.mask);

        // Largest bin; the histogram is sorted, so the first maximum has the
        // smallest sum.
        const auto hist = detail::histogram(w, items);
        auto best = hist.begin();
        for (auto it = hist.begin(); it != hist.end(); ++it) {
            if (it->second > best->second) best = it;
        }
        const Sum bin = best->first;
        std::vector<std::uint64_t> b;
        std::uint64_t mask = 0;
        Sum sum = 0;
        if (sum == bin) b.push_back(0);
        for (std::uint64_t i = 1; i < (std::uint64_t{1} << n); ++i) {
            const int bit = std::countr_zero(i);
            const std::uint64_t m = std::uint64_t{1} << bit;
            if (mask & m) {
                sum -= w[static_cast<std::size_t>(bit)];
            } else {
                sum += w[static_cast<std::size_t>(bit)];
            }
            mask ^= m;
            if (sum == bin) b.push_back(mask);
        }
        return UdcpPair(n, std::move(a), std::move(b));
    });
}

std::uint64_t bin_l2(const Instance& instance, const Subset& over)
{
    const SumHistogram h = enumerate_histogram(instance, over);
    std::uint64_t total = 0;
    for (const auto& [sum, c] : h.entries) total += c * c;
    return total;
}

std::vector<std::uint64_t> count_B_sigma_profile(const Instance& instance)
{
    const std::size_t n = instance.size();
    check_ternary_size(n);
    return detail::with_sum_type(instance, [&](auto tag) {
        using Sum = typename decltype(tag)::type;
        const auto w = detail::weights_as<Sum>(instance);
        std::vector<std::size_t> items(n);
        for (std::size_t i = 0; i < n; ++i) items[i] = i;
        const auto sums = detail::all_subset_sums(w, items);

        // y = 1_P - 1_N with P, N disjoint; y.w = 0 iff 2 w(P) = w(P ∪ N).
        std::vector<std::uint64_t> profile(n + 1, 0);
        for (std::uint64_t u = 0; u < sums.size(); ++u) {
            const Sum& whole = sums[u].sum;
            const auto ell1 = static_cast<std::size_t>(std::popcount(u));
            std::uint64_t p = u;
            while (true) {
                if (sums[p].sum + sums[p].sum == whole) ++profile[ell1];
                if (p == 0) break;
                p = (p - 1) & u;
            }
        }
        return profile;
    });
}

std::uint64_t count_B_sigma(const Instance& instance, std::size_t ell1)
{
    const auto profile = count_B_sigma_profile(instance);
    return ell1 < profile.size() ? profile[ell1] : 0;
}

bool l2_identity_holds(const Instance& instance)
{
    const std::size_t n = instance.size();
    const auto profile = count_B_sigma_profile(instance);
    std::uint64_t rhs = 0;
    for (std::size_t i = 0; i <= n; ++i) rhs += profile[i] << (n - i);
    return bin_l2(instance, Subset::full(n)) == rhs;
}

bool cauchy_schwarz_holds(const Instance& instance, bool all_partitions)
{
    const std::size_t n = instance.size();
    if (n > kEnumerationLimit) throw CapacityError("cauchy_schwarz_holds: instance larger than the oracle limit");
    if (all_partitions && n > 20) throw CapacityError("cauchy_schwarz_holds: too many equi-partitions");
    const u128 beta = max_bin(instance);
    auto holds = [&](std::uint64_t s_mask) {
        const Subset s = Subset::from_mask(s_mask, n);
        const u128 l2s = bin_l2(instance, s);
        const u128 l2t = bin_l2(instance, s.complement());
        return beta * beta <= l2s * l2t;
    };
    const std::size_t k = n / 2;
    if (!all_partitions) return holds(k == 0 ? 0 : (std::uint64_t{1} << k) - 1);
    if (k == 0) return holds(0);
    std::uint64_t m = (std::uint64_t{1} << k) - 1;
    const std::uint64_t end = std::uint64_t{1} << n;
    while (m < end) {
        if (!holds(m)) return false;
        const std::uint64_t c = m & (~m + 1);
        const std::uint64_t r = m + c;
        m = (((r ^ m) >> 2) / c) | r;
    }
    return true;
}

bool sums_vs_bin_holds(const Instance& instance)
{
    const std::size_t n = instance.size();
    const std::uint64_t sums = distinct_sums(instance);
    if (!at_least_power(sums, 997, 1000, n)) return true;
    return at_most_power(max_bin(instance), 4996, 10000, n);
}

}  // namespace sslab
