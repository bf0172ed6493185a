#pragma once

// Arithmetic shared by the solvers. Every algorithm is written once as a
// template over the sum type and instantiated for unsigned __int128 (the
// fast path) and BigInt (fallback for weights beyond 126 bits).

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <type_traits>
#include <utility>
#include <vector>

#include "sslab/core.hpp"
#include "sslab/errors.hpp"

namespace sslab::detail {

using u128 = unsigned __int128;

template <class T>
struct TypeTag {
    using type = T;
};

struct SumHash {
    std::size_t operator()(u128 x) const noexcept
    {
        auto lo = static_cast<std::uint64_t>(x);
        auto hi = static_cast<std::uint64_t>(x >> 64);
        std::uint64_t h = lo * 0x9e3779b97f4a7c15ULL ^ (hi + 0x7f4a7c159e3779b9ULL + (lo << 6) + (lo >> 2));
        h ^= h >> 31;
        return static_cast<std::size_t>(h);
    }
    std::size_t operator()(const BigInt& x) const
    {
        return boost::multiprecision::hash_value(x);
    }
};

template <class Sum>
Sum to_sum(const BigInt& x)
{
    if constexpr (std::is_same_v<Sum, u128>) {
        return static_cast<u128>(static_cast<std::uint64_t>(x & 0xffffffffffffffffULL)) |
               (static_cast<u128>(static_cast<std::uint64_t>(x >> 64)) << 64);
    } else {
        return x;
    }
}

inline BigInt to_big(u128 x)
{
    BigInt r = static_cast<std::uint64_t>(x >> 64);
    r <<= 64;
    r += static_cast<std::uint64_t>(x);
    return r;
}
inline const BigInt& to_big(const BigInt& x) { return x; }

template <class Sum>
std::uint64_t mod_u64(const Sum& x, std::uint64_t p)
{
    if constexpr (std::is_same_v<Sum, u128>) {
        return static_cast<std::uint64_t>(x % p);
    } else {
        return static_cast<std::uint64_t>(x % p);
    }
}

template <class Sum>
std::vector<Sum> weights_as(const Instance& instance)
{
    std::vector<Sum> out;
    out.reserve(instance.size());
    for (const auto& w : instance.weights()) out.push_back(to_sum<Sum>(w));
    return out;
}

// Calls f(TypeTag<u128>{}) or f(TypeTag<BigInt>{}) depending on the instance.
template <class F>
decltype(auto) with_sum_type(const Instance& instance, F&& f)
{
    if (instance.fits_fixed_width()) return std::forward<F>(f)(TypeTag<u128>{});
    return std::forward<F>(f)(TypeTag<BigInt>{});
}

inline void require_mask_universe(std::size_t n, const char* what)
{
    if (n > 64) throw CapacityError(std::string(what) + ": more than 64 items");
}

inline std::vector<std::size_t> indices_of(std::uint64_t mask)
{
    std::vector<std::size_t> out;
    while (mask) {
        out.push_back(static_cast<std::size_t>(std::countr_zero(mask)));
        mask &= mask - 1;
    }
    return out;
}

inline std::uint64_t mask_of(const std::vector<std::size_t>& items)
{
    std::uint64_t m = 0;
    for (auto i : items) m |= std::uint64_t{1} << i;
    return m;
}

/// (sum, mask) pair; masks are global item masks.
template <class Sum>
struct Tagged {
    Sum sum;
    std::uint64_t mask;
};

// Sums of all 2^k subsets of `items`, in mask order of the local index
// (entry j corresponds to the subset selecting bits of j).
template <class Sum>
std::vector<Tagged<Sum>> all_subset_sums(const std::vector<Sum>& weights,
                                         const std::vector<std::size_t>& items)
{
    const std::size_t k = items.size();
    std::vector<Tagged<Sum>> out(std::size_t{1} << k);
    out[0] = {Sum(0), 0};
    for (std::size_t j = 0; j < k; ++j) {
        const std::size_t half = std::size_t{1} << j;
        const std::uint64_t bit = std::uint64_t{1} << items[j];
        for (std::size_t x = 0; x < half; ++x) {
            out[half + x] = {out[x].sum + weights[items[j]], out[x].mask | bit};
        }
    }
    return out;
}

// Deduplicated sorted sum set of the subsets of `items`; each sum keeps the
// numerically smallest mask reaching it.
template <class Sum>
std::vector<Tagged<Sum>> distinct_sum_set(const std::vector<Sum>& weights,
                                          const std::vector<std::size_t>& items,
                                          std::uint64_t* work = nullptr)
{
    std::vector<Tagged<Sum>> cur{{Sum(0), 0}};
    std::vector<Tagged<Sum>> next;
    for (auto i : items) {
        const Sum& w = weights[i];
        const std::uint64_t bit = std::uint64_t{1} << i;
        require_memory(static_cast<std::uint64_t>(cur.size()) * 2 * sizeof(Tagged<Sum>),
                       "distinct sum set");
        next.clear();
        next.reserve(cur.size() * 2);
        std::size_t a = 0, b = 0;
        while (a < cur.size() || b < cur.size()) {
            Tagged<Sum> cand;
            if (b == cur.size() || (a < cur.size() && cur[a].sum < cur[b].sum + w)) {
                cand = cur[a++];
            } else if (a == cur.size() || cur[b].sum + w < cur[a].sum) {
                cand = {cur[b].sum + w, cur[b].mask | bit};
                ++b;
            } else {
                // equal sums
                Tagged<Sum> shifted{cur[b].sum + w, cur[b].mask | bit};
                cand = cur[a].mask < shifted.mask ? cur[a] : shifted;
                ++a;
                ++b;
            }
            if (!next.empty() && next.back().sum == cand.sum) {
                next.back().mask = std::min(next.back().mask, cand.mask);
            } else {
                next.push_back(std::move(cand));
            }
        }
        if (work) *work += next.size();
        cur.swap(next);
    }
    return cur;
}

}  // namespace sslab::detail
