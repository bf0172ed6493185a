#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "detail/sums.hpp"

namespace sslab::detail {

// Exact bin histogram of the subsets of `items`, sorted by sum. Built by
// merging the current histogram with its copy shifted by each weight.
template <class Sum>
std::vector<std::pair<Sum, std::uint64_t>> histogram(const std::vector<Sum>& weights,
                                                     const std::vector<std::size_t>& items)
{
    using Entry = std::pair<Sum, std::uint64_t>;
    std::vector<Entry> cur{{Sum(0), 1}};
    std::vector<Entry> next;
    for (auto i : items) {
        const Sum& w = weights[i];
        require_memory(static_cast<std::uint64_t>(cur.size()) * 3 * sizeof(Entry), "bin histogram");
        next.clear();
        next.reserve(cur.size() * 2);
        std::size_t a = 0, b = 0;
        while (a < cur.size() || b < cur.size()) {
            Entry cand;
            if (b == cur.size()) {
                cand = cur[a++];
            } else {
                Sum shifted = cur[b].first + w;
                if (a < cur.size() && cur[a].first < shifted) {
                    cand = cur[a++];
                } else if (a < cur.size() && cur[a].first == shifted) {
                    cand = {std::move(shifted), cur[a].second + cur[b].second};
                    ++a;
                    ++b;
                } else {
                    cand = {std::move(shifted), cur[b].second};
                    ++b;
                }
            }
            if (!next.empty() && next.back().first == cand.first) {
                next.back().second += cand.second;
            } else {
                next.push_back(std::move(cand));
            }
        }
        cur.swap(next);
    }
    return cur;
}

}  // namespace sslab::detail
