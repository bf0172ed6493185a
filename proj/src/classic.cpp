#include "sslab/classic.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <queue>
#include <stdexcept>

#include "detail/sums.hpp"
#include "sslab/numeric.hpp"

namespace sslab {

using detail::Tagged;

// ------------------------------------------------------------ Bellman DP

SolverOutcome bellman_dp(const Instance& instance)
{
    const std::size_t n = instance.size();
    SolverOutcome out;
    out.branch = "dp";
    if (instance.target() > UINT64_MAX - 1) throw CapacityError("bellman_dp: target exceeds 64 bits");
    if (n >= UINT32_MAX) throw CapacityError("bellman_dp: too many items");
    const auto t = static_cast<std::uint64_t>(instance.target());
    require_memory((t + 1) * sizeof(std::uint32_t), "bellman_dp table");

    // reach[s]: 1 + the item that first made s reachable; kStart for s = 0.
    constexpr std::uint32_t kStart = UINT32_MAX;
    std::vector<std::uint32_t> reach(t + 1, 0);
    reach[0] = kStart;
    for (std::size_t i = 0; i < n && reach[t] == 0; ++i) {
        const auto& wb = instance.weight(i);
        if (wb == 0 || wb > t) continue;
        const auto w = static_cast<std::uint64_t>(wb);
        for (std::uint64_t s = t; s >= w; --s) {
            ++out.cost.sums_enumerated;
            if (reach[s] == 0 && reach[s - w] != 0) reach[s] = static_cast<std::uint32_t>(i + 1);
            if (s == w) break;
        }
    }
    out.cost.peak_retained = t + 1;
    if (reach[t] == 0) return out;

    Subset witness(n);
    std::uint64_t s = t;
    while (s != 0) {
        const std::size_t item = reach[s] - 1;
        witness.insert(item);
        s -= static_cast<std::uint64_t>(instance.weight(item));
    }
    accept_witness(out, instance, std::move(witness));
    return out;
}

// ------------------------------------------------------ Meet in the middle

namespace {

std::vector<std::size_t> range_items(std::size_t lo, std::size_t hi)
{
    std::vector<std::size_t> v;
    for (std::size_t i = lo; i < hi; ++i) v.push_back(i);
    return v;
}

template <class Sum>
bool by_sum_then_mask(const Tagged<Sum>& a, const Tagged<Sum>& b)
{
    return a.sum < b.sum || (a.sum == b.sum && a.mask < b.mask);
}

template <class Sum>
SolverOutcome meet_in_middle_impl(const Instance& instance)
{
    const std::size_t n = instance.size();
    const std::size_t h = n / 2;
    const auto w = detail::weights_as<Sum>(instance);
    const Sum t = detail::to_sum<Sum>(instance.target());
    SolverOutcome out;
    out.branch = "mim";

    require_memory(((std::uint64_t{1} << h) + (std::uint64_t{1} << (n - h))) * sizeof(Tagged<Sum>),
                   "meet_in_middle lists");
    auto left = detail::all_subset_sums(w, range_items(0, h));
    auto right = detail::all_subset_sums(w, range_items(h, n));
    out.cost.sums_enumerated = left.size() + right.size();
    out.cost.peak_retained = left.size() + right.size();

    // Dictionary: sorted, one entry per sum holding its smallest mask.
    std::sort(left.begin(), left.end(), by_sum_then_mask<Sum>);
    left.erase(std::unique(left.begin(), left.end(),
                           [](const auto& a, const auto& b) { return a.sum == b.sum; }),
               left.end());

    // Right masks are visited in increasing order, and they occupy the high
    // bits, so the first hit carries the smallest overall mask.
    for (const auto& r : right) {
        if (r.sum > t) continue;
        const Sum need = t - r.sum;
        ++out.cost.dict_lookups;
        auto it = std::lower_bound(left.begin(), left.end(), need,
                                   [](const auto& e, const Sum& v) { return e.sum < v; });
        if (it != left.end() && it->sum == need) {
            ++out.cost.pairs_checked;
            accept_witness(out, instance, Subset::from_mask(it->mask | r.mask, n));
            return out;
        }
    }
    return out;
}

}  // namespace

SolverOutcome meet_in_middle(const Instance& instance)
{
    if (instance.size() > kMeetInMiddleLimit) {
        throw CapacityError("meet_in_middle: more than " + std::to_string(kMeetInMiddleLimit) + " items");
    }
    return detail::with_sum_type(instance, [&](auto tag) {
        return meet_in_middle_impl<typename decltype(tag)::type>(instance);
    });
}

// ---------------------------------------------------- Schroeppel-Shamir

namespace {

// Streams all sums a + b (a from `outer`, b from sorted `inner`) in sorted
// order using a heap with one cursor per outer entry.
template <class Sum, bool Ascending>
class SumStream {
public:
    SumStream(std::vector<Tagged<Sum>> outer, std::vector<Tagged<Sum>> inner)
        : outer_(std::move(outer)), inner_(std::move(inner))
    {
        std::sort(inner_.begin(), inner_.end(), [](const auto& a, const auto& b) {
            return Ascending ? by_sum_then_mask(a, b) : by_sum_then_mask(b, a);
        });
        if (!inner_.empty()) {
            for (std::size_t i = 0; i < outer_.size(); ++i) heap_.push(Cursor{outer_[i].sum + inner_[0].sum, i, 0});
        }
        peak_heap_ = heap_.size();
    }

    bool empty() const { return heap_.empty(); }
    const Sum& peek() const { return heap_.top().sum; }

    Tagged<Sum> pop()
    {
        Cursor c = heap_.top();
        heap_.pop();
        if (c.inner + 1 < inner_.size()) {
            heap_.push(Cursor{outer_[c.outer].sum + inner_[c.inner + 1].sum, c.outer, c.inner + 1});
        }
        peak_heap_ = std::max<std::uint64_t>(peak_heap_, heap_.size() + 1);
        if (emitted_ && (Ascending ? c.sum < last_ : last_ < c.sum)) {
            throw std::logic_error("schroeppel_shamir: half-sum stream out of order");
        }
        last_ = c.sum;
        emitted_ = true;
        ++pops_;
        return {c.sum, outer_[c.outer].mask | inner_[c.inner].mask};
    }

    std::uint64_t retained_peak() const { return peak_heap_ + inner_.size(); }
    std::uint64_t pops() const { return pops_; }
    std::uint64_t list_sums() const { return outer_.size() + inner_.size(); }

private:
    struct Cursor {
        Sum sum;
        std::size_t outer;
        std::size_t inner;
        // std::priority_queue is a max-heap; invert for ascending order.
        bool operator<(const Cursor& o) const { return Ascending ? o.sum < sum : sum < o.sum; }
    };

    std::vector<Tagged<Sum>> outer_;
    std::vector<Tagged<Sum>> inner_;
    std::priority_queue<Cursor> heap_;
    std::uint64_t peak_heap_ = 0;
    std::uint64_t pops_ = 0;
    Sum last_{};
    bool emitted_ = false;
};

template <class Sum>
SolverOutcome schroeppel_shamir_impl(const Instance& instance)
{
    const std::size_t n = instance.size();
    const std::size_t h = n / 2;
    const std::size_t q1 = h / 2;
    const std::size_t q3 = h + (n - h) / 2;
    const auto w = detail::weights_as<Sum>(instance);
    const Sum t = detail::to_sum<Sum>(instance.target());
    SolverOutcome out;
    out.branch = "ss";

    SumStream<Sum, true> left(detail::all_subset_sums(w, range_items(0, q1)),
                              detail::all_subset_sums(w, range_items(q1, h)));
    SumStream<Sum, false> right(detail::all_subset_sums(w, range_items(h, q3)),
                                detail::all_subset_sums(w, range_items(q3, n)));

    std::optional<std::uint64_t> best;
    while (!left.empty() && !right.empty()) {
        ++out.cost.pairs_checked;
        const Sum s = left.peek() + right.peek();
        if (s < t) {
            left.pop();
        } else if (t < s) {
            right.pop();
        } else {
            // Both sides may hold runs of equal sums; the best combination
            // takes the smallest mask from each run.
            const Sum ls = left.peek();
            const Sum rs = right.peek();
            std::uint64_t lmask = UINT64_MAX, rmask = UINT64_MAX;
            while (!left.empty() && left.peek() == ls) lmask = std::min(lmask, left.pop().mask);
            while (!right.empty() && right.peek() == rs) rmask = std::min(rmask, right.pop().mask);
            const std::uint64_t cand = lmask | rmask;
            if (!best || cand < *best) best = cand;
        }
    }
    out.cost.sums_enumerated = left.pops() + right.pops() + left.list_sums() + right.list_sums();
    out.cost.peak_retained = left.retained_peak() + right.retained_peak();
    if (best) accept_witness(out, instance, Subset::from_mask(*best, n));
    return out;
}

}  // namespace

SolverOutcome schroeppel_shamir(const Instance& instance)
{
    if (instance.size() > 4 * kQuarterLimit) {
        throw CapacityError("schroeppel_shamir: more than " + std::to_string(4 * kQuarterLimit) + " items");
    }
    return detail::with_sum_type(instance, [&](auto tag) {
        return schroeppel_shamir_impl<typename decltype(tag)::type>(instance);
    });
}

// ------------------------------------------------------ Modular sampler

ResidueSampler::ResidueSampler(const Instance& instance, std::uint64_t modulus)
    : n_(instance.size()), modulus_(modulus)
{
    if (modulus_ == 0) throw DomainError("ResidueSampler: modulus must be positive");
    if (n_ > kSamplerLimit) {
        throw CapacityError("modular sampler: more than " + std::to_string(kSamplerLimit) + " items");
    }
    const auto cells = static_cast<std::uint64_t>(n_ + 1) * modulus_;
    if (cells / (n_ + 1) != modulus_) throw CapacityError("modular sampler table overflows");
    require_memory(cells * sizeof(std::uint64_t), "modular sampler table");

    for (const auto& w : instance.weights()) weight_residues_.push_back(static_cast<std::uint64_t>(w % modulus_));
    table_.assign(cells, 0);
    table_[n_ * modulus_ + 0] = 1;
    for (std::size_t i = n_; i-- > 0;) {
        const std::uint64_t wr = weight_residues_[i];
        for (std::uint64_t c = 0; c < modulus_; ++c) {
            const std::uint64_t prev = (c + modulus_ - wr) % modulus_;
            table_[i * modulus_ + c] = count(i + 1, c) + count(i + 1, prev);
        }
    }
}

std::uint64_t ResidueSampler::class_size(std::uint64_t residue) const
{
    return count(0, residue % modulus_);
}

std::optional<std::uint64_t> ResidueSampler::draw(std::uint64_t residue, RandomSource& rng) const
{
    std::uint64_t c = residue % modulus_;
    if (count(0, c) == 0) return std::nullopt;
    std::uint64_t mask = 0;
    for (std::size_t i = 0; i < n_; ++i) {
        const std::uint64_t prev = (c + modulus_ - weight_residues_[i]) % modulus_;
        const std::uint64_t with_item = count(i + 1, prev);
        if (rng.uniform_below(count(i, c)) < with_item) {
            mask |= std::uint64_t{1} << i;
            c = prev;
        }
    }
    return mask;
}

std::uint64_t sampler_modulus_floor(std::size_t n, double sigma)
{
    if (!(sigma >= 0.0 && sigma <= 1.0)) throw DomainError("sigma must lie in [0, 1]");
    const auto bits = static_cast<unsigned>(std::ceil((1.0 - sigma) * static_cast<double>(n) / 2.0 - 1e-9));
    if (bits >= 62) throw CapacityError("sampler modulus too large");
    return std::max<std::uint64_t>(3, std::uint64_t{1} << bits);
}

SolverOutcome modular_sampler_with_modulus(const Instance& instance, std::uint64_t modulus,
                                           RandomSource& rng, std::uint64_t budget)
{
    SolverOutcome out;
    out.branch = "sampler";
    if (budget == 0) {
        out.budget_exhausted = true;
        return out;
    }
    ResidueSampler sampler(instance, modulus);
    const auto residue = static_cast<std::uint64_t>(instance.target() % modulus);
    out.cost.peak_retained = (instance.size() + 1) * modulus;
    if (sampler.class_size(residue) == 0) return out;
    return detail::with_sum_type(instance, [&](auto tag) {
        using Sum = typename decltype(tag)::type;
        const auto w = detail::weights_as<Sum>(instance);
        const Sum t = detail::to_sum<Sum>(instance.target());
        for (std::uint64_t k = 0; k < budget; ++k) {
            const auto mask = *sampler.draw(residue, rng);
            ++out.cost.samples_drawn;
            Sum s = 0;
            for (auto i : detail::indices_of(mask)) s += w[i];
            if (s == t) {
                accept_witness(out, instance, Subset::from_mask(mask, instance.size()));
                break;
            }
        }
        out.budget_exhausted = !out.found();
        return out;
    });
}

SolverOutcome modular_sampler(const Instance& instance, double sigma, RandomSource& rng,
                              std::uint64_t budget)
{
    if (instance.size() > kSamplerLimit) {
        throw CapacityError("modular sampler: more than " + std::to_string(kSamplerLimit) + " items");
    }
    const std::uint64_t r = sampler_modulus_floor(instance.size(), sigma);
    if (budget == 0) {
        SolverOutcome out;
        out.branch = "sampler";
        out.budget_exhausted = true;
        return out;
    }
    const std::uint64_t q = random_prime(r, rng);
    return modular_sampler_with_modulus(instance, q, rng, budget);
}

}  // namespace sslab
