#include "sslab/structured.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "detail/sums.hpp"
#include "sslab/numeric.hpp"
#include "sslab/oracle.hpp"

namespace sslab {

using detail::Tagged;

namespace {

constexpr double kRoundingSlack = 1e-9;

void check_block(std::size_t n, const Subset& block)
{
    if (block.universe() != n) throw ContractError("block universe does not match instance");
    if (block.empty()) throw ContractError("block M must be non-empty");
    if (2 * block.size() > n) throw ContractError("block M larger than n/2");
    detail::require_mask_universe(n, "representation solver");
}

void check_gamma(double gamma)
{
    if (!(gamma >= 0.0 && gamma <= 1.0)) throw ContractError("gamma must lie in [0, 1]");
}

std::size_t ceil_count(double x)
{
    return x <= 0 ? 0 : static_cast<std::size_t>(std::ceil(x - kRoundingSlack));
}

std::vector<std::size_t> outside(std::size_t n, const Subset& block)
{
    std::vector<std::size_t> v;
    for (std::size_t i = 0; i < n; ++i) {
        if (!block.contains(i)) v.push_back(i);
    }
    return v;
}

// Thrown through the list construction when the step budget runs out.
struct BudgetExhausted {};

struct Meter {
    Counters& cost;
    std::uint64_t budget;
    void check() const
    {
        if (cost.steps() > budget) throw BudgetExhausted{};
    }
};

template <class Sum>
struct ListEntry {
    std::uint64_t mask;
    Sum sum;
};

// Sums of every s_i-subset of the block items (Gosper's hack over local masks).
template <class Sum>
std::vector<Tagged<Sum>> combination_sums(const std::vector<Sum>& w, const std::vector<std::size_t>& block,
                                          std::size_t k)
{
    std::vector<Tagged<Sum>> out;
    const std::size_t m = block.size();
    if (k > m) return out;
    if (k == 0) {
        out.push_back({Sum(0), 0});
        return out;
    }
    require_memory(static_cast<std::uint64_t>(std::exp2(binomial_log2(m, k))) * sizeof(Tagged<Sum>),
                   "block combinations");
    std::uint64_t local = (std::uint64_t{1} << k) - 1;
    const std::uint64_t end = std::uint64_t{1} << m;
    while (local < end) {
        Tagged<Sum> e{Sum(0), 0};
        for (auto j : detail::indices_of(local)) {
            e.sum += w[block[j]];
            e.mask |= std::uint64_t{1} << block[j];
        }
        out.push_back(std::move(e));
        const std::uint64_t c = local & (~local + 1);
        const std::uint64_t r = local + c;
        local = (((r ^ local) >> 2) / c) | r;
    }
    return out;
}

// {S ⊆ side ∪ block : |S ∩ block| = k, w(S) = residue (mod p)} via the
// two-half split: brute force over the first `split` side items into a
// residue-keyed table, then probe it with every (rest of side) x (k-subset
// of block) combination.
template <class Sum>
std::vector<ListEntry<Sum>> filtered_list(const std::vector<Sum>& w, const std::vector<std::size_t>& side,
                                          const std::vector<std::size_t>& block, std::size_t k,
                                          std::uint64_t p, std::uint64_t residue, std::size_t split,
                                          Meter& meter)
{
    split = std::min(split, side.size());
    const std::vector<std::size_t> first(side.begin(), side.begin() + static_cast<std::ptrdiff_t>(split));
    const std::vector<std::size_t> rest(side.begin() + static_cast<std::ptrdiff_t>(split), side.end());
    require_memory((std::uint64_t{1} << first.size()) * (sizeof(Tagged<Sum>) + 8), "filtered list half");
    require_memory((std::uint64_t{1} << rest.size()) * sizeof(Tagged<Sum>), "filtered list half");

    struct Keyed {
        std::uint64_t res;
        std::size_t idx;
    };
    const auto low = detail::all_subset_sums(w, first);
    std::vector<Keyed> table;
    table.reserve(low.size());
    for (std::size_t i = 0; i < low.size(); ++i) table.push_back({detail::mod_u64(low[i].sum, p), i});
    std::sort(table.begin(), table.end(),
              [](const Keyed& a, const Keyed& b) { return a.res < b.res || (a.res == b.res && a.idx < b.idx); });
    meter.cost.sums_enumerated += low.size();
    meter.check();

    const auto high = detail::all_subset_sums(w, rest);
    const auto combos = combination_sums(w, block, k);
    meter.cost.sums_enumerated += high.size();
    std::vector<ListEntry<Sum>> out;
    for (const auto& z : combos) {
        for (const auto& y : high) {
            const Sum part = y.sum + z.sum;
            const std::uint64_t need = (residue + p - detail::mod_u64(part, p)) % p;
            ++meter.cost.sums_enumerated;
            ++meter.cost.dict_lookups;
            auto it = std::lower_bound(table.begin(), table.end(), need,
                                       [](const Keyed& e, std::uint64_t v) { return e.res < v; });
            for (; it != table.end() && it->res == need; ++it) {
                const auto& l = low[it->idx];
                out.push_back({l.mask | y.mask | z.mask, l.sum + part});
                ++meter.cost.list_entries;
            }
        }
        meter.check();
    }
    return out;
}

template <class Sum>
SolverOutcome many_sums_impl(const Instance& instance, const Subset& block, double gamma, RandomSource& rng,
                             std::size_t repetitions, std::uint64_t budget)
{
    const std::size_t n = instance.size();
    const std::size_t m = block.size();
    const auto w = detail::weights_as<Sum>(instance);
    const Sum total = detail::to_sum<Sum>(instance.total());
    const Sum t = detail::to_sum<Sum>(instance.target());
    const auto block_items = block.indices();
    const auto free_items = outside(n, block);

    SolverOutcome out;
    out.branch = "many_sums";
    if (total < t) return out;  // nothing reaches t

    Meter meter{out.cost, budget};
    try {
        for (std::size_t rep = 0; rep < repetitions; ++rep) {
            for (int pass = 0; pass < 2; ++pass) {
                const bool complementary = pass == 1;
                const Sum target = complementary ? Sum(total - t) : t;
                for (std::size_t s = (m + 1) / 2; s <= m; ++s) {
                    // One (p, t_L) draw per (target, s).
                    const ReprParams drawn = derive_params(n, block, gamma, s, 0, rng);
                    const std::uint64_t p = drawn.prime;
                    const std::uint64_t t_left = drawn.residue;
                    const std::uint64_t t_right = (detail::mod_u64(target, p) + p - t_left) % p;
                    for (std::size_t s1 = 0; 2 * s1 <= s; ++s1) {
                        const ReprParams shape = derive_shape(n, block, gamma, s, s1);
                        IterationRecord rec;
                        rec.complementary = complementary;
                        rec.s = s;
                        rec.s1 = s1;
                        rec.s2 = s - s1;
                        rec.prime = p;
                        rec.residue = t_left;

                        const std::vector<std::size_t> left(free_items.begin(),
                                                            free_items.begin() +
                                                                static_cast<std::ptrdiff_t>(shape.left_size));
                        const std::vector<std::size_t> right(
                            free_items.begin() + static_cast<std::ptrdiff_t>(shape.left_size), free_items.end());
                        std::vector<ListEntry<Sum>> lhs, rhs;
                        try {
                            lhs = filtered_list(w, left, block_items, rec.s1, p, t_left,
                                                shape.half_split(left.size()), meter);
                            rhs = filtered_list(w, right, block_items, rec.s2, p, t_right,
                                                shape.half_split(right.size()), meter);
                        } catch (const CapacityError&) {
                            rec.skipped = true;
                            out.iterations.push_back(rec);
                            continue;
                        }
                        rec.left_size = lhs.size();
                        rec.right_size = rhs.size();
                        out.cost.peak_retained =
                            std::max<std::uint64_t>(out.cost.peak_retained, lhs.size() + rhs.size());

                        std::sort(rhs.begin(), rhs.end(), [](const auto& a, const auto& b) {
                            return a.sum < b.sum || (a.sum == b.sum && a.mask < b.mask);
                        });
                        std::optional<std::uint64_t> hit;
                        for (const auto& sl : lhs) {
                            if (target < sl.sum) continue;
                            const Sum need = target - sl.sum;
                            ++out.cost.dict_lookups;
                            auto it = std::lower_bound(rhs.begin(), rhs.end(), need,
                                                       [](const auto& e, const Sum& v) { return e.sum < v; });
                            for (; it != rhs.end() && it->sum == need; ++it) {
                                ++out.cost.pairs_checked;
                                ++rec.pairs_scanned;
                                if ((sl.mask & it->mask) == 0) {
                                    hit = sl.mask | it->mask;
                                    break;
                                }
                            }
                            if (hit) break;
                            meter.check();
                        }
                        out.iterations.push_back(rec);
                        if (hit) {
                            Subset x = Subset::from_mask(*hit, n);
                            accept_witness(out, instance, complementary ? x.complement() : x);
                            return out;
                        }
                    }
                }
            }
        }
    } catch (const BudgetExhausted&) {
        out.budget_exhausted = true;
    }
    return out;
}

std::uint64_t saturating_budget(double x)
{
    if (!(x < 1.8e19)) return std::numeric_limits<std::uint64_t>::max();
    return static_cast<std::uint64_t>(std::ceil(x));
}

}  // namespace

std::size_t ReprParams::half_split(std::size_t side_size) const
{
    const double x = (static_cast<double>(side_size) + binary_entropy(sigma / 2.0) * static_cast<double>(m)) / 2.0;
    const auto k = static_cast<std::size_t>(std::floor(x + kRoundingSlack));
    return std::min(k, side_size);
}

ReprParams derive_shape(std::size_t n, const Subset& block, double gamma, std::size_t s, std::size_t s1)
{
    check_block(n, block);
    check_gamma(gamma);
    const std::size_t m = block.size();
    if (s < (m + 1) / 2 || s > m) throw ContractError("s must lie in [ceil(|M|/2), |M|]");
    if (s1 > s - s1) throw ContractError("s1 must not exceed s2 = s - s1");

    ReprParams p;
    p.n = n;
    p.m = m;
    p.s = s;
    p.s1 = s1;
    p.s2 = s - s1;
    p.gamma = gamma;
    p.mu = static_cast<double>(m) / static_cast<double>(n);
    p.sigma = static_cast<double>(s) / static_cast<double>(m);
    p.sigma1 = static_cast<double>(p.s1) / static_cast<double>(m);
    p.sigma2 = static_cast<double>(p.s2) / static_cast<double>(m);
    p.pi = gamma - 1.0 + p.sigma;
    p.lambda = (1.0 - p.mu) / 2.0 + (binary_entropy(p.sigma / 2.0) - binary_entropy(p.sigma1)) * p.mu;
    p.left_size = std::min(ceil_count(p.lambda * static_cast<double>(n)), n - m);
    p.right_size = n - m - p.left_size;
    return p;
}

ReprParams derive_params(std::size_t n, const Subset& block, double gamma, std::size_t s, std::size_t s1,
                         RandomSource& rng)
{
    ReprParams p = derive_shape(n, block, gamma, s, s1);
    const double e = p.pi * static_cast<double>(p.m);
    if (e > 62) throw CapacityError("prime for the representation filter exceeds 64 bits");
    // Prime in [2^e, 2^(e+1)]; below 3 the interval is raised to [3, 6].
    std::uint64_t lo = e < 0 ? 1 : static_cast<std::uint64_t>(std::ceil(std::exp2(e) - kRoundingSlack));
    std::uint64_t hi = e < 0 ? 1 : static_cast<std::uint64_t>(std::floor(std::exp2(e + 1.0) + kRoundingSlack));
    if (lo < 3) {
        lo = 3;
        hi = std::max<std::uint64_t>(hi, 6);
        p.prime_clamped = true;
    }
    do {
        p.prime = rng.uniform_between(lo, hi);
    } while (!is_prime(p.prime));
    p.residue = rng.uniform_below(p.prime);
    return p;
}

FilteredList build_filtered_list(const Instance& instance, const Subset& side, const Subset& block,
                                 std::size_t s_i, std::uint64_t prime, std::uint64_t residue,
                                 std::size_t split_size)
{
    const std::size_t n = instance.size();
    detail::require_mask_universe(n, "build_filtered_list");
    if (side.universe() != n || block.universe() != n) throw ContractError("subset universe mismatch");
    for (auto i : side.indices()) {
        if (block.contains(i)) throw ContractError("side set and block overlap");
    }
    if (prime < 2) throw ContractError("modulus must be >= 2");
    if (residue >= prime) throw ContractError("residue must lie in [0, p)");
    return detail::with_sum_type(instance, [&](auto tag) {
        using Sum = typename decltype(tag)::type;
        const auto w = detail::weights_as<Sum>(instance);
        Counters cost;
        Meter meter{cost, std::numeric_limits<std::uint64_t>::max()};
        auto entries = filtered_list(w, side.indices(), block.indices(), s_i, prime, residue, split_size, meter);
        FilteredList list;
        list.prime = prime;
        list.residue = residue;
        list.enumerated = cost.sums_enumerated;
        list.entries.reserve(entries.size());
        for (auto& e : entries) list.entries.push_back({e.mask, detail::to_big(e.sum)});
        return list;
    });
}

double predicted_many_sums_steps(std::size_t n, std::size_t block_size, double gamma)
{
    if (block_size == 0 || 2 * block_size > n) return 1.0;
    const Subset block = [&] {
        Subset b(n);
        for (std::size_t i = 0; i < block_size; ++i) b.insert(i);
        return b;
    }();
    double steps = 0;
    const std::size_t m = block_size;
    for (std::size_t s = (m + 1) / 2; s <= m; ++s) {
        for (std::size_t s1 = 0; 2 * s1 <= s; ++s1) {
            const auto p = derive_shape(n, block, gamma, s, s1);
            const double filter = std::max(3.0, std::exp2(p.pi * static_cast<double>(m)));
            const double wl = std::exp2(static_cast<double>(p.left_size) + binomial_log2(m, p.s1));
            const double wr = std::exp2(static_cast<double>(p.right_size) + binomial_log2(m, p.s2));
            steps += std::sqrt(wl) + std::sqrt(wr) + (wl + wr) / filter;
        }
    }
    return 2.0 * steps;  // actual and complementary target
}

SolverOutcome solve_many_sums(const Instance& instance, const Subset& block, double gamma, RandomSource& rng,
                              const ManySumsOptions& options)
{
    const std::size_t n = instance.size();
    check_block(n, block);
    check_gamma(gamma);
    const std::uint64_t sums = distinct_sums(instance, block);
    if (std::log2(static_cast<double>(sums)) < gamma * static_cast<double>(block.size()) - kRoundingSlack) {
        throw ContractError("block generates fewer than 2^(gamma |M|) distinct sums");
    }
    const std::size_t reps = std::max<std::size_t>(options.repetitions, 1);
    const std::uint64_t budget =
        options.step_budget ? *options.step_budget
                            : saturating_budget(64.0 * static_cast<double>(n) * static_cast<double>(n) *
                                                predicted_many_sums_steps(n, block.size(), gamma) *
                                                static_cast<double>(reps));
    return detail::with_sum_type(instance, [&](auto tag) {
        return many_sums_impl<typename decltype(tag)::type>(instance, block, gamma, rng, reps, budget);
    });
}

namespace {

template <class Sum>
SolverOutcome few_sums_impl(const Instance& instance, const Subset& block, double gamma)
{
    const std::size_t n = instance.size();
    const std::size_t m = block.size();
    const auto w = detail::weights_as<Sum>(instance);
    const Sum t = detail::to_sum<Sum>(instance.target());
    SolverOutcome out;
    out.branch = "few_sums";

    const double mu = n == 0 ? 0.0 : static_cast<double>(m) / static_cast<double>(n);
    const auto free_items = outside(n, block);
    const std::size_t l_size =
        std::min(ceil_count((1.0 - mu * (1.0 - gamma)) / 2.0 * static_cast<double>(n)), free_items.size());
    const std::vector<std::size_t> left(free_items.begin(), free_items.begin() + static_cast<std::ptrdiff_t>(l_size));
    std::vector<std::size_t> right(free_items.begin() + static_cast<std::ptrdiff_t>(l_size), free_items.end());
    for (auto i : block.indices()) right.push_back(i);
    std::sort(right.begin(), right.end());

    const auto a = detail::distinct_sum_set(w, left, &out.cost.sums_enumerated);
    const auto b = detail::distinct_sum_set(w, right, &out.cost.sums_enumerated);
    out.cost.peak_retained = a.size() + b.size();
    for (const auto& y : b) {
        if (t < y.sum) break;
        const Sum need = t - y.sum;
        ++out.cost.dict_lookups;
        auto it = std::lower_bound(a.begin(), a.end(), need, [](const auto& e, const Sum& v) { return e.sum < v; });
        if (it != a.end() && it->sum == need) {
            ++out.cost.pairs_checked;
            accept_witness(out, instance, Subset::from_mask(it->mask | y.mask, n));
            break;
        }
    }
    return out;
}

}  // namespace

SolverOutcome solve_few_sums(const Instance& instance, const Subset& block, double gamma)
{
    const std::size_t n = instance.size();
    if (block.universe() != n) throw ContractError("block universe does not match instance");
    if (2 * block.size() > n) throw ContractError("block M larger than n/2");
    check_gamma(gamma);
    detail::require_mask_universe(n, "solve_few_sums");
    if (!block.empty()) {
        const std::uint64_t sums = distinct_sums(instance, block);
        if (std::log2(static_cast<double>(sums)) > gamma * static_cast<double>(block.size()) + kRoundingSlack) {
            throw ContractError("block generates more than 2^(gamma |M|) distinct sums");
        }
    }
    return detail::with_sum_type(instance, [&](auto tag) {
        return few_sums_impl<typename decltype(tag)::type>(instance, block, gamma);
    });
}

}  // namespace sslab
