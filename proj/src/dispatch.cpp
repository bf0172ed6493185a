#include "sslab/dispatch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "detail/sums.hpp"
#include "sslab/classic.hpp"
#include "sslab/hashing.hpp"
#include "sslab/oracle.hpp"
#include "sslab/structured.hpp"

namespace sslab {

namespace {

constexpr double kEpsilonSlack = 1e-12;

void check_epsilon(double epsilon)
{
    if (!(epsilon > 0.0 && epsilon <= 1.0 / 6.0 + kEpsilonSlack)) {
        throw DomainError("epsilon must lie in (0, 1/6]");
    }
}

std::uint64_t saturating(double x)
{
    if (!(x < 1.8e19)) return std::numeric_limits<std::uint64_t>::max();
    return static_cast<std::uint64_t>(std::ceil(x));
}

std::uint64_t remaining(std::uint64_t budget, const Counters& spent)
{
    return spent.steps() >= budget ? 0 : budget - spent.steps();
}

// Moves the result of a sub-solver into `out`, keeping counters from
// earlier stages and the witness only if it solves `original`.
void absorb(SolverOutcome& out, SolverOutcome inner, const Instance& original)
{
    out.cost += inner.cost;
    out.budget_exhausted = out.budget_exhausted || inner.budget_exhausted;
    for (auto& it : inner.iterations) out.iterations.push_back(it);
    out.branch += inner.branch;
    if (inner.witness && original.is_solution(*inner.witness)) accept_witness(out, original, *inner.witness);
}

SolverOutcome trivial_outcome(const Instance& instance, const char* branch)
{
    SolverOutcome out;
    out.branch = branch;
    if (instance.target() == 0) accept_witness(out, instance, Subset(instance.size()));
    return out;
}

}  // namespace

std::vector<Subset> small_bin_partition(std::size_t n, double epsilon)
{
    check_epsilon(epsilon);
    const double mu = 1.5 * epsilon;
    const auto block =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(mu * static_cast<double>(n) - 1e-9)));
    std::vector<Subset> parts;
    for (std::size_t lo = 0; lo < n; lo += block) {
        Subset part(n);
        for (std::size_t i = lo; i < std::min(n, lo + block); ++i) part.insert(i);
        parts.push_back(std::move(part));
    }
    return parts;
}

SolverOutcome small_bin_join(const Instance& instance, double epsilon, std::optional<std::uint64_t> step_budget)
{
    const std::size_t n = instance.size();
    detail::require_mask_universe(n, "small_bin_join");
    const auto parts = small_bin_partition(n, epsilon);
    std::vector<std::size_t> left, right;
    const std::size_t half = (parts.size() + 1) / 2;
    for (std::size_t k = 0; k < parts.size(); ++k) {
        for (auto i : parts[k].indices()) (k < half ? left : right).push_back(i);
    }
    return detail::with_sum_type(instance, [&](auto tag) {
        using Sum = typename decltype(tag)::type;
        const auto w = detail::weights_as<Sum>(instance);
        const Sum t = detail::to_sum<Sum>(instance.target());
        SolverOutcome out;
        out.branch = "join";
        const std::uint64_t budget = step_budget.value_or(std::numeric_limits<std::uint64_t>::max());
        const auto a = detail::distinct_sum_set(w, left, &out.cost.sums_enumerated);
        const auto b = detail::distinct_sum_set(w, right, &out.cost.sums_enumerated);
        out.cost.peak_retained = a.size() + b.size();
        if (out.cost.steps() > budget) {
            out.budget_exhausted = true;
            return out;
        }
        for (const auto& y : b) {
            if (t < y.sum) break;
            const Sum need = t - y.sum;
            ++out.cost.dict_lookups;
            auto it = std::lower_bound(a.begin(), a.end(), need,
                                       [](const auto& e, const Sum& v) { return e.sum < v; });
            if (it != a.end() && it->sum == need) {
                ++out.cost.pairs_checked;
                accept_witness(out, instance, Subset::from_mask(it->mask | y.mask, n));
                break;
            }
        }
        return out;
    });
}

SolverOutcome solve_small_bin(const Instance& instance, double epsilon, RandomSource& rng)
{
    SmallBinOptions options;
    options.epsilon = epsilon;
    return solve_small_bin(instance, rng, options);
}

SolverOutcome solve_small_bin(const Instance& instance, RandomSource& rng, const SmallBinOptions& options)
{
    const double epsilon = options.epsilon;
    check_epsilon(epsilon);
    const std::size_t n = instance.size();
    if (n == 0) return trivial_outcome(instance, "small_bin/trivial");
    detail::require_mask_universe(n, "solve_small_bin");
    const std::uint64_t budget = options.step_budget.value_or(std::numeric_limits<std::uint64_t>::max());

    SolverOutcome out;
    out.branch = "small_bin/";

    // (1) Short weights. Skipped when the input already meets the bound.
    const BigInt bound = BigInt(1) << (3 * n);
    Instance work = instance;
    if (!satisfies_property1(instance, bound)) {
        if (instance.target() < 2 * BigInt(n)) {
            absorb(out, bellman_dp(instance), instance);
            return out;
        }
        RandomSource hash_rng = rng.split();
        work = reduce_bitlength(instance, bound, hash_rng).reduced;
        out.branch += "hashed/";
    }

    // (2)-(3) Partition and count the sums of every part.
    const double gamma = 1.0 - epsilon / 2.0;
    const auto parts = small_bin_partition(n, epsilon);
    // Richness is measured against the nominal part size, so a short tail
    // part does not qualify on its own.
    const double threshold = gamma * static_cast<double>(parts.front().size());
    const Subset* rich = nullptr;
    for (const auto& part : parts) {
        const std::uint64_t sums = distinct_sums(work, part);
        out.cost.sums_enumerated += sums;
        if (rich == nullptr && 2 * part.size() <= n &&
            std::log2(static_cast<double>(sums)) >= threshold - 1e-9) {
            rich = &part;
        }
    }
    if (out.cost.steps() > budget) {
        out.budget_exhausted = true;
        return out;
    }

    if (rich != nullptr) {
        // (4) Representation solver on the sum-rich part.
        ManySumsOptions ms;
        ms.repetitions = options.repetitions > 0 ? options.repetitions : n * n;
        if (options.step_budget) ms.step_budget = remaining(budget, out.cost);
        absorb(out, solve_many_sums(work, *rich, gamma, rng, ms), instance);
    } else {
        // (5) Every part is sum-poor: exact join of the two halves.
        absorb(out, small_bin_join(work, epsilon, remaining(budget, out.cost)), instance);
    }
    return out;
}

SolverOutcome solve_large_bin(const Instance& instance)
{
    const std::size_t n = instance.size();
    if (n == 0) return trivial_outcome(instance, "large_bin/trivial");
    detail::require_mask_universe(n, "solve_large_bin");
    const std::size_t h = n / 2;
    Subset first(n), second(n);
    for (std::size_t i = 0; i < h; ++i) {
        first.insert(i);
        second.insert(h + i);
    }
    const std::uint64_t d1 = distinct_sums(instance, first);
    const std::uint64_t d2 = distinct_sums(instance, second);
    const bool pick_first = d1 <= d2;
    const Subset& block = pick_first ? first : second;
    const std::uint64_t d = pick_first ? d1 : d2;
    const double gamma =
        block.empty() ? 0.0 : std::clamp(std::log2(static_cast<double>(d)) / static_cast<double>(block.size()), 0.0, 1.0);

    SolverOutcome out;
    out.branch = "large_bin/";
    out.cost.sums_enumerated += d1 + d2;
    absorb(out, solve_few_sums(instance, block, gamma), instance);
    return out;
}

std::uint64_t default_auto_budget(std::size_t n, double budget_constant)
{
    const double nn = static_cast<double>(n);
    return saturating(budget_constant * std::exp2(0.49991 * nn) * nn * nn);
}

BigInt auto_reduction_bound(std::size_t n)
{
    const auto bits = static_cast<unsigned>(std::ceil(0.997 * static_cast<double>(n) - 1e-9));
    return BigInt(10) << bits;
}

SolverOutcome solve_auto(const Instance& instance, RandomSource& rng, std::optional<std::uint64_t> budget)
{
    AutoOptions options;
    options.step_budget = budget;
    return solve_auto(instance, rng, options);
}

SolverOutcome solve_auto(const Instance& instance, RandomSource& rng, const AutoOptions& options)
{
    const std::size_t n = instance.size();
    if (n == 0) return trivial_outcome(instance, "auto/trivial");

    SolverOutcome out;
    out.branch = "auto/";

    // Step 1: the small-bin driver under a step budget.
    SmallBinOptions sb;
    sb.epsilon = options.epsilon;
    sb.step_budget = options.step_budget.value_or(default_auto_budget(n, options.budget_constant));
    if (*sb.step_budget > 0) {
        SolverOutcome first = solve_small_bin(instance, rng, sb);
        const bool exhausted = first.budget_exhausted;
        out.branch += "step1/";
        absorb(out, std::move(first), instance);
        if (out.found() || !exhausted) return out;
    }
    out.budget_exhausted = false;

    // Step 2: hash to density about 1/0.997 and solve the dense instance.
    out.branch = "auto/step2/";
    if (instance.target() < 2 * BigInt(n)) {
        absorb(out, bellman_dp(instance), instance);
        return out;
    }
    const BigInt bound = auto_reduction_bound(n);
    for (std::size_t attempt = 0; attempt < n && !out.found(); ++attempt) {
        ReductionRecord record;
        try {
            record = reduce_bitlength(instance, bound, rng);
        } catch (const UseDynamicProgramming&) {
            absorb(out, bellman_dp(instance), instance);
            return out;
        } catch (const Error&) {
            continue;  // hashing did not settle below the bound this time
        }
        SolverOutcome dense = meet_in_middle(record.reduced);
        out.cost += dense.cost;
        // A hashed instance can have solutions the original lacks.
        if (dense.witness && instance.is_solution(*dense.witness)) accept_witness(out, instance, *dense.witness);
    }
    out.branch += "mim";
    return out;
}

const char* regime_name(Regime regime)
{
    switch (regime) {
    case Regime::SmallBin:
        return "small_bin";
    case Regime::LargeBin:
        return "large_bin";
    case Regime::Gap:
        return "gap";
    }
    return "gap";
}

bool at_least_power(std::uint64_t x, std::int64_t num, std::int64_t den, std::size_t n)
{
    if (num < 0 || den <= 0) throw DomainError("at_least_power: exponent must be a non-negative fraction");
    if (x == 0) return false;
    const std::int64_t g = std::gcd(num, den);
    num /= g;
    den /= g;
    // x >= 2^(num n / den)  <=>  x^den >= 2^(num n)
    const BigInt lhs = boost::multiprecision::pow(BigInt(x), static_cast<unsigned>(den));
    return lhs >= (BigInt(1) << static_cast<unsigned>(num * static_cast<std::int64_t>(n)));
}

bool at_most_power(std::uint64_t x, std::int64_t num, std::int64_t den, std::size_t n)
{
    if (num < 0 || den <= 0) throw DomainError("at_most_power: exponent must be a non-negative fraction");
    if (x == 0) return true;
    const std::int64_t g = std::gcd(num, den);
    num /= g;
    den /= g;
    const BigInt lhs = boost::multiprecision::pow(BigInt(x), static_cast<unsigned>(den));
    return lhs <= (BigInt(1) << static_cast<unsigned>(num * static_cast<std::int64_t>(n)));
}

Classification classify(const Instance& instance, std::size_t oracle_limit, double epsilon)
{
    check_epsilon(epsilon);
    const std::size_t n = instance.size();
    if (n > oracle_limit || n > kEnumerationLimit) {
        throw CapacityError("classify: instance larger than the oracle limit");
    }
    Classification c;
    c.n = n;
    c.epsilon = epsilon;
    c.beta = max_bin(instance);
    c.distinct_sums = distinct_sums(instance);
    if (instance.target() >= 2) c.density = density(instance);
    c.small_bin = std::log2(static_cast<double>(c.beta)) <= (0.5 - epsilon) * static_cast<double>(n) + kEpsilonSlack;
    c.large_bin = at_least_power(c.beta, 661, 1000, n);
    c.many_sums = at_least_power(c.distinct_sums, 997, 1000, n);
    c.sums_vs_bin_held = !c.many_sums || at_most_power(c.beta, 4996, 10000, n);
    c.regime = c.small_bin ? Regime::SmallBin : (c.large_bin ? Regime::LargeBin : Regime::Gap);
    return c;
}

SolverOutcome solve_classified(const Instance& instance, RandomSource& rng, std::size_t oracle_limit, double epsilon)
{
    const Classification c = classify(instance, oracle_limit, epsilon);
    SolverOutcome out;
    out.branch = std::string("classified:") + regime_name(c.regime) + "/";
    // Gap instances go to the exact large-bin driver.
    SolverOutcome inner = c.regime == Regime::SmallBin ? solve_small_bin(instance, epsilon, rng)
                                                       : solve_large_bin(instance);
    absorb(out, std::move(inner), instance);
    return out;
}

SmallBinExponents small_bin_exponents(double epsilon)
{
    const double mu = 1.5 * epsilon;
    const double gamma = 1.0 - epsilon / 2.0;
    SmallBinExponents e;
    e.many_sums_term = 0.5 + 0.8113 * mu - gamma * mu;
    e.bin_term = 0.5 - epsilon + (1.5 - gamma) * mu;
    e.join_term = gamma / 2.0;
    e.headline = 0.5 - epsilon / 4.0 + 0.75 * epsilon * epsilon;
    return e;
}

Rational small_bin_headline_exponent(Rational epsilon)
{
    return Rational(1, 2) - epsilon / Rational(4) + Rational(3, 4) * epsilon * epsilon;
}

}  // namespace sslab
