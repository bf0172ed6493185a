#include "sslab/sslab.h"

#include <cstring>
#include <new>
#include <string>
#include <string_view>

#include "sslab/classic.hpp"
#include "sslab/combinatorics.hpp"
#include "sslab/dispatch.hpp"
#include "sslab/hashing.hpp"
#include "sslab/oracle.hpp"
#include "sslab/structured.hpp"

struct sslab_instance {
    sslab::Instance value;
};

struct sslab_rng {
    sslab::RandomSource value;
};

struct sslab_outcome {
    sslab::SolverOutcome value;
    std::string witness_hex;
};

struct sslab_reduction {
    sslab::ReductionRecord value;
};

namespace {

thread_local std::string g_last_error;

sslab_status fail(sslab_status status, const std::string& message)
{
    g_last_error = message;
    return status;
}

template <class F>
sslab_status guarded(F&& f)
{
    try {
        g_last_error.clear();
        return f();
    } catch (const sslab::ParseError& e) {
        return fail(SSLAB_PARSE, e.what());
    } catch (const sslab::IoError& e) {
        return fail(SSLAB_IO, e.what());
    } catch (const sslab::UseDynamicProgramming& e) {
        return fail(SSLAB_USE_DP, e.what());
    } catch (const sslab::CapacityError& e) {
        return fail(SSLAB_CAPACITY, e.what());
    } catch (const sslab::ContractError& e) {
        return fail(SSLAB_CONTRACT, e.what());
    } catch (const sslab::DomainError& e) {
        return fail(SSLAB_DOMAIN, e.what());
    } catch (const std::bad_alloc&) {
        return fail(SSLAB_CAPACITY, "out of memory");
    } catch (const std::exception& e) {
        return fail(SSLAB_INTERNAL, e.what());
    } catch (...) {
        return fail(SSLAB_INTERNAL, "unknown error");
    }
}

char* copy_string(const std::string& s)
{
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

sslab::BigInt parse_big(const char* s, const char* what)
{
    if (s == nullptr) throw sslab::DomainError(std::string(what) + " is null");
    const std::string_view v(s);
    if (v.empty()) throw sslab::ParseError(std::string("empty ") + what);
    for (char c : v) {
        if (c < '0' || c > '9') throw sslab::ParseError(std::string("invalid ") + what + " '" + s + "'");
    }
    return sslab::BigInt(std::string(v));
}

#define SSLAB_REQUIRE(cond)                                                   \
    do {                                                                      \
        if (!(cond)) return fail(SSLAB_INVALID_ARGUMENT, "null argument: " #cond); \
    } while (0)

sslab::Subset default_block(std::size_t n)
{
    sslab::Subset block(n);
    for (std::size_t i = 0; i < n / 2; ++i) block.insert(i);
    return block;
}

double measured_gamma(const sslab::Instance& instance, const sslab::Subset& block)
{
    if (block.empty()) return 0.0;
    const double sums = static_cast<double>(sslab::distinct_sums(instance, block));
    return std::min(1.0, std::log2(sums) / static_cast<double>(block.size()));
}

}  // namespace

extern "C" {

const char* sslab_version(void) { return "0.1.0"; }

const char* sslab_status_name(sslab_status status)
{
    switch (status) {
    case SSLAB_OK:
        return "ok";
    case SSLAB_INVALID_ARGUMENT:
        return "invalid_argument";
    case SSLAB_DOMAIN:
        return "domain_error";
    case SSLAB_CAPACITY:
        return "capacity_error";
    case SSLAB_CONTRACT:
        return "contract_error";
    case SSLAB_PARSE:
        return "parse_error";
    case SSLAB_USE_DP:
        return "use_dynamic_programming";
    case SSLAB_IO:
        return "io_error";
    case SSLAB_INTERNAL:
        return "internal_error";
    }
    return "unknown";
}

const char* sslab_last_error(void) { return g_last_error.c_str(); }

void sslab_string_free(char* s) { delete[] s; }

// ------------------------------------------------------------ instances

sslab_status sslab_instance_from_u64(const uint64_t* weights, size_t n, uint64_t target, sslab_instance** out)
{
    SSLAB_REQUIRE(out);
    SSLAB_REQUIRE(weights || n == 0);
    return guarded([&] {
        std::vector<sslab::BigInt> w(weights, weights + n);
        *out = new sslab_instance{sslab::Instance(std::move(w), sslab::BigInt(target))};
        return SSLAB_OK;
    });
}

sslab_status sslab_instance_from_decimal(const char* const* weights, size_t n, const char* target,
                                         sslab_instance** out)
{
    SSLAB_REQUIRE(out);
    SSLAB_REQUIRE(weights || n == 0);
    return guarded([&] {
        std::vector<sslab::BigInt> w;
        for (size_t i = 0; i < n; ++i) w.push_back(parse_big(weights[i], "weight"));
        *out = new sslab_instance{sslab::Instance(std::move(w), parse_big(target, "target"))};
        return SSLAB_OK;
    });
}

sslab_status sslab_instance_parse(const char* text, sslab_instance** out)
{
    SSLAB_REQUIRE(text && out);
    return guarded([&] {
        *out = new sslab_instance{sslab::parse_instance(text)};
        return SSLAB_OK;
    });
}

sslab_status sslab_instance_read(const char* path, sslab_instance** out)
{
    SSLAB_REQUIRE(path && out);
    return guarded([&] {
        *out = new sslab_instance{sslab::read_instance_file(path)};
        return SSLAB_OK;
    });
}

sslab_status sslab_instance_write(const sslab_instance* instance, const char* path)
{
    SSLAB_REQUIRE(instance && path);
    return guarded([&] {
        sslab::write_instance_file(instance->value, path);
        return SSLAB_OK;
    });
}

sslab_status sslab_instance_format(const sslab_instance* instance, char** text)
{
    SSLAB_REQUIRE(instance && text);
    return guarded([&] {
        *text = copy_string(sslab::format_instance(instance->value));
        return SSLAB_OK;
    });
}

void sslab_instance_free(sslab_instance* instance) { delete instance; }

size_t sslab_instance_size(const sslab_instance* instance) { return instance ? instance->value.size() : 0; }

sslab_status sslab_instance_weight(const sslab_instance* instance, size_t i, char** decimal)
{
    SSLAB_REQUIRE(instance && decimal);
    if (i >= instance->value.size()) return fail(SSLAB_INVALID_ARGUMENT, "item index out of range");
    return guarded([&] {
        *decimal = copy_string(instance->value.weight(i).str());
        return SSLAB_OK;
    });
}

sslab_status sslab_instance_target(const sslab_instance* instance, char** decimal)
{
    SSLAB_REQUIRE(instance && decimal);
    return guarded([&] {
        *decimal = copy_string(instance->value.target().str());
        return SSLAB_OK;
    });
}

sslab_status sslab_instance_total(const sslab_instance* instance, char** decimal)
{
    SSLAB_REQUIRE(instance && decimal);
    return guarded([&] {
        *decimal = copy_string(instance->value.total().str());
        return SSLAB_OK;
    });
}

sslab_status sslab_instance_density(const sslab_instance* instance, double* density)
{
    SSLAB_REQUIRE(instance && density);
    return guarded([&] {
        *density = sslab::density(instance->value);
        return SSLAB_OK;
    });
}

sslab_status sslab_instance_check_witness(const sslab_instance* instance, const char* hex, int* is_solution)
{
    SSLAB_REQUIRE(instance && hex && is_solution);
    return guarded([&] {
        const auto subset = sslab::Subset::from_hex(hex, instance->value.size());
        *is_solution = instance->value.is_solution(subset) ? 1 : 0;
        return SSLAB_OK;
    });
}

// ----------------------------------------------------------- randomness

sslab_status sslab_rng_new(uint64_t seed, sslab_rng** out)
{
    SSLAB_REQUIRE(out);
    return guarded([&] {
        *out = new sslab_rng{sslab::RandomSource(seed)};
        return SSLAB_OK;
    });
}

void sslab_rng_free(sslab_rng* rng) { delete rng; }

uint64_t sslab_rng_next(sslab_rng* rng) { return rng ? rng->value.next_u64() : 0; }

// ----------------------------------------------------------- generators

void sslab_gen_params_init(sslab_gen_params* params)
{
    if (!params) return;
    *params = sslab_gen_params{};
    params->kind = SSLAB_GEN_DENSITY;
    params->density = 1.0;
    params->bits = 16;
    params->value = 1;
}

sslab_status sslab_generate(const sslab_gen_params* params, sslab_rng* rng, sslab_instance** out,
                            char** planted_hex)
{
    SSLAB_REQUIRE(params && out);
    if (planted_hex) *planted_hex = nullptr;
    return guarded([&]() -> sslab_status {
        const std::size_t n = params->n;
        switch (params->kind) {
        case SSLAB_GEN_DENSITY:
            if (!rng) return fail(SSLAB_INVALID_ARGUMENT, "density generator needs a random source");
            *out = new sslab_instance{sslab::gen_random_density(n, params->density, rng->value)};
            return SSLAB_OK;
        case SSLAB_GEN_GEOMETRIC_PAIRS:
            *out = new sslab_instance{sslab::gen_geometric_pairs(n)};
            return SSLAB_OK;
        case SSLAB_GEN_PLANTED: {
            if (!rng) return fail(SSLAB_INVALID_ARGUMENT, "planted generator needs a random source");
            auto planted = sslab::gen_planted(n, params->bits, rng->value);
            if (planted_hex) *planted_hex = copy_string(planted.solution.to_hex());
            *out = new sslab_instance{std::move(planted.instance)};
            return SSLAB_OK;
        }
        case SSLAB_GEN_ALL_EQUAL: {
            const sslab::BigInt t = params->target ? parse_big(params->target, "target")
                                                   : sslab::BigInt(params->value) * (n / 2);
            *out = new sslab_instance{sslab::gen_all_equal(n, params->value, t)};
            return SSLAB_OK;
        }
        case SSLAB_GEN_SUPER_INCREASING: {
            const sslab::BigInt t =
                params->target ? parse_big(params->target, "target") : (sslab::BigInt(1) << (n / 2)) - 1;
            *out = new sslab_instance{sslab::gen_super_increasing(n, t)};
            return SSLAB_OK;
        }
        }
        return fail(SSLAB_INVALID_ARGUMENT, "unknown generator kind");
    });
}

// ------------------------------------------------------------- analysis

sslab_status sslab_analyze(const sslab_instance* instance, size_t oracle_limit, sslab_analysis* out)
{
    SSLAB_REQUIRE(instance && out);
    return guarded([&] {
        const auto& inst = instance->value;
        if (inst.size() > oracle_limit) throw sslab::CapacityError("analyze: instance larger than the oracle limit");
        sslab_analysis a{};
        a.n = inst.size();
        a.max_bin = sslab::max_bin(inst);
        a.distinct_sums = sslab::distinct_sums(inst);
        a.l2_norm_sq = sslab::bin_l2(inst, sslab::Subset::full(inst.size()));
        if (inst.target() >= 2) {
            a.has_density = 1;
            a.density = sslab::density(inst);
        }
        *out = a;
        return SSLAB_OK;
    });
}

sslab_status sslab_classify(const sslab_instance* instance, size_t oracle_limit, double epsilon,
                            sslab_classification* out)
{
    SSLAB_REQUIRE(instance && out);
    return guarded([&] {
        const auto c = sslab::classify(instance->value, oracle_limit, epsilon);
        sslab_classification r{};
        r.n = c.n;
        r.beta = c.beta;
        r.distinct_sums = c.distinct_sums;
        r.has_density = c.density.has_value() ? 1 : 0;
        r.density = c.density.value_or(0.0);
        r.epsilon = c.epsilon;
        r.small_bin = c.small_bin;
        r.large_bin = c.large_bin;
        r.many_sums = c.many_sums;
        r.sums_vs_bin_held = c.sums_vs_bin_held;
        r.regime = static_cast<sslab_regime>(c.regime);
        *out = r;
        return SSLAB_OK;
    });
}

const char* sslab_regime_name(sslab_regime regime)
{
    return sslab::regime_name(static_cast<sslab::Regime>(regime));
}

// -------------------------------------------------------------- solving

namespace {

constexpr const char* kAlgorithmNames[] = {"brute",   "dp",       "mim",      "ss",   "sampler",   "repr",
                                           "fewsums", "smallbin", "largebin", "auto", "classified"};

}  // namespace

const char* sslab_algorithm_name(sslab_algorithm alg)
{
    const auto i = static_cast<std::size_t>(alg);
    return i < std::size(kAlgorithmNames) ? kAlgorithmNames[i] : "unknown";
}

sslab_status sslab_algorithm_from_name(const char* name, sslab_algorithm* alg)
{
    SSLAB_REQUIRE(name && alg);
    for (std::size_t i = 0; i < std::size(kAlgorithmNames); ++i) {
        if (std::string_view(name) == kAlgorithmNames[i]) {
            *alg = static_cast<sslab_algorithm>(i);
            return SSLAB_OK;
        }
    }
    return fail(SSLAB_INVALID_ARGUMENT, std::string("unknown algorithm '") + name + "'");
}

void sslab_solve_options_init(sslab_solve_options* options)
{
    if (!options) return;
    *options = sslab_solve_options{};
    options->alg = SSLAB_ALG_AUTO;
    options->sigma = 0.5;
    options->budget_constant = 4.0;
    options->oracle_limit = sslab::kEnumerationLimit;
}

sslab_status sslab_solve(const sslab_instance* instance, const sslab_solve_options* options, sslab_rng* rng,
                         sslab_outcome** out)
{
    SSLAB_REQUIRE(instance && options && out);
    return guarded([&]() -> sslab_status {
        const auto& inst = instance->value;
        const std::size_t n = inst.size();
        const bool random = options->alg == SSLAB_ALG_SAMPLER || options->alg == SSLAB_ALG_REPR ||
                            options->alg == SSLAB_ALG_SMALLBIN || options->alg == SSLAB_ALG_AUTO ||
                            options->alg == SSLAB_ALG_CLASSIFIED;
        if (random && !rng) return fail(SSLAB_INVALID_ARGUMENT, "randomized solver needs a random source");
        std::optional<std::uint64_t> budget;
        if (options->has_budget) budget = options->budget;

        auto block = [&] {
            if (options->block == nullptr && options->block_len == 0) return default_block(n);
            std::vector<std::size_t> idx(options->block, options->block + options->block_len);
            for (auto i : idx) {
                if (i >= n) throw sslab::ContractError("block index out of range");
            }
            return sslab::Subset::from_indices(idx, n);
        };

        sslab::SolverOutcome result;
        switch (options->alg) {
        case SSLAB_ALG_BRUTE:
            result = sslab::brute_solve(inst);
            break;
        case SSLAB_ALG_DP:
            result = sslab::bellman_dp(inst);
            break;
        case SSLAB_ALG_MIM:
            result = sslab::meet_in_middle(inst);
            break;
        case SSLAB_ALG_SS:
            result = sslab::schroeppel_shamir(inst);
            break;
        case SSLAB_ALG_SAMPLER: {
            // Default: 4 n 2^(n/2) samples.
            const std::uint64_t samples =
                budget.value_or(static_cast<std::uint64_t>(4.0 * static_cast<double>(n) *
                                                           std::exp2(static_cast<double>(n) / 2.0)));
            result = sslab::modular_sampler(inst, options->sigma, rng->value, samples);
            break;
        }
        case SSLAB_ALG_REPR: {
            const auto m = block();
            const double gamma = options->has_gamma ? options->gamma : measured_gamma(inst, m);
            sslab::ManySumsOptions ms;
            ms.step_budget = budget;
            ms.repetitions = options->repetitions > 0 ? options->repetitions : 1;
            result = sslab::solve_many_sums(inst, m, gamma, rng->value, ms);
            break;
        }
        case SSLAB_ALG_FEWSUMS: {
            const auto m = block();
            const double gamma = options->has_gamma ? options->gamma : measured_gamma(inst, m);
            result = sslab::solve_few_sums(inst, m, gamma);
            break;
        }
        case SSLAB_ALG_SMALLBIN: {
            sslab::SmallBinOptions sb;
            if (options->has_epsilon) sb.epsilon = options->epsilon;
            sb.step_budget = budget;
            sb.repetitions = options->repetitions;
            result = sslab::solve_small_bin(inst, rng->value, sb);
            break;
        }
        case SSLAB_ALG_LARGEBIN:
            result = sslab::solve_large_bin(inst);
            break;
        case SSLAB_ALG_AUTO: {
            sslab::AutoOptions ao;
            if (options->has_epsilon) ao.epsilon = options->epsilon;
            ao.step_budget = budget;
            if (options->budget_constant > 0) ao.budget_constant = options->budget_constant;
            result = sslab::solve_auto(inst, rng->value, ao);
            break;
        }
        case SSLAB_ALG_CLASSIFIED:
            result = sslab::solve_classified(inst, rng->value, options->oracle_limit,
                                             options->has_epsilon ? options->epsilon : 1.0 / 6.0);
            break;
        default:
            return fail(SSLAB_INVALID_ARGUMENT, "unknown algorithm");
        }
        // The library never reports a witness it has not checked; check again
        // at the boundary.
        if (result.witness && !inst.is_solution(*result.witness)) {
            return fail(SSLAB_INTERNAL, "solver returned a witness that does not verify");
        }
        auto* o = new sslab_outcome{std::move(result), {}};
        if (o->value.witness) o->witness_hex = o->value.witness->to_hex();
        *out = o;
        return SSLAB_OK;
    });
}

int sslab_outcome_found(const sslab_outcome* outcome) { return outcome && outcome->value.found() ? 1 : 0; }

int sslab_outcome_verified(const sslab_outcome* outcome) { return outcome && outcome->value.verified ? 1 : 0; }

int sslab_outcome_budget_exhausted(const sslab_outcome* outcome)
{
    return outcome && outcome->value.budget_exhausted ? 1 : 0;
}

sslab_status sslab_outcome_witness_hex(const sslab_outcome* outcome, char** hex)
{
    SSLAB_REQUIRE(outcome && hex);
    if (!outcome->value.witness) return fail(SSLAB_DOMAIN, "no witness");
    return guarded([&] {
        *hex = copy_string(outcome->witness_hex);
        return SSLAB_OK;
    });
}

const char* sslab_outcome_branch(const sslab_outcome* outcome) { return outcome ? outcome->value.branch.c_str() : ""; }

void sslab_outcome_counters(const sslab_outcome* outcome, sslab_counters* counters)
{
    if (!outcome || !counters) return;
    const auto& c = outcome->value.cost;
    counters->sums_enumerated = c.sums_enumerated;
    counters->pairs_checked = c.pairs_checked;
    counters->dict_lookups = c.dict_lookups;
    counters->samples_drawn = c.samples_drawn;
    counters->peak_retained = c.peak_retained;
    counters->list_entries = c.list_entries;
    counters->steps = c.steps();
}

size_t sslab_outcome_iteration_count(const sslab_outcome* outcome)
{
    return outcome ? outcome->value.iterations.size() : 0;
}

sslab_status sslab_outcome_iteration(const sslab_outcome* outcome, size_t i, sslab_iteration* out)
{
    SSLAB_REQUIRE(outcome && out);
    if (i >= outcome->value.iterations.size()) return fail(SSLAB_INVALID_ARGUMENT, "iteration index out of range");
    const auto& r = outcome->value.iterations[i];
    out->complementary = r.complementary;
    out->s = r.s;
    out->s1 = r.s1;
    out->s2 = r.s2;
    out->prime = r.prime;
    out->residue = r.residue;
    out->left_size = r.left_size;
    out->right_size = r.right_size;
    out->pairs_scanned = r.pairs_scanned;
    out->skipped = r.skipped;
    return SSLAB_OK;
}

void sslab_outcome_free(sslab_outcome* outcome) { delete outcome; }

// ------------------------------------------------------------ reduction

sslab_status sslab_reduce(const sslab_instance* instance, const char* bound_decimal, sslab_rng* rng,
                          sslab_reduction** out)
{
    SSLAB_REQUIRE(instance && bound_decimal && rng && out);
    return guarded([&] {
        auto record = sslab::reduce_bitlength(instance->value, parse_big(bound_decimal, "bound"), rng->value);
        *out = new sslab_reduction{std::move(record)};
        return SSLAB_OK;
    });
}

sslab_status sslab_reduction_instance(const sslab_reduction* reduction, sslab_instance** out)
{
    SSLAB_REQUIRE(reduction && out);
    return guarded([&] {
        *out = new sslab_instance{reduction->value.reduced};
        return SSLAB_OK;
    });
}

sslab_status sslab_reduction_prime(const sslab_reduction* reduction, char** decimal)
{
    SSLAB_REQUIRE(reduction && decimal);
    return guarded([&] {
        *decimal = copy_string(reduction->value.prime.str());
        return SSLAB_OK;
    });
}

uint64_t sslab_reduction_shift(const sslab_reduction* reduction) { return reduction ? reduction->value.shift : 0; }

unsigned sslab_reduction_rounds(const sslab_reduction* reduction) { return reduction ? reduction->value.rounds : 0; }

void sslab_reduction_free(sslab_reduction* reduction) { delete reduction; }

sslab_status sslab_reduction_check(const sslab_instance* original, const sslab_reduction* reduction,
                                   size_t oracle_limit, sslab_reduction_report* out)
{
    SSLAB_REQUIRE(original && reduction && out);
    return guarded([&] {
        const auto rep = sslab::check_reduction_properties(original->value, reduction->value, oracle_limit);
        sslab_reduction_report r{};
        r.solutions_preserved = rep.solutions_preserved;
        r.sums_preserved = rep.sums_preserved;
        r.bins_preserved = rep.bins_preserved ? (*rep.bins_preserved ? 1 : 0) : -1;
        r.bins_split_ok = rep.bins_split_ok;
        r.distinct_before = rep.distinct_before;
        r.distinct_after = rep.distinct_after;
        r.beta_before = rep.beta_before;
        r.beta_after = rep.beta_after;
        r.false_solutions = rep.false_solutions;
        r.lost_solutions = rep.lost_solutions;
        *out = r;
        return SSLAB_OK;
    });
}

// -------------------------------------------------------------- checks

namespace {

constexpr const char* kCheckNames[] = {"udcp", "l2identity", "cauchyschwarz", "sumsvsbin"};

}  // namespace

const char* sslab_check_name(sslab_check check)
{
    const auto i = static_cast<std::size_t>(check);
    return i < std::size(kCheckNames) ? kCheckNames[i] : "unknown";
}

sslab_status sslab_check_from_name(const char* name, sslab_check* check)
{
    SSLAB_REQUIRE(name && check);
    for (std::size_t i = 0; i < std::size(kCheckNames); ++i) {
        if (std::string_view(name) == kCheckNames[i]) {
            *check = static_cast<sslab_check>(i);
            return SSLAB_OK;
        }
    }
    return fail(SSLAB_INVALID_ARGUMENT, std::string("unknown check '") + name + "'");
}

sslab_status sslab_verify(const sslab_instance* instance, sslab_check check, size_t oracle_limit, int* holds)
{
    SSLAB_REQUIRE(instance && holds);
    return guarded([&]() -> sslab_status {
        const auto& inst = instance->value;
        if (inst.size() > oracle_limit) throw sslab::CapacityError("verify: instance larger than the oracle limit");
        bool ok = false;
        switch (check) {
        case SSLAB_CHECK_UDCP: {
            const auto pair = sslab::udcp_from_instance(inst, oracle_limit);
            ok = pair.a().size() == sslab::distinct_sums(inst) && pair.b().size() == sslab::max_bin(inst) &&
                 sslab::check_udcp(pair);
            break;
        }
        case SSLAB_CHECK_L2IDENTITY:
            ok = sslab::l2_identity_holds(inst);
            break;
        case SSLAB_CHECK_CAUCHYSCHWARZ:
            ok = sslab::cauchy_schwarz_holds(inst, inst.size() <= 20);
            break;
        case SSLAB_CHECK_SUMSVSBIN:
            ok = sslab::sums_vs_bin_holds(inst);
            break;
        default:
            return fail(SSLAB_INVALID_ARGUMENT, "unknown check");
        }
        *holds = ok ? 1 : 0;
        return SSLAB_OK;
    });
}

}  // extern "C"
