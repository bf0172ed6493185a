#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "sslab/sslab.h"

namespace sslab::cli {

namespace {

using json = nlohmann::ordered_json;

struct Failure {
    int code;
    std::string message;
};

struct InstanceFree {
    void operator()(sslab_instance* p) const { sslab_instance_free(p); }
};
struct RngFree {
    void operator()(sslab_rng* p) const { sslab_rng_free(p); }
};
struct OutcomeFree {
    void operator()(sslab_outcome* p) const { sslab_outcome_free(p); }
};
struct ReductionFree {
    void operator()(sslab_reduction* p) const { sslab_reduction_free(p); }
};
using InstancePtr = std::unique_ptr<sslab_instance, InstanceFree>;
using RngPtr = std::unique_ptr<sslab_rng, RngFree>;
using OutcomePtr = std::unique_ptr<sslab_outcome, OutcomeFree>;
using ReductionPtr = std::unique_ptr<sslab_reduction, ReductionFree>;

void check(sslab_status status)
{
    if (status == SSLAB_OK) return;
    throw Failure{kExitError, std::string(sslab_status_name(status)) + ": " + sslab_last_error()};
}

std::string take(char* s)
{
    std::string out = s ? s : "";
    sslab_string_free(s);
    return out;
}

RngPtr make_rng(std::uint64_t seed)
{
    sslab_rng* rng = nullptr;
    check(sslab_rng_new(seed, &rng));
    return RngPtr(rng);
}

InstancePtr load(const std::string& path)
{
    sslab_instance* inst = nullptr;
    if (path == "-") {
        const std::string text{std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
        check(sslab_instance_parse(text.c_str(), &inst));
    } else {
        check(sslab_instance_read(path.c_str(), &inst));
    }
    return InstancePtr(inst);
}

json instance_json(const sslab_instance* inst)
{
    json weights = json::array();
    char* s = nullptr;
    for (std::size_t i = 0; i < sslab_instance_size(inst); ++i) {
        check(sslab_instance_weight(inst, i, &s));
        weights.push_back(take(s));
    }
    check(sslab_instance_target(inst, &s));
    json j;
    j["n"] = sslab_instance_size(inst);
    j["weights"] = std::move(weights);
    j["target"] = take(s);
    return j;
}

json density_json(const sslab_instance* inst)
{
    double d = 0;
    if (sslab_instance_density(inst, &d) != SSLAB_OK) return nullptr;
    return d;
}

json counters_json(const sslab_counters& c)
{
    json j;
    j["sums_enumerated"] = c.sums_enumerated;
    j["pairs_checked"] = c.pairs_checked;
    j["dict_lookups"] = c.dict_lookups;
    j["samples_drawn"] = c.samples_drawn;
    j["peak_retained"] = c.peak_retained;
    j["list_entries"] = c.list_entries;
    j["steps"] = c.steps;
    return j;
}

std::vector<std::string> split_list(const std::string& s)
{
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

// Options shared by solve and bench.
struct SolveFlags {
    std::string alg = "auto";
    std::uint64_t seed = 0;
    std::optional<std::uint64_t> budget;
    std::optional<double> epsilon;
    std::optional<double> gamma;
    std::string block = "auto";
    double sigma = 0.5;
    std::size_t repetitions = 0;
    double budget_constant = 4.0;
    std::size_t oracle_limit = 26;

    void add_to(CLI::App* app)
    {
        app->add_option("--alg", alg,
                        "brute|dp|mim|ss|sampler|repr|fewsums|smallbin|largebin|auto|classified");
        app->add_option("--seed", seed, "seed for every random choice");
        app->add_option("--budget", budget, "step budget (sampler: samples)");
        app->add_option("--epsilon", epsilon, "bin exponent slack for smallbin, auto, classified");
        app->add_option("--gamma", gamma, "sum-richness exponent of M (repr, fewsums)");
        app->add_option("--M", block, "block M: comma-separated 1-based items, or auto");
        app->add_option("--sigma", sigma, "sampler modulus exponent");
        app->add_option("--repetitions", repetitions, "passes of the representation solver");
        app->add_option("--budget-constant", budget_constant, "C in the auto step-1 budget");
        app->add_option("--oracle-limit", oracle_limit, "largest n for exhaustive enumeration");
    }
};

// Fills `options` (and `block_storage`, which it points into) for instance size n.
void build_options(const SolveFlags& f, std::size_t n, sslab_solve_options& options,
                   std::vector<std::size_t>& block_storage)
{
    sslab_solve_options_init(&options);
    sslab_algorithm alg;
    if (sslab_algorithm_from_name(f.alg.c_str(), &alg) != SSLAB_OK) {
        throw Failure{kExitUsage, "unknown algorithm '" + f.alg + "'"};
    }
    options.alg = alg;
    if (f.budget) {
        options.budget = *f.budget;
        options.has_budget = 1;
    }
    if (f.epsilon) {
        options.epsilon = *f.epsilon;
        options.has_epsilon = 1;
    }
    if (f.gamma) {
        options.gamma = *f.gamma;
        options.has_gamma = 1;
    }
    options.sigma = f.sigma;
    options.repetitions = f.repetitions;
    options.budget_constant = f.budget_constant;
    options.oracle_limit = f.oracle_limit;
    block_storage.clear();
    if (f.block != "auto") {
        for (const auto& item : split_list(f.block)) {
            std::size_t pos = 0;
            unsigned long long v = 0;
            try {
                v = std::stoull(item, &pos);
            } catch (const std::exception&) {
                pos = 0;
            }
            if (pos != item.size() || v == 0) throw Failure{kExitUsage, "bad --M item '" + item + "'"};
            if (v > n) throw Failure{kExitError, "--M item " + item + " exceeds n = " + std::to_string(n)};
            block_storage.push_back(static_cast<std::size_t>(v - 1));
        }
        if (block_storage.empty()) throw Failure{kExitUsage, "--M needs at least one item"};
        options.block = block_storage.data();
        options.block_len = block_storage.size();
    }
}

OutcomePtr solve_once(const sslab_instance* inst, const SolveFlags& f, sslab_rng* rng)
{
    sslab_solve_options options;
    std::vector<std::size_t> block;
    build_options(f, sslab_instance_size(inst), options, block);
    sslab_outcome* out = nullptr;
    check(sslab_solve(inst, &options, rng, &out));
    OutcomePtr outcome(out);
    if (sslab_outcome_found(out)) {
        char* hex = nullptr;
        check(sslab_outcome_witness_hex(out, &hex));
        const std::string h = take(hex);
        int ok = 0;
        check(sslab_instance_check_witness(inst, h.c_str(), &ok));
        if (!ok) throw Failure{kExitError, "internal: witness " + h + " fails re-verification"};
    }
    return outcome;
}

// ------------------------------------------------------------- commands

int cmd_gen(const std::string& kind, std::size_t n, double d, unsigned bits, std::uint64_t value,
            const std::optional<std::string>& target, std::uint64_t seed, const std::optional<std::string>& path,
            std::ostream& out, std::ostream& err)
{
    sslab_gen_params params;
    sslab_gen_params_init(&params);
    params.n = n;
    params.density = d;
    params.bits = bits == 0 ? static_cast<unsigned>(n) : bits;
    params.value = value;
    if (target) params.target = target->c_str();
    if (kind == "density") {
        params.kind = SSLAB_GEN_DENSITY;
    } else if (kind == "geometric") {
        params.kind = SSLAB_GEN_GEOMETRIC_PAIRS;
    } else if (kind == "planted") {
        params.kind = SSLAB_GEN_PLANTED;
    } else if (kind == "equal") {
        params.kind = SSLAB_GEN_ALL_EQUAL;
    } else if (kind == "superinc") {
        params.kind = SSLAB_GEN_SUPER_INCREASING;
    } else {
        throw Failure{kExitUsage, "unknown --kind '" + kind + "'"};
    }
    auto rng = make_rng(seed);
    sslab_instance* raw = nullptr;
    char* planted = nullptr;
    check(sslab_generate(&params, rng.get(), &raw, &planted));
    InstancePtr inst(raw);

    json j;
    j["command"] = "gen";
    j["kind"] = kind;
    j["seed"] = seed;
    j["n"] = n;
    j["density"] = density_json(inst.get());
    if (planted) j["planted_mask_hex"] = take(planted);
    if (path) {
        check(sslab_instance_write(inst.get(), path->c_str()));
        j["out"] = *path;
    } else {
        j["instance"] = instance_json(inst.get());
    }
    out << j.dump() << "\n";
    err << "gen: " << kind << " instance with n = " << n << (path ? " written to " + *path : "") << "\n";
    return kExitOk;
}

int cmd_analyze(const std::string& path, std::size_t oracle_limit, std::ostream& out, std::ostream& err)
{
    auto inst = load(path);
    sslab_analysis a;
    check(sslab_analyze(inst.get(), oracle_limit, &a));
    char* s = nullptr;
    json j;
    j["command"] = "analyze";
    j["n"] = a.n;
    check(sslab_instance_target(inst.get(), &s));
    j["target"] = take(s);
    check(sslab_instance_total(inst.get(), &s));
    j["total"] = take(s);
    j["density"] = a.has_density ? json(a.density) : json(nullptr);
    j["beta"] = a.max_bin;
    j["distinct_sums"] = a.distinct_sums;
    j["l2_norm_squared"] = a.l2_norm_sq;
    out << j.dump() << "\n";
    err << "analyze: n = " << a.n << ", beta = " << a.max_bin << ", distinct sums = " << a.distinct_sums << "\n";
    return kExitOk;
}

int cmd_classify(const std::string& path, std::size_t oracle_limit, double epsilon, std::ostream& out,
                 std::ostream& err)
{
    auto inst = load(path);
    sslab_classification c;
    check(sslab_classify(inst.get(), oracle_limit, epsilon, &c));
    json j;
    j["command"] = "classify";
    j["n"] = c.n;
    j["beta"] = c.beta;
    j["distinct_sums"] = c.distinct_sums;
    j["density"] = c.has_density ? json(c.density) : json(nullptr);
    j["epsilon"] = c.epsilon;
    j["small_bin"] = static_cast<bool>(c.small_bin);
    j["large_bin"] = static_cast<bool>(c.large_bin);
    j["many_sums"] = static_cast<bool>(c.many_sums);
    j["sums_vs_bin_held"] = static_cast<bool>(c.sums_vs_bin_held);
    j["regime"] = sslab_regime_name(c.regime);
    out << j.dump() << "\n";
    err << "classify: regime " << sslab_regime_name(c.regime) << " (beta = " << c.beta << ")\n";
    return kExitOk;
}

int cmd_solve(const std::string& path, const SolveFlags& f, std::ostream& out, std::ostream& err)
{
    auto inst = load(path);
    auto rng = make_rng(f.seed);
    auto outcome = solve_once(inst.get(), f, rng.get());
    const sslab_outcome* o = outcome.get();

    json j;
    j["command"] = "solve";
    j["alg"] = f.alg;
    j["seed"] = f.seed;
    j["n"] = sslab_instance_size(inst.get());
    j["found"] = static_cast<bool>(sslab_outcome_found(o));
    std::string hex;
    if (sslab_outcome_found(o)) {
        char* s = nullptr;
        check(sslab_outcome_witness_hex(o, &s));
        hex = take(s);
        j["witness_mask_hex"] = hex;
    } else {
        j["witness_mask_hex"] = nullptr;
    }
    j["verified"] = static_cast<bool>(sslab_outcome_verified(o));
    j["budget_exhausted"] = static_cast<bool>(sslab_outcome_budget_exhausted(o));
    j["branch_taken"] = sslab_outcome_branch(o);
    sslab_counters c;
    sslab_outcome_counters(o, &c);
    j["counters"] = counters_json(c);
    const std::size_t iters = sslab_outcome_iteration_count(o);
    if (iters > 0) {
        json list = json::array();
        for (std::size_t i = 0; i < iters; ++i) {
            sslab_iteration it;
            check(sslab_outcome_iteration(o, i, &it));
            json r;
            r["target"] = it.complementary ? "complementary" : "actual";
            r["s"] = it.s;
            r["s1"] = it.s1;
            r["s2"] = it.s2;
            r["p"] = it.prime;
            r["tL"] = it.residue;
            r["left_size"] = it.left_size;
            r["right_size"] = it.right_size;
            r["pairs_scanned"] = it.pairs_scanned;
            if (it.skipped) r["skipped"] = true;
            list.push_back(std::move(r));
        }
        j["iterations"] = std::move(list);
    }
    out << j.dump() << "\n";
    if (!hex.empty()) {
        err << "solve: " << f.alg << " found witness 0x" << hex;
    } else {
        err << "solve: " << f.alg << " found no witness";
        if (sslab_outcome_budget_exhausted(o)) err << " (budget exhausted)";
    }
    err << " via " << sslab_outcome_branch(o) << ", " << c.steps << " steps\n";
    return kExitOk;
}

int cmd_hash(const std::string& path, const std::optional<std::string>& bound, std::optional<unsigned> bound_bits,
             bool with_check, std::size_t oracle_limit, std::uint64_t seed,
             const std::optional<std::string>& out_path, std::ostream& out, std::ostream& err)
{
    if (bound.has_value() == bound_bits.has_value()) throw Failure{kExitUsage, "give exactly one of --B and --B-bits"};
    std::string b = bound ? *bound : "";
    if (bound_bits) {
        // 2^k in decimal, by repeated doubling of the digit string.
        std::string digits = "1";
        for (unsigned k = 0; k < *bound_bits; ++k) {
            int carry = 0;
            for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
                const int v = (*it - '0') * 2 + carry;
                *it = static_cast<char>('0' + v % 10);
                carry = v / 10;
            }
            if (carry) digits.insert(digits.begin(), static_cast<char>('0' + carry));
        }
        b = digits;
    }
    auto inst = load(path);
    auto rng = make_rng(seed);
    sslab_reduction* raw = nullptr;
    check(sslab_reduce(inst.get(), b.c_str(), rng.get(), &raw));
    ReductionPtr red(raw);
    sslab_instance* reduced_raw = nullptr;
    check(sslab_reduction_instance(red.get(), &reduced_raw));
    InstancePtr reduced(reduced_raw);

    char* s = nullptr;
    json j;
    j["command"] = "hash";
    j["seed"] = seed;
    j["n"] = sslab_instance_size(inst.get());
    j["bound"] = b;
    check(sslab_reduction_prime(red.get(), &s));
    j["prime"] = take(s);
    j["shift"] = sslab_reduction_shift(red.get());
    j["rounds"] = sslab_reduction_rounds(red.get());
    j["density_before"] = density_json(inst.get());
    j["density_after"] = density_json(reduced.get());
    if (out_path) {
        check(sslab_instance_write(reduced.get(), out_path->c_str()));
        j["out"] = *out_path;
    } else {
        j["reduced"] = instance_json(reduced.get());
    }
    if (with_check) {
        sslab_reduction_report r;
        check(sslab_reduction_check(inst.get(), red.get(), oracle_limit, &r));
        json rep;
        rep["solutions_preserved"] = static_cast<bool>(r.solutions_preserved);
        rep["sums_preserved"] = static_cast<bool>(r.sums_preserved);
        rep["bins_preserved"] = r.bins_preserved < 0 ? json(nullptr) : json(r.bins_preserved == 1);
        rep["bins_split_ok"] = static_cast<bool>(r.bins_split_ok);
        rep["distinct_before"] = r.distinct_before;
        rep["distinct_after"] = r.distinct_after;
        rep["beta_before"] = r.beta_before;
        rep["beta_after"] = r.beta_after;
        rep["false_solutions"] = r.false_solutions;
        rep["lost_solutions"] = r.lost_solutions;
        j["report"] = std::move(rep);
    }
    out << j.dump() << "\n";
    err << "hash: reduced with p = " << j["prime"].get<std::string>() << ", shift = " << j["shift"].get<std::uint64_t>()
        << " after " << j["rounds"].get<unsigned>() << " round(s)\n";
    return kExitOk;
}

struct CorpusItem {
    std::string kind;
    InstancePtr instance;
};

std::vector<CorpusItem> corpus(std::size_t n_min, std::size_t n_max, std::size_t count, std::uint64_t seed)
{
    auto rng = make_rng(seed);
    std::vector<CorpusItem> items;
    auto gen = [&](const char* label, sslab_gen_params p) {
        sslab_instance* raw = nullptr;
        check(sslab_generate(&p, rng.get(), &raw, nullptr));
        items.push_back({label, InstancePtr(raw)});
    };
    const double densities[] = {0.5, 1.0, 2.0};
    for (std::size_t n = std::max<std::size_t>(n_min, 2); n <= n_max; ++n) {
        sslab_gen_params p;
        sslab_gen_params_init(&p);
        p.n = n;
        for (std::size_t k = 0; k < count; ++k) {
            p.kind = SSLAB_GEN_DENSITY;
            p.density = densities[k % 3];
            gen("density", p);
            p.kind = SSLAB_GEN_PLANTED;
            p.bits = static_cast<unsigned>(n);
            gen("planted", p);
        }
        p.kind = SSLAB_GEN_ALL_EQUAL;
        p.value = 1 + n;
        gen("equal", p);
        p.kind = SSLAB_GEN_SUPER_INCREASING;
        gen("superinc", p);
        if (n % 2 == 0) {
            p.kind = SSLAB_GEN_GEOMETRIC_PAIRS;
            gen("geometric", p);
        }
    }
    return items;
}

int cmd_verify(const std::string& checks, const std::optional<std::string>& path, std::size_t n_min,
               std::size_t n_max, std::size_t count, std::size_t oracle_limit, std::uint64_t seed,
               std::ostream& out, std::ostream& err)
{
    std::vector<sslab_check> list;
    for (const auto& name : split_list(checks)) {
        sslab_check c;
        if (sslab_check_from_name(name.c_str(), &c) != SSLAB_OK) throw Failure{kExitUsage, "unknown check '" + name + "'"};
        list.push_back(c);
    }
    if (list.empty()) throw Failure{kExitUsage, "--checks is empty"};

    std::vector<CorpusItem> items;
    if (path) {
        items.push_back({"file", load(*path)});
    } else {
        items = corpus(n_min, n_max, count, seed);
    }

    bool violated = false;
    for (auto c : list) {
        std::size_t held = 0, failed = 0, skipped = 0;
        json violations = json::array();
        for (std::size_t i = 0; i < items.size(); ++i) {
            int holds = 0;
            const sslab_status st = sslab_verify(items[i].instance.get(), c, oracle_limit, &holds);
            if (st == SSLAB_CAPACITY) {
                ++skipped;
                continue;
            }
            check(st);
            if (holds) {
                ++held;
            } else {
                ++failed;
                json v;
                v["index"] = i;
                v["kind"] = items[i].kind;
                v["n"] = sslab_instance_size(items[i].instance.get());
                violations.push_back(std::move(v));
            }
        }
        json j;
        j["command"] = "verify";
        j["check"] = sslab_check_name(c);
        j["seed"] = seed;
        j["instances"] = items.size();
        j["held"] = held;
        j["violated"] = failed;
        j["skipped"] = skipped;
        j["violations"] = std::move(violations);
        out << j.dump() << "\n";
        err << "verify " << sslab_check_name(c) << ": " << held << " held, " << failed << " violated, " << skipped
            << " skipped\n";
        violated = violated || failed > 0;
    }
    return violated ? kExitViolation : kExitOk;
}

int cmd_bench(const SolveFlags& f, const std::string& kind, double d, std::size_t n_min, std::size_t n_max,
              std::size_t step, std::size_t reps, const std::string& csv_path, std::ostream& out, std::ostream& err)
{
    if (step == 0) throw Failure{kExitUsage, "--step must be positive"};
    std::ofstream csv(csv_path);
    if (!csv) throw Failure{kExitError, "cannot write " + csv_path};
    csv << "n,rep,found,sums_enumerated,pairs_checked,dict_lookups,samples_drawn,peak_retained,list_entries,steps\n";
    auto rng = make_rng(f.seed);
    for (std::size_t n = n_min; n <= n_max; n += step) {
        std::size_t found = 0;
        double total_steps = 0;
        std::uint64_t max_peak = 0;
        for (std::size_t r = 0; r < reps; ++r) {
            sslab_gen_params p;
            sslab_gen_params_init(&p);
            p.n = n;
            p.density = d;
            p.bits = static_cast<unsigned>(n);
            if (kind == "density") {
                p.kind = SSLAB_GEN_DENSITY;
            } else if (kind == "planted") {
                p.kind = SSLAB_GEN_PLANTED;
            } else {
                throw Failure{kExitUsage, "bench --kind must be density or planted"};
            }
            sslab_instance* raw = nullptr;
            check(sslab_generate(&p, rng.get(), &raw, nullptr));
            InstancePtr inst(raw);
            auto outcome = solve_once(inst.get(), f, rng.get());
            sslab_counters c;
            sslab_outcome_counters(outcome.get(), &c);
            const bool hit = sslab_outcome_found(outcome.get());
            found += hit;
            total_steps += static_cast<double>(c.steps);
            max_peak = std::max(max_peak, c.peak_retained);
            csv << n << ',' << r << ',' << (hit ? 1 : 0) << ',' << c.sums_enumerated << ',' << c.pairs_checked << ','
                << c.dict_lookups << ',' << c.samples_drawn << ',' << c.peak_retained << ',' << c.list_entries << ','
                << c.steps << '\n';
        }
        json j;
        j["command"] = "bench";
        j["alg"] = f.alg;
        j["n"] = n;
        j["reps"] = reps;
        j["found"] = found;
        j["mean_steps"] = reps ? total_steps / static_cast<double>(reps) : 0.0;
        j["max_peak_retained"] = max_peak;
        out << j.dump() << "\n";
    }
    err << "bench: " << f.alg << " over n in [" << n_min << ", " << n_max << "], rows written to " << csv_path << "\n";
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Exact Subset Sum solvers and structure checks"};
    app.name("sslab");
    app.set_version_flag("--version", sslab_version());
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate an instance");
    std::string gen_kind = "density";
    std::size_t gen_n = 0;
    double gen_d = 1.0;
    unsigned gen_bits = 0;
    std::uint64_t gen_value = 1;
    std::optional<std::string> gen_target, gen_out;
    std::uint64_t seed = 0;
    gen->add_option("--kind", gen_kind, "density|geometric|planted|equal|superinc");
    gen->add_option("--n", gen_n, "number of items")->required();
    gen->add_option("--d", gen_d, "density n / log2 t (kind density)");
    gen->add_option("--bits", gen_bits, "weight bits (kind planted; default n)");
    gen->add_option("--value", gen_value, "common weight (kind equal)");
    gen->add_option("--target", gen_target, "target (kinds equal, superinc)");
    gen->add_option("--seed", seed, "random seed");
    gen->add_option("--out", gen_out, "instance file to write");

    std::string path;
    std::size_t oracle_limit = 26;
    double epsilon = 1.0 / 6.0;

    auto* analyze = app.add_subcommand("analyze", "bin statistics of an instance");
    analyze->add_option("instance", path, "instance file, or - for stdin")->required();
    analyze->add_option("--oracle-limit", oracle_limit, "largest n for exhaustive enumeration");

    auto* classify = app.add_subcommand("classify", "bin-size regime of an instance");
    classify->add_option("instance", path, "instance file, or - for stdin")->required();
    classify->add_option("--oracle-limit", oracle_limit, "largest n for exhaustive enumeration");
    classify->add_option("--epsilon", epsilon, "small-bin slack in (0, 1/6]");

    auto* solve = app.add_subcommand("solve", "solve an instance");
    SolveFlags flags;
    flags.add_to(solve);
    solve->add_option("instance", path, "instance file, or - for stdin")->required();

    auto* hash = app.add_subcommand("hash", "reduce weights modulo a random prime");
    std::optional<std::string> hash_bound, hash_out;
    std::optional<unsigned> hash_bits;
    bool hash_check = false;
    hash->add_option("instance", path, "instance file, or - for stdin")->required();
    hash->add_option("--B", hash_bound, "bound B in decimal");
    hash->add_option("--B-bits", hash_bits, "bound B = 2^k");
    hash->add_flag("--check", hash_check, "compare solutions, sums and bins against the oracle");
    hash->add_option("--oracle-limit", oracle_limit, "largest n for exhaustive enumeration");
    hash->add_option("--seed", seed, "random seed");
    hash->add_option("--out", hash_out, "file for the reduced instance");

    auto* verify = app.add_subcommand("verify", "check combinatorial identities");
    std::string checks;
    std::optional<std::string> verify_path;
    std::size_t n_min = 2, n_max = 12, count = 3;
    verify->add_option("--checks", checks, "comma list of udcp,l2identity,cauchyschwarz,sumsvsbin")->required();
    verify->add_option("instance", verify_path, "instance file (default: seeded corpus)");
    verify->add_option("--n-min", n_min, "smallest corpus n");
    verify->add_option("--n-max", n_max, "largest corpus n");
    verify->add_option("--count", count, "random instances per n and kind");
    verify->add_option("--oracle-limit", oracle_limit, "largest n for exhaustive enumeration");
    verify->add_option("--seed", seed, "random seed");

    auto* bench = app.add_subcommand("bench", "sweep n and record counters");
    SolveFlags bench_flags;
    bench_flags.add_to(bench);
    std::string bench_kind = "planted", csv_path;
    double bench_d = 1.0;
    std::size_t bench_min = 8, bench_max = 20, bench_step = 2, bench_reps = 3;
    bench->add_option("--kind", bench_kind, "density|planted");
    bench->add_option("--d", bench_d, "density (kind density)");
    bench->add_option("--n-min", bench_min, "smallest n");
    bench->add_option("--n-max", bench_max, "largest n");
    bench->add_option("--step", bench_step, "n increment");
    bench->add_option("--reps", bench_reps, "instances per n");
    bench->add_option("--csv", csv_path, "CSV output path")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, err, err);
        err << app.help();
        return kExitUsage;
    }

    try {
        if (gen->parsed()) return cmd_gen(gen_kind, gen_n, gen_d, gen_bits, gen_value, gen_target, seed, gen_out, out, err);
        if (analyze->parsed()) return cmd_analyze(path, oracle_limit, out, err);
        if (classify->parsed()) return cmd_classify(path, oracle_limit, epsilon, out, err);
        if (solve->parsed()) return cmd_solve(path, flags, out, err);
        if (hash->parsed()) {
            return cmd_hash(path, hash_bound, hash_bits, hash_check, oracle_limit, seed, hash_out, out, err);
        }
        if (verify->parsed()) {
            return cmd_verify(checks, verify_path, n_min, n_max, count, oracle_limit, seed, out, err);
        }
        if (bench->parsed()) {
            return cmd_bench(bench_flags, bench_kind, bench_d, bench_min, bench_max, bench_step, bench_reps, csv_path,
                             out, err);
        }
    } catch (const Failure& f) {
        err << "sslab: " << f.message << "\n";
        if (f.code == kExitUsage) err << app.help();
        return f.code;
    }
    err << app.help();
    return kExitUsage;
}

}  // namespace sslab::cli
