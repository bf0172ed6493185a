#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include "sslab/sslab.h"

namespace {

std::string take(char* s)
{
    std::string out = s ? s : "";
    sslab_string_free(s);
    return out;
}

sslab_instance* make(std::initializer_list<std::uint64_t> w, std::uint64_t t)
{
    std::vector<std::uint64_t> v(w);
    sslab_instance* inst = nullptr;
    REQUIRE(sslab_instance_from_u64(v.data(), v.size(), t, &inst) == SSLAB_OK);
    return inst;
}

}  // namespace

TEST_CASE("status and names")
{
    CHECK(std::strlen(sslab_version()) > 0);
    CHECK(std::string(sslab_status_name(SSLAB_OK)) == "ok");
    CHECK(std::string(sslab_algorithm_name(SSLAB_ALG_MIM)) == "mim");
    sslab_algorithm alg;
    CHECK(sslab_algorithm_from_name("fewsums", &alg) == SSLAB_OK);
    CHECK(alg == SSLAB_ALG_FEWSUMS);
    CHECK(sslab_algorithm_from_name("nope", &alg) == SSLAB_INVALID_ARGUMENT);
    sslab_check check;
    CHECK(sslab_check_from_name("udcp", &check) == SSLAB_OK);
    CHECK(std::string(sslab_check_name(SSLAB_CHECK_SUMSVSBIN)) == "sumsvsbin");
    CHECK(std::string(sslab_regime_name(SSLAB_REGIME_GAP)) == "gap");
}

TEST_CASE("instance construction and errors")
{
    sslab_instance* inst = nullptr;
    const std::uint64_t zero[] = {1, 0};
    CHECK(sslab_instance_from_u64(zero, 2, 1, &inst) == SSLAB_DOMAIN);
    CHECK(inst == nullptr);
    CHECK(std::strlen(sslab_last_error()) > 0);
    CHECK(sslab_instance_from_u64(zero, 2, 1, nullptr) == SSLAB_INVALID_ARGUMENT);
    CHECK(sslab_instance_parse("2\n1 x\n3\n", &inst) == SSLAB_PARSE);
    CHECK(sslab_instance_read("/nonexistent/x.txt", &inst) == SSLAB_IO);

    const char* weights[] = {"1267650600228229401496703205376", "5"};
    REQUIRE(sslab_instance_from_decimal(weights, 2, "1267650600228229401496703205381", &inst) == SSLAB_OK);
    char* s = nullptr;
    REQUIRE(sslab_instance_total(inst, &s) == SSLAB_OK);
    CHECK(take(s) == "1267650600228229401496703205381");
    int ok = 0;
    CHECK(sslab_instance_check_witness(inst, "3", &ok) == SSLAB_OK);
    CHECK(ok == 1);
    CHECK(sslab_instance_check_witness(inst, "1", &ok) == SSLAB_OK);
    CHECK(ok == 0);
    CHECK(sslab_instance_check_witness(inst, "zz", &ok) == SSLAB_PARSE);
    sslab_instance_free(inst);

    inst = make({3, 5, 8}, 11);
    REQUIRE(sslab_instance_format(inst, &s) == SSLAB_OK);
    CHECK(take(s) == "3\n3 5 8\n11\n");
    CHECK(sslab_instance_size(inst) == 3);
    REQUIRE(sslab_instance_weight(inst, 2, &s) == SSLAB_OK);
    CHECK(take(s) == "8");
    CHECK(sslab_instance_weight(inst, 3, &s) == SSLAB_INVALID_ARGUMENT);
    double d = 0;
    CHECK(sslab_instance_density(inst, &d) == SSLAB_OK);
    CHECK(d == doctest::Approx(3.0 / std::log2(11.0)));

    const auto path = (std::filesystem::temp_directory_path() / "sslab_capi.txt").string();
    CHECK(sslab_instance_write(inst, path.c_str()) == SSLAB_OK);
    sslab_instance* back = nullptr;
    REQUIRE(sslab_instance_read(path.c_str(), &back) == SSLAB_OK);
    REQUIRE(sslab_instance_format(back, &s) == SSLAB_OK);
    CHECK(take(s) == "3\n3 5 8\n11\n");
    std::filesystem::remove(path);
    sslab_instance_free(back);
    sslab_instance_free(inst);
}

TEST_CASE("generators are deterministic")
{
    sslab_gen_params params;
    sslab_gen_params_init(&params);
    params.kind = SSLAB_GEN_PLANTED;
    params.n = 12;
    params.bits = 12;
    std::string first;
    for (int k = 0; k < 2; ++k) {
        sslab_rng* rng = nullptr;
        REQUIRE(sslab_rng_new(99, &rng) == SSLAB_OK);
        sslab_instance* inst = nullptr;
        char* planted = nullptr;
        REQUIRE(sslab_generate(&params, rng, &inst, &planted) == SSLAB_OK);
        int ok = 0;
        CHECK(sslab_instance_check_witness(inst, planted, &ok) == SSLAB_OK);
        CHECK(ok == 1);
        char* text = nullptr;
        REQUIRE(sslab_instance_format(inst, &text) == SSLAB_OK);
        const std::string got = take(text) + take(planted);
        if (k == 0) first = got;
        else CHECK(got == first);
        sslab_instance_free(inst);
        sslab_rng_free(rng);
    }
    params.kind = SSLAB_GEN_GEOMETRIC_PAIRS;
    params.n = 5;
    sslab_instance* inst = nullptr;
    CHECK(sslab_generate(&params, nullptr, &inst, nullptr) == SSLAB_DOMAIN);
}

TEST_CASE("analyze, classify and verify")
{
    sslab_gen_params params;
    sslab_gen_params_init(&params);
    params.kind = SSLAB_GEN_ALL_EQUAL;
    params.n = 12;
    params.value = 3;
    sslab_instance* inst = nullptr;
    REQUIRE(sslab_generate(&params, nullptr, &inst, nullptr) == SSLAB_OK);
    sslab_analysis a;
    REQUIRE(sslab_analyze(inst, 26, &a) == SSLAB_OK);
    CHECK(a.max_bin == 924);
    CHECK(a.distinct_sums == 13);
    sslab_classification c;
    REQUIRE(sslab_classify(inst, 26, 1.0 / 6.0, &c) == SSLAB_OK);
    CHECK(c.large_bin == 1);
    CHECK(c.regime == SSLAB_REGIME_LARGE_BIN);
    CHECK(sslab_analyze(inst, 8, &a) == SSLAB_CAPACITY);
    int holds = 0;
    for (auto check : {SSLAB_CHECK_UDCP, SSLAB_CHECK_L2IDENTITY, SSLAB_CHECK_CAUCHYSCHWARZ, SSLAB_CHECK_SUMSVSBIN}) {
        CHECK(sslab_verify(inst, check, 26, &holds) == SSLAB_OK);
        CHECK(holds == 1);
    }
    sslab_instance_free(inst);
}

TEST_CASE("solve with every algorithm")
{
    sslab_rng* rng = nullptr;
    REQUIRE(sslab_rng_new(7, &rng) == SSLAB_OK);
    sslab_gen_params params;
    sslab_gen_params_init(&params);
    params.kind = SSLAB_GEN_PLANTED;
    params.n = 14;
    params.bits = 14;
    sslab_instance* inst = nullptr;
    REQUIRE(sslab_generate(&params, rng, &inst, nullptr) == SSLAB_OK);

    for (int a = SSLAB_ALG_BRUTE; a <= SSLAB_ALG_CLASSIFIED; ++a) {
        CAPTURE(a);
        sslab_solve_options opts;
        sslab_solve_options_init(&opts);
        opts.alg = static_cast<sslab_algorithm>(a);
        if (a == SSLAB_ALG_REPR) opts.repetitions = 50;
        sslab_outcome* out = nullptr;
        REQUIRE(sslab_solve(inst, &opts, rng, &out) == SSLAB_OK);
        if (a == SSLAB_ALG_SAMPLER || a == SSLAB_ALG_REPR) {
            // Monte Carlo: a miss is allowed, a wrong witness is not.
            if (!sslab_outcome_found(out)) {
                sslab_outcome_free(out);
                continue;
            }
        }
        REQUIRE(sslab_outcome_found(out) == 1);
        CHECK(sslab_outcome_verified(out) == 1);
        char* hex = nullptr;
        REQUIRE(sslab_outcome_witness_hex(out, &hex) == SSLAB_OK);
        int ok = 0;
        CHECK(sslab_instance_check_witness(inst, hex, &ok) == SSLAB_OK);
        CHECK(ok == 1);
        sslab_string_free(hex);
        CHECK(std::strlen(sslab_outcome_branch(out)) > 0);
        sslab_counters counters;
        sslab_outcome_counters(out, &counters);
        CHECK(counters.steps == counters.sums_enumerated + counters.pairs_checked + counters.dict_lookups +
                                    counters.samples_drawn + counters.list_entries);
        if (a == SSLAB_ALG_REPR) {
            CHECK(sslab_outcome_iteration_count(out) > 0);
            sslab_iteration it;
            CHECK(sslab_outcome_iteration(out, 0, &it) == SSLAB_OK);
            CHECK(sslab_outcome_iteration(out, 1u << 30, &it) == SSLAB_INVALID_ARGUMENT);
        }
        sslab_outcome_free(out);
    }

    sslab_solve_options opts;
    sslab_solve_options_init(&opts);
    opts.alg = SSLAB_ALG_SAMPLER;
    sslab_outcome* out = nullptr;
    CHECK(sslab_solve(inst, &opts, nullptr, &out) == SSLAB_INVALID_ARGUMENT);
    opts.alg = SSLAB_ALG_AUTO;
    opts.epsilon = 0.5;
    opts.has_epsilon = 1;
    CHECK(sslab_solve(inst, &opts, rng, &out) == SSLAB_DOMAIN);
    sslab_instance_free(inst);

    sslab_instance* big = nullptr;
    std::vector<std::uint64_t> ones(30, 1);
    REQUIRE(sslab_instance_from_u64(ones.data(), ones.size(), 15, &big) == SSLAB_OK);
    sslab_solve_options_init(&opts);
    opts.alg = SSLAB_ALG_BRUTE;
    CHECK(sslab_solve(big, &opts, rng, &out) == SSLAB_CAPACITY);
    sslab_instance_free(big);
    sslab_rng_free(rng);
}

TEST_CASE("reduction through the C API")
{
    sslab_rng* rng = nullptr;
    REQUIRE(sslab_rng_new(3, &rng) == SSLAB_OK);
    sslab_instance* inst = make({1000, 2000, 3000, 4000, 5000, 6000}, 9000);
    sslab_reduction* red = nullptr;
    CHECK(sslab_reduce(inst, "1", rng, &red) == SSLAB_DOMAIN);
    CHECK(sslab_reduce(inst, "abc", rng, &red) == SSLAB_PARSE);
    REQUIRE(sslab_reduce(inst, "4096", rng, &red) == SSLAB_OK);
    CHECK(sslab_reduction_shift(red) < 6);
    CHECK(sslab_reduction_rounds(red) >= 1);
    char* p = nullptr;
    REQUIRE(sslab_reduction_prime(red, &p) == SSLAB_OK);
    CHECK(std::stoull(take(p)) >= 4096 * 13);
    sslab_reduction_report report;
    REQUIRE(sslab_reduction_check(inst, red, 26, &report) == SSLAB_OK);
    CHECK(report.bins_split_ok == 1);
    // 22 distinct sums and B = 4096 >= 5 * 22^2, so the bin property is evaluated
    CHECK(report.distinct_before == 22);
    CHECK(report.bins_preserved != -1);
    sslab_instance* reduced = nullptr;
    CHECK(sslab_reduction_instance(red, &reduced) == SSLAB_OK);
    CHECK(sslab_instance_size(reduced) == 6);
    sslab_instance_free(reduced);
    sslab_reduction_free(red);

    sslab_reduction* coarse = nullptr;
    REQUIRE(sslab_reduce(inst, "100", rng, &coarse) == SSLAB_OK);
    REQUIRE(sslab_reduction_check(inst, coarse, 26, &report) == SSLAB_OK);
    CHECK(report.bins_preserved == -1);
    sslab_reduction_free(coarse);

    sslab_instance* small = make({1, 2, 3}, 4);
    CHECK(sslab_reduce(small, "100", rng, &red) == SSLAB_USE_DP);
    sslab_instance_free(small);
    sslab_instance_free(inst);
    sslab_rng_free(rng);
}
