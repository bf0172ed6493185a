#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "naive.hpp"
#include "sslab/core.hpp"
#include "sslab/numeric.hpp"

using namespace sslab;

TEST_CASE("density examples")
{
    CHECK(density(Instance(std::vector<BigInt>(16, 1), BigInt(1) << 16)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(density(Instance(std::vector<BigInt>(16, 1), BigInt(1) << 8)) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK_THROWS_AS(density(Instance(std::vector<BigInt>(20, 1), 1)), DomainError);
}

TEST_CASE("instance invariants")
{
    CHECK_THROWS_AS(Instance::from_u64({1, 0, 2}, 3), DomainError);
    const auto dup = Instance::from_u64({5, 5, 5}, 10);
    CHECK(dup.size() == 3);
    CHECK(dup.total() == 15);
    const auto zero_target = Instance::from_u64({2, 3}, 0);
    CHECK(zero_target.is_solution(Subset(2)));
    CHECK(Instance::with_residues({0, 4}, 4).size() == 2);
}

TEST_CASE("subset hex uses bit i for item i+1")
{
    CHECK(Subset(5).to_hex() == "0");
    CHECK(Subset::from_mask(0xaa, 8).to_hex() == "aa");
    std::vector<std::size_t> idx{0, 64, 70};
    const auto big = Subset::from_indices(idx, 80);
    CHECK(big.to_hex() == "410000000000000001");
    CHECK(Subset::from_hex(big.to_hex(), 80) == big);
    CHECK(Subset::from_hex("0xAA", 8) == Subset::from_mask(0xaa, 8));
    CHECK_THROWS_AS(Subset::from_hex("100", 8), ParseError);
    CHECK_THROWS_AS(Subset::from_hex("1g", 8), ParseError);
    CHECK(Subset::from_mask(0b1011, 4).complement() == Subset::from_mask(0b0100, 4));
}

TEST_CASE("gen_random_density ranges and determinism")
{
    RandomSource a(7), b(7);
    const auto x = gen_random_density(16, 1.0, a);
    const auto y = gen_random_density(16, 1.0, b);
    CHECK(x.weights() == y.weights());
    CHECK(x.target() == y.target());
    for (const auto& w : x.weights()) CHECK((w >= 1 && w <= 65536));
    RandomSource c(0);
    const auto z = gen_random_density(8, 2.0, c);
    for (const auto& w : z.weights()) CHECK((w >= 1 && w <= 16));
    CHECK((z.target() >= 1 && z.target() <= 16));
}

TEST_CASE("gen_geometric_pairs")
{
    const auto g = gen_geometric_pairs(4);
    CHECK(g.weights() == std::vector<BigInt>{1, 1, 3, 3});
    CHECK(naive::sums(g) == 9);
    CHECK(naive::beta(g) == 4);
    CHECK_THROWS_AS(gen_geometric_pairs(5), DomainError);
    for (std::size_t n = 2; n <= 16; n += 2) {
        const auto inst = gen_geometric_pairs(n);
        CHECK(naive::sums(inst) == static_cast<std::uint64_t>(std::pow(3, n / 2)));
        CHECK(naive::beta(inst) == (std::uint64_t{1} << (n / 2)));
        CHECK(naive::solve(inst).has_value());
    }
}

TEST_CASE("gen_planted")
{
    RandomSource rng(3);
    const auto p = gen_planted(10, 10, rng);
    CHECK(p.instance.is_solution(p.solution));
    CHECK(naive::solve(p.instance).has_value());
    for (const auto& w : p.instance.weights()) CHECK((w >= 1 && w <= 1024));
    RandomSource many(11);
    for (int k = 0; k < 100; ++k) {
        const auto q = gen_planted(12, 20, many);
        CHECK(q.instance.sum_of(q.solution) == q.instance.target());
    }
    RandomSource tiny(0);
    const auto one = gen_planted(1, 1, tiny);
    CHECK(one.instance.is_solution(one.solution));
}

TEST_CASE("text format round trip and rejection")
{
    const auto inst = Instance::from_u64({3, 5, 8}, 11);
    CHECK(format_instance(inst) == "3\n3 5 8\n11\n");
    const auto back = parse_instance("# comment\n3\n3 5 8\n# another\n11\n\n");
    CHECK(back.weights() == inst.weights());
    CHECK(back.target() == inst.target());
    CHECK_THROWS_AS(parse_instance("3\n3 5\n11\n"), ParseError);
    CHECK_THROWS_AS(parse_instance("2\n3 x\n11\n"), ParseError);
    CHECK_THROWS_AS(parse_instance("2\n3 5\n"), ParseError);
    CHECK_THROWS_AS(parse_instance("2\n3 5\n-1\n"), ParseError);
    CHECK_THROWS_AS(parse_instance("2\n3 5\n1\n7\n"), ParseError);
    const auto hashed = parse_instance("2\n0 5\n5\n");
    CHECK(hashed.weight(0) == 0);

    const auto path = std::filesystem::temp_directory_path() / "sslab_core_roundtrip.txt";
    const auto big = Instance(std::vector<BigInt>{BigInt(1) << 200, 7}, (BigInt(1) << 200) + 7);
    write_instance_file(big, path);
    const auto again = read_instance_file(path);
    CHECK(again.weights() == big.weights());
    CHECK_FALSE(again.fits_fixed_width());
    std::filesystem::remove(path);
    CHECK_THROWS_AS(read_instance_file("/nonexistent/sslab.txt"), IoError);
}

TEST_CASE("random source")
{
    RandomSource a(42), b(42);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
    RandomSource r(1);
    for (int i = 0; i < 1000; ++i) {
        CHECK(r.uniform_below(7) < 7);
        const auto v = r.uniform_between(BigInt(10), BigInt(12));
        CHECK((v >= 10 && v <= 12));
        const double u = r.uniform_unit();
        CHECK((u >= 0.0 && u < 1.0));
    }
    RandomSource parent(5);
    RandomSource child = parent.split();
    CHECK(child.next_u64() != parent.next_u64());
}

TEST_CASE("memory limit from environment")
{
    ::setenv("SSLAB_MEM_LIMIT_MB", "1", 1);
    CHECK(memory_limit_bytes() == 1024 * 1024);
    CHECK_THROWS_AS(require_memory(2 * 1024 * 1024, "test table"), CapacityError);
    ::unsetenv("SSLAB_MEM_LIMIT_MB");
    CHECK(memory_limit_bytes() == std::uint64_t{2048} * 1024 * 1024);
}

// ---------------------------------------------------------------- numeric

TEST_CASE("entropy examples")
{
    const double half[] = {0.5, 0.5};
    CHECK(std::abs(entropy(half) - 1.0) <= kEntropyTolerance);
    CHECK(binary_entropy(0.25) <= 0.8113);
    const double fifth[] = {0.2, 0.8};
    CHECK(entropy(fifth) + 0.6 <= 1.32195);
    const double zero[] = {0.0, 1.0};
    CHECK(entropy(zero) == 0.0);
    const double bad_sum[] = {0.5, 0.6};
    CHECK_THROWS_AS(entropy(bad_sum), DomainError);
    const double negative[] = {-0.1, 1.1};
    CHECK_THROWS_AS(entropy(negative), DomainError);
    CHECK(binary_entropy(0.3) == doctest::Approx(binary_entropy(0.7)).epsilon(1e-15));
}

TEST_CASE("entropy_around_half_bound")
{
    CHECK(entropy_around_half_bound(0.0));
    CHECK(entropy_around_half_bound(0.5));
    CHECK(entropy_around_half_bound(0.25));
    CHECK_THROWS_AS(entropy_around_half_bound(0.6), DomainError);
    CHECK_THROWS_AS(entropy_around_half_bound(-0.1), DomainError);
}

TEST_CASE("is_prime")
{
    CHECK(is_prime(std::uint64_t{101}));
    CHECK_THROWS_AS(is_prime(std::uint64_t{1}), DomainError);
    CHECK(is_prime((std::uint64_t{1} << 61) - 1));
    CHECK_FALSE(is_prime((std::uint64_t{1} << 62) - 1));
    CHECK(is_prime(std::uint64_t{18446744073709551557ULL}));  // largest prime below 2^64
    CHECK(is_prime((BigInt(1) << 89) - 1));
    CHECK_FALSE(is_prime((BigInt(1) << 89) + 1));
    CHECK_FALSE(is_prime(BigInt(3215031751ULL)));  // strong pseudoprime to bases 2, 3, 5, 7
    for (std::uint64_t m = 2; m < 20000; ++m) {
        bool trial = true;
        for (std::uint64_t d = 2; d * d <= m; ++d) {
            if (m % d == 0) {
                trial = false;
                break;
            }
        }
        if (is_prime(m) != trial) FAIL("primality mismatch at " << m);
    }
}

TEST_CASE("random_prime")
{
    RandomSource rng(9);
    for (int i = 0; i < 200; ++i) {
        const auto p = random_prime(100, rng);
        CHECK((p >= 100 && p <= 200));
        CHECK(is_prime(p));
        const auto q = random_prime(3, rng);
        CHECK((q == 3 || q == 5));
    }
    const BigInt r = BigInt(1) << 100;
    const BigInt big = random_prime(r, rng);
    CHECK((big >= r && big <= 2 * r));
    CHECK(is_prime(big));

    // A fixed x is divisible by a random prime p in [r, 2r] with probability
    // at most log2(x)/r; allow a factor 2.
    const std::uint64_t x = (std::uint64_t{1} << 20) - 1;
    int divides = 0;
    const int runs = 10000;
    for (int i = 0; i < runs; ++i) divides += x % random_prime(1024, rng) == 0;
    CHECK(static_cast<double>(divides) / runs <= 2.0 * 20.0 / 1024.0);
}

TEST_CASE("multinomial_log2")
{
    const std::uint64_t a[] = {2, 2};
    CHECK(std::abs(multinomial_log2(a) - std::log2(6.0)) <= kLogTolerance);
    const std::uint64_t b[] = {1, 1, 1};
    CHECK(std::abs(multinomial_log2(b) - std::log2(6.0)) <= kLogTolerance);
    const std::uint64_t c[] = {10, 10};
    const double v = multinomial_log2(c);
    CHECK(std::abs(v - std::log2(184756.0)) <= kLogTolerance);
    CHECK(v <= 20.0);
    CHECK(v >= 20.0 - std::log2(21.0));
    const std::uint64_t huge[] = {3000, 3000};
    CHECK(std::abs(multinomial_log2(huge) - binomial_log2(6000, 3000)) <= 1e-6);
    CHECK(binomial_log2(5, 7) == -INFINITY);
}
