#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "sslab/errors.hpp"

namespace sslab {

using BigInt = boost::multiprecision::cpp_int;

/// A subset of the item indices {0, ..., n-1}. Item i is bit i of the mask,
/// so the hex form lists item 1 in the lowest bit.
class Subset {
public:
    Subset() = default;
    explicit Subset(std::size_t universe);

    static Subset from_mask(std::uint64_t mask, std::size_t universe);
    static Subset from_indices(std::span<const std::size_t> indices, std::size_t universe);
    static Subset full(std::size_t universe);

    std::size_t universe() const { return universe_; }
    std::size_t size() const;
    bool empty() const { return size() == 0; }
    bool contains(std::size_t i) const;
    void insert(std::size_t i);
    void erase(std::size_t i);

    std::vector<std::size_t> indices() const;
    Subset complement() const;

    // Only valid for universes of at most 64 items.
    std::uint64_t mask() const;

    // Lowercase hex, most significant nibble first, no leading zeros; "0" for
    // the empty set.
    std::string to_hex() const;
    // Inverse of to_hex (upper case accepted, optional 0x prefix). Throws
    // ParseError on bad digits or bits beyond the universe.
    static Subset from_hex(std::string_view hex, std::size_t universe);

    friend bool operator==(const Subset&, const Subset&) = default;

private:
    std::size_t universe_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Subset Sum input: ordered weights (duplicates kept as distinct items) and
/// a target. Immutable after construction.
class Instance {
public:
    Instance() = default;

    // Requires every weight >= 1 and target >= 0.
    Instance(std::vector<BigInt> weights, BigInt target);

    // Same, but admits zero weights. Used for instances produced by modular
    // hashing, where w mod p may vanish.
    static Instance with_residues(std::vector<BigInt> weights, BigInt target);

    static Instance from_u64(std::span<const std::uint64_t> weights, std::uint64_t target);
    static Instance from_u64(std::initializer_list<std::uint64_t> weights, std::uint64_t target);

    std::size_t size() const { return weights_.size(); }
    const std::vector<BigInt>& weights() const { return weights_; }
    const BigInt& weight(std::size_t i) const { return weights_.at(i); }
    const BigInt& target() const { return target_; }
    const BigInt& total() const { return total_; }

    // True when the total weight and the target fit comfortably in 126 bits,
    // enabling the fixed-width arithmetic path in the solvers.
    bool fits_fixed_width() const { return fixed_width_; }

    Instance with_target(BigInt target) const;

    BigInt sum_of(const Subset& subset) const;
    bool is_solution(const Subset& subset) const;

private:
    struct Unchecked {};
    Instance(std::vector<BigInt> weights, BigInt target, Unchecked);
    void finish();

    std::vector<BigInt> weights_;
    BigInt target_ = 0;
    BigInt total_ = 0;
    bool fixed_width_ = true;
};

/// n / log2(t). Throws DomainError when t < 2.
double density(const Instance& instance);

/// Seeded pseudo-random stream. mt19937_64 is fully specified by the
/// standard and all range reductions below are done by hand, so a seed
/// yields the same draws on every platform.
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t next_u64();

    // Uniform in [0, bound). bound must be positive.
    std::uint64_t uniform_below(std::uint64_t bound);
    // Uniform in [lo, hi].
    std::uint64_t uniform_between(std::uint64_t lo, std::uint64_t hi);
    BigInt uniform_below(const BigInt& bound);
    BigInt uniform_between(const BigInt& lo, const BigInt& hi);
    // Uniform on [0, 1) with 53 random bits.
    double uniform_unit();
    bool coin();

    // An independent stream seeded from this one.
    RandomSource split();

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

struct PlantedInstance {
    Instance instance;
    Subset solution;
};

// Weights and target uniform in [1, floor(2^(n/d))].
Instance gen_random_density(std::size_t n, double d, RandomSource& rng);
// 1,1,3,3,9,9,...; target is one copy of each power.
Instance gen_geometric_pairs(std::size_t n);
// Weights uniform in [1, 2^bits]; target is the sum of a uniform random subset.
PlantedInstance gen_planted(std::size_t n, unsigned bits, RandomSource& rng);
Instance gen_all_equal(std::size_t n, std::uint64_t value, const BigInt& target);
// Weights 2^0, 2^1, ..., 2^(n-1).
Instance gen_super_increasing(std::size_t n, const BigInt& target);

// Plain text instance format: '#' comment lines, then n, then the n weights
// on one line, then t. Zero weights are read as a hashed (residue) instance.
Instance parse_instance(std::string_view text);
std::string format_instance(const Instance& instance);
Instance read_instance_file(const std::filesystem::path& path);
void write_instance_file(const Instance& instance, const std::filesystem::path& path);

}  // namespace sslab
