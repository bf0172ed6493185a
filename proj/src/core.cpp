#include "sslab/core.hpp"

#include <bit>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "sslab/numeric.hpp"

namespace sslab {

std::uint64_t memory_limit_bytes()
{
    constexpr std::uint64_t kDefaultMb = 2048;
    std::uint64_t mb = kDefaultMb;
    if (const char* env = std::getenv("SSLAB_MEM_LIMIT_MB"); env && *env) {
        char* end = nullptr;
        auto v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) mb = v;
    }
    return mb * 1024 * 1024;
}

void require_memory(std::uint64_t bytes, const std::string& what)
{
    if (bytes > memory_limit_bytes()) {
        throw CapacityError(what + " needs " + std::to_string(bytes / (1024 * 1024)) +
                            " MB, over the memory limit (SSLAB_MEM_LIMIT_MB)");
    }
}

// ---------------------------------------------------------------- Subset

Subset::Subset(std::size_t universe) : universe_(universe), words_((universe + 63) / 64, 0) {}

Subset Subset::from_mask(std::uint64_t mask, std::size_t universe)
{
    if (universe < 64 && (mask >> universe) != 0) {
        throw DomainError("subset mask has bits beyond the universe");
    }
    Subset s(universe);
    if (!s.words_.empty()) s.words_[0] = mask;
    return s;
}

Subset Subset::from_indices(std::span<const std::size_t> indices, std::size_t universe)
{
    Subset s(universe);
    for (auto i : indices) s.insert(i);
    return s;
}

Subset Subset::full(std::size_t universe)
{
    Subset s(universe);
    for (std::size_t i = 0; i < universe; ++i) s.insert(i);
    return s;
}

std::size_t Subset::size() const
{
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
}

bool Subset::contains(std::size_t i) const
{
    return i < universe_ && ((words_[i / 64] >> (i % 64)) & 1U);
}

void Subset::insert(std::size_t i)
{
    if (i >= universe_) throw DomainError("subset index out of range");
    words_[i / 64] |= std::uint64_t{1} << (i % 64);
}

void Subset::erase(std::size_t i)
{
    if (i >= universe_) throw DomainError("subset index out of range");
    words_[i / 64] &= ~(std::uint64_t{1} << (i % 64));
}

std::vector<std::size_t> Subset::indices() const
{
    std::vector<std::size_t> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
        auto bits = words_[w];
        while (bits) {
            out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
            bits &= bits - 1;
        }
    }
    return out;
}

Subset Subset::complement() const
{
    Subset c(universe_);
    for (std::size_t i = 0; i < universe_; ++i) {
        if (!contains(i)) c.insert(i);
    }
    return c;
}

std::uint64_t Subset::mask() const
{
    if (universe_ > 64) throw CapacityError("subset mask requested for more than 64 items");
    return words_.empty() ? 0 : words_[0];
}

std::string Subset::to_hex() const
{
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out;
    bool leading = true;
    for (std::size_t w = words_.size(); w-- > 0;) {
        for (int nib = 15; nib >= 0; --nib) {
            unsigned d = static_cast<unsigned>((words_[w] >> (4 * nib)) & 0xf);
            if (leading && d == 0) continue;
            leading = false;
            out.push_back(kDigits[d]);
        }
    }
    return out.empty() ? "0" : out;
}

Subset Subset::from_hex(std::string_view hex, std::size_t universe)
{
    if (hex.size() >= 2 && hex[0] == '0' && (hex[1] == 'x' || hex[1] == 'X')) hex.remove_prefix(2);
    if (hex.empty()) throw ParseError("empty witness mask");
    Subset out(universe);
    std::size_t bit = 0;
    for (std::size_t k = hex.size(); k-- > 0; bit += 4) {
        const char c = hex[k];
        unsigned d;
        if (c >= '0' && c <= '9') {
            d = static_cast<unsigned>(c - '0');
        } else if (c >= 'a' && c <= 'f') {
            d = static_cast<unsigned>(c - 'a' + 10);
        } else if (c >= 'A' && c <= 'F') {
            d = static_cast<unsigned>(c - 'A' + 10);
        } else {
            throw ParseError(std::string("bad hex digit '") + c + "' in witness mask");
        }
        for (unsigned j = 0; j < 4; ++j) {
            if (!((d >> j) & 1)) continue;
            if (bit + j >= universe) throw ParseError("witness mask names an item beyond n");
            out.insert(bit + j);
        }
    }
    return out;
}

// -------------------------------------------------------------- Instance

namespace {
const BigInt kFixedWidthCap = BigInt(1) << 126;
}

Instance::Instance(std::vector<BigInt> weights, BigInt target)
    : weights_(std::move(weights)), target_(std::move(target))
{
    for (std::size_t i = 0; i < weights_.size(); ++i) {
        if (weights_[i] < 1) {
            throw DomainError("weight " + std::to_string(i + 1) + " is not a positive integer");
        }
    }
    finish();
}

Instance::Instance(std::vector<BigInt> weights, BigInt target, Unchecked)
    : weights_(std::move(weights)), target_(std::move(target))
{
    for (const auto& w : weights_) {
        if (w < 0) throw DomainError("negative weight");
    }
    finish();
}

void Instance::finish()
{
    if (target_ < 0) throw DomainError("target is negative");
    total_ = 0;
    for (const auto& w : weights_) total_ += w;
    fixed_width_ = (total_ + target_) < kFixedWidthCap;
}

Instance Instance::with_residues(std::vector<BigInt> weights, BigInt target)
{
    return Instance(std::move(weights), std::move(target), Unchecked{});
}

Instance Instance::from_u64(std::span<const std::uint64_t> weights, std::uint64_t target)
{
    std::vector<BigInt> w(weights.begin(), weights.end());
    return Instance(std::move(w), BigInt(target));
}

Instance Instance::from_u64(std::initializer_list<std::uint64_t> weights, std::uint64_t target)
{
    return from_u64(std::span<const std::uint64_t>(weights.begin(), weights.size()), target);
}

Instance Instance::with_target(BigInt target) const
{
    Instance copy = *this;
    copy.target_ = std::move(target);
    copy.finish();
    return copy;
}

BigInt Instance::sum_of(const Subset& subset) const
{
    if (subset.universe() != size()) throw DomainError("subset universe does not match instance");
    BigInt s = 0;
    for (auto i : subset.indices()) s += weights_[i];
    return s;
}

bool Instance::is_solution(const Subset& subset) const
{
    return subset.universe() == size() && sum_of(subset) == target_;
}

double density(const Instance& instance)
{
    if (instance.target() < 2) throw DomainError("density undefined for target < 2");
    return static_cast<double>(instance.size()) / log2_big(instance.target());
}

// ---------------------------------------------------------- RandomSource

RandomSource::RandomSource(std::uint64_t seed) : seed_(seed), engine_(seed) {}

std::uint64_t RandomSource::next_u64() { return engine_(); }

std::uint64_t RandomSource::uniform_below(std::uint64_t bound)
{
    if (bound == 0) throw DomainError("uniform_below: empty range");
    // Rejection on the largest multiple of bound.
    const std::uint64_t limit = bound * (UINT64_MAX / bound);
    for (;;) {
        auto x = engine_();
        if (x < limit) return x % bound;
    }
}

std::uint64_t RandomSource::uniform_between(std::uint64_t lo, std::uint64_t hi)
{
    if (lo > hi) throw DomainError("uniform_between: empty range");
    if (lo == 0 && hi == UINT64_MAX) return engine_();
    return lo + uniform_below(hi - lo + 1);
}

BigInt RandomSource::uniform_below(const BigInt& bound)
{
    if (bound <= 0) throw DomainError("uniform_below: empty range");
    if (bound <= UINT64_MAX) return BigInt(uniform_below(static_cast<std::uint64_t>(bound)));
    const auto bits = boost::multiprecision::msb(bound) + 1;
    const auto words = (bits + 63) / 64;
    const BigInt top_mask = (BigInt(1) << (bits - (words - 1) * 64)) - 1;
    for (;;) {
        BigInt x = 0;
        for (std::size_t w = 0; w < words; ++w) {
            BigInt chunk = engine_();
            if (w == words - 1) chunk &= top_mask;
            x |= chunk << (64 * w);
        }
        if (x < bound) return x;
    }
}

BigInt RandomSource::uniform_between(const BigInt& lo, const BigInt& hi)
{
    if (lo > hi) throw DomainError("uniform_between: empty range");
    return lo + uniform_below(BigInt(hi - lo + 1));
}

double RandomSource::uniform_unit()
{
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

bool RandomSource::coin() { return (engine_() >> 63) != 0; }

RandomSource RandomSource::split()
{
    return RandomSource(engine_() ^ 0x6a09e667f3bcc909ULL);
}

// ------------------------------------------------------------ Generators

namespace {

// floor(2^x) for x >= 0.
BigInt floor_pow2(double x)
{
    const double whole = std::floor(x);
    const double frac = x - whole;
    if (frac == 0.0) return BigInt(1) << static_cast<unsigned>(whole);
    // 2^frac in 53-bit fixed point, then shift.
    const auto scaled = static_cast<std::uint64_t>(std::ldexp(std::exp2(frac), 52));
    BigInt v = BigInt(scaled) << static_cast<unsigned>(whole);
    v >>= 52;
    return v < 1 ? BigInt(1) : v;
}

}  // namespace

Instance gen_random_density(std::size_t n, double d, RandomSource& rng)
{
    if (n < 1) throw DomainError("gen_random_density: n must be >= 1");
    if (!(d > 0)) throw DomainError("gen_random_density: density must be positive");
    const BigInt upper = floor_pow2(static_cast<double>(n) / d);
    std::vector<BigInt> w;
    w.reserve(n);
    for (std::size_t i = 0; i < n; ++i) w.push_back(rng.uniform_between(BigInt(1), upper));
    BigInt t = rng.uniform_between(BigInt(1), upper);
    return Instance(std::move(w), std::move(t));
}

Instance gen_geometric_pairs(std::size_t n)
{
    if (n < 2 || n % 2 != 0) throw DomainError("gen_geometric_pairs: n must be even and >= 2");
    std::vector<BigInt> w;
    BigInt power = 1;
    BigInt t = 0;
    for (std::size_t k = 0; k < n / 2; ++k) {
        w.push_back(power);
        w.push_back(power);
        t += power;
        power *= 3;
    }
    return Instance(std::move(w), std::move(t));
}

PlantedInstance gen_planted(std::size_t n, unsigned bits, RandomSource& rng)
{
    if (n < 1 || bits < 1) throw DomainError("gen_planted: n and bits must be >= 1");
    const BigInt upper = BigInt(1) << bits;
    std::vector<BigInt> w;
    w.reserve(n);
    for (std::size_t i = 0; i < n; ++i) w.push_back(rng.uniform_between(BigInt(1), upper));
    Subset x(n);
    BigInt t = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (rng.coin()) {
            x.insert(i);
            t += w[i];
        }
    }
    return {Instance(std::move(w), std::move(t)), std::move(x)};
}

Instance gen_all_equal(std::size_t n, std::uint64_t value, const BigInt& target)
{
    std::vector<BigInt> w(n, BigInt(value));
    return Instance(std::move(w), target);
}

Instance gen_super_increasing(std::size_t n, const BigInt& target)
{
    std::vector<BigInt> w;
    for (std::size_t i = 0; i < n; ++i) w.push_back(BigInt(1) << i);
    return Instance(std::move(w), target);
}

// ----------------------------------------------------------- Text format

namespace {

BigInt parse_decimal(std::string_view token, const char* what)
{
    if (token.empty()) throw ParseError(std::string("empty ") + what);
    for (char c : token) {
        if (c < '0' || c > '9') {
            throw ParseError(std::string("invalid ") + what + " '" + std::string(token) + "'");
        }
    }
    return BigInt(std::string(token));
}

std::vector<std::string_view> split_ws(std::string_view line)
{
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

}  // namespace

Instance parse_instance(std::string_view text)
{
    std::vector<std::string_view> data;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        auto line = text.substr(pos, nl - pos);
        if (line.empty() || line.front() != '#') data.push_back(line);
        pos = nl + 1;
    }
    while (!data.empty() && split_ws(data.back()).empty()) data.pop_back();
    if (data.size() != 3) {
        throw ParseError("expected 3 data lines (n, weights, target), found " +
                         std::to_string(data.size()));
    }
    auto n_tokens = split_ws(data[0]);
    if (n_tokens.size() != 1) throw ParseError("first data line must hold only n");
    const BigInt n_big = parse_decimal(n_tokens[0], "count");
    if (n_big > 1'000'000) throw ParseError("instance too large");
    const auto n = static_cast<std::size_t>(n_big);

    auto w_tokens = split_ws(data[1]);
    if (w_tokens.size() != n) {
        throw ParseError("declared " + std::to_string(n) + " weights but found " +
                         std::to_string(w_tokens.size()));
    }
    std::vector<BigInt> w;
    w.reserve(n);
    bool has_zero = false;
    for (auto tok : w_tokens) {
        auto v = parse_decimal(tok, "weight");
        has_zero = has_zero || v == 0;
        w.push_back(std::move(v));
    }
    auto t_tokens = split_ws(data[2]);
    if (t_tokens.size() != 1) throw ParseError("third data line must hold only the target");
    auto t = parse_decimal(t_tokens[0], "target");
    // Zero weights only arise from hashing, whose output is written in this
    // same format.
    if (has_zero) return Instance::with_residues(std::move(w), std::move(t));
    return Instance(std::move(w), std::move(t));
}

std::string format_instance(const Instance& instance)
{
    std::ostringstream out;
    out << instance.size() << '\n';
    for (std::size_t i = 0; i < instance.size(); ++i) {
        if (i) out << ' ';
        out << instance.weight(i);
    }
    out << '\n' << instance.target() << '\n';
    return out.str();
}

Instance read_instance_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_instance(buf.str());
}

void write_instance_file(const Instance& instance, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << format_instance(instance);
    if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace sslab
