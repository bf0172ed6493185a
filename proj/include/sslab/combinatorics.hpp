#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sslab/core.hpp"

namespace sslab {

inline constexpr std::uint64_t kUdcpCapacity = std::uint64_t{1} << 26;
inline constexpr std::size_t kTernaryLimit = 16;

/// Two sets of length-n binary vectors, stored as masks (n <= 64).
/// Duplicates are dropped and both sets are kept sorted.
class UdcpPair {
public:
    UdcpPair(std::size_t n, std::vector<std::uint64_t> a, std::vector<std::uint64_t> b);

    std::size_t length() const { return n_; }
    const std::vector<std::uint64_t>& a() const { return a_; }
    const std::vector<std::uint64_t>& b() const { return b_; }

private:
    std::size_t n_;
    std::vector<std::uint64_t> a_;
    std::vector<std::uint64_t> b_;
};

// |A + B| == |A| |B| with addition over the integers, coordinatewise.
bool check_udcp(const UdcpPair& pair);

// A: smallest mask of each distinct sum. B: every mask in the largest bin
// (the smallest such sum on ties).
UdcpPair udcp_from_instance(const Instance& instance, std::size_t oracle_limit);

// Squared l2 norm of the bin histogram of S.
std::uint64_t bin_l2(const Instance& instance, const Subset& over);

// |{y in {-1,0,1}^n : y.w = 0, |y|_1 = ell1}| by ternary enumeration.
std::uint64_t count_B_sigma(const Instance& instance, std::size_t ell1);
// The same count for every ell1 in [0, n], from a single enumeration.
std::vector<std::uint64_t> count_B_sigma_profile(const Instance& instance);

// ||b||^2 == sum_i |B_(i/n)| 2^(n-i).
bool l2_identity_holds(const Instance& instance);
// beta <= ||b_S|| ||b_T|| for every equi-partition (all_partitions) or for
// the first-half/second-half partition.
bool cauchy_schwarz_holds(const Instance& instance, bool all_partitions);
// If |w(2^[n])| >= 2^(0.997 n) then beta <= 2^(0.4996 n).
bool sums_vs_bin_holds(const Instance& instance);

}  // namespace sslab
