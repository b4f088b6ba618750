#pragma once
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "aeqd/primes.hpp"

namespace aeqd {

/// Exact per-integer bundle produced by the segmented sieve.
/// p1/p2 are the two largest prime factors counted with multiplicity, 1 by convention
/// when absent; maxSquaredPrime is the largest prime whose square divides n (1 if squarefree).
struct SegmentRecord {
    uint64_t n;
    uint64_t bigA;  // sum of prime divisors with multiplicity
    uint64_t phi;
    uint64_t p1;
    uint64_t p2;
    uint64_t maxSquaredPrime;
};

struct SieveOptions {
    uint64_t segment_size = uint64_t{1} << 20;
    unsigned threads = 0;  // 0 = hardware parallelism
};

// One segment [lo, hi], both inclusive. Requires table.limit >= floor(sqrt(hi)).
std::vector<SegmentRecord> sieve_segment(uint64_t lo, uint64_t hi, const PrimeTable& table);

/// Parallel segment driver. fn(thread_index, records) runs concurrently across segments;
/// consumers keep per-thread accumulators and merge with order-independent reductions.
void for_each_segment(uint64_t lo, uint64_t hi, const PrimeTable& table, const SieveOptions& opt,
                      const std::function<void(unsigned, const std::vector<SegmentRecord>&)>& fn);

// #{n <= x : P(n) <= z}; n = 1 counts as z-smooth for every z.
uint64_t psi_smooth_count(uint64_t x, uint64_t z, const PrimeTable& table,
                          const SieveOptions& opt = {});

/// n = m * P_j ... P_1 with P+(m) <= y < P_j < ... < P_1 and P_1 > z.
struct Decomposition {
    uint64_t m;
    std::vector<uint64_t> tail;  // ascending
};

// Empty when n is z-smooth or has a repeated prime factor exceeding y.
std::optional<Decomposition> decompose(uint64_t n, uint64_t y, uint64_t z, const PrimeTable& table);

// Binary segment cache: magic "AEQD", version byte, fixed-width little-endian u64 records.
void write_segment_cache(std::ostream& out, const std::vector<SegmentRecord>& records);
std::vector<SegmentRecord> read_segment_cache(std::istream& in);
void write_segment_cache_file(const std::string& path, const std::vector<SegmentRecord>& records);
std::vector<SegmentRecord> read_segment_cache_file(const std::string& path);

}  // namespace aeqd
