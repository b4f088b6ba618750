#pragma once
#include <cstdint>
#include <map>
#include <vector>

namespace aeqd {

/// Primes up to a fixed limit, with pi(x) lookups for x <= limit.
/// Immutable after construction; safe to share across threads.
struct PrimeTable {
    uint64_t limit = 0;
    std::vector<uint64_t> primes;
    std::map<uint64_t, uint64_t> pi_checkpoints;

    uint64_t pi(uint64_t x) const;
};

PrimeTable build_prime_table(uint64_t limit);

struct PrimeFactor {
    uint64_t p;
    uint32_t k;
};

// Trial division against the table; requires table.limit >= sqrt(n).
std::vector<PrimeFactor> factorize(uint64_t n, const PrimeTable& table);

uint64_t isqrt(uint64_t n);

}  // namespace aeqd
