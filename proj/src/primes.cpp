#include "aeqd/primes.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace aeqd {

uint64_t isqrt(uint64_t n) {
    uint64_t r = static_cast<uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

namespace {
// sieve bitmap budget; anything larger belongs to a different tool
constexpr uint64_t kMaxLimit = uint64_t{1} << 31;
}  // namespace

PrimeTable build_prime_table(uint64_t limit) {
    if (limit < 2) throw std::invalid_argument("build_prime_table: limit must be >= 2");
    if (limit > kMaxLimit) throw std::runtime_error("build_prime_table: limit exceeds memory budget");

    std::vector<bool> composite(limit + 1, false);
    PrimeTable t;
    t.limit = limit;
    for (uint64_t p = 2; p <= limit; ++p) {
        if (composite[p]) continue;
        t.primes.push_back(p);
        for (uint64_t m = p * p; m <= limit; m += p) composite[m] = true;
    }
    for (uint64_t c = 10; c <= limit; c *= 10) t.pi_checkpoints.emplace(c, t.pi(c));
    return t;
}

uint64_t PrimeTable::pi(uint64_t x) const {
    if (x > limit) throw std::out_of_range("PrimeTable::pi: x exceeds table limit");
    auto it = std::upper_bound(primes.begin(), primes.end(), x);
    return static_cast<uint64_t>(it - primes.begin());
}

std::vector<PrimeFactor> factorize(uint64_t n, const PrimeTable& table) {
    if (n == 0) throw std::invalid_argument("factorize: n must be positive");
    if (table.limit < isqrt(n)) throw std::invalid_argument("factorize: prime table too small for n");
    std::vector<PrimeFactor> out;
    uint64_t cof = n;
    for (uint64_t p : table.primes) {
        if (p * p > cof) break;
        if (cof % p) continue;
        uint32_t k = 0;
        while (cof % p == 0) {
            cof /= p;
            ++k;
        }
        out.push_back({p, k});
    }
    if (cof > 1) out.push_back({cof, 1});
    return out;
}

}  // namespace aeqd
