#include "aeqd/sieve.hpp"

#include <algorithm>
#include <atomic>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <thread>

namespace aeqd {

namespace {

constexpr uint64_t kMaxRange = uint64_t{1} << 40;  // keeps bigA/phi far from overflow

void check_range(uint64_t lo, uint64_t hi, const PrimeTable& table) {
    if (lo < 1 || lo > hi) throw std::invalid_argument("sieve: require 1 <= lo <= hi");
    if (hi > kMaxRange) throw std::invalid_argument("sieve: range capped at 2^40");
    if (table.limit < isqrt(hi))
        throw std::invalid_argument("sieve: prime table smaller than sqrt(hi)");
}

void sieve_segment_into(uint64_t lo, uint64_t hi, const PrimeTable& table,
                        std::vector<uint64_t>& cof, std::vector<SegmentRecord>& out) {
    uint64_t len = hi - lo + 1;
    out.resize(len);
    cof.resize(len);
    for (uint64_t i = 0; i < len; ++i) {
        out[i] = SegmentRecord{lo + i, 0, 1, 1, 1, 1};
        cof[i] = lo + i;
    }
    for (uint64_t p : table.primes) {
        if (p * p > hi) break;
        uint64_t start = (lo + p - 1) / p * p;
        for (uint64_t m = start; m <= hi; m += p) {
            uint64_t i = m - lo;
            uint64_t c = cof[i];
            uint32_t k = 0;
            uint64_t ppow = 1;
            while (c % p == 0) {
                c /= p;
                ++k;
                ppow *= p;
            }
            cof[i] = c;
            SegmentRecord& r = out[i];
            r.bigA += static_cast<uint64_t>(k) * p;
            r.phi *= ppow / p * (p - 1);
            // primes arrive in increasing order
            if (k >= 2) {
                r.p1 = r.p2 = r.maxSquaredPrime = p;
            } else {
                r.p2 = r.p1;
                r.p1 = p;
            }
        }
    }
    for (uint64_t i = 0; i < len; ++i) {
        uint64_t c = cof[i];
        if (c > 1) {  // leftover cofactor is the largest prime factor, multiplicity 1
            SegmentRecord& r = out[i];
            r.bigA += c;
            r.phi *= c - 1;
            r.p2 = r.p1;
            r.p1 = c;
        }
    }
    if (lo == 1) out[0].phi = 1;  // phi(1) = 1, untouched by the loop anyway
}

}  // namespace

std::vector<SegmentRecord> sieve_segment(uint64_t lo, uint64_t hi, const PrimeTable& table) {
    check_range(lo, hi, table);
    std::vector<uint64_t> cof;
    std::vector<SegmentRecord> out;
    sieve_segment_into(lo, hi, table, cof, out);
    return out;
}

void for_each_segment(uint64_t lo, uint64_t hi, const PrimeTable& table, const SieveOptions& opt,
                      const std::function<void(unsigned, const std::vector<SegmentRecord>&)>& fn) {
    check_range(lo, hi, table);
    uint64_t seg = opt.segment_size ? opt.segment_size : (uint64_t{1} << 20);
    uint64_t nsegs = (hi - lo) / seg + 1;
    unsigned threads = opt.threads ? opt.threads : std::thread::hardware_concurrency();
    if (threads == 0) threads = 1;
    if (threads > nsegs) threads = static_cast<unsigned>(nsegs);

    std::atomic<uint64_t> next{0};
    auto worker = [&](unsigned tid) {
        std::vector<uint64_t> cof;
        std::vector<SegmentRecord> records;
        for (;;) {
            uint64_t s = next.fetch_add(1);
            if (s >= nsegs) break;
            uint64_t slo = lo + s * seg;
            uint64_t shi = std::min(hi, slo + seg - 1);
            sieve_segment_into(slo, shi, table, cof, records);
            fn(tid, records);
        }
    };
    if (threads == 1) {
        worker(0);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (auto& t : pool) t.join();
}

uint64_t psi_smooth_count(uint64_t x, uint64_t z, const PrimeTable& table, const SieveOptions& opt) {
    if (x < 1 || z < 1) throw std::invalid_argument("psi_smooth_count: require x, z >= 1");
    if (z >= x) return x;
    SieveOptions o = opt;
    if (o.threads == 0) o.threads = std::thread::hardware_concurrency();
    if (o.threads == 0) o.threads = 1;
    std::vector<uint64_t> partial(o.threads, 0);
    for_each_segment(1, x, table, o, [&](unsigned tid, const std::vector<SegmentRecord>& recs) {
        uint64_t c = 0;
        for (const auto& r : recs)
            if (r.p1 <= z) ++c;
        partial[tid] += c;
    });
    uint64_t total = 0;
    for (uint64_t c : partial) total += c;
    return total;
}

std::optional<Decomposition> decompose(uint64_t n, uint64_t y, uint64_t z, const PrimeTable& table) {
    if (n < 2 || y < 1 || z < y) throw std::invalid_argument("decompose: require n >= 2, 1 <= y <= z");
    auto factors = factorize(n, table);
    if (factors.back().p <= z) return std::nullopt;  // z-smooth
    Decomposition d{1, {}};
    for (const auto& f : factors) {
        if (f.p <= y) {
            for (uint32_t i = 0; i < f.k; ++i) d.m *= f.p;
        } else {
            if (f.k > 1) return std::nullopt;  // repeated prime factor exceeding y
            d.tail.push_back(f.p);
        }
    }
    return d;
}

namespace {

void put_u64(std::ostream& out, uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    out.write(reinterpret_cast<const char*>(b), 8);
}

bool get_u64(std::istream& in, uint64_t& v) {
    unsigned char b[8];
    if (!in.read(reinterpret_cast<char*>(b), 8)) return false;
    v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(b[i]) << (8 * i);
    return true;
}

constexpr char kMagic[4] = {'A', 'E', 'Q', 'D'};
constexpr unsigned char kVersion = 1;

}  // namespace

void write_segment_cache(std::ostream& out, const std::vector<SegmentRecord>& records) {
    out.write(kMagic, 4);
    out.put(static_cast<char>(kVersion));
    for (const auto& r : records) {
        put_u64(out, r.n);
        put_u64(out, r.bigA);
        put_u64(out, r.phi);
        put_u64(out, r.p1);
        put_u64(out, r.p2);
        put_u64(out, r.maxSquaredPrime);
    }
}

std::vector<SegmentRecord> read_segment_cache(std::istream& in) {
    char magic[4];
    if (!in.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0)
        throw std::runtime_error("segment cache: bad magic");
    int version = in.get();
    if (version != kVersion) throw std::runtime_error("segment cache: unsupported version");
    std::vector<SegmentRecord> out;
    SegmentRecord r;
    while (get_u64(in, r.n)) {
        if (!get_u64(in, r.bigA) || !get_u64(in, r.phi) || !get_u64(in, r.p1) ||
            !get_u64(in, r.p2) || !get_u64(in, r.maxSquaredPrime))
            throw std::runtime_error("segment cache: truncated record");
        out.push_back(r);
    }
    return out;
}

void write_segment_cache_file(const std::string& path, const std::vector<SegmentRecord>& records) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("segment cache: cannot open " + path);
    write_segment_cache(out, records);
}

std::vector<SegmentRecord> read_segment_cache_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("segment cache: cannot open " + path);
    return read_segment_cache(in);
}

}  // namespace aeqd
