#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "aeqd/primes.hpp"
#include "aeqd/sieve.hpp"
#include "oracles.hpp"

using namespace aeqd;

TEST_CASE("prime table basics") {
    auto t = build_prime_table(10);
    CHECK(t.primes == std::vector<uint64_t>{2, 3, 5, 7});
    CHECK(t.pi(10) == 4);
    CHECK(t.pi(1) == 0);

    auto t2 = build_prime_table(2);
    CHECK(t2.primes == std::vector<uint64_t>{2});
    CHECK(t2.pi(2) == 1);

    CHECK_THROWS(build_prime_table(1));
    CHECK_THROWS(build_prime_table(uint64_t{1} << 40));
}

TEST_CASE("pi(10^6) against the simple sieve oracle") {
    auto t = build_prime_table(1000000);
    CHECK(t.pi(1000000) == 78498);
    CHECK(t.pi(1000000) == oracle::primes_upto(1000000).size());
    CHECK(t.primes.size() == t.pi(t.limit));
    CHECK(t.pi_checkpoints.at(100000) == 9592);
}

TEST_CASE("segment record examples") {
    auto t = build_prime_table(100);
    auto recs = sieve_segment(1, 100, t);

    auto& r12 = recs[11];
    CHECK(r12.n == 12);
    CHECK(r12.bigA == 7);
    CHECK(r12.phi == 4);
    CHECK(r12.p1 == 3);
    CHECK(r12.p2 == 2);
    CHECK(r12.maxSquaredPrime == 2);

    auto& r1 = recs[0];
    CHECK(r1.bigA == 0);
    CHECK(r1.phi == 1);
    CHECK(r1.p1 == 1);
    CHECK(r1.p2 == 1);
    CHECK(r1.maxSquaredPrime == 1);

    auto& r100 = recs[99];
    CHECK(r100.bigA == 14);
    CHECK(r100.phi == 40);
    CHECK(r100.p1 == 5);
    CHECK(r100.p2 == 5);
    CHECK(r100.maxSquaredPrime == 5);

    // P2 counts multiplicity
    CHECK(recs[24].p1 == 5);
    CHECK(recs[24].p2 == 5);
}

TEST_CASE("oracle equivalence up to 1e5") {
    auto t = build_prime_table(400);
    auto recs = sieve_segment(1, 100000, t);
    for (const auto& r : recs) {
        if (r.n == 1) continue;
        CHECK(r.bigA == oracle::big_a(r.n));
        CHECK(r.phi == oracle::phi(r.n));
        auto [p1, p2] = oracle::top_two_primes(r.n);
        CHECK(r.p1 == p1);
        CHECK(r.p2 == p2);
        CHECK(r.maxSquaredPrime == oracle::max_squared_prime(r.n));
    }
}

TEST_CASE("additivity fuzz on coprime pairs") {
    auto t = build_prime_table(1024);
    auto recs = sieve_segment(1, 1000000, t);
    std::mt19937_64 rng(20240817);
    std::uniform_int_distribution<uint64_t> dist(2, 1000);
    int done = 0;
    while (done < 500) {
        uint64_t m = dist(rng), n = dist(rng);
        if (std::gcd(m, n) != 1) continue;
        uint64_t mn = m * n;
        CHECK(recs[mn - 1].bigA == recs[m - 1].bigA + recs[n - 1].bigA);
        CHECK(recs[mn - 1].phi == recs[m - 1].phi * recs[n - 1].phi);
        ++done;
    }
}

TEST_CASE("segment independence") {
    auto t = build_prime_table(1024);
    auto whole = sieve_segment(1, 1000000, t);
    SieveOptions opt;
    opt.segment_size = 10000;
    opt.threads = 3;
    std::vector<SegmentRecord> pieced(whole.size());
    for_each_segment(1, 1000000, t, opt, [&](unsigned, const std::vector<SegmentRecord>& recs) {
        for (const auto& r : recs) pieced[r.n - 1] = r;
    });
    for (size_t i = 0; i < whole.size(); ++i) {
        CHECK(pieced[i].n == whole[i].n);
        CHECK(pieced[i].bigA == whole[i].bigA);
        CHECK(pieced[i].phi == whole[i].phi);
        CHECK(pieced[i].p1 == whole[i].p1);
        CHECK(pieced[i].p2 == whole[i].p2);
        CHECK(pieced[i].maxSquaredPrime == whole[i].maxSquaredPrime);
    }
}

TEST_CASE("sieve precondition errors") {
    auto t = build_prime_table(10);
    CHECK_THROWS(sieve_segment(1, 1000, t));  // table too small
    CHECK_THROWS(sieve_segment(5, 4, t));
}

TEST_CASE("psi smooth count") {
    auto t = build_prime_table(100);
    CHECK(psi_smooth_count(10, 2, t) == 4);  // 1, 2, 4, 8
    CHECK(psi_smooth_count(100, 200, t) == 100);
    CHECK(psi_smooth_count(100, 5, t) == 34);
    CHECK(psi_smooth_count(100, 5, t) == oracle::psi_smooth(100, 5));
}

TEST_CASE("psi brute-force equivalence grid") {
    auto t = build_prime_table(100);
    for (uint64_t x : {10ull, 100ull, 1000ull, 10000ull})
        for (uint64_t z : {1ull, 2ull, 3ull, 7ull, 30ull, 100ull})
            CHECK(psi_smooth_count(x, z, t) == oracle::psi_smooth(x, z));
}

TEST_CASE("decompose examples") {
    auto t = build_prime_table(4000);

    auto d = decompose(9381, 10, 50, t);  // 3 * 53 * 59
    REQUIRE(d.has_value());
    CHECK(d->m == 3);
    CHECK(d->tail == std::vector<uint64_t>{53, 59});

    CHECK_FALSE(decompose(32, 10, 50, t).has_value());          // z-smooth
    CHECK_FALSE(decompose(3 * 53 * 53, 10, 50, t).has_value()); // 53 > y repeats
}

TEST_CASE("decompose round-trip to 1e6") {
    auto t = build_prime_table(1024);
    const uint64_t y = 20, z = 1000;
    for (uint64_t n = 2; n <= 1000000; ++n) {
        auto d = decompose(n, y, z, t);
        auto f = oracle::factor(n);
        uint64_t pmax = f.rbegin()->first;
        bool repeated_large = false;
        for (auto [p, k] : f)
            if (p > y && k > 1) repeated_large = true;
        if (pmax <= z || repeated_large) {
            CHECK_FALSE(d.has_value());
            continue;
        }
        REQUIRE(d.has_value());
        uint64_t prod = d->m;
        uint64_t prev = y;
        for (uint64_t p : d->tail) {
            CHECK(p > prev);
            prev = p;
            prod *= p;
        }
        CHECK(prod == n);
        CHECK(d->tail.back() > z);
        // m is y-smooth
        auto fm = oracle::factor(d->m);
        if (!fm.empty()) CHECK(fm.rbegin()->first <= y);
    }
}

TEST_CASE("segment cache round-trip") {
    auto t = build_prime_table(64);
    auto recs = sieve_segment(100, 300, t);
    std::stringstream buf;
    write_segment_cache(buf, recs);
    auto back = read_segment_cache(buf);
    REQUIRE(back.size() == recs.size());
    for (size_t i = 0; i < recs.size(); ++i) {
        CHECK(back[i].n == recs[i].n);
        CHECK(back[i].bigA == recs[i].bigA);
        CHECK(back[i].phi == recs[i].phi);
        CHECK(back[i].p1 == recs[i].p1);
        CHECK(back[i].p2 == recs[i].p2);
        CHECK(back[i].maxSquaredPrime == recs[i].maxSquaredPrime);
    }
    std::stringstream bad("XXXX");
    CHECK_THROWS(read_segment_cache(bad));
}
