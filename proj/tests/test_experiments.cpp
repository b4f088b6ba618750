#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "aeqd/experiments.hpp"
#include "aeqd/primes.hpp"

using namespace aeqd;

TEST_CASE("histogram examples") {
    auto t = build_prime_table(64);

    auto ha = histogram_A(5, 3, t);
    CHECK(ha.counts == std::vector<uint64_t>{2, 1, 2});

    auto h1 = histogram_A(37, 1, t);
    CHECK(h1.counts == std::vector<uint64_t>{37});

    auto hp = histogram_phi(6, 5, t);
    CHECK(hp.counts == std::vector<uint64_t>{0, 2, 3, 0, 1});
    CHECK(hp.coprime_total == 6);

    auto hp1 = histogram_phi(10, 1, t);
    CHECK(hp1.counts == std::vector<uint64_t>{10});
    CHECK(hp1.coprime_total == 10);

    CHECK_THROWS(histogram_A(0, 3, t));
    CHECK_THROWS(histogram_A(10, 0, t));
}

TEST_CASE("histogram totals and nesting") {
    auto t = build_prime_table(256);
    for (uint64_t q : {2ull, 3ull, 7ull, 12ull}) {
        auto small = histogram_A(1000, q, t);
        auto large = histogram_A(50000, q, t);
        CHECK(std::accumulate(small.counts.begin(), small.counts.end(), uint64_t{0}) == 1000);
        CHECK(std::accumulate(large.counts.begin(), large.counts.end(), uint64_t{0}) == 50000);
        for (uint64_t a = 0; a < q; ++a) CHECK(small.counts[a] <= large.counts[a]);
    }
    auto p = histogram_phi(50000, 15, t);
    CHECK(std::accumulate(p.counts.begin(), p.counts.end(), uint64_t{0}) == 50000);
    uint64_t coprime = 0;
    for (uint64_t a = 0; a < 15; ++a)
        if (std::gcd(a, uint64_t{15}) == 1) coprime += p.counts[a];
    CHECK(p.coprime_total == coprime);
}

TEST_CASE("exponential sums over A") {
    auto t = build_prime_table(64);
    auto h = histogram_A(5, 2, t);
    CHECK(exp_sum_A(h, 0).real() == doctest::Approx(5.0));
    auto s = exp_sum_A(h, 1);
    CHECK(s.real() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(s.imag() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK_THROWS(exp_sum_A(h, 2));
    auto hp = histogram_phi(5, 2, t);
    CHECK_THROWS(exp_sum_A(hp, 0));
}

TEST_CASE("character sums over phi") {
    auto t = build_prime_table(64);
    auto h = histogram_phi(6, 3, t);
    auto table = enumerate_characters(3);
    CHECK(char_sum_phi(h, table[table.principal_index()]).real() ==
          doctest::Approx(static_cast<double>(h.coprime_total)));
    auto psi = psi_special(table.group_ptr());
    CHECK(std::abs(char_sum_phi(h, psi)) < 1e-12);  // 3 classes each side

    auto wrong_q = enumerate_characters(5);
    CHECK_THROWS(char_sum_phi(h, wrong_q[0]));
    auto ha = histogram_A(6, 3, t);
    CHECK_THROWS(char_sum_phi(ha, table[0]));
}

TEST_CASE("Fourier inversion reproduces counts exactly") {
    auto t = build_prime_table(512);
    for (uint64_t q : {2ull, 3ull, 5ull, 7ull, 9ull, 12ull}) {
        auto h = histogram_A(100000, q, t);
        CHECK(counts_from_exp_sums(h) == h.counts);
    }
    for (uint64_t q : {3ull, 5ull, 8ull, 15ull}) {
        auto h = histogram_phi(100000, q, t);
        auto table = enumerate_characters(q);
        auto back = counts_from_char_sums(h, table);
        for (uint64_t a = 0; a < q; ++a) {
            if (q > 1 && std::gcd(a, q) != 1) {
                CHECK(back[a] == 0);
            } else {
                CHECK(back[a] == h.counts[a]);
            }
        }
    }
}

TEST_CASE("one pass serves many histogram requests identically") {
    auto t = build_prime_table(512);
    std::vector<HistRequest> reqs = {{HistKind::AModQ, 7},
                                     {HistKind::PhiModQ, 15},
                                     {HistKind::AModQ, 2},
                                     {HistKind::PhiModQ, 3}};
    auto batch = build_histograms(100000, reqs, t);
    REQUIRE(batch.size() == 4);
    CHECK(batch[0].counts == histogram_A(100000, 7, t).counts);
    CHECK(batch[1].counts == histogram_phi(100000, 15, t).counts);
    CHECK(batch[2].counts == histogram_A(100000, 2, t).counts);
    CHECK(batch[3].counts == histogram_phi(100000, 3, t).counts);
    CHECK(batch[1].coprime_total == histogram_phi(100000, 15, t).coprime_total);
}

TEST_CASE("parallel runs match serial exactly") {
    auto t = build_prime_table(512);
    SieveOptions serial;
    serial.threads = 1;
    for (unsigned threads : {2u, 3u, 4u}) {
        SieveOptions par;
        par.threads = threads;
        par.segment_size = 4096;
        auto a = histogram_A(200000, 9, t, serial);
        auto b = histogram_A(200000, 9, t, par);
        CHECK(a.counts == b.counts);
        auto c = histogram_phi(200000, 15, t, serial);
        auto d = histogram_phi(200000, 15, t, par);
        CHECK(c.counts == d.counts);
        CHECK(c.coprime_total == d.coprime_total);
    }
}

TEST_CASE("discrepancy report for A mod q") {
    auto t = build_prime_table(64);
    auto h1 = histogram_A(1000, 1, t);
    auto r1 = theorem12_report(h1, 0.5);
    CHECK(r1.max_abs_dev == doctest::Approx(0.0));

    auto t2 = build_prime_table(1024);
    auto prev = theorem12_report(histogram_A(100000, 6, t2), 0.5);
    auto next = theorem12_report(histogram_A(1000000, 6, t2), 0.5);
    // relative deviation shrinks with x
    CHECK(next.max_abs_dev / 1000000.0 < prev.max_abs_dev / 100000.0);
    CHECK(next.classes.size() == 6);
    for (const auto& c : next.classes) CHECK(c.expected == doctest::Approx(1000000.0 / 6.0));

    CHECK_THROWS(theorem12_report(histogram_phi(100, 3, t), 0.5));
}

TEST_CASE("discrepancy report for phi mod q, q coprime to 6") {
    auto t = build_prime_table(1024);
    auto h = histogram_phi(1000000, 5, t);
    auto rep = theorem13_report(h, 0.5);
    CHECK(rep.classes.size() == 4);
    double expected = static_cast<double>(h.coprime_total) / 4.0;
    for (const auto& c : rep.classes) {
        CHECK(c.expected == doctest::Approx(expected));
        CHECK(std::abs(static_cast<double>(c.count) - expected) <= rep.max_abs_dev);
    }
    // q = 1 trivial equality
    auto h1 = histogram_phi(1000, 1, t);
    CHECK(theorem13_report(h1, 0.5).max_abs_dev == doctest::Approx(0.0));

    CHECK_THROWS(theorem13_report(histogram_phi(100, 15, t), 0.5));
    CHECK_THROWS(theorem13_report(histogram_phi(100, 10, t), 0.5));
}

TEST_CASE("coupled mod-3 report construction") {
    auto t = build_prime_table(1024);
    auto h = histogram_phi(100000, 15, t);
    auto rep = theorem14_report(h, 0.5);
    CHECK(rep.classes.size() == 8);
    // main term for class a uses only residues congruent to a mod 3
    uint64_t joint2 = 0;
    for (uint64_t b = 0; b < 15; ++b)
        if (std::gcd(b, uint64_t{15}) == 1 && b % 3 == 2) joint2 += h.counts[b];
    for (const auto& c : rep.classes)
        if (c.a % 3 == 2) CHECK(c.expected == doctest::Approx(2.0 * joint2 / 8.0));

    CHECK_THROWS(theorem14_report(histogram_phi(100, 5, t), 0.5));
    CHECK_THROWS(theorem14_report(histogram_A(100, 15, t), 0.5));
}

TEST_CASE("prime reciprocal residual profile") {
    auto t = build_prime_table(1000000);
    // q = 1: residual drifts toward the Mertens constant
    auto pts = lemma42_profile(1, {1000, 100000, 1000000}, t);
    REQUIRE(pts.size() == 3);
    CHECK(pts.back().residual == doctest::Approx(0.2615).epsilon(0.01));

    auto pts5 = lemma42_profile(5, {10000, 100000, 1000000}, t);
    double lo = pts5[0].residual, hi = pts5[0].residual;
    for (const auto& p : pts5) {
        lo = std::min(lo, p.residual);
        hi = std::max(hi, p.residual);
    }
    CHECK(hi - lo <= 0.5);

    CHECK_THROWS(lemma42_profile(1, {}, t));
    CHECK_THROWS(lemma42_profile(1, {uint64_t{1} << 40}, t));
}

TEST_CASE("coprime density ratio") {
    auto t = build_prime_table(1024);
    auto h1 = histogram_phi(1000, 1, t);
    CHECK(prop41_ratio(h1) == doctest::Approx(1.0));
    auto h5 = histogram_phi(1000000, 5, t);
    double r = prop41_ratio(h5);
    CHECK(r > 0.1);
    CHECK(r < 10.0);
    CHECK_THROWS(prop41_ratio(histogram_phi(100, 6, t)));
    CHECK_THROWS(prop41_ratio(histogram_A(100, 5, t)));
}

TEST_CASE("phi mod 3 density constants at moderate x") {
    auto t = build_prime_table(1024);
    auto h = histogram_phi(1000000, 3, t);
    auto [c1, c2] = dence_pomerance(h);
    // loose at x = 1e6: just the right order and the right ordering
    CHECK(c1 > c2);
    CHECK(c1 > 0.3);
    CHECK(c1 < 1.2);
    CHECK(c2 > 0.15);
    CHECK(c2 < 0.7);
    CHECK_THROWS(dence_pomerance(histogram_phi(100, 5, t)));
}

TEST_CASE("quarter-range reduction inequality") {
    auto t = build_prime_table(1024);
    CHECK(verify_reduction_inequality(10000, 3, 1, t).holds);
    CHECK(verify_reduction_inequality(100000, 15, 2, t).holds);
    CHECK(verify_reduction_inequality(100000, 21, 4, t).holds);
    for (uint64_t x : {100ull, 1000ull, 5000ull})
        for (uint64_t a : {1ull, 2ull}) CHECK(verify_reduction_inequality(x, 3, a, t).holds);

    // the doubling map behind the inequality: n <= x/4 lands at 2n and 4n <= x,
    // injectively, with phi doubling along the chain for even n
    auto recs = sieve_segment(1, 10000, t);
    for (uint64_t n = 2; n <= 2500; ++n) {
        CHECK(2 * n <= 10000);
        CHECK(4 * n <= 10000);
        if (n % 2 == 0) {
            CHECK(recs[2 * n - 1].phi == 2 * recs[n - 1].phi);
            CHECK(recs[4 * n - 1].phi == 4 * recs[n - 1].phi);
        }
    }

    CHECK_THROWS(verify_reduction_inequality(1000, 5, 1, t));
    CHECK_THROWS(verify_reduction_inequality(1000, 3, 3, t));
}

TEST_CASE("sieving condition failures") {
    auto t = build_prime_table(1024);
    uint64_t x = 10000;

    // z >= x: every n fails the large-prime condition
    auto all = conditions_filter(x, 10.0, static_cast<double>(x), 1, t);
    CHECK(all.coprime_total == x);
    CHECK(all.fail_large_prime == x);

    // y >= x: no repeated prime above y, and every n has P2(n) <= y
    auto vac = conditions_filter(x, static_cast<double>(x), 100.0, 1, t);
    CHECK(vac.fail_repeated_prime == 0);
    CHECK(vac.fail_second_prime == x);

    // coprimality filter restricts the population
    auto f = conditions_filter(x, 20.0, 1000.0, 5, t);
    auto h = histogram_phi(x, 5, t);
    CHECK(f.coprime_total == h.coprime_total);
    CHECK(f.fail_large_prime <= f.coprime_total);
    CHECK(f.fail_repeated_prime <= f.coprime_total);
    CHECK(f.fail_second_prime <= f.coprime_total);
}
