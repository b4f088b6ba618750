#include "aeqd/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace aeqd {

namespace {

constexpr long double kTauL = 6.283185307179586476925286766559L;

unsigned resolve_threads(const SieveOptions& opt) {
    unsigned t = opt.threads ? opt.threads : std::thread::hardware_concurrency();
    return t ? t : 1;
}

std::vector<bool> coprime_mask(uint64_t q) {
    std::vector<bool> mask(q ? q : 1, false);
    for (uint64_t a = 0; a < mask.size(); ++a) mask[a] = std::gcd(a, q) == 1;
    return mask;
}

double alpha_double(uint64_t q) {
    auto a = alpha(q);
    return boost::rational_cast<double>(a.value);
}

}  // namespace

std::vector<ResidueHistogram> build_histograms(uint64_t x, const std::vector<HistRequest>& reqs,
                                               const PrimeTable& table, const SieveOptions& opt) {
    if (x < 1) throw std::invalid_argument("build_histograms: require x >= 1");
    for (const auto& r : reqs)
        if (r.q < 1) throw std::invalid_argument("build_histograms: require q >= 1");

    SieveOptions o = opt;
    o.threads = resolve_threads(opt);
    // per-thread count arrays, merged in thread order
    std::vector<std::vector<std::vector<uint64_t>>> partial(
        o.threads, std::vector<std::vector<uint64_t>>(reqs.size()));
    for (auto& per_thread : partial)
        for (size_t i = 0; i < reqs.size(); ++i) per_thread[i].assign(reqs[i].q, 0);

    for_each_segment(1, x, table, o, [&](unsigned tid, const std::vector<SegmentRecord>& recs) {
        auto& acc = partial[tid];
        for (const auto& rec : recs) {
            for (size_t i = 0; i < reqs.size(); ++i) {
                uint64_t v = reqs[i].kind == HistKind::AModQ ? rec.bigA : rec.phi;
                ++acc[i][v % reqs[i].q];
            }
        }
    });

    std::vector<ResidueHistogram> out(reqs.size());
    for (size_t i = 0; i < reqs.size(); ++i) {
        out[i].kind = reqs[i].kind;
        out[i].q = reqs[i].q;
        out[i].x = x;
        out[i].counts.assign(reqs[i].q, 0);
        for (unsigned t = 0; t < o.threads; ++t)
            for (uint64_t a = 0; a < reqs[i].q; ++a) out[i].counts[a] += partial[t][i][a];
        if (reqs[i].kind == HistKind::PhiModQ) {
            auto mask = coprime_mask(reqs[i].q);
            for (uint64_t a = 0; a < reqs[i].q; ++a)
                if (mask[a]) out[i].coprime_total += out[i].counts[a];
        }
    }
    return out;
}

ResidueHistogram histogram_A(uint64_t x, uint64_t q, const PrimeTable& table,
                             const SieveOptions& opt) {
    return build_histograms(x, {{HistKind::AModQ, q}}, table, opt)[0];
}

ResidueHistogram histogram_phi(uint64_t x, uint64_t q, const PrimeTable& table,
                               const SieveOptions& opt) {
    return build_histograms(x, {{HistKind::PhiModQ, q}}, table, opt)[0];
}

std::complex<double> exp_sum_A(const ResidueHistogram& hist, uint64_t r) {
    if (hist.kind != HistKind::AModQ) throw std::invalid_argument("exp_sum_A: wrong histogram kind");
    if (r >= hist.q) throw std::invalid_argument("exp_sum_A: require 0 <= r < q");
    uint64_t q = hist.q;
    std::complex<long double> s{0.0L, 0.0L};
    for (uint64_t a = 0; a < q; ++a) {
        long double t = kTauL * static_cast<long double>(r * a % q) / static_cast<long double>(q);
        s += static_cast<long double>(hist.counts[a]) *
             std::complex<long double>{std::cos(t), std::sin(t)};
    }
    return {static_cast<double>(s.real()), static_cast<double>(s.imag())};
}

std::complex<double> char_sum_phi(const ResidueHistogram& hist, const DirichletCharacter& chi) {
    if (hist.kind != HistKind::PhiModQ)
        throw std::invalid_argument("char_sum_phi: wrong histogram kind");
    if (chi.modulus() != hist.q) throw std::invalid_argument("char_sum_phi: modulus mismatch");
    std::complex<long double> s{0.0L, 0.0L};
    for (uint64_t a = 0; a < hist.q; ++a) {
        if (hist.counts[a] == 0) continue;
        CharValue v = chi.value(a);
        if (v.zero) continue;
        long double t = kTauL * static_cast<long double>(v.k) / static_cast<long double>(v.N);
        s += static_cast<long double>(hist.counts[a]) *
             std::complex<long double>{std::cos(t), std::sin(t)};
    }
    return {static_cast<double>(s.real()), static_cast<double>(s.imag())};
}

std::vector<uint64_t> counts_from_exp_sums(const ResidueHistogram& hist) {
    uint64_t q = hist.q;
    std::vector<std::complex<long double>> sums(q);
    for (uint64_t r = 0; r < q; ++r) {
        auto s = exp_sum_A(hist, r);
        sums[r] = {s.real(), s.imag()};
    }
    std::vector<uint64_t> out(q, 0);
    for (uint64_t a = 0; a < q; ++a) {
        std::complex<long double> acc{0.0L, 0.0L};
        for (uint64_t r = 0; r < q; ++r) {
            long double t = -kTauL * static_cast<long double>(a * r % q) / static_cast<long double>(q);
            acc += sums[r] * std::complex<long double>{std::cos(t), std::sin(t)};
        }
        out[a] = static_cast<uint64_t>(llroundl(acc.real() / static_cast<long double>(q)));
    }
    return out;
}

std::vector<uint64_t> counts_from_char_sums(const ResidueHistogram& hist,
                                            const CharacterTable& table) {
    if (table.modulus() != hist.q)
        throw std::invalid_argument("counts_from_char_sums: modulus mismatch");
    uint64_t q = hist.q;
    std::vector<std::complex<long double>> sums(table.size());
    for (size_t i = 0; i < table.size(); ++i) {
        auto s = char_sum_phi(hist, table[i]);
        sums[i] = {s.real(), s.imag()};
    }
    std::vector<uint64_t> out(q, 0);
    long double phi_q = static_cast<long double>(table.size());
    for (uint64_t a = 0; a < q; ++a) {
        if (q > 1 && std::gcd(a, q) != 1) continue;
        std::complex<long double> acc{0.0L, 0.0L};
        for (size_t i = 0; i < table.size(); ++i) {
            CharValue v = table[i].value(a);
            if (v.zero) continue;
            long double t = -kTauL * static_cast<long double>(v.k) / static_cast<long double>(v.N);
            acc += sums[i] * std::complex<long double>{std::cos(t), std::sin(t)};
        }
        out[a] = static_cast<uint64_t>(llroundl(acc.real() / phi_q));
    }
    return out;
}

DiscrepancyReport theorem12_report(const ResidueHistogram& hist, double epsilon) {
    if (hist.kind != HistKind::AModQ)
        throw std::invalid_argument("theorem12_report: wrong histogram kind");
    DiscrepancyReport rep;
    rep.model = "A-equidistribution";
    rep.q = hist.q;
    rep.x = hist.x;
    rep.epsilon = epsilon;
    double x = static_cast<double>(hist.x);
    double expected = x / static_cast<double>(hist.q);
    double scale = static_cast<double>(hist.q) * std::pow(std::log(x), 0.5 - epsilon) / x;
    for (uint64_t a = 0; a < hist.q; ++a) {
        double dev = std::abs(static_cast<double>(hist.counts[a]) - expected);
        rep.classes.push_back({a, hist.counts[a], expected, dev, dev * scale});
        rep.max_abs_dev = std::max(rep.max_abs_dev, dev);
    }
    rep.normalized = rep.max_abs_dev * scale;
    return rep;
}

DiscrepancyReport theorem13_report(const ResidueHistogram& hist, double epsilon) {
    if (hist.kind != HistKind::PhiModQ)
        throw std::invalid_argument("theorem13_report: wrong histogram kind");
    if (std::gcd(hist.q, uint64_t{6}) != 1)
        throw std::invalid_argument("theorem13_report: q must be coprime to 6");
    DiscrepancyReport rep;
    rep.model = "phi-weak-equidistribution";
    rep.q = hist.q;
    rep.x = hist.x;
    rep.epsilon = epsilon;
    double x = static_cast<double>(hist.x);
    double a_q = alpha_double(hist.q);
    uint64_t phi_q = 1;
    auto mask = coprime_mask(hist.q);
    if (hist.q > 1) {
        phi_q = 0;
        for (uint64_t a = 1; a < hist.q; ++a)
            if (mask[a]) ++phi_q;
    }
    double expected = static_cast<double>(hist.coprime_total) / static_cast<double>(phi_q);
    double scale =
        static_cast<double>(phi_q) * std::pow(std::log(x), 1.0 - a_q * (1.0 / 3.0 + epsilon)) / x;
    for (uint64_t a = 0; a < hist.q; ++a) {
        if (hist.q > 1 && !mask[a]) continue;
        double dev = std::abs(static_cast<double>(hist.counts[a]) - expected);
        rep.classes.push_back({a, hist.counts[a], expected, dev, dev * scale});
        rep.max_abs_dev = std::max(rep.max_abs_dev, dev);
    }
    rep.normalized = rep.max_abs_dev * scale;
    return rep;
}

DiscrepancyReport theorem14_report(const ResidueHistogram& hist, double epsilon) {
    if (hist.kind != HistKind::PhiModQ)
        throw std::invalid_argument("theorem14_report: wrong histogram kind");
    if (std::gcd(hist.q, uint64_t{6}) != 3)
        throw std::invalid_argument("theorem14_report: require gcd(q, 6) = 3");
    DiscrepancyReport rep;
    rep.model = "phi-mod3-coupled";
    rep.q = hist.q;
    rep.x = hist.x;
    rep.epsilon = epsilon;
    double x = static_cast<double>(hist.x);
    double a_q = alpha_double(hist.q);
    auto mask = coprime_mask(hist.q);
    uint64_t phi_q = 0;
    for (uint64_t a = 1; a < hist.q; ++a)
        if (mask[a]) ++phi_q;
    // joint main term: classes of phi(n) mod 3, read off the same histogram since 3 | q
    uint64_t joint[3] = {0, 0, 0};
    for (uint64_t a = 0; a < hist.q; ++a)
        if (mask[a]) joint[a % 3] += hist.counts[a];
    double scale =
        static_cast<double>(phi_q) * std::pow(std::log(x), 1.0 - a_q * (1.0 / 3.0 + epsilon)) / x;
    for (uint64_t a = 0; a < hist.q; ++a) {
        if (!mask[a]) continue;
        double expected = 2.0 * static_cast<double>(joint[a % 3]) / static_cast<double>(phi_q);
        double dev = std::abs(static_cast<double>(hist.counts[a]) - expected);
        rep.classes.push_back({a, hist.counts[a], expected, dev, dev * scale});
        rep.max_abs_dev = std::max(rep.max_abs_dev, dev);
    }
    rep.normalized = rep.max_abs_dev * scale;
    return rep;
}

std::vector<LemmaPoint> lemma42_profile(uint64_t q, std::vector<uint64_t> xs,
                                        const PrimeTable& table) {
    if (q < 1) throw std::invalid_argument("lemma42_profile: require q >= 1");
    if (xs.empty()) throw std::invalid_argument("lemma42_profile: empty grid");
    std::sort(xs.begin(), xs.end());
    if (xs.back() > table.limit)
        throw std::invalid_argument("lemma42_profile: grid exceeds prime table limit");
    double a_q = alpha_double(q);
    std::vector<LemmaPoint> out;
    long double sum = 0.0L;
    size_t next = 0;
    for (uint64_t p : table.primes) {
        while (next < xs.size() && p > xs[next]) {
            out.push_back({xs[next], static_cast<double>(sum) - a_q * std::log(std::log(xs[next]))});
            ++next;
        }
        if (next == xs.size()) break;
        if (std::gcd(p - 1, q) == 1) sum += 1.0L / static_cast<long double>(p);
    }
    while (next < xs.size()) {
        out.push_back({xs[next], static_cast<double>(sum) - a_q * std::log(std::log(xs[next]))});
        ++next;
    }
    return out;
}

double prop41_ratio(const ResidueHistogram& hist) {
    if (hist.kind != HistKind::PhiModQ) throw std::invalid_argument("prop41_ratio: wrong kind");
    if (hist.q % 2 == 0) throw std::invalid_argument("prop41_ratio: q must be odd");
    double x = static_cast<double>(hist.x);
    double a_q = alpha_double(hist.q);
    return static_cast<double>(hist.coprime_total) / (x / std::pow(std::log(x), 1.0 - a_q));
}

std::pair<double, double> dence_pomerance(const ResidueHistogram& hist) {
    if (hist.kind != HistKind::PhiModQ || hist.q != 3)
        throw std::invalid_argument("dence_pomerance: needs a phi histogram mod 3");
    double norm = static_cast<double>(hist.x) / std::sqrt(std::log(static_cast<double>(hist.x)));
    return {static_cast<double>(hist.counts[1]) / norm, static_cast<double>(hist.counts[2]) / norm};
}

ReductionCheck verify_reduction_inequality(uint64_t x, uint64_t q, uint64_t a,
                                           const PrimeTable& table, const SieveOptions& opt) {
    if (q % 3 != 0 || q % 2 == 0)
        throw std::invalid_argument("verify_reduction_inequality: require odd q with 3 | q");
    if (std::gcd(a, q) != 1)
        throw std::invalid_argument("verify_reduction_inequality: a must be coprime to q");
    ResidueHistogram full = histogram_phi(x, q, table, opt);
    ResidueHistogram quarter = histogram_phi(x / 4, q, table, opt);
    auto mask = coprime_mask(q);
    ReductionCheck chk;
    for (uint64_t b = 0; b < q; ++b)
        if (mask[b] && b % 3 == a % 3) chk.lhs_count += full.counts[b];
    chk.rhs_count = quarter.coprime_total;
    chk.holds = 3 * chk.lhs_count >= chk.rhs_count;
    return chk;
}

ConditionFailures conditions_filter(uint64_t x, double y, double z, uint64_t q,
                                    const PrimeTable& table, const SieveOptions& opt) {
    SieveOptions o = opt;
    o.threads = resolve_threads(opt);
    auto mask = coprime_mask(q);
    std::vector<ConditionFailures> partial(o.threads);
    for_each_segment(1, x, table, o, [&](unsigned tid, const std::vector<SegmentRecord>& recs) {
        auto& acc = partial[tid];
        for (const auto& r : recs) {
            if (!mask[r.phi % q]) continue;
            ++acc.coprime_total;
            if (static_cast<double>(r.p1) <= z) ++acc.fail_large_prime;
            if (static_cast<double>(r.maxSquaredPrime) > y) ++acc.fail_repeated_prime;
            if (static_cast<double>(r.p2) <= y) ++acc.fail_second_prime;
        }
    });
    ConditionFailures total;
    for (const auto& p : partial) {
        total.fail_large_prime += p.fail_large_prime;
        total.fail_repeated_prime += p.fail_repeated_prime;
        total.fail_second_prime += p.fail_second_prime;
        total.coprime_total += p.coprime_total;
    }
    return total;
}

}  // namespace aeqd
