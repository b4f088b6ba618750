#pragma once
#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "aeqd/characters.hpp"
#include "aeqd/sieve.hpp"

namespace aeqd {

enum class HistKind { AModQ, PhiModQ };

struct HistRequest {
    HistKind kind;
    uint64_t q;
};

/// Integer counts of a sieved function's residues mod q over n <= x.
/// The universal intermediate: every sum and count downstream reduces over it.
struct ResidueHistogram {
    HistKind kind = HistKind::AModQ;
    uint64_t q = 1;
    uint64_t x = 0;
    std::vector<uint64_t> counts;  // length q
    uint64_t coprime_total = 0;    // phi kind: #{n <= x : gcd(phi(n), q) = 1}
};

// One sieve pass feeding any number of histograms; parallel merge is integer addition.
std::vector<ResidueHistogram> build_histograms(uint64_t x, const std::vector<HistRequest>& reqs,
                                               const PrimeTable& table, const SieveOptions& opt = {});
ResidueHistogram histogram_A(uint64_t x, uint64_t q, const PrimeTable& table,
                             const SieveOptions& opt = {});
ResidueHistogram histogram_phi(uint64_t x, uint64_t q, const PrimeTable& table,
                               const SieveOptions& opt = {});

// sum over n <= x of e(r A(n)/q), reduced over the histogram
std::complex<double> exp_sum_A(const ResidueHistogram& hist, uint64_t r);
// sum over n <= x of chi(phi(n))
std::complex<double> char_sum_phi(const ResidueHistogram& hist, const DirichletCharacter& chi);

// Fourier inversion: counts recovered from the full set of exponential / character sums.
std::vector<uint64_t> counts_from_exp_sums(const ResidueHistogram& hist);
// coprime classes only; non-coprime entries are returned as zero
std::vector<uint64_t> counts_from_char_sums(const ResidueHistogram& hist,
                                            const CharacterTable& table);

struct ClassDeviation {
    uint64_t a;
    uint64_t count;
    double expected;
    double deviation;
    double normalized;
};

struct DiscrepancyReport {
    std::string model;
    uint64_t q = 1;
    uint64_t x = 0;
    double epsilon = 0.0;
    double max_abs_dev = 0.0;
    double normalized = 0.0;
    std::vector<ClassDeviation> classes;
};

DiscrepancyReport theorem12_report(const ResidueHistogram& hist, double epsilon);
DiscrepancyReport theorem13_report(const ResidueHistogram& hist, double epsilon);
DiscrepancyReport theorem14_report(const ResidueHistogram& hist, double epsilon);

struct LemmaPoint {
    uint64_t x;
    double residual;  // sum over p <= x of 1[(p-1,q)=1]/p  -  alpha(q) loglog x
};
std::vector<LemmaPoint> lemma42_profile(uint64_t q, std::vector<uint64_t> xs,
                                        const PrimeTable& table);

// coprime_total / (x / (log x)^(1 - alpha(q)))
double prop41_ratio(const ResidueHistogram& hist);

// counts of phi(n) = 1, 2 mod 3, each normalized by x/sqrt(log x)
std::pair<double, double> dence_pomerance(const ResidueHistogram& hist);

struct ReductionCheck {
    bool holds = false;
    uint64_t lhs_count = 0;  // #{n <= x : (phi(n),q)=1, phi(n) = a mod 3}
    uint64_t rhs_count = 0;  // #{n <= x/4 : (phi(n),q)=1}
};
// 3 * lhs_count >= rhs_count (proved via the n -> 2n / 4n injections)
ReductionCheck verify_reduction_inequality(uint64_t x, uint64_t q, uint64_t a,
                                           const PrimeTable& table, const SieveOptions& opt = {});

struct ConditionFailures {
    uint64_t fail_large_prime = 0;     // (i)   P(n) > z fails
    uint64_t fail_repeated_prime = 0;  // (ii)  some p > y has p^2 | n
    uint64_t fail_second_prime = 0;    // (iii) P2(n) > y fails
    uint64_t coprime_total = 0;
};
// failures counted among n <= x with gcd(phi(n), q) = 1
ConditionFailures conditions_filter(uint64_t x, double y, double z, uint64_t q,
                                    const PrimeTable& table, const SieveOptions& opt = {});

}  // namespace aeqd
