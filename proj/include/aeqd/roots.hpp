#pragma once
#include <complex>
#include <cstdint>
#include <vector>

namespace aeqd {

/// A root of unity e(k/N), or the zero marker (character value off the units).
/// Conversion to floating complex happens only at output boundaries.
struct CharValue {
    uint64_t k = 0;
    uint64_t N = 1;
    bool zero = false;

    static CharValue zero_value() { return CharValue{0, 1, true}; }

    CharValue operator*(const CharValue& other) const;
    std::complex<double> to_complex() const;
    bool is_one() const { return !zero && k % N == 0; }
};

/// Exact integer-coefficient sum of N-th roots of unity, an element of Z[x]/(x^N - 1).
/// Equality is decided by reducing the difference modulo the N-th cyclotomic polynomial.
class RootSum {
public:
    explicit RootSum(uint64_t n) : n_(n), coeff_(n, 0) {}

    uint64_t order() const { return n_; }
    void add(uint64_t k, long long weight = 1) { coeff_[k % n_] += weight; }
    void add(const CharValue& v, long long weight = 1);

    bool is_zero() const;
    bool operator==(const RootSum& other) const;
    std::complex<double> to_complex() const;

private:
    uint64_t n_;
    std::vector<long long> coeff_;
};

// Coefficients of the n-th cyclotomic polynomial, ascending degree. Cached.
const std::vector<long long>& cyclotomic_poly(uint64_t n);

}  // namespace aeqd
