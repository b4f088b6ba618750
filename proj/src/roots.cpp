#include "aeqd/roots.hpp"

#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

namespace aeqd {

namespace {
constexpr double kTau = 6.283185307179586476925286766559;

// exact division of integer polynomials, num / den with den monic
std::vector<long long> poly_divide_exact(std::vector<long long> num, const std::vector<long long>& den) {
    if (den.empty() || den.back() != 1) throw std::logic_error("poly_divide_exact: divisor not monic");
    if (num.size() < den.size()) throw std::logic_error("poly_divide_exact: degree underflow");
    std::vector<long long> quot(num.size() - den.size() + 1, 0);
    for (size_t i = quot.size(); i-- > 0;) {
        long long c = num[i + den.size() - 1];
        quot[i] = c;
        if (c == 0) continue;
        for (size_t j = 0; j < den.size(); ++j) num[i + j] -= c * den[j];
    }
    for (long long c : num)
        if (c != 0) throw std::logic_error("poly_divide_exact: nonzero remainder");
    return quot;
}
}  // namespace

const std::vector<long long>& cyclotomic_poly(uint64_t n) {
    static std::map<uint64_t, std::vector<long long>> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    if (n == 1) return cache.emplace(1, std::vector<long long>{-1, 1}).first->second;

    // x^n - 1 divided by the cyclotomics of all proper divisors
    std::vector<long long> p(n + 1, 0);
    p[0] = -1;
    p[n] = 1;
    for (uint64_t d = 1; d < n; ++d)
        if (n % d == 0) p = poly_divide_exact(std::move(p), cyclotomic_poly(d));
    return cache.emplace(n, std::move(p)).first->second;
}

CharValue CharValue::operator*(const CharValue& other) const {
    if (zero || other.zero) return zero_value();
    uint64_t l = std::lcm(N, other.N);
    return CharValue{(k * (l / N) + other.k * (l / other.N)) % l, l, false};
}

std::complex<double> CharValue::to_complex() const {
    if (zero) return {0.0, 0.0};
    double t = kTau * static_cast<double>(k % N) / static_cast<double>(N);
    return {std::cos(t), std::sin(t)};
}

void RootSum::add(const CharValue& v, long long weight) {
    if (v.zero) return;
    if (n_ % v.N != 0) throw std::invalid_argument("RootSum::add: incompatible root order");
    add(v.k * (n_ / v.N), weight);
}

bool RootSum::is_zero() const {
    // remainder of the coefficient polynomial modulo Phi_n
    const auto& phi = cyclotomic_poly(n_);
    const size_t deg = phi.size() - 1;
    std::vector<long long> rem = coeff_;
    for (size_t i = rem.size(); i-- > 0;) {
        if (i < deg) break;
        long long c = rem[i];
        if (c == 0) continue;
        for (size_t j = 0; j < phi.size(); ++j) rem[i - deg + j] -= c * phi[j];
    }
    for (size_t i = 0; i < deg && i < rem.size(); ++i)
        if (rem[i] != 0) return false;
    return true;
}

bool RootSum::operator==(const RootSum& other) const {
    if (n_ != other.n_) throw std::invalid_argument("RootSum: mismatched orders");
    RootSum diff(n_);
    for (uint64_t k = 0; k < n_; ++k) diff.coeff_[k] = coeff_[k] - other.coeff_[k];
    return diff.is_zero();
}

std::complex<double> RootSum::to_complex() const {
    std::complex<double> s{0.0, 0.0};
    for (uint64_t k = 0; k < n_; ++k) {
        if (coeff_[k] == 0) continue;
        double t = kTau * static_cast<double>(k) / static_cast<double>(n_);
        s += static_cast<double>(coeff_[k]) * std::complex<double>{std::cos(t), std::sin(t)};
    }
    return s;
}

}  // namespace aeqd
