#include "aeqd/meanvalue.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "aeqd/experiments.hpp"

namespace aeqd {

namespace {
constexpr double kTau = 6.283185307179586476925286766559;

std::complex<double> unit_root(uint64_t k, uint64_t n) {
    double t = kTau * static_cast<double>(k % n) / static_cast<double>(n);
    return {std::cos(t), std::sin(t)};
}
}  // namespace

MultFunctionSpec exp_a_spec(uint64_t q, uint64_t r) {
    if (q < 1 || r >= q) throw std::invalid_argument("exp_a_spec: require 0 <= r < q");
    MultFunctionSpec f;
    f.name = "eA(q=" + std::to_string(q) + ",r=" + std::to_string(r) + ")";
    f.kind = MultFunctionSpec::Kind::ExpA;
    f.q = q;
    f.r = r;
    f.on_prime_power = [q, r](uint64_t p, uint32_t k) {
        return unit_root(r * (static_cast<uint64_t>(k) * p % q) % q, q);
    };
    return f;
}

MultFunctionSpec sign_a_spec() {
    MultFunctionSpec f = exp_a_spec(2, 1);
    f.name = "signA";
    return f;
}

MultFunctionSpec chi_phi_spec(DirichletCharacter chi) {
    MultFunctionSpec f;
    f.name = "chiphi(q=" + std::to_string(chi.modulus()) + ")";
    f.kind = MultFunctionSpec::Kind::ChiPhi;
    f.q = chi.modulus();
    f.chi = chi;
    f.on_prime_power = [c = std::move(chi)](uint64_t p, uint32_t k) {
        // phi(p^k) = p^(k-1)(p-1), reduced mod q before evaluation
        uint64_t q = c.modulus();
        uint64_t v = (p - 1) % q;
        for (uint32_t i = 1; i < k; ++i) v = v * (p % q) % q;
        return c.eval(v);
    };
    return f;
}

namespace {

// generic path: one multiplicative evaluation per n, via a dedicated sieve pass
std::complex<double> generic_partial_sum(const MultFunctionSpec& f, uint64_t x,
                                         const PrimeTable& table) {
    if (table.limit < isqrt(x))
        throw std::invalid_argument("partial_sum: prime table smaller than sqrt(x)");
    std::complex<double> total{0.0, 0.0};
    const uint64_t seg = uint64_t{1} << 20;
    std::vector<uint64_t> cof;
    std::vector<std::complex<double>> val;
    for (uint64_t lo = 1; lo <= x; lo += seg) {
        uint64_t hi = std::min(x, lo + seg - 1);
        uint64_t len = hi - lo + 1;
        cof.resize(len);
        val.assign(len, {1.0, 0.0});
        for (uint64_t i = 0; i < len; ++i) cof[i] = lo + i;
        for (uint64_t p : table.primes) {
            if (p * p > hi) break;
            for (uint64_t m = (lo + p - 1) / p * p; m <= hi; m += p) {
                uint64_t i = m - lo;
                uint32_t k = 0;
                while (cof[i] % p == 0) {
                    cof[i] /= p;
                    ++k;
                }
                val[i] *= f.on_prime_power(p, k);
            }
        }
        for (uint64_t i = 0; i < len; ++i) {
            if (cof[i] > 1) val[i] *= f.on_prime_power(cof[i], 1);
            total += val[i];
        }
    }
    return total;
}

}  // namespace

std::complex<double> partial_sum(const MultFunctionSpec& f, uint64_t x, const PrimeTable& table,
                                 const SieveOptions& opt) {
    if (x < 1) throw std::invalid_argument("partial_sum: require x >= 1");
    switch (f.kind) {
        case MultFunctionSpec::Kind::ExpA: {
            ResidueHistogram hist = histogram_A(x, f.q, table, opt);
            return exp_sum_A(hist, f.r);
        }
        case MultFunctionSpec::Kind::ChiPhi: {
            ResidueHistogram hist = histogram_phi(x, f.q, table, opt);
            return char_sum_phi(hist, *f.chi);
        }
        case MultFunctionSpec::Kind::Generic:
            return generic_partial_sum(f, x, table);
    }
    throw std::logic_error("partial_sum: unreachable");
}

HypothesisFit fit_hypothesis(const MultFunctionSpec& f, double y, double ymax, size_t grid_size,
                             std::complex<double> rho, const PrimeTable& table) {
    if (y < 5.0) throw std::invalid_argument("fit_hypothesis: require y >= 5");
    if (ymax <= y || grid_size == 0) throw std::domain_error("fit_hypothesis: empty grid");
    if (ymax > static_cast<double>(table.limit))
        throw std::invalid_argument("fit_hypothesis: Ymax exceeds prime table limit");

    HypothesisFit fit;
    fit.y = y;
    fit.rho = rho;
    for (size_t i = 1; i <= grid_size; ++i)
        fit.grid.push_back(y * std::pow(ymax / y, static_cast<double>(i) /
                                                      static_cast<double>(grid_size)));

    uint64_t yi = static_cast<uint64_t>(y);
    std::complex<double> sum{0.0, 0.0};
    uint64_t count = 0;
    size_t next = 0;
    auto it = std::upper_bound(table.primes.begin(), table.primes.end(), yi);
    for (; it != table.primes.end() && next < fit.grid.size(); ++it) {
        uint64_t p = *it;
        while (next < fit.grid.size() && static_cast<double>(p) > fit.grid[next]) {
            std::complex<double> predicted = rho * static_cast<double>(count);
            fit.residuals.push_back(std::abs(sum - predicted) / fit.grid[next]);
            ++next;
        }
        if (next == fit.grid.size()) break;
        sum += f.on_prime_power(p, 1);
        ++count;
    }
    while (next < fit.grid.size()) {
        std::complex<double> predicted = rho * static_cast<double>(count);
        fit.residuals.push_back(std::abs(sum - predicted) / fit.grid[next]);
        ++next;
    }
    fit.fitted_m_err = *std::max_element(fit.residuals.begin(), fit.residuals.end());
    return fit;
}

void check_bound_params(double x, double y, double z, double m) {
    if (!(y > 4.0)) throw std::domain_error("bound parameters: violated 4 < y");
    if (!(y * y <= z * (1.0 + 1e-12)))
        throw std::domain_error("bound parameters: violated y <= z^(1/2)");
    if (!(z < x)) throw std::domain_error("bound parameters: violated z < x");
    if (!(m >= 1.0)) throw std::domain_error("bound parameters: violated M >= 1");
}

BoundBreakdown theorem_bound(const MultFunctionSpec& f, double x, double y, double z, double m,
                             double err_y, std::complex<double> rho, const PrimeTable& table,
                             const SieveOptions& opt) {
    check_bound_params(x, y, z, m);
    if (static_cast<double>(table.limit) < y)
        throw std::invalid_argument("theorem_bound: prime table smaller than y");

    BoundBreakdown b;
    b.x = x;
    b.y = y;
    b.z = z;
    b.m = m;
    b.err_y = err_y;
    b.rho_abs = std::abs(rho);

    double sum_fp = 0.0;  // sum over p <= y of |f(p)|/p, exact from the table
    for (uint64_t p : table.primes) {
        if (static_cast<double>(p) > y) break;
        sum_fp += std::abs(f.on_prime_power(p, 1)) / static_cast<double>(p);
    }
    if (b.rho_abs > 0.0)
        b.main_term = b.rho_abs * x / std::log(z) *
                      std::pow(std::log(x) / std::log(y), b.rho_abs) * std::exp(sum_fp);
    uint64_t xi = static_cast<uint64_t>(x);
    b.smooth_term = static_cast<double>(
        psi_smooth_count(xi, std::max<uint64_t>(1, static_cast<uint64_t>(z)), table, opt));
    b.error_term = m * x * std::pow(std::log(x), 2.0) * (err_y + 1.0 / y);
    b.lhs = partial_sum(f, xi, table, opt);
    return b;
}

Recipe recipe_yz(double x, double epsilon) {
    if (x <= 16.0 || epsilon <= 0.0) throw std::invalid_argument("recipe_yz: bad parameters");
    double lx = std::log(x);
    return {std::exp(std::pow(lx, epsilon / 2.0)), std::pow(x, 1.0 / std::log(lx))};
}

}  // namespace aeqd
