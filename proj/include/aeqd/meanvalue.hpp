#pragma once
#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "aeqd/characters.hpp"
#include "aeqd/sieve.hpp"

namespace aeqd {

/// A multiplicative function into the unit disk, defined by its values on prime powers.
/// The built-in kinds carry a residue-histogram fast path; Generic walks the sieve.
struct MultFunctionSpec {
    enum class Kind { Generic, ExpA, ChiPhi };

    std::string name;
    Kind kind = Kind::Generic;
    uint64_t q = 0;  // ExpA
    uint64_t r = 0;  // ExpA
    std::optional<DirichletCharacter> chi;  // ChiPhi
    std::function<std::complex<double>(uint64_t p, uint32_t k)> on_prime_power;
};

// n -> e(r A(n)/q)
MultFunctionSpec exp_a_spec(uint64_t q, uint64_t r);
// n -> (-1)^A(n), i.e. e(A(n)/2)
MultFunctionSpec sign_a_spec();
// n -> chi(phi(n))
MultFunctionSpec chi_phi_spec(DirichletCharacter chi);

// exact sum over n <= x of f(n)
std::complex<double> partial_sum(const MultFunctionSpec& f, uint64_t x, const PrimeTable& table,
                                 const SieveOptions& opt = {});

/// Empirical residual profile of the prime-sum hypothesis over a geometric Y grid.
struct HypothesisFit {
    double y = 0.0;
    std::complex<double> rho;
    std::vector<double> grid;       // ascending, all > y
    std::vector<double> residuals;  // |sum_{y<p<=Y} f(p) - rho (pi(Y)-pi(y))| / Y
    double fitted_m_err = 0.0;      // max residual
};

HypothesisFit fit_hypothesis(const MultFunctionSpec& f, double y, double ymax, size_t grid_size,
                             std::complex<double> rho, const PrimeTable& table);

/// Term-by-term evaluation of the mean-value bound's right-hand side, plus the exact LHS.
struct BoundBreakdown {
    double x = 0, y = 0, z = 0, m = 1, err_y = 0;
    double rho_abs = 0;
    double main_term = 0;    // (|rho| x / log z)(log x / log y)^|rho| exp(sum_{p<=y}|f(p)|/p)
    double smooth_term = 0;  // Psi(x, z)
    double error_term = 0;   // M x (log x)^2 (err_y + 1/y)
    std::complex<double> lhs;
};

// throws std::domain_error naming the violated inequality among 4 < y <= sqrt(z), z < x, M >= 1
void check_bound_params(double x, double y, double z, double m);

BoundBreakdown theorem_bound(const MultFunctionSpec& f, double x, double y, double z, double m,
                             double err_y, std::complex<double> rho, const PrimeTable& table,
                             const SieveOptions& opt = {});

// y = exp((log x)^(eps/2)), z = x^(1/loglog x)
struct Recipe {
    double y = 0, z = 0;
};
Recipe recipe_yz(double x, double epsilon);

}  // namespace aeqd
