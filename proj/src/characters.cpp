#include "aeqd/characters.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "aeqd/primes.hpp"

namespace aeqd {

namespace {

uint64_t powmod(uint64_t base, uint64_t exp, uint64_t mod) {
    uint64_t r = 1 % mod;
    base %= mod;
    while (exp) {
        if (exp & 1) r = static_cast<uint64_t>((__uint128_t)r * base % mod);
        base = static_cast<uint64_t>((__uint128_t)base * base % mod);
        exp >>= 1;
    }
    return r;
}

std::vector<PrimeFactor> factor_small(uint64_t n) {
    std::vector<PrimeFactor> out;
    for (uint64_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        uint32_t k = 0;
        while (n % p == 0) {
            n /= p;
            ++k;
        }
        out.push_back({p, k});
    }
    if (n > 1) out.push_back({n, 1});
    return out;
}

bool has_order_phi(uint64_t g, uint64_t pe, uint64_t phi_pe, const std::vector<PrimeFactor>& phi_factors) {
    for (const auto& f : phi_factors)
        if (powmod(g, phi_pe / f.p, pe) == 1) return false;
    return true;
}

UnitGroupComponent make_odd_component(uint64_t ell, uint32_t e, uint64_t pe) {
    UnitGroupComponent c;
    c.prime = ell;
    c.exponent = e;
    c.prime_power = pe;
    uint64_t phi_pe = pe / ell * (ell - 1);
    auto phi_factors = factor_small(phi_pe);
    uint64_t g = 2;
    while (g % ell == 0 || !has_order_phi(g, pe, phi_pe, phi_factors)) ++g;
    c.generators = {g};
    c.orders = {phi_pe};
    c.dlog.assign(pe, kNoDlog);
    uint64_t u = 1;
    for (uint64_t i = 0; i < phi_pe; ++i) {
        c.dlog[u] = static_cast<uint32_t>(i);
        u = static_cast<uint64_t>((__uint128_t)u * g % pe);
    }
    return c;
}

UnitGroupComponent make_two_component(uint32_t e, uint64_t pe) {
    UnitGroupComponent c;
    c.prime = 2;
    c.exponent = e;
    c.prime_power = pe;
    if (e == 1) return c;  // trivial group, no generators
    if (e == 2) {
        c.generators = {3};
        c.orders = {2};
        c.dlog.assign(4, kNoDlog);
        c.dlog[1] = 0;
        c.dlog[3] = 1;
        return c;
    }
    // {-1, 5}: order 2 and 2^(e-2)
    uint64_t half = pe >> 2;
    c.generators = {pe - 1, 5};
    c.orders = {2, half};
    c.dlog.assign(2 * pe, kNoDlog);
    for (uint64_t a = 0; a < 2; ++a) {
        uint64_t u = a ? pe - 1 : 1;
        for (uint64_t b = 0; b < half; ++b) {
            c.dlog[2 * u] = static_cast<uint32_t>(a);
            c.dlog[2 * u + 1] = static_cast<uint32_t>(b);
            u = static_cast<uint64_t>((__uint128_t)u * 5 % pe);
        }
    }
    return c;
}

}  // namespace

UnitGroup::UnitGroup(uint64_t q) : q_(q) {
    if (q == 0) throw std::invalid_argument("UnitGroup: modulus must be positive");
    for (const auto& f : factor_small(q)) {
        uint64_t pe = 1;
        for (uint32_t i = 0; i < f.k; ++i) pe *= f.p;
        UnitGroupComponent c =
            f.p == 2 ? make_two_component(f.k, pe) : make_odd_component(f.p, f.k, pe);
        c.first_generator = orders_.size();
        phi_ *= pe / f.p * (f.p - 1);
        for (uint64_t o : c.orders) {
            orders_.push_back(o);
            exponent_ = std::lcm(exponent_, o);
        }
        components_.push_back(std::move(c));
    }
    if (q == 1) {
        units_ = {0};
    } else {
        units_.reserve(phi_);
        for (uint64_t v = 1; v < q; ++v)
            if (std::gcd(v, q) == 1) units_.push_back(v);
    }
}

bool UnitGroup::is_unit(uint64_t n) const {
    return std::gcd(n % q_, q_) == 1;
}

bool UnitGroup::dlog(uint64_t n, std::vector<uint32_t>& out) const {
    out.assign(orders_.size(), 0);
    n %= q_;
    for (const auto& c : components_) {
        uint64_t u = n % c.prime_power;
        size_t g = c.generators.size();
        if (g == 0) {
            if (u % 2 == 0) return false;
            continue;
        }
        uint32_t d0 = c.dlog[u * g];
        if (d0 == kNoDlog) return false;
        for (size_t j = 0; j < g; ++j) out[c.first_generator + j] = c.dlog[u * g + j];
    }
    return true;
}

uint64_t UnitGroup::unit_index(uint64_t n) const {
    std::vector<uint32_t> d;
    if (!dlog(n, d)) throw std::invalid_argument("UnitGroup::unit_index: not a unit");
    uint64_t idx = 0, stride = 1;
    for (size_t j = 0; j < orders_.size(); ++j) {
        idx += d[j] * stride;
        stride *= orders_[j];
    }
    return idx;
}

uint64_t UnitGroup::reconstruct(const std::vector<uint32_t>& exps) const {
    if (exps.size() != orders_.size())
        throw std::invalid_argument("UnitGroup::reconstruct: exponent vector size mismatch");
    // CRT over the component values
    uint64_t result = 0, modulus = 1;
    bool first = true;
    for (const auto& c : components_) {
        uint64_t local = 1;
        for (size_t j = 0; j < c.generators.size(); ++j)
            local = static_cast<uint64_t>(
                (__uint128_t)local * powmod(c.generators[j], exps[c.first_generator + j], c.prime_power) %
                c.prime_power);
        if (first) {
            result = local;
            modulus = c.prime_power;
            first = false;
            continue;
        }
        // lift: find t with result + modulus*t == local (mod c.prime_power)
        uint64_t pe = c.prime_power;
        uint64_t step = modulus % pe;
        uint64_t cur = result % pe;
        uint64_t t = 0;
        while (cur != local % pe) {
            cur = (cur + step) % pe;
            ++t;
        }
        result += modulus * t;
        modulus *= pe;
    }
    if (q_ == 1) return 0;
    return result % q_;
}

std::shared_ptr<const UnitGroup> unit_group(uint64_t q) {
    return std::make_shared<const UnitGroup>(q);
}

bool DirichletCharacter::is_principal() const {
    return std::all_of(exps.begin(), exps.end(), [](uint32_t e) { return e == 0; });
}

uint64_t DirichletCharacter::order() const {
    uint64_t ord = 1;
    const auto& orders = group->generator_orders();
    for (size_t j = 0; j < exps.size(); ++j) {
        if (exps[j] == 0) continue;
        ord = std::lcm(ord, orders[j] / std::gcd<uint64_t>(exps[j], orders[j]));
    }
    return ord;
}

int DirichletCharacter::parity() const {
    uint64_t q = group->modulus();
    if (q <= 2) return 1;
    CharValue v = value(q - 1);
    return v.is_one() ? 1 : -1;
}

CharValue DirichletCharacter::value(uint64_t n) const {
    std::vector<uint32_t> d;
    if (!group->dlog(n, d)) return CharValue::zero_value();
    uint64_t L = group->group_exponent();
    const auto& orders = group->generator_orders();
    uint64_t k = 0;
    for (size_t j = 0; j < exps.size(); ++j)
        k = (k + static_cast<uint64_t>(exps[j]) * d[j] % L * (L / orders[j])) % L;
    return CharValue{k, L, false};
}

std::complex<double> DirichletCharacter::eval(uint64_t n) const {
    return value(n).to_complex();
}

CharacterTable::CharacterTable(std::shared_ptr<const UnitGroup> group) : group_(std::move(group)) {
    const auto& orders = group_->generator_orders();
    uint64_t total = group_->phi();
    chars_.reserve(total);
    std::vector<uint32_t> exps(orders.size(), 0);
    for (uint64_t i = 0; i < total; ++i) {
        DirichletCharacter chi{group_, exps, conductor_of(*group_, exps)};
        chars_.push_back(std::move(chi));
        // mixed-radix increment, first generator fastest
        for (size_t j = 0; j < orders.size(); ++j) {
            if (++exps[j] < orders[j]) break;
            exps[j] = 0;
        }
    }
}

std::optional<size_t> CharacterTable::psi_index() const {
    uint64_t q = modulus();
    if (q % 2 == 0 || q % 3 != 0) return std::nullopt;
    DirichletCharacter psi = psi_special(group_);
    // locate by exponent vector
    for (size_t i = 0; i < chars_.size(); ++i)
        if (chars_[i].exps == psi.exps) return i;
    return std::nullopt;
}

CharacterTable enumerate_characters(uint64_t q) {
    return CharacterTable(unit_group(q));
}

namespace {

uint64_t component_conductor(const UnitGroupComponent& c, const std::vector<uint32_t>& exps) {
    if (c.prime != 2) {
        uint64_t a = exps[c.first_generator];
        if (a == 0) return 1;
        uint64_t o = c.orders[0];
        uint64_t ord = o / std::gcd(a, o);
        uint64_t pc = 1;
        for (uint32_t ce = 1; ce <= c.exponent; ++ce) {
            pc *= c.prime;
            uint64_t phi_pc = pc / c.prime * (c.prime - 1);
            if (phi_pc % ord == 0) return pc;
        }
        throw std::logic_error("component_conductor: no inducing level found");
    }
    if (c.exponent == 1) return 1;
    if (c.exponent == 2) return exps[c.first_generator] ? 4 : 1;
    uint64_t a = exps[c.first_generator];
    uint64_t b = exps[c.first_generator + 1];
    if (b == 0) return a ? 4 : 1;
    uint64_t o5 = c.orders[1];
    uint64_t t = o5 / std::gcd(b, o5);  // order on the <5> part, a power of two >= 2
    return 4 * t;
}

}  // namespace

uint64_t conductor_of(const UnitGroup& group, const std::vector<uint32_t>& exps) {
    uint64_t cond = 1;
    for (const auto& c : group.components()) cond *= component_conductor(c, exps);
    return cond;
}

AlphaResult alpha(uint64_t q) {
    if (q == 0 || q % 2 == 0) return {Rational(0), true};
    Rational r(1);
    for (const auto& f : factor_small(q))
        r *= Rational(static_cast<long long>(f.p) - 2, static_cast<long long>(f.p) - 1);
    return {r, false};
}

std::complex<double> rho_chi_bruteforce(const DirichletCharacter& chi) {
    const UnitGroup& g = *chi.group;
    uint64_t q = g.modulus();
    if (q < 2) return {1.0, 0.0};
    std::complex<double> s{0.0, 0.0};
    for (uint64_t v : g.units()) s += chi.eval((v + q - 1) % q);
    return s / static_cast<double>(g.phi());
}

RootSum rho_chi_sum_exact(const DirichletCharacter& chi) {
    const UnitGroup& g = *chi.group;
    uint64_t q = g.modulus();
    RootSum s(g.group_exponent());
    if (q < 2) {
        s.add(0, 1);
        return s;
    }
    for (uint64_t v : g.units()) s.add(chi.value((v + q - 1) % q));
    return s;
}

Rational rho_chi_closed(const DirichletCharacter& chi) {
    uint64_t q = chi.modulus();
    if (q % 2 == 0) throw std::domain_error("rho_chi_closed: even modulus unsupported");
    uint64_t cond = chi.conductor;
    auto factors = factor_small(cond);
    for (const auto& f : factors)
        if (f.k > 1) return Rational(0);
    Rational r = alpha(q).value;
    long long sign = (factors.size() % 2 == 0) ? 1 : -1;
    sign *= chi.parity();
    long long den = 1;
    for (const auto& f : factors) den *= static_cast<long long>(f.p) - 2;
    return r * Rational(sign, den);
}

std::vector<std::complex<double>> rho_chi_all(const CharacterTable& table) {
    const UnitGroup& g = table.group();
    uint64_t q = g.modulus();
    uint64_t n = g.phi();
    std::vector<std::complex<double>> data(n, {0.0, 0.0});
    if (q < 2) {
        data[0] = {1.0, 0.0};
        return data;
    }
    for (uint64_t v : g.units()) {
        uint64_t w = (v + q - 1) % q;
        if (g.is_unit(w)) data[g.unit_index(w)] += 1.0;
    }
    // separable DFT, one naive transform per generator dimension
    const auto& orders = g.generator_orders();
    uint64_t stride = 1;
    std::vector<std::complex<double>> in, out;
    for (uint64_t o : orders) {
        constexpr double kTau = 6.283185307179586476925286766559;
        std::vector<std::complex<double>> twiddle(o);
        for (uint64_t k = 0; k < o; ++k) {
            double t = kTau * static_cast<double>(k) / static_cast<double>(o);
            twiddle[k] = {std::cos(t), std::sin(t)};
        }
        in.assign(o, {});
        out.assign(o, {});
        uint64_t block = stride * o;
        for (uint64_t base = 0; base < n; base += block) {
            for (uint64_t off = 0; off < stride; ++off) {
                for (uint64_t d = 0; d < o; ++d) in[d] = data[base + off + d * stride];
                for (uint64_t e = 0; e < o; ++e) {
                    std::complex<double> acc{0.0, 0.0};
                    for (uint64_t d = 0; d < o; ++d) acc += in[d] * twiddle[(e * d) % o];
                    out[e] = acc;
                }
                for (uint64_t e = 0; e < o; ++e) data[base + off + e * stride] = out[e];
            }
        }
        stride = block;
    }
    double inv = 1.0 / static_cast<double>(n);
    for (auto& z : data) z *= inv;
    return data;
}

namespace {

const UnitGroupComponent& find_component(const UnitGroup& g, uint64_t ell) {
    for (const auto& c : g.components())
        if (c.prime == ell) return c;
    throw std::invalid_argument("s_chi_ell: ell does not divide the modulus");
}

// value of the local factor chi_l at u mod l^e
CharValue local_value(const UnitGroupComponent& c, const std::vector<uint32_t>& exps, uint64_t u) {
    size_t gcount = c.generators.size();
    if (gcount == 0) return (u % 2 == 1) ? CharValue{0, 1, false} : CharValue::zero_value();
    if (c.dlog[u * gcount] == kNoDlog) return CharValue::zero_value();
    uint64_t L = 1;
    for (uint64_t o : c.orders) L = std::lcm(L, o);
    uint64_t k = 0;
    for (size_t j = 0; j < gcount; ++j) {
        uint64_t o = c.orders[j];
        k = (k + static_cast<uint64_t>(exps[c.first_generator + j]) * c.dlog[u * gcount + j] % L *
                     (L / o)) %
            L;
    }
    return CharValue{k, L, false};
}

bool local_trivial(const UnitGroupComponent& c, const std::vector<uint32_t>& exps) {
    for (size_t j = 0; j < c.generators.size(); ++j)
        if (exps[c.first_generator + j] != 0) return false;
    return true;
}

}  // namespace

std::complex<double> s_chi_ell(const DirichletCharacter& chi, uint64_t ell) {
    const auto& c = find_component(*chi.group, ell);
    std::complex<double> s{0.0, 0.0};
    for (uint64_t v = 0; v < c.prime_power; ++v) {
        if (v % ell == 0) continue;
        uint64_t u = (v + c.prime_power - 1) % c.prime_power;
        s += local_value(c, chi.exps, u).to_complex();
    }
    return s;
}

std::complex<double> s_chi_ell_closed(const DirichletCharacter& chi, uint64_t ell) {
    const auto& c = find_component(*chi.group, ell);
    uint64_t phi_pe = c.prime_power / ell * (ell - 1);
    uint64_t cond_l = component_conductor(c, chi.exps);
    double first = local_trivial(c, chi.exps) ? static_cast<double>(phi_pe) : 0.0;
    if (cond_l > ell) return {first, 0.0};
    std::complex<double> minus_one = local_value(c, chi.exps, c.prime_power - 1).to_complex();
    double lpow = static_cast<double>(c.prime_power / ell);
    return std::complex<double>{first, 0.0} - minus_one * lpow;
}

Rational ramanujan_rho(uint64_t q, uint64_t r) {
    if (q < 2) throw std::invalid_argument("ramanujan_rho: q must be >= 2");
    if (r >= q) throw std::invalid_argument("ramanujan_rho: require 0 <= r < q");
    uint64_t qr = q / std::gcd(q, r);
    long long mu = 1, phi = 1;
    for (const auto& f : factor_small(qr)) {
        if (f.k > 1) return Rational(0);
        mu = -mu;
        phi *= static_cast<long long>(f.p) - 1;
    }
    return Rational(mu, phi);
}

uint64_t count_primitive(uint64_t d) {
    if (d == 0 || d % 2 == 0) throw std::domain_error("count_primitive: d must be odd");
    uint64_t result = 1;
    for (const auto& f : factor_small(d)) {
        if (f.k > 1) throw std::domain_error("count_primitive: d must be squarefree");
        result *= f.p - 2;
    }
    return result;
}

DirichletCharacter psi_special(std::shared_ptr<const UnitGroup> group) {
    uint64_t q = group->modulus();
    if (q % 3 != 0 || q % 2 == 0) throw std::domain_error("psi_special: requires odd q with 3 | q");
    std::vector<uint32_t> exps(group->num_generators(), 0);
    for (const auto& c : group->components()) {
        if (c.prime != 3) continue;
        exps[c.first_generator] = static_cast<uint32_t>(c.orders[0] / 2);
    }
    DirichletCharacter chi{group, exps, 0};
    chi.conductor = conductor_of(*group, exps);
    return chi;
}

}  // namespace aeqd
