#pragma once
#include <boost/rational.hpp>
#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "aeqd/roots.hpp"

namespace aeqd {

using Rational = boost::rational<long long>;

/// One local factor (Z/l^e)^x of the unit group: generators, their orders,
/// and a discrete-log table over the residues mod l^e.
struct UnitGroupComponent {
    uint64_t prime = 0;
    uint32_t exponent = 0;
    uint64_t prime_power = 1;
    std::vector<uint64_t> generators;
    std::vector<uint64_t> orders;
    size_t first_generator = 0;  // offset into the group-wide generator list
    std::vector<uint32_t> dlog;  // [residue * generators.size() + j]; kNoDlog off the units
};

inline constexpr uint32_t kNoDlog = 0xFFFFFFFFu;

/// Generator decomposition of (Z/q)^x. One generator per odd prime-power factor,
/// the {-1, 5} pair for the 2-adic part when e >= 3.
class UnitGroup {
public:
    explicit UnitGroup(uint64_t q);

    uint64_t modulus() const { return q_; }
    uint64_t phi() const { return phi_; }
    uint64_t group_exponent() const { return exponent_; }  // lcm of generator orders
    const std::vector<UnitGroupComponent>& components() const { return components_; }
    const std::vector<uint64_t>& generator_orders() const { return orders_; }
    size_t num_generators() const { return orders_.size(); }

    bool is_unit(uint64_t n) const;
    // exponent vector of n across all generators; false if n is not a unit
    bool dlog(uint64_t n, std::vector<uint32_t>& out) const;
    // mixed-radix (first generator fastest) packing of the exponent vector
    uint64_t unit_index(uint64_t n) const;
    // inverse of dlog via CRT
    uint64_t reconstruct(const std::vector<uint32_t>& exps) const;

    const std::vector<uint64_t>& units() const { return units_; }

private:
    uint64_t q_;
    uint64_t phi_ = 1;
    uint64_t exponent_ = 1;
    std::vector<UnitGroupComponent> components_;
    std::vector<uint64_t> orders_;
    std::vector<uint64_t> units_;
};

std::shared_ptr<const UnitGroup> unit_group(uint64_t q);

/// Dirichlet character mod q as an exponent vector over the group generators.
struct DirichletCharacter {
    std::shared_ptr<const UnitGroup> group;
    std::vector<uint32_t> exps;  // reduced mod the matching generator order
    uint64_t conductor = 1;

    uint64_t modulus() const { return group->modulus(); }
    bool is_principal() const;
    uint64_t order() const;
    int parity() const;  // chi(-1)

    CharValue value(uint64_t n) const;
    std::complex<double> eval(uint64_t n) const;
};

class CharacterTable {
public:
    explicit CharacterTable(std::shared_ptr<const UnitGroup> group);

    uint64_t modulus() const { return group_->modulus(); }
    const UnitGroup& group() const { return *group_; }
    std::shared_ptr<const UnitGroup> group_ptr() const { return group_; }
    size_t size() const { return chars_.size(); }
    const DirichletCharacter& operator[](size_t i) const { return chars_[i]; }
    auto begin() const { return chars_.begin(); }
    auto end() const { return chars_.end(); }

    size_t principal_index() const { return 0; }
    // index of the character induced by the nontrivial character mod 3 (q odd, 3 | q)
    std::optional<size_t> psi_index() const;

private:
    std::shared_ptr<const UnitGroup> group_;
    std::vector<DirichletCharacter> chars_;
};

CharacterTable enumerate_characters(uint64_t q);

uint64_t conductor_of(const UnitGroup& group, const std::vector<uint32_t>& exps);

struct AlphaResult {
    Rational value;
    bool even_modulus = false;  // the product vanishes for even q
};
AlphaResult alpha(uint64_t q);

// (1/phi(q)) sum over units v of chi(v-1), by direct summation
std::complex<double> rho_chi_bruteforce(const DirichletCharacter& chi);
// same sum, kept exact as an integer combination of roots of unity (times phi(q))
RootSum rho_chi_sum_exact(const DirichletCharacter& chi);
// closed form; real rational for odd q, throws domain_error on even q
Rational rho_chi_closed(const DirichletCharacter& chi);
// all rho_chi for a table at once, aligned with table indices (separable DFT over the unit group)
std::vector<std::complex<double>> rho_chi_all(const CharacterTable& table);

// local factor sum over v mod l^e of chi_{0,l}(v) chi_l(v-1), direct summation
std::complex<double> s_chi_ell(const DirichletCharacter& chi, uint64_t ell);
// its evaluated form: 1[chi_l trivial] phi(l^e) - 1[cond(chi_l) | l] chi_l(-1) l^(e-1)
std::complex<double> s_chi_ell_closed(const DirichletCharacter& chi, uint64_t ell);

// normalized Ramanujan sum: mu(q')/phi(q') with q' = q/(q,r)
Rational ramanujan_rho(uint64_t q, uint64_t r);

// number of primitive characters mod an odd squarefree d
uint64_t count_primitive(uint64_t d);

// the character mod q induced by the nontrivial character mod 3 (odd q, 3 | q)
DirichletCharacter psi_special(std::shared_ptr<const UnitGroup> group);

}  // namespace aeqd
