#include "aeqd/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace aeqd {

std::string fmt12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string rational_str(const Rational& r) {
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

nlohmann::json characters_json(const CharacterTable& table) {
    uint64_t q = table.modulus();
    nlohmann::json j;
    j["modulus"] = q;
    j["phi"] = table.group().phi();
    j["alpha"] = rational_str(alpha(q).value);
    nlohmann::json chars = nlohmann::json::array();
    bool odd = q % 2 == 1;
    for (size_t i = 0; i < table.size(); ++i) {
        const auto& chi = table[i];
        nlohmann::json c;
        c["index"] = i;
        c["conductor"] = chi.conductor;
        c["order"] = chi.order();
        c["parity"] = chi.parity();
        if (odd) {
            c["rho"] = rational_str(rho_chi_closed(chi));
        } else {
            auto rho = rho_chi_bruteforce(chi);
            c["rho_re"] = fmt12(rho.real());
            c["rho_im"] = fmt12(rho.imag());
        }
        chars.push_back(std::move(c));
    }
    j["characters"] = std::move(chars);
    return j;
}

nlohmann::json bound_json(const BoundBreakdown& b) {
    nlohmann::json j;
    j["x"] = fmt12(b.x);
    j["y"] = fmt12(b.y);
    j["z"] = fmt12(b.z);
    j["M"] = fmt12(b.m);
    j["err_y"] = fmt12(b.err_y);
    j["rho_abs"] = fmt12(b.rho_abs);
    j["main_term"] = fmt12(b.main_term);
    j["smooth_term"] = fmt12(b.smooth_term);
    j["error_term"] = fmt12(b.error_term);
    j["lhs_re"] = fmt12(b.lhs.real());
    j["lhs_im"] = fmt12(b.lhs.imag());
    double rhs = b.main_term + b.smooth_term + b.error_term;
    j["ratio"] = fmt12(rhs > 0 ? std::abs(b.lhs) / rhs : 0.0);
    return j;
}

nlohmann::json discrepancy_json(const DiscrepancyReport& rep) {
    nlohmann::json j;
    j["model"] = rep.model;
    j["q"] = rep.q;
    j["x"] = rep.x;
    j["epsilon"] = rep.epsilon;
    j["max_abs_dev"] = fmt12(rep.max_abs_dev);
    j["normalized"] = fmt12(rep.normalized);
    nlohmann::json classes = nlohmann::json::array();
    for (const auto& c : rep.classes) {
        classes.push_back({{"a", c.a},
                           {"count", c.count},
                           {"expected", fmt12(c.expected)},
                           {"deviation", fmt12(c.deviation)},
                           {"normalized", fmt12(c.normalized)}});
    }
    j["classes"] = std::move(classes);
    return j;
}

std::string csv_header() {
    return "kind,x,q,a,count,expected,deviation,normalized\n";
}

std::string discrepancy_csv(const DiscrepancyReport& rep, const std::string& kind) {
    std::ostringstream out;
    for (const auto& c : rep.classes) {
        out << kind << ',' << rep.x << ',' << rep.q << ',' << c.a << ',' << c.count << ','
            << fmt12(c.expected) << ',' << fmt12(c.deviation) << ',' << fmt12(c.normalized)
            << '\n';
    }
    return out.str();
}

bool ExpectationSet::within(const std::string& key, double value) const {
    auto it = limits.find(key);
    if (it == limits.end()) return true;
    return value <= it->second;
}

ExpectationSet load_expectations(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("expectations: cannot open " + path);
    ExpectationSet set;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream row(line);
        std::string key, eq, value;
        if (!(row >> key >> eq >> value)) continue;
        if (eq != "=") throw std::runtime_error("expectations: malformed line: " + line);
        set.limits[key] = std::stod(value);
    }
    return set;
}

}  // namespace aeqd
