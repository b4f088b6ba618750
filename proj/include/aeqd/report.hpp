#pragma once
#include <map>
#include <string>

#include <json.hpp>

#include "aeqd/characters.hpp"
#include "aeqd/experiments.hpp"
#include "aeqd/meanvalue.hpp"

namespace aeqd {

// 12 significant digits
std::string fmt12(double v);
std::string rational_str(const Rational& r);

nlohmann::json characters_json(const CharacterTable& table);
nlohmann::json bound_json(const BoundBreakdown& b);
nlohmann::json discrepancy_json(const DiscrepancyReport& rep);

std::string discrepancy_csv(const DiscrepancyReport& rep, const std::string& kind);
std::string csv_header();

/// Flat key -> decimal string regression limits, frozen after a calibration run.
struct ExpectationSet {
    std::map<std::string, double> limits;

    // true if the key is absent or value <= limit
    bool within(const std::string& key, double value) const;
    bool has(const std::string& key) const { return limits.count(key) > 0; }
};

ExpectationSet load_expectations(const std::string& path);

}  // namespace aeqd
