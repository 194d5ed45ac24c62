#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "metadist/sim.hpp"

// Campaign serialization: a CSV with one CCP sample per row under a single
// "ccp" header line, and a JSON document carrying config, samples and
// diagnostics. Samples are written with 17 significant digits so a read-back
// is bit-exact.

namespace metadist::sim {

void write_samples_csv(std::ostream& out, const std::vector<double>& samples);

// Throws std::runtime_error on malformed input or samples outside [0,1].
std::vector<double> read_samples_csv(std::istream& in);

nlohmann::json config_to_json(const SimConfig& config);
SimConfig config_from_json(const nlohmann::json& j);

nlohmann::json campaign_to_json(const EmpiricalMeta& emp);
EmpiricalMeta campaign_from_json(const nlohmann::json& j);

std::string to_string(FadingMode mode);
FadingMode fading_mode_from_string(const std::string& s);

}  // namespace metadist::sim
