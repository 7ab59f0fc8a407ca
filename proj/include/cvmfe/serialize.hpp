#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "cvmfe/blanket.hpp"
#include "cvmfe/exact.hpp"
#include "cvmfe/lattice.hpp"
#include "cvmfe/minimize.hpp"
#include "cvmfe/thermo.hpp"
#include "cvmfe/varbayes.hpp"

namespace cvm {

using json = nlohmann::json;

json to_json(const ConfigVars& cv);
json to_json(const ThermoReport& tr);
json to_json(const HEstimate& est);
json to_json(const Decomposition& d);
json to_json(const JensenCheck& jc);
json to_json(const BoltzmannReport& br);
json to_json(const EnumerationResult& er);
json to_json(const RestartSummary& rs);
json to_json(const PipelineReport& pr);

/// Pipeline config from a JSON object; unknown keys rejected, errors name
/// the field.
PipelineConfig pipeline_config_from_json(const json& j);

Distribution distribution_from_json(const json& j);
DiscreteJoint joint_from_json(const json& j);

// File helpers (IoError on failure).
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);
GridState read_grid_file(const std::string& path);
void write_grid_file(const std::string& path, const GridState& g);

/// One manifest per run: command, full parameter echo, engine version and
/// the list of written files. No timestamps, so reruns are byte-identical.
struct RunManifest {
    std::string command;
    json config;
    std::vector<std::string> outputs;
};

inline constexpr const char* kEngineVersion = "0.1.0";

json to_json(const RunManifest& m);
void write_manifest(const std::string& path, const RunManifest& m);

} // namespace cvm
