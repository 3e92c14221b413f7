#pragma once

// Deterministic report emission: schema-versioned JSON records (identical
// config and seed give byte-identical output), DOT and CSV side files.
// Timing never enters the report body; it goes to stderr.

#include <string>

#include <json.hpp>

#include "outcx/config.hpp"

namespace outcx {

using Json = nlohmann::ordered_json;

// Standard envelope: schema, command, config echo, results, warnings.
Json report_envelope(const std::string& command, const Workspace& ws);

Json config_echo(const Workspace& ws);

// Serializers for experiment results.
Json to_json(const ComplexResult& r, bool include_tables);
Json to_json(const A1A2Result& r);
Json to_json(const TranslationResult& r);
Json to_json(const OrbitResult& r);
Json to_json(const WpdResult& r);
Json to_json(const TreeModelResult& r);
Json to_json(const T2Result& r, bool include_rows);
Json to_json(const ScalingReport& r);
Json to_json(const PairingEstimate& e);

// DOT rendering of the triple graph inside a ComplexResult.
std::string to_dot(const ComplexResult& r);

// CSV for t2 tables.
std::string to_csv(const T2Result& r);
std::string to_csv(const ScalingReport& r);

void write_file(const std::string& path, const std::string& content);

}  // namespace outcx
