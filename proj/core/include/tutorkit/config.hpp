#pragma once

#include <string>

#include "tutorkit/model.hpp"

namespace tutorkit {

// Loads an AnalysisConfig from a JSON file. Missing keys take defaults;
// unknown keys are rejected (typos should fail loudly). The result is
// validated before returning.
AnalysisConfig load_config(const std::string& path);
AnalysisConfig parse_config(const std::string& json_text,
                            const std::string& source_name);

// Canonical JSON serialization (sorted keys, fixed layout).
std::string config_to_json(const AnalysisConfig& config);

// FNV-1a over the canonical serialization: stable under key reordering in
// the source file.
std::string config_hash(const AnalysisConfig& config);

}  // namespace tutorkit
