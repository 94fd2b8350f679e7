#pragma once

#include <string>

#include "wgmlab/model.hpp"

// Config file format: flat `key = value` pairs grouped in [section] blocks,
// with `#` comments. Rates are written in the reporting convention as
// *_over_2pi keys (ordinary Hz) and converted to angular rad/s on load.
// The format is versioned through the top-level schema_version key.

namespace wgmlab {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parses and validates; throws ParseError on malformed input and
// ValidationError (naming the field) on invariant violations.
ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config(const std::string& text);

// Serializes such that parse_config(serialize_config(c)) == c field-for-field.
std::string serialize_config(const ExperimentConfig& cfg);
void save_config(const ExperimentConfig& cfg, const std::string& path);

// Bundled Pr3+:Y2SiO5 resonator-A defaults; unit tests and scenarios that
// do not take a --config start from this.
ExperimentConfig default_pr_config();

}  // namespace wgmlab
