#pragma once

// Flat key-value config files with [params] and [sweep] sections.
// '#' starts a comment; keys are snake_case; unknown keys are rejected by
// name. Power-like inputs are given in dB and converted here, exactly once.

#include "noma/model.hpp"
#include "noma/sweep.hpp"

#include <iosfwd>
#include <string>

namespace noma {

struct RunConfig {
    SystemParams params;
    SweepSpec sweep;
};

// Parses and validates. Notices (e.g. defaulted eta) go to `log` when given.
RunConfig load_config(const std::string& path, std::ostream* log = nullptr);
RunConfig parse_config(std::istream& in, const std::string& origin, std::ostream* log = nullptr);

} // namespace noma
