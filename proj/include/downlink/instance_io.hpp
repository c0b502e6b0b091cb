// Versioned JSON persistence for instances, plus standalone ingestion of
// externally computed window lists (e.g. exported from a mission-analysis
// tool and converted to the vtws[] block).

#pragma once

#include <stdexcept>
#include <string>

#include "downlink/core.hpp"

namespace downlink {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr int kInstanceFormatVersion = 1;

std::string instance_to_json(const Instance& inst);
Instance instance_from_json(const std::string& text);

void save_instance(const Instance& inst, const std::string& path);
Instance load_instance(const std::string& path);

// Reads a file containing just a vtws[] block (same schema as the instance
// file); validates ordering and id uniqueness.
std::vector<VisibleTimeWindow> load_vtws(const std::string& path);

// Small file helpers shared by the other writers.
void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

}  // namespace downlink
