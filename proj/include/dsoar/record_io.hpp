#pragma once

#include <string>

#include "dsoar/sim.hpp"

namespace dsoar {

/// Shortest decimal representation that parses back to exactly the same
/// double. Record files compare byte-for-byte across runs.
std::string format_double(double v);

/// CSV with one header row; columns as documented on RunRecord.
std::string record_to_csv(const RunRecord& record);

/// JSON document with columns, rows, and the summary block.
std::string record_to_json(const RunRecord& record);

/// Human-readable summary block (also what the CLI prints).
std::string summary_text(const RunRecord& record);

}  // namespace dsoar
