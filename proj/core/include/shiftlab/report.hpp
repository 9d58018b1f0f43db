#pragma once

// Orchestration: runs the commands over a SystemSpec and produces the
// machine-readable report (canonical JSON, timings isolated under one key)
// and the entropy CSV table. Identical (spec, command, version) inputs yield
// byte-identical reports once timings are stripped.

#include "shiftlab/system_spec.hpp"

#include <string>

namespace shiftlab {

enum class Command { entropy, proj_entropy, product_check, irreducibility, full };

// Accepts: entropy, proj-entropy, product-check, irreducibility, full.
Command command_from_name(const std::string& name);
std::string command_name(Command cmd);

struct RunOptions {
    std::size_t max_cells = 64; // enumeration capacity (extended-window cells)
    int margin_sweep = -1;      // K >= 0: also run margins {-j..j}^d for j = 0..K
    int irreducibility_scale = 3;
    int strip_width_max = 8;
};

struct RunReport {
    std::string report_json;
    std::string entropy_csv; // empty when the command produces no table
};

RunReport run_report(const SystemSpec& spec, Command command, const RunOptions& opts = {});

// The report with the timings section removed, for byte comparison.
std::string strip_timings(const std::string& report_json);

} // namespace shiftlab
