#pragma once

// Canonical JSON emission: keys sorted (nlohmann's default map order), floats
// printed with 17 significant digits so equal doubles serialize identically.
// Internal to the library; reports and spec echoes are byte-stable under it.

#include <json.hpp>

#include <string>

namespace shiftlab {

std::string canonical_dump(const nlohmann::json& j, int indent = 2);

} // namespace shiftlab
