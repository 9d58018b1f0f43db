#pragma once

// Entropy estimation in nats. Window counts give certified upper bounds via
// the infimum rule; exact values exist for d=1 (transfer matrix) and full
// shifts. Strip transfer matrices refine the bounds for nearest-neighbor 2-D
// systems.

#include "shiftlab/bigint.hpp"
#include "shiftlab/shiftspace.hpp"

#include <optional>
#include <vector>

namespace shiftlab {

// One window's contribution: value = ln(count)/|window|, an upper bound for
// h(X) whenever count comes from a (superset) margin language.
struct EntropyBound {
    PointSet window;
    PointSet margin;
    BigInt count;
    double value = 0.0;
    bool certified_upper = true;
    bool exact = false;        // count is the true |L_F(X)|
    bool empty_system = false; // count == 0; value is -infinity
};

struct EntropyReport {
    std::vector<EntropyBound> bounds;
    double best_upper = 0.0;
    std::optional<double> exact_value; // present for d=1 and full shifts
};

// One EntropyBound per window, margin shared. Windows are processed
// concurrently; the report is assembled in window order.
EntropyReport entropy_bounds(const SftSpec& sft, const std::vector<PointSet>& windows,
                             const PointSet& margin, const Capacity& cap = {});

struct StripBound {
    int width = 0;
    double value = 0.0;       // ln(spectral radius)/width
    std::size_t states = 0;
};

// Transfer-matrix bounds over height-m columns for nearest-neighbor 2-D
// systems; each value certifies h(X) <= value and they are nonincreasing
// in m for such systems.
std::vector<StripBound> strip_bounds_2d(const SftSpec& sft, const std::vector<int>& widths,
                                        const Capacity& cap = {});

// ln of the transfer-matrix spectral radius; exact for d=1.
double entropy_exact_1d(const SftSpec& sft, const Capacity& cap = {});

} // namespace shiftlab
