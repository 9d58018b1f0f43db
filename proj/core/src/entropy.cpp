#include "shiftlab/entropy.hpp"

#include "shiftlab/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace shiftlab {

EntropyReport entropy_bounds(const SftSpec& sft, const std::vector<PointSet>& windows,
                             const PointSet& margin, const Capacity& cap) {
    if (windows.empty()) throw InvalidWindow("entropy_bounds: no windows");
    EntropyReport report;
    report.bounds.resize(windows.size(),
                         EntropyBound{windows[0], margin, 0, 0.0, true, false, false});
    parallel_for(windows.size(), [&](std::size_t i) {
        const PointSet& F = windows[i];
        CountResult c = count_language(sft, F, margin, cap);
        EntropyBound b{F, margin, c.count, 0.0, true, c.exact, c.count == 0};
        b.value = b.empty_system ? -std::numeric_limits<double>::infinity()
                                 : ln_big_over(b.count, F.size());
        report.bounds[i] = std::move(b);
    });
    report.best_upper = std::numeric_limits<double>::infinity();
    for (const EntropyBound& b : report.bounds)
        report.best_upper = std::min(report.best_upper, b.value);
    if (sft.is_full_shift()) {
        report.exact_value = std::log(static_cast<double>(sft.alphabet_size()));
    } else if (sft.dim() == 1) {
        TransferMatrix1D t = transfer_matrix_1d(sft, cap);
        if (t.spectral_radius > 0.0) report.exact_value = std::log(t.spectral_radius);
    }
    return report;
}

std::vector<StripBound> strip_bounds_2d(const SftSpec& sft, const std::vector<int>& widths,
                                        const Capacity& cap) {
    if (sft.dim() != 2) throw DimensionError("strip_bounds_2d: dimension must be 2");
    if (!sft.nearest_neighbor())
        throw UnsupportedInteraction("strip_bounds_2d: interaction diameter exceeds 2");
    std::vector<StripBound> out(widths.size());
    parallel_for(widths.size(), [&](std::size_t wi) {
        int m = widths[wi];
        if (m < 1 || m > 12)
            throw InvalidWindow("strip_bounds_2d: width " + std::to_string(m) +
                                " outside 1..12");
        PointSet column = folner_box({1, m});
        PointSet margin1 = PointSet(2, {origin(2)});
        Capacity col_cap = cap;
        col_cap.max_cells = std::max<std::size_t>(cap.max_cells, static_cast<std::size_t>(m));
        col_cap.max_patterns = cap.max_states + 1;
        LanguageSet states = enumerate_language(sft, column, margin1, col_cap);
        if (states.size() > cap.max_states)
            throw CapacityError("strip_bounds_2d: width " + std::to_string(m) +
                                " exceeds max_states");
        std::size_t n = states.size();
        PointSet two_cols = folner_box({2, m});
        std::vector<std::vector<double>> matrix(n, std::vector<double>(n, 0.0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                ValueVec v = states.patterns[i];
                v.insert(v.end(), states.patterns[j].begin(), states.patterns[j].end());
                if (locally_admissible(Pattern(two_cols, v), sft)) matrix[i][j] = 1.0;
            }
        double rho = n == 0 ? 0.0 : spectral_radius(matrix);
        StripBound b;
        b.width = m;
        b.states = n;
        b.value = rho > 0.0 ? std::log(rho) / m : -std::numeric_limits<double>::infinity();
        out[wi] = b;
    });
    return out;
}

double entropy_exact_1d(const SftSpec& sft, const Capacity& cap) {
    if (sft.dim() != 1) throw DimensionError("entropy_exact_1d: dimension must be 1");
    TransferMatrix1D t = transfer_matrix_1d(sft, cap);
    if (t.spectral_radius <= 0.0)
        throw EmptySystem("entropy_exact_1d: system admits no bi-infinite configuration");
    return std::log(t.spectral_radius);
}

} // namespace shiftlab
