#pragma once

// Brute-force reference implementations for the test suites. These stay
// deliberately naive (full enumeration straight from the definitions) and
// independent of the library's search kernels.

#include "shiftlab/shiftspace.hpp"

#include <set>
#include <vector>

namespace shiftlab::testing {

// Definition-level admissibility: no translate of any forbidden pattern that
// fits inside the window matches.
inline bool naive_admissible(const SftSpec& sft, const PointSet& window,
                             const ValueVec& values) {
    for (const Pattern& fp : sft.forbidden()) {
        for (const Point& anchor : window.points()) {
            bool match = true;
            for (std::size_t k = 0; k < fp.support.size(); ++k) {
                auto idx = window.index_of(add(anchor, fp.support[k]));
                if (!idx || values[*idx] != fp.values[k]) {
                    match = false;
                    break;
                }
            }
            if (match) return false;
        }
    }
    return true;
}

// All locally admissible assignments of a window, by exhaustive search.
inline std::vector<ValueVec> naive_locally_admissible(const SftSpec& sft,
                                                      const PointSet& window) {
    std::vector<ValueVec> out;
    std::size_t n = window.size();
    std::size_t k = sft.alphabet_size();
    ValueVec v(n, 0);
    for (;;) {
        if (naive_admissible(sft, window, v)) out.push_back(v);
        std::size_t i = n;
        while (i > 0) {
            if (static_cast<std::size_t>(++v[i - 1]) < k) break;
            v[--i] = 0;
        }
        if (i == 0) break;
    }
    return out;
}

// The margin language by definition: restrictions to F of admissible
// assignments of the extended window, deduplicated.
inline std::vector<ValueVec> naive_margin_language(const SftSpec& sft, const PointSet& F,
                                                   const PointSet& margin) {
    PointSet E = minkowski_extend(F, margin);
    std::vector<std::size_t> restriction;
    for (const Point& p : F.points()) restriction.push_back(*E.index_of(p));
    std::set<ValueVec> seen;
    for (const ValueVec& v : naive_locally_admissible(sft, E)) {
        ValueVec r;
        r.reserve(restriction.size());
        for (std::size_t idx : restriction) r.push_back(v[idx]);
        seen.insert(std::move(r));
    }
    return {seen.begin(), seen.end()};
}

} // namespace shiftlab::testing
