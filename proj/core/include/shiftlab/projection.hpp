#pragma once

// Projection of an SFT onto a subgroup H <= Z^d, the assembly map that glues
// one H-configuration per coset into a configuration on Z^d, the resulting
// product system, and the inclusion/equality comparisons between X and it.
//
// The projection X_H is represented only through language queries in
// sub-coordinates; it is generally not of finite type even when X is.

#include "shiftlab/entropy.hpp"
#include "shiftlab/lattice.hpp"
#include "shiftlab/shiftspace.hpp"

#include <map>
#include <optional>
#include <vector>

namespace shiftlab {

// A finite window of H seen through H = Z^r: sub-coordinates w.r.t. the
// basis rows, plus their embedded images in Z^d.
class ProjectedWindow {
public:
    ProjectedWindow(PointSet sub_points, const SubgroupBasis& basis);

    const PointSet& sub_points() const { return sub_; }
    const PointSet& embedded_points() const { return embedded_; }
    // embedded index of the i-th sub point
    std::size_t embedded_index(std::size_t i) const { return embed_idx_[i]; }
    const std::vector<Point>& embedding() const { return rows_; }

private:
    PointSet sub_;
    PointSet embedded_;
    std::vector<std::size_t> embed_idx_;
    std::vector<Point> rows_;
};

// Margin language of the projection X_H on a window of H, expressed in
// sub-coordinates. A certified superset of the true L(X_H); exact under the
// same certificates as enumerate_language.
LanguageSet project_language(const SftSpec& sft, const SubgroupBasis& H,
                             const PointSet& F_sub, const PointSet& margin,
                             const Capacity& cap = {});

CountResult project_count(const SftSpec& sft, const SubgroupBasis& H,
                          const PointSet& F_sub, const PointSet& margin,
                          const Capacity& cap = {});

// Entropy report for X_H over windows in sub-coordinates. When H has rank 1
// and the projected language is certified exact, exact_value carries the
// de Bruijn transfer-matrix entropy of X_H.
EntropyReport projectional_entropy(const SftSpec& sft, const SubgroupBasis& H,
                                   const std::vector<PointSet>& windows_sub,
                                   const PointSet& margin, const Capacity& cap = {});

// de Bruijn exact value on its own; nullopt when no certificate applies
// (H not rank 1, no safe symbol, or empty system).
std::optional<double> projectional_exact_1d(const SftSpec& sft, const SubgroupBasis& H,
                                            const PointSet& margin,
                                            const Capacity& cap = {});

// One H-configuration window per coset: the finite slice of a family
// (x^gamma) indexed by canonical representatives.
struct CosetFamilyEntry {
    ProjectedWindow window;
    ValueVec values; // aligned with window.sub_points() order
};

struct CosetFamily {
    std::map<Point, CosetFamilyEntry> entries; // keyed by canonical rep
};

// The assembly map: output(g) = family[rep(g)] evaluated at g - rep(g),
// read through sub-coordinates. Throws IncompleteFamily naming the first
// uncovered point.
Pattern assemble_phi(const CosetFamily& family, const TransversalSection& section,
                     const PointSet& F);

// Margin language of the product system X_H^{G/H} on F: the coset pieces of
// F are independent, each free to carry any projected-language word.
// rep_offsets optionally translates the representative of a coset (keyed by
// canonical rep, value must lie in H); the resulting pattern set does not
// depend on it.
LanguageSet product_language(const SftSpec& sft, const SubgroupBasis& H, const PointSet& F,
                             const PointSet& margin, const Capacity& cap = {},
                             const std::map<Point, Point>& rep_offsets = {});

// |product_language| = prod of per-piece projected counts, without
// materializing.
CountResult product_count(const SftSpec& sft, const SubgroupBasis& H, const PointSet& F,
                          const PointSet& margin, const Capacity& cap = {});

struct WindowComparison {
    PointSet window;
    BigInt count_x;
    BigInt count_product;
    bool equal = false;             // the two languages coincide at this scale
    bool inclusion_verified = false; // pattern-level check ran (small windows)
    bool inclusion_ok = true;        // no X-pattern missing from the product
    std::optional<Pattern> witness;  // lex-least product pattern not in X
};

struct ComparisonReport {
    std::vector<WindowComparison> windows;
    bool all_equal = true;
    // entropy-gap summary over the given windows and their coset pieces
    double best_upper_x = 0.0;
    double best_upper_xh = 0.0;
    std::optional<double> exact_x;
    std::optional<double> exact_xh;
};

// Finite-scale test of X subset X_H^{G/H} and of language equality, same
// margin on both sides. Equality verdicts are always scoped to these windows
// and this margin.
ComparisonReport compare_systems(const SftSpec& sft, const SubgroupBasis& H,
                                 const std::vector<PointSet>& windows,
                                 const PointSet& margin, const Capacity& cap = {});

} // namespace shiftlab
