#pragma once

// Finite-scale verification of D-strong irreducibility: any two patterns on
// box windows separated by the mixing shape D must coexist in one locally
// admissible pattern. A pass is conservative evidence (margin languages are
// supersets, so passing is harder, not easier); a counterexample built from
// exact languages is a genuine refutation.

#include "shiftlab/lattice.hpp"
#include "shiftlab/shiftspace.hpp"

#include <optional>

namespace shiftlab {

class SubgroupBasis;

// The separation shape D; must contain the origin.
struct MixingShape {
    PointSet points;

    explicit MixingShape(PointSet pts) : points(std::move(pts)) {
        if (!points.contains(origin(points.dim())))
            throw InvalidShape("MixingShape: D must contain the origin");
    }
};

struct GlueWitness {
    PointSet b1;
    PointSet b2;
    ValueVec p; // pattern on b1, canonical order
    ValueVec q; // pattern on b2, canonical order
};

struct IrreducibilityVerdict {
    enum class Status { pass_at_scale, counterexample };
    Status status = Status::pass_at_scale;
    int scale = 0;
    std::optional<GlueWitness> witness;
    // true when the pattern pairs tested come from exact languages, which
    // makes a counterexample a genuine refutation
    bool exact_languages = false;

    bool passed() const { return status == Status::pass_at_scale; }
};

// Checks every geometry pair in canonical order: B1 a box anchored at the
// origin with sides <= scale, B2 a translated box with sides <= scale and
// offset coordinates in [-2*scale, 2*scale], subject to (D+B1) and B2
// disjoint. For each pair of margin-language patterns, searches for a
// locally admissible pattern on the margin-extended bounding box of B1 u B2
// restricting to both. The reported counterexample is the canonically least
// (B1 sides, B2 sides, B2 offset, p, q).
IrreducibilityVerdict check_strong_irreducibility(const SftSpec& sft, const MixingShape& D,
                                                  int scale, const PointSet& margin,
                                                  const Capacity& cap = {});

// The same geometry surface with the product system X_H^{G/H} in place of X:
// patterns come from product languages and gluing is searched piece-by-piece
// inside each coset. Finite-scale shadow of the inheritance theorem.
IrreducibilityVerdict check_product_gluing(const SftSpec& sft, const SubgroupBasis& H,
                                           const MixingShape& D, int scale,
                                           const PointSet& margin, const Capacity& cap = {});

} // namespace shiftlab
