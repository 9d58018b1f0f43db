#pragma once

// Integer-lattice machinery for Z^d: points, finite windows, subgroups given
// by integer bases, quotient invariants, canonical coset representatives and
// Folner boxes. Everything here is exact integer arithmetic; iteration orders
// are lexicographic so equal sets serialize identically.

#include "shiftlab/errors.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace shiftlab {

using Coord = std::int64_t;

// A point of Z^d. std::vector's operator< is the lexicographic order used
// everywhere for canonical iteration.
using Point = std::vector<Coord>;

Point add(const Point& a, const Point& b);
Point sub(const Point& a, const Point& b);
Point negate(const Point& a);
bool is_origin(const Point& a);
Point origin(int dim);
std::string point_str(const Point& a);

// Finite nonempty set of lattice points, stored sorted and deduplicated.
class PointSet {
public:
    PointSet(int dim, std::vector<Point> pts);

    int dim() const { return dim_; }
    std::size_t size() const { return pts_.size(); }
    const std::vector<Point>& points() const { return pts_; }
    const Point& operator[](std::size_t i) const { return pts_[i]; }

    bool contains(const Point& p) const;
    // Index of p in canonical order, if present.
    std::optional<std::size_t> index_of(const Point& p) const;

    PointSet translated(const Point& v) const;

    friend bool operator==(const PointSet& a, const PointSet& b) = default;

private:
    int dim_;
    std::vector<Point> pts_;
};

// The box prod_i [0, side_i), the concrete Folner sequence used throughout.
PointSet folner_box(const std::vector<Coord>& side_lengths);

// {f + s : f in F, s in shape}. shape must contain the origin, so the result
// always contains F.
PointSet minkowski_extend(const PointSet& F, const PointSet& shape);

// Axis-aligned bounding box of a set, as a PointSet.
PointSet bounding_box(const PointSet& F);

// The cube {-radius..radius}^dim; radius 0 gives {origin}.
PointSet centered_cube(int dim, Coord radius);

class SubgroupBasis;

// Canonical coset-representative map for a subgroup H <= Z^d, built from the
// Hermite normal form of the basis. rep() reduces a point to the smallest
// nonnegative residues at the HNF pivot columns; it is constant on cosets and
// idempotent, and works for finite and infinite index alike.
class TransversalSection {
public:
    explicit TransversalSection(const SubgroupBasis& basis);

    int dim() const { return dim_; }
    int rank() const { return static_cast<int>(hnf_.size()); }

    Point rep(const Point& g) const;
    bool in_subgroup(const Point& h) const;

    // Coordinates u (w.r.t. the original basis rows) with u*B = h, when h
    // lies in the subgroup.
    std::optional<Point> sub_coordinates(const Point& h) const;

    // u*B for u in Z^r.
    Point embed(const Point& u) const;

    const std::vector<Point>& basis_rows() const { return rows_; }
    const std::vector<Point>& hnf_rows() const { return hnf_; }
    const std::vector<int>& pivot_columns() const { return pivots_; }

private:
    int dim_;
    std::vector<Point> rows_;   // original basis, r x d
    std::vector<Point> hnf_;    // row HNF of the basis
    std::vector<int> pivots_;   // pivot column of each HNF row
    std::vector<Point> trans_;  // unimodular T with T * rows = hnf, r x r
};

// Integer matrix whose rows generate a subgroup H <= Z^d. Rows must be
// linearly independent over Q; every subgroup of Z^d is normal.
class SubgroupBasis {
public:
    SubgroupBasis(int dim, std::vector<Point> rows);

    int dim() const { return dim_; }
    int rank() const { return static_cast<int>(rows_.size()); }
    const std::vector<Point>& rows() const { return rows_; }

    // Nontrivial Smith invariants s_1 | s_2 | ... (diagonal entries > 1).
    const std::vector<Coord>& invariants() const { return invariants_; }
    int free_rank() const { return dim_ - rank(); }
    bool finite_index() const { return rank() == dim_; }
    // |det| of the basis when rank == dim.
    Coord index() const;

    const TransversalSection& section() const { return *section_; }

private:
    int dim_;
    std::vector<Point> rows_;
    std::vector<Coord> invariants_;
    Coord index_ = 0; // 0 encodes infinite index
    std::shared_ptr<const TransversalSection> section_;
};

struct NormalFormInfo {
    std::vector<Coord> invariants;
    int free_rank = 0;
    std::optional<Coord> index; // nullopt when infinite
};

// Quotient structure G/H = Z^{free_rank} x prod Z_{s_i}.
NormalFormInfo normal_form(const SubgroupBasis& basis);

struct CosetPart {
    Point rep;
    PointSet part;
};

// Partition of F into pieces lying in single cosets of H, keyed and sorted by
// canonical representative.
std::vector<CosetPart> coset_decompose(const PointSet& F,
                                       const TransversalSection& section);

} // namespace shiftlab
