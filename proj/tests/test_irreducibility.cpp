#include "doctest.h"

#include "shiftlab/irreducibility.hpp"
#include "shiftlab/lattice.hpp"
#include "support/corpus.hpp"

using namespace shiftlab;
using namespace shiftlab::testing;

namespace {
MixingShape origin_shape(int dim) { return MixingShape(PointSet(dim, {origin(dim)})); }
MixingShape cube_shape(int dim, Coord r) { return MixingShape(centered_cube(dim, r)); }
} // namespace

TEST_CASE("mixing shape must contain the origin") {
    CHECK_THROWS_AS(MixingShape(PointSet(2, {{1, 0}})), InvalidShape);
}

TEST_CASE("full shift passes trivially") {
    IrreducibilityVerdict v =
        check_strong_irreducibility(full_shift_2d(), origin_shape(2), 3, origin_margin(2));
    CHECK(v.passed());
    CHECK(v.exact_languages);
}

TEST_CASE("two fixed points: counterexample with singleton boxes") {
    IrreducibilityVerdict v = check_strong_irreducibility(
        two_fixed_points_2d(), origin_shape(2), 2, centered_cube(2, 1));
    REQUIRE_FALSE(v.passed());
    REQUIRE(v.witness.has_value());
    const GlueWitness& w = *v.witness;
    CHECK(w.b1.size() == 1);
    CHECK(w.b2.size() == 1);
    CHECK(w.b1[0] == Point{0, 0});
    CHECK(w.p == ValueVec{0});
    CHECK(w.q == ValueVec{1});
    // the witness respects the separation constraint
    CHECK_FALSE(minkowski_extend(w.b1, origin_shape(2).points).contains(w.b2[0]));
}

TEST_CASE("hard square passes at scale 2 with the unit cube") {
    IrreducibilityVerdict v = check_strong_irreducibility(hard_square_2d(), cube_shape(2, 1),
                                                          2, centered_cube(2, 1));
    CHECK(v.passed());
    CHECK(v.exact_languages);
}

TEST_CASE("golden mean rows pass at scale 2") {
    IrreducibilityVerdict v = check_strong_irreducibility(
        golden_mean_rows_2d(), cube_shape(2, 1), 2, origin_margin(2));
    CHECK(v.passed());
}

TEST_CASE("checkerboard: counterexample from parity") {
    IrreducibilityVerdict v = check_strong_irreducibility(checkerboard_2d(), cube_shape(2, 1),
                                                          2, centered_cube(2, 1));
    REQUIRE_FALSE(v.passed());
    REQUIRE(v.witness.has_value());
    // the two pinned cells share a parity class but disagree in color
    const GlueWitness& w = *v.witness;
    Coord parity1 = (w.b1[0][0] + w.b1[0][1]) & 1;
    Coord parity2 = (w.b2[0][0] + w.b2[0][1]) & 1;
    CHECK(parity1 == parity2);
    CHECK(w.p[0] != w.q[0]);
}

TEST_CASE("monotone in D: any superset of a passing shape passes") {
    std::vector<Point> pts = centered_cube(2, 1).points();
    pts.push_back({3, 0});
    pts.push_back({0, -3});
    MixingShape bigger(PointSet(2, pts));
    CHECK(check_strong_irreducibility(hard_square_2d(), bigger, 2, centered_cube(2, 1))
              .passed());
}

TEST_CASE("golden mean (d=1) passes with interval shape") {
    MixingShape d1(centered_cube(1, 1));
    IrreducibilityVerdict v =
        check_strong_irreducibility(golden_mean_1d(), d1, 3, origin_margin(1));
    CHECK(v.passed());
}

TEST_CASE("alternating system (d=1) has a gluing obstruction") {
    // forbid 00 and 11: the two alternating points cannot be mixed
    MixingShape d1(centered_cube(1, 1));
    IrreducibilityVerdict v =
        check_strong_irreducibility(alternating_1d(), d1, 2, origin_margin(1));
    REQUIRE_FALSE(v.passed());
    REQUIRE(v.witness.has_value());
}

TEST_CASE("inheritance shadow: product gluing passes where X does") {
    SubgroupBasis row(2, {{1, 0}});
    CHECK(check_product_gluing(hard_square_2d(), row, cube_shape(2, 1), 2,
                               centered_cube(2, 1))
              .passed());
    CHECK(check_product_gluing(golden_mean_rows_2d(), row, cube_shape(2, 1), 2,
                               origin_margin(2))
              .passed());
    CHECK(check_product_gluing(full_shift_2d(), row, origin_shape(2), 3, origin_margin(2))
              .passed());
}

TEST_CASE("scale validation") {
    CHECK_THROWS_AS(
        check_strong_irreducibility(hard_square_2d(), cube_shape(2, 1), 0, origin_margin(2)),
        InvalidWindow);
}
