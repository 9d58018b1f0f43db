#include "doctest.h"

#include "shiftlab/shiftspace.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"

#include <cmath>
#include <random>

using namespace shiftlab;
using namespace shiftlab::testing;

TEST_CASE("alphabet validation") {
    CHECK_THROWS_AS(Alphabet({}), InvalidPattern);
    CHECK_THROWS_AS(Alphabet({"a", "a"}), InvalidPattern);
    Alphabet a({"x", "y"});
    CHECK(a.index_of("y") == Symbol{1});
    CHECK_FALSE(a.index_of("z").has_value());
    CHECK(a.name(0) == "x");
}

TEST_CASE("pattern normalization") {
    Pattern p(PointSet(2, {{2, 3}, {3, 3}}), {1, 0});
    Pattern n = p.normalized();
    CHECK(n.support[0] == Point{0, 0});
    CHECK(n.support[1] == Point{1, 0});
    CHECK(n.values == ValueVec{1, 0});
    CHECK(n.at({1, 0}) == 0);
    CHECK_THROWS_AS(n.at({5, 5}), InvalidPattern);
}

TEST_CASE("sft spec basics") {
    SftSpec hs = hard_square_2d();
    CHECK(hs.window_shape().size() == 3); // origin, (1,0), (0,1)
    CHECK(hs.safe_symbol() == Symbol{0});
    CHECK(hs.extent(0) == 2);
    CHECK(hs.extent(1) == 2);
    CHECK(hs.nearest_neighbor());

    SftSpec cb = checkerboard_2d();
    CHECK_FALSE(cb.safe_symbol().has_value());
    CHECK_FALSE(cb.languages_exact());

    CHECK(full_shift_2d().is_full_shift());
    CHECK(full_shift_2d().languages_exact());
}

TEST_CASE("locally_admissible examples") {
    SftSpec hs = hard_square_2d();
    // two horizontally adjacent 1s
    CHECK_FALSE(locally_admissible(Pattern(PointSet(2, {{0, 0}, {1, 0}}), {1, 1}), hs));
    // all-0 pattern is fine whenever every forbidden pattern contains a 1
    CHECK(locally_admissible(Pattern(folner_box({3, 3}), ValueVec(9, 0)), hs));
    // golden mean "101"
    CHECK(locally_admissible(Pattern(interval_1d(3), {1, 0, 1}), golden_mean_1d()));
    CHECK_FALSE(locally_admissible(Pattern(interval_1d(3), {1, 1, 0}), golden_mean_1d()));
    CHECK_THROWS_AS(locally_admissible(Pattern(interval_1d(1), {7}), golden_mean_1d()),
                    InvalidPattern);
}

TEST_CASE("enumerate_language frozen examples") {
    SUBCASE("full shift 2x2") {
        LanguageSet l = enumerate_language(full_shift_2d(), box_2d(2, 2), origin_margin(2));
        CHECK(l.size() == 16);
        CHECK(l.exact);
    }
    SUBCASE("golden mean length 3 has 5 words") {
        LanguageSet l = enumerate_language(golden_mean_1d(), interval_1d(3), origin_margin(1));
        CHECK(l.size() == 5);
        std::vector<ValueVec> expect{{0, 0, 0}, {0, 0, 1}, {0, 1, 0}, {1, 0, 0}, {1, 0, 1}};
        CHECK(l.patterns == expect);
    }
    SUBCASE("hard square 2x2 has 7 patterns") {
        LanguageSet l = enumerate_language(hard_square_2d(), box_2d(2, 2), origin_margin(2));
        CHECK(l.size() == 7);
    }
}

TEST_CASE("enumeration matches the brute-force oracle") {
    std::vector<SftSpec> systems{golden_mean_1d(), alternating_1d(), hard_square_2d(),
                                 golden_mean_rows_2d(), checkerboard_2d(),
                                 two_fixed_points_2d()};
    for (const SftSpec& sft : systems) {
        std::vector<PointSet> windows;
        std::vector<PointSet> margins;
        if (sft.dim() == 1) {
            windows = {interval_1d(1), interval_1d(3), interval_1d(4)};
            margins = {origin_margin(1), centered_cube(1, 1), centered_cube(1, 2)};
        } else {
            windows = {box_2d(1, 1), box_2d(2, 2), box_2d(3, 2)};
            margins = {origin_margin(2), centered_cube(2, 1)};
        }
        for (const PointSet& F : windows)
            for (const PointSet& S : margins) {
                LanguageSet got = enumerate_language(sft, F, S);
                CHECK(got.patterns == naive_margin_language(sft, F, S));
            }
    }
}

TEST_CASE("count_language agrees with enumerate_language") {
    std::vector<SftSpec> systems{golden_mean_1d(), hard_square_2d(), checkerboard_2d(),
                                 golden_mean_rows_2d(), two_fixed_points_2d()};
    for (const SftSpec& sft : systems) {
        PointSet F = sft.dim() == 1 ? interval_1d(4) : box_2d(3, 3);
        for (Coord j = 0; j <= 2; ++j) {
            PointSet S = centered_cube(sft.dim(), j);
            CountResult c = count_language(sft, F, S);
            CHECK(c.count == BigInt(enumerate_language(sft, F, S).size()));
        }
    }
}

TEST_CASE("margin monotonicity") {
    std::vector<SftSpec> systems{golden_mean_1d(), hard_square_2d(), checkerboard_2d(),
                                 two_fixed_points_2d()};
    for (const SftSpec& sft : systems) {
        PointSet F = sft.dim() == 1 ? interval_1d(4) : box_2d(2, 3);
        LanguageSet wide = enumerate_language(sft, F, centered_cube(sft.dim(), 2));
        LanguageSet narrow = enumerate_language(sft, F, centered_cube(sft.dim(), 1));
        LanguageSet none = enumerate_language(sft, F, origin_margin(sft.dim()));
        for (const ValueVec& p : wide.patterns) CHECK(narrow.contains(p));
        for (const ValueVec& p : narrow.patterns) CHECK(none.contains(p));
    }
}

TEST_CASE("shift invariance of language counts") {
    std::mt19937 rng(5);
    std::uniform_int_distribution<Coord> shift(-7, 7);
    for (const SftSpec& sft : {hard_square_2d(), checkerboard_2d()}) {
        PointSet F = box_2d(3, 2);
        PointSet S = centered_cube(2, 1);
        std::size_t base = enumerate_language(sft, F, S).size();
        for (int trial = 0; trial < 5; ++trial) {
            Point v{shift(rng), shift(rng)};
            CHECK(enumerate_language(sft, F.translated(v), S).size() == base);
        }
    }
}

TEST_CASE("sub-pattern closure under restriction") {
    SftSpec hs = hard_square_2d();
    PointSet F = box_2d(3, 3);
    PointSet Fsub = box_2d(2, 2);
    PointSet S = origin_margin(2);
    LanguageSet big = enumerate_language(hs, F, S);
    LanguageSet small = enumerate_language(hs, Fsub, S);
    std::vector<std::size_t> restriction;
    for (const Point& p : Fsub.points()) restriction.push_back(*F.index_of(p));
    for (const ValueVec& v : big.patterns) {
        ValueVec r;
        for (std::size_t idx : restriction) r.push_back(v[idx]);
        CHECK(small.contains(r));
    }
}

TEST_CASE("full shift counts are |A|^|F| for any margin") {
    SftSpec fs = full_shift_2d();
    for (Coord j = 0; j <= 2; ++j) {
        CountResult c = count_language(fs, box_2d(3, 2), centered_cube(2, j));
        CHECK(c.count == BigInt(64));
        CHECK(c.exact);
    }
}

TEST_CASE("profile DP matches brute force on window counts") {
    for (const SftSpec& sft : {hard_square_2d(), checkerboard_2d(), golden_mean_rows_2d()}) {
        for (Coord n = 1; n <= 3; ++n) {
            PointSet w = box_2d(n, 3);
            CHECK(count_locally_admissible(sft, w) ==
                  BigInt(naive_locally_admissible(sft, w).size()));
        }
    }
    // string counts
    CHECK(count_locally_admissible(golden_mean_1d(), interval_1d(8)) == BigInt(55));
    CHECK(count_locally_admissible(golden_mean_1d(), interval_1d(16)) == BigInt(2584));
}

TEST_CASE("hard square window counts, frozen") {
    CHECK(count_locally_admissible(hard_square_2d(), box_2d(2, 2)) == BigInt(7));
    CHECK(count_locally_admissible(hard_square_2d(), box_2d(3, 3)) == BigInt(63));
    CHECK(count_locally_admissible(hard_square_2d(), box_2d(4, 4)) == BigInt(1234));
}

TEST_CASE("transfer_matrix_1d golden mean") {
    TransferMatrix1D t = transfer_matrix_1d(golden_mean_1d());
    REQUIRE(t.states.size() == 2);
    CHECK(t.matrix[0][0] == 1);
    CHECK(t.matrix[0][1] == 1);
    CHECK(t.matrix[1][0] == 1);
    CHECK(t.matrix[1][1] == 0);
    CHECK(t.spectral_radius == doctest::Approx(1.6180339887498949).epsilon(1e-12));
}

TEST_CASE("transfer_matrix_1d full shift and alternating") {
    SftSpec full3(1, Alphabet({"a", "b", "c"}), {});
    CHECK(transfer_matrix_1d(full3).spectral_radius == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(transfer_matrix_1d(alternating_1d()).spectral_radius ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(transfer_matrix_1d(hard_square_2d()), DimensionError);
}

TEST_CASE("matrix powers count words, lengths 1-12") {
    TransferMatrix1D t = transfer_matrix_1d(golden_mean_1d());
    for (Coord n = 1; n <= 12; ++n) {
        BigInt brute(naive_locally_admissible(golden_mean_1d(), interval_1d(n)).size());
        CHECK(matrix_power_entry_sum(t.matrix, static_cast<unsigned>(n - 1)) == brute);
    }
}

TEST_CASE("pinned completion queries") {
    SftSpec hs = hard_square_2d();
    PointSet w = box_2d(3, 3);
    CHECK(admissible_completion_exists(hs, w, {{{0, 0}, 1}, {{2, 2}, 1}}));
    CHECK_FALSE(admissible_completion_exists(hs, w, {{{0, 0}, 1}, {{0, 1}, 1}}));
    CHECK_THROWS_AS(admissible_completion_exists(hs, w, {{{9, 9}, 0}}), InvalidPattern);
}

TEST_CASE("capacity errors") {
    Capacity tiny;
    tiny.max_cells = 4;
    CHECK_THROWS_AS(enumerate_language(full_shift_2d(), box_2d(3, 3), origin_margin(2), tiny),
                    CapacityError);
    CHECK_THROWS_AS(count_locally_admissible(hard_square_2d(), box_2d(3, 3), tiny),
                    CapacityError);
}

TEST_CASE("empty system enumerations are allowed") {
    // forbid the only symbol: no admissible pattern anywhere
    SftSpec empty(1, Alphabet({"0"}), {word_pattern_1d({0})});
    LanguageSet l = enumerate_language(empty, interval_1d(2), origin_margin(1));
    CHECK(l.patterns.empty());
    CHECK(count_language(empty, interval_1d(2), origin_margin(1)).count == 0);
}
