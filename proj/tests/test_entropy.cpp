#include "doctest.h"

#include "shiftlab/entropy.hpp"
#include "support/corpus.hpp"

#include <cmath>

using namespace shiftlab;
using namespace shiftlab::testing;

namespace {
const double kLn2 = 0.6931471805599453;
const double kLnPhi = 0.4812118250596034; // ln((1+sqrt5)/2)
}

TEST_CASE("full shift bounds are ln|A| for every window") {
    std::vector<PointSet> windows;
    for (Coord n = 1; n <= 5; ++n) windows.push_back(box_2d(n, n));
    EntropyReport r = entropy_bounds(full_shift_2d(), windows, origin_margin(2));
    for (const EntropyBound& b : r.bounds) {
        CHECK(b.value == doctest::Approx(kLn2).epsilon(1e-14));
        CHECK(b.exact);
        CHECK(b.certified_upper);
    }
    CHECK(r.best_upper == doctest::Approx(kLn2).epsilon(1e-14));
    REQUIRE(r.exact_value.has_value());
    CHECK(*r.exact_value == doctest::Approx(kLn2).epsilon(1e-14));
}

TEST_CASE("golden-mean-rows window bounds, frozen Fibonacci counts") {
    SftSpec sft = golden_mean_rows_2d();
    EntropyReport r =
        entropy_bounds(sft, {folner_box({8, 1}), folner_box({16, 1})}, origin_margin(2));
    CHECK(r.bounds[0].count == BigInt(55));
    CHECK(r.bounds[0].value == doctest::Approx(std::log(55.0) / 8).epsilon(1e-13));
    CHECK(r.bounds[1].count == BigInt(2584));
    CHECK(r.bounds[1].value == doctest::Approx(std::log(2584.0) / 16).epsilon(1e-13));
    CHECK(r.bounds[1].exact); // safe symbol certificate
}

TEST_CASE("entropy value recomputes from count bit-for-bit") {
    SftSpec sft = hard_square_2d();
    EntropyReport r = entropy_bounds(sft, {box_2d(4, 4), box_2d(5, 5)}, centered_cube(2, 1));
    for (const EntropyBound& b : r.bounds) {
        CHECK(b.value == ln_big_over(b.count, b.window.size()));
        CHECK(std::abs(b.value - ln_big(b.count) / static_cast<double>(b.window.size())) <=
              1e-12);
    }
}

TEST_CASE("best_upper nonincreasing along nested box chains") {
    SftSpec sft = hard_square_2d();
    double prev = std::numeric_limits<double>::infinity();
    std::vector<PointSet> windows;
    for (Coord n = 1; n <= 6; ++n) {
        windows.push_back(box_2d(n, n));
        EntropyReport r = entropy_bounds(sft, windows, centered_cube(2, 1));
        CHECK(r.best_upper <= prev + 1e-15);
        prev = r.best_upper;
    }
}

TEST_CASE("exact 1-D values") {
    CHECK(entropy_exact_1d(golden_mean_1d()) == doctest::Approx(kLnPhi).epsilon(1e-10));
    SftSpec full4(1, Alphabet({"a", "b", "c", "d"}), {});
    CHECK(entropy_exact_1d(full4) == doctest::Approx(std::log(4.0)).epsilon(1e-13));
    CHECK(entropy_exact_1d(alternating_1d()) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK_THROWS_AS(entropy_exact_1d(hard_square_2d()), DimensionError);
    SftSpec empty(1, Alphabet({"0"}), {word_pattern_1d({0})});
    CHECK_THROWS_AS(entropy_exact_1d(empty), EmptySystem);
}

TEST_CASE("1-D bounds sit above the exact value") {
    SftSpec gm = golden_mean_1d();
    double exact = entropy_exact_1d(gm);
    std::vector<PointSet> windows;
    for (Coord n = 1; n <= 16; ++n) windows.push_back(interval_1d(n));
    EntropyReport r = entropy_bounds(gm, windows, origin_margin(1));
    for (const EntropyBound& b : r.bounds) CHECK(b.value >= exact - 1e-9);
    REQUIRE(r.exact_value.has_value());
    CHECK(r.best_upper >= *r.exact_value - 1e-9);
    CHECK(r.best_upper - exact < 0.05); // window 16 is already close
}

TEST_CASE("strip bounds for the hard square") {
    std::vector<StripBound> bounds = strip_bounds_2d(hard_square_2d(), {1, 2});
    REQUIRE(bounds.size() == 2);
    CHECK(bounds[0].states == 2);
    CHECK(bounds[0].value == doctest::Approx(kLnPhi).epsilon(1e-10));
    CHECK(bounds[1].states == 3);
    CHECK(bounds[1].value == doctest::Approx(0.44068679350977147).epsilon(1e-10));
}

TEST_CASE("strip bounds nonincreasing up to width 8") {
    std::vector<int> widths;
    for (int m = 1; m <= 8; ++m) widths.push_back(m);
    std::vector<StripBound> bounds = strip_bounds_2d(hard_square_2d(), widths);
    for (std::size_t i = 1; i < bounds.size(); ++i)
        CHECK(bounds[i].value <= bounds[i - 1].value + 1e-12);
}

TEST_CASE("strip bounds of the full shift are ln 2") {
    for (const StripBound& b : strip_bounds_2d(full_shift_2d(), {1, 2, 3}))
        CHECK(b.value == doctest::Approx(kLn2).epsilon(1e-12));
}

TEST_CASE("strip bounds reject wide interactions") {
    SftSpec wide(2, binary_alphabet(),
                 {Pattern(PointSet(2, {{0, 0}, {2, 0}}), {1, 1})});
    CHECK_THROWS_AS(strip_bounds_2d(wide, {2}), UnsupportedInteraction);
    CHECK_THROWS_AS(strip_bounds_2d(hard_square_2d(), {13}), InvalidWindow);
}
