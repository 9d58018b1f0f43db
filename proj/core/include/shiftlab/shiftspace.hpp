#pragma once

// Shifts of finite type over Z^d: alphabets, patterns, local admissibility,
// margin-k language enumeration and counting, and 1-D transfer matrices.
//
// Languages are computed as margin approximations: the restriction to F of
// the locally admissible patterns on F (+) margin. Every result is a
// certified superset of the true language; the `exact` flag is set only when
// a finite certificate applies (full shift, or a safe symbol that appears in
// no forbidden pattern).

#include "shiftlab/bigint.hpp"
#include "shiftlab/errors.hpp"
#include "shiftlab/lattice.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace shiftlab {

using Symbol = std::uint8_t;
using ValueVec = std::vector<Symbol>;

constexpr std::size_t kMaxAlphabet = 255;

class Alphabet {
public:
    explicit Alphabet(std::vector<std::string> names);

    std::size_t size() const { return names_.size(); }
    const std::string& name(Symbol s) const;
    std::optional<Symbol> index_of(const std::string& name) const;
    const std::vector<std::string>& names() const { return names_; }

    friend bool operator==(const Alphabet& a, const Alphabet& b) = default;

private:
    std::vector<std::string> names_;
};

// A finite configuration: symbol values on a finite window, stored in the
// window's canonical (lexicographic) order.
struct Pattern {
    PointSet support;
    ValueVec values;

    Pattern(PointSet s, ValueVec v);

    Symbol at(const Point& p) const;
    Pattern translated(const Point& v) const;
    // Translate so the lexicographically least support point is the origin.
    Pattern normalized() const;

    friend bool operator==(const Pattern& a, const Pattern& b) = default;
};

// Alphabet plus finitely many forbidden patterns; defines the SFT X.
class SftSpec {
public:
    SftSpec(int dim, Alphabet alphabet, std::vector<Pattern> forbidden);

    int dim() const { return dim_; }
    const Alphabet& alphabet() const { return alphabet_; }
    std::size_t alphabet_size() const { return alphabet_.size(); }
    // Forbidden patterns, normalized so each support starts at the origin.
    const std::vector<Pattern>& forbidden() const { return forbidden_; }
    // Union of the forbidden supports; its diameter bounds the interaction range.
    const PointSet& window_shape() const { return window_shape_; }

    bool is_full_shift() const { return forbidden_.empty(); }
    // A symbol that appears in no forbidden pattern. Filling with it extends
    // any locally admissible pattern to a point of X, so margin languages
    // are exact whenever one exists.
    std::optional<Symbol> safe_symbol() const { return safe_symbol_; }
    bool languages_exact() const { return is_full_shift() || safe_symbol_.has_value(); }

    // Interaction extent along one axis (max span of a forbidden support).
    Coord extent(int axis) const;
    Coord interaction_diameter() const;
    bool nearest_neighbor() const;

private:
    int dim_;
    Alphabet alphabet_;
    std::vector<Pattern> forbidden_;
    PointSet window_shape_;
    std::optional<Symbol> safe_symbol_;
};

// Enumerated margin language on a window. Patterns are value vectors in the
// window's canonical order, sorted lexicographically.
struct LanguageSet {
    PointSet window;
    PointSet margin;
    std::vector<ValueVec> patterns;
    bool exact = false;

    std::size_t size() const { return patterns.size(); }
    bool contains(const ValueVec& v) const;
};

// Hard limits for the enumeration kernels; desk-scale tool, fail loudly.
struct Capacity {
    std::size_t max_cells = 64;            // extended-window cells per materializing call
    std::size_t max_patterns = 1u << 21;   // materialized patterns per call
    std::size_t max_profiles = 1u << 22;   // DP profile states
    std::size_t max_states = 4096;         // transfer-matrix states
    std::uint64_t max_nodes = 400'000'000; // search-tree nodes per call
};

// True iff no translate of a forbidden pattern fits inside p and matches it.
bool locally_admissible(const Pattern& p, const SftSpec& sft);

// Exact count of locally admissible patterns on a window (no margin),
// computed by a frontier-profile DP in lexicographic cell order.
BigInt count_locally_admissible(const SftSpec& sft, const PointSet& window,
                                const Capacity& cap = {});

// The margin language { q|_F : q locally admissible on F (+) margin }.
LanguageSet enumerate_language(const SftSpec& sft, const PointSet& F,
                               const PointSet& margin, const Capacity& cap = {});

struct CountResult {
    BigInt count;
    bool exact = false;
};

// |enumerate_language(sft, F, margin)| without materializing when a fast
// path applies (full shift, safe symbol, or margin == {origin}).
CountResult count_language(const SftSpec& sft, const PointSet& F,
                           const PointSet& margin, const Capacity& cap = {});

// Is there a locally admissible pattern on `window` taking the pinned values?
bool admissible_completion_exists(const SftSpec& sft, const PointSet& window,
                                  const std::vector<std::pair<Point, Symbol>>& pins,
                                  const Capacity& cap = {});

// Reusable form of the same query: constraint tables for a fixed window are
// built once, then many pin sets can be tested, concurrently if desired.
class CompletionOracle {
public:
    CompletionOracle(const SftSpec& sft, PointSet window, const Capacity& cap = {});
    ~CompletionOracle();
    CompletionOracle(CompletionOracle&&) noexcept;
    CompletionOracle& operator=(CompletionOracle&&) noexcept;

    const PointSet& window() const;
    bool exists(const std::vector<std::pair<Point, Symbol>>& pins) const;

private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
};

struct TransferMatrix1D {
    std::vector<ValueVec> states;                    // admissible words of length L-1
    std::vector<std::vector<std::uint64_t>> matrix;  // counts of one-step extensions
    double spectral_radius = 0.0;
};

// Exact 1-D engine: de Bruijn transfer matrix over words of length L-1,
// L the interaction diameter. Entropy of the SFT is ln(spectral_radius).
TransferMatrix1D transfer_matrix_1d(const SftSpec& sft, const Capacity& cap = {});

// Spectral radius of a nonnegative square matrix to relative tolerance 1e-12.
double spectral_radius(const std::vector<std::vector<double>>& m);

// Sum of all entries of m^k, exact.
BigInt matrix_power_entry_sum(const std::vector<std::vector<std::uint64_t>>& m,
                              unsigned k);

} // namespace shiftlab
