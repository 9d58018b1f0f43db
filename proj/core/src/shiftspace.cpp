#include "shiftlab/shiftspace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace shiftlab {

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.empty()) throw InvalidPattern("alphabet must have at least one symbol");
    if (names_.size() > kMaxAlphabet)
        throw CapacityError("alphabet exceeds " + std::to_string(kMaxAlphabet) + " symbols");
    for (std::size_t i = 0; i < names_.size(); ++i)
        for (std::size_t j = i + 1; j < names_.size(); ++j)
            if (names_[i] == names_[j])
                throw InvalidPattern("duplicate alphabet symbol '" + names_[i] + "'");
}

const std::string& Alphabet::name(Symbol s) const {
    if (s >= names_.size()) throw InvalidPattern("symbol index out of range");
    return names_[s];
}

std::optional<Symbol> Alphabet::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return static_cast<Symbol>(i);
    return std::nullopt;
}

Pattern::Pattern(PointSet s, ValueVec v) : support(std::move(s)), values(std::move(v)) {
    if (support.size() != values.size())
        throw InvalidPattern("pattern values do not cover the support exactly");
}

Symbol Pattern::at(const Point& p) const {
    auto idx = support.index_of(p);
    if (!idx) throw InvalidPattern("pattern has no value at " + point_str(p));
    return values[*idx];
}

Pattern Pattern::translated(const Point& v) const {
    // translation preserves lexicographic order, so values stay aligned
    return Pattern(support.translated(v), values);
}

Pattern Pattern::normalized() const {
    const Point& lo = support[0];
    if (is_origin(lo)) return *this;
    return translated(negate(lo));
}

SftSpec::SftSpec(int dim, Alphabet alphabet, std::vector<Pattern> forbidden)
    : dim_(dim),
      alphabet_(std::move(alphabet)),
      window_shape_(PointSet(std::max(dim, 1), {origin(std::max(dim, 1))})) {
    if (dim_ < 1) throw DimensionError("SftSpec: dimension must be >= 1");
    forbidden_.reserve(forbidden.size());
    std::vector<Point> shape_pts{origin(dim_)};
    std::vector<bool> used(alphabet_.size(), false);
    for (Pattern& p : forbidden) {
        if (p.support.dim() != dim_)
            throw DimensionError("forbidden pattern has wrong dimension");
        for (Symbol s : p.values) {
            if (s >= alphabet_.size())
                throw InvalidPattern("forbidden pattern uses a symbol outside the alphabet");
            used[s] = true;
        }
        forbidden_.push_back(p.normalized());
        for (const Point& q : forbidden_.back().support.points()) shape_pts.push_back(q);
    }
    window_shape_ = PointSet(dim_, std::move(shape_pts));
    for (std::size_t s = 0; s < used.size(); ++s)
        if (!used[s]) {
            safe_symbol_ = static_cast<Symbol>(s);
            break;
        }
    if (forbidden_.empty()) safe_symbol_ = static_cast<Symbol>(0);
}

Coord SftSpec::extent(int axis) const {
    if (axis < 0 || axis >= dim_) throw DimensionError("extent: axis out of range");
    Coord best = 1;
    for (const Pattern& p : forbidden_) {
        Coord lo = p.support[0][axis], hi = lo;
        for (const Point& q : p.support.points()) {
            lo = std::min(lo, q[axis]);
            hi = std::max(hi, q[axis]);
        }
        best = std::max(best, hi - lo + 1);
    }
    return best;
}

Coord SftSpec::interaction_diameter() const {
    Coord best = 1;
    for (int a = 0; a < dim_; ++a) best = std::max(best, extent(a));
    return best;
}

bool SftSpec::nearest_neighbor() const {
    for (int a = 0; a < dim_; ++a)
        if (extent(a) > 2) return false;
    return true;
}

bool LanguageSet::contains(const ValueVec& v) const {
    return std::binary_search(patterns.begin(), patterns.end(), v);
}

// ---------------------------------------------------------------------------
// enumeration kernels
// ---------------------------------------------------------------------------

namespace {

struct Translate {
    const ValueVec* vals;
    std::vector<std::uint32_t> cells; // window cell indices, aligned with vals
    std::uint32_t maxidx;
};

// Forbidden-pattern translates of a window, indexed by the last assigned cell
// so a depth-first assignment can forward-check exactly once per translate.
struct Tables {
    std::size_t num_cells = 0;
    std::size_t num_symbols = 0;
    std::vector<std::vector<Translate>> at_max;
    std::vector<std::uint32_t> last_use; // last step that still reads a cell

    Tables(const SftSpec& sft, const std::vector<Point>& order) {
        num_cells = order.size();
        num_symbols = sft.alphabet_size();
        at_max.resize(num_cells);
        last_use.resize(num_cells);
        for (std::uint32_t i = 0; i < num_cells; ++i) last_use[i] = i;

        std::vector<std::pair<Point, std::uint32_t>> lookup;
        lookup.reserve(order.size());
        for (std::uint32_t i = 0; i < order.size(); ++i) lookup.emplace_back(order[i], i);
        std::sort(lookup.begin(), lookup.end());
        auto find = [&](const Point& p) -> std::optional<std::uint32_t> {
            auto it = std::lower_bound(lookup.begin(), lookup.end(), p,
                                       [](const auto& a, const Point& b) { return a.first < b; });
            if (it == lookup.end() || it->first != p) return std::nullopt;
            return it->second;
        };

        for (const Pattern& fp : sft.forbidden()) {
            // anchors are window cells: normalized supports contain the origin
            for (const Point& t : order) {
                Translate tr;
                tr.vals = &fp.values;
                tr.cells.reserve(fp.support.size());
                bool inside = true;
                std::uint32_t mx = 0;
                for (const Point& s : fp.support.points()) {
                    auto idx = find(add(t, s));
                    if (!idx) {
                        inside = false;
                        break;
                    }
                    tr.cells.push_back(*idx);
                    mx = std::max(mx, *idx);
                }
                if (!inside) continue;
                tr.maxidx = mx;
                for (std::uint32_t c : tr.cells) last_use[c] = std::max(last_use[c], mx);
                at_max[mx].push_back(std::move(tr));
            }
        }
    }
};

constexpr std::int16_t kFree = -1;

// Depth-first pinned satisfiability in table order.
class Searcher {
public:
    Searcher(const Tables& t, std::uint64_t& node_budget)
        : t_(t), values_(t.num_cells, 0), pins_(t.num_cells, kFree), nodes_(&node_budget) {}

    std::vector<Symbol>& values() { return values_; }
    std::vector<std::int16_t>& pins() { return pins_; }

    bool satisfiable_from(std::size_t i) {
        if (i == t_.num_cells) return true;
        spend();
        if (pins_[i] != kFree) {
            values_[i] = static_cast<Symbol>(pins_[i]);
            return clean_at(i) && satisfiable_from(i + 1);
        }
        for (std::size_t a = 0; a < t_.num_symbols; ++a) {
            values_[i] = static_cast<Symbol>(a);
            if (clean_at(i) && satisfiable_from(i + 1)) return true;
        }
        return false;
    }

private:
    bool clean_at(std::size_t i) const {
        for (const Translate& tr : t_.at_max[i]) {
            bool match = true;
            for (std::size_t k = 0; k < tr.cells.size(); ++k)
                if (values_[tr.cells[k]] != (*tr.vals)[k]) {
                    match = false;
                    break;
                }
            if (match) return false;
        }
        return true;
    }

    void spend() {
        if (*nodes_ == 0) throw CapacityError("search-tree node budget exhausted");
        --*nodes_;
    }

    const Tables& t_;
    std::vector<Symbol> values_;
    std::vector<std::int16_t> pins_;
    std::uint64_t* nodes_;
};

std::string window_desc(const PointSet& w) {
    return std::to_string(w.size()) + " cells, first " + point_str(w[0]);
}

// Walks the distinct restrictions to F of locally admissible patterns on the
// extended window E, in lexicographic order of the restriction values.
// Restriction cells are assigned in F order with forward checking against
// translates inside F; every step is validated by a pinned completion search
// over E in its natural order, where neighbor constraints propagate early.
template <class Emit>
void walk_restrictions(const SftSpec& sft, const PointSet& F, const PointSet& E,
                       const Capacity& cap, Emit&& emit) {
    Tables f_tables(sft, F.points());
    Tables e_tables(sft, E.points());
    std::uint64_t budget = cap.max_nodes;
    Searcher prefix_check(f_tables, budget);
    Searcher completion(e_tables, budget);
    std::vector<std::size_t> e_index(F.size());
    for (std::size_t i = 0; i < F.size(); ++i) e_index[i] = *E.index_of(F[i]);

    std::vector<Symbol>& values = prefix_check.values();
    auto walk = [&](auto&& self, std::size_t i) -> void {
        if (i == F.size()) {
            emit(values);
            return;
        }
        if (budget == 0) throw CapacityError("search-tree node budget exhausted");
        --budget;
        for (std::size_t a = 0; a < sft.alphabet_size(); ++a) {
            values[i] = static_cast<Symbol>(a);
            bool clean = true;
            for (const Translate& tr : f_tables.at_max[i]) {
                bool match = true;
                for (std::size_t k = 0; k < tr.cells.size(); ++k)
                    if (values[tr.cells[k]] != (*tr.vals)[k]) {
                        match = false;
                        break;
                    }
                if (match) {
                    clean = false;
                    break;
                }
            }
            if (!clean) continue;
            completion.pins()[e_index[i]] = static_cast<std::int16_t>(a);
            if (completion.satisfiable_from(0)) self(self, i + 1);
        }
        completion.pins()[e_index[i]] = kFree;
    };
    walk(walk, 0);
}

bool margin_is_origin_only(const PointSet& margin) {
    return margin.size() == 1 && is_origin(margin[0]);
}

BigInt pow_bigint(std::size_t base, std::size_t exp) {
    BigInt r = 1;
    for (std::size_t i = 0; i < exp; ++i) r *= static_cast<unsigned>(base);
    return r;
}

} // namespace

bool locally_admissible(const Pattern& p, const SftSpec& sft) {
    if (p.support.dim() != sft.dim())
        throw DimensionError("locally_admissible: dimension mismatch");
    for (Symbol s : p.values)
        if (s >= sft.alphabet_size())
            throw InvalidPattern("pattern uses a symbol outside the alphabet");
    for (const Pattern& fp : sft.forbidden()) {
        for (const Point& t : p.support.points()) {
            bool match = true;
            for (std::size_t k = 0; k < fp.support.size(); ++k) {
                auto idx = p.support.index_of(add(t, fp.support[k]));
                if (!idx || p.values[*idx] != fp.values[k]) {
                    match = false;
                    break;
                }
            }
            if (match) return false;
        }
    }
    return true;
}

BigInt count_locally_admissible(const SftSpec& sft, const PointSet& window,
                                const Capacity& cap) {
    if (window.dim() != sft.dim())
        throw DimensionError("count_locally_admissible: dimension mismatch");
    if (window.size() > cap.max_cells)
        throw CapacityError("count_locally_admissible: window has " + window_desc(window) +
                            " > max_cells " + std::to_string(cap.max_cells));
    const std::vector<Point>& order = window.points();
    Tables t(sft, order);
    std::size_t n = t.num_cells;

    // frontier: cells still read by a translate that is not yet complete
    std::vector<std::vector<std::uint32_t>> live(n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        live[i + 1].reserve(live[i].size() + 1);
        for (std::uint32_t j : live[i])
            if (t.last_use[j] >= i + 1) live[i + 1].push_back(j);
        if (t.last_use[i] >= i + 1) live[i + 1].push_back(static_cast<std::uint32_t>(i));
    }

    std::map<ValueVec, BigInt> dp;
    dp[ValueVec{}] = 1;
    std::vector<std::int32_t> slot_of(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < live[i].size(); ++k) slot_of[live[i][k]] = static_cast<std::int32_t>(k);
        // translate cells resolved against the current frontier
        struct Probe {
            const ValueVec* vals;
            std::vector<std::int32_t> slots; // -1 means "the cell being assigned"
        };
        std::vector<Probe> probes;
        probes.reserve(t.at_max[i].size());
        for (const Translate& tr : t.at_max[i]) {
            Probe pr;
            pr.vals = tr.vals;
            pr.slots.reserve(tr.cells.size());
            for (std::uint32_t c : tr.cells)
                pr.slots.push_back(c == i ? -1 : slot_of[c]);
            probes.push_back(std::move(pr));
        }
        std::vector<std::int32_t> next_from(live[i + 1].size());
        for (std::size_t k = 0; k < live[i + 1].size(); ++k) {
            std::uint32_t c = live[i + 1][k];
            next_from[k] = (c == i) ? -1 : slot_of[c];
        }

        std::map<ValueVec, BigInt> next;
        for (const auto& [key, cnt] : dp) {
            for (std::size_t a = 0; a < t.num_symbols; ++a) {
                bool ok = true;
                for (const Probe& pr : probes) {
                    bool match = true;
                    for (std::size_t k = 0; k < pr.slots.size(); ++k) {
                        Symbol v = pr.slots[k] < 0 ? static_cast<Symbol>(a)
                                                   : key[static_cast<std::size_t>(pr.slots[k])];
                        if (v != (*pr.vals)[k]) {
                            match = false;
                            break;
                        }
                    }
                    if (match) {
                        ok = false;
                        break;
                    }
                }
                if (!ok) continue;
                ValueVec nk(live[i + 1].size());
                for (std::size_t k = 0; k < nk.size(); ++k)
                    nk[k] = next_from[k] < 0 ? static_cast<Symbol>(a)
                                             : key[static_cast<std::size_t>(next_from[k])];
                next[std::move(nk)] += cnt;
            }
        }
        if (next.size() > cap.max_profiles)
            throw CapacityError("count_locally_admissible: profile table exceeded max_profiles");
        dp = std::move(next);
        for (std::uint32_t j : live[i]) slot_of[j] = -1;
        slot_of[i] = -1;
    }
    BigInt total = 0;
    for (const auto& [key, cnt] : dp) total += cnt;
    return total;
}

LanguageSet enumerate_language(const SftSpec& sft, const PointSet& F,
                               const PointSet& margin, const Capacity& cap) {
    if (F.dim() != sft.dim() || margin.dim() != sft.dim())
        throw DimensionError("enumerate_language: dimension mismatch");
    PointSet E = minkowski_extend(F, margin);
    if (E.size() > cap.max_cells)
        throw CapacityError("enumerate_language: extended window has " + window_desc(E) +
                            " > max_cells " + std::to_string(cap.max_cells));
    LanguageSet out{F, margin, {}, sft.languages_exact()};
    if (sft.is_full_shift()) {
        BigInt total = pow_bigint(sft.alphabet_size(), F.size());
        if (total > cap.max_patterns)
            throw CapacityError("enumerate_language: window " + window_desc(F) +
                                " exceeds max_patterns " + std::to_string(cap.max_patterns));
        ValueVec v(F.size(), 0);
        for (;;) {
            out.patterns.push_back(v);
            std::size_t i = F.size();
            while (i > 0) {
                if (static_cast<std::size_t>(++v[i - 1]) < sft.alphabet_size()) break;
                v[--i] = 0;
            }
            if (i == 0) break;
        }
        return out;
    }
    std::vector<Point> order = restriction_order(F, E);
    Tables t(sft, order);
    Searcher s(t, cap.max_nodes);
    s.enumerate_prefix(0, F.size(), [&](const std::vector<Symbol>& values) {
        if (out.patterns.size() >= cap.max_patterns)
            throw CapacityError("enumerate_language: window " + window_desc(F) +
                                " exceeds max_patterns " + std::to_string(cap.max_patterns));
        out.patterns.emplace_back(values.begin(), values.begin() + static_cast<long>(F.size()));
    });
    return out;
}

CountResult count_language(const SftSpec& sft, const PointSet& F,
                           const PointSet& margin, const Capacity& cap) {
    if (F.dim() != sft.dim() || margin.dim() != sft.dim())
        throw DimensionError("count_language: dimension mismatch");
    if (!margin.contains(origin(margin.dim())))
        throw InvalidShape("count_language: margin must contain the origin");
    if (sft.is_full_shift())
        return {pow_bigint(sft.alphabet_size(), F.size()), true};
    if (sft.safe_symbol().has_value())
        return {count_locally_admissible(sft, F, cap), true};
    if (margin_is_origin_only(margin))
        return {count_locally_admissible(sft, F, cap), false};

    PointSet E = minkowski_extend(F, margin);
    if (E.size() > cap.max_cells)
        throw CapacityError("count_language: extended window has " + window_desc(E) +
                            " > max_cells " + std::to_string(cap.max_cells));
    std::vector<Point> order = restriction_order(F, E);
    Tables t(sft, order);
    Searcher s(t, cap.max_nodes);
    BigInt count = 0;
    s.enumerate_prefix(0, F.size(), [&](const std::vector<Symbol>&) { ++count; });
    return {count, false};
}

struct CompletionOracle::Impl {
    SftSpec sft;
    PointSet window;
    Tables tables;
    Capacity cap;

    Impl(const SftSpec& s, PointSet w, const Capacity& c)
        : sft(s), window(std::move(w)), tables(sft, window.points()), cap(c) {}
};

CompletionOracle::CompletionOracle(const SftSpec& sft, PointSet window, const Capacity& cap) {
    if (window.dim() != sft.dim())
        throw DimensionError("CompletionOracle: dimension mismatch");
    impl_ = std::make_shared<const Impl>(sft, std::move(window), cap);
}

CompletionOracle::~CompletionOracle() = default;
CompletionOracle::CompletionOracle(CompletionOracle&&) noexcept = default;
CompletionOracle& CompletionOracle::operator=(CompletionOracle&&) noexcept = default;

const PointSet& CompletionOracle::window() const { return impl_->window; }

bool CompletionOracle::exists(const std::vector<std::pair<Point, Symbol>>& pins) const {
    Searcher s(impl_->tables, impl_->cap.max_nodes);
    for (const auto& [p, v] : pins) {
        auto idx = impl_->window.index_of(p);
        if (!idx)
            throw InvalidPattern("pinned point " + point_str(p) + " outside the window");
        if (v >= impl_->sft.alphabet_size())
            throw InvalidPattern("pinned symbol outside the alphabet");
        s.pins()[*idx] = static_cast<std::int16_t>(v);
    }
    return s.satisfiable_from(0);
}

bool admissible_completion_exists(const SftSpec& sft, const PointSet& window,
                                  const std::vector<std::pair<Point, Symbol>>& pins,
                                  const Capacity& cap) {
    return CompletionOracle(sft, window, cap).exists(pins);
}

// ---------------------------------------------------------------------------
// transfer matrices
// ---------------------------------------------------------------------------

double spectral_radius(const std::vector<std::vector<double>>& m) {
    std::size_t n = m.size();
    if (n == 0) return 0.0;
    // power iteration on M + I; the shift makes the dominant eigenvalue
    // aperiodic so the Collatz-Wielandt bracket closes
    std::vector<double> x(n, 1.0), y(n, 0.0);
    constexpr int kMaxIter = 200000;
    for (int iter = 0; iter < kMaxIter; ++iter) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double acc = x[i];
            const std::vector<double>& row = m[i];
            for (std::size_t j = 0; j < n; ++j) acc += row[j] * x[j];
            y[i] = acc;
            double ratio = acc / x[i];
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
        }
        if (hi - lo <= 1e-13 * hi) return std::max((lo + hi) / 2.0 - 1.0, 0.0);
        for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / hi;
    }
    // reducible matrix: the bracket may not close; fall back to norm squaring
    std::vector<std::vector<double>> a = m;
    double log_rho = 0.0, weight = 1.0;
    for (int k = 0; k < 64; ++k) {
        double norm = 0.0;
        for (const auto& row : a) {
            double s = 0.0;
            for (double v : row) s += v;
            norm = std::max(norm, s);
        }
        if (norm == 0.0) return 0.0;
        log_rho += weight * std::log(norm);
        if (weight * 64.0 < 1e-14) break;
        std::vector<std::vector<double>> b(n, std::vector<double>(n, 0.0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t l = 0; l < n; ++l) {
                double v = a[i][l] / norm;
                if (v == 0.0) continue;
                for (std::size_t j = 0; j < n; ++j) b[i][j] += v * (a[l][j] / norm);
            }
        a = std::move(b);
        weight /= 2.0;
    }
    return std::exp(log_rho);
}

TransferMatrix1D transfer_matrix_1d(const SftSpec& sft, const Capacity& cap) {
    if (sft.dim() != 1) throw DimensionError("transfer_matrix_1d: dimension must be 1");
    Coord L = sft.interaction_diameter();
    TransferMatrix1D out;
    if (L == 1) {
        // forbidden patterns are single symbols; one empty-word state
        std::vector<bool> banned(sft.alphabet_size(), false);
        for (const Pattern& fp : sft.forbidden()) banned[fp.values[0]] = true;
        std::size_t allowed = 0;
        for (bool b : banned)
            if (!b) ++allowed;
        out.states = {ValueVec{}};
        out.matrix = {{static_cast<std::uint64_t>(allowed)}};
        out.spectral_radius = static_cast<double>(allowed);
        return out;
    }
    Capacity state_cap = cap;
    state_cap.max_patterns = cap.max_states + 1;
    PointSet word_window = folner_box({L - 1});
    PointSet margin1 = PointSet(1, {origin(1)});
    LanguageSet states = enumerate_language(sft, word_window, margin1, state_cap);
    if (states.size() > cap.max_states)
        throw CapacityError("transfer_matrix_1d: more than " + std::to_string(cap.max_states) +
                            " states");
    out.states = states.patterns;
    std::size_t n = out.states.size();
    out.matrix.assign(n, std::vector<std::uint64_t>(n, 0));
    if (n == 0) return out;

    PointSet ext_window = folner_box({L});
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t a = 0; a < sft.alphabet_size(); ++a) {
            ValueVec word = out.states[i];
            word.push_back(static_cast<Symbol>(a));
            if (!locally_admissible(Pattern(ext_window, word), sft)) continue;
            ValueVec next(word.begin() + 1, word.end());
            auto it = std::lower_bound(out.states.begin(), out.states.end(), next);
            if (it == out.states.end() || *it != next)
                throw InternalError("transfer_matrix_1d: successor state missing");
            out.matrix[i][static_cast<std::size_t>(it - out.states.begin())] += 1;
        }
    }
    std::vector<std::vector<double>> md(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) md[i][j] = static_cast<double>(out.matrix[i][j]);
    out.spectral_radius = spectral_radius(md);
    return out;
}

BigInt matrix_power_entry_sum(const std::vector<std::vector<std::uint64_t>>& m,
                              unsigned k) {
    std::size_t n = m.size();
    std::vector<std::vector<BigInt>> acc(n, std::vector<BigInt>(n, 0));
    for (std::size_t i = 0; i < n; ++i) acc[i][i] = 1;
    for (unsigned step = 0; step < k; ++step) {
        std::vector<std::vector<BigInt>> next(n, std::vector<BigInt>(n, 0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t l = 0; l < n; ++l) {
                if (acc[i][l] == 0) continue;
                for (std::size_t j = 0; j < n; ++j)
                    if (m[l][j] != 0) next[i][j] += acc[i][l] * m[l][j];
            }
        acc = std::move(next);
    }
    BigInt total = 0;
    for (const auto& row : acc)
        for (const BigInt& v : row) total += v;
    return total;
}

} // namespace shiftlab
