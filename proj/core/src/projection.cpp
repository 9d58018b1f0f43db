#include "shiftlab/projection.hpp"

#include "shiftlab/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace shiftlab {

ProjectedWindow::ProjectedWindow(PointSet sub_points, const SubgroupBasis& basis)
    : sub_(std::move(sub_points)),
      embedded_(PointSet(basis.dim(), {origin(basis.dim())})),
      rows_(basis.rows()) {
    if (sub_.dim() != basis.rank())
        throw DimensionError("ProjectedWindow: sub-coordinates must have dimension rank(H)");
    const TransversalSection& sec = basis.section();
    std::vector<Point> emb;
    emb.reserve(sub_.size());
    for (const Point& u : sub_.points()) emb.push_back(sec.embed(u));
    embedded_ = PointSet(basis.dim(), emb);
    if (embedded_.size() != sub_.size())
        throw InternalError("ProjectedWindow: embedding collapsed points");
    embed_idx_.reserve(sub_.size());
    for (const Point& u : sub_.points())
        embed_idx_.push_back(*embedded_.index_of(sec.embed(u)));
}

namespace {

// reorder a pattern on the embedded window into sub-coordinate order
ValueVec to_sub_order(const ProjectedWindow& pw, const ValueVec& embedded_values) {
    ValueVec out(embedded_values.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = embedded_values[pw.embedded_index(i)];
    return out;
}

} // namespace

LanguageSet project_language(const SftSpec& sft, const SubgroupBasis& H,
                             const PointSet& F_sub, const PointSet& margin,
                             const Capacity& cap) {
    if (H.dim() != sft.dim())
        throw DimensionError("project_language: subgroup lives in the wrong dimension");
    ProjectedWindow pw(F_sub, H);
    LanguageSet emb = enumerate_language(sft, pw.embedded_points(), margin, cap);
    LanguageSet out{F_sub, margin, {}, emb.exact};
    out.patterns.reserve(emb.patterns.size());
    for (const ValueVec& v : emb.patterns) out.patterns.push_back(to_sub_order(pw, v));
    std::sort(out.patterns.begin(), out.patterns.end());
    return out;
}

CountResult project_count(const SftSpec& sft, const SubgroupBasis& H,
                          const PointSet& F_sub, const PointSet& margin,
                          const Capacity& cap) {
    if (H.dim() != sft.dim())
        throw DimensionError("project_count: subgroup lives in the wrong dimension");
    ProjectedWindow pw(F_sub, H);
    return count_language(sft, pw.embedded_points(), margin, cap);
}

namespace {

// Forbidden patterns of X whose support fits inside the line H (rank 1),
// re-expressed as 1-D patterns in sub-coordinates. With a safe symbol these
// define X_H exactly.
std::vector<Pattern> in_line_forbidden(const SftSpec& sft, const SubgroupBasis& H) {
    const TransversalSection& sec = H.section();
    std::vector<Pattern> out;
    for (const Pattern& fp : sft.forbidden()) {
        const Point& base = fp.support[0];
        std::vector<Point> sub_pts;
        bool inside = true;
        for (const Point& s : fp.support.points()) {
            auto u = sec.sub_coordinates(sub(s, base));
            if (!u) {
                inside = false;
                break;
            }
            sub_pts.push_back(*u);
        }
        if (!inside) continue;
        PointSet support(1, sub_pts);
        ValueVec vals(fp.values.size());
        for (std::size_t k = 0; k < sub_pts.size(); ++k)
            vals[*support.index_of(sub_pts[k])] = fp.values[k];
        out.push_back(Pattern(support, vals).normalized());
    }
    return out;
}

} // namespace

std::optional<double> projectional_exact_1d(const SftSpec& sft, const SubgroupBasis& H,
                                            const PointSet& margin, const Capacity& cap) {
    if (H.rank() != 1) return std::nullopt;
    if (!sft.languages_exact()) return std::nullopt;

    // order k such that (k+1)-words determine X_H: the in-line interaction
    // diameter, measured in sub-coordinates
    Coord diameter = 1;
    for (const Pattern& fp : in_line_forbidden(sft, H)) {
        Coord lo = fp.support[0][0], hi = lo;
        for (const Point& q : fp.support.points()) {
            lo = std::min(lo, q[0]);
            hi = std::max(hi, q[0]);
        }
        diameter = std::max(diameter, hi - lo + 1);
    }
    Coord k = std::max<Coord>(diameter - 1, 1);

    LanguageSet words_k = project_language(sft, H, folner_box({k}), margin, cap);
    LanguageSet words_k1 = project_language(sft, H, folner_box({k + 1}), margin, cap);
    if (words_k.patterns.empty()) return std::nullopt;
    if (words_k.size() > cap.max_states)
        throw CapacityError("projectional_exact_1d: de Bruijn state count exceeds max_states");

    std::size_t n = words_k.size();
    std::vector<std::vector<double>> matrix(n, std::vector<double>(n, 0.0));
    for (const ValueVec& w : words_k1.patterns) {
        ValueVec prefix(w.begin(), w.end() - 1);
        ValueVec suffix(w.begin() + 1, w.end());
        auto find = [&](const ValueVec& v) {
            auto it = std::lower_bound(words_k.patterns.begin(), words_k.patterns.end(), v);
            if (it == words_k.patterns.end() || *it != v)
                throw InternalError("projectional_exact_1d: word list not closed");
            return static_cast<std::size_t>(it - words_k.patterns.begin());
        };
        matrix[find(prefix)][find(suffix)] += 1.0;
    }
    double rho = spectral_radius(matrix);
    if (rho <= 0.0) return std::nullopt;
    return std::log(rho);
}

EntropyReport projectional_entropy(const SftSpec& sft, const SubgroupBasis& H,
                                   const std::vector<PointSet>& windows_sub,
                                   const PointSet& margin, const Capacity& cap) {
    if (windows_sub.empty()) throw InvalidWindow("projectional_entropy: no windows");
    EntropyReport report;
    report.bounds.resize(windows_sub.size(),
                         EntropyBound{windows_sub[0], margin, 0, 0.0, true, false, false});
    parallel_for(windows_sub.size(), [&](std::size_t i) {
        const PointSet& F = windows_sub[i];
        CountResult c = project_count(sft, H, F, margin, cap);
        EntropyBound b{F, margin, c.count, 0.0, true, c.exact, c.count == 0};
        b.value = b.empty_system ? -std::numeric_limits<double>::infinity()
                                 : ln_big_over(b.count, F.size());
        report.bounds[i] = std::move(b);
    });
    report.best_upper = std::numeric_limits<double>::infinity();
    for (const EntropyBound& b : report.bounds)
        report.best_upper = std::min(report.best_upper, b.value);
    if (sft.is_full_shift())
        report.exact_value = std::log(static_cast<double>(sft.alphabet_size()));
    else
        report.exact_value = projectional_exact_1d(sft, H, margin, cap);
    return report;
}

Pattern assemble_phi(const CosetFamily& family, const TransversalSection& section,
                     const PointSet& F) {
    if (F.dim() != section.dim())
        throw DimensionError("assemble_phi: window dimension mismatch");
    ValueVec values(F.size());
    for (std::size_t i = 0; i < F.size(); ++i) {
        const Point& g = F[i];
        Point m = section.rep(g);
        auto it = family.entries.find(m);
        if (it == family.entries.end())
            throw IncompleteFamily("assemble_phi: no family entry for coset of " +
                                   point_str(g) + " (rep " + point_str(m) + ")");
        auto u = section.sub_coordinates(sub(g, m));
        if (!u)
            throw InternalError("assemble_phi: rep difference escaped the subgroup at " +
                                point_str(g));
        auto idx = it->second.window.sub_points().index_of(*u);
        if (!idx)
            throw IncompleteFamily("assemble_phi: family entry for rep " + point_str(m) +
                                   " does not cover " + point_str(g));
        values[i] = it->second.values[*idx];
    }
    return Pattern(F, values);
}

namespace {

struct Piece {
    Point canonical_rep;
    Point used_rep;           // canonical_rep + optional H-offset
    PointSet global_points;   // the coset piece inside F
    PointSet sub_window;      // (piece - used_rep) in sub-coordinates
    // for each global point (in F order within the piece), its index in
    // sub_window order
    std::vector<std::size_t> sub_index;
};

std::vector<Piece> decompose_for_product(const SubgroupBasis& H, const PointSet& F,
                                         const std::map<Point, Point>& rep_offsets) {
    const TransversalSection& sec = H.section();
    std::vector<Piece> pieces;
    std::vector<CosetPart> parts = coset_decompose(F, sec);
    for (CosetPart& part : parts) {
        Point used_rep = part.rep;
        if (auto it = rep_offsets.find(part.rep); it != rep_offsets.end()) {
            if (!sec.in_subgroup(it->second))
                throw InvalidSubgroup("product_language: rep offset " +
                                      point_str(it->second) + " is not in H");
            used_rep = add(part.rep, it->second);
        }
        std::vector<Point> sub_pts;
        sub_pts.reserve(part.part.size());
        for (const Point& p : part.part.points()) {
            auto u = sec.sub_coordinates(sub(p, used_rep));
            if (!u)
                throw InternalError("product_language: coset piece escaped H after "
                                    "translation at " + point_str(p));
            sub_pts.push_back(*u);
        }
        PointSet sub_window(H.rank(), sub_pts);
        std::vector<std::size_t> sub_index;
        sub_index.reserve(sub_pts.size());
        for (const Point& u : sub_pts) sub_index.push_back(*sub_window.index_of(u));
        pieces.push_back(Piece{part.rep, std::move(used_rep), std::move(part.part),
                               std::move(sub_window), std::move(sub_index)});
    }
    return pieces;
}

} // namespace

LanguageSet product_language(const SftSpec& sft, const SubgroupBasis& H, const PointSet& F,
                             const PointSet& margin, const Capacity& cap,
                             const std::map<Point, Point>& rep_offsets) {
    std::vector<Piece> pieces = decompose_for_product(H, F, rep_offsets);
    std::vector<LanguageSet> langs;
    langs.reserve(pieces.size());
    BigInt total = 1;
    bool exact = true;
    for (const Piece& piece : pieces) {
        langs.push_back(project_language(sft, H, piece.sub_window, margin, cap));
        total *= static_cast<unsigned long>(langs.back().size());
        exact = exact && langs.back().exact;
    }
    if (total > cap.max_patterns)
        throw CapacityError("product_language: " + total.str() +
                            " combinations exceed max_patterns");

    // positions of each piece's points inside F's canonical order
    std::vector<std::vector<std::size_t>> f_index(pieces.size());
    for (std::size_t pi = 0; pi < pieces.size(); ++pi)
        for (const Point& p : pieces[pi].global_points.points())
            f_index[pi].push_back(*F.index_of(p));

    LanguageSet out{F, margin, {}, exact};
    if (total == 0) return out;
    std::vector<std::size_t> choice(pieces.size(), 0);
    for (;;) {
        ValueVec v(F.size());
        for (std::size_t pi = 0; pi < pieces.size(); ++pi) {
            const ValueVec& w = langs[pi].patterns[choice[pi]];
            for (std::size_t k = 0; k < f_index[pi].size(); ++k)
                v[f_index[pi][k]] = w[pieces[pi].sub_index[k]];
        }
        out.patterns.push_back(std::move(v));
        std::size_t pi = pieces.size();
        while (pi > 0) {
            if (++choice[pi - 1] < langs[pi - 1].size()) break;
            choice[--pi] = 0;
        }
        if (pi == 0) break;
    }
    std::sort(out.patterns.begin(), out.patterns.end());
    return out;
}

CountResult product_count(const SftSpec& sft, const SubgroupBasis& H, const PointSet& F,
                          const PointSet& margin, const Capacity& cap) {
    std::vector<Piece> pieces = decompose_for_product(H, F, {});
    CountResult out{1, true};
    for (const Piece& piece : pieces) {
        CountResult c = project_count(sft, H, piece.sub_window, margin, cap);
        out.count *= c.count;
        out.exact = out.exact && c.exact;
    }
    return out;
}

namespace {

// Lexicographically least pattern of the product language absent from X's
// margin language, by a product-order walk with per-piece prefix narrowing.
// Membership in X is decided against the materialized language when given,
// otherwise by a pinned completion search.
class WitnessSearch {
public:
    WitnessSearch(const SftSpec& sft, const PointSet& F, const PointSet& margin,
                  const std::vector<Piece>& pieces, const std::vector<LanguageSet>& langs,
                  const LanguageSet* x_lang, const Capacity& cap)
        : sft_(sft), F_(F), extended_(minkowski_extend(F, margin)), pieces_(pieces),
          x_lang_(x_lang), cap_(cap) {
        // per piece: words re-ordered to the order its points appear in F
        piece_of_.assign(F.size(), 0);
        pos_of_.assign(F.size(), 0);
        for (std::size_t pi = 0; pi < pieces.size(); ++pi) {
            const Piece& piece = pieces[pi];
            std::vector<std::size_t> visit; // sub_index in F-visit order
            for (std::size_t k = 0; k < piece.global_points.size(); ++k) {
                std::size_t fi = *F.index_of(piece.global_points[k]);
                piece_of_[fi] = pi;
                pos_of_[fi] = visit.size();
                visit.push_back(piece.sub_index[k]);
            }
            std::vector<ValueVec> words;
            words.reserve(langs[pi].size());
            for (const ValueVec& w : langs[pi].patterns) {
                ValueVec r(visit.size());
                for (std::size_t k = 0; k < visit.size(); ++k) r[k] = w[visit[k]];
                words.push_back(std::move(r));
            }
            std::sort(words.begin(), words.end());
            piece_words_.push_back(std::move(words));
        }
        lo_.assign(pieces.size(), 0);
        hi_.resize(pieces.size());
        for (std::size_t pi = 0; pi < pieces.size(); ++pi) hi_[pi] = piece_words_[pi].size();
        values_.assign(F.size(), 0);
    }

    std::optional<ValueVec> run() {
        found_.reset();
        walk(0);
        return found_;
    }

private:
    bool walk(std::size_t fi) { // returns true to stop the search
        if (fi == F_.size()) {
            if (!in_x(values_)) {
                found_ = values_;
                return true;
            }
            return false;
        }
        std::size_t pi = piece_of_[fi];
        std::size_t pos = pos_of_[fi];
        const auto& words = piece_words_[pi];
        std::size_t save_lo = lo_[pi], save_hi = hi_[pi];
        for (std::size_t a = 0; a < sft_.alphabet_size(); ++a) {
            Symbol s = static_cast<Symbol>(a);
            auto cmp = [pos](const ValueVec& w, Symbol v) { return w[pos] < v; };
            std::size_t nlo = static_cast<std::size_t>(
                std::lower_bound(words.begin() + save_lo, words.begin() + save_hi, s, cmp) -
                words.begin());
            std::size_t nhi = static_cast<std::size_t>(
                std::lower_bound(words.begin() + nlo, words.begin() + save_hi,
                                 static_cast<Symbol>(a + 1), cmp) -
                words.begin());
            if (nlo == nhi) continue;
            lo_[pi] = nlo;
            hi_[pi] = nhi;
            values_[fi] = s;
            if (walk(fi + 1)) return true;
        }
        lo_[pi] = save_lo;
        hi_[pi] = save_hi;
        return false;
    }

    bool in_x(const ValueVec& v) {
        if (x_lang_) return x_lang_->contains(v);
        std::vector<std::pair<Point, Symbol>> pins;
        pins.reserve(F_.size());
        for (std::size_t i = 0; i < F_.size(); ++i) pins.emplace_back(F_[i], v[i]);
        return admissible_completion_exists(sft_, extended_, pins, cap_);
    }

    const SftSpec& sft_;
    const PointSet& F_;
    PointSet extended_;
    const std::vector<Piece>& pieces_;
    const LanguageSet* x_lang_;
    Capacity cap_;
    std::vector<std::size_t> piece_of_, pos_of_;
    std::vector<std::vector<ValueVec>> piece_words_;
    std::vector<std::size_t> lo_, hi_;
    ValueVec values_;
    std::optional<ValueVec> found_;
};

} // namespace

ComparisonReport compare_systems(const SftSpec& sft, const SubgroupBasis& H,
                                 const std::vector<PointSet>& windows,
                                 const PointSet& margin, const Capacity& cap) {
    if (windows.empty()) throw InvalidWindow("compare_systems: no windows");
    ComparisonReport report;
    report.windows.resize(windows.size(),
                          WindowComparison{windows[0], 0, 0, false, false, true, {}});

    parallel_for(windows.size(), [&](std::size_t wi) {
        const PointSet& F = windows[wi];
        WindowComparison comp{F, 0, 0, false, false, true, {}};
        comp.count_x = count_language(sft, F, margin, cap).count;
        std::vector<Piece> pieces = decompose_for_product(H, F, {});
        std::vector<CountResult> piece_counts;
        comp.count_product = 1;
        for (const Piece& piece : pieces) {
            piece_counts.push_back(project_count(sft, H, piece.sub_window, margin, cap));
            comp.count_product *= piece_counts.back().count;
        }
        comp.equal = comp.count_x == comp.count_product;

        // pattern-level work only at materializable scale
        bool small = comp.count_x <= cap.max_patterns &&
                     minkowski_extend(F, margin).size() <= cap.max_cells;
        for (const CountResult& c : piece_counts)
            small = small && c.count <= cap.max_patterns;

        if (small) {
            LanguageSet x_lang = enumerate_language(sft, F, margin, cap);
            std::vector<LanguageSet> langs;
            for (const Piece& piece : pieces)
                langs.push_back(project_language(sft, H, piece.sub_window, margin, cap));
            comp.inclusion_verified = true;
            // every X-pattern restricts into each piece language
            for (const ValueVec& v : x_lang.patterns) {
                for (std::size_t pi = 0; pi < pieces.size() && comp.inclusion_ok; ++pi) {
                    ValueVec w(pieces[pi].sub_window.size());
                    for (std::size_t k = 0; k < pieces[pi].global_points.size(); ++k) {
                        std::size_t fi = *F.index_of(pieces[pi].global_points[k]);
                        w[pieces[pi].sub_index[k]] = v[fi];
                    }
                    if (!langs[pi].contains(w)) comp.inclusion_ok = false;
                }
                if (!comp.inclusion_ok) break;
            }
            if (!comp.equal) {
                WitnessSearch search(sft, F, margin, pieces, langs, &x_lang, cap);
                if (auto w = search.run()) comp.witness = Pattern(F, *w);
            }
        }
        report.windows[wi] = std::move(comp);
    });

    for (const WindowComparison& c : report.windows)
        report.all_equal = report.all_equal && c.equal;

    // entropy-gap summary: X over the given windows, X_H over the distinct
    // coset-piece windows they induce
    EntropyReport ex = entropy_bounds(sft, windows, margin, cap);
    report.best_upper_x = ex.best_upper;
    report.exact_x = ex.exact_value;
    std::set<std::vector<Point>> seen;
    std::vector<PointSet> sub_windows;
    for (const PointSet& F : windows)
        for (const Piece& piece : decompose_for_product(H, F, {}))
            if (seen.insert(piece.sub_window.points()).second)
                sub_windows.push_back(piece.sub_window);
    EntropyReport eh = projectional_entropy(sft, H, sub_windows, margin, cap);
    report.best_upper_xh = eh.best_upper;
    report.exact_xh = eh.exact_value;
    return report;
}

} // namespace shiftlab
