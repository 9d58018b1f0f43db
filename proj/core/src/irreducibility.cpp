#include "shiftlab/irreducibility.hpp"

#include "shiftlab/parallel.hpp"
#include "shiftlab/projection.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <map>

namespace shiftlab {

namespace {

// all side vectors in [1, scale]^dim, lexicographic
std::vector<std::vector<Coord>> side_combos(int dim, int scale) {
    std::vector<std::vector<Coord>> out;
    std::vector<Coord> cur(dim, 1);
    for (;;) {
        out.push_back(cur);
        int i = dim;
        while (i > 0) {
            if (++cur[i - 1] <= scale) break;
            cur[--i] = 1;
        }
        if (i == 0) break;
    }
    return out;
}

// all offsets in [-2*scale, 2*scale]^dim, lexicographic
std::vector<Point> offset_grid(int dim, int scale) {
    std::vector<Point> out;
    Coord r = 2 * static_cast<Coord>(scale);
    Point cur(dim, -r);
    for (;;) {
        out.push_back(cur);
        int i = dim;
        while (i > 0) {
            if (++cur[i - 1] <= r) break;
            cur[--i] = -r;
        }
        if (i == 0) break;
    }
    return out;
}

bool disjoint(const PointSet& a, const PointSet& b) {
    const auto& x = a.points();
    const auto& y = b.points();
    std::size_t i = 0, j = 0;
    while (i < x.size() && j < y.size()) {
        if (x[i] < y[j])
            ++i;
        else if (y[j] < x[i])
            ++j;
        else
            return false;
    }
    return true;
}

PointSet union_set(const PointSet& a, const PointSet& b) {
    std::vector<Point> pts(a.points());
    pts.insert(pts.end(), b.points().begin(), b.points().end());
    return PointSet(a.dim(), std::move(pts));
}

// Shared driver: iterates the geometry surface in canonical order and asks
// `glues` whether a pattern pair coexists. Languages are supplied per box
// shape; value vectors transport across translations unchanged.
template <class LanguageOf, class GeometrySetup>
IrreducibilityVerdict drive(const SftSpec& sft, const MixingShape& D, int scale,
                            LanguageOf&& language_of, GeometrySetup&& setup) {
    int dim = sft.dim();
    IrreducibilityVerdict verdict;
    verdict.scale = scale;
    verdict.exact_languages = sft.languages_exact();

    std::vector<std::vector<Coord>> sides = side_combos(dim, scale);
    std::vector<Point> offsets = offset_grid(dim, scale);
    std::map<std::vector<Coord>, std::vector<ValueVec>> lang_cache;
    for (const auto& s : sides) lang_cache[s] = language_of(s);

    for (const auto& s1 : sides) {
        PointSet b1 = folner_box(s1);
        PointSet spread = minkowski_extend(b1, D.points);
        const std::vector<ValueVec>& lp = lang_cache[s1];
        if (lp.empty()) continue;
        for (const auto& s2 : sides) {
            const std::vector<ValueVec>& lq = lang_cache[s2];
            if (lq.empty()) continue;
            for (const Point& t : offsets) {
                PointSet b2 = folner_box(s2).translated(t);
                if (!disjoint(spread, b2)) continue;
                auto glues = setup(b1, b2);
                std::size_t total = lp.size() * lq.size();
                std::atomic<std::size_t> first_fail{total};
                parallel_for(total, [&](std::size_t k) {
                    if (k >= first_fail.load(std::memory_order_relaxed)) return;
                    std::size_t ip = k / lq.size();
                    std::size_t iq = k % lq.size();
                    if (!glues(lp[ip], lq[iq])) {
                        std::size_t cur = first_fail.load(std::memory_order_relaxed);
                        while (k < cur &&
                               !first_fail.compare_exchange_weak(cur, k,
                                                                 std::memory_order_relaxed)) {
                        }
                    }
                });
                std::size_t k = first_fail.load();
                if (k < total) {
                    verdict.status = IrreducibilityVerdict::Status::counterexample;
                    verdict.witness = GlueWitness{b1, b2, lp[k / lq.size()], lq[k % lq.size()]};
                    return verdict;
                }
            }
        }
    }
    verdict.status = IrreducibilityVerdict::Status::pass_at_scale;
    return verdict;
}

std::vector<std::pair<Point, Symbol>> pin_pair(const PointSet& b1, const ValueVec& p,
                                               const PointSet& b2, const ValueVec& q) {
    std::vector<std::pair<Point, Symbol>> pins;
    pins.reserve(b1.size() + b2.size());
    for (std::size_t i = 0; i < b1.size(); ++i) pins.emplace_back(b1[i], p[i]);
    for (std::size_t i = 0; i < b2.size(); ++i) pins.emplace_back(b2[i], q[i]);
    return pins;
}

} // namespace

IrreducibilityVerdict check_strong_irreducibility(const SftSpec& sft, const MixingShape& D,
                                                  int scale, const PointSet& margin,
                                                  const Capacity& cap) {
    if (scale < 1) throw InvalidWindow("check_strong_irreducibility: scale must be >= 1");
    if (D.points.dim() != sft.dim() || margin.dim() != sft.dim())
        throw DimensionError("check_strong_irreducibility: dimension mismatch");
    if (sft.is_full_shift()) {
        // no constraints: any two patterns on disjoint sets coexist
        IrreducibilityVerdict v;
        v.scale = scale;
        v.exact_languages = true;
        return v;
    }
    auto language_of = [&](const std::vector<Coord>& s) {
        return enumerate_language(sft, folner_box(s), margin, cap).patterns;
    };
    auto setup = [&](const PointSet& b1, const PointSet& b2) {
        PointSet glue_window = minkowski_extend(bounding_box(union_set(b1, b2)), margin);
        auto oracle = std::make_shared<CompletionOracle>(sft, glue_window, cap);
        return [oracle, &b1, &b2](const ValueVec& p, const ValueVec& q) {
            return oracle->exists(pin_pair(b1, p, b2, q));
        };
    };
    return drive(sft, D, scale, language_of, setup);
}

IrreducibilityVerdict check_product_gluing(const SftSpec& sft, const SubgroupBasis& H,
                                           const MixingShape& D, int scale,
                                           const PointSet& margin, const Capacity& cap) {
    if (scale < 1) throw InvalidWindow("check_product_gluing: scale must be >= 1");
    if (D.points.dim() != sft.dim() || margin.dim() != sft.dim() || H.dim() != sft.dim())
        throw DimensionError("check_product_gluing: dimension mismatch");
    if (sft.is_full_shift()) {
        IrreducibilityVerdict v;
        v.scale = scale;
        v.exact_languages = true;
        return v;
    }
    auto language_of = [&](const std::vector<Coord>& s) {
        return product_language(sft, H, folner_box(s), margin, cap).patterns;
    };
    auto setup = [&](const PointSet& b1, const PointSet& b2) {
        // gluing in the product system decomposes over cosets: each piece of
        // the bounding box needs one projected word matching the pins
        PointSet bbox = bounding_box(union_set(b1, b2));
        auto parts = std::make_shared<std::vector<CosetPart>>(
            coset_decompose(bbox, H.section()));
        auto oracles = std::make_shared<std::vector<CompletionOracle>>();
        for (const CosetPart& part : *parts) {
            PointSet shifted = part.part.translated(negate(part.rep));
            oracles->emplace_back(sft, minkowski_extend(shifted, margin), cap);
        }
        // pin positions per piece are fixed for the geometry, so feasibility
        // depends only on the pinned values; memoize per piece
        struct PieceState {
            std::vector<std::pair<std::size_t, bool>> sources; // (index, from_b1)
            std::vector<Point> positions;
            std::mutex mutex;
            std::map<ValueVec, bool> memo;
        };
        auto states = std::make_shared<std::vector<PieceState>>(parts->size());
        for (std::size_t pi = 0; pi < parts->size(); ++pi) {
            const CosetPart& part = (*parts)[pi];
            PieceState& st = (*states)[pi];
            for (std::size_t i = 0; i < b1.size(); ++i)
                if (part.part.contains(b1[i])) {
                    st.sources.emplace_back(i, true);
                    st.positions.push_back(sub(b1[i], part.rep));
                }
            for (std::size_t i = 0; i < b2.size(); ++i)
                if (part.part.contains(b2[i])) {
                    st.sources.emplace_back(i, false);
                    st.positions.push_back(sub(b2[i], part.rep));
                }
        }
        struct PieceGlue {
            std::shared_ptr<std::vector<CosetPart>> parts;
            std::shared_ptr<std::vector<CompletionOracle>> oracles;
            std::shared_ptr<std::vector<PieceState>> states;

            bool operator()(const ValueVec& p, const ValueVec& q) const {
                for (std::size_t pi = 0; pi < states->size(); ++pi) {
                    PieceState& st = (*states)[pi];
                    if (st.sources.empty()) continue;
                    ValueVec key(st.sources.size());
                    for (std::size_t k = 0; k < st.sources.size(); ++k) {
                        auto [idx, from_b1] = st.sources[k];
                        key[k] = from_b1 ? p[idx] : q[idx];
                    }
                    bool feasible;
                    bool cached = false;
                    {
                        std::lock_guard<std::mutex> lock(st.mutex);
                        auto it = st.memo.find(key);
                        if (it != st.memo.end()) {
                            feasible = it->second;
                            cached = true;
                        }
                    }
                    if (!cached) {
                        std::vector<std::pair<Point, Symbol>> pins;
                        pins.reserve(key.size());
                        for (std::size_t k = 0; k < key.size(); ++k)
                            pins.emplace_back(st.positions[k], key[k]);
                        feasible = (*oracles)[pi].exists(pins);
                        std::lock_guard<std::mutex> lock(st.mutex);
                        st.memo.emplace(std::move(key), feasible);
                    }
                    if (!feasible) return false;
                }
                return true;
            }
        };
        return PieceGlue{parts, oracles, states};
    };
    return drive(sft, D, scale, language_of, setup);
}

} // namespace shiftlab
