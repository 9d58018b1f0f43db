#include "shiftlab/lattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <sstream>

namespace shiftlab {

Point add(const Point& a, const Point& b) {
    Point r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

Point sub(const Point& a, const Point& b) {
    Point r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

Point negate(const Point& a) {
    Point r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}

bool is_origin(const Point& a) {
    return std::all_of(a.begin(), a.end(), [](Coord c) { return c == 0; });
}

Point origin(int dim) { return Point(static_cast<std::size_t>(dim), 0); }

std::string point_str(const Point& a) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i) os << ',';
        os << a[i];
    }
    os << ')';
    return os.str();
}

PointSet::PointSet(int dim, std::vector<Point> pts) : dim_(dim), pts_(std::move(pts)) {
    if (dim_ < 1) throw DimensionError("PointSet: dimension must be >= 1");
    if (pts_.empty()) throw InvalidWindow("PointSet: empty set");
    for (const Point& p : pts_) {
        if (static_cast<int>(p.size()) != dim_)
            throw DimensionError("PointSet: point " + point_str(p) + " has wrong dimension");
    }
    std::sort(pts_.begin(), pts_.end());
    pts_.erase(std::unique(pts_.begin(), pts_.end()), pts_.end());
}

bool PointSet::contains(const Point& p) const {
    return std::binary_search(pts_.begin(), pts_.end(), p);
}

std::optional<std::size_t> PointSet::index_of(const Point& p) const {
    auto it = std::lower_bound(pts_.begin(), pts_.end(), p);
    if (it == pts_.end() || *it != p) return std::nullopt;
    return static_cast<std::size_t>(it - pts_.begin());
}

PointSet PointSet::translated(const Point& v) const {
    std::vector<Point> out;
    out.reserve(pts_.size());
    for (const Point& p : pts_) out.push_back(add(p, v));
    return PointSet(dim_, std::move(out));
}

PointSet folner_box(const std::vector<Coord>& side_lengths) {
    if (side_lengths.empty()) throw InvalidWindow("folner_box: no side lengths");
    for (Coord s : side_lengths) {
        if (s < 1) throw InvalidWindow("folner_box: side length must be >= 1");
    }
    int dim = static_cast<int>(side_lengths.size());
    std::vector<Point> pts;
    Point cur = origin(dim);
    for (;;) {
        pts.push_back(cur);
        int i = dim - 1;
        while (i >= 0) {
            if (++cur[i] < side_lengths[i]) break;
            cur[i] = 0;
            --i;
        }
        if (i < 0) break;
    }
    return PointSet(dim, std::move(pts));
}

PointSet minkowski_extend(const PointSet& F, const PointSet& shape) {
    if (F.dim() != shape.dim())
        throw DimensionError("minkowski_extend: dimension mismatch");
    if (!shape.contains(origin(shape.dim())))
        throw InvalidShape("minkowski_extend: shape must contain the origin");
    std::vector<Point> out;
    out.reserve(F.size() * shape.size());
    for (const Point& f : F.points())
        for (const Point& s : shape.points()) out.push_back(add(f, s));
    return PointSet(F.dim(), std::move(out));
}

PointSet bounding_box(const PointSet& F) {
    int dim = F.dim();
    Point lo = F[0], hi = F[0];
    for (const Point& p : F.points()) {
        for (int i = 0; i < dim; ++i) {
            lo[i] = std::min(lo[i], p[i]);
            hi[i] = std::max(hi[i], p[i]);
        }
    }
    std::vector<Coord> sides(dim);
    for (int i = 0; i < dim; ++i) sides[i] = hi[i] - lo[i] + 1;
    return folner_box(sides).translated(lo);
}

PointSet centered_cube(int dim, Coord radius) {
    if (radius < 0) throw InvalidShape("centered_cube: negative radius");
    std::vector<Coord> sides(dim, 2 * radius + 1);
    Point shift(dim, -radius);
    return folner_box(sides).translated(shift);
}

namespace {

// floor division, exact for negative numerators
Coord floor_div(Coord a, Coord b) {
    Coord q = a / b, r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
}

struct HnfResult {
    std::vector<Point> hnf;
    std::vector<Point> trans; // unimodular T, T * rows = hnf
    std::vector<int> pivots;
};

// Row-style Hermite normal form with transform tracking. Throws
// InvalidSubgroup when the rows are rank deficient.
HnfResult hermite_normal_form(int dim, const std::vector<Point>& rows) {
    int r = static_cast<int>(rows.size());
    HnfResult out;
    out.hnf = rows;
    out.trans.assign(r, Point(r, 0));
    for (int i = 0; i < r; ++i) out.trans[i][i] = 1;

    auto row_sub = [&](int dst, int src, Coord q) {
        for (int c = 0; c < dim; ++c) out.hnf[dst][c] -= q * out.hnf[src][c];
        for (int c = 0; c < r; ++c) out.trans[dst][c] -= q * out.trans[src][c];
    };
    auto row_swap = [&](int a, int b) {
        std::swap(out.hnf[a], out.hnf[b]);
        std::swap(out.trans[a], out.trans[b]);
    };
    auto row_negate = [&](int a) {
        for (int c = 0; c < dim; ++c) out.hnf[a][c] = -out.hnf[a][c];
        for (int c = 0; c < r; ++c) out.trans[a][c] = -out.trans[a][c];
    };

    int ri = 0;
    for (int col = 0; col < dim && ri < r; ++col) {
        // gcd-reduce column entries in rows ri..r-1 down to one nonzero
        for (;;) {
            int piv = -1;
            for (int k = ri; k < r; ++k) {
                if (out.hnf[k][col] == 0) continue;
                if (piv < 0 || std::llabs(out.hnf[k][col]) < std::llabs(out.hnf[piv][col]))
                    piv = k;
            }
            if (piv < 0) break; // column all zero below ri
            row_swap(ri, piv);
            bool others = false;
            for (int k = ri + 1; k < r; ++k) {
                if (out.hnf[k][col] == 0) continue;
                Coord q = out.hnf[k][col] / out.hnf[ri][col];
                row_sub(k, ri, q);
                if (out.hnf[k][col] != 0) others = true;
            }
            if (!others) break;
        }
        if (out.hnf[ri][col] == 0) continue;
        if (out.hnf[ri][col] < 0) row_negate(ri);
        // reduce entries above the pivot into [0, pivot)
        for (int k = 0; k < ri; ++k) {
            Coord q = floor_div(out.hnf[k][col], out.hnf[ri][col]);
            if (q != 0) row_sub(k, ri, q);
        }
        out.pivots.push_back(col);
        ++ri;
    }
    if (ri < r) throw InvalidSubgroup("subgroup basis rows are rank deficient");
    return out;
}

// Smith normal form diagonal of an r x d integer matrix (full row rank).
std::vector<Coord> smith_diagonal(int dim, std::vector<Point> m) {
    int rows = static_cast<int>(m.size());
    int cols = dim;
    int n = std::min(rows, cols);
    std::vector<Coord> diag;

    auto nonzero_below = [&](int s, int& ir, int& ic) {
        Coord best = 0;
        ir = -1;
        for (int i = s; i < rows; ++i)
            for (int j = s; j < cols; ++j) {
                Coord v = std::llabs(m[i][j]);
                if (v != 0 && (ir < 0 || v < best)) {
                    best = v;
                    ir = i;
                    ic = j;
                }
            }
        return ir >= 0;
    };

    for (int s = 0; s < n; ++s) {
        int ir, ic;
        if (!nonzero_below(s, ir, ic)) break;
        for (;;) {
            nonzero_below(s, ir, ic);
            std::swap(m[s], m[ir]);
            for (int i = 0; i < rows; ++i) std::swap(m[i][s], m[i][ic]);
            bool clean = true;
            for (int i = s + 1; i < rows; ++i) {
                if (m[i][s] == 0) continue;
                Coord q = m[i][s] / m[s][s];
                for (int j = s; j < cols; ++j) m[i][j] -= q * m[s][j];
                if (m[i][s] != 0) clean = false;
            }
            for (int j = s + 1; j < cols; ++j) {
                if (m[s][j] == 0) continue;
                Coord q = m[s][j] / m[s][s];
                for (int i = s; i < rows; ++i) m[i][j] -= q * m[i][s];
                if (m[s][j] != 0) clean = false;
            }
            if (!clean) continue;
            // enforce the divisibility chain
            bool divides = true;
            for (int i = s + 1; i < rows && divides; ++i)
                for (int j = s + 1; j < cols && divides; ++j)
                    if (m[i][j] % m[s][s] != 0) {
                        for (int c = s; c < cols; ++c) m[s][c] += m[i][c];
                        divides = false;
                    }
            if (divides) break;
        }
        diag.push_back(std::llabs(m[s][s]));
    }
    return diag;
}

} // namespace

TransversalSection::TransversalSection(const SubgroupBasis& basis)
    : dim_(basis.dim()), rows_(basis.rows()) {
    HnfResult h = hermite_normal_form(dim_, rows_);
    hnf_ = std::move(h.hnf);
    trans_ = std::move(h.trans);
    pivots_ = std::move(h.pivots);
}

Point TransversalSection::rep(const Point& g) const {
    if (static_cast<int>(g.size()) != dim_)
        throw DimensionError("rep: point dimension mismatch");
    Point cur = g;
    for (std::size_t i = 0; i < hnf_.size(); ++i) {
        int c = pivots_[i];
        Coord q = floor_div(cur[c], hnf_[i][c]);
        if (q != 0)
            for (int j = 0; j < dim_; ++j) cur[j] -= q * hnf_[i][j];
    }
    return cur;
}

bool TransversalSection::in_subgroup(const Point& h) const {
    return is_origin(rep(h));
}

std::optional<Point> TransversalSection::sub_coordinates(const Point& h) const {
    if (static_cast<int>(h.size()) != dim_)
        throw DimensionError("sub_coordinates: point dimension mismatch");
    int r = rank();
    Point v(r, 0);
    Point cur = h;
    for (int i = 0; i < r; ++i) {
        int c = pivots_[i];
        if (cur[c] % hnf_[i][c] != 0) return std::nullopt;
        v[i] = cur[c] / hnf_[i][c];
        if (v[i] != 0)
            for (int j = 0; j < dim_; ++j) cur[j] -= v[i] * hnf_[i][j];
    }
    if (!is_origin(cur)) return std::nullopt;
    // u * rows = v * hnf = h with u = v * T
    Point u(r, 0);
    for (int i = 0; i < r; ++i)
        for (int k = 0; k < r; ++k) u[i] += v[k] * trans_[k][i];
    return u;
}

Point TransversalSection::embed(const Point& u) const {
    int r = rank();
    if (static_cast<int>(u.size()) != r)
        throw DimensionError("embed: sub-coordinate dimension mismatch");
    Point g = origin(dim_);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < dim_; ++j) g[j] += u[i] * rows_[i][j];
    return g;
}

SubgroupBasis::SubgroupBasis(int dim, std::vector<Point> rows)
    : dim_(dim), rows_(std::move(rows)) {
    if (dim_ < 1) throw DimensionError("SubgroupBasis: dimension must be >= 1");
    if (rows_.empty()) throw InvalidSubgroup("SubgroupBasis: empty basis");
    if (static_cast<int>(rows_.size()) > dim_)
        throw InvalidSubgroup("SubgroupBasis: more rows than ambient dimension");
    for (const Point& row : rows_)
        if (static_cast<int>(row.size()) != dim_)
            throw DimensionError("SubgroupBasis: row has wrong dimension");

    section_ = std::make_shared<TransversalSection>(*this); // validates rank

    std::vector<Coord> diag = smith_diagonal(dim_, rows_);
    for (Coord s : diag)
        if (s > 1) invariants_.push_back(s);
    if (rank() == dim_) {
        index_ = 1;
        for (Coord s : diag) index_ *= s;
    }
}

Coord SubgroupBasis::index() const {
    if (!finite_index()) throw InvalidSubgroup("index: subgroup has infinite index");
    return index_;
}

NormalFormInfo normal_form(const SubgroupBasis& basis) {
    NormalFormInfo info;
    info.invariants = basis.invariants();
    info.free_rank = basis.free_rank();
    if (basis.finite_index()) info.index = basis.index();
    return info;
}

std::vector<CosetPart> coset_decompose(const PointSet& F,
                                       const TransversalSection& section) {
    if (F.dim() != section.dim())
        throw DimensionError("coset_decompose: dimension mismatch");
    std::vector<std::pair<Point, std::vector<Point>>> groups;
    for (const Point& p : F.points()) {
        Point m = section.rep(p);
        auto it = std::find_if(groups.begin(), groups.end(),
                               [&](const auto& g) { return g.first == m; });
        if (it == groups.end())
            groups.emplace_back(std::move(m), std::vector<Point>{p});
        else
            it->second.push_back(p);
    }
    std::sort(groups.begin(), groups.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<CosetPart> parts;
    parts.reserve(groups.size());
    for (auto& g : groups)
        parts.push_back(CosetPart{g.first, PointSet(F.dim(), std::move(g.second))});
    return parts;
}

} // namespace shiftlab
