#include "shiftlab/report.hpp"

#include "canonical_json.hpp"
#include "shiftlab/entropy.hpp"
#include "shiftlab/projection.hpp"
#include "shiftlab/version.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <limits>
#include <optional>
#include <sstream>

namespace shiftlab {

namespace {

using nlohmann::json;

std::string sides_str(const std::vector<Coord>& sides) {
    std::string out;
    for (std::size_t i = 0; i < sides.size(); ++i) {
        if (i) out += 'x';
        out += std::to_string(sides[i]);
    }
    return out;
}

std::vector<Coord> window_sides(const PointSet& w) {
    // side lengths of the bounding box; spec windows are boxes so this is
    // exactly the declared shape
    int dim = w.dim();
    Point lo = w[0], hi = w[0];
    for (const Point& p : w.points())
        for (int i = 0; i < dim; ++i) {
            lo[i] = std::min(lo[i], p[i]);
            hi[i] = std::max(hi[i], p[i]);
        }
    std::vector<Coord> sides(dim);
    for (int i = 0; i < dim; ++i) sides[i] = hi[i] - lo[i] + 1;
    return sides;
}

std::string margin_id(const PointSet& margin) {
    if (margin.size() == 1 && is_origin(margin[0])) return "origin";
    for (Coord r = 1; r <= 8; ++r) {
        std::size_t cube = 1;
        for (int i = 0; i < margin.dim(); ++i) cube *= static_cast<std::size_t>(2 * r + 1);
        if (margin.size() == cube && margin == centered_cube(margin.dim(), r))
            return "box" + std::to_string(r);
    }
    // deterministic tag for irregular shapes
    std::uint64_t h = 1469598103934665603ull;
    for (const Point& p : margin.points())
        for (Coord c : p) {
            h ^= static_cast<std::uint64_t>(c) + 0x9e3779b97f4a7c15ull;
            h *= 1099511628211ull;
        }
    char buf[32];
    std::snprintf(buf, sizeof buf, "custom%zu-%08llx", margin.size(),
                  static_cast<unsigned long long>(h & 0xffffffffull));
    return buf;
}

json point_json(const Point& p) {
    json a = json::array();
    for (Coord c : p) a.push_back(c);
    return a;
}

json pointset_json(const PointSet& s) {
    json a = json::array();
    for (const Point& p : s.points()) a.push_back(point_json(p));
    return a;
}

json pattern_json(const Pattern& p, const Alphabet& alphabet) {
    json out;
    out["points"] = pointset_json(p.support);
    json syms = json::array();
    for (Symbol s : p.values) syms.push_back(alphabet.name(s));
    out["symbols"] = syms;
    return out;
}

json value_vec_json(const PointSet& support, const ValueVec& v, const Alphabet& alphabet) {
    return pattern_json(Pattern(support, v), alphabet);
}

json entropy_report_json(const EntropyReport& er) {
    json out;
    json bounds = json::array();
    for (const EntropyBound& b : er.bounds) {
        json bj;
        bj["window_sides"] = sides_str(window_sides(b.window));
        bj["window_size"] = b.window.size();
        bj["margin_id"] = margin_id(b.margin);
        bj["count"] = b.count.str();
        bj["value_nats"] = b.value;
        bj["certified_upper"] = b.certified_upper;
        bj["exact"] = b.exact;
        if (b.empty_system) bj["empty_system"] = true;
        bounds.push_back(bj);
    }
    out["bounds"] = bounds;
    out["best_upper"] = er.best_upper;
    if (er.exact_value) out["exact_value"] = *er.exact_value;
    return out;
}

void entropy_csv_rows(const EntropyReport& er, std::ostringstream& csv) {
    for (const EntropyBound& b : er.bounds) {
        char value[64];
        std::snprintf(value, sizeof value, "%.17g", b.value);
        csv << sides_str(window_sides(b.window)) << ',' << margin_id(b.margin) << ','
            << b.count.str() << ',' << value << ',' << (b.exact ? "true" : "false") << '\n';
    }
}

json comparison_json(const ComparisonReport& rep, const Alphabet& alphabet) {
    json out;
    json windows = json::array();
    for (const WindowComparison& c : rep.windows) {
        json cj;
        cj["window_sides"] = sides_str(window_sides(c.window));
        cj["count_x"] = c.count_x.str();
        cj["count_product"] = c.count_product.str();
        cj["equal"] = c.equal;
        cj["inclusion_verified"] = c.inclusion_verified;
        cj["inclusion_ok"] = c.inclusion_ok;
        if (c.witness) cj["witness"] = pattern_json(*c.witness, alphabet);
        windows.push_back(cj);
    }
    out["windows"] = windows;
    out["all_equal"] = rep.all_equal;
    json gap;
    gap["best_upper_x"] = rep.best_upper_x;
    gap["best_upper_xh"] = rep.best_upper_xh;
    if (rep.exact_x) gap["exact_x"] = *rep.exact_x;
    if (rep.exact_xh) gap["exact_xh"] = *rep.exact_xh;
    double hx = rep.exact_x.value_or(rep.best_upper_x);
    double hxh = rep.exact_xh.value_or(rep.best_upper_xh);
    gap["gap_xh_minus_x"] = hxh - hx;
    out["entropy_gap"] = gap;
    return out;
}

json verdict_json(const IrreducibilityVerdict& v, const Alphabet& alphabet) {
    json out;
    out["status"] = v.passed() ? "pass_at_scale" : "counterexample";
    out["scale"] = v.scale;
    out["exact_languages"] = v.exact_languages;
    if (v.witness) {
        json w;
        w["b1"] = pointset_json(v.witness->b1);
        w["b2"] = pointset_json(v.witness->b2);
        w["p"] = value_vec_json(v.witness->b1, v.witness->p, alphabet);
        w["q"] = value_vec_json(v.witness->b2, v.witness->q, alphabet);
        out["witness"] = w;
    }
    return out;
}

std::vector<PointSet> proj_windows(const SystemSpec& spec, int rank) {
    std::vector<PointSet> out;
    for (const auto& sides : spec.windows) {
        std::vector<Coord> sub(sides.begin(), sides.begin() + rank);
        out.push_back(folner_box(sub));
    }
    return out;
}

// best certified knowledge: the exact value when present, else the least
// upper bound seen
double best_known(const EntropyReport& er, double extra_bound) {
    double best = std::min(er.best_upper, extra_bound);
    if (er.exact_value) best = std::min(best, *er.exact_value);
    return best;
}

struct StepTimer {
    json& timings;
    std::string key;
    std::chrono::steady_clock::time_point start;

    StepTimer(json& t, std::string k)
        : timings(t), key(std::move(k)), start(std::chrono::steady_clock::now()) {}
    ~StepTimer() {
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
        timings[key] = static_cast<std::int64_t>(ms);
    }
};

} // namespace

Command command_from_name(const std::string& name) {
    if (name == "entropy") return Command::entropy;
    if (name == "proj-entropy") return Command::proj_entropy;
    if (name == "product-check") return Command::product_check;
    if (name == "irreducibility") return Command::irreducibility;
    if (name == "full") return Command::full;
    throw SpecError("unknown command '" + name +
                    "' (expected entropy, proj-entropy, product-check, irreducibility, full)");
}

std::string command_name(Command cmd) {
    switch (cmd) {
        case Command::entropy: return "entropy";
        case Command::proj_entropy: return "proj-entropy";
        case Command::product_check: return "product-check";
        case Command::irreducibility: return "irreducibility";
        case Command::full: return "full";
    }
    throw InternalError("command_name: bad enum");
}

RunReport run_report(const SystemSpec& spec, Command command, const RunOptions& opts) {
    const bool want_entropy = command == Command::entropy || command == Command::full;
    const bool want_proj = command == Command::proj_entropy || command == Command::full;
    const bool want_product = command == Command::product_check || command == Command::full;
    const bool want_irr = command == Command::irreducibility || command == Command::full;

    if ((want_proj || want_product) && !spec.subgroup)
        throw SpecError("spec error at /subgroup: required by command " +
                        command_name(command));
    if (want_irr && !spec.mixing_shape)
        throw SpecError("spec error at /mixing_shape: required by command " +
                        command_name(command));

    SftSpec sft = spec.to_sft();
    Capacity cap;
    cap.max_cells = opts.max_cells;
    PointSet margin = spec.margin_set();
    std::vector<PointSet> windows = spec.window_sets();

    json results;
    json timings;
    std::ostringstream csv;
    csv << "window_sides,margin_id,count,value_nats,exact\n";

    std::optional<EntropyReport> er;
    std::optional<EntropyReport> pr;
    std::optional<ComparisonReport> crep;
    std::optional<IrreducibilityVerdict> verdict;
    double best_strip = std::numeric_limits<double>::infinity();

    if (want_entropy) {
        StepTimer timer(timings, "entropy_ms");
        er = entropy_bounds(sft, windows, margin, cap);
        json section = entropy_report_json(*er);
        if (sft.dim() == 2 && sft.nearest_neighbor() && !sft.is_full_shift()) {
            std::vector<int> widths;
            for (int m = 1; m <= opts.strip_width_max; ++m) widths.push_back(m);
            std::vector<StripBound> strips = strip_bounds_2d(sft, widths, cap);
            json sj = json::array();
            for (const StripBound& s : strips) {
                json one;
                one["width"] = s.width;
                one["states"] = s.states;
                one["value_nats"] = s.value;
                sj.push_back(one);
                best_strip = std::min(best_strip, s.value);
            }
            section["strip_bounds"] = sj;
        }
        results["entropy"] = section;
        entropy_csv_rows(*er, csv);
    }

    if (want_proj) {
        StepTimer timer(timings, "proj_entropy_ms");
        SubgroupBasis H = *spec.subgroup_basis();
        pr = projectional_entropy(sft, H, proj_windows(spec, H.rank()), margin, cap);
        results["proj_entropy"] = entropy_report_json(*pr);
        if (command == Command::proj_entropy) entropy_csv_rows(*pr, csv);
    }

    if (want_product) {
        StepTimer timer(timings, "product_check_ms");
        SubgroupBasis H = *spec.subgroup_basis();
        crep = compare_systems(sft, H, windows, margin, cap);
        results["product_check"] = comparison_json(*crep, sft.alphabet());
    }

    if (want_irr) {
        StepTimer timer(timings, "irreducibility_ms");
        verdict = check_strong_irreducibility(sft, *spec.mixing(), opts.irreducibility_scale,
                                              margin, cap);
        results["irreducibility"] = verdict_json(*verdict, sft.alphabet());
    }

    if (command == Command::full) {
        // mirrors the main theorem's hypotheses and conclusion
        json summary;
        summary["irreducible_at_scale"] = verdict->passed();
        summary["h_x_best"] = best_known(*er, best_strip);
        summary["h_xh_best"] = best_known(*pr, std::numeric_limits<double>::infinity());
        summary["product_equal_at_scale"] = crep->all_equal;
        results["summary"] = summary;
    }

    if (opts.margin_sweep >= 0) {
        StepTimer timer(timings, "margin_sweep_ms");
        json sweep;
        json per_margin = json::array();
        bool stable = true;
        std::optional<json> prev_verdicts;
        for (int jr = 0; jr <= opts.margin_sweep; ++jr) {
            PointSet mj = centered_cube(spec.dim, jr);
            json entry;
            entry["margin_id"] = margin_id(mj);
            json verdicts;
            if (want_entropy)
                entry["best_upper_x"] = entropy_bounds(sft, windows, mj, cap).best_upper;
            if (want_proj) {
                SubgroupBasis H = *spec.subgroup_basis();
                entry["best_upper_xh"] =
                    projectional_entropy(sft, H, proj_windows(spec, H.rank()), mj, cap)
                        .best_upper;
            }
            if (want_product) {
                SubgroupBasis H = *spec.subgroup_basis();
                verdicts["product_equal"] = compare_systems(sft, H, windows, mj, cap).all_equal;
            }
            if (want_irr) {
                IrreducibilityVerdict v = check_strong_irreducibility(
                    sft, *spec.mixing(), opts.irreducibility_scale, mj, cap);
                verdicts["irreducibility"] =
                    v.passed() ? "pass_at_scale" : "counterexample";
            }
            if (!verdicts.empty()) {
                entry["verdicts"] = verdicts;
                if (prev_verdicts && *prev_verdicts != verdicts) stable = false;
                prev_verdicts = verdicts;
            }
            per_margin.push_back(entry);
        }
        sweep["per_margin"] = per_margin;
        sweep["verdicts_stable"] = stable;
        results["margin_sweep"] = sweep;
    }

    json root;
    root["command"] = command_name(command);
    root["results"] = results;
    root["spec"] = json::parse(serialize_system_spec(spec));
    root["timings"] = timings;
    root["tool"] = json{{"name", kToolName}, {"version", kToolVersion}};

    RunReport out;
    out.report_json = canonical_dump(root);
    if (want_entropy || command == Command::proj_entropy) out.entropy_csv = csv.str();
    return out;
}

std::string strip_timings(const std::string& report_json) {
    json j = json::parse(report_json);
    j.erase("timings");
    return canonical_dump(j);
}

} // namespace shiftlab
