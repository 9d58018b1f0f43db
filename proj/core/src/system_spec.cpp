#include "shiftlab/system_spec.hpp"

#include "canonical_json.hpp"

#include <algorithm>
#include <set>

namespace shiftlab {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw SpecError("spec error at " + path + ": " + what);
}

const json& need(const json& j, const char* key, const std::string& path) {
    if (!j.is_object() || !j.contains(key)) fail(path + "/" + key, "missing field");
    return j.at(key);
}

std::int64_t as_int(const json& j, const std::string& path) {
    if (!j.is_number_integer()) fail(path, "expected an integer");
    return j.get<std::int64_t>();
}

std::string as_string(const json& j, const std::string& path) {
    if (!j.is_string()) fail(path, "expected a string");
    return j.get<std::string>();
}

Point as_point(const json& j, int dim, const std::string& path) {
    if (!j.is_array() || static_cast<int>(j.size()) != dim)
        fail(path, "expected an integer vector of length " + std::to_string(dim));
    Point p(static_cast<std::size_t>(dim));
    for (int i = 0; i < dim; ++i) p[i] = as_int(j[i], path + "/" + std::to_string(i));
    return p;
}

std::vector<Point> as_points(const json& j, int dim, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array of integer vectors");
    std::vector<Point> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(as_point(j[i], dim, path + "/" + std::to_string(i)));
    return out;
}

} // namespace

SystemSpec parse_system_spec(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SpecError(std::string("spec error at /: not valid JSON (") + e.what() + ")");
    }
    if (!j.is_object()) fail("/", "top level must be an object");

    SystemSpec spec;
    spec.name = as_string(need(j, "name", ""), "/name");
    spec.dim = static_cast<int>(as_int(need(j, "dim", ""), "/dim"));
    if (spec.dim < 1) fail("/dim", "dimension must be >= 1");

    const json& alpha = need(j, "alphabet", "");
    if (!alpha.is_array() || alpha.empty()) fail("/alphabet", "expected a nonempty array");
    for (std::size_t i = 0; i < alpha.size(); ++i)
        spec.alphabet.push_back(as_string(alpha[i], "/alphabet/" + std::to_string(i)));
    {
        std::set<std::string> names(spec.alphabet.begin(), spec.alphabet.end());
        if (names.size() != spec.alphabet.size()) fail("/alphabet", "duplicate symbol names");
        if (spec.alphabet.size() > kMaxAlphabet) fail("/alphabet", "more than 255 symbols");
    }

    const json& forb = need(j, "forbidden", "");
    if (!forb.is_array()) fail("/forbidden", "expected an array");
    for (std::size_t i = 0; i < forb.size(); ++i) {
        std::string path = "/forbidden/" + std::to_string(i);
        const json& entry = forb[i];
        ForbiddenEntry fe;
        fe.offsets = as_points(need(entry, "offsets", path), spec.dim, path + "/offsets");
        const json& syms = need(entry, "symbols", path);
        if (!syms.is_array()) fail(path + "/symbols", "expected an array");
        for (std::size_t k = 0; k < syms.size(); ++k) {
            std::string spath = path + "/symbols/" + std::to_string(k);
            std::string s = as_string(syms[k], spath);
            if (std::find(spec.alphabet.begin(), spec.alphabet.end(), s) ==
                spec.alphabet.end())
                fail(spath, "symbol '" + s + "' is not in the alphabet");
            fe.symbols.push_back(std::move(s));
        }
        if (fe.offsets.size() != fe.symbols.size())
            fail(path, "offsets and symbols must have equal length");
        if (fe.offsets.empty()) fail(path + "/offsets", "forbidden pattern cannot be empty");
        std::set<Point> distinct(fe.offsets.begin(), fe.offsets.end());
        if (distinct.size() != fe.offsets.size()) fail(path + "/offsets", "duplicate offsets");
        spec.forbidden.push_back(std::move(fe));
    }

    if (j.contains("subgroup") && !j.at("subgroup").is_null()) {
        spec.subgroup = as_points(j.at("subgroup"), spec.dim, "/subgroup");
        try {
            SubgroupBasis check(spec.dim, *spec.subgroup);
        } catch (const Error& e) {
            fail("/subgroup", e.what());
        }
    }
    if (j.contains("mixing_shape") && !j.at("mixing_shape").is_null()) {
        spec.mixing_shape = as_points(j.at("mixing_shape"), spec.dim, "/mixing_shape");
        if (std::find(spec.mixing_shape->begin(), spec.mixing_shape->end(),
                      origin(spec.dim)) == spec.mixing_shape->end())
            fail("/mixing_shape", "must contain the zero vector");
    }

    const json& wins = need(j, "windows", "");
    if (!wins.is_array() || wins.empty()) fail("/windows", "expected a nonempty array");
    for (std::size_t i = 0; i < wins.size(); ++i) {
        std::string path = "/windows/" + std::to_string(i);
        Point sides = as_point(wins[i], spec.dim, path);
        for (Coord s : sides)
            if (s < 1) fail(path, "box sides must be positive");
        spec.windows.push_back(std::vector<Coord>(sides.begin(), sides.end()));
    }

    spec.margin = as_points(need(j, "margin", ""), spec.dim, "/margin");
    if (std::find(spec.margin.begin(), spec.margin.end(), origin(spec.dim)) ==
        spec.margin.end())
        fail("/margin", "must contain the zero vector");

    return spec;
}

SftSpec SystemSpec::to_sft() const {
    Alphabet a(alphabet);
    std::vector<Pattern> forb;
    forb.reserve(forbidden.size());
    for (const ForbiddenEntry& fe : forbidden) {
        PointSet support(dim, fe.offsets);
        ValueVec values(fe.offsets.size());
        for (std::size_t k = 0; k < fe.offsets.size(); ++k)
            values[*support.index_of(fe.offsets[k])] = *a.index_of(fe.symbols[k]);
        forb.push_back(Pattern(support, values));
    }
    return SftSpec(dim, std::move(a), std::move(forb));
}

std::vector<PointSet> SystemSpec::window_sets() const {
    std::vector<PointSet> out;
    out.reserve(windows.size());
    for (const auto& sides : windows) out.push_back(folner_box(sides));
    return out;
}

PointSet SystemSpec::margin_set() const { return PointSet(dim, margin); }

std::optional<SubgroupBasis> SystemSpec::subgroup_basis() const {
    if (!subgroup) return std::nullopt;
    return SubgroupBasis(dim, *subgroup);
}

std::optional<MixingShape> SystemSpec::mixing() const {
    if (!mixing_shape) return std::nullopt;
    return MixingShape(PointSet(dim, *mixing_shape));
}

namespace {

json point_to_json(const Point& p) {
    json a = json::array();
    for (Coord c : p) a.push_back(c);
    return a;
}

json points_to_json(const std::vector<Point>& pts) {
    json a = json::array();
    for (const Point& p : pts) a.push_back(point_to_json(p));
    return a;
}

} // namespace

std::string serialize_system_spec(const SystemSpec& spec) {
    json j;
    j["name"] = spec.name;
    j["dim"] = spec.dim;
    j["alphabet"] = spec.alphabet;
    json forb = json::array();
    for (const ForbiddenEntry& fe : spec.forbidden) {
        json entry;
        entry["offsets"] = points_to_json(fe.offsets);
        entry["symbols"] = fe.symbols;
        forb.push_back(entry);
    }
    j["forbidden"] = forb;
    if (spec.subgroup) j["subgroup"] = points_to_json(*spec.subgroup);
    if (spec.mixing_shape) j["mixing_shape"] = points_to_json(*spec.mixing_shape);
    json wins = json::array();
    for (const auto& sides : spec.windows) {
        json w = json::array();
        for (Coord s : sides) w.push_back(s);
        wins.push_back(w);
    }
    j["windows"] = wins;
    j["margin"] = points_to_json(spec.margin);
    return canonical_dump(j);
}

} // namespace shiftlab
