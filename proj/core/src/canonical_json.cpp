#include "canonical_json.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace shiftlab {

namespace {

void dump_string(std::ostringstream& os, const std::string& s) {
    os << '"';
    for (char c : s) {
        switch (c) {
            case '"': os << "\\\""; break;
            case '\\': os << "\\\\"; break;
            case '\n': os << "\\n"; break;
            case '\r': os << "\\r"; break;
            case '\t': os << "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    os << buf;
                } else {
                    os << c;
                }
        }
    }
    os << '"';
}

void dump_value(std::ostringstream& os, const nlohmann::json& j, int indent, int depth) {
    const std::string pad(static_cast<std::size_t>(indent) * (depth + 1), ' ');
    const std::string close_pad(static_cast<std::size_t>(indent) * depth, ' ');
    switch (j.type()) {
        case nlohmann::json::value_t::null: os << "null"; break;
        case nlohmann::json::value_t::boolean: os << (j.get<bool>() ? "true" : "false"); break;
        case nlohmann::json::value_t::number_integer:
            os << j.get<std::int64_t>();
            break;
        case nlohmann::json::value_t::number_unsigned:
            os << j.get<std::uint64_t>();
            break;
        case nlohmann::json::value_t::number_float: {
            double v = j.get<double>();
            if (std::isnan(v)) {
                os << "null";
            } else if (std::isinf(v)) {
                os << (v > 0 ? "\"inf\"" : "\"-inf\"");
            } else {
                char buf[64];
                std::snprintf(buf, sizeof buf, "%.17g", v);
                os << buf;
            }
            break;
        }
        case nlohmann::json::value_t::string: dump_string(os, j.get<std::string>()); break;
        case nlohmann::json::value_t::array: {
            if (j.empty()) {
                os << "[]";
                break;
            }
            os << "[\n";
            for (std::size_t i = 0; i < j.size(); ++i) {
                os << pad;
                dump_value(os, j[i], indent, depth + 1);
                if (i + 1 < j.size()) os << ',';
                os << '\n';
            }
            os << close_pad << ']';
            break;
        }
        case nlohmann::json::value_t::object: {
            if (j.empty()) {
                os << "{}";
                break;
            }
            os << "{\n";
            std::size_t i = 0;
            for (auto it = j.begin(); it != j.end(); ++it, ++i) {
                os << pad;
                dump_string(os, it.key());
                os << ": ";
                dump_value(os, it.value(), indent, depth + 1);
                if (i + 1 < j.size()) os << ',';
                os << '\n';
            }
            os << close_pad << '}';
            break;
        }
        default: os << "null";
    }
}

} // namespace

std::string canonical_dump(const nlohmann::json& j, int indent) {
    std::ostringstream os;
    dump_value(os, j, indent, 0);
    os << '\n';
    return os.str();
}

} // namespace shiftlab
