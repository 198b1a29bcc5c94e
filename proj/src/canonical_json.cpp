#include "mlqgate/canonical_json.hpp"

#include <cmath>
#include <cstdio>

#include "mlqgate/errors.hpp"

namespace mlqgate::canonical_json {

namespace {

void append_escaped(std::string& out, const std::string& s) {
    out += '"';
    for (unsigned char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\b': out += "\\b"; break;
            case '\f': out += "\\f"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (c < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += static_cast<char>(c);
                }
        }
    }
    out += '"';
}

void indent(std::string& out, int depth) {
    out.append(static_cast<std::size_t>(depth) * 2, ' ');
}

void write_value(std::string& out, const nlohmann::json& v, int depth) {
    using value_t = nlohmann::json::value_t;
    switch (v.type()) {
        case value_t::null:
            out += "null";
            break;
        case value_t::boolean:
            out += v.get<bool>() ? "true" : "false";
            break;
        case value_t::number_integer:
            out += std::to_string(v.get<std::int64_t>());
            break;
        case value_t::number_unsigned:
            out += std::to_string(v.get<std::uint64_t>());
            break;
        case value_t::number_float:
            out += format_double(v.get<double>());
            break;
        case value_t::string:
            append_escaped(out, v.get_ref<const std::string&>());
            break;
        case value_t::array: {
            if (v.empty()) {
                out += "[]";
                break;
            }
            out += "[\n";
            bool first = true;
            for (const auto& item : v) {
                if (!first) out += ",\n";
                first = false;
                indent(out, depth + 1);
                write_value(out, item, depth + 1);
            }
            out += '\n';
            indent(out, depth);
            out += ']';
            break;
        }
        case value_t::object: {
            if (v.empty()) {
                out += "{}";
                break;
            }
            // nlohmann's default object container is a std::map, so iteration
            // order is already the sorted key order.
            out += "{\n";
            bool first = true;
            for (auto it = v.begin(); it != v.end(); ++it) {
                if (!first) out += ",\n";
                first = false;
                indent(out, depth + 1);
                append_escaped(out, it.key());
                out += ": ";
                write_value(out, it.value(), depth + 1);
            }
            out += '\n';
            indent(out, depth);
            out += '}';
            break;
        }
        default:
            throw Error("canonical_json: unsupported value type");
    }
}

}  // namespace

std::string format_double(double v) {
    if (!std::isfinite(v)) {
        throw Error("canonical_json: non-finite number cannot be serialized");
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

std::string dump(const nlohmann::json& value) {
    std::string out;
    write_value(out, value, 0);
    out += '\n';
    return out;
}

}  // namespace mlqgate::canonical_json
