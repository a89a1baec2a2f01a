#pragma once

#include <algorithm>
#include <cctype>
#include <optional>
#include <string>

#include <json.hpp>

namespace sigmadelta::cli {

/// Outcome of one subcommand: a verdict word, a payload, and the exit code
/// (0 pass/true, 1 fail/false, 2 usage or parse error).
struct Report {
    std::string command;
    std::string verdict;
    int exit_code = 0;
    nlohmann::ordered_json payload = nlohmann::ordered_json::object();
    std::optional<double> timing_ms;

    static Report pass(std::string command, std::string verdict = "pass") { return {std::move(command), std::move(verdict), 0, {}, {}}; }
    static Report fail(std::string command, std::string verdict = "fail") { return {std::move(command), std::move(verdict), 1, {}, {}}; }
    static Report error(std::string command, const std::string& kind, const std::string& message, int exit_code) {
        Report r{std::move(command), "error", exit_code, {}, {}};
        r.payload["error"] = kind;
        r.payload["message"] = message;
        return r;
    }
};

enum class Format { Text, Json };

namespace detail {

inline std::string scalar_text(const nlohmann::ordered_json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

/// Arrays of scalars (matrix rows) print on one line as [a, b].
inline bool is_flat_array(const nlohmann::ordered_json& v) {
    if (!v.is_array()) return false;
    for (const auto& item : v)
        if (item.is_structured()) return false;
    return true;
}

inline std::string flat_text(const nlohmann::ordered_json& v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + scalar_text(v[i]);
    return out + "]";
}

inline void render_text_value(std::string& out, const nlohmann::ordered_json& v, const std::string& indent) {
    if (v.is_object()) {
        for (const auto& [key, item] : v.items()) {
            if (item.is_structured()) {
                out += indent + key + ":\n";
                render_text_value(out, item, indent + "  ");
            } else {
                out += indent + key + ": " + (item.is_string() ? item.get<std::string>() : item.dump()) + "\n";
            }
        }
    } else if (v.is_array()) {
        for (const auto& item : v) {
            if (is_flat_array(item)) {
                out += indent + flat_text(item) + "\n";
            } else if (item.is_structured()) {
                out += indent + "-\n";
                render_text_value(out, item, indent + "  ");
            } else {
                out += indent + "- " + (item.is_string() ? item.get<std::string>() : item.dump()) + "\n";
            }
        }
    } else {
        out += indent + (v.is_string() ? v.get<std::string>() : v.dump()) + "\n";
    }
}

}  // namespace detail

/// Byte-deterministic rendering: payload keys keep insertion order and timing
/// only appears when it was measured.
inline std::string render_report(const Report& r, Format format) {
    if (format == Format::Json) {
        nlohmann::ordered_json doc;
        doc["command"] = r.command;
        doc["verdict"] = r.verdict;
        doc["exit_code"] = r.exit_code;
        for (const auto& [key, item] : r.payload.items()) doc[key] = item;
        if (r.timing_ms) doc["timing_ms"] = *r.timing_ms;
        return doc.dump(2) + "\n";
    }
    std::string head = r.verdict;
    std::transform(head.begin(), head.end(), head.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    std::string out = head + "\n";
    detail::render_text_value(out, r.payload, "  ");
    if (r.timing_ms) out += "  timing_ms: " + std::to_string(*r.timing_ms) + "\n";
    return out;
}

}  // namespace sigmadelta::cli
