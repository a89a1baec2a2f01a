#pragma once

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "sigmadelta/expr.hpp"
#include "sigmadelta/linear_systems.hpp"
#include "sigmadelta/tower.hpp"

namespace sigmadelta::cli {

using json = nlohmann::ordered_json;

/// Contents of a system file:
///
///   {"n": 2, "A": [[...]], "B": [[...]], "h": "...",
///    "shift_var": "x", "diff_var": "t",            (optional)
///    "sqrt_disc": "t^2 - 1",                       (optional, d with s^2 = d)
///    "fundamental_U": [["t + s", "t - s"], ...]}   (optional, needs sqrt_disc)
///
/// Every expression uses the shared grammar with explicit '*'.
struct SystemFile {
    SigmaDeltaSystem system;
    std::string shift_var = "x";
    std::string diff_var = "t";
    std::optional<RatFunc> sqrt_disc;
    std::optional<Matrix<QuadRatFunc>> fundamental_u;
};

namespace detail {

inline std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

inline std::string cell_name(const std::string& matrix, std::size_t i, std::size_t j) {
    return matrix + "[" + std::to_string(i) + "][" + std::to_string(j) + "]";
}

inline const json& member(const json& doc, const char* key) {
    if (!doc.contains(key)) throw ShapeError(std::string("system file lacks \"") + key + "\"");
    return doc.at(key);
}

inline std::string expression_at(const json& v, const std::string& cell) {
    if (!v.is_string()) throw ExprError(cell, "expected an expression string");
    return v.get<std::string>();
}

template <class Parse>
auto parse_matrix(const json& doc, const char* key, std::size_t n, Parse parse) {
    const json& rows = member(doc, key);
    using T = decltype(parse(std::string(), std::string()));
    if (!rows.is_array() || rows.size() != n) throw ShapeError(std::string("\"") + key + "\" must have " + std::to_string(n) + " rows");
    Matrix<T> out(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!rows[i].is_array() || rows[i].size() != n)
            throw ShapeError(std::string("\"") + key + "\" row " + std::to_string(i) + " must have " + std::to_string(n) + " entries");
        for (std::size_t j = 0; j < n; ++j) {
            std::string cell = cell_name(key, i, j);
            out(i, j) = parse(expression_at(rows[i][j], cell), cell);
        }
    }
    return out;
}

}  // namespace detail

/// Parses the JSON text of a system file.
inline SystemFile parse_system_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        auto [line, column] = detail::line_column(text, e.byte == 0 ? 0 : e.byte - 1);
        throw ParseError(line, column, e.what());
    }
    if (!doc.is_object()) throw ParseError(1, 1, "top level must be an object");

    SystemFile out;
    if (doc.contains("shift_var")) out.shift_var = doc["shift_var"].get<std::string>();
    if (doc.contains("diff_var")) out.diff_var = doc["diff_var"].get<std::string>();
    if (out.shift_var == out.diff_var) throw ShapeError("shift_var and diff_var must differ");
    const std::map<std::string, std::string> names = {{out.shift_var, kShiftVar}, {out.diff_var, kDiffVar}};

    auto ratfunc = [&](const std::string& text, const std::string& cell) {
        try {
            return parse_ratfunc(text, names);
        } catch (const ExprError& e) {
            throw ExprError(cell, e.what());
        }
    };

    const json& nj = detail::member(doc, "n");
    if (!nj.is_number_integer() || nj.get<long>() < 1) throw ShapeError("\"n\" must be a positive integer");
    const std::size_t n = nj.get<std::size_t>();
    RatMatrix a = detail::parse_matrix(doc, "A", n, ratfunc);
    RatMatrix b = detail::parse_matrix(doc, "B", n, ratfunc);
    RatFunc h = ratfunc(detail::expression_at(detail::member(doc, "h"), "h"), "h");
    if (!(h.denominator() == Poly(1))) throw ExprError("h", "the denominator witness must be a polynomial");
    out.system = SigmaDeltaSystem::make(std::move(a), std::move(b), h.numerator());

    if (doc.contains("sqrt_disc")) {
        out.sqrt_disc = ratfunc(detail::expression_at(doc["sqrt_disc"], "sqrt_disc"), "sqrt_disc");
        if (out.sqrt_disc->numerator().contains(kShiftVar) || out.sqrt_disc->denominator().contains(kShiftVar))
            throw ExprError("sqrt_disc", "must not depend on the shift variable");
    }
    if (doc.contains("fundamental_U")) {
        if (!out.sqrt_disc) throw ShapeError("\"fundamental_U\" needs \"sqrt_disc\"");
        const RatFunc d = *out.sqrt_disc;
        auto quad = [&](const std::string& text, const std::string& cell) {
            try {
                return parse_expression<QuadRatFunc>(text, [&](const std::string& name) -> QuadRatFunc {
                    if (name == "s") return QuadRatFunc::root(d);
                    if (name == out.diff_var) return QuadRatFunc(RatFunc::variable(kDiffVar));
                    throw ExprError("", "unknown variable '" + name + "' (U may use " + out.diff_var + " and s)");
                });
            } catch (const ExprError& e) {
                throw ExprError(cell, e.what());
            }
        };
        out.fundamental_u = detail::parse_matrix(doc, "fundamental_U", n, quad);
    }
    return out;
}

inline SystemFile load_system_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open system file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_system_text(buffer.str());
}

inline SigmaDeltaSystem parse_system_file(const std::string& path) { return load_system_file(path).system; }

/// JSON text that parse_system_text turns back into the same system.
inline std::string serialize_system(const SigmaDeltaSystem& s) {
    auto matrix = [](const RatMatrix& m) {
        json rows = json::array();
        for (std::size_t i = 0; i < m.rows(); ++i) {
            json row = json::array();
            for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).to_string());
            rows.push_back(std::move(row));
        }
        return rows;
    };
    json doc;
    doc["n"] = s.n;
    doc["A"] = matrix(s.A);
    doc["B"] = matrix(s.B);
    doc["h"] = s.h.to_string();
    doc["shift_var"] = kShiftVar;
    doc["diff_var"] = kDiffVar;
    return doc.dump(2) + "\n";
}

}  // namespace sigmadelta::cli
