#pragma once

#include <chrono>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sigmadelta/cli/report.hpp"
#include "sigmadelta/cli/system_file.hpp"
#include "sigmadelta/dependence.hpp"
#include "sigmadelta/galois.hpp"
#include "sigmadelta/sequence.hpp"

namespace sigmadelta::cli {

struct Invocation {
    Report report;
    Format format = Format::Text;
    std::optional<std::string> help;  // set for --help; printed verbatim
};

namespace detail {

/// A library error raised while reading an input file; reported with exit code 2.
class InputError : public Error {
public:
    InputError(std::string kind, const std::string& what) : Error(what), kind_(std::move(kind)) {}
    const char* kind() const noexcept override { return kind_.c_str(); }

private:
    std::string kind_;
};

inline SystemFile load(const std::string& path) {
    try {
        return load_system_file(path);
    } catch (const ParseError&) {
        throw;
    } catch (const ExprError&) {
        throw;
    } catch (const UsageError&) {
        throw;
    } catch (const Error& e) {
        throw InputError(e.kind(), path + ": " + e.what());
    }
}

template <class T>
json matrix_json(const Matrix<T>& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).to_string());
        rows.push_back(std::move(row));
    }
    return rows;
}

inline json group_json(const AlgSubgroup& H) {
    json out;
    out["tag"] = H.name();
    out["equations"] = H.equation_strings();
    json templates = json::array();
    for (const auto& t : H.templates) templates.push_back(t.to_string());
    out["templates"] = std::move(templates);
    return out;
}

inline Rational parse_rational_flag(const std::string& flag, const std::string& text) {
    try {
        return Rational::parse(text);
    } catch (const Error& e) {
        throw UsageError(flag + ": " + e.what());
    }
}

inline ShiftPoint parse_shift_point(const std::string& text) {
    if (text == "nonrational") return NonRational{};
    return parse_rational_flag("--c2", text);
}

inline Report check_integrability_command(const std::string& path) {
    const auto sys = load(path).system;
    auto r = check_integrability(sys);
    Report out = r ? Report::pass("check-integrability") : Report::fail("check-integrability");
    out.payload["system"] = path;
    if (!r) out.payload["residual"] = matrix_json(r.residual);
    return out;
}

inline Report specialize_command(const std::string& path, const std::optional<std::string>& t, const std::optional<std::string>& x) {
    if (t.has_value() == x.has_value()) throw UsageError("specialize needs exactly one of --t and --x");
    const auto sys = load(path).system;
    Report out = Report::pass("specialize");
    if (t) {
        Rational c1 = parse_rational_flag("--t", *t);
        auto d = specialize_t(sys, c1);
        out.payload["t"] = c1.to_string();
        out.payload["A"] = matrix_json(d.A);
    } else {
        Rational c2 = parse_rational_flag("--x", *x);
        auto d = specialize_x(sys, c2);
        out.payload["x"] = c2.to_string();
        out.payload["B"] = matrix_json(d.B);
    }
    return out;
}

template <class E>
Report verdict_report(const DependenceVerdict<E>& v) {
    Report out = v.kind == DependenceVerdict<E>::Kind::Inconclusive ? Report::fail("dependence", v.kind_name())
                                                                   : Report::pass("dependence", v.kind_name());
    switch (v.kind) {
        case DependenceVerdict<E>::Kind::Independent: {
            json thetas = json::array();
            for (const auto& w : v.thetas) thetas.push_back(w.to_string());
            out.payload["thetas"] = std::move(thetas);
            out.payload["det"] = v.det->to_string();
            break;
        }
        case DependenceVerdict<E>::Kind::Dependent: {
            json cs = json::array();
            for (const auto& c : v.constants) cs.push_back(c.to_string());
            out.payload["constants"] = std::move(cs);
            break;
        }
        default: out.payload["bound"] = v.bound;
    }
    return out;
}

/// Elements either from --elem flags or from a JSON file
/// {"ring": "ratfunc" | "tower" | "fixture", "elements": [...],
///  "generators": [{"name": "y", "sigma": "2"}, ...], "theta_bound": L}.
inline Report dependence_command(const std::optional<std::string>& path, std::vector<std::string> elems, std::string ring,
                                 std::optional<unsigned> bound) {
    std::vector<std::pair<std::string, std::string>> generators;
    if (path) {
        std::ifstream in(*path);
        if (!in) throw UsageError("cannot open dependence file '" + *path + "'");
        std::stringstream buffer;
        buffer << in.rdbuf();
        std::string text = buffer.str();
        json doc;
        try {
            doc = json::parse(text);
        } catch (const json::parse_error& e) {
            auto [line, column] = detail::line_column(text, e.byte == 0 ? 0 : e.byte - 1);
            throw ParseError(line, column, e.what());
        }
        ring = doc.value("ring", ring);
        for (const auto& e : member(doc, "elements")) elems.push_back(expression_at(e, "elements"));
        if (doc.contains("generators"))
            for (const auto& g : doc["generators"]) generators.emplace_back(g.at("name").get<std::string>(), g.at("sigma").get<std::string>());
        if (!bound && doc.contains("theta_bound")) bound = doc["theta_bound"].get<unsigned>();
    }
    if (elems.empty()) throw UsageError("dependence needs at least one element (--elem or a file)");

    auto cell = [](std::size_t i) { return "elements[" + std::to_string(i) + "]"; };
    if (ring == "ratfunc") {
        std::vector<RatFunc> es;
        for (std::size_t i = 0; i < elems.size(); ++i) {
            try {
                es.push_back(parse_ratfunc(elems[i]));
            } catch (const ExprError& e) {
                throw ExprError(cell(i), e.what());
            }
        }
        return verdict_report(decide_dependence(es, RingMode::SimpleRing, bound));
    }
    if (ring == "tower") {
        std::vector<TowerElem> es;
        for (std::size_t i = 0; i < elems.size(); ++i) {
            try {
                es.push_back(parse_expression<TowerElem>(elems[i], [&](const std::string& name) -> TowerElem {
                    if (name == "x" || name == "t") return TowerElem(RatFunc::variable(name));
                    if (name == "s") return TowerElem::s();
                    if (name == "eta") return TowerElem::eta();
                    throw ExprError("", "unknown variable '" + name + "' (tower elements use x, t, s, eta)");
                }));
            } catch (const ExprError& e) {
                throw ExprError(cell(i), e.what());
            }
        }
        return verdict_report(decide_dependence(es, RingMode::SimpleRing, bound));
    }
    if (ring == "fixture") {
        std::vector<std::string> names;
        std::vector<Rational> factors;
        std::map<std::string, std::string> spelled;
        for (const auto& [name, sigma] : generators) {
            names.push_back(name);
            factors.push_back(Rational::parse(sigma));
            spelled[name] = name;
        }
        auto fixture = FixtureRing::make(names, factors);
        std::vector<FixtureElem> es;
        for (std::size_t i = 0; i < elems.size(); ++i) {
            RatFunc f;
            try {
                f = parse_ratfunc(elems[i], spelled);
            } catch (const ExprError& e) {
                throw ExprError(cell(i), e.what());
            }
            if (!(f.denominator() == Poly(1))) throw ExprError(cell(i), "fixture elements are polynomials");
            es.emplace_back(f.numerator(), fixture);
        }
        return verdict_report(decide_dependence(es, RingMode::NonSimpleFixture, bound));
    }
    throw UsageError("unknown ring '" + ring + "' (ratfunc, tower or fixture)");
}

inline Report sequence_command(const std::string& path, const std::string& start, std::size_t window) {
    const SystemFile file = load(path);
    const Rational c = parse_rational_flag("--x", start);
    Matrix<QuadRatFunc> U = file.fundamental_u ? *file.fundamental_u : Matrix<QuadRatFunc>::identity(file.system.n);
    auto seq = fundamental_sequence(file.system.A, c, U, window);
    auto sigma = verify_sigma_solution(seq, file.system.A, c, window);
    auto delta = verify_delta_solution(seq, file.system.B, c, window);
    Report out = (sigma && delta) ? Report::pass("sequence") : Report::fail("sequence");
    out.payload["x"] = c.to_string();
    out.payload["window"] = window;
    out.payload["sigma"] = sigma ? "pass" : "fail at s = " + std::to_string(sigma.index);
    out.payload["delta"] = delta ? "pass" : "fail at s = " + std::to_string(delta.index);
    if (!delta) out.payload["delta_residual"] = matrix_json(delta.residual);
    out.payload["last"] = matrix_json(seq.back());
    return out;
}

inline Report group_report(const std::string& command, const AlgSubgroup& H) {
    Report out = Report::pass(command);
    out.payload["group"] = group_json(H);
    return out;
}

inline Report product_report(const Rational& c1, const ShiftPoint& c2) {
    AlgSubgroup H = stab_sigma(c1), Hp = stab_delta(c2);
    auto r = check_product_equal(H, Hp);
    Report out = r ? Report::pass("galois product") : Report::fail("galois product");
    out.payload["stab_sigma"] = H.name();
    out.payload["stab_delta"] = Hp.name();
    json fs = json::array();
    for (const auto& [t, f] : r.factorizations) {
        json item;
        item["g"] = matrix_json(template_matrix(t));
        item["h"] = matrix_json(f.h);
        item["h_prime"] = matrix_json(f.hp);
        fs.push_back(std::move(item));
    }
    out.payload["factorizations"] = std::move(fs);
    if (r.witness) {
        out.payload["witness"] = matrix_json(*r.witness);
        out.payload["certificate"] = r.certificate;
    }
    return out;
}

inline Report sigma_stability_report(const Rational& c1) {
    auto r = verify_sigma_stability(c1);
    Report out = r ? Report::pass("galois sigma-stability") : Report::fail("galois sigma-stability");
    out.payload["c1"] = c1.to_string();
    out.payload["generator"] = r.generator->to_string();
    out.payload["image"] = r.image->to_string();
    out.payload["multiplier"] = r.multiplier->to_string();
    out.payload["proper_ideal"] = r.proper_ideal;
    return out;
}

inline Report pv_report() {
    auto r = verify_pv_relations();
    Report out = r ? Report::pass("galois pv-relations") : Report::fail("galois pv-relations");
    out.payload["W"] = matrix_json(chebyshev::fundamental_matrix());
    if (!r) {
        out.payload["which"] = r.which;
        out.payload["residual"] = matrix_json(r.residual);
    }
    return out;
}

/// integrability -> solutions -> PV relations -> fundamental sequence ->
/// stabilizers -> sigma-stability -> product decomposition.
inline Report demo_chebyshev_command(const std::optional<std::string>& path) {
    const SigmaDeltaSystem sys = path ? load(*path).system : chebyshev_system();
    json steps = json::array();
    bool all = true;
    auto step = [&](const std::string& name, const std::function<bool()>& run) {
        bool ok = false;
        std::string detail;
        try {
            ok = run();
        } catch (const Error& e) {
            detail = std::string(e.kind()) + ": " + e.what();
        }
        all = all && ok;
        json item;
        item["step"] = name;
        item["verdict"] = ok ? "pass" : "fail";
        if (!detail.empty()) item["error"] = detail;
        steps.push_back(std::move(item));
    };
    step("integrability", [&] { return static_cast<bool>(check_integrability(sys)); });
    step("chebyshev-solutions m <= 10", [&] {
        for (const auto& row : chebyshev_witness(10))
            if (!row.formula_agrees() || !row.residuals_zero()) return false;
        return true;
    });
    step("pv-relations", [&] { return static_cast<bool>(verify_pv_relations()); });
    step("fundamental-sequence c = 0, N = 10", [&] {
        auto U = chebyshev::eigenbasis();
        auto d = chebyshev::eigenvalues();
        auto seq = fundamental_sequence(sys.A, Rational(0), U, 10);
        Matrix<QuadRatFunc> ud = U;
        for (std::size_t s = 0; s <= 10; ++s, ud = ud * d)
            if (!(seq[s] == ud)) return false;
        return verify_sigma_solution(seq, sys.A, Rational(0), 10) && verify_delta_solution(seq, sys.B, Rational(0), 10);
    });
    step("shift-conjugation c = 0, s <= 5", [&] { return static_cast<bool>(shift_conjugation_check(sys, Rational(0), 5)); });
    step("stab-sigma c1 = 2 is DiagTorus", [&] { return stab_sigma(Rational(2)).tag == CatalogTag::DiagTorus; });
    step("stab-delta c2 = 1/3 is DihedralMuQ(3)", [&] { return stab_delta(Rational(1) / Rational(3)).name() == "DihedralMuQ(3)"; });
    step("sigma-stability c1 = 2", [&] { return static_cast<bool>(verify_sigma_stability(Rational(2))); });
    step("product c1 = 2, c2 = 1/3", [&] {
        return static_cast<bool>(check_product_equal(stab_sigma(Rational(2)), stab_delta(Rational(1) / Rational(3))));
    });
    Report out = all ? Report::pass("demo-chebyshev") : Report::fail("demo-chebyshev");
    out.payload["steps"] = std::move(steps);
    return out;
}

}  // namespace detail

/// Parses argv (without the program name), runs the subcommand and returns
/// the report. Library errors become exit code 1, usage and parse errors 2.
inline Invocation invoke(const std::vector<std::string>& args) {
    CLI::App app{"Exact tools for linear difference-differential systems", "sigmadelta"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string format = "text";
    bool timing = false;
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
    app.add_flag("--timing", timing, "Report wall-clock time");

    std::string file, start = "0", ring = "ratfunc";
    std::optional<std::string> t_flag, x_flag, dep_file, demo_file;
    std::optional<unsigned> theta_bound;
    std::vector<std::string> elems;
    std::size_t window = 10;
    std::string c1 = "2", c2 = "1/3";

    auto* integrability = app.add_subcommand("check-integrability", "Check sigma(B) A = delta(A) + A B");
    integrability->add_option("file", file, "System file")->required();

    auto* specialize = app.add_subcommand("specialize", "Substitute a constant for t or x");
    specialize->add_option("file", file, "System file")->required();
    specialize->add_option("--t", t_flag, "Value p/q for the differential variable");
    specialize->add_option("--x", x_flag, "Value p/q for the shift variable");

    auto* dependence = app.add_subcommand("dependence", "Decide linear dependence over the constants");
    dependence->add_option("file", dep_file, "Dependence file");
    dependence->add_option("--elem", elems, "Element expression (repeatable)");
    dependence->add_option("--ring", ring, "ratfunc, tower or fixture");
    dependence->add_option("--theta-bound", theta_bound, "Largest theta-word length searched");

    auto* sequence = app.add_subcommand("sequence", "Fundamental sequence W_s U and its checks");
    sequence->add_option("file", file, "System file")->required();
    sequence->add_option("--x", start, "Start point c");
    sequence->add_option("--window", window, "Number of steps N");

    auto* galois = app.add_subcommand("galois", "Galois groups of the Chebyshev system");
    galois->require_subcommand(1);
    auto* g_full = galois->add_subcommand("full", "The group G");
    auto* g_sigma = galois->add_subcommand("stab-sigma", "Galois group at t = c1");
    g_sigma->add_option("--c1", c1, "p/q")->required();
    auto* g_delta = galois->add_subcommand("stab-delta", "Galois group at x = c2");
    g_delta->add_option("--c2", c2, "p/q or nonrational")->required();
    auto* g_product = galois->add_subcommand("product", "Check G = stab_sigma(c1) stab_delta(c2)");
    g_product->add_option("--c1", c1, "p/q")->required();
    g_product->add_option("--c2", c2, "p/q or nonrational")->required();
    auto* g_pv = galois->add_subcommand("pv-relations", "Relations satisfied by the tower fundamental matrix");
    auto* g_stability = galois->add_subcommand("sigma-stability", "sigma-stability of (u - alpha) at t = c1");
    g_stability->add_option("--c1", c1, "p/q")->required();

    auto* demo = app.add_subcommand("demo-chebyshev", "Run the whole Chebyshev pipeline");
    demo->add_option("file", demo_file, "System file (default: built-in)");

    Invocation inv;
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        inv.help = (app.get_subcommands().empty() ? &app : app.get_subcommands().front())->help();
        inv.report = Report::pass("help", "help");
        return inv;
    } catch (const CLI::ParseError& e) {
        inv.report = Report::error("usage", "UsageError", std::string(e.what()) + "\n" + app.help(), 2);
        return inv;
    }
    inv.format = format == "json" ? Format::Json : Format::Text;

    const std::string name = app.get_subcommands().front()->get_name();
    const auto begin = std::chrono::steady_clock::now();
    try {
        if (*integrability) {
            inv.report = detail::check_integrability_command(file);
        } else if (*specialize) {
            inv.report = detail::specialize_command(file, t_flag, x_flag);
        } else if (*dependence) {
            inv.report = detail::dependence_command(dep_file, elems, ring, theta_bound);
        } else if (*sequence) {
            inv.report = detail::sequence_command(file, start, window);
        } else if (*g_full) {
            inv.report = detail::group_report("galois full", chebyshev_full_group());
        } else if (*g_sigma) {
            inv.report = detail::group_report("galois stab-sigma", stab_sigma(detail::parse_rational_flag("--c1", c1)));
        } else if (*g_delta) {
            inv.report = detail::group_report("galois stab-delta", stab_delta(detail::parse_shift_point(c2)));
        } else if (*g_product) {
            inv.report = detail::product_report(detail::parse_rational_flag("--c1", c1), detail::parse_shift_point(c2));
        } else if (*g_pv) {
            inv.report = detail::pv_report();
        } else if (*g_stability) {
            inv.report = detail::sigma_stability_report(detail::parse_rational_flag("--c1", c1));
        } else if (*demo) {
            inv.report = detail::demo_chebyshev_command(demo_file);
        }
    } catch (const UsageError& e) {
        inv.report = Report::error(name, e.kind(), std::string(e.what()) + "\n" + app.help(), 2);
    } catch (const ParseError& e) {
        inv.report = Report::error(name, e.kind(), e.what(), 2);
    } catch (const ExprError& e) {
        inv.report = Report::error(name, e.kind(), e.what(), 2);
    } catch (const detail::InputError& e) {
        inv.report = Report::error(name, e.kind(), e.what(), 2);
    } catch (const Error& e) {
        inv.report = Report::error(name, e.kind(), e.what(), 1);
    } catch (const json::exception& e) {
        inv.report = Report::error(name, "ParseError", e.what(), 2);
    }
    if (timing) inv.report.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - begin).count();
    return inv;
}

inline Report run_subcommand(const std::vector<std::string>& args) { return invoke(args).report; }

}  // namespace sigmadelta::cli
