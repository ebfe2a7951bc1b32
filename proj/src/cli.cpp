#include "legz/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <optional>
#include <ostream>
#include <sstream>

#include "legz/descent.hpp"
#include "legz/factorization.hpp"
#include "legz/normal_form.hpp"
#include "legz/solvability.hpp"

namespace legz::cli {

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitUsage = 2;
constexpr int kExitFault = 3;

// Signals a negative outcome (unsolvable, nothing found, check failed) that
// still produces regular output plus a one-line reason.
struct NegativeResult : Error {
    explicit NegativeResult(const std::string& what) : Error(what) {}
};

struct Options {
    std::string command;
    std::string a, b, c;
    std::string x, y, z;
    std::uint64_t search_bound = 200;
    int jobs = 1;
    bool json_output = false;
};

// Accumulates the report in both shapes; exactly one is printed at the end.
struct Report {
    std::vector<std::string> lines;
    json obj = {{"equation", nullptr}, {"normal_form", nullptr},
                {"solvable", nullptr}, {"solution", nullptr},
                {"trace", nullptr},    {"bound_holds", nullptr},
                {"reason", nullptr}};

    void line(const std::string& s) { lines.push_back(s); }

    void equation(const char* key, const LegendreEquation& eq) {
        lines.push_back(std::string(key) + ": " + to_string(eq));
        obj[key] = {{"a", to_string(eq.a)}, {"b", to_string(eq.b)}, {"c", to_string(eq.c)}};
    }

    void solution(const Solution& sol) {
        lines.push_back("solution: " + to_string(sol));
        obj["solution"] = {{"x", to_string(sol.x)},
                           {"y", to_string(sol.y)},
                           {"z", to_string(sol.z)}};
    }

    void solvable(bool yes) {
        lines.push_back(std::string("solvable: ") + (yes ? "yes" : "no"));
        obj["solvable"] = yes;
    }

    void bound_holds(bool yes) {
        lines.push_back(std::string("bound_holds: ") + (yes ? "yes" : "no"));
        obj["bound_holds"] = yes;
    }

    void trace_lines(const std::vector<std::string>& normalization,
                     const std::vector<std::string>& descent) {
        obj["trace"] = {{"normalization", normalization}, {"descent", descent}};
    }

    void reason(const std::string& why) {
        lines.push_back("error: " + why);
        obj["reason"] = why;
    }

    void print(std::ostream& out, bool as_json) const {
        if (as_json) {
            out << obj.dump() << "\n";
        } else {
            for (const auto& s : lines) out << s << "\n";
        }
    }
};

GaussianInt parse_coefficient(const std::string& flag, const std::string& text) {
    try {
        return parse_gaussian(text);
    } catch (const ParseError& e) {
        throw ParseError(flag + ": " + e.what());
    }
}

LegendreEquation equation_from(const Options& opt) {
    GaussianInt a = parse_coefficient("-a", opt.a);
    GaussianInt b = parse_coefficient("-b", opt.b);
    GaussianInt c = parse_coefficient("-c", opt.c);
    if (a.is_zero() || b.is_zero() || c.is_zero())
        throw ParseError("coefficients must be nonzero");
    return LegendreEquation(a, b, c);
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

std::string describe_condition(const char* name, const QrCondition& cond) {
    std::string out = std::string("condition[") + name + "]: target=" +
                      to_string(cond.target) + " modulus=" + to_string(cond.modulus) +
                      " residue=" + (cond.is_residue ? "yes" : "no") + " witness=";
    out += cond.witness ? to_string(*cond.witness) : "exhausted";
    return out;
}

// Transports the final normal-form solution back to the original equation and
// re-verifies the bound on the normal side.  Fills solution and bound_holds.
Solution report_final(Report& report, const LegendreEquation& original,
                      const LegendreEquation& normal, const NormalizationTrace& ntrace,
                      const Solution& normal_solution) {
    Solution sol = primitivize(pull_back(normal_solution, ntrace));
    if (!check_solution(original, sol).ok)
        throw InvariantFault("pulled-back solution does not solve the original equation");
    Solution pushed = primitivize(push_forward(sol, ntrace));
    if (!check_solution(normal, pushed).ok)
        throw InvariantFault("pushed-forward solution does not solve the normal form");
    if (!bound_test(pushed.z, normal.a, normal.b))
        throw InvariantFault("final solution escaped the bound");
    report.solution(sol);
    report.bound_holds(true);
    return sol;
}

void run_solve(const Options& opt, Report& report, bool with_steps) {
    LegendreEquation eq = equation_from(opt);
    report.equation("equation", eq);
    auto [normal, ntrace] = normalize(eq);
    report.equation("normal_form", normal);
    report.line("normalization: " +
                (ntrace.empty() ? "(none)" : join(to_lines(ntrace), "; ")));

    SolvabilityReport samet = samet_solvable(normal);
    report.solvable(samet.solvable);
    if (!samet.solvable) {
        report.trace_lines(to_lines(ntrace), {});
        throw NegativeResult("equation is not solvable");
    }

    std::optional<Solution> seed =
        brute_force_search(normal, Integer(opt.search_bound), opt.jobs);
    if (!seed) {
        report.trace_lines(to_lines(ntrace), {});
        throw NegativeResult("no seed solution found within bound " +
                             std::to_string(opt.search_bound));
    }

    DescentTrace dtrace = holzer_reduce(normal, *seed);
    report.trace_lines(to_lines(ntrace), to_lines(dtrace));
    if (with_steps) {
        for (const auto& line : to_lines(dtrace)) report.line(line);
        report.line("final: " + to_string(dtrace.final));
    } else {
        report.line("descent: " + std::to_string(dtrace.steps.size()) + " steps");
    }
    report_final(report, eq, normal, ntrace, dtrace.final);
}

void run_trace_with_seed(const Options& opt, Report& report, const Solution& given) {
    LegendreEquation eq = equation_from(opt);
    report.equation("equation", eq);
    if (!check_solution(eq, given).ok)
        throw NegativeResult("seed does not solve the equation");
    auto [normal, ntrace] = normalize(eq);
    report.equation("normal_form", normal);
    report.line("normalization: " +
                (ntrace.empty() ? "(none)" : join(to_lines(ntrace), "; ")));

    DescentTrace dtrace = holzer_reduce(normal, push_forward(given, ntrace));
    report.trace_lines(to_lines(ntrace), to_lines(dtrace));
    for (const auto& line : to_lines(dtrace)) report.line(line);
    report.line("final: " + to_string(dtrace.final));
    report_final(report, eq, normal, ntrace, dtrace.final);
}

void run_check(const Options& opt, Report& report) {
    LegendreEquation eq = equation_from(opt);
    report.equation("equation", eq);
    GaussianInt x = parse_coefficient("-x", opt.x);
    GaussianInt y = parse_coefficient("-y", opt.y);
    GaussianInt z = parse_coefficient("-z", opt.z);
    if (x.is_zero() && y.is_zero() && z.is_zero())
        throw NegativeResult("the zero triple is rejected as trivial");
    Solution sol(x, y, z);
    report.solution(sol);
    CheckResult result = check_solution(eq, sol);
    report.line("residual: " + to_string(result.residual));
    report.obj["residual"] = to_string(result.residual);
    if (!result.ok) throw NegativeResult("solution does not satisfy the equation");
}

void run_normalize(const Options& opt, Report& report) {
    LegendreEquation eq = equation_from(opt);
    report.equation("equation", eq);
    auto [normal, ntrace] = normalize(eq);
    report.equation("normal_form", normal);
    report.trace_lines(to_lines(ntrace), {});
    for (const auto& line : to_lines(ntrace)) report.line(line);
    if (ntrace.empty()) report.line("(already normal)");
}

void run_samet(const Options& opt, Report& report) {
    LegendreEquation eq = equation_from(opt);
    report.equation("equation", eq);
    auto [normal, ntrace] = normalize(eq);
    report.equation("normal_form", normal);
    SolvabilityReport samet = samet_solvable(normal);
    report.line(describe_condition("bc mod a", samet.bc_mod_a));
    report.line(describe_condition("ca mod b", samet.ca_mod_b));
    report.line(describe_condition("ab mod c", samet.ab_mod_c));
    json conds = json::array();
    for (const auto* cond : {&samet.bc_mod_a, &samet.ca_mod_b, &samet.ab_mod_c}) {
        conds.push_back({{"target", to_string(cond->target)},
                         {"modulus", to_string(cond->modulus)},
                         {"residue", cond->is_residue},
                         {"witness", cond->witness ? json(to_string(*cond->witness))
                                                   : json(nullptr)}});
    }
    report.obj["conditions"] = conds;
    report.solvable(samet.solvable);
    if (!samet.solvable) throw NegativeResult("equation is not solvable");
}

void run_search(const Options& opt, Report& report) {
    LegendreEquation eq = equation_from(opt);
    report.equation("equation", eq);
    std::optional<Solution> found =
        brute_force_search(eq, Integer(opt.search_bound), opt.jobs);
    if (!found)
        throw NegativeResult("no solution within bound " +
                             std::to_string(opt.search_bound));
    if (!check_solution(eq, *found).ok)
        throw InvariantFault("search returned a non-solution");
    report.solution(*found);
}

void apply_factor_ceiling_env() {
    const char* env = std::getenv("LEGZ_FACTOR_CEILING");
    if (!env) return;
    std::string text(env);
    std::uint64_t value = 0;
    try {
        std::size_t used = 0;
        value = std::stoull(text, &used);
        if (used != text.size() || value == 0) throw std::invalid_argument(text);
    } catch (const std::exception&) {
        throw ParseError("LEGZ_FACTOR_CEILING must be a positive integer, got \"" +
                         text + "\"");
    }
    set_factor_ceiling(value);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact solver for a*x^2 + b*y^2 + c*z^2 = 0 over the Gaussian "
                 "integers, with a certified small-z reduction"};
    app.require_subcommand(1);

    Options opt;
    auto add_common = [&](CLI::App* sub, bool with_search, bool with_xyz,
                          bool xyz_required) {
        sub->add_option("-a", opt.a, "coefficient a (e.g. \"i\", \"2+2i\")")->required();
        sub->add_option("-b", opt.b, "coefficient b")->required();
        sub->add_option("-c", opt.c, "coefficient c")->required();
        if (with_search) {
            sub->add_option("--search-bound", opt.search_bound,
                            "norm ceiling for the seed search")
                ->capture_default_str();
            sub->add_option("--jobs", opt.jobs, "parallel scan blocks")
                ->capture_default_str();
        }
        if (with_xyz) {
            auto* ox = sub->add_option("-x", opt.x, "solution component x");
            auto* oy = sub->add_option("-y", opt.y, "solution component y");
            auto* oz = sub->add_option("-z", opt.z, "solution component z");
            if (xyz_required) {
                ox->required();
                oy->required();
                oz->required();
            } else {
                ox->needs(oy);
                oy->needs(oz);
                oz->needs(ox);
            }
        }
        sub->add_flag("--json", opt.json_output, "emit one JSON object");
    };

    add_common(app.add_subcommand("solve", "normalize, decide, search and reduce"),
               true, false, false);
    add_common(app.add_subcommand("check", "verify a candidate solution exactly"),
               false, true, true);
    add_common(app.add_subcommand("normalize", "square-free, pairwise-coprime form"),
               false, false, false);
    add_common(app.add_subcommand("samet", "decide solvability of the normal form"),
               false, false, false);
    add_common(app.add_subcommand("search", "exhaustive bounded solution search"),
               true, false, false);
    add_common(app.add_subcommand("trace", "print every reduction step"),
               true, true, false);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    opt.command = app.get_subcommands().front()->get_name();

    Report report;
    int code = kExitOk;
    try {
        apply_factor_ceiling_env();
        if (opt.jobs < 1) throw ParseError("--jobs must be >= 1");
        if (opt.command == "solve") {
            run_solve(opt, report, /*with_steps=*/false);
        } else if (opt.command == "check") {
            run_check(opt, report);
        } else if (opt.command == "normalize") {
            run_normalize(opt, report);
        } else if (opt.command == "samet") {
            run_samet(opt, report);
        } else if (opt.command == "search") {
            run_search(opt, report);
        } else if (opt.command == "trace") {
            if (!opt.x.empty()) {
                Solution given(parse_coefficient("-x", opt.x),
                               parse_coefficient("-y", opt.y),
                               parse_coefficient("-z", opt.z));
                run_trace_with_seed(opt, report, given);
            } else {
                run_solve(opt, report, /*with_steps=*/true);
            }
        }
    } catch (const NegativeResult& e) {
        report.reason(e.what());
        code = kExitNegative;
    } catch (const InvariantFault& e) {
        report.reason(std::string("internal fault: ") + e.what());
        code = kExitFault;
    } catch (const ParseError& e) {
        report.reason(e.what());
        code = kExitUsage;
    } catch (const EffortExceeded& e) {
        report.reason(e.what());
        code = kExitUsage;
    } catch (const std::invalid_argument& e) {
        report.reason(e.what());
        code = kExitUsage;
    } catch (const std::exception& e) {
        report.reason(std::string("internal fault: ") + e.what());
        code = kExitFault;
    }
    report.print(out, opt.json_output);
    return code;
}

}  // namespace legz::cli
