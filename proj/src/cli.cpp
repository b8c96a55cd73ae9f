#include "genlambert/cli.hpp"

#include <fmt/format.h>

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <functional>
#include <json.hpp>
#include <optional>
#include <ostream>
#include <sstream>

#include "genlambert/apps.hpp"
#include "genlambert/classicw.hpp"
#include "genlambert/errors.hpp"
#include "genlambert/genw.hpp"
#include "genlambert/rlambert.hpp"
#include "genlambert/series.hpp"

namespace genlambert::cli {

namespace {

using Json = nlohmann::ordered_json;

/// Thrown when a subcommand ran but produced no value it was asked for.
struct NoSolution : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string format_number(double v) {
    if (std::isnan(v)) return "\"nan\"";
    if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
    return fmt::format("{:.17g}", v);
}

// nlohmann renders the shortest round-trip form; records use 17 digits.
void emit(const Json& j, std::string& out, int depth) {
    const std::string pad(2 * (depth + 1), ' ');
    const std::string close_pad(2 * depth, ' ');
    switch (j.type()) {
        case Json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (const auto& [key, value] : j.items()) {
                if (!first) out += ",\n";
                first = false;
                out += pad + Json(key).dump() + ": ";
                emit(value, out, depth + 1);
            }
            out += "\n" + close_pad + "}";
            return;
        }
        case Json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out += "[\n";
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i > 0) out += ",\n";
                out += pad;
                emit(j[i], out, depth + 1);
            }
            out += "\n" + close_pad + "]";
            return;
        }
        case Json::value_t::number_float:
            out += format_number(j.get<double>());
            return;
        default:
            out += j.dump();
    }
}

Json num(double v) {
    if (std::isfinite(v)) return v;
    return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

Json result_entry(double value, double residual, std::size_t branch_index) {
    return Json{{"value", num(value)}, {"residual", num(residual)}, {"branch_index", branch_index}};
}

Json named_entry(const std::string& name, double value, double residual) {
    return Json{{"name", name}, {"value", num(value)}, {"residual", num(residual)}, {"branch_index", 0}};
}

Json list_json(const std::vector<double>& xs) {
    Json arr = Json::array();
    for (double x : xs) arr.push_back(num(x));
    return arr;
}

Json solution_json(const SolutionSet& set, Json& diagnostics) {
    Json results = Json::array();
    for (const Root& r : set.roots) {
        Json e = result_entry(r.x, r.residual, r.branch_index);
        e["multiplicity"] = r.multiplicity;
        e["within_tol"] = r.within_tol;
        results.push_back(e);
    }
    diagnostics["domain"] = list_json({set.domain_lo, set.domain_hi});
    diagnostics["brackets_scanned"] = set.bracket_report.size();
    Json brackets = Json::array();
    for (const ScannedInterval& s : set.bracket_report) {
        brackets.push_back(Json{{"lo", num(s.lo)},
                                {"hi", num(s.hi)},
                                {"g_lo", num(s.g_lo)},
                                {"g_hi", num(s.g_hi)},
                                {"root_found", s.root_found},
                                {"unresolved", s.unresolved}});
    }
    diagnostics["bracket_report"] = brackets;
    return results;
}

struct Globals {
    bool plain = false;
    bool verbose = false;
    double tol = 1e-12;
    std::optional<double> xmin;
    std::optional<double> xmax;

    SolveOptions solve_options() const {
        SolveOptions o;
        o.tol = tol;
        o.xmin = xmin;
        o.xmax = xmax;
        return o;
    }
};

struct Record {
    Json query = Json::object();
    Json results = Json::array();
    Json diagnostics = Json::object();
    Json warnings = Json::array();
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Generalized Lambert W solvers, series and physical reductions", "genlambert-cli"};
    app.require_subcommand(1);
    app.fallthrough();  // subcommands inherit this, so global flags may follow them
    Globals g;
    app.add_flag("--plain", g.plain, "Print bare result values, one per line");
    app.add_flag("--verbose", g.verbose, "Diagnostics on standard error");
    app.add_option("--tol", g.tol, "Relative residual tolerance")->check(CLI::PositiveNumber);
    app.add_option("--xmin", g.xmin, "Lower end of the search domain");
    app.add_option("--xmax", g.xmax, "Upper end of the search domain");

    Record rec;
    std::function<void()> action;

    // classicw
    int cw_branch = 0;
    double cw_a = 0.0;
    auto* cw = app.add_subcommand("classicw", "Real Lambert W branches W_0 and W_-1");
    cw->add_option("--branch", cw_branch, "0 or -1")->required()->check(CLI::IsMember({0, -1}));
    cw->add_option("--a", cw_a, "Argument")->required();
    cw->callback([&] {
        action = [&] {
            const ClassicBranch b = cw_branch == 0 ? ClassicBranch::Principal : ClassicBranch::MinusOne;
            const double w = lambert_w(b, cw_a);
            rec.query = Json{{"branch", cw_branch}, {"a", num(cw_a)}};
            rec.results.push_back(result_entry(w, std::abs(w * std::exp(w) - cw_a), 0));
        };
    });

    // genw
    std::vector<double> gw_upper;
    std::vector<double> gw_lower;
    double gw_a = 0.0;
    std::optional<std::size_t> gw_branch;
    auto* gw = app.add_subcommand("genw", "All real solutions of e^x prod(x-t)/prod(x-s) = a");
    gw->add_option("--upper", gw_upper, "Upper parameters t_i, comma separated")->delimiter(',');
    gw->add_option("--lower", gw_lower, "Lower parameters s_j, comma separated")->delimiter(',');
    gw->add_option("--a", gw_a, "Right-hand side")->required();
    gw->add_option("--branch", gw_branch, "Return only the root with this ascending index");
    gw->callback([&] {
        action = [&] {
            const GenWParams p{gw_upper, gw_lower, gw_a};
            rec.query = Json{{"upper", list_json(gw_upper)}, {"lower", list_json(gw_lower)}, {"a", num(gw_a)}};
            rec.query["tol"] = num(g.tol);
            if (gw_branch) rec.query["branch"] = *gw_branch;
            const SolutionSet set = solve_all(p, g.solve_options());
            Json all = solution_json(set, rec.diagnostics);
            if (gw_branch) {
                if (*gw_branch >= all.size()) {
                    throw NoSolution("genw: no root with branch index " + std::to_string(*gw_branch) +
                                     " (" + std::to_string(all.size()) + " real root(s))");
                }
                rec.results.push_back(all[*gw_branch]);
            } else {
                rec.results = all;
            }
            for (const Root& r : set.roots) {
                if (!r.within_tol) rec.warnings.push_back(fmt::format("root {:.17g} misses the residual bound", r.x));
            }
            for (const ScannedInterval& s : set.bracket_report) {
                if (s.unresolved) {
                    rec.warnings.push_back(
                        fmt::format("root in ({:.17g}, {:.17g}) not resolvable in double precision", s.lo, s.hi));
                }
            }
        };
    });

    // rlambert
    double rl_r = 0.0;
    double rl_n = 0.0;
    std::size_t rl_branch = 0;
    std::string rl_asym;
    auto* rl = app.add_subcommand("rlambert", "r-Lambert function: x e^x + r x = n");
    rl->add_option("--r", rl_r, "Parameter r")->required();
    rl->add_option("--n", rl_n, "Right-hand side (the argument for --asymptotic)")->required();
    auto* rl_branch_opt = rl->add_option("--branch", rl_branch, "Branch index, 0 = leftmost monotone piece");
    rl->add_option("--asymptotic", rl_asym, "Evaluate the asymptotic form instead: plus | minus")
        ->check(CLI::IsMember({"plus", "minus"}))
        ->excludes(rl_branch_opt);
    rl->callback([&] {
        action = [&] {
            rec.query = Json{{"r", num(rl_r)}, {"n", num(rl_n)}};
            const BranchStructure bs = branch_structure(rl_r);
            rec.diagnostics["branch_count"] = bs.branch_count;
            rec.diagnostics["critical_points"] = list_json(bs.critical_points);
            if (!rl_asym.empty()) {
                rec.query["asymptotic"] = rl_asym;
                const auto dir = rl_asym == "plus" ? AsymptoticDirection::PlusInf : AsymptoticDirection::MinusInf;
                const double v = r_lambert_asymptotic(rl_r, rl_n, dir);
                rec.results.push_back(result_entry(v, std::abs(r_lambert_map(rl_r, v) - rl_n), 0));
                return;
            }
            if (rl_branch_opt->count() == 0) {
                throw CLI::RequiredError("--branch (the r-Lambert function has up to three real branches)");
            }
            rec.query["branch"] = rl_branch;
            rec.query["tol"] = num(g.tol);
            const auto x = r_lambert({rl_r, rl_n, rl_branch}, g.tol);
            if (!x) {
                throw NoSolution("rlambert: n lies outside the image of branch " + std::to_string(rl_branch));
            }
            rec.results.push_back(result_entry(*x, std::abs(r_lambert_map(rl_r, *x) - rl_n), rl_branch));
        };
    });

    // series
    std::string se_kind;
    double se_t = 0.0;
    double se_s = 0.0;
    double se_t1 = 0.0;
    double se_t2 = 0.0;
    double se_r = 0.0;
    double se_a = 0.0;
    int se_nmax = kDefaultSeriesTerms;
    auto* se = app.add_subcommand("series", "Taylor expansions about the origin");
    se->add_option("--kind", se_kind, "one-up-one-low | two-up | r-lambert")
        ->required()
        ->check(CLI::IsMember({"one-up-one-low", "two-up", "r-lambert"}));
    se->add_option("--t", se_t, "Upper parameter (one-up-one-low)");
    se->add_option("--s", se_s, "Lower parameter (one-up-one-low)");
    se->add_option("--t1", se_t1, "First upper parameter (two-up)");
    se->add_option("--t2", se_t2, "Second upper parameter (two-up)");
    se->add_option("--r", se_r, "Parameter r (r-lambert)");
    se->add_option("--a,--x", se_a, "Expansion variable")->required();
    se->add_option("--nmax", se_nmax, "Maximum number of terms")->check(CLI::PositiveNumber);
    se->callback([&] {
        action = [&] {
            SeriesResult res;
            if (se_kind == "one-up-one-low") {
                rec.query = Json{{"kind", se_kind}, {"t", num(se_t)}, {"s", num(se_s)}};
                res = series_one_up_one_low(se_t, se_s, se_a, se_nmax);
            } else if (se_kind == "two-up") {
                rec.query = Json{{"kind", se_kind}, {"t1", num(se_t1)}, {"t2", num(se_t2)}};
                res = series_two_up(se_t1, se_t2, se_a, se_nmax);
            } else {
                rec.query = Json{{"kind", se_kind}, {"r", num(se_r)}};
                res = series_r_lambert(se_r, se_a, se_nmax);
            }
            rec.query["a"] = num(se_a);
            rec.query["nmax"] = se_nmax;
            const SeriesExpansion& ex = res.expansion;
            rec.results.push_back(result_entry(res.value, ex.truncation_estimate, 0));
            rec.diagnostics["terms_used"] = ex.terms_used;
            rec.diagnostics["converged"] = ex.converged;
            rec.diagnostics["truncation_estimate"] = num(ex.truncation_estimate);
            if (ex.radius) rec.diagnostics["radius"] = num(*ex.radius);
            if (!ex.converged) rec.warnings.push_back("term limit reached before the relative-term stop");
            if (g.verbose) {
                Json coeffs = Json::array();
                for (const PolyValue& c : ex.coeffs) coeffs.push_back(Json{{"mantissa", num(c.value)}, {"exp2", c.exp2}});
                rec.diagnostics["coefficients"] = coeffs;
            }
        };
    });

    // langevin-inv
    double li_a = 0.0;
    bool li_direct = false;
    auto* li = app.add_subcommand("langevin-inv", "Inverse Langevin function");
    li->add_option("--a", li_a, "Argument in (-1, 1)")->required();
    li->add_flag("--direct", li_direct, "Use the monotone Newton solver instead of the W reduction");
    li->callback([&] {
        action = [&] {
            rec.query = Json{{"a", num(li_a)}, {"method", li_direct ? "direct" : "generalized-w"}};
            const double x = li_direct ? inverse_langevin_direct(li_a) : inverse_langevin(li_a);
            rec.results.push_back(result_entry(x, std::abs(langevin(x) - li_a), 0));
        };
    });

    // dispersion
    DispersionParams dp;
    auto* di = app.add_subcommand("dispersion", "Wavenumber from the water-wave dispersion relation");
    di->set_help_flag("--help", "Print this help message and exit");  // -h would shadow --h
    di->add_option("--omega", dp.omega, "Angular frequency")->required();
    di->add_option("--g", dp.g, "Gravitational acceleration")->capture_default_str();
    di->add_option("--h", dp.h, "Mean depth")->required();
    di->add_option("--rho1", dp.rho1, "Lower layer density (two-layer)");
    di->add_option("--rho2", dp.rho2, "Upper layer density; 0 = single layer");
    di->callback([&] {
        action = [&] {
            rec.query = Json{{"omega", num(dp.omega)}, {"g", num(dp.g)}, {"h", num(dp.h)},
                             {"rho1", num(dp.rho1)}, {"rho2", num(dp.rho2)}};
            const DispersionSolution s = invert_dispersion(dp);
            double rel = 0.0;
            if (dp.rho2 == 0.0) {
                rel = std::abs(s.x * std::tanh(s.x) - s.y) / s.y;
            } else {
                const double lhs = s.x * (dp.rho1 - dp.rho2) / (dp.rho1 / std::tanh(s.x) + dp.rho2);
                rel = std::abs(lhs - s.y) / s.y;
            }
            rec.results.push_back(named_entry("k", s.k, rel));
            rec.results.push_back(named_entry("x", s.x, rel));
            rec.results.push_back(named_entry("y", s.y, 0.0));
        };
    });

    // dde
    Dde2Params ddp;
    auto* dd = app.add_subcommand("dde", "Real characteristic roots of a second-order DDE");
    dd->add_option("--t1", ddp.t1, "Upper root t1")->required();
    dd->add_option("--t2", ddp.t2, "Upper root t2")->required();
    dd->add_option("--s1", ddp.s1, "Lower root s1")->required();
    dd->add_option("--b1", ddp.b1, "Feedback gain")->required();
    dd->add_option("--tau", ddp.tau, "Delay")->required();
    dd->callback([&] {
        action = [&] {
            rec.query = Json{{"t1", num(ddp.t1)}, {"t2", num(ddp.t2)}, {"s1", num(ddp.s1)},
                             {"b1", num(ddp.b1)}, {"tau", num(ddp.tau)}, {"tol", num(g.tol)}};
            const Dde2Roots roots = dde2_real_roots(ddp, g.solve_options());
            rec.results = solution_json(roots.roots, rec.diagnostics);
            rec.diagnostics["rightmost"] = roots.rightmost ? num(*roots.rightmost) : Json(nullptr);
            rec.diagnostics["real_spectrum_stable"] =
                roots.real_spectrum_stable ? Json(*roots.real_spectrum_stable) : Json(nullptr);
            rec.diagnostics["stability_scope"] = "real-spectrum only";
        };
    });

    // doublewell
    DoubleWellParams dw;
    auto* dwc = app.add_subcommand("doublewell", "Double-well Dirac delta levels d+-, E+-");
    dwc->add_option("--q", dw.q, "Well depth")->required();
    dwc->add_option("--R", dw.R, "Separation")->required();
    dwc->callback([&] {
        action = [&] {
            rec.query = Json{{"q", num(dw.q)}, {"R", num(dw.R)}};
            const DoubleWellLevels lv = double_well_levels(dw);
            const double res_p = std::abs(lv.d_plus - dw.q * (1.0 + std::exp(-lv.d_plus * dw.R)));
            const double res_m = std::abs(lv.d_minus - dw.q * (1.0 - std::exp(-lv.d_minus * dw.R)));
            rec.results.push_back(named_entry("d_plus", lv.d_plus, res_p));
            rec.results.push_back(named_entry("d_minus", lv.d_minus, res_m));
            rec.results.push_back(named_entry("e_plus", lv.e_plus, 0.0));
            rec.results.push_back(named_entry("e_minus", lv.e_minus, 0.0));
        };
    });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
        if (!action) throw CLI::CallForHelp();
        action();
    } catch (const CLI::CallForHelp& e) {
        std::ostringstream help;
        app.exit(e, help, err);
        out << help.str();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        app.exit(e, err, err);
        return kExitUsage;
    } catch (const NoSolution& e) {
        err << "genlambert-cli: " << e.what() << '\n';
        return kExitNoSolution;
    } catch (const Error& e) {
        err << "genlambert-cli: " << e.what() << '\n';
        return kExitDomain;
    }

    std::string text;
    if (g.plain) {
        for (const auto& r : rec.results) {
            const Json& v = r["value"];
            text += v.is_number() ? format_number(v.get<double>()) : v.get<std::string>();
            text += '\n';
        }
    } else {
        Json record = Json::object();
        record["command"] = app.get_subcommands().front()->get_name();
        record["query_echo"] = rec.query;
        record["results"] = rec.results;
        record["diagnostics"] = rec.diagnostics;
        record["warnings"] = rec.warnings;
        emit(record, text, 0);
        text += '\n';
    }
    if (g.verbose) {
        err << rec.diagnostics.dump(2) << '\n';
    }
    out << text;
    return kExitOk;
}

}  // namespace genlambert::cli
