#include "genlambert/genw.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "genlambert/classicw.hpp"
#include "genlambert/errors.hpp"
#include "genlambert/rootfind.hpp"

namespace genlambert {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int sgn(double v) { return (v > 0.0) - (v < 0.0); }

/// Distinct values with multiplicities.
std::map<double, int> tally(const std::vector<double>& xs) {
    std::map<double, int> out;
    for (double x : xs) ++out[x];
    return out;
}

void validate(const GenWParams& p) {
    auto finite = [](double v) { return std::isfinite(v); };
    if (!std::all_of(p.upper.begin(), p.upper.end(), finite) ||
        !std::all_of(p.lower.begin(), p.lower.end(), finite) || !std::isfinite(p.a)) {
        throw DomainError("generalized W: parameters must be finite");
    }
    for (double t : p.upper) {
        if (std::find(p.lower.begin(), p.lower.end(), t) != p.lower.end()) {
            throw DegenerateInput("generalized W: upper and lower parameters share the value " +
                                  std::to_string(t));
        }
    }
    if (p.upper.empty() && p.lower.empty() && p.a <= 0.0) {
        throw DomainError("generalized W: e^x = a has no real solution for a <= 0");
    }
}

/// 1 + sum 1/(x - t) - sum 1/(x - s), i.e. F'/F.
double log_derivative(const GenWParams& p, double x) {
    double acc = 1.0;
    for (double t : p.upper) acc += 1.0 / (x - t);
    for (double s : p.lower) acc -= 1.0 / (x - s);
    return acc;
}

/// Critical points of F away from its zeros: real roots of
/// prod(x - z_k) + sum_k w_k prod_{l != k}(x - z_l) over distinct z.
std::vector<double> critical_points(const std::map<double, int>& up, const std::map<double, int>& low) {
    std::vector<double> z;
    std::vector<double> w;
    for (auto [v, mult] : up) {
        z.push_back(v);
        w.push_back(mult);
    }
    for (auto [v, mult] : low) {
        z.push_back(v);
        w.push_back(-mult);
    }
    if (z.empty()) return {};
    std::vector<double> poly = detail::poly_from_roots(z);
    for (std::size_t k = 0; k < z.size(); ++k) {
        std::vector<double> others;
        for (std::size_t l = 0; l < z.size(); ++l) {
            if (l != k) others.push_back(z[l]);
        }
        const std::vector<double> term = detail::poly_from_roots(others);
        for (std::size_t i = 0; i < term.size(); ++i) poly[i] += w[k] * term[i];
    }
    std::vector<double> roots = detail::real_polynomial_roots(poly);
    std::erase_if(roots, [&](double r) {
        return !std::isfinite(r) || std::any_of(z.begin(), z.end(), [r](double v) { return v == r; });
    });
    return roots;
}

enum class CutKind { Pole, Critical, MultiZero, Bound, NegInf, PosInf };

struct Cut {
    double x;
    CutKind kind;
};

/// Sign of F - a at a segment end and, for limits, nothing to evaluate.
struct EndState {
    Cut cut;
    double g;     // finite value, or +-inf / limit value for poles and tails
    bool finite;  // evaluated at a real point
};

class Solver {
public:
    Solver(const GenWParams& p, const SolveOptions& opts) : p_(p), opts_(opts) {
        up_ = tally(p.upper);
        low_ = tally(p.lower);
        abs_tol_ = opts.tol * (1.0 + std::abs(p.a));
        double lo = 0.0;
        double hi = 0.0;
        bool any = false;
        for (double v : p.upper) update_span(v, lo, hi, any);
        for (double v : p.lower) update_span(v, lo, hi, any);
        if (!any) lo = hi = std::log(std::abs(p.a) > 0 ? std::abs(p.a) : 1.0);
        out_.domain_lo = lo - 50.0;
        out_.domain_hi = hi + 50.0;
        if (opts.xmin) out_.domain_lo = *opts.xmin;
        if (opts.xmax) out_.domain_hi = *opts.xmax;
        out_.tol = opts.tol;
    }

    SolutionSet run() {
        if (p_.a == 0.0) return zeros_only();
        if (p_.upper.empty() && p_.lower.empty()) {
            add_root(std::log(p_.a), 1);
            return finish();
        }

        std::vector<Cut> cuts;
        for (auto [v, mult] : low_) cuts.push_back({v, CutKind::Pole});
        for (double c : critical_points(up_, low_)) cuts.push_back({c, CutKind::Critical});
        for (auto [v, mult] : up_) {
            if (mult >= 2) cuts.push_back({v, CutKind::MultiZero});
        }
        std::sort(cuts.begin(), cuts.end(), [](const Cut& l, const Cut& r) { return l.x < r.x; });

        Cut left{-kInf, CutKind::NegInf};
        Cut right{kInf, CutKind::PosInf};
        if (opts_.xmin) left = {*opts_.xmin, CutKind::Bound};
        if (opts_.xmax) right = {*opts_.xmax, CutKind::Bound};
        if (!(left.x < right.x)) throw DomainError("generalized W: empty search domain");

        std::vector<Cut> ends{left};
        for (const Cut& c : cuts) {
            if (c.x > left.x && c.x < right.x) ends.push_back(c);
        }
        ends.push_back(right);

        // tangencies at critical points and bound hits
        for (const Cut& c : ends) {
            if (c.kind != CutKind::Critical && c.kind != CutKind::Bound) continue;
            const double g = evaluate(p_, c.x) - p_.a;
            note_x(c.x);
            if (std::abs(g) <= abs_tol_) {
                add_root(c.x, c.kind == CutKind::Critical ? 2 : 1);
                touched_.push_back(c.x);
            }
        }

        for (std::size_t i = 0; i + 1 < ends.size(); ++i) scan_segment(ends[i], ends[i + 1]);
        return finish();
    }

private:
    static void update_span(double v, double& lo, double& hi, bool& any) {
        if (!any) {
            lo = hi = v;
            any = true;
        } else {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }

    void note_x(double x) {
        if (!std::isfinite(x)) return;
        if (!opts_.xmin) out_.domain_lo = std::min(out_.domain_lo, x);
        if (!opts_.xmax) out_.domain_hi = std::max(out_.domain_hi, x);
    }

    double g_at(double x) {
        note_x(x);
        return evaluate(p_, x) - p_.a;
    }

    /// Sign of F near a pole, approached from the given side (+1 right, -1 left).
    int pole_sign(double s, int side) const {
        // e^s > 0 never affects the sign (and may underflow), so only factor signs count
        int sign = 1;
        for (double t : p_.upper) sign *= sgn(s - t);
        int order = 0;
        for (double v : p_.lower) {
            if (v == s) {
                ++order;
            } else {
                sign *= sgn(s - v);
            }
        }
        if (side < 0 && order % 2 == 1) sign = -sign;
        return sign;
    }

    EndState end_state(const Cut& c, int side) {
        switch (c.kind) {
            case CutKind::Pole:
                return {c, pole_sign(c.x, side) * kInf, false};
            case CutKind::NegInf: {
                // F -> 0, so F - a -> -a
                return {c, -p_.a, false};
            }
            case CutKind::PosInf:
                return {c, kInf, false};
            default:
                return {c, evaluate(p_, c.x) - p_.a, true};
        }
    }

    bool touched(double x) const {
        return std::find(touched_.begin(), touched_.end(), x) != touched_.end();
    }

    /// Walk from a finite anchor toward an end whose g is only known as a limit,
    /// until F - a takes the limit's sign. The anchor moves along behind the walk,
    /// so [anchor, returned point] keeps the sign change.
    std::optional<std::pair<double, double>> approach(const EndState& end, double& anchor, double& g_anchor) {
        const int want = sgn(end.g);
        if (end.cut.kind == CutKind::Pole) {
            const double s = end.cut.x;
            double delta = std::abs(s - anchor) * 0.5;
            const double dir = anchor < s ? -1.0 : 1.0;  // from the pole back toward the anchor
            for (int iter = 0; iter < 2000; ++iter) {
                const double x = s + dir * delta;
                if (x == s) break;
                const double g = g_at(x);
                if (sgn(g) == want) return std::pair{x, g};
                anchor = x;
                g_anchor = g;
                delta *= 0.125;
            }
            return std::nullopt;
        }
        const double dir = end.cut.kind == CutKind::NegInf ? -1.0 : 1.0;
        double step = std::max(1.0, std::abs(anchor));
        for (int iter = 0; iter < 64; ++iter) {
            const double x = anchor + dir * step;
            const double g = g_at(x);
            if (sgn(g) == want || (want == 0 && g == 0.0)) return std::pair{x, g};
            anchor = x;
            g_anchor = g;
            step *= 2.0;
        }
        return std::nullopt;
    }

    void scan_segment(const Cut& lcut, const Cut& rcut) {
        EndState le = end_state(lcut, +1);
        EndState re = end_state(rcut, -1);
        ScannedInterval rep{lcut.x, rcut.x, le.g, re.g, false, false};

        if ((le.finite && touched(lcut.x)) || (re.finite && touched(rcut.x)) ||
            sgn(le.g) == sgn(re.g) || sgn(le.g) == 0 || sgn(re.g) == 0) {
            out_.bracket_report.push_back(rep);
            return;
        }

        double lo;
        double glo;
        double hi;
        double ghi;
        bool resolved = true;
        if (le.finite && re.finite) {
            lo = le.cut.x;
            glo = le.g;
            hi = re.cut.x;
            ghi = re.g;
        } else if (le.finite) {
            lo = le.cut.x;
            glo = le.g;
            auto far = approach(re, lo, glo);
            resolved = far.has_value();
            if (far) std::tie(hi, ghi) = *far;
        } else if (re.finite) {
            hi = re.cut.x;
            ghi = re.g;
            auto far = approach(le, hi, ghi);
            resolved = far.has_value();
            if (far) std::tie(lo, glo) = *far;
        } else {
            // neither end can be evaluated: pick an interior anchor first
            double x0;
            if (std::isfinite(lcut.x) && std::isfinite(rcut.x)) {
                x0 = 0.5 * (lcut.x + rcut.x);
            } else if (std::isfinite(lcut.x)) {
                x0 = lcut.x + 1.0;
            } else if (std::isfinite(rcut.x)) {
                x0 = rcut.x - 1.0;
            } else {
                double sum = 0.0;
                for (double v : p_.upper) sum += v;
                for (double v : p_.lower) sum += v;
                x0 = sum / static_cast<double>(p_.upper.size() + p_.lower.size());
            }
            double g0 = g_at(x0);
            if (g0 == 0.0) {
                add_root(x0, 1);
                rep.root_found = true;
                out_.bracket_report.push_back(rep);
                return;
            }
            if (sgn(g0) != sgn(le.g)) {
                hi = x0;
                ghi = g0;
                auto far = approach(le, hi, ghi);
                resolved = far.has_value();
                if (far) std::tie(lo, glo) = *far;
            } else {
                lo = x0;
                glo = g0;
                auto far = approach(re, lo, glo);
                resolved = far.has_value();
                if (far) std::tie(hi, ghi) = *far;
            }
        }

        if (!resolved) {
            rep.unresolved = true;
            out_.bracket_report.push_back(rep);
            return;
        }
        if (lo > hi) {
            std::swap(lo, hi);
            std::swap(glo, ghi);
        }
        rep.lo = std::isfinite(lcut.x) ? lcut.x : lo;
        rep.hi = std::isfinite(rcut.x) ? rcut.x : hi;

        auto fn = [this](double x) {
            const double f = evaluate(p_, x);
            return detail::ValueDeriv{f - p_.a, f * log_derivative(p_, x)};
        };
        const double x = detail::safeguarded_newton(fn, lo, hi, glo, ghi);
        add_root(x, 1);
        rep.root_found = true;
        out_.bracket_report.push_back(rep);
    }

    SolutionSet zeros_only() {
        for (auto [t, mult] : up_) {
            if (opts_.xmin && t < *opts_.xmin) continue;
            if (opts_.xmax && t > *opts_.xmax) continue;
            out_.roots.push_back({t, 0.0, 0, mult, true});
        }
        return finish();
    }

    void add_root(double x, int multiplicity) {
        if (opts_.xmin && x < *opts_.xmin) return;
        if (opts_.xmax && x > *opts_.xmax) return;
        for (const Root& r : out_.roots) {
            if (r.x == x) return;
        }
        double residual = std::abs(evaluate(p_, x) - p_.a);
        if (multiplicity == 1) {
            // near a pole one ulp moves F a lot; settle on the best neighbouring double
            for (double dir : {-INFINITY, INFINITY}) {
                for (int step = 0; step < 4; ++step) {
                    const double y = std::nextafter(x, dir);
                    const double ry = std::abs(evaluate(p_, y) - p_.a);
                    if (!(ry < residual)) break;
                    x = y;
                    residual = ry;
                }
            }
        }
        out_.roots.push_back({x, residual, 0, multiplicity, residual <= abs_tol_});
    }

    SolutionSet finish() {
        std::sort(out_.roots.begin(), out_.roots.end(),
                  [](const Root& l, const Root& r) { return l.x < r.x; });
        for (std::size_t i = 0; i < out_.roots.size(); ++i) out_.roots[i].branch_index = i;
        return std::move(out_);
    }

    const GenWParams& p_;
    const SolveOptions& opts_;
    std::map<double, int> up_;
    std::map<double, int> low_;
    double abs_tol_ = 0.0;
    std::vector<double> touched_;
    SolutionSet out_;
};

}  // namespace

std::vector<double> SolutionSet::values() const {
    std::vector<double> out;
    out.reserve(roots.size());
    for (const Root& r : roots) out.push_back(r.x);
    return out;
}

double evaluate(const GenWParams& p, double x) {
    double num = 1.0;
    double den = 1.0;
    for (double t : p.upper) num *= (x - t);
    for (double s : p.lower) den *= (x - s);
    const double v = std::exp(x) * (num / den);
    if (num == 0.0 || den == 0.0 || (std::isfinite(v) && v != 0.0)) return v;

    // intermediate over/underflow: redo in logs
    double log_abs = x;
    int sign = 1;
    for (double t : p.upper) {
        log_abs += std::log(std::abs(x - t));
        if (x < t) sign = -sign;
    }
    for (double s : p.lower) {
        log_abs -= std::log(std::abs(x - s));
        if (x < s) sign = -sign;
    }
    return sign * std::exp(log_abs);
}

SolutionSet solve_all(const GenWParams& p, const SolveOptions& opts) {
    if (!(opts.tol > 0.0)) throw DomainError("generalized W: tolerance must be positive");
    validate(p);
    return Solver(p, opts).run();
}

SolutionSet solve_all(const GenWParams& p, double tol) {
    SolveOptions opts;
    opts.tol = tol;
    return solve_all(p, opts);
}

std::vector<double> ClosedForm::values() const {
    std::vector<double> out;
    if (branch_count == 0) return out;
    switch (kind) {
        case ClosedFormKind::Log:
            out.push_back(std::log(argument));
            break;
        case ClosedFormKind::ShiftedW:
            if (branch_count == 2) out.push_back(shift + lambert_w(ClassicBranch::MinusOne, argument));
            out.push_back(shift + lambert_w(ClassicBranch::Principal, argument));
            break;
        case ClosedFormKind::ReflectedW:
            out.push_back(shift - lambert_w(ClassicBranch::Principal, argument));
            if (branch_count == 2) out.push_back(shift - lambert_w(ClassicBranch::MinusOne, argument));
            break;
    }
    return out;
}

namespace {

int w_branch_count(double z) {
    if (z >= 0.0) return 1;
    if (z > -kInvE) return 2;
    return z == -kInvE ? 1 : 0;
}

}  // namespace

std::optional<ClosedForm> reduce_special(const GenWParams& p) {
    const std::size_t n = p.upper.size();
    const std::size_t m = p.lower.size();
    if (n == 0 && m == 0) {
        return ClosedForm{ClosedFormKind::Log, 0.0, p.a, p.a > 0.0 ? 1 : 0};
    }
    if (n == 1 && m == 0) {
        const double t = p.upper[0];
        const double z = p.a * std::exp(-t);
        return ClosedForm{ClosedFormKind::ShiftedW, t, z, w_branch_count(z)};
    }
    if (n == 0 && m == 1) {
        const double s = p.lower[0];
        if (p.a == 0.0) return ClosedForm{ClosedFormKind::ReflectedW, s, -kInf, 0};
        const double z = -std::exp(s) / p.a;
        return ClosedForm{ClosedFormKind::ReflectedW, s, z, w_branch_count(z)};
    }
    return std::nullopt;
}

CanonicalForm canonicalize(const RationalExpEquation& eq) {
    if (eq.c == 0.0 || !std::isfinite(eq.c)) throw DomainError("canonicalize: c must be nonzero");
    if (eq.a0 == 0.0 || !std::isfinite(eq.a0)) throw DomainError("canonicalize: a0 must be nonzero");
    CanonicalForm out;
    out.c = eq.c;
    for (double t : eq.upper_raw) out.params.upper.push_back(eq.c * t);
    for (double s : eq.lower_raw) out.params.lower.push_back(eq.c * s);
    const int power = static_cast<int>(eq.upper_raw.size()) - static_cast<int>(eq.lower_raw.size());
    out.params.a = std::pow(eq.c, power) / eq.a0;
    for (double t : out.params.upper) {
        if (std::find(out.params.lower.begin(), out.params.lower.end(), t) != out.params.lower.end()) {
            throw DegenerateInput("canonicalize: scaled upper and lower parameters share " +
                                  std::to_string(t));
        }
    }
    return out;
}

double raw_residual(const RationalExpEquation& eq, double x) {
    double rhs = eq.a0;
    for (double t : eq.upper_raw) rhs *= (x - t);
    for (double s : eq.lower_raw) rhs /= (x - s);
    return std::exp(-eq.c * x) - rhs;
}

SolutionSet solve_rational_exp(const RationalExpEquation& eq, const SolveOptions& opts) {
    const CanonicalForm canon = canonicalize(eq);
    SolveOptions scaled = opts;
    // map x-limits into the canonical variable X = c x
    if (opts.xmin || opts.xmax) {
        scaled.xmin.reset();
        scaled.xmax.reset();
        const double lo = opts.xmin.value_or(-kInf) * eq.c;
        const double hi = opts.xmax.value_or(kInf) * eq.c;
        if (std::isfinite(std::min(lo, hi))) scaled.xmin = std::min(lo, hi);
        if (std::isfinite(std::max(lo, hi))) scaled.xmax = std::max(lo, hi);
    }
    SolutionSet out = solve_all(canon.params, scaled);
    for (Root& r : out.roots) {
        r.x = canon.to_original(r.x);
        r.residual = std::abs(raw_residual(eq, r.x));
    }
    for (ScannedInterval& s : out.bracket_report) {
        s.lo = canon.to_original(s.lo);
        s.hi = canon.to_original(s.hi);
        if (s.lo > s.hi) {
            std::swap(s.lo, s.hi);
            std::swap(s.g_lo, s.g_hi);
        }
    }
    double lo = canon.to_original(out.domain_lo);
    double hi = canon.to_original(out.domain_hi);
    out.domain_lo = std::min(lo, hi);
    out.domain_hi = std::max(lo, hi);
    std::sort(out.roots.begin(), out.roots.end(), [](const Root& l, const Root& r) { return l.x < r.x; });
    for (std::size_t i = 0; i < out.roots.size(); ++i) out.roots[i].branch_index = i;
    return out;
}

}  // namespace genlambert
