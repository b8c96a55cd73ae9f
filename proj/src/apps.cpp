#include "genlambert/apps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "genlambert/classicw.hpp"
#include "genlambert/errors.hpp"
#include "genlambert/rootfind.hpp"

namespace genlambert {

namespace {

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

DoubleWellLevels double_well_levels(const DoubleWellParams& p) {
    if (!positive_finite(p.q) || !positive_finite(p.R)) {
        throw DomainError("double_well_levels: q and R must be positive");
    }
    const double u = p.q * p.R;
    const double z = u * std::exp(-u);
    DoubleWellLevels out;
    out.d_plus = p.q + lambert_w(ClassicBranch::Principal, z) / p.R;
    // W_0(-u e^{-u}) = -u exactly when u <= 1: the odd level is at zero
    out.d_minus = u <= 1.0 ? 0.0 : p.q + lambert_w(ClassicBranch::Principal, -z) / p.R;
    out.e_plus = -0.5 * out.d_plus * out.d_plus;
    out.e_minus = -0.5 * out.d_minus * out.d_minus;
    return out;
}

SolutionSet solve_quadratic_exp(double c, double a0, double t1, double t2, const SolveOptions& opts) {
    RationalExpEquation eq;
    eq.c = c;
    eq.a0 = a0;
    eq.upper_raw = {t1, t2};
    return solve_rational_exp(eq, opts);
}

double dde2_characteristic(const Dde2Params& p, double lambda) {
    return (lambda - p.t1) * (lambda - p.t2) - p.b1 * std::exp(-lambda * p.tau) * (lambda - p.s1);
}

Dde2Roots dde2_real_roots(const Dde2Params& p, const SolveOptions& opts) {
    if (!positive_finite(p.tau)) throw DomainError("dde2_real_roots: tau must be positive");

    GenWParams scaled;
    std::optional<double> common;
    if (p.b1 == 0.0) {
        scaled.upper = {p.tau * p.t1, p.tau * p.t2};
    } else if (p.s1 == p.t1 || p.s1 == p.t2) {
        common = p.s1;
        const double other = p.s1 == p.t1 ? p.t2 : p.t1;
        scaled.upper = {p.tau * other};
    } else {
        scaled.upper = {p.tau * p.t1, p.tau * p.t2};
        scaled.lower = {p.tau * p.s1};
    }
    scaled.a = p.b1 * p.tau;

    SolveOptions xopts = opts;
    if (opts.xmin) xopts.xmin = *opts.xmin * p.tau;
    if (opts.xmax) xopts.xmax = *opts.xmax * p.tau;

    Dde2Roots out;
    out.roots = solve_all(scaled, xopts);
    SolutionSet& set = out.roots;
    for (Root& r : set.roots) {
        r.x /= p.tau;
        // with b1 = 0 the roots are the polynomial zeros; (tau t)/tau need not round back to t
        if (p.b1 == 0.0) r.x = std::abs(r.x - p.t1) <= std::abs(r.x - p.t2) ? p.t1 : p.t2;
    }
    for (ScannedInterval& s : set.bracket_report) {
        s.lo /= p.tau;
        s.hi /= p.tau;
    }
    set.domain_lo /= p.tau;
    set.domain_hi /= p.tau;

    if (common) {
        const bool in_range = (!opts.xmin || *common >= *opts.xmin) && (!opts.xmax || *common <= *opts.xmax);
        auto hit = std::find_if(set.roots.begin(), set.roots.end(),
                                [&](const Root& r) { return r.x == *common; });
        if (hit != set.roots.end()) {
            ++hit->multiplicity;
        } else if (in_range) {
            set.roots.push_back({*common, 0.0, 0, 1, true});
        }
    }
    const double abs_tol_scale = opts.tol;
    for (Root& r : set.roots) {
        const double lhs = (r.x - p.t1) * (r.x - p.t2);
        r.residual = std::abs(dde2_characteristic(p, r.x));
        r.within_tol = r.residual <= abs_tol_scale * (1.0 + std::abs(lhs));
    }
    std::sort(set.roots.begin(), set.roots.end(), [](const Root& l, const Root& r) { return l.x < r.x; });
    for (std::size_t i = 0; i < set.roots.size(); ++i) set.roots[i].branch_index = i;

    if (!set.roots.empty()) {
        out.rightmost = set.roots.back().x;
        out.real_spectrum_stable = *out.rightmost < 0.0;
    }
    return out;
}

DispersionSolution invert_dispersion(const DispersionParams& p) {
    if (!positive_finite(p.omega) || !positive_finite(p.g) || !positive_finite(p.h)) {
        throw DomainError("invert_dispersion: omega, g and h must be positive");
    }
    if (!std::isfinite(p.rho1) || !std::isfinite(p.rho2) || p.rho1 < 0.0 || p.rho2 < 0.0) {
        throw DomainError("invert_dispersion: densities must be non-negative");
    }
    double c = 1.0;
    if (p.rho2 > 0.0) {
        if (!(p.rho1 > p.rho2)) {
            throw DomainError("invert_dispersion: two-layer flow needs rho1 > rho2");
        }
        c = (p.rho1 + p.rho2) / (p.rho1 - p.rho2);
    }

    DispersionSolution out;
    out.y = p.omega * p.omega * p.h / p.g;
    const double y = out.y;
    // x - c y ~ (c+1) y e^{-2x}: once that is below half an ulp of c y the root
    // cannot be separated from the pole, and the next double up is returned
    // (within one ulp, and x > c y still holds as it does for the true root).
    const double rel_gap = (c + 1.0) / c * std::exp(-2.0 * c * y);
    if (rel_gap < 0.5 * std::numeric_limits<double>::epsilon()) {
        out.x = std::nextafter(c * y, std::numeric_limits<double>::infinity());
    } else {
        GenWParams w;
        w.upper = {2.0 * c * y};
        w.lower = {-2.0 * y};
        w.a = 1.0;
        const SolutionSet set = solve_all(w);
        if (set.roots.empty() || !(set.roots.back().x > 2.0 * c * y)) {
            throw Error("invert_dispersion: no positive root for y = " + std::to_string(y));
        }
        out.x = 0.5 * set.roots.back().x;
    }
    out.k = out.x / p.h;
    return out;
}

double langevin(double x) {
    if (std::abs(x) < 1e-2) {
        const double x2 = x * x;
        return x * (1.0 / 3.0 + x2 * (-1.0 / 45.0 + x2 * (2.0 / 945.0 - x2 / 4725.0)));
    }
    return 1.0 / std::tanh(x) - 1.0 / x;
}

double langevin_deriv(double x) {
    if (std::abs(x) < 1e-2) {
        const double x2 = x * x;
        return 1.0 / 3.0 + x2 * (-1.0 / 15.0 + x2 * (2.0 / 189.0));
    }
    const double sh = std::sinh(x);
    return 1.0 / (x * x) - 1.0 / (sh * sh);
}

namespace {

void check_langevin_arg(double a) {
    if (!(std::abs(a) < 1.0)) {
        throw DomainError("inverse_langevin: argument must lie in (-1, 1), got " + std::to_string(a));
    }
}

}  // namespace

double inverse_langevin(double a) {
    check_langevin_arg(a);
    if (a == 0.0) return 0.0;
    const double b = std::abs(a);
    const double sign = a < 0.0 ? -1.0 : 1.0;
    if (b < 2e-3) {
        // the nonzero root is merging with X = 0 and the reduction loses
        // about eps/b^2; the odd Taylor series is exact to double here
        const double b2 = b * b;
        return sign * b * (3.0 + b2 * (9.0 / 5.0 + b2 * (297.0 / 175.0)));
    }

    GenWParams w;
    w.upper = {2.0 / (b + 1.0)};
    w.lower = {2.0 / (b - 1.0)};
    w.a = (b - 1.0) / (b + 1.0);
    const SolutionSet set = solve_all(w);

    // x > 0 maps to X = -2x < 0; X = 0 is the spurious root
    double big_x = 0.0;
    for (const Root& r : set.roots) {
        if (r.x < big_x && std::abs(r.x) > 1e-12) big_x = r.x;
    }
    if (big_x == 0.0) {
        const bool pole_limited = std::any_of(set.bracket_report.begin(), set.bracket_report.end(),
                                              [](const ScannedInterval& s) { return s.unresolved; });
        if (!pole_limited) throw Error("inverse_langevin: reduction produced no nonzero root");
        big_x = w.lower[0];
    }
    return sign * (-0.5 * big_x);
}

double inverse_langevin_direct(double a) {
    check_langevin_arg(a);
    if (a == 0.0) return 0.0;
    const double b = std::abs(a);
    const double lo = 3.0 * b;
    const double hi = 1.0 / (1.0 - b);
    auto fn = [b](double x) { return detail::ValueDeriv{langevin(x) - b, langevin_deriv(x)}; };
    const double x = detail::safeguarded_newton(fn, lo, hi, langevin(lo) - b, langevin(hi) - b, 3.0 * b);
    return a < 0.0 ? -x : x;
}

}  // namespace genlambert
