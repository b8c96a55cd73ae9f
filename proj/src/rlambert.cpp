#include "genlambert/rlambert.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "genlambert/classicw.hpp"
#include "genlambert/errors.hpp"
#include "genlambert/rootfind.hpp"

namespace genlambert {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int sgn(double v) { return (v > 0.0) - (v < 0.0); }

double polish_critical(double r, double x) {
    // Newton on e^x (x + 1) + r; one or two steps from the W-based value
    for (int i = 0; i < 3; ++i) {
        const double ex = std::exp(x);
        const double f = ex * (x + 1.0) + r;
        const double df = ex * (x + 2.0);
        if (f == 0.0 || df == 0.0) break;
        const double step = f / df;
        if (std::abs(step) > 1e-6 * (1.0 + std::abs(x))) break;
        x -= step;
    }
    return x;
}

/// Limit of f - n at an interval end; x = -inf or +inf, or a finite point.
double end_value(double r, double x, double n) {
    if (x == kInf) return kInf;
    if (x == -kInf) {
        if (r > 0.0) return -kInf;
        if (r < 0.0) return kInf;
        return -n;  // x e^x -> 0
    }
    return r_lambert_map(r, x) - n;
}

}  // namespace

double r_lambert_map(double r, double x) { return x * std::exp(x) + r * x; }

BranchStructure branch_structure(double r) {
    BranchStructure out;
    out.r = r;
    // e^x (x + 1) = -r  <=>  (x + 1) e^{x + 1} = -r e
    const double z = -r * std::numbers::e;
    if (r == 0.0) {
        out.critical_points = {-1.0};
    } else if (r < 0.0) {
        out.critical_points = {polish_critical(r, lambert_w(ClassicBranch::Principal, z) - 1.0)};
    } else if (z > -kInvE) {
        const double left = polish_critical(r, lambert_w(ClassicBranch::MinusOne, z) - 1.0);
        const double right = polish_critical(r, lambert_w(ClassicBranch::Principal, z) - 1.0);
        if (left < right) out.critical_points = {left, right};
    }
    out.branch_count = static_cast<int>(out.critical_points.size()) + 1;
    double lo = -kInf;
    for (double c : out.critical_points) {
        out.branch_intervals.emplace_back(lo, c);
        lo = c;
    }
    out.branch_intervals.emplace_back(lo, kInf);
    return out;
}

std::optional<double> r_lambert(const RLambertQuery& q, double tol) {
    if (!std::isfinite(q.r) || !std::isfinite(q.n)) throw DomainError("r_lambert: non-finite input");
    const BranchStructure bs = branch_structure(q.r);
    if (q.branch >= bs.branch_intervals.size()) {
        throw InvalidBranch("r_lambert: branch " + std::to_string(q.branch) + " but r has " +
                            std::to_string(bs.branch_count) + " branch(es)");
    }
    const auto [lo, hi] = bs.branch_intervals[q.branch];
    const double r = q.r;
    const double n = q.n;
    const double abs_tol = tol * (1.0 + std::abs(n));

    const double glo = end_value(r, lo, n);
    const double ghi = end_value(r, hi, n);
    // a local extremum equal to n is claimed by the branch on its left
    if (std::isfinite(hi) && std::abs(ghi) <= abs_tol) return hi;
    if (std::isfinite(lo) && std::abs(glo) <= abs_tol) return std::nullopt;
    if (sgn(glo) == sgn(ghi) || sgn(glo) == 0 || sgn(ghi) == 0) return std::nullopt;

    auto g = [r, n](double x) { return r_lambert_map(r, x) - n; };

    // Walk from a finite anchor toward an infinite end until g takes that
    // end's sign; the anchor trails the walk so the pair keeps the bracket.
    struct Bracket {
        double x0, g0, x1, g1;
    };
    auto walk = [&](double anchor, double g_anchor, double dir, int target) -> std::optional<Bracket> {
        double step = std::max(1.0, std::abs(anchor));
        for (int iter = 0; iter < 1100; ++iter) {
            const double far = anchor + dir * step;
            if (!std::isfinite(far)) return std::nullopt;
            const double g_far = g(far);
            if (sgn(g_far) == target || g_far == 0.0) return Bracket{anchor, g_anchor, far, g_far};
            anchor = far;
            g_anchor = g_far;
            step *= 2.0;
        }
        return std::nullopt;
    };

    std::optional<Bracket> br;
    if (std::isfinite(lo) && std::isfinite(hi)) {
        br = Bracket{lo, glo, hi, ghi};
    } else if (std::isfinite(lo)) {
        br = walk(lo, glo, 1.0, sgn(ghi));
    } else if (std::isfinite(hi)) {
        br = walk(hi, ghi, -1.0, sgn(glo));
    } else {
        const double g0 = g(0.0);
        if (g0 == 0.0) return 0.0;
        br = sgn(g0) == sgn(glo) ? walk(0.0, g0, 1.0, sgn(ghi)) : walk(0.0, g0, -1.0, sgn(glo));
    }
    if (!br) return std::nullopt;
    if (br->x0 > br->x1) {
        std::swap(br->x0, br->x1);
        std::swap(br->g0, br->g1);
    }

    auto fn = [r, n](double x) {
        const double ex = std::exp(x);
        return detail::ValueDeriv{x * ex + r * x - n, ex * (x + 1.0) + r};
    };
    return detail::safeguarded_newton(fn, br->x0, br->x1, br->g0, br->g1);
}

std::vector<double> r_lambert_all(double r, double n, double tol) {
    const BranchStructure bs = branch_structure(r);
    std::vector<double> out;
    for (std::size_t b = 0; b < bs.branch_intervals.size(); ++b) {
        if (auto x = r_lambert({r, n, b}, tol)) out.push_back(*x);
    }
    return out;
}

double r_lambert_asymptotic(double r, double x, AsymptoticDirection direction) {
    if (direction == AsymptoticDirection::MinusInf) {
        if (r == 0.0) throw DomainError("r_lambert_asymptotic: x -> -inf form needs r != 0");
        return x / r;
    }
    if (!(x > std::numbers::e)) throw DomainError("r_lambert_asymptotic: x -> +inf form needs x > e");
    const double lx = std::log(x);
    const double inner = 1.0 / lx - r / x;
    if (!(inner > 0.0)) throw DomainError("r_lambert_asymptotic: 1/log x - r/x must be positive");
    return lx + std::log(inner);
}

}  // namespace genlambert
