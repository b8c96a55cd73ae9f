#include "genlambert/classicw.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "genlambert/errors.hpp"
#include "genlambert/rootfind.hpp"

namespace genlambert {

namespace {

// 1/e = kInvE + kInvELow to about 33 digits.
constexpr double kInvELow = -1.2428753672788363e-17;

// Coefficients of W = sum mu_k p^k about the branch point (p > 0 for W_0).
constexpr std::array<double, 10> kBranchSeries{
    -1.0,
    1.0,
    -1.0 / 3.0,
    11.0 / 72.0,
    -43.0 / 540.0,
    769.0 / 17280.0,
    -221.0 / 8505.0,
    680863.0 / 43545600.0,
    -1963.0 / 204120.0,
    226287557.0 / 37623398400.0,
};

double branch_series(double p) {
    double acc = 0.0;
    for (auto it = kBranchSeries.rbegin(); it != kBranchSeries.rend(); ++it) acc = acc * p + *it;
    return acc;
}

detail::ValueDeriv residual(double w, double a) {
    const double ew = std::exp(w);
    return {w * ew - a, ew * (w + 1.0)};
}

double solve_bracketed(double a, double lo, double hi, double guess) {
    auto fn = [a](double w) { return residual(w, a); };
    return detail::safeguarded_newton(fn, lo, hi, fn(lo).f, fn(hi).f, guess);
}

}  // namespace

double lambert_w(ClassicBranch branch, double a) {
    if (std::isnan(a)) throw DomainError("lambert_w: argument is NaN");
    // a + 1/e with the low part of 1/e restored
    const double shifted = (a + kInvE) + kInvELow;
    if (shifted < 0.0) {
        if (shifted > -8.0 * std::numeric_limits<double>::epsilon() * kInvE) return -1.0;
        throw DomainError("lambert_w: argument " + std::to_string(a) + " is below -1/e");
    }
    const bool principal = branch == ClassicBranch::Principal;
    if (!principal && a >= 0.0) {
        throw DomainError("lambert_w: W_{-1} requires -1/e <= a < 0");
    }
    if (a == 0.0) return 0.0;
    if (std::isinf(a)) return a;

    const double p = std::sqrt(2.0 * std::numbers::e * shifted);
    if (p < 1e-2) return branch_series(principal ? p : -p);

    if (principal) {
        if (a > std::numbers::e) {
            const double la = std::log(a);
            const double lla = std::log(la);
            double lo = la - lla;
            double hi = la - 0.5 * lla;
            // the bounds are sharp at a = e; widen slightly against rounding
            lo -= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(lo) + 1e-300;
            hi += 4.0 * std::numeric_limits<double>::epsilon() * std::abs(hi);
            return solve_bracketed(a, lo, hi, la - lla + lla / la);
        }
        const double guess = a < 0.0 ? branch_series(p) : a / (1.0 + a);
        return solve_bracketed(a, -1.0, 1.0, guess);
    }

    double guess = branch_series(-p);
    if (a > -0.25) {
        const double l1 = std::log(-a);
        const double l2 = std::log(-l1);
        guess = l1 - l2 + l2 / l1;
    }
    double lo = std::min(-2.0, 2.0 * guess);
    while (residual(lo, a).f <= 0.0) lo *= 2.0;
    return solve_bracketed(a, lo, -1.0, guess);
}

}  // namespace genlambert
