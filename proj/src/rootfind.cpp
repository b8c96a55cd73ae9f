#include "genlambert/rootfind.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace genlambert::detail {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxIter = 400;

}  // namespace

double safeguarded_newton(const ValueDerivFn& fn, double lo, double hi, double flo, double fhi,
                          double guess) {
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    // xl always carries f < 0
    double xl = flo < 0.0 ? lo : hi;
    double xh = flo < 0.0 ? hi : lo;

    double x = guess;
    if (!(x > std::min(lo, hi) && x < std::max(lo, hi))) x = 0.5 * (lo + hi);
    double dxold = std::abs(hi - lo);
    double dx = dxold;

    auto [f, df] = fn(x);
    double best_x = x;
    double best_f = std::abs(f);

    for (int iter = 0; iter < kMaxIter; ++iter) {
        if (f == 0.0) return x;
        if (f < 0.0) {
            xl = x;
        } else {
            xh = x;
        }
        const double width = std::abs(xh - xl);
        if (width <= 2.0 * kEps * std::max(std::abs(xl), std::abs(xh)) ||
            width < std::numeric_limits<double>::denorm_min() * 4) {
            break;
        }

        const bool newton_usable = std::isfinite(f) && std::isfinite(df) && df != 0.0;
        const double xn = newton_usable ? x - f / df : 0.0;
        if (!newton_usable || (xn - xl) * (xn - xh) >= 0.0 ||
            std::abs(2.0 * f) > std::abs(dxold * df)) {
            dxold = dx;
            dx = 0.5 * (xh - xl);
            x = xl + dx;
        } else {
            dxold = dx;
            dx = xn - x;
            if (xn == x) break;
            x = xn;
        }
        if (x == xl || x == xh) break;

        const ValueDeriv vd = fn(x);
        f = vd.f;
        df = vd.df;
        if (std::abs(f) < best_f || std::isnan(best_f)) {
            best_f = std::abs(f);
            best_x = x;
        }
        if (std::abs(dx) <= kEps * std::abs(x) * 0.5) break;
    }
    return best_x;
}

double safeguarded_newton(const ValueDerivFn& fn, double lo, double hi, double flo, double fhi) {
    return safeguarded_newton(fn, lo, hi, flo, fhi, 0.5 * (lo + hi));
}

double poly_eval(std::span<const double> coeffs, double x) {
    double acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
}

std::vector<double> poly_from_roots(std::span<const double> roots) {
    std::vector<double> c{1.0};
    for (double r : roots) {
        std::vector<double> next(c.size() + 1, 0.0);
        for (std::size_t k = 0; k < c.size(); ++k) {
            next[k + 1] += c[k];
            next[k] -= r * c[k];
        }
        c = std::move(next);
    }
    return c;
}

std::vector<double> real_polynomial_roots(std::span<const double> coeffs) {
    std::vector<double> c(coeffs.begin(), coeffs.end());
    while (!c.empty() && c.back() == 0.0) c.pop_back();
    if (c.size() <= 1) return {};
    if (c.size() == 2) return {-c[0] / c[1]};

    std::vector<double> deriv(c.size() - 1);
    for (std::size_t k = 1; k < c.size(); ++k) deriv[k - 1] = static_cast<double>(k) * c[k];

    // Cauchy bound on root magnitudes
    double bound = 0.0;
    for (std::size_t k = 0; k + 1 < c.size(); ++k) bound = std::max(bound, std::abs(c[k] / c.back()));
    bound += 1.0;

    std::vector<double> marks{-bound};
    for (double r : real_polynomial_roots(deriv)) {
        if (r > -bound && r < bound) marks.push_back(r);
    }
    marks.push_back(bound);

    auto fn = [&](double x) { return ValueDeriv{poly_eval(c, x), poly_eval(deriv, x)}; };

    std::vector<double> roots;
    for (std::size_t i = 0; i + 1 < marks.size(); ++i) {
        const double lo = marks[i];
        const double hi = marks[i + 1];
        const double plo = poly_eval(c, lo);
        const double phi = poly_eval(c, hi);
        if (plo == 0.0) {
            if (roots.empty() || roots.back() != lo) roots.push_back(lo);
            continue;
        }
        if (phi == 0.0) continue;  // picked up as the next interval's left end
        if ((plo < 0.0) != (phi < 0.0)) roots.push_back(safeguarded_newton(fn, lo, hi, plo, phi));
    }
    if (poly_eval(c, marks.back()) == 0.0 &&
        (roots.empty() || roots.back() != marks.back())) {
        roots.push_back(marks.back());
    }
    return roots;
}

}  // namespace genlambert::detail
