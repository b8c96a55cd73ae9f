#pragma once

#include <functional>
#include <span>
#include <vector>

namespace genlambert::detail {

/// Value and first derivative of a scalar function.
struct ValueDeriv {
    double f;
    double df;
};

using ValueDerivFn = std::function<ValueDeriv(double)>;

/// Newton iteration confined to a sign-changing bracket [lo, hi]; falls back
/// to bisection whenever the Newton step leaves the bracket or stalls.
/// flo and fhi are the function values (or just their signs) at the ends.
/// Returns the iterate with the smallest |f| seen.
double safeguarded_newton(const ValueDerivFn& fn, double lo, double hi, double flo, double fhi,
                          double guess);

/// Same as above, starting from the bracket midpoint.
double safeguarded_newton(const ValueDerivFn& fn, double lo, double hi, double flo, double fhi);

/// Real roots of the polynomial sum_k coeffs[k] x^k, ascending. Roots are
/// isolated by recursing on the derivative, so every simple root is found;
/// even-multiplicity roots may be missed.
std::vector<double> real_polynomial_roots(std::span<const double> coeffs);

/// Horner evaluation, coefficients lowest degree first.
double poly_eval(std::span<const double> coeffs, double x);

/// Coefficients of prod (x - r_i), lowest degree first.
std::vector<double> poly_from_roots(std::span<const double> roots);

}  // namespace genlambert::detail
