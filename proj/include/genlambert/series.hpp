#pragma once

#include <optional>
#include <vector>

#include "genlambert/polys.hpp"

namespace genlambert {

enum class SeriesKind {
    OneUpOneLow,  ///< W(t; s; a) about a = 0, Laguerre-derivative coefficients
    TwoUp,        ///< W(t1, t2; ; a) about a = 0, Bessel-polynomial coefficients
    RLambert,     ///< W_r(x) about x = 0, M_k^(n) coefficients
};

struct SeriesExpansion {
    SeriesKind kind = SeriesKind::OneUpOneLow;
    std::vector<double> params;  ///< (t, s), (t1, t2) or (r)
    /// coeffs[k] multiplies z^(k+1); the constant term is not stored.
    std::vector<PolyValue> coeffs;
    std::optional<double> radius;  ///< only for OneUpOneLow with t < s
    int terms_used = 0;
    /// Geometric tail estimate |c_{N+1} z^{N+1}| / (1 - rho) from the first
    /// omitted term; infinite when the terms are not shrinking.
    double truncation_estimate = 0.0;
    /// True when the sum stopped on the relative-term rule rather than n_max.
    bool converged = false;
};

struct SeriesResult {
    double value = 0.0;
    SeriesExpansion expansion;
};

inline constexpr int kDefaultSeriesTerms = 64;

/// Taylor series of W(t; s; a) about a = 0:
///   t + T sum_{n>=1} L_{n-1}^(1)(nT) e^{-nt} a^n / n,   T = t - s.
/// Throws DegenerateInput for t = s, ConvergenceDomain when t < s and |a| is
/// not below radius_one_up_one_low, Diverging when the terms grow.
SeriesResult series_one_up_one_low(double t, double s, double a, int n_max = kDefaultSeriesTerms);

/// e^{(t+s)/2 - 2 sqrt(s - t)}. Throws DomainError unless t < s.
double radius_one_up_one_low(double t, double s);

/// |F(x_-)| for F(x) = e^x (x - t)/(x - s), x_- the critical point left of t,
/// i.e. the branch point nearest the expansion point on the real line.
/// Throws DomainError unless t < s.
double singularity_radius_one_up_one_low(double t, double s);

/// n-th coefficient (n >= 1) of the W(t; s; a) series.
PolyValue one_up_one_low_coefficient(double t, double s, int n);

/// Ratio-test estimate |c_n| / |c_{n+1}| of the W(t; s; a) series radius.
double empirical_radius_one_up_one_low(double t, double s, int n);

/// Taylor series of W(t1, t2; ; a) about a = 0:
///   t1 - sum_{n>=1} (a n e^{-t1} / T)^n B_{n-1}(-2/(nT)) / (n n!),   T = t2 - t1.
/// Throws DegenerateInput for t1 = t2, Diverging when the terms grow.
SeriesResult series_two_up(double t1, double t2, double a, int n_max = kDefaultSeriesTerms);

PolyValue two_up_coefficient(double t1, double t2, int n);

/// Taylor series of the r-Lambert function about 0:
///   x/(r+1) + sum_{n>=2} M_{n-1}^(n)(1/(r+1)) x^n / ((r+1)^n n!).
/// Throws DegenerateInput for r = -1. Divergence is reported through
/// converged/truncation_estimate rather than thrown. Coefficients come from
/// a recurrence on x = W e^W + r W that equals this sum but, unlike it, does
/// not cancel for r > -1.
SeriesResult series_r_lambert(double r, double x, int n_max = kDefaultSeriesTerms);

PolyValue r_lambert_coefficient(double r, int n);

}  // namespace genlambert
