#include "genlambert/series.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "genlambert/errors.hpp"

namespace genlambert {

namespace {

constexpr double kRelativeStop = 1e-16;

struct SumOutcome {
    double sum = 0.0;
    bool diverging = false;
};

/// Sums constant + sum_n c(n) z^n, filling the expansion bookkeeping.
SumOutcome sum_series(const std::function<PolyValue(int)>& coefficient, double constant, double z,
                      int n_max, SeriesExpansion& ex) {
    SumOutcome out;
    if (z == 0.0) {
        ex.converged = true;
        return out;
    }
    const PolyValue zp = PolyValue::from_double(z);
    PolyValue power = PolyValue::from_double(1.0);
    std::vector<double> magnitudes;
    double last_term = 0.0;
    int small_run = 0;
    for (int n = 1; n <= n_max; ++n) {
        const PolyValue c = coefficient(n);
        ex.coeffs.push_back(c);
        power = power * zp;
        const double term = (c * power).to_double();
        if (!std::isfinite(term)) {
            out.diverging = true;
            return out;
        }
        out.sum += term;
        ex.terms_used = n;
        magnitudes.push_back(std::abs(term));
        last_term = term;
        // two negligible terms in a row: a single one may be an exactly vanishing coefficient
        const double scale = std::max(std::abs(constant + out.sum), std::numeric_limits<double>::min());
        small_run = std::abs(term) <= kRelativeStop * scale ? small_run + 1 : 0;
        if (small_run >= 2) {
            ex.converged = true;
            break;
        }
    }

    // First three omitted terms exactly, then a geometric tail. Term ratios
    // approach their limit like L - c/k, so L is extrapolated from the last two.
    double tail = 0.0;
    double prev = std::abs(last_term);
    double ratio_prev = 0.0;
    double ratio = 0.0;
    PolyValue next_power = power;
    for (int k = 1; k <= 3; ++k) {
        next_power = next_power * zp;
        const double t = std::abs((coefficient(ex.terms_used + k) * next_power).to_double());
        tail += t;
        ratio_prev = ratio;
        ratio = prev > 0.0 ? t / prev : 0.0;
        prev = t;
    }
    const double k = ex.terms_used + 3;
    const double limit = std::max({ratio, ratio_prev, ratio + (ratio - ratio_prev) * (k - 1.0)});
    ex.truncation_estimate =
        limit < 1.0 ? tail + prev * limit / (1.0 - limit) : std::numeric_limits<double>::infinity();

    if (!ex.converged && magnitudes.size() >= 4) {
        // net growth: the tail outweighs the head
        const std::size_t half = magnitudes.size() / 2;
        const std::size_t quarter = std::max<std::size_t>(1, magnitudes.size() / 4);
        const double head = *std::max_element(magnitudes.begin(), magnitudes.begin() + half);
        const double tail = *std::max_element(magnitudes.end() - quarter, magnitudes.end());
        out.diverging = tail > head;
    }
    return out;
}

void check_terms(int n_max) {
    if (n_max < 1) throw DomainError("series: n_max must be >= 1");
}

}  // namespace

PolyValue one_up_one_low_coefficient(double t, double s, int n) {
    const double big_t = t - s;
    const PolyValue lag = laguerre(n - 1, 1, n * big_t);
    return lag * (big_t / n) * PolyValue::from_log(1, -n * t);
}

double radius_one_up_one_low(double t, double s) {
    if (!(t < s)) throw DomainError("radius_one_up_one_low: requires t < s");
    return std::exp(0.5 * (t + s) - 2.0 * std::sqrt(s - t));
}

double singularity_radius_one_up_one_low(double t, double s) {
    if (!(t < s)) throw DomainError("singularity_radius_one_up_one_low: requires t < s");
    // F'/F = 0  <=>  x^2 - (t+s) x + ts + t - s = 0
    const double d = s - t;
    const double x = 0.5 * ((t + s) - std::sqrt(d * (d + 4.0)));
    return std::abs(std::exp(x) * (x - t) / (x - s));
}

double empirical_radius_one_up_one_low(double t, double s, int n) {
    const PolyValue cn = one_up_one_low_coefficient(t, s, n);
    const PolyValue cn1 = one_up_one_low_coefficient(t, s, n + 1);
    return std::exp(cn.log_abs() - cn1.log_abs());
}

SeriesResult series_one_up_one_low(double t, double s, double a, int n_max) {
    check_terms(n_max);
    if (t == s) throw DegenerateInput("series_one_up_one_low: t = s");
    SeriesResult res;
    res.expansion.kind = SeriesKind::OneUpOneLow;
    res.expansion.params = {t, s};
    if (t < s) {
        const double radius = radius_one_up_one_low(t, s);
        res.expansion.radius = radius;
        if (std::abs(a) >= radius) {
            throw ConvergenceDomain("series_one_up_one_low: |a| is not below the radius of convergence");
        }
    }
    const auto coef = [t, s](int n) { return one_up_one_low_coefficient(t, s, n); };
    const SumOutcome sum = sum_series(coef, t, a, n_max, res.expansion);
    if (sum.diverging) throw Diverging("series_one_up_one_low: terms grow");
    res.value = t + sum.sum;
    return res;
}

PolyValue two_up_coefficient(double t1, double t2, int n) {
    const double big_t = t2 - t1;
    const double nd = n;
    const double log_mag =
        nd * (std::log(nd) - t1 - std::log(std::abs(big_t))) - std::log(nd) - std::lgamma(nd + 1.0);
    const int sign = (big_t < 0.0 && n % 2 == 1) ? 1 : -1;  // leading minus folded in
    return PolyValue::from_log(sign, log_mag) * bessel_poly(n - 1, -2.0 / (nd * big_t));
}

SeriesResult series_two_up(double t1, double t2, double a, int n_max) {
    check_terms(n_max);
    if (t1 == t2) throw DegenerateInput("series_two_up: t1 = t2");
    SeriesResult res;
    res.expansion.kind = SeriesKind::TwoUp;
    res.expansion.params = {t1, t2};
    const auto coef = [t1, t2](int n) { return two_up_coefficient(t1, t2, n); };
    const SumOutcome sum = sum_series(coef, t1, a, n_max, res.expansion);
    if (sum.diverging) throw Diverging("series_two_up: terms grow");
    res.value = t1 + sum.sum;
    return res;
}

namespace {

/// Taylor coefficients w_1..w_n of W_r about 0. Equal to the Stirling/M-polynomial
/// form x/(r+1) + sum M_{n-1}^(n)(1/(r+1)) x^n/((r+1)^n n!), but that sum
/// alternates and sheds all digits by n ~ 40 for r > -1. Matching powers in
/// x = W e^W + r W, with E = e^W and E' = W'E, gives a recurrence whose terms
/// all share the series' own geometric scale:
///   (1+r) w_n = [n = 1] - sum_{k<n} w_k e_{n-k},   n e_n = sum_{k<=n} k w_k e_{n-k}.
std::vector<PolyValue> r_lambert_coefficients(double r, int n) {
    std::vector<PolyValue> w(n + 1);
    std::vector<PolyValue> e(n + 1);
    e[0] = PolyValue::from_double(1.0);
    const double inv = 1.0 / (r + 1.0);
    for (int m = 1; m <= n; ++m) {
        PolyValue acc = PolyValue::from_double(m == 1 ? 1.0 : 0.0);
        for (int k = 1; k < m; ++k) acc = acc - w[k] * e[m - k];
        w[m] = acc * inv;
        PolyValue de;
        for (int k = 1; k <= m; ++k) de = de + w[k] * e[m - k] * static_cast<double>(k);
        e[m] = de / static_cast<double>(m);
    }
    return w;
}

}  // namespace

PolyValue r_lambert_coefficient(double r, int n) {
    if (r == -1.0) throw DegenerateInput("r_lambert series: r = -1");
    if (n < 1) throw DomainError("r_lambert series: n must be >= 1");
    return r_lambert_coefficients(r, n)[n];
}

SeriesResult series_r_lambert(double r, double x, int n_max) {
    check_terms(n_max);
    if (r == -1.0) throw DegenerateInput("series_r_lambert: r = -1");
    SeriesResult res;
    res.expansion.kind = SeriesKind::RLambert;
    res.expansion.params = {r};
    // the truncation estimate looks three terms ahead
    const auto table = r_lambert_coefficients(r, n_max + 3);
    const auto coef = [&table](int n) { return table[n]; };
    const SumOutcome sum = sum_series(coef, 0.0, x, n_max, res.expansion);
    if (sum.diverging) {
        res.expansion.converged = false;
        res.expansion.truncation_estimate = std::numeric_limits<double>::infinity();
    }
    res.value = sum.sum;
    return res;
}

}  // namespace genlambert
