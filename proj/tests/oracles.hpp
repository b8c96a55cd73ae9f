#pragma once

// Independent reference computations used only by the tests: plain
// bisection, dense sign-change scans, exhaustive enumeration and direct
// summation. None of these call into the library.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <vector>

namespace oracle {

/// Plain bisection on a sign change; runs to the last representable midpoint.
inline double bisect(const std::function<double(double)>& f, double lo, double hi) {
    double flo = f(lo);
    for (int i = 0; i < 2000; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

/// Sign changes of f on a uniform grid of `points` nodes over [lo, hi],
/// never comparing across any of `breaks` (poles). A grid cell holding a
/// break is refined geometrically towards it from both sides, so roots
/// hugging a pole still show up. Each change is refined by bisection and
/// returned ascending.
inline std::vector<double> scan_roots(const std::function<double(double)>& f, double lo, double hi,
                                      long points, std::vector<double> breaks = {}, bool refine = true) {
    std::sort(breaks.begin(), breaks.end());
    std::vector<double> roots;
    auto seg = [&](double x) {
        return static_cast<long>(std::upper_bound(breaks.begin(), breaks.end(), x) - breaks.begin());
    };
    bool have_prev = false;
    double prev_x = 0.0;
    double prev_f = 0.0;
    long prev_seg = 0;
    auto push = [&](double x) {
        if (std::binary_search(breaks.begin(), breaks.end(), x)) return;
        const double fx = f(x);
        const long s = seg(x);
        if (have_prev && s == prev_seg && !std::isnan(fx) && !std::isnan(prev_f) && fx != 0.0 && prev_f != 0.0 &&
            ((fx < 0.0) != (prev_f < 0.0))) {
            roots.push_back(refine ? bisect(f, prev_x, x) : 0.5 * (prev_x + x));
        }
        if (fx == 0.0) roots.push_back(x);
        have_prev = true;
        prev_x = x;
        prev_f = fx;
        prev_seg = s;
    };

    const double h = (hi - lo) / static_cast<double>(points - 1);
    double cell_lo = lo;
    push(lo);
    for (long k = 1; k < points; ++k) {
        const double x = lo + h * static_cast<double>(k);
        auto first = std::upper_bound(breaks.begin(), breaks.end(), cell_lo);
        auto last = std::upper_bound(breaks.begin(), breaks.end(), x);
        if (first != last) {
            std::vector<double> extra;
            for (auto it = first; it != last; ++it) {
                const double b = *it;
                const double left = it == first ? cell_lo : *(it - 1);
                const double right = (it + 1) == last ? x : *(it + 1);
                for (int j = 1; j < 64; ++j) {
                    extra.push_back(b - (b - left) * std::ldexp(1.0, -j));
                    extra.push_back(b + (right - b) * std::ldexp(1.0, -j));
                }
            }
            std::sort(extra.begin(), extra.end());
            for (double e : extra) {
                if (e > cell_lo && e < x) push(e);
            }
        }
        push(x);
        cell_lo = x;
    }
    return roots;
}

/// Number of sign changes only (no refinement), same rules as scan_roots.
inline long count_sign_changes(const std::function<double(double)>& f, double lo, double hi, long points,
                               std::vector<double> breaks = {}) {
    return static_cast<long>(scan_roots(f, lo, hi, points, std::move(breaks), false).size());
}

/// Set partitions of {1..k} counted by number of blocks (entry i), by
/// enumerating restricted growth strings.
inline std::vector<std::uint64_t> partition_counts(int k) {
    std::vector<std::uint64_t> count(k + 1, 0);
    if (k == 0) {
        count[0] = 1;
        return count;
    }
    std::function<void(int, int)> rec = [&](int pos, int maxv) {
        if (pos == k) {
            ++count[maxv + 1];
            return;
        }
        for (int v = 0; v <= maxv + 1; ++v) rec(pos + 1, std::max(maxv, v));
    };
    rec(1, 0);
    return count;
}

inline std::uint64_t count_partitions(int k, int i) {
    if (i < 0 || i > k) return 0;
    return partition_counts(k)[i];
}

inline std::uint64_t bell_number(int k) {
    std::uint64_t total = 0;
    for (std::uint64_t c : partition_counts(k)) total += c;
    return total;
}

/// L_n^(alpha)(x) = sum_k (-1)^k C(n+alpha, n-k) x^k / k!, long double.
inline long double laguerre_direct(int n, int alpha, long double x) {
    long double sum = 0.0L;
    for (int k = 0; k <= n; ++k) {
        const long double binom = std::exp(std::lgamma(static_cast<long double>(n + alpha + 1)) -
                                           std::lgamma(static_cast<long double>(n - k + 1)) -
                                           std::lgamma(static_cast<long double>(alpha + k + 1)));
        const long double term = binom * std::pow(x, k) / std::tgamma(static_cast<long double>(k + 1));
        sum += (k % 2 ? -term : term);
    }
    return sum;
}

/// B_n(-2/m) from the integer m^n B_n(-2/m) = sum_k (-1)^k (n+k)!/(k!(n-k)!) m^{n-k},
/// summed exactly in 128 bits. Returns false if an intermediate overflows.
inline bool bessel_exact(int n, int m, long double& out) {
    using I = __int128;
    I total = 0;
    for (int k = 0; k <= n; ++k) {
        // (n+k)!/(k!(n-k)!) = C(n+k, k) * C(n, k) * k! / ... built incrementally as prod (n-j)(n+1+j)/(j+1)
        I coeff = 1;
        for (int j = 0; j < k; ++j) {
            if (__builtin_mul_overflow(coeff, static_cast<I>((n - j) * static_cast<long>(n + 1 + j)), &coeff)) return false;
            coeff /= (j + 1);  // exact: partial products are integers
        }
        I term = coeff;
        for (int j = 0; j < n - k; ++j) {
            if (__builtin_mul_overflow(term, static_cast<I>(m), &term)) return false;
        }
        if (__builtin_add_overflow(total, k % 2 ? -term : term, &total)) return false;
    }
    out = static_cast<long double>(total) / std::pow(static_cast<long double>(m), n);
    return true;
}

/// log L_n^(alpha)(x) for x <= 0, where every term of the sum is positive.
inline double laguerre_log_negative(int n, int alpha, double x) {
    std::vector<double> logs;
    for (int k = 0; k <= n; ++k) {
        const double lb = std::lgamma(n + alpha + 1.0) - std::lgamma(n - k + 1.0) - std::lgamma(alpha + k + 1.0);
        logs.push_back(lb + (k ? k * std::log(-x) : 0.0) - std::lgamma(k + 1.0));
    }
    const double top = *std::max_element(logs.begin(), logs.end());
    double acc = 0.0;
    for (double l : logs) acc += std::exp(l - top);
    return top + std::log(acc);
}

/// Taylor series of classical W_0: sum (-n)^{n-1} x^n / n!.
inline double w0_series(double x, int terms = 40) {
    double sum = 0.0;
    for (int n = 1; n <= terms; ++n) {
        const double c = std::pow(-static_cast<double>(n), n - 1) / std::tgamma(n + 1.0);
        sum += c * std::pow(x, n);
    }
    return sum;
}

/// x e^x = a by bisection on a branch interval.
inline double lambert_bisect(double a, bool principal) {
    auto f = [a](double x) { return x * std::exp(x) - a; };
    if (principal) return bisect(f, -1.0, std::max(1.0, std::log(std::max(a, 1.0)) + 1.0));
    double lo = -2.0;
    while (f(lo) <= 0.0) lo *= 2.0;
    return bisect(f, lo, -1.0);
}

}  // namespace oracle
