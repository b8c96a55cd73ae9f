#include "genlambert/polys.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "genlambert/errors.hpp"

namespace genlambert {

namespace {

PolyValue normalized(double m, std::int64_t e) {
    if (m == 0.0 || !std::isfinite(m)) return {m, 0};
    int shift = 0;
    const double frac = std::frexp(m, &shift);  // |frac| in [0.5, 1)
    return {frac * 2.0, e + shift - 1};
}

// Rescale the pair when either magnitude leaves [2^-400, 2^400].
void rebalance(double& a, double& b, std::int64_t& e) {
    const double big = std::max(std::abs(a), std::abs(b));
    if (big == 0.0) return;
    if (big > 0x1p400 || big < 0x1p-400) {
        int shift = 0;
        std::frexp(big, &shift);
        a = std::ldexp(a, -shift);
        b = std::ldexp(b, -shift);
        e += shift;
    }
}

}  // namespace

PolyValue PolyValue::from_double(double x) { return normalized(x, 0); }

PolyValue PolyValue::from_log(int sign, double log_abs) {
    if (sign == 0 || log_abs == -std::numeric_limits<double>::infinity()) return {};
    const double e = std::floor(log_abs / std::numbers::ln2);
    const double m = std::exp(log_abs - e * std::numbers::ln2);
    return normalized(sign < 0 ? -m : m, static_cast<std::int64_t>(e));
}

double PolyValue::log_scale() const { return static_cast<double>(exp2) * std::numbers::ln2; }

double PolyValue::log_abs() const {
    if (value == 0.0) return -std::numeric_limits<double>::infinity();
    return std::log(std::abs(value)) + log_scale();
}

double PolyValue::to_double() const {
    if (exp2 > 4096) return value * std::numeric_limits<double>::infinity();
    if (exp2 < -4096) return 0.0 * value;
    return std::ldexp(value, static_cast<int>(exp2));
}

PolyValue operator*(const PolyValue& lhs, const PolyValue& rhs) {
    return normalized(lhs.value * rhs.value, lhs.exp2 + rhs.exp2);
}

PolyValue operator*(const PolyValue& lhs, double rhs) {
    return lhs * PolyValue::from_double(rhs);
}

PolyValue operator/(const PolyValue& lhs, double rhs) {
    const PolyValue d = PolyValue::from_double(rhs);
    return normalized(lhs.value / d.value, lhs.exp2 - d.exp2);
}

PolyValue operator+(const PolyValue& lhs, const PolyValue& rhs) {
    if (lhs.is_zero()) return rhs;
    if (rhs.is_zero()) return lhs;
    const std::int64_t e = std::max(lhs.exp2, rhs.exp2);
    const auto align = [e](const PolyValue& v) {
        const std::int64_t d = v.exp2 - e;
        return d < -1100 ? 0.0 : std::ldexp(v.value, static_cast<int>(d));
    };
    return normalized(align(lhs) + align(rhs), e);
}

PolyValue laguerre(int n, int alpha, double x) {
    if (n < 0 || alpha < 0) throw DomainError("laguerre: n and alpha must be non-negative");
    if (n == 0) return PolyValue::from_double(1.0);
    const double al = alpha;
    double prev = 1.0;
    double cur = 1.0 + al - x;
    std::int64_t e = 0;
    for (int k = 1; k < n; ++k) {
        const double next = ((2.0 * k + 1.0 + al - x) * cur - (k + al) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
        rebalance(prev, cur, e);
    }
    return normalized(cur, e);
}

PolyValue laguerre_deriv(int n, double x) {
    if (n < 1) throw DomainError("laguerre_deriv: n must be >= 1");
    return -laguerre(n - 1, 1, x);
}

namespace {

struct TermSum {
    PolyValue sum;
    PolyValue mass;  // sum of |terms|
};

TermSum bessel_direct(int n, double z) {
    // term_{k+1} / term_k = (n+k+1)(n-k) / (k+1) * z/2
    PolyValue term = PolyValue::from_double(1.0);
    TermSum out{term, term};
    for (int k = 0; k < n; ++k) {
        const double ratio = (static_cast<double>(n + k + 1) * (n - k)) / (k + 1.0);
        term = term * ratio * (0.5 * z);
        out.sum = out.sum + term;
        out.mass = out.mass + PolyValue{std::abs(term.value), term.exp2};
    }
    return out;
}

/// Modified spherical Bessel function i_n(w) = w^n sum_k (w^2/2)^k / (k! (2n+2k+1)!!),
/// w > 0; every term is positive.
PolyValue spherical_i(int n, double w) {
    const double log_double_factorial = std::lgamma(2.0 * n + 2.0) - n * std::log(2.0) - std::lgamma(n + 1.0);
    PolyValue term = PolyValue::from_log(1, n * std::log(w) - log_double_factorial);
    PolyValue sum = term;
    const double half_w2 = 0.5 * w * w;
    for (int k = 0; k < 1000000; ++k) {
        const double ratio = half_w2 / ((k + 1.0) * (2.0 * n + 2.0 * k + 3.0));
        term = term * ratio;
        sum = sum + term;
        if (ratio < 1.0 && term.log_abs() < sum.log_abs() - 40.0) break;
    }
    return sum;
}

double cancellation(const PolyValue& sum, const PolyValue& mass) {
    if (sum.is_zero()) return std::numeric_limits<double>::infinity();
    return mass.log_abs() - sum.log_abs();
}

}  // namespace

PolyValue bessel_poly(int n, double z) {
    if (n < 0) throw DomainError("bessel_poly: n must be non-negative");
    const TermSum direct = bessel_direct(n, z);
    const double direct_loss = cancellation(direct.sum, direct.mass);
    if (z >= 0.0 || direct_loss < std::log(1e2)) return direct.sum;

    // For small negative z the sum cancels badly. With w = -1/z,
    //   B_n(-1/w) = 2w e^{-w} i_n(w) + (-1)^n e^{-2w} B_n(1/w),
    // a combination of two positive quantities that rarely cancel.
    const double w = -1.0 / z;
    const PolyValue first = spherical_i(n, w) * PolyValue::from_log(1, std::log(2.0 * w) - w);
    PolyValue second = bessel_direct(n, -z).sum * PolyValue::from_log(1, -2.0 * w);
    if (n % 2 == 1) second = -second;
    const PolyValue alt = first + second;
    const PolyValue alt_mass = first + PolyValue{std::abs(second.value), second.exp2};
    // an exact zero from the direct sum stands if the alternative is only rounding noise
    if (direct.sum.is_zero() && alt.log_abs() < direct.mass.log_abs() + std::log(1e-14)) return direct.sum;
    return cancellation(alt, alt_mass) < direct_loss ? alt : direct.sum;
}

StirlingInt stirling2(int k, int i) {
    if (k < 0 || i < 0 || i > k) throw DomainError("stirling2: requires 0 <= i <= k");
    std::vector<StirlingInt> row{1};  // k = 0
    for (int kk = 1; kk <= k; ++kk) {
        std::vector<StirlingInt> next(kk + 1, 0);
        for (int j = 1; j <= kk; ++j) {
            StirlingInt scaled = 0;
            const StirlingInt same = j < kk ? row[j] : 0;
            if (__builtin_mul_overflow(same, static_cast<StirlingInt>(j), &scaled) ||
                __builtin_add_overflow(scaled, row[j - 1], &next[j])) {
                // only the entries needed for S(k, i) have to fit
                if (kk - j <= k - i && j <= i) {
                    throw OverflowError("stirling2: S(" + std::to_string(k) + "," +
                                        std::to_string(i) + ") exceeds 128 bits");
                }
                next[j] = 0;
            }
        }
        row = std::move(next);
    }
    return row[i];
}

std::string to_string(StirlingInt value) {
    if (value == 0) return "0";
    std::string out;
    while (value > 0) {
        out.push_back(static_cast<char>('0' + static_cast<int>(value % 10)));
        value /= 10;
    }
    return {out.rbegin(), out.rend()};
}

std::vector<std::vector<PolyValue>> stirling2_table(int kmax) {
    std::vector<std::vector<PolyValue>> table;
    table.push_back({PolyValue::from_double(1.0)});
    for (int k = 1; k <= kmax; ++k) {
        const auto& prev = table.back();
        std::vector<PolyValue> row(k + 1);
        for (int j = 1; j <= k; ++j) {
            const PolyValue same = j < k ? prev[j] * static_cast<double>(j) : PolyValue{};
            row[j] = same + prev[j - 1];
        }
        table.push_back(std::move(row));
    }
    return table;
}

PolyValue rising_factorial(double n, int i) {
    PolyValue acc = PolyValue::from_double(1.0);
    for (int j = 0; j < i; ++j) acc = acc * (n + j);
    return acc;
}

PolyValue m_poly_scaled(const std::vector<PolyValue>& stirling_row, int n, double y) {
    const int k = static_cast<int>(stirling_row.size()) - 1;
    PolyValue rising = PolyValue::from_double(1.0);
    PolyValue power = PolyValue::from_double(1.0);
    PolyValue sum;
    for (int i = 1; i <= k; ++i) {
        rising = rising * static_cast<double>(n + i - 1);
        power = power * (-y);
        sum = sum + rising * stirling_row[i] * power;
    }
    return sum;
}

PolyValue m_poly_scaled(int k, int n, double y) {
    if (k < 1 || n < 1) throw DomainError("m_poly: k and n must be >= 1");
    return m_poly_scaled(stirling2_table(k).back(), n, y);
}

double m_poly(int k, int n, double y) { return m_poly_scaled(k, n, y).to_double(); }

}  // namespace genlambert
