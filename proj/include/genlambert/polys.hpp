#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace genlambert {

/// Real number stored as mantissa * 2^exp2, so that Laguerre and Bessel
/// values at arguments n*T (n in the hundreds) neither overflow nor
/// underflow. The mantissa is kept in [1, 2) in magnitude, or is zero.
struct PolyValue {
    double value = 0.0;
    std::int64_t exp2 = 0;

    static PolyValue from_double(double x);
    /// sign * exp(log_abs)
    static PolyValue from_log(int sign, double log_abs);

    /// Natural-log exponent: the represented quantity is value * exp(log_scale()).
    double log_scale() const;
    /// log|x|, -inf for zero.
    double log_abs() const;
    int sign() const { return (value > 0.0) - (value < 0.0); }
    bool is_zero() const { return value == 0.0; }
    /// Nearest double; saturates to +-inf or 0 outside the double range.
    double to_double() const;

    PolyValue operator-() const { return {-value, exp2}; }
    friend PolyValue operator*(const PolyValue& lhs, const PolyValue& rhs);
    friend PolyValue operator*(const PolyValue& lhs, double rhs);
    friend PolyValue operator/(const PolyValue& lhs, double rhs);
    friend PolyValue operator+(const PolyValue& lhs, const PolyValue& rhs);
    friend PolyValue operator-(const PolyValue& lhs, const PolyValue& rhs) { return lhs + (-rhs); }
};

/// Generalized Laguerre polynomial L_n^(alpha)(x) by the three-term recurrence.
PolyValue laguerre(int n, int alpha, double x);

/// Derivative of the ordinary Laguerre polynomial, L_n'(x) = -L_{n-1}^(1)(x).
/// Throws DomainError for n < 1.
PolyValue laguerre_deriv(int n, double x);

/// Bessel polynomial B_n(z) = sum_k (n+k)!/(k!(n-k)!) (z/2)^k.
PolyValue bessel_poly(int n, double z);

using StirlingInt = unsigned __int128;

/// Stirling number of the second kind S(k, i), exact.
/// Throws DomainError if i > k or either is negative, OverflowError past 128 bits.
StirlingInt stirling2(int k, int i);

std::string to_string(StirlingInt value);

/// Rows 0..kmax of S(k, i) in scaled floating point; row k has k+1 entries.
std::vector<std::vector<PolyValue>> stirling2_table(int kmax);

/// Rising factorial n (n+1) ... (n+i-1).
PolyValue rising_factorial(double n, int i);

/// M_k^(n)(y) = sum_{i=1}^{k} n^(rising i) S(k,i) (-y)^i.
PolyValue m_poly_scaled(int k, int n, double y);

/// Same value rounded to double.
double m_poly(int k, int n, double y);

/// Variant reusing a precomputed Stirling row (row k of stirling2_table).
PolyValue m_poly_scaled(const std::vector<PolyValue>& stirling_row, int n, double y);

}  // namespace genlambert
