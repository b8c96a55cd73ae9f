#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace genlambert {

/// Monotone pieces of f(x) = x e^x + r x.
struct BranchStructure {
    double r = 0.0;
    /// Real roots of f'(x) = e^x (x + 1) + r, ascending. A double root
    /// (r = e^{-2}) is an inflection and is not listed.
    std::vector<double> critical_points;
    int branch_count = 1;
    /// (lo, hi) per branch, ascending; the outer ends are -inf / +inf.
    std::vector<std::pair<double, double>> branch_intervals;
};

struct RLambertQuery {
    double r = 0.0;
    double n = 0.0;
    std::size_t branch = 0;  ///< index into branch_intervals, 0 = leftmost
};

enum class AsymptoticDirection { PlusInf, MinusInf };

/// f(x) = x e^x + r x.
double r_lambert_map(double r, double x);

BranchStructure branch_structure(double r);

/// Solves x e^x + r x = n on the requested branch; empty when n lies outside
/// that branch's image. A value equal to a local extremum belongs to the
/// branch on its left.
/// Throws InvalidBranch when the index exceeds the branch count.
std::optional<double> r_lambert(const RLambertQuery& q, double tol = 1e-12);

/// Every real solution, ascending.
std::vector<double> r_lambert_all(double r, double n, double tol = 1e-12);

/// PlusInf: log x + log(1/log x - r/x), needs x > e.
/// MinusInf: x / r, needs r != 0.
/// Throws DomainError otherwise.
double r_lambert_asymptotic(double r, double x, AsymptoticDirection direction);

}  // namespace genlambert
