#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace genlambert {

/// Parameters of e^x * prod(x - t_i) / prod(x - s_j) = a.
struct GenWParams {
    std::vector<double> upper;  ///< t_1..t_n
    std::vector<double> lower;  ///< s_1..s_m
    double a = 0.0;
};

struct Root {
    double x = 0.0;
    double residual = 0.0;  ///< |F(x) - a|
    std::size_t branch_index = 0;
    int multiplicity = 1;     ///< 2 for a tangency at a critical point of F
    bool within_tol = true;   ///< false if no double reaches the residual bound
};

/// One monotone segment of F examined during the solve. g_lo and g_hi are
/// F - a at the evaluated ends (+-inf stands for a pole or tail limit).
struct ScannedInterval {
    double lo = 0.0;
    double hi = 0.0;
    double g_lo = 0.0;
    double g_hi = 0.0;
    bool root_found = false;
    /// A root lies closer to a pole (or further out a tail) than double
    /// precision can resolve; nothing was returned for it.
    bool unresolved = false;
};

struct SolutionSet {
    std::vector<Root> roots;  ///< strictly ascending in x
    std::vector<ScannedInterval> bracket_report;
    double domain_lo = 0.0;  ///< span of x actually evaluated
    double domain_hi = 0.0;
    double tol = 0.0;

    std::vector<double> values() const;
};

struct SolveOptions {
    double tol = 1e-12;
    /// Hard limits on the search; by default the tails are followed until
    /// the monotone limit rules out further roots.
    std::optional<double> xmin;
    std::optional<double> xmax;
};

/// F(x) = e^x prod(x - t_i) / prod(x - s_j).
double evaluate(const GenWParams& p, double x);

/// All real solutions of F(x) = a, ascending.
///
/// The line is cut at the poles s_j, the critical points of F (real roots of
/// a polynomial obtained by clearing F'/F) and the repeated t_i. F is
/// monotone between consecutive cuts, so each piece holds at most one root,
/// found by bracketed Newton. A critical value within tol of a is reported
/// as a single root with multiplicity 2.
///
/// Throws DomainError when both parameter lists are empty and a <= 0, and
/// DegenerateInput when an upper and a lower parameter coincide. An empty
/// result is not an error.
SolutionSet solve_all(const GenWParams& p, const SolveOptions& opts);
SolutionSet solve_all(const GenWParams& p, double tol = 1e-12);

/// Closed forms for the parameter shapes that reduce to log or classical W.
enum class ClosedFormKind {
    Log,          ///< x = log(a)
    ShiftedW,     ///< x = shift + W(argument),  argument = a e^{-t}
    ReflectedW,   ///< x = shift - W(argument),  argument = -e^{s} / a
};

struct ClosedForm {
    ClosedFormKind kind = ClosedFormKind::Log;
    double shift = 0.0;
    double argument = 0.0;
    int branch_count = 0;  ///< number of real solutions (0, 1 or 2)

    /// The real solutions, ascending.
    std::vector<double> values() const;
};

/// Recognizes (n, m) in {(0,0), (1,0), (0,1)}; empty otherwise.
std::optional<ClosedForm> reduce_special(const GenWParams& p);

/// e^{-c x} = a0 prod(x - t_i) / prod(x - s_j), parameters before scaling.
struct RationalExpEquation {
    double c = 1.0;
    double a0 = 1.0;
    std::vector<double> upper_raw;
    std::vector<double> lower_raw;
};

/// Canonical parameters for a RationalExpEquation together with the
/// back-map x = X / c.
struct CanonicalForm {
    GenWParams params;
    double c = 1.0;

    double to_original(double canonical_x) const { return canonical_x / c; }
};

/// upper = c t_i, lower = c s_j, a = c^{n-m} / a0.
/// Throws DomainError for c = 0 or a0 = 0, DegenerateInput on a shared value.
CanonicalForm canonicalize(const RationalExpEquation& eq);

/// Left-hand side minus right-hand side of the raw equation.
double raw_residual(const RationalExpEquation& eq, double x);

/// Solves the raw equation through canonicalize; roots are re-sorted after
/// the back-map and residuals are measured on the raw equation.
SolutionSet solve_rational_exp(const RationalExpEquation& eq, const SolveOptions& opts);

}  // namespace genlambert
