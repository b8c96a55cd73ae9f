#pragma once

#include <optional>

#include "genlambert/genw.hpp"

namespace genlambert {

// ---- double-well Dirac delta model ----------------------------------------

struct DoubleWellParams {
    double q = 1.0;  ///< well depth, > 0
    double R = 1.0;  ///< separation, > 0
};

struct DoubleWellLevels {
    double d_plus = 0.0;
    double d_minus = 0.0;
    double e_plus = 0.0;   ///< -d_plus^2 / 2
    double e_minus = 0.0;  ///< -d_minus^2 / 2
};

/// d = q + W_0(+-qR e^{-qR}) / R solves d = q (1 +- e^{-dR}).
/// For qR <= 1 the odd level collapses to d_minus = 0.
DoubleWellLevels double_well_levels(const DoubleWellParams& p);

// ---- e^{-cx} = a0 (x - t1)(x - t2) -----------------------------------------

SolutionSet solve_quadratic_exp(double c, double a0, double t1, double t2,
                                const SolveOptions& opts = {});

// ---- second-order delay differential equation ------------------------------

/// (lambda - t1)(lambda - t2) = b1 e^{-lambda tau} (lambda - s1)
struct Dde2Params {
    double t1 = 0.0;
    double t2 = 0.0;
    double s1 = 0.0;
    double b1 = 0.0;
    double tau = 1.0;  ///< > 0
};

struct Dde2Roots {
    SolutionSet roots;  ///< real lambda, ascending
    std::optional<double> rightmost;
    /// rightmost < 0; says nothing about complex roots. Empty when there is
    /// no real root.
    std::optional<bool> real_spectrum_stable;
};

/// Left minus right side of the characteristic equation.
double dde2_characteristic(const Dde2Params& p, double lambda);

/// Real characteristic roots via x = lambda tau:
///   e^x (x - tau t1)(x - tau t2) / (x - tau s1) = b1 tau.
/// A lower root equal to an upper root is cancelled and kept as a root.
/// Throws DomainError for tau <= 0.
Dde2Roots dde2_real_roots(const Dde2Params& p, const SolveOptions& opts = {});

// ---- water-wave dispersion --------------------------------------------------

struct DispersionParams {
    double omega = 1.0;  ///< rad/s
    double g = 9.81;
    double h = 1.0;
    double rho1 = 0.0;  ///< lower layer density; ignored when rho2 = 0
    double rho2 = 0.0;  ///< upper layer density; 0 selects the single-layer relation
};

struct DispersionSolution {
    double k = 0.0;  ///< wavenumber
    double x = 0.0;  ///< k h
    double y = 0.0;  ///< omega^2 h / g
};

/// Inverts omega^2 = g k tanh(kh), or the two-layer relation
/// omega^2 = g k (rho1 - rho2) / (rho1 coth(kh) + rho2), through
/// e^{2x} = (x + y) / (x - c y), c = (rho1 + rho2)/(rho1 - rho2), solved as
/// x = W(2cy; -2y; 1) / 2. Throws DomainError for non-positive omega, g, h
/// or rho1 <= rho2 with rho2 > 0.
DispersionSolution invert_dispersion(const DispersionParams& p);

// ---- Langevin function --------------------------------------------------------

/// coth(x) - 1/x; odd, range (-1, 1).
double langevin(double x);

double langevin_deriv(double x);

/// L^{-1}(a) = -W(2/(a+1); 2/(a-1); (a-1)/(a+1)) / 2, taking the nonzero
/// root of the generalized equation (X = 0 always solves it).
/// Throws DomainError for |a| >= 1.
double inverse_langevin(double a);

/// Safeguarded Newton on L(x) = a over [3|a|, 1/(1-|a|)].
double inverse_langevin_direct(double a);

}  // namespace genlambert
