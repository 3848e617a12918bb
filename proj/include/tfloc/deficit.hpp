#pragma once

#include "tfloc/asymmetry.hpp"
#include "tfloc/hs.hpp"
#include "tfloc/rearrange.hpp"

namespace tfloc {

/// Raised when an exponent fit is underdetermined or degenerate.
struct fit_error : numeric_error {
    using numeric_error::numeric_error;
};

struct BetaParams {
    int d = 1;
    double c1 = 1.0;
    double c2 = 0.0;  // defaulted to 9 pi / (4 omega_{2d}^{1/d})

    explicit BetaParams(int d_ = 1);
};

/// beta(t) = t^{2+1/d} on (0, 1]; t^2 e^{-c2 (t^{1/d} - 1)} beyond.
/// The t > 1 branch carries a matching factor so beta is continuous at 1.
double beta(double t, const BetaParams& params);
double beta(double t, int d = 1);

/// Conjectured replacement: t^{2+1/d} on (0, 1]; t^{2-1/(2d)} beyond.
double beta_tilde(double t, int d = 1);

struct DeficitReport {
    double omega_measure = 0.0;
    double hs_sq = 0.0;
    double hs_sq_star = 0.0;
    double deficit = 0.0;  // hs_sq_star - hs_sq
    double alpha = 0.0;
    double beta_value = 0.0;
    double empirical_constant = 0.0;  // deficit / (beta_value alpha^2)
    bool alpha_analytic = false;      // alpha from geometry, not the optimizer
};

/// Deficit of a radial region: both sides via the radial route; alpha from
/// the exact centered-ball overlap (an upper bound on the infimum).
DeficitReport deficit_report(const RadialRegion& omega);

/// Deficit of a grid set: cell-exact route for Omega, radial route for the
/// rearranged profile (exact for the piecewise-constant indicator), alpha
/// from the optimizer.
DeficitReport deficit_report(const GridRegion& omega);

/// Deficit of a nonnegative grid field (weight version); alpha is not
/// defined for general weights and is reported as 0.
DeficitReport deficit_report(const GridField& field);

/// alpha against the origin-centered ball of equal measure, exact from the
/// annuli geometry.
double radial_alpha(const RadialRegion& omega);

/// Ball-with-moat family: annuli [0, 1-eps] and [1, 1+delta] in R^{2d},
/// delta fixed so the measure equals that of the unit ball exactly.
RadialRegion family_eps(double eps, int d = 1);

/// Annulus [r/3, r] plus the disc of radius r/3 centered at (2r, 0),
/// rasterized. Default cell size h = r/60.
GridRegion family_dumbbell(double r, double h = 0.0);

/// The same dumbbell as disjoint radial pieces (annulus + offset disc),
/// for the semi-analytic routes.
struct DumbbellPieces {
    RadialRegion annulus;  // [r/3, r] at the origin
    RadialRegion disc;     // B_{r/3}, centered at (2r, 0)
    double offset = 0.0;   // 2r
};
DumbbellPieces dumbbell_pieces(double r);

/// HS norm squared of a union of pairwise disjoint discs, by the radial
/// pair decomposition (exact up to quadrature).
double hs_union_of_balls(const std::vector<Ball>& balls);

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;  // RMS residual of the fit
};

/// Ordinary least squares of log(y) against log(x). Throws fit_error for
/// fewer than 3 points or nonpositive data.
FitResult fit_loglog(const std::vector<double>& x,
                     const std::vector<double>& y);

struct SweepPoint {
    double param = 0.0;
    DeficitReport report;
};

struct SweepResult {
    std::vector<SweepPoint> points;
    FitResult fit;
};

/// Deficit vs eps for family_eps; slope of log(deficit) against log(eps).
SweepResult sweep_eps(const std::vector<double>& eps, int d = 1);

/// Two far equal discs (unit discs at distance 10, scaled by r): deficit
/// against measure as the measure shrinks. alpha = 1 exactly for this
/// shape; optionally re-measured on the grid by the caller.
SweepResult sweep_dilate(const std::vector<double>& r);

/// Dumbbell family at large measure; deficit via the radial pair
/// decomposition, alpha = 2/9 from the construction (centered ball B_r).
SweepResult sweep_dumbbell(const std::vector<double>& r);

/// T(Omega, b) = iint over Omega x Omega of chi_{|x-y| < b}. The line mode
/// is exact (piecewise-linear autocorrelation); the grid mode is a cell sum.
double indicator_autocorrelation(const IntervalUnion& omega, double b);
double indicator_autocorrelation(const GridRegion& omega, double b);

/// Exact 1-D Fraenkel asymmetry of an interval union.
double interval_alpha(const IntervalUnion& omega);

struct Conjecture2Report {
    double lhs_deficit = 0.0;  // (T(Omega*, b) - T(Omega, b)) / 2
    double rhs_scale = 0.0;    // (|B_b|/|Omega|)^{1+1/d} |Omega|^2 alpha^2
    double ratio = 0.0;        // lhs / rhs (0 when alpha = 0)
    double alpha = 0.0;
    double b = 0.0;
    double length = 0.0;  // |Omega|
};

/// Line-mode probe of the conjectured quantitative autocorrelation bound.
/// Requires b / |Omega| <= 1 - delta.
Conjecture2Report conjecture2_probe(const IntervalUnion& omega, double b,
                                    double delta);

}  // namespace tfloc
