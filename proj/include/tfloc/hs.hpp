#pragma once

#include "tfloc/grid.hpp"
#include "tfloc/rearrange.hpp"

namespace tfloc {

/// Radius beyond which the Gaussian kernel stencil is truncated:
/// e^{-pi R_c^2} < 1e-14.
inline constexpr double kKernelCutoff = 3.2;

enum class HSMethod {
    grid_direct,       // truncated stencil double sum, midpoint sampling
    grid_convolution,  // separable two-pass sweep, same discretization
    grid_cell_exact,   // cell-pair integrated Gaussian (exact for the
                       // piecewise-constant field)
    radial_bessel,     // 1-D quadrature of the radial Fourier representation
};

const char* to_string(HSMethod m);

struct HSResult {
    double hs_sq = 0.0;
    HSMethod method = HSMethod::grid_direct;
    double resolution = 0.0;       // grid h, or quadrature abs tolerance
    double estimated_error = 0.0;  // truncation/quadrature error estimate
};

/// |<phi_z, phi_w>|^2 = e^{-pi |z-w|^2}.
double gauss_kernel_sq(const Vec2& z, const Vec2& w);

/// <phi_z, phi_w> for time-frequency shifted Gaussians (d = 1), by direct
/// numerical quadrature in the time domain.
complex_t coherent_overlap(const Vec2& z, const Vec2& w);

/// Closed form of the same overlap; used for matrix assembly.
complex_t coherent_overlap_closed(const Vec2& z, const Vec2& w);

/// Bessel function J_nu of integer order; wraps the standard-library
/// implementation (accuracy cross-checked against the integral
/// representation in tests).
double bessel_j(int nu, double x);

/// Fourier transform of chi_{B_r} in R^{2d}, evaluated at radius rho > 0.
double ball_fourier(double r, double rho, int d);

/// HS norm squared of L_F via the grid double sum (midpoint sampling).
HSResult hs_norm_sq_grid(const GridField& field,
                         HSMethod method = HSMethod::grid_direct);

/// HS norm squared of L_F treating F as exactly piecewise constant on
/// cells: cell pairs carry the exact integral of the Gaussian kernel.
HSResult hs_norm_sq_cells_exact(const GridField& field);
HSResult hs_norm_sq_cells_exact(const GridRegion& omega);

/// HS norm squared of L_Omega for a radial region via the Bessel route.
HSResult hs_norm_sq_radial(const RadialRegion& omega);

/// HS norm squared of L_{F} for a radial decreasing profile (same route).
HSResult hs_norm_sq_profile(const RadialProfile& profile);

/// I(f, g) = iint chi_f(z) e^{-pi |z-w|^2} chi_g(w) dz dw for two radial
/// regions whose centers are `offset` apart (offset > 0 requires n = 2).
double gauss_pair_radial(const RadialRegion& f, const RadialRegion& g,
                         double offset = 0.0);

/// Same functional between two grid masks with cell-exact pair weights.
/// Grids must share h and lie on a common lattice.
double gauss_pair_cells_exact(const GridRegion& f, const GridRegion& g);

/// tr L_Omega = |Omega| (coherent states are unit norm).
double trace_localization(const GridRegion& omega);
double trace_localization(const RadialRegion& omega);

}  // namespace tfloc
