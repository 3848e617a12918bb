#pragma once

#include "tfloc/grid.hpp"

namespace tfloc {

/// Point of the upper half-plane, s > 0.
struct HypPoint {
    double x = 0.0;
    double s = 1.0;
};

/// Hyperbolic distance d(z, w) = 2 arctanh |(z - w)/(z - conj(w))|.
double d_hyp(const HypPoint& z, const HypPoint& w);

/// Hyperbolic ball of radius R about i = (0, 1): a Euclidean disc with
/// center (0, cosh R) and radius sinh R. nu_measure is computed by
/// numerical integration of dx ds / s^2 over the disc.
struct HypBall {
    double R = 0.0;
    Vec2 euclid_center{};
    double euclid_radius = 0.0;
    double nu_measure = 0.0;
};

HypBall hyp_ball(double R);

/// Closed form 2 pi (cosh R - 1); used to cross-check the integration.
double hyp_ball_nu_closed(double R);

struct CauchyWavelet {
    double beta = 1.0;
    double c_beta = 0.0;  // c^2 = 2 pi 2^{-2 beta} Gamma(2 beta)

    explicit CauchyWavelet(double b);
};

/// Fourier transform of the Cauchy wavelet: omega^beta e^{-omega} / c_beta
/// on omega > 0, zero otherwise.
double cauchy_wavelet_hat(double omega, double beta);

/// |W_psi psi(z)|^2 in closed form, and by quadrature of the Fourier-side
/// overlap sqrt(s) int psi_hat(w) e^{i x w} psi_hat(s w) dw.
double wavelet_selfoverlap_sq(const HypPoint& z, double beta);
double wavelet_selfoverlap_sq_quad(const HypPoint& z, double beta);

/// The radial kernel rho with rho(d(z, i)) = |W psi psi(z)|^2:
/// rho(t) = C [sech^2(t/2) / 4]^{2 beta + 1}, C = Gamma(2 beta + 1)^2 / c^4.
double cauchy_kernel(double t, double beta);

/// nu-measure of a half-plane grid region: sum of h^2 / s_c^2 over cells.
/// The grid must lie strictly above the x-axis.
double nu_measure(const GridRegion& region);

/// HS norm squared of the wavelet localization operator with weight F on a
/// half-plane grid: double cell sum of F rho(d) conj(F) with nu-weights.
double hyp_hs_norm_sq(const GridField& field, double beta);
double hyp_hs_norm_sq(const GridRegion& region, double beta);

/// Radius R with nu(ball) = nu(region), by monotone bisection against the
/// numerically integrated ball measure (matched to 1e-8 relative).
HypBall hyp_rearrange(const GridRegion& region);

/// Discrete rearrangement: fills target cells in order of hyperbolic
/// distance from i until the nu-measure of the region is reached.
GridRegion hyp_rearrange_grid(const GridRegion& region,
                              const GridSpec& target);

/// Double functional sum over f x h of g(d_hyp) with nu-weights, for
/// rearrangement-monotonicity experiments.
double hyp_riesz(const GridRegion& f, const std::function<double(double)>& g,
                 const GridRegion& h);

}  // namespace tfloc
