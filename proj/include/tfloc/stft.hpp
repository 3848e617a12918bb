#pragma once

#include "tfloc/grid.hpp"

namespace tfloc {

/// Uniformly sampled complex signal on the line.
struct Signal {
    std::vector<complex_t> samples;
    double time_step = 0.0;
    double t0 = 0.0;  // time of the first sample

    double time_at(std::size_t j) const { return t0 + j * time_step; }
    double norm2_sq() const;  // sum |f|^2 dt
};

/// The Gaussian window phi(t) = 2^{1/4} e^{-pi t^2}, sampled.
Signal sample_gaussian_window(double half_width = 6.0, double dt = 0.005);

/// n-th Hermite function (unit L^2 norm, Fourier eigenfunction), sampled.
Signal sample_hermite(int order, double half_width = 7.0, double dt = 0.005);

/// Random unit-norm finite Hermite combination with decaying coefficients;
/// analytic decay guarantees the support precondition of the transform.
Signal random_hermite_combination(unsigned seed, int max_order = 6,
                                  double half_width = 7.0, double dt = 0.005);

/// Phase-space grid [-extent, extent]^2 with cell centers on the lattice.
GridSpec default_phase_grid(double extent = 6.0, double h = 0.05);

/// Short-time Fourier transform with the Gaussian window, by direct
/// quadrature per grid point (window truncated at radius 3.2). The grid
/// must cover the signal's effective time support with margin 3.2.
GridField stft_gaussian(const Signal& f, const GridSpec& spec);

/// Spectrogram energy on a region: cell sum of |V|^2 over Omega times h^2.
double local_energy(const GridField& v, const GridRegion& omega);

struct QuadraticFormCheck {
    double lhs = 0.0;  // <chi_Omega V f, V f> summed on the grid
    double rhs = 0.0;  // <L_Omega f, f> via synthesis back in the time domain
    double gap = 0.0;
};

/// Two-route check of the localization quadratic form.
QuadraticFormCheck quadratic_form_check(const Signal& f,
                                        const GridRegion& omega);

struct LiebReport {
    double lhs = 0.0;    // sum |V f|^p h^2
    double rhs = 0.0;    // (2/p) ||f||_2^p
    double slack = 0.0;  // rhs - lhs
};

/// L^p spectrogram bound check, p in [2, 8].
LiebReport lieb_check(const Signal& f, const GridField& v, double p);

}  // namespace tfloc
