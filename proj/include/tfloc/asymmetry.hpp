#pragma once

#include "tfloc/grid.hpp"

namespace tfloc {

struct AsymmetryResult {
    double alpha = 0.0;      // in [0, 2)
    Vec2 best_center{};      // center of the best ball found
    long evaluations = 0;    // total objective evaluations
    bool converged = false;  // best start hit the center tolerance
};

/// Fraenkel asymmetry index: minimizes |Omega symdiff B(c, r*)| / |Omega|
/// over the ball center c, with r* fixed by |B| = |Omega|. Multi-start
/// Nelder-Mead (centroid plus 8 perturbed starts at spacing r*/2), center
/// tolerance 1e-3 r*. The result is an upper bound on the true infimum.
AsymmetryResult fraenkel(const GridRegion& omega);

/// Brute-force reference: evaluates the objective on a center lattice of
/// the given step over the support bounding box (plus r*) and returns the
/// minimum. Slow; used as an oracle in tests.
double fraenkel_center_sweep(const GridRegion& omega, double step);

}  // namespace tfloc
