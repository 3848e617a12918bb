#pragma once

#include <Eigen/Dense>

#include "tfloc/grid.hpp"

namespace tfloc {

/// Dense eigensolves stay under a minute up to this many cells.
inline constexpr std::size_t kDefaultCellCap = 6000;

struct SchattenNorms {
    double s1 = 0.0;
    double s2 = 0.0;
    double s4 = 0.0;
    double sinf = 0.0;
};

struct SpectralResult {
    std::vector<double> eigenvalues;  // descending
    double h = 0.0;
    double omega_measure = 0.0;
    SchattenNorms schatten;
};

/// Compression of the localization operator to the cells of Omega:
/// M_ij = <phi_{z_i}, phi_{z_j}> h^2. Hermitian; its nonzero spectrum
/// approximates that of the full operator.
Eigen::MatrixXcd build_operator_matrix(const GridRegion& omega,
                                       std::size_t cell_cap = kDefaultCellCap);

/// All eigenvalues of a Hermitian matrix, descending.
std::vector<double> eigenvalues(const Eigen::MatrixXcd& m);

/// (sum lambda^p)^{1/p} with negative eigenvalues clipped to zero;
/// p = infinity gives the largest eigenvalue.
double schatten_norm(const std::vector<double>& eigs, double p);

/// Full pipeline: matrix, spectrum, Schatten norms for p in {1, 2, 4, inf}.
SpectralResult analyze_region(const GridRegion& omega,
                              std::size_t cell_cap = kDefaultCellCap);

}  // namespace tfloc
