#include "tfloc/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tfloc/hs.hpp"

namespace tfloc {

Eigen::MatrixXcd build_operator_matrix(const GridRegion& omega,
                                       std::size_t cell_cap) {
    const GridSpec& spec = omega.spec;
    std::vector<Vec2> centers;
    for (int iy = 0; iy < spec.ny; ++iy)
        for (int ix = 0; ix < spec.nx; ++ix)
            if (omega.at(ix, iy)) centers.push_back(spec.center(ix, iy));
    if (centers.empty())
        throw input_error("build_operator_matrix: region is empty");
    if (centers.size() > cell_cap)
        throw input_error("build_operator_matrix: cell cap exceeded (" +
                          std::to_string(centers.size()) + " > " +
                          std::to_string(cell_cap) + ")");
    const std::size_t n = centers.size();
    const double h2 = spec.h * spec.h;
    Eigen::MatrixXcd m(n, n);
    parallel_for(n, [&](std::size_t i) {
        for (std::size_t j = 0; j < n; ++j) {
            const complex_t k = coherent_overlap_closed(centers[i], centers[j]);
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                k * h2;
        }
    });
    return m;
}

std::vector<double> eigenvalues(const Eigen::MatrixXcd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
        m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw numeric_error("eigenvalues: Hermitian eigensolve failed");
    const auto& ev = solver.eigenvalues();
    std::vector<double> out(ev.data(), ev.data() + ev.size());
    std::sort(out.begin(), out.end(), std::greater<double>());
    return out;
}

double schatten_norm(const std::vector<double>& eigs, double p) {
    if (eigs.empty()) return 0.0;
    if (!(p >= 1.0))
        throw input_error("schatten_norm: p must be >= 1 or infinity");
    if (std::isinf(p)) return std::max(0.0, eigs.front());
    double s = 0.0;
    for (double lam : eigs)
        if (lam > 0.0) s += std::pow(lam, p);
    return std::pow(s, 1.0 / p);
}

SpectralResult analyze_region(const GridRegion& omega, std::size_t cell_cap) {
    SpectralResult out;
    out.h = omega.spec.h;
    out.omega_measure = measure(omega);
    out.eigenvalues = eigenvalues(build_operator_matrix(omega, cell_cap));
    // The continuum operator is positive; clip small negative round-off.
    const double lam_max = out.eigenvalues.empty() ? 0.0 : out.eigenvalues[0];
    const double clip =
        10.0 * std::numeric_limits<double>::epsilon() * std::abs(lam_max);
    for (double& lam : out.eigenvalues)
        if (lam < 0.0 && -lam < clip) lam = 0.0;
    out.schatten.s1 = schatten_norm(out.eigenvalues, 1.0);
    out.schatten.s2 = schatten_norm(out.eigenvalues, 2.0);
    out.schatten.s4 = schatten_norm(out.eigenvalues, 4.0);
    out.schatten.sinf =
        schatten_norm(out.eigenvalues, std::numeric_limits<double>::infinity());
    return out;
}

}  // namespace tfloc
