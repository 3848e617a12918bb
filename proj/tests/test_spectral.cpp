#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "tfloc/hs.hpp"
#include "tfloc/rearrange.hpp"
#include "tfloc/spectral.hpp"

using namespace tfloc;

namespace {

GridRegion disc_region(double r, double h) {
    const GridSpec spec =
        make_grid_covering({{{0.0, 0.0}, r}}, h, 2.0 * h);
    return rasterize(RadialRegion(2, {{0.0, r}}), spec);
}

}  // namespace

TEST_CASE("single cell gives a 1x1 matrix with entry h^2") {
    GridRegion reg(GridSpec({0.0, 0.0}, 0.1, 3, 3));
    reg.mask[reg.spec.index(1, 1)] = 1;
    const Eigen::MatrixXcd m = build_operator_matrix(reg);
    REQUIRE(m.rows() == 1);
    CHECK(m(0, 0).real() == doctest::Approx(0.01).epsilon(1e-14));
    CHECK(m(0, 0).imag() == 0.0);
}

TEST_CASE("matrix is Hermitian") {
    const GridRegion reg = disc_region(0.5, 0.1);
    const Eigen::MatrixXcd m = build_operator_matrix(reg);
    CHECK((m - m.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("empty regions and the cell cap are rejected") {
    GridRegion empty(GridSpec({0.0, 0.0}, 0.1, 3, 3));
    CHECK_THROWS_AS(build_operator_matrix(empty), input_error);
    const GridRegion big = disc_region(1.0, 0.05);
    CHECK_THROWS_WITH_AS(build_operator_matrix(big, 100),
                         doctest::Contains("cell cap"), input_error);
}

TEST_CASE("eigenvalues of a diagonal matrix come back descending") {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
    m(0, 0) = 0.1;
    m(1, 1) = 0.3;
    const std::vector<double> ev = eigenvalues(m);
    REQUIRE(ev.size() == 2);
    CHECK(ev[0] == doctest::Approx(0.3));
    CHECK(ev[1] == doctest::Approx(0.1));
}

TEST_CASE("Schatten norms from a fixed spectrum") {
    const std::vector<double> eigs = {0.5, 0.5};
    CHECK(schatten_norm(eigs, 2.0) ==
          doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
    CHECK(schatten_norm(eigs, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(schatten_norm(eigs, std::numeric_limits<double>::infinity()) ==
          0.5);
    CHECK_THROWS_AS(schatten_norm(eigs, 0.5), input_error);
}

TEST_CASE("spectral identities for the unit disc") {
    const GridRegion reg = disc_region(1.0, 0.05);
    const SpectralResult res = analyze_region(reg);
    // trace = |Omega| exactly on the grid, and within 1% of pi.
    CHECK(res.schatten.s1 ==
          doctest::Approx(res.omega_measure).epsilon(1e-10));
    CHECK(res.schatten.s1 == doctest::Approx(kPi).epsilon(0.01));
    // Frobenius identity against the grid HS route (same mask).
    double sum2 = 0.0;
    for (double l : res.eigenvalues) sum2 += l * l;
    const double hs = hs_norm_sq_grid(indicator_field(
        rasterize(RadialRegion(2, {{0.0, 1.0}}),
                  make_grid_covering({{{0.0, 0.0}, 1.0}}, 0.05, 3.3))))
                          .hs_sq;
    CHECK(sum2 == doctest::Approx(hs).epsilon(1e-2));
    // Operator-norm bound (Schur test) and the known top eigenvalue.
    CHECK(res.schatten.sinf <= 1.0 + 1e-6);
    CHECK(res.schatten.sinf == doctest::Approx(0.957).epsilon(3e-3));
    // Schatten bound ||L||_{S_p} <= |Omega|^{1/p}.
    for (double p : {1.0, 2.0, 4.0})
        CHECK(schatten_norm(res.eigenvalues, p) <=
              std::pow(res.omega_measure, 1.0 / p) + 1e-9);
}

TEST_CASE("largest eigenvalue grows with the disc and prefers balls") {
    const double l_half = analyze_region(disc_region(0.5, 0.1)).schatten.sinf;
    const double l_one = analyze_region(disc_region(1.0, 0.1)).schatten.sinf;
    CHECK(l_half < l_one);
    // A square of the same measure localizes slightly worse than the disc.
    const double side = std::sqrt(kPi);
    GridRegion square(GridSpec({-1.5, -1.5}, 0.1, 31, 31));
    for (int iy = 0; iy < 31; ++iy)
        for (int ix = 0; ix < 31; ++ix) {
            const Vec2 c = square.spec.center(ix, iy);
            if (std::abs(c.x) < 0.5 * side && std::abs(c.y) < 0.5 * side)
                square.mask[square.spec.index(ix, iy)] = 1;
        }
    const double l_square = analyze_region(square).schatten.sinf;
    CHECK(l_square <= l_one + 5e-3);
}
