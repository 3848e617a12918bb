#include <doctest.h>

#include <cmath>

#include "tfloc/asymmetry.hpp"

using namespace tfloc;

namespace {

GridRegion discs(const std::vector<Ball>& balls, double h, double margin) {
    return rasterize(balls, make_grid_covering(balls, h, margin));
}

}  // namespace

TEST_CASE("a disc has (near) zero asymmetry") {
    const AsymmetryResult res = fraenkel(discs({{{0.0, 0.0}, 1.0}}, 0.02, 1.4));
    CHECK(res.alpha >= 0.0);
    CHECK(res.alpha < 0.01);
    CHECK(std::hypot(res.best_center.x, res.best_center.y) < 0.05);
    CHECK(res.converged);
    CHECK(res.evaluations > 0);
}

TEST_CASE("translation invariance on the lattice") {
    const double a0 = fraenkel(discs({{{0.0, 0.0}, 0.7},
                                      {{1.0, 0.0}, 0.7}},
                                     0.02, 1.5))
                          .alpha;
    const double a1 = fraenkel(discs({{{0.5, -0.4}, 0.7},
                                      {{1.5, -0.4}, 0.7}},
                                     0.02, 1.5))
                          .alpha;
    CHECK(std::abs(a0 - a1) < 1e-3);
}

TEST_CASE("scale invariance with proportional resolution") {
    double base = -1.0;
    for (double r : {0.5, 1.0, 2.0}) {
        const std::vector<Ball> shape = {{{0.0, 0.0}, 0.7 * r},
                                         {{r, 0.0}, 0.7 * r}};
        const double a = fraenkel(discs(shape, 0.02 * r, 1.5 * r)).alpha;
        if (base < 0.0)
            base = a;
        else
            CHECK(std::abs(a - base) < 0.02);
    }
}

TEST_CASE("two far discs have asymmetry one") {
    const GridRegion reg =
        discs({{{0.0, 0.0}, 1.0}, {{10.0, 0.0}, 1.0}}, 0.05, 1.8);
    const AsymmetryResult res = fraenkel(reg);
    CHECK(res.alpha == doctest::Approx(1.0).epsilon(0.02));
    // Against the coarse brute-force sweep.
    const double oracle = fraenkel_center_sweep(reg, 0.35);
    CHECK(res.alpha <= oracle + 1e-9);
    CHECK(std::abs(res.alpha - oracle) < 0.05);
}

TEST_CASE("bounds and error handling") {
    GridRegion empty(GridSpec({0.0, 0.0}, 0.1, 5, 5));
    CHECK_THROWS_AS(fraenkel(empty), input_error);
    const AsymmetryResult res =
        fraenkel(discs({{{0.0, 0.0}, 0.4}, {{2.0, 0.0}, 0.6}}, 0.04, 1.2));
    CHECK(res.alpha >= 0.0);
    CHECK(res.alpha < 2.0);
}
