#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "tfloc/hs.hpp"

using namespace tfloc;

TEST_CASE("coherent overlap closed form matches quadrature") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int i = 0; i < 20; ++i) {
        const Vec2 z{u(rng), u(rng)}, w{u(rng), u(rng)};
        const complex_t a = coherent_overlap(z, w);
        const complex_t b = coherent_overlap_closed(z, w);
        CHECK(std::abs(a - b) < 1e-10);
        // Squared modulus is the Gaussian kernel.
        CHECK(std::norm(a) == doctest::Approx(gauss_kernel_sq(z, w))
                                  .epsilon(1e-9));
    }
}

TEST_CASE("ball Fourier transform is continuous at the origin") {
    // rho -> 0 limit is the ball volume in R^{2d}.
    CHECK(ball_fourier(1.0, 1e-9, 1) ==
          doctest::Approx(kPi).epsilon(1e-10));
    CHECK(ball_fourier(1.0, 1e-9, 2) ==
          doctest::Approx(kPi * kPi / 2.0).epsilon(1e-10));
    // Against the explicit Bessel expression away from zero.
    const double rho = 0.7;
    CHECK(ball_fourier(1.3, rho, 1) ==
          doctest::Approx(1.3 / rho * bessel_j(1, 2.0 * kPi * rho * 1.3))
              .epsilon(1e-12));
}

TEST_CASE("Bessel J from the standard library matches its integral form") {
    // J_n(x) = (1/pi) int_0^pi cos(n t - x sin t) dt
    for (int n : {0, 1, 2}) {
        for (double x : {0.5, 2.0, 7.3}) {
            const double ref =
                integrate(
                    [n, x](double t) {
                        return std::cos(n * t - x * std::sin(t));
                    },
                    0.0, kPi, 1e-13, 1e-12) /
                kPi;
            CHECK(bessel_j(n, x) == doctest::Approx(ref).epsilon(1e-10));
        }
    }
}

TEST_CASE("radial route reproduces the unit-disc value") {
    const RadialRegion b1(2, {{0.0, 1.0}});
    const HSResult res = hs_norm_sq_radial(b1);
    CHECK(res.hs_sq == doctest::Approx(2.1621542371).epsilon(1e-8));
    // HS norm bounded by the L^2 norm of the weight (here the measure).
    CHECK(res.hs_sq < measure(b1));
    CHECK(trace_localization(b1) == doctest::Approx(kPi).epsilon(1e-14));
}

TEST_CASE("the two grid methods agree exactly") {
    const GridSpec spec = make_grid_covering({{{0.2, -0.1}, 0.8}}, 0.05, 3.3);
    const GridField f = indicator_field(rasterize({{{0.2, -0.1}, 0.8}}, spec));
    const double direct = hs_norm_sq_grid(f, HSMethod::grid_direct).hs_sq;
    const double conv = hs_norm_sq_grid(f, HSMethod::grid_convolution).hs_sq;
    CHECK(direct == doctest::Approx(conv).epsilon(1e-12));
    // Cell-exact sits close by and below the L^2 bound as well.
    const double exact = hs_norm_sq_cells_exact(f).hs_sq;
    CHECK(exact == doctest::Approx(direct).epsilon(1e-2));
    CHECK(exact < f.norm2_sq());
}

TEST_CASE("grid routes demand margin for the truncated stencil") {
    const GridSpec spec = make_grid_covering({{{0.0, 0.0}, 1.0}}, 0.05, 0.5);
    const GridField f = indicator_field(rasterize({{{0.0, 0.0}, 1.0}}, spec));
    CHECK_THROWS_WITH_AS(
        static_cast<void>(hs_norm_sq_grid(f, HSMethod::grid_direct)),
        doctest::Contains("margin"), input_error);
    // The cell-exact route has no margin requirement.
    CHECK(hs_norm_sq_cells_exact(f).hs_sq > 0.0);
}

TEST_CASE("profile route degenerates to the set route for indicators") {
    RadialProfile prof;
    prof.n = 2;
    prof.knots = {0.0, 1.0};
    prof.values = {1.0};
    const double via_profile = hs_norm_sq_profile(prof).hs_sq;
    const double via_set =
        hs_norm_sq_radial(RadialRegion(2, {{0.0, 1.0}})).hs_sq;
    CHECK(via_profile == doctest::Approx(via_set).epsilon(1e-10));
}

TEST_CASE("pair functional with offset agrees with the cell-exact sum") {
    const RadialRegion a(2, {{0.0, 1.0}}), b(2, {{0.0, 0.6}});
    // Zero offset: consistency with the combined-region identity
    // hs(A u B annuli) for concentric sets is not applicable here; instead
    // check symmetry and decay.
    const double at0 = gauss_pair_radial(a, b, 0.0);
    const double at1 = gauss_pair_radial(a, b, 1.5);
    const double at2 = gauss_pair_radial(a, b, 3.0);
    CHECK(at0 > at1);
    CHECK(at1 > at2);
    CHECK(gauss_pair_radial(b, a, 1.5) == doctest::Approx(at1).epsilon(1e-12));
    // Grid masks of the same pair, cell-exact: agreement at raster accuracy.
    const double h = 0.01;
    const GridRegion ra =
        rasterize({{{0.0, 0.0}, 1.0}},
                  make_grid_covering({{{0.0, 0.0}, 1.0}}, h, 0.1));
    const GridRegion rb =
        rasterize({{{1.5, 0.0}, 0.6}},
                  make_grid_covering({{{1.5, 0.0}, 0.6}}, h, 0.1));
    CHECK(gauss_pair_cells_exact(ra, rb) ==
          doctest::Approx(at1).epsilon(2e-2));
    // Mismatched lattices are rejected.
    const GridRegion rc = rasterize(
        {{{1.5, 0.0}, 0.6}},
        GridSpec({0.9 + 0.3 * h, -0.7}, h, 140, 140));
    CHECK_THROWS_AS(static_cast<void>(gauss_pair_cells_exact(ra, rc)),
                    input_error);
}

TEST_CASE("empty and invalid inputs") {
    GridField empty(GridSpec({0.0, 0.0}, 0.1, 80, 80));
    CHECK(hs_norm_sq_grid(empty).hs_sq == 0.0);
    CHECK(hs_norm_sq_cells_exact(empty).hs_sq == 0.0);
    empty.values[0] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(static_cast<void>(hs_norm_sq_cells_exact(empty)),
                    input_error);
    CHECK_THROWS_AS(ball_fourier(-1.0, 0.5, 1), input_error);
    CHECK_THROWS_AS(bessel_j(-1, 0.5), input_error);
}
