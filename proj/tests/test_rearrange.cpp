#include <doctest.h>

#include <cmath>

#include "tfloc/rearrange.hpp"

using namespace tfloc;

TEST_CASE("set rearrangement preserves measure") {
    const RadialRegion annuli(2, {{0.0, 0.5}, {1.0, 1.5}});
    const RadialRegion star = rearrange_region(annuli);
    CHECK(star.annuli.size() == 1);
    CHECK(star.annuli[0].first == 0.0);
    CHECK(measure(star) == doctest::Approx(measure(annuli)).epsilon(1e-14));
    CHECK_THROWS_AS(rearrange_region(RadialRegion(2, {})), input_error);
}

TEST_CASE("layer-cake rearrangement of a two-level field") {
    GridField f(GridSpec({0.0, 0.0}, 0.5, 4, 4));
    f.values[0] = 2.0;
    f.values[5] = 2.0;
    f.values[10] = 1.0;
    const RadialProfile prof = rearrange_function(f);
    REQUIRE(prof.values.size() == 3);
    CHECK(prof.values[0] == 2.0);
    CHECK(prof.values[2] == 1.0);
    // Shells carry one cell of area each.
    const double cell = 0.25;
    CHECK(kPi * prof.knots[1] * prof.knots[1] ==
          doctest::Approx(cell).epsilon(1e-14));
    CHECK(prof.integral() == doctest::Approx(f.norm1()).epsilon(1e-12));
    CHECK(prof.value_at(0.0) == 2.0);
    CHECK(prof.value_at(prof.knots.back()) == 0.0);
}

TEST_CASE("fields must be nonnegative real to rearrange") {
    GridField f(GridSpec({0.0, 0.0}, 0.5, 2, 2));
    f.values[0] = -1.0;
    CHECK_THROWS_AS(rearrange_function(f), input_error);
    f.values[0] = complex_t(0.0, 1.0);
    CHECK_THROWS_AS(rearrange_function(f), input_error);
}

TEST_CASE("grid rearrangement concentrates mass at the origin") {
    const GridSpec spec({-1.0, -1.0}, 0.1, 21, 21);
    GridField f(spec);
    // An off-center blob.
    for (int iy = 0; iy < spec.ny; ++iy)
        for (int ix = 0; ix < spec.nx; ++ix) {
            const Vec2 c = spec.center(ix, iy);
            const double d2 = (c.x - 0.6) * (c.x - 0.6) + c.y * c.y;
            f.values[spec.index(ix, iy)] = std::exp(-4.0 * d2);
        }
    const GridField g = rearrange_field_to_grid(f);
    CHECK(g.norm2_sq() == doctest::Approx(f.norm2_sq()).epsilon(1e-12));
    // The maximum lands on the origin cell.
    double best = 0.0;
    std::size_t arg = 0;
    for (std::size_t i = 0; i < g.values.size(); ++i)
        if (g.values[i].real() > best) {
            best = g.values[i].real();
            arg = i;
        }
    CHECK(arg == spec.index(10, 10));
}

TEST_CASE("one-dimensional convolution functional") {
    const IntervalUnion seg = {{0.0, 2.0}};
    // Triangle: C(0) = 2, C(2) = 0.
    CHECK(interval_convolution(seg, seg, 0.0) == 2.0);
    CHECK(interval_convolution(seg, seg, 1.0) == 1.0);
    CHECK(interval_convolution(seg, seg, 2.5) == 0.0);
    // With kernel e^{-|t|}: I = int (2 - |t|) e^{-|t|} dt over [-2, 2]
    //                          = 2 (1 + e^{-2}).
    const double got = riesz_functional_1d(
        seg, [](double t) { return std::exp(-t); }, seg);
    CHECK(got == doctest::Approx(2.0 * (1.0 + std::exp(-2.0))).epsilon(1e-10));
}

TEST_CASE("equality construction is validated") {
    CHECK_THROWS_AS(appendix_construction(1.0, 1.5, 0.2), input_error);
    const AppendixConstruction c = appendix_construction(0.5, 2.0, 0.15);
    CHECK(c.omega.annuli.size() == 2);
    CHECK(c.kernel(0.5) == 1.0);
    CHECK(c.kernel(2.0) == 1.0);
    CHECK(c.kernel(0.2) > 1.0);
    CHECK(c.kernel(2.5) < 1.0);
}
