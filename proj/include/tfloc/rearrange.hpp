#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "tfloc/grid.hpp"

namespace tfloc {

/// Piecewise-constant radial decreasing function of |x| in R^n:
/// value values[k] on the shell knots[k] <= |x| < knots[k+1].
struct RadialProfile {
    int n = 2;
    std::vector<double> knots;   // r_0 = 0 < r_1 < ... < r_K (K+1 entries)
    std::vector<double> values;  // K entries, nonincreasing, nonnegative

    double value_at(double r) const;
    double integral() const;  // L^1 norm
};

/// Symmetric rearrangement of a set: the origin-centered ball of equal
/// measure.
RadialRegion rearrange_region(const RadialRegion& omega);
RadialRegion rearrange_region(const GridRegion& omega);

/// Layer-cake symmetric-decreasing rearrangement of a nonnegative grid
/// field. Cell k of the descending value sort occupies the radial shell
/// whose enclosed measure spans [k h^2, (k+1) h^2]; ties broken by
/// row-major cell index.
RadialProfile rearrange_function(const GridField& field);

/// Places the sorted cell values back onto the field's grid, cells ordered
/// by distance from the origin (discrete radial rearrangement).
GridField rearrange_field_to_grid(const GridField& field);

/// Double-convolution functional iint f(x) g(|x-y|) h(y) dx dy on the plane,
/// approximated as a double cell sum times h^4.
double riesz_functional(const GridField& f,
                        const std::function<double(double)>& kernel,
                        const GridField& h);

/// One-dimensional evaluation mode: f and h are unions of intervals on the
/// line, g a kernel of |x - y|. Exact piecewise-linear convolution
/// integrated adaptively.
using IntervalUnion = std::vector<std::pair<double, double>>;
double riesz_functional_1d(const IntervalUnion& f,
                           const std::function<double(double)>& kernel,
                           const IntervalUnion& h);

/// (chi_f * chi_h)(x) on the line: total overlap length of f with x - h.
double interval_convolution(const IntervalUnion& f, const IntervalUnion& h,
                            double x);

/// Equality construction for kernels that are constant on an annulus
/// B_R \ B_r: a disconnected set Omega and indicator pair (f, h) achieving
/// equality in the double-convolution inequality.
struct AppendixConstruction {
    RadialRegion omega;     // the annular union, dimension n
    double delta;           // h = chi_{B_delta}
    double r;               // inner kernel break
    double R;               // outer kernel break
    std::function<double(double)> kernel;  // constant on [r, R], strictly
                                           // decreasing elsewhere, continuous
};

AppendixConstruction appendix_construction(double r, double R, double delta,
                                           int n = 2);

}  // namespace tfloc
