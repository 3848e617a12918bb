#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "tfloc/common.hpp"

namespace tfloc {

/// Uniform planar grid. `origin` is the coordinate of the center of cell
/// (0, 0); cell (ix, iy) has center origin + (ix*h, iy*h). Masks and fields
/// are stored row-major: index = iy * nx + ix.
struct GridSpec {
    Vec2 origin{};
    double h = 0.0;
    int nx = 0;
    int ny = 0;

    GridSpec() = default;
    GridSpec(Vec2 o, double cell, int nx_, int ny_);

    std::size_t size() const { return static_cast<std::size_t>(nx) * ny; }
    Vec2 center(int ix, int iy) const {
        return {origin.x + ix * h, origin.y + iy * h};
    }
    std::size_t index(int ix, int iy) const {
        return static_cast<std::size_t>(iy) * nx + ix;
    }
    /// Closed box covered by the grid cells (cell extents, not centers).
    double x_min() const { return origin.x - 0.5 * h; }
    double x_max() const { return origin.x + (nx - 0.5) * h; }
    double y_min() const { return origin.y - 0.5 * h; }
    double y_max() const { return origin.y + (ny - 0.5) * h; }

    bool operator==(const GridSpec&) const = default;
};

struct Ball {
    Vec2 center{};
    double radius = 0.0;
};

/// Boolean region on a grid.
struct GridRegion {
    GridSpec spec;
    std::vector<std::uint8_t> mask;  // 0/1, row-major

    GridRegion() = default;
    explicit GridRegion(GridSpec s) : spec(s), mask(s.size(), 0) {}

    bool at(int ix, int iy) const { return mask[spec.index(ix, iy)] != 0; }
    std::size_t count() const;
};

/// Radial region in R^n (n = 2d even): disjoint union of annuli [a_i, b_i).
struct RadialRegion {
    int n = 2;
    std::vector<std::pair<double, double>> annuli;

    RadialRegion() = default;
    RadialRegion(int dim, std::vector<std::pair<double, double>> a);

    double outer_radius() const {
        return annuli.empty() ? 0.0 : annuli.back().second;
    }
    bool contains(double r) const;
};

/// Complex-valued weight sampled on a grid.
struct GridField {
    GridSpec spec;
    std::vector<complex_t> values;

    GridField() = default;
    explicit GridField(GridSpec s) : spec(s), values(s.size(), 0.0) {}

    double norm1() const;     // sum |F| h^2
    double norm2_sq() const;  // sum |F|^2 h^2
};

double measure(const GridRegion& region);
double measure(const RadialRegion& region);

/// Cell-center rasterization of a union of balls.
GridRegion rasterize(const std::vector<Ball>& balls, const GridSpec& spec);
/// Cell-center rasterization of a radial region (n must be 2).
GridRegion rasterize(const RadialRegion& region, const GridSpec& spec);

/// Grid covering the given balls with `margin` of extra room on every side.
/// Cell centers land on integer multiples of h relative to the coordinate
/// origin, so symmetric shapes rasterize symmetrically.
GridSpec make_grid_covering(const std::vector<Ball>& balls, double h,
                            double margin);

/// |A △ B(c, r)|, evaluated cellwise on A's grid. The ball must lie inside
/// the grid box.
double symm_diff_measure(const GridRegion& a, const Ball& ball);

/// Indicator field chi_Omega on Omega's own grid.
GridField indicator_field(const GridRegion& region);

/// RGN1 file I/O. Round trips are bit-exact.
void write_region(const GridRegion& region, const std::string& path);
GridRegion read_region(const std::string& path);
void write_region(const GridRegion& region, std::ostream& os);
GridRegion read_region(std::istream& is);

}  // namespace tfloc
