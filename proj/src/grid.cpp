#include "tfloc/grid.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace tfloc {

GridSpec::GridSpec(Vec2 o, double cell, int nx_, int ny_)
    : origin(o), h(cell), nx(nx_), ny(ny_) {
    if (!(h > 0.0)) throw input_error("GridSpec: cell size must be positive");
    if (nx < 1 || ny < 1) throw input_error("GridSpec: grid must be nonempty");
}

std::size_t GridRegion::count() const {
    std::size_t c = 0;
    for (auto m : mask) c += m != 0;
    return c;
}

RadialRegion::RadialRegion(int dim, std::vector<std::pair<double, double>> a)
    : n(dim), annuli(std::move(a)) {
    if (n < 2 || n % 2 != 0)
        throw input_error("RadialRegion: dimension must be even and >= 2");
    std::sort(annuli.begin(), annuli.end());
    double prev_end = -1.0;
    for (auto& [lo, hi] : annuli) {
        if (lo < 0.0 || !(lo < hi))
            throw input_error("RadialRegion: annuli must satisfy 0 <= a < b");
        if (lo < prev_end) throw input_error("RadialRegion: annuli overlap");
        prev_end = hi;
    }
}

bool RadialRegion::contains(double r) const {
    for (auto& [lo, hi] : annuli)
        if (r >= lo && r < hi) return true;
    return false;
}

double GridField::norm1() const {
    double s = 0.0;
    for (auto& v : values) s += std::abs(v);
    return s * spec.h * spec.h;
}

double GridField::norm2_sq() const {
    double s = 0.0;
    for (auto& v : values) s += std::norm(v);
    return s * spec.h * spec.h;
}

double measure(const GridRegion& region) {
    return static_cast<double>(region.count()) * region.spec.h * region.spec.h;
}

double measure(const RadialRegion& region) {
    double s = 0.0;
    for (auto& [lo, hi] : region.annuli)
        s += std::pow(hi, region.n) - std::pow(lo, region.n);
    return unit_ball_volume(region.n) * s;
}

namespace {

void check_box_contains(const GridSpec& spec, double x0, double x1, double y0,
                        double y1, const char* what) {
    if (x0 < spec.x_min() || x1 > spec.x_max() || y0 < spec.y_min() ||
        y1 > spec.y_max())
        throw input_error(std::string(what) + " exceeds the grid box");
}

}  // namespace

GridRegion rasterize(const std::vector<Ball>& balls, const GridSpec& spec) {
    for (auto& b : balls) {
        if (b.radius < 0.0) throw input_error("rasterize: negative radius");
        if (b.radius > 0.0)
            check_box_contains(spec, b.center.x - b.radius, b.center.x + b.radius,
                               b.center.y - b.radius, b.center.y + b.radius,
                               "rasterize: shape");
    }
    GridRegion out(spec);
    for (auto& b : balls) {
        if (b.radius <= 0.0) continue;
        const double r2 = b.radius * b.radius;
        int ix0 = std::max(0, (int)std::floor((b.center.x - b.radius - spec.origin.x) / spec.h));
        int ix1 = std::min(spec.nx - 1, (int)std::ceil((b.center.x + b.radius - spec.origin.x) / spec.h));
        int iy0 = std::max(0, (int)std::floor((b.center.y - b.radius - spec.origin.y) / spec.h));
        int iy1 = std::min(spec.ny - 1, (int)std::ceil((b.center.y + b.radius - spec.origin.y) / spec.h));
        for (int iy = iy0; iy <= iy1; ++iy)
            for (int ix = ix0; ix <= ix1; ++ix) {
                Vec2 c = spec.center(ix, iy);
                double dx = c.x - b.center.x, dy = c.y - b.center.y;
                if (dx * dx + dy * dy < r2) out.mask[spec.index(ix, iy)] = 1;
            }
    }
    return out;
}

GridRegion rasterize(const RadialRegion& region, const GridSpec& spec) {
    if (region.n != 2)
        throw input_error("rasterize: planar grids support n = 2 only");
    const double R = region.outer_radius();
    if (R > 0.0)
        check_box_contains(spec, -R, R, -R, R, "rasterize: shape");
    GridRegion out(spec);
    for (int iy = 0; iy < spec.ny; ++iy)
        for (int ix = 0; ix < spec.nx; ++ix) {
            Vec2 c = spec.center(ix, iy);
            if (region.contains(std::hypot(c.x, c.y)))
                out.mask[spec.index(ix, iy)] = 1;
        }
    return out;
}

GridSpec make_grid_covering(const std::vector<Ball>& balls, double h,
                            double margin) {
    if (balls.empty()) throw input_error("make_grid_covering: no shapes");
    double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
    for (auto& b : balls) {
        x0 = std::min(x0, b.center.x - b.radius);
        x1 = std::max(x1, b.center.x + b.radius);
        y0 = std::min(y0, b.center.y - b.radius);
        y1 = std::max(y1, b.center.y + b.radius);
    }
    x0 -= margin; x1 += margin; y0 -= margin; y1 += margin;
    // Snap cell centers onto integer multiples of h.
    int ix0 = (int)std::floor(x0 / h), ix1 = (int)std::ceil(x1 / h);
    int iy0 = (int)std::floor(y0 / h), iy1 = (int)std::ceil(y1 / h);
    return GridSpec({ix0 * h, iy0 * h}, h, ix1 - ix0 + 1, iy1 - iy0 + 1);
}

double symm_diff_measure(const GridRegion& a, const Ball& ball) {
    const GridSpec& spec = a.spec;
    check_box_contains(spec, ball.center.x - ball.radius,
                       ball.center.x + ball.radius, ball.center.y - ball.radius,
                       ball.center.y + ball.radius, "symm_diff_measure: ball");
    const double r2 = ball.radius * ball.radius;
    std::size_t diff = 0;
    for (int iy = 0; iy < spec.ny; ++iy)
        for (int ix = 0; ix < spec.nx; ++ix) {
            Vec2 c = spec.center(ix, iy);
            double dx = c.x - ball.center.x, dy = c.y - ball.center.y;
            bool in_ball = dx * dx + dy * dy < r2;
            if (in_ball != (a.mask[spec.index(ix, iy)] != 0)) ++diff;
        }
    return static_cast<double>(diff) * spec.h * spec.h;
}

GridField indicator_field(const GridRegion& region) {
    GridField f(region.spec);
    for (std::size_t i = 0; i < region.mask.size(); ++i)
        if (region.mask[i]) f.values[i] = 1.0;
    return f;
}

void write_region(const GridRegion& region, std::ostream& os) {
    os.write("RGN1", 4);
    char header[128];
    std::snprintf(header, sizeof(header), "%d %d %.17g %.17g %.17g\n",
                  region.spec.nx, region.spec.ny, region.spec.h,
                  region.spec.origin.x, region.spec.origin.y);
    os << header;
    const std::size_t nbits = region.spec.size();
    std::vector<std::uint8_t> packed((nbits + 7) / 8, 0);
    for (std::size_t i = 0; i < nbits; ++i)
        if (region.mask[i]) packed[i / 8] |= (std::uint8_t)(1u << (i % 8));
    os.write(reinterpret_cast<const char*>(packed.data()),
             (std::streamsize)packed.size());
}

GridRegion read_region(std::istream& is) {
    char magic[4];
    if (!is.read(magic, 4) || std::string(magic, 4) != "RGN1")
        throw input_error("read_region: malformed header (bad magic)");
    std::string header;
    if (!std::getline(is, header))
        throw input_error("read_region: malformed header (missing line)");
    std::istringstream hs(header);
    int nx, ny;
    double h, ox, oy;
    if (!(hs >> nx >> ny >> h >> ox >> oy))
        throw input_error("read_region: malformed header (bad fields)");
    if (nx < 1 || ny < 1 || !(h > 0.0))
        throw input_error("read_region: dimension mismatch");
    GridRegion out(GridSpec({ox, oy}, h, nx, ny));
    const std::size_t nbits = out.spec.size();
    std::vector<std::uint8_t> packed((nbits + 7) / 8);
    if (!is.read(reinterpret_cast<char*>(packed.data()),
                 (std::streamsize)packed.size()))
        throw input_error("read_region: truncated payload");
    for (std::size_t i = 0; i < nbits; ++i)
        out.mask[i] = (packed[i / 8] >> (i % 8)) & 1u;
    return out;
}

void write_region(const GridRegion& region, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw input_error("write_region: cannot open " + path);
    write_region(region, os);
}

GridRegion read_region(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw input_error("read_region: cannot open " + path);
    return read_region(is);
}

}  // namespace tfloc
