#include "tfloc/rearrange.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace tfloc {

double RadialProfile::value_at(double r) const {
    if (r < 0.0 || knots.empty() || r >= knots.back()) return 0.0;
    auto it = std::upper_bound(knots.begin(), knots.end(), r);
    std::size_t k = static_cast<std::size_t>(it - knots.begin());
    if (k == 0) return values.empty() ? 0.0 : values.front();
    return k - 1 < values.size() ? values[k - 1] : 0.0;
}

double RadialProfile::integral() const {
    double s = 0.0;
    const double wn = unit_ball_volume(n);
    for (std::size_t k = 0; k < values.size(); ++k)
        s += values[k] * wn *
             (std::pow(knots[k + 1], n) - std::pow(knots[k], n));
    return s;
}

RadialRegion rearrange_region(const RadialRegion& omega) {
    const double m = measure(omega);
    if (!(m > 0.0)) throw input_error("rearrange_region: empty region");
    const double rstar = std::pow(m / unit_ball_volume(omega.n), 1.0 / omega.n);
    return RadialRegion(omega.n, {{0.0, rstar}});
}

RadialRegion rearrange_region(const GridRegion& omega) {
    const double m = measure(omega);
    if (!(m > 0.0)) throw input_error("rearrange_region: empty region");
    return RadialRegion(2, {{0.0, std::sqrt(m / kPi)}});
}

namespace {

std::vector<double> sorted_cell_values(const GridField& field) {
    std::vector<double> vals;
    vals.reserve(field.values.size());
    for (auto& v : field.values) {
        if (std::abs(v.imag()) > 1e-12 * (1.0 + std::abs(v.real())) ||
            v.real() < 0.0)
            throw input_error("rearrange_function: field must be nonnegative real");
        vals.push_back(v.real());
    }
    // stable sort descending: ties keep row-major cell order
    std::stable_sort(vals.begin(), vals.end(), std::greater<double>());
    return vals;
}

}  // namespace

RadialProfile rearrange_function(const GridField& field) {
    std::vector<double> vals = sorted_cell_values(field);
    while (!vals.empty() && vals.back() == 0.0) vals.pop_back();
    RadialProfile out;
    out.n = 2;
    const double cell = field.spec.h * field.spec.h;
    out.knots.push_back(0.0);
    for (std::size_t k = 0; k < vals.size(); ++k) {
        out.knots.push_back(std::sqrt((k + 1) * cell / kPi));
        out.values.push_back(vals[k]);
    }
    return out;
}

GridField rearrange_field_to_grid(const GridField& field) {
    std::vector<double> vals = sorted_cell_values(field);
    const GridSpec& spec = field.spec;
    std::vector<std::size_t> order(spec.size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> r2(spec.size());
    for (int iy = 0; iy < spec.ny; ++iy)
        for (int ix = 0; ix < spec.nx; ++ix) {
            Vec2 c = spec.center(ix, iy);
            r2[spec.index(ix, iy)] = c.x * c.x + c.y * c.y;
        }
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return r2[a] < r2[b]; });
    GridField out(spec);
    for (std::size_t k = 0; k < vals.size(); ++k) out.values[order[k]] = vals[k];
    return out;
}

double riesz_functional(const GridField& f,
                        const std::function<double(double)>& kernel,
                        const GridField& h) {
    struct Cell { double x, y, v; };
    auto collect = [](const GridField& g) {
        std::vector<Cell> cells;
        const GridSpec& spec = g.spec;
        for (int iy = 0; iy < spec.ny; ++iy)
            for (int ix = 0; ix < spec.nx; ++ix) {
                double v = g.values[spec.index(ix, iy)].real();
                if (v != 0.0) {
                    Vec2 c = spec.center(ix, iy);
                    cells.push_back({c.x, c.y, v});
                }
            }
        return cells;
    };
    std::vector<Cell> fc = collect(f), hc = collect(h);
    if (fc.empty() || hc.empty()) return 0.0;
    double total = 0.0;
    for (const Cell& a : fc) {
        double acc = 0.0;
        for (const Cell& b : hc) {
            double g = kernel(std::hypot(a.x - b.x, a.y - b.y));
            if (!std::isfinite(g))
                throw numeric_error("riesz_functional: kernel evaluation not finite");
            acc += a.v * g * b.v;
        }
        total += acc;
    }
    const double h2f = f.spec.h * f.spec.h;
    const double h2h = h.spec.h * h.spec.h;
    return total * h2f * h2h;
}

double interval_convolution(const IntervalUnion& f, const IntervalUnion& h,
                            double t) {
    // C(t) = int f(y + t) h(y) dy
    double s = 0.0;
    for (auto& [af, bf] : f)
        for (auto& [ah, bh] : h)
            s += std::max(0.0, std::min(bf - t, bh) - std::max(af - t, ah));
    return s;
}

double riesz_functional_1d(const IntervalUnion& f,
                           const std::function<double(double)>& kernel,
                           const IntervalUnion& h) {
    if (f.empty() || h.empty()) return 0.0;
    // Breakpoints of the piecewise-linear cross-correlation.
    std::vector<double> bp;
    for (auto& [af, bf] : f)
        for (auto& [ah, bh] : h) {
            bp.push_back(af - ah);
            bp.push_back(af - bh);
            bp.push_back(bf - ah);
            bp.push_back(bf - bh);
        }
    bp.push_back(0.0);  // kernel kink at the origin of |t|
    std::sort(bp.begin(), bp.end());
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
        if (bp[i + 1] - bp[i] < 1e-15) continue;
        total += integrate(
            [&](double t) {
                double g = kernel(std::abs(t));
                if (!std::isfinite(g))
                    throw numeric_error("riesz_functional_1d: kernel not finite");
                return g * interval_convolution(f, h, t);
            },
            bp[i], bp[i + 1], 1e-13, 1e-12);
    }
    return total;
}

AppendixConstruction appendix_construction(double r, double R, double delta,
                                           int n) {
    if (!(delta > 0.0) || r < 0.0 || !(R > r))
        throw input_error("appendix_construction: need delta > 0 and R > r >= 0");
    if (!(r + 2.0 * delta < R - 4.0 * delta))
        throw input_error(
            "appendix_construction: smallness condition r + 2*delta < R - 4*delta violated");
    AppendixConstruction out;
    std::vector<std::pair<double, double>> annuli;
    annuli.push_back({0.0, r + 2.0 * delta});
    annuli.push_back({R - 4.0 * delta, R - 2.0 * delta});
    out.omega = RadialRegion(n, annuli);
    out.delta = delta;
    out.r = r;
    out.R = R;
    // Constant c = 1 on [r, R]; strictly decreasing and continuous elsewhere.
    out.kernel = [r, R](double t) {
        if (t <= r) return 1.0 + (r - t);
        if (t <= R) return 1.0;
        return std::exp(-(t - R));
    };
    return out;
}

}  // namespace tfloc
