#include "tfloc/asymmetry.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace tfloc {

namespace {

struct Support {
    std::vector<std::pair<int, int>> cells;  // (ix, iy) of mask cells
    double cx = 0.0, cy = 0.0;               // centroid of cell centers
};

Support collect_support(const GridRegion& omega) {
    Support s;
    const GridSpec& spec = omega.spec;
    double sx = 0.0, sy = 0.0;
    for (int iy = 0; iy < spec.ny; ++iy)
        for (int ix = 0; ix < spec.nx; ++ix)
            if (omega.at(ix, iy)) {
                s.cells.push_back({ix, iy});
                const Vec2 c = spec.center(ix, iy);
                sx += c.x;
                sy += c.y;
            }
    if (!s.cells.empty()) {
        s.cx = sx / static_cast<double>(s.cells.size());
        s.cy = sy / static_cast<double>(s.cells.size());
    }
    return s;
}

// |Omega symdiff B(c, r)| / |Omega| on the grid; centers whose ball leaves
// the grid box get a penalty that grows with the excursion, steering the
// optimizer back inside.
double objective(const GridRegion& omega, const Support& supp, Vec2 c,
                 double r, double m) {
    const GridSpec& spec = omega.spec;
    const double out =
        std::max({spec.x_min() - (c.x - r), (c.x + r) - spec.x_max(),
                  spec.y_min() - (c.y - r), (c.y + r) - spec.y_max(), 0.0});
    if (out > 0.0) return 2.0 + out;
    const double r2 = r * r;
    std::size_t omega_outside_ball = 0;
    for (auto [ix, iy] : supp.cells) {
        const Vec2 p = spec.center(ix, iy);
        const double dx = p.x - c.x, dy = p.y - c.y;
        if (dx * dx + dy * dy >= r2) ++omega_outside_ball;
    }
    std::size_t ball_outside_omega = 0;
    const int ix0 = std::max(0, (int)std::floor((c.x - r - spec.origin.x) / spec.h));
    const int ix1 = std::min(spec.nx - 1, (int)std::ceil((c.x + r - spec.origin.x) / spec.h));
    const int iy0 = std::max(0, (int)std::floor((c.y - r - spec.origin.y) / spec.h));
    const int iy1 = std::min(spec.ny - 1, (int)std::ceil((c.y + r - spec.origin.y) / spec.h));
    for (int iy = iy0; iy <= iy1; ++iy)
        for (int ix = ix0; ix <= ix1; ++ix) {
            if (omega.at(ix, iy)) continue;
            const Vec2 p = spec.center(ix, iy);
            const double dx = p.x - c.x, dy = p.y - c.y;
            if (dx * dx + dy * dy < r2) ++ball_outside_omega;
        }
    const double h2 = spec.h * spec.h;
    return static_cast<double>(omega_outside_ball + ball_outside_omega) * h2 /
           m;
}

// Centroids of the `max_count` largest 4-connected components.
std::vector<Vec2> component_centroids(const GridRegion& omega,
                                      std::size_t max_count) {
    const GridSpec& spec = omega.spec;
    std::vector<int> label(spec.size(), -1);
    struct Comp {
        double sx = 0.0, sy = 0.0;
        std::size_t n = 0;
    };
    std::vector<Comp> comps;
    std::vector<std::size_t> stack;
    for (std::size_t seed = 0; seed < spec.size(); ++seed) {
        if (!omega.mask[seed] || label[seed] >= 0) continue;
        const int id = static_cast<int>(comps.size());
        comps.push_back({});
        label[seed] = id;
        stack.push_back(seed);
        while (!stack.empty()) {
            const std::size_t i = stack.back();
            stack.pop_back();
            const int ix = static_cast<int>(i) % spec.nx;
            const int iy = static_cast<int>(i) / spec.nx;
            const Vec2 c = spec.center(ix, iy);
            comps[id].sx += c.x;
            comps[id].sy += c.y;
            ++comps[id].n;
            const int nb[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
            for (auto& [dx, dy] : nb) {
                const int jx = ix + dx, jy = iy + dy;
                if (jx < 0 || jx >= spec.nx || jy < 0 || jy >= spec.ny)
                    continue;
                const std::size_t j = spec.index(jx, jy);
                if (omega.mask[j] && label[j] < 0) {
                    label[j] = id;
                    stack.push_back(j);
                }
            }
        }
    }
    std::sort(comps.begin(), comps.end(),
              [](const Comp& a, const Comp& b) { return a.n > b.n; });
    std::vector<Vec2> out;
    for (const Comp& c : comps) {
        if (out.size() >= max_count || c.n == 0) break;
        out.push_back({c.sx / static_cast<double>(c.n),
                       c.sy / static_cast<double>(c.n)});
    }
    return out;
}

struct StartResult {
    double value = 2.0;
    Vec2 center{};
    long evaluations = 0;
    bool converged = false;
};

// Standard Nelder-Mead on the 2-D center variable.
StartResult nelder_mead(const std::function<double(Vec2)>& f, Vec2 start,
                        double scale, double tol, long& evals) {
    struct Vertex {
        Vec2 p;
        double v;
    };
    auto eval = [&](Vec2 p) {
        ++evals;
        return f(p);
    };
    std::array<Vertex, 3> s = {
        Vertex{start, eval(start)},
        Vertex{{start.x + scale, start.y}, eval({start.x + scale, start.y})},
        Vertex{{start.x, start.y + scale}, eval({start.x, start.y + scale})}};
    StartResult out;
    const int max_iter = 300;
    int iter = 0;
    for (; iter < max_iter; ++iter) {
        std::sort(s.begin(), s.end(),
                  [](const Vertex& a, const Vertex& b) { return a.v < b.v; });
        const double diam = std::max(dist(s[0].p, s[1].p),
                                     std::max(dist(s[0].p, s[2].p),
                                              dist(s[1].p, s[2].p)));
        if (diam < tol) {
            out.converged = true;
            break;
        }
        const Vec2 mid{0.5 * (s[0].p.x + s[1].p.x), 0.5 * (s[0].p.y + s[1].p.y)};
        auto along = [&](double t) {
            return Vec2{mid.x + t * (mid.x - s[2].p.x),
                        mid.y + t * (mid.y - s[2].p.y)};
        };
        const Vec2 refl = along(1.0);
        const double fr = eval(refl);
        if (fr < s[0].v) {
            const Vec2 exp_p = along(2.0);
            const double fe = eval(exp_p);
            s[2] = fe < fr ? Vertex{exp_p, fe} : Vertex{refl, fr};
        } else if (fr < s[1].v) {
            s[2] = {refl, fr};
        } else {
            const Vec2 con = along(fr < s[2].v ? 0.5 : -0.5);
            const double fc = eval(con);
            if (fc < std::min(fr, s[2].v)) {
                s[2] = {con, fc};
            } else {
                for (int i = 1; i < 3; ++i) {
                    s[i].p = {0.5 * (s[i].p.x + s[0].p.x),
                              0.5 * (s[i].p.y + s[0].p.y)};
                    s[i].v = eval(s[i].p);
                }
            }
        }
    }
    std::sort(s.begin(), s.end(),
              [](const Vertex& a, const Vertex& b) { return a.v < b.v; });
    out.value = s[0].v;
    out.center = s[0].p;
    return out;
}

}  // namespace

AsymmetryResult fraenkel(const GridRegion& omega) {
    const double m = measure(omega);
    if (!(m > 0.0)) throw input_error("fraenkel: region is empty");
    const double rstar = std::sqrt(m / kPi);
    const Support supp = collect_support(omega);
    auto f = [&](Vec2 c) { return objective(omega, supp, c, rstar, m); };

    std::vector<Vec2> starts = {{supp.cx, supp.cy}};
    for (int k = 0; k < 8; ++k) {
        const double ang = 0.25 * kPi * k;
        starts.push_back({supp.cx + 0.5 * rstar * std::cos(ang),
                          supp.cy + 0.5 * rstar * std::sin(ang)});
    }
    // For disconnected sets the global centroid can sit in empty space where
    // the objective is flat; component centroids give informative starts.
    for (const Vec2& c : component_centroids(omega, 4)) starts.push_back(c);
    std::vector<StartResult> results(starts.size());
    parallel_for(starts.size(), [&](std::size_t i) {
        long evals = 0;
        results[i] =
            nelder_mead(f, starts[i], 0.25 * rstar, 1e-3 * rstar, evals);
        results[i].evaluations = evals;
    });

    AsymmetryResult out;
    out.alpha = 2.0;
    for (const StartResult& r : results) {
        out.evaluations += r.evaluations;
        const bool better =
            r.value < out.alpha ||
            (r.value == out.alpha &&
             (r.center.x < out.best_center.x ||
              (r.center.x == out.best_center.x &&
               r.center.y < out.best_center.y)));
        if (better) {
            out.alpha = r.value;
            out.best_center = r.center;
            out.converged = r.converged;
        }
    }
    return out;
}

double fraenkel_center_sweep(const GridRegion& omega, double step) {
    const double m = measure(omega);
    if (!(m > 0.0)) throw input_error("fraenkel_center_sweep: region is empty");
    if (!(step > 0.0))
        throw input_error("fraenkel_center_sweep: step must be positive");
    const double rstar = std::sqrt(m / kPi);
    const Support supp = collect_support(omega);
    double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
    for (auto [ix, iy] : supp.cells) {
        const Vec2 c = omega.spec.center(ix, iy);
        x0 = std::min(x0, c.x);
        x1 = std::max(x1, c.x);
        y0 = std::min(y0, c.y);
        y1 = std::max(y1, c.y);
    }
    double best = 2.0;
    for (double cy = y0 - rstar; cy <= y1 + rstar; cy += step)
        for (double cx = x0 - rstar; cx <= x1 + rstar; cx += step)
            best = std::min(best,
                            objective(omega, supp, {cx, cy}, rstar, m));
    return best;
}

}  // namespace tfloc
