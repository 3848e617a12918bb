#include "tfloc/deficit.hpp"

#include <algorithm>
#include <cmath>

namespace tfloc {

BetaParams::BetaParams(int d_) : d(d_) {
    if (d < 1) throw input_error("BetaParams: d must be >= 1");
    c2 = 9.0 * kPi / (4.0 * std::pow(unit_ball_volume(2 * d), 1.0 / d));
}

double beta(double t, const BetaParams& params) {
    if (!(t > 0.0)) throw input_error("beta: t must be positive");
    const double d = params.d;
    if (t <= 1.0) return std::pow(t, 2.0 + 1.0 / d);
    // Matching factor e^{c2} keeps the two branches continuous at t = 1.
    return t * t * std::exp(-params.c2 * (std::pow(t, 1.0 / d) - 1.0));
}

double beta(double t, int d) { return beta(t, BetaParams(d)); }

double beta_tilde(double t, int d) {
    if (!(t > 0.0)) throw input_error("beta_tilde: t must be positive");
    if (d < 1) throw input_error("beta_tilde: d must be >= 1");
    if (t <= 1.0) return std::pow(t, 2.0 + 1.0 / d);
    return std::pow(t, 2.0 - 0.5 / d);
}

double radial_alpha(const RadialRegion& omega) {
    const double m = measure(omega);
    if (!(m > 0.0)) throw input_error("radial_alpha: empty region");
    const int n = omega.n;
    const double rstar = std::pow(m / unit_ball_volume(n), 1.0 / n);
    double inter = 0.0;
    for (auto& [lo, hi] : omega.annuli) {
        const double a = std::min(lo, rstar), b = std::min(hi, rstar);
        if (b > a) inter += std::pow(b, n) - std::pow(a, n);
    }
    inter *= unit_ball_volume(n);
    return 2.0 * (m - inter) / m;
}

namespace {

DeficitReport finish_report(DeficitReport r, int d) {
    r.deficit = r.hs_sq_star - r.hs_sq;
    r.beta_value = beta(r.omega_measure, d);
    r.empirical_constant =
        r.alpha > 0.0 ? r.deficit / (r.beta_value * r.alpha * r.alpha) : 0.0;
    return r;
}

}  // namespace

DeficitReport deficit_report(const RadialRegion& omega) {
    DeficitReport r;
    r.omega_measure = measure(omega);
    r.hs_sq = hs_norm_sq_radial(omega).hs_sq;
    r.hs_sq_star = hs_norm_sq_radial(rearrange_region(omega)).hs_sq;
    r.alpha = radial_alpha(omega);
    r.alpha_analytic = true;
    return finish_report(r, omega.n / 2);
}

DeficitReport deficit_report(const GridRegion& omega) {
    DeficitReport r;
    const GridField field = indicator_field(omega);
    r.omega_measure = measure(omega);
    r.hs_sq = hs_norm_sq_cells_exact(field).hs_sq;
    r.hs_sq_star = hs_norm_sq_profile(rearrange_function(field)).hs_sq;
    r.alpha = fraenkel(omega).alpha;
    return finish_report(r, 1);
}

DeficitReport deficit_report(const GridField& field) {
    DeficitReport r;
    r.omega_measure = field.norm1();
    r.hs_sq = hs_norm_sq_cells_exact(field).hs_sq;
    r.hs_sq_star = hs_norm_sq_profile(rearrange_function(field)).hs_sq;
    r.deficit = r.hs_sq_star - r.hs_sq;
    // alpha and beta concern sets, not general weights.
    return r;
}

RadialRegion family_eps(double eps, int d) {
    if (!(eps > 0.0) || !(eps < 1.0))
        throw input_error("family_eps: eps must lie in (0, 1)");
    if (d < 1) throw input_error("family_eps: d must be >= 1");
    const int n = 2 * d;
    // Outer shell radius fixed by |Omega_eps| = |B_1|:
    // (1-eps)^n + outer^n - 1 = 1.
    const double outer = std::pow(2.0 - std::pow(1.0 - eps, n), 1.0 / n);
    return RadialRegion(n, {{0.0, 1.0 - eps}, {1.0, outer}});
}

DumbbellPieces dumbbell_pieces(double r) {
    if (!(r > 0.0)) throw input_error("dumbbell_pieces: r must be positive");
    DumbbellPieces out;
    out.annulus = RadialRegion(2, {{r / 3.0, r}});
    out.disc = RadialRegion(2, {{0.0, r / 3.0}});
    out.offset = 2.0 * r;
    return out;
}

GridRegion family_dumbbell(double r, double h) {
    if (!(r > 0.0)) throw input_error("family_dumbbell: r must be positive");
    if (h == 0.0) h = r / 60.0;
    if (!(h > 0.0)) throw input_error("family_dumbbell: h must be positive");
    const double third = r / 3.0;
    const GridSpec spec = make_grid_covering(
        {{{0.0, 0.0}, r}, {{2.0 * r, 0.0}, third}}, h, kKernelCutoff + 0.1);
    GridRegion out(spec);
    for (int iy = 0; iy < spec.ny; ++iy)
        for (int ix = 0; ix < spec.nx; ++ix) {
            const Vec2 c = spec.center(ix, iy);
            const double rad = std::hypot(c.x, c.y);
            const bool in_annulus = rad >= third && rad < r;
            const bool in_disc = std::hypot(c.x - 2.0 * r, c.y) < third;
            if (in_annulus || in_disc) out.mask[spec.index(ix, iy)] = 1;
        }
    return out;
}

double hs_union_of_balls(const std::vector<Ball>& balls) {
    for (std::size_t i = 0; i < balls.size(); ++i) {
        if (!(balls[i].radius > 0.0))
            throw input_error("hs_union_of_balls: radii must be positive");
        for (std::size_t j = i + 1; j < balls.size(); ++j)
            if (dist(balls[i].center, balls[j].center) <
                balls[i].radius + balls[j].radius)
                throw input_error("hs_union_of_balls: balls overlap");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < balls.size(); ++i) {
        const RadialRegion bi(2, {{0.0, balls[i].radius}});
        total += hs_norm_sq_radial(bi).hs_sq;
        for (std::size_t j = i + 1; j < balls.size(); ++j) {
            const RadialRegion bj(2, {{0.0, balls[j].radius}});
            total += 2.0 * gauss_pair_radial(
                               bi, bj, dist(balls[i].center, balls[j].center));
        }
    }
    return total;
}

FitResult fit_loglog(const std::vector<double>& x,
                     const std::vector<double>& y) {
    if (x.size() != y.size())
        throw input_error("fit_loglog: size mismatch");
    if (x.size() < 3)
        throw fit_error("fit_loglog: need at least 3 points");
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0))
            throw fit_error("fit_loglog: data must be positive");
        lx.push_back(std::log(x[i]));
        ly.push_back(std::log(y[i]));
    }
    const double n = static_cast<double>(lx.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    const double denom = n * sxx - sx * sx;
    if (std::abs(denom) < 1e-14 * n * sxx)
        throw fit_error("fit_loglog: abscissae are degenerate");
    FitResult fit;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    double ss = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        const double e = ly[i] - fit.slope * lx[i] - fit.intercept;
        ss += e * e;
    }
    fit.residual = std::sqrt(ss / n);
    return fit;
}

SweepResult sweep_eps(const std::vector<double>& eps, int d) {
    SweepResult out;
    out.points.resize(eps.size());
    parallel_for(eps.size(), [&](std::size_t i) {
        out.points[i].param = eps[i];
        out.points[i].report = deficit_report(family_eps(eps[i], d));
    });
    std::vector<double> xs, ys;
    for (auto& p : out.points) {
        xs.push_back(p.param);
        ys.push_back(p.report.deficit);
    }
    out.fit = fit_loglog(xs, ys);
    return out;
}

SweepResult sweep_dilate(const std::vector<double>& r) {
    SweepResult out;
    out.points.resize(r.size());
    parallel_for(r.size(), [&](std::size_t i) {
        const double ri = r[i];
        if (!(ri > 0.0))
            throw input_error("sweep_dilate: radii must be positive");
        SweepPoint& p = out.points[i];
        p.param = ri;
        DeficitReport rep;
        rep.omega_measure = 2.0 * kPi * ri * ri;
        rep.hs_sq = hs_union_of_balls(
            {{{0.0, 0.0}, ri}, {{10.0 * ri, 0.0}, ri}});
        const RadialRegion star(2, {{0.0, std::sqrt(2.0) * ri}});
        rep.hs_sq_star = hs_norm_sq_radial(star).hs_sq;
        // The equal-measure ball can cover at most one of the two far
        // discs, so alpha = 1 exactly for every r.
        rep.alpha = 1.0;
        rep.alpha_analytic = true;
        p.report = finish_report(rep, 1);
    });
    std::vector<double> xs, ys;
    for (auto& p : out.points) {
        xs.push_back(p.report.omega_measure);
        ys.push_back(p.report.deficit);
    }
    out.fit = fit_loglog(xs, ys);
    return out;
}

SweepResult sweep_dumbbell(const std::vector<double>& r) {
    SweepResult out;
    out.points.resize(r.size());
    parallel_for(r.size(), [&](std::size_t i) {
        const DumbbellPieces pieces = dumbbell_pieces(r[i]);
        SweepPoint& p = out.points[i];
        p.param = r[i];
        DeficitReport rep;
        rep.omega_measure = kPi * r[i] * r[i];
        rep.hs_sq = hs_norm_sq_radial(pieces.annulus).hs_sq +
                    hs_norm_sq_radial(pieces.disc).hs_sq +
                    2.0 * gauss_pair_radial(pieces.annulus, pieces.disc,
                                            pieces.offset);
        const RadialRegion star(2, {{0.0, r[i]}});
        rep.hs_sq_star = hs_norm_sq_radial(star).hs_sq;
        // Centered candidate ball B_r: symmetric difference is the inner
        // disc plus the far disc, each of area pi r^2 / 9.
        rep.alpha = 2.0 / 9.0;
        rep.alpha_analytic = true;
        p.report = finish_report(rep, 1);
    });
    std::vector<double> xs, ys;
    for (auto& p : out.points) {
        xs.push_back(p.report.omega_measure);
        ys.push_back(p.report.deficit);
    }
    out.fit = fit_loglog(xs, ys);
    return out;
}

namespace {

IntervalUnion normalized(IntervalUnion u) {
    for (auto& [a, b] : u)
        if (!(a < b))
            throw input_error("interval union: intervals need a < b");
    std::sort(u.begin(), u.end());
    IntervalUnion out;
    for (auto& [a, b] : u) {
        if (!out.empty() && a <= out.back().second)
            out.back().second = std::max(out.back().second, b);
        else
            out.push_back({a, b});
    }
    return out;
}

double total_length(const IntervalUnion& u) {
    double s = 0.0;
    for (auto& [a, b] : u) s += b - a;
    return s;
}

}  // namespace

double indicator_autocorrelation(const IntervalUnion& omega, double b) {
    if (!(b > 0.0))
        throw input_error("indicator_autocorrelation: b must be positive");
    const IntervalUnion u = normalized(omega);
    if (u.empty()) return 0.0;
    // C(t) = |(Omega - t) cap Omega| is piecewise linear with breakpoints
    // at endpoint differences; integrate it exactly over [-b, b].
    std::vector<double> bp = {-b, b};
    for (auto& [a1, b1] : u)
        for (auto& [a2, b2] : u)
            for (double t : {a1 - a2, a1 - b2, b1 - a2, b1 - b2})
                if (t > -b && t < b) bp.push_back(t);
    std::sort(bp.begin(), bp.end());
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
        const double w = bp[i + 1] - bp[i];
        if (w <= 0.0) continue;
        total += 0.5 * w *
                 (interval_convolution(u, u, bp[i]) +
                  interval_convolution(u, u, bp[i + 1]));
    }
    return total;
}

double indicator_autocorrelation(const GridRegion& omega, double b) {
    if (!(b > 0.0))
        throw input_error("indicator_autocorrelation: b must be positive");
    const GridSpec& spec = omega.spec;
    std::vector<Vec2> pts;
    for (int iy = 0; iy < spec.ny; ++iy)
        for (int ix = 0; ix < spec.nx; ++ix)
            if (omega.at(ix, iy)) pts.push_back(spec.center(ix, iy));
    const double b2 = b * b;
    double pairs = 0.0;
    parallel_reduce_rows(
        pts.size(),
        [&](std::size_t i) {
            double c = 0.0;
            for (const Vec2& q : pts) {
                const double dx = pts[i].x - q.x, dy = pts[i].y - q.y;
                if (dx * dx + dy * dy < b2) c += 1.0;
            }
            return c;
        },
        pairs);
    const double h2 = spec.h * spec.h;
    return pairs * h2 * h2;
}

double interval_alpha(const IntervalUnion& omega) {
    const IntervalUnion u = normalized(omega);
    const double len = total_length(u);
    if (!(len > 0.0)) throw input_error("interval_alpha: empty union");
    const IntervalUnion window = {{-0.5 * len, 0.5 * len}};
    // Overlap with a sliding interval of length |Omega| is piecewise
    // linear in the center; its maximum sits at a breakpoint.
    double best = 0.0;
    for (auto& [a, b] : u)
        for (double edge : {a, b})
            for (double off : {-0.5 * len, 0.5 * len}) {
                const double c = edge + off;
                best = std::max(best, interval_convolution(u, window, c));
            }
    return 2.0 * (len - best) / len;
}

Conjecture2Report conjecture2_probe(const IntervalUnion& omega, double b,
                                    double delta) {
    if (!(b > 0.0)) throw input_error("conjecture2_probe: b must be positive");
    if (!(delta > 0.0 && delta < 1.0))
        throw input_error("conjecture2_probe: delta must lie in (0, 1)");
    const IntervalUnion u = normalized(omega);
    const double len = total_length(u);
    if (!(len > 0.0)) throw input_error("conjecture2_probe: empty union");
    if (b > (1.0 - delta) * len)
        throw input_error(
            "conjecture2_probe: constraint b <= (1 - delta)|Omega| violated");
    Conjecture2Report rep;
    rep.b = b;
    rep.length = len;
    const IntervalUnion star = {{-0.5 * len, 0.5 * len}};
    rep.lhs_deficit = 0.5 * (indicator_autocorrelation(star, b) -
                             indicator_autocorrelation(u, b));
    rep.alpha = interval_alpha(u);
    // (|B_b| / |Omega|)^{1 + 1/d} |Omega|^2 alpha^2 with d = 1, |B_b| = 2b.
    const double scale = 2.0 * b / len;
    rep.rhs_scale = scale * scale * len * len * rep.alpha * rep.alpha;
    rep.ratio = rep.rhs_scale > 0.0 ? rep.lhs_deficit / rep.rhs_scale : 0.0;
    return rep;
}

}  // namespace tfloc
