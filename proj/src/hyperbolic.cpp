#include "tfloc/hyperbolic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace tfloc {

double d_hyp(const HypPoint& z, const HypPoint& w) {
    if (!(z.s > 0.0) || !(w.s > 0.0))
        throw input_error("d_hyp: points must lie in the upper half-plane");
    const double dx = z.x - w.x;
    const double num = std::hypot(dx, z.s - w.s);
    const double den = std::hypot(dx, z.s + w.s);
    return 2.0 * std::atanh(num / den);
}

double hyp_ball_nu_closed(double R) { return 2.0 * kPi * (std::cosh(R) - 1.0); }

HypBall hyp_ball(double R) {
    if (!(R > 0.0)) throw input_error("hyp_ball: R must be positive");
    HypBall out;
    out.R = R;
    const double c = std::cosh(R), rho = std::sinh(R);
    out.euclid_center = {0.0, c};
    out.euclid_radius = rho;
    out.nu_measure = integrate(
        [c, rho](double s) {
            const double d = s - c;
            return 2.0 * std::sqrt(std::max(0.0, rho * rho - d * d)) /
                   (s * s);
        },
        c - rho, c + rho, 1e-12, 1e-10);
    return out;
}

CauchyWavelet::CauchyWavelet(double b) : beta(b) {
    if (!(beta > 0.0)) throw input_error("CauchyWavelet: beta must be positive");
    c_beta = std::sqrt(2.0 * kPi * std::pow(2.0, -2.0 * beta) *
                       std::tgamma(2.0 * beta));
}

double cauchy_wavelet_hat(double omega, double beta) {
    if (omega <= 0.0) return 0.0;
    const CauchyWavelet psi(beta);
    return std::pow(omega, beta) * std::exp(-omega) / psi.c_beta;
}

double wavelet_selfoverlap_sq(const HypPoint& z, double beta) {
    if (!(z.s > 0.0))
        throw input_error("wavelet_selfoverlap_sq: point not in half-plane");
    const CauchyWavelet psi(beta);
    const double g = std::tgamma(2.0 * beta + 1.0);
    const double c4 = psi.c_beta * psi.c_beta * psi.c_beta * psi.c_beta;
    const double denom = (1.0 + z.s) * (1.0 + z.s) + z.x * z.x;
    return std::pow(z.s, 2.0 * beta + 1.0) * g * g /
           (c4 * std::pow(denom, 2.0 * beta + 1.0));
}

double wavelet_selfoverlap_sq_quad(const HypPoint& z, double beta) {
    if (!(z.s > 0.0))
        throw input_error("wavelet_selfoverlap_sq_quad: point not in half-plane");
    const CauchyWavelet psi(beta);
    // sqrt(s) int_0^inf psi_hat(w) e^{i x w} psi_hat(s w) dw; the integrand
    // decays like w^{2 beta} e^{-(1+s) w}.
    const double rate = 1.0 + z.s;
    const double wmax = (60.0 + 30.0 * beta) / rate;
    auto magnitude = [&](double w) {
        return std::pow(w, beta) * std::exp(-w) * std::pow(z.s * w, beta) *
               std::exp(-z.s * w) / (psi.c_beta * psi.c_beta);
    };
    const double re = integrate(
        [&](double w) { return magnitude(w) * std::cos(z.x * w); }, 0.0, wmax,
        1e-14, 1e-11);
    const double im = integrate(
        [&](double w) { return magnitude(w) * std::sin(z.x * w); }, 0.0, wmax,
        1e-14, 1e-11);
    return z.s * (re * re + im * im);
}

double cauchy_kernel(double t, double beta) {
    if (t < 0.0) throw input_error("cauchy_kernel: t must be nonnegative");
    const CauchyWavelet psi(beta);
    const double g = std::tgamma(2.0 * beta + 1.0);
    const double c4 = psi.c_beta * psi.c_beta * psi.c_beta * psi.c_beta;
    const double sech = 1.0 / std::cosh(0.5 * t);
    return (g * g / c4) * std::pow(0.25 * sech * sech, 2.0 * beta + 1.0);
}

namespace {

void check_half_plane(const GridSpec& spec, const char* what) {
    if (!(spec.y_min() > 0.0))
        throw input_error(std::string(what) +
                          ": grid must lie strictly above the x-axis");
}

struct HypCell {
    HypPoint z;
    complex_t v;     // field value
    double weight;   // nu-weight h^2 / s^2
};

std::vector<HypCell> collect(const GridField& field) {
    check_half_plane(field.spec, "hyperbolic grid");
    const GridSpec& spec = field.spec;
    const double h2 = spec.h * spec.h;
    std::vector<HypCell> cells;
    for (int iy = 0; iy < spec.ny; ++iy)
        for (int ix = 0; ix < spec.nx; ++ix) {
            const complex_t v = field.values[spec.index(ix, iy)];
            if (v == 0.0) continue;
            const Vec2 c = spec.center(ix, iy);
            cells.push_back({{c.x, c.y}, v, h2 / (c.y * c.y)});
        }
    return cells;
}

}  // namespace

double nu_measure(const GridRegion& region) {
    check_half_plane(region.spec, "nu_measure");
    const GridSpec& spec = region.spec;
    const double h2 = spec.h * spec.h;
    double s = 0.0;
    for (int iy = 0; iy < spec.ny; ++iy) {
        const double sc = spec.center(0, iy).y;
        for (int ix = 0; ix < spec.nx; ++ix)
            if (region.at(ix, iy)) s += h2 / (sc * sc);
    }
    return s;
}

double hyp_hs_norm_sq(const GridField& field, double beta) {
    const std::vector<HypCell> cells = collect(field);
    if (cells.empty()) return 0.0;
    const CauchyWavelet psi(beta);
    const double g = std::tgamma(2.0 * beta + 1.0);
    const double c4 = psi.c_beta * psi.c_beta * psi.c_beta * psi.c_beta;
    const double front = g * g / c4;
    const double expo = 2.0 * beta + 1.0;
    double total = 0.0;
    parallel_reduce_rows(
        cells.size(),
        [&](std::size_t i) {
            const HypCell& a = cells[i];
            double acc = 0.0;
            for (const HypCell& b : cells) {
                // rho(d(z,w)) directly from the cross-ratio:
                // sech^2(d/2)/4 = s_z s_w / |z - conj(w)|^2.
                const double dx = a.z.x - b.z.x;
                const double den = dx * dx + (a.z.s + b.z.s) * (a.z.s + b.z.s);
                const double u = a.z.s * b.z.s / den;
                const double rho = front * std::pow(u, expo);
                acc += (a.v.real() * b.v.real() + a.v.imag() * b.v.imag()) *
                       rho * a.weight * b.weight;
            }
            return acc;
        },
        total);
    return total;
}

double hyp_hs_norm_sq(const GridRegion& region, double beta) {
    return hyp_hs_norm_sq(indicator_field(region), beta);
}

HypBall hyp_rearrange(const GridRegion& region) {
    const double m = nu_measure(region);
    if (!(m > 0.0)) throw input_error("hyp_rearrange: region is empty");
    double lo = 1e-8, hi = std::acosh(1.0 + m / (2.0 * kPi)) + 1.0;
    while (hyp_ball(hi).nu_measure < m) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (hyp_ball(mid).nu_measure < m)
            lo = mid;
        else
            hi = mid;
        if ((hi - lo) < 1e-12 * hi) break;
    }
    HypBall ball = hyp_ball(0.5 * (lo + hi));
    if (std::abs(ball.nu_measure - m) > 1e-8 * m)
        throw numeric_error("hyp_rearrange: measure match did not converge");
    return ball;
}

GridRegion hyp_rearrange_grid(const GridRegion& region,
                              const GridSpec& target) {
    check_half_plane(target, "hyp_rearrange_grid");
    const double m = nu_measure(region);
    if (!(m > 0.0)) throw input_error("hyp_rearrange_grid: region is empty");
    const HypPoint center{0.0, 1.0};
    std::vector<std::size_t> order(target.size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> d(target.size());
    std::vector<double> w(target.size());
    const double h2 = target.h * target.h;
    for (int iy = 0; iy < target.ny; ++iy)
        for (int ix = 0; ix < target.nx; ++ix) {
            const Vec2 c = target.center(ix, iy);
            const std::size_t i = target.index(ix, iy);
            d[i] = d_hyp({c.x, c.y}, center);
            w[i] = h2 / (c.y * c.y);
        }
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });
    GridRegion out(target);
    double acc = 0.0;
    for (std::size_t i : order) {
        if (acc >= m) break;
        out.mask[i] = 1;
        acc += w[i];
    }
    if (acc < m)
        throw input_error("hyp_rearrange_grid: target grid is too small");
    return out;
}

double hyp_riesz(const GridRegion& f, const std::function<double(double)>& g,
                 const GridRegion& h) {
    const std::vector<HypCell> fc = collect(indicator_field(f));
    const std::vector<HypCell> hc = collect(indicator_field(h));
    if (fc.empty() || hc.empty()) return 0.0;
    // Serial: the user-supplied kernel may throw, which must not escape a
    // worker thread.
    double total = 0.0;
    for (const HypCell& a : fc) {
        double acc = 0.0;
        for (const HypCell& b : hc) {
            const double gv = g(d_hyp(a.z, b.z));
            if (!std::isfinite(gv))
                throw numeric_error("hyp_riesz: kernel evaluation not finite");
            acc += gv * a.weight * b.weight;
        }
        total += acc;
    }
    return total;
}

}  // namespace tfloc
