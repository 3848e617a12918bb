#include "tfloc/stft.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "tfloc/hs.hpp"

namespace tfloc {

double Signal::norm2_sq() const {
    double s = 0.0;
    for (auto& v : samples) s += std::norm(v);
    return s * time_step;
}

namespace {

Signal sampled(double half_width, double dt,
               const std::function<complex_t(double)>& f) {
    if (!(half_width > 0.0) || !(dt > 0.0))
        throw input_error("signal sampling: bad window parameters");
    Signal out;
    out.time_step = dt;
    const long n = std::lround(half_width / dt);
    out.t0 = -static_cast<double>(n) * dt;
    out.samples.resize(static_cast<std::size_t>(2 * n + 1));
    for (std::size_t j = 0; j < out.samples.size(); ++j)
        out.samples[j] = f(out.time_at(j));
    return out;
}

// Hermite function values h_0..h_order at one point, in the convention
// h_n(t) = c_n H_n(sqrt(2 pi) t) e^{-pi t^2} with unit L^2 norm; these are
// eigenfunctions of the Fourier transform.
double hermite_value(int order, double t) {
    const double x = std::sqrt(2.0 * kPi) * t;
    double hm1 = 0.0, h = 1.0;  // H_0
    for (int n = 0; n < order; ++n) {
        const double next = 2.0 * x * h - 2.0 * n * hm1;
        hm1 = h;
        h = next;
    }
    double c = std::pow(2.0, 0.25);
    for (int n = 1; n <= order; ++n) c /= std::sqrt(2.0 * n);
    return c * h * std::exp(-kPi * t * t);
}

}  // namespace

Signal sample_gaussian_window(double half_width, double dt) {
    return sampled(half_width, dt, [](double t) {
        return complex_t(std::pow(2.0, 0.25) * std::exp(-kPi * t * t), 0.0);
    });
}

Signal sample_hermite(int order, double half_width, double dt) {
    if (order < 0) throw input_error("sample_hermite: order must be >= 0");
    return sampled(half_width, dt, [order](double t) {
        return complex_t(hermite_value(order, t), 0.0);
    });
}

Signal random_hermite_combination(unsigned seed, int max_order,
                                  double half_width, double dt) {
    if (max_order < 0)
        throw input_error("random_hermite_combination: bad order");
    std::mt19937 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<complex_t> coeff(static_cast<std::size_t>(max_order) + 1);
    for (int n = 0; n <= max_order; ++n)
        coeff[n] = complex_t(gauss(rng), gauss(rng)) * std::exp(-0.5 * n);
    Signal out = sampled(half_width, dt, [&](double t) {
        complex_t s = 0.0;
        for (int n = 0; n <= max_order; ++n)
            s += coeff[n] * hermite_value(n, t);
        return s;
    });
    const double norm = std::sqrt(out.norm2_sq());
    if (!(norm > 0.0))
        throw input_error("random_hermite_combination: zero signal");
    for (auto& v : out.samples) v /= norm;
    return out;
}

GridSpec default_phase_grid(double extent, double h) {
    const long n = std::lround(extent / h);
    return GridSpec({-static_cast<double>(n) * h, -static_cast<double>(n) * h},
                    h, static_cast<int>(2 * n + 1), static_cast<int>(2 * n + 1));
}

namespace {

// Smallest time window holding all but 1e-12 of the energy.
std::pair<double, double> effective_support(const Signal& f, double total) {
    const double cut = 1e-12 * total / f.time_step;
    double acc = 0.0;
    std::size_t lo = 0;
    for (; lo < f.samples.size(); ++lo) {
        acc += std::norm(f.samples[lo]);
        if (acc > cut) break;
    }
    acc = 0.0;
    std::size_t hi = f.samples.size();
    while (hi > 0) {
        acc += std::norm(f.samples[hi - 1]);
        if (acc > cut) break;
        --hi;
    }
    return {f.time_at(lo), f.time_at(hi > 0 ? hi - 1 : 0)};
}

void check_signal(const Signal& f, const GridSpec* spec) {
    if (f.samples.empty() || !(f.time_step > 0.0))
        throw input_error("stft: empty or unsampled signal");
    const double total = f.norm2_sq();
    if (total == 0.0) return;
    // Edge decay: the signal must vanish at its sample-window ends.
    double edge = 0.0;
    const std::size_t k = std::min<std::size_t>(3, f.samples.size());
    for (std::size_t j = 0; j < k; ++j)
        edge += std::norm(f.samples[j]) +
                std::norm(f.samples[f.samples.size() - 1 - j]);
    if (std::sqrt(edge * f.time_step) > 1e-6 * std::sqrt(total))
        throw input_error("stft: signal does not decay within its window");
    if (spec) {
        const auto [ta, tb] = effective_support(f, total);
        if (spec->x_min() > ta - kKernelCutoff ||
            spec->x_max() < tb + kKernelCutoff)
            throw input_error(
                "stft: grid does not cover the signal support with margin");
    }
}

complex_t stft_point(const Signal& f, double x, double omega) {
    // V f(x, w) = int f(y) phi(y - x) e^{-2 pi i w y} dy, phi Gaussian;
    // the window is truncated at |y - x| <= 3.2.
    const double amp0 = std::pow(2.0, 0.25);
    const long j0 = std::max<long>(
        0, std::lround(std::ceil((x - kKernelCutoff - f.t0) / f.time_step)));
    const long j1 = std::min<long>(
        static_cast<long>(f.samples.size()) - 1,
        std::lround(std::floor((x + kKernelCutoff - f.t0) / f.time_step)));
    complex_t s = 0.0;
    for (long j = j0; j <= j1; ++j) {
        const double y = f.time_at(static_cast<std::size_t>(j));
        const double win = amp0 * std::exp(-kPi * (y - x) * (y - x));
        const double phase = -2.0 * kPi * omega * y;
        s += f.samples[static_cast<std::size_t>(j)] * win *
             complex_t(std::cos(phase), std::sin(phase));
    }
    return s * f.time_step;
}

}  // namespace

GridField stft_gaussian(const Signal& f, const GridSpec& spec) {
    check_signal(f, &spec);
    GridField out(spec);
    parallel_for(static_cast<std::size_t>(spec.ny), [&](std::size_t row) {
        const int iy = static_cast<int>(row);
        for (int ix = 0; ix < spec.nx; ++ix) {
            const Vec2 z = spec.center(ix, iy);
            out.values[spec.index(ix, iy)] = stft_point(f, z.x, z.y);
        }
    });
    return out;
}

double local_energy(const GridField& v, const GridRegion& omega) {
    if (!(v.spec == omega.spec))
        throw input_error("local_energy: spectrogram and region grids differ");
    double s = 0.0;
    for (std::size_t i = 0; i < v.values.size(); ++i)
        if (omega.mask[i]) s += std::norm(v.values[i]);
    return s * v.spec.h * v.spec.h;
}

QuadraticFormCheck quadratic_form_check(const Signal& f,
                                        const GridRegion& omega) {
    check_signal(f, nullptr);
    const GridSpec& spec = omega.spec;
    std::vector<Vec2> centers;
    for (int iy = 0; iy < spec.ny; ++iy)
        for (int ix = 0; ix < spec.nx; ++ix)
            if (omega.at(ix, iy)) centers.push_back(spec.center(ix, iy));
    QuadraticFormCheck out;
    if (centers.empty()) return out;
    std::vector<complex_t> vf(centers.size());
    parallel_for(centers.size(), [&](std::size_t i) {
        vf[i] = stft_point(f, centers[i].x, centers[i].y);
    });
    const double h2 = spec.h * spec.h;
    for (auto& v : vf) out.lhs += std::norm(v);
    out.lhs *= h2;
    // Second route: synthesize g = L_Omega f = h^2 sum_z V f(z) phi_z in
    // the time domain and take <g, f>.
    const double amp0 = std::pow(2.0, 0.25);
    double rhs = 0.0;
    parallel_reduce_rows(
        f.samples.size(),
        [&](std::size_t j) {
            const double t = f.time_at(j);
            complex_t g = 0.0;
            for (std::size_t i = 0; i < centers.size(); ++i) {
                const double dxt = t - centers[i].x;
                if (std::abs(dxt) > kKernelCutoff) continue;
                const double win = amp0 * std::exp(-kPi * dxt * dxt);
                const double phase = 2.0 * kPi * centers[i].y * t;
                g += vf[i] * win * complex_t(std::cos(phase), std::sin(phase));
            }
            return (g * std::conj(f.samples[j])).real();
        },
        rhs);
    out.rhs = rhs * h2 * f.time_step;
    out.gap = std::abs(out.lhs - out.rhs);
    return out;
}

LiebReport lieb_check(const Signal& f, const GridField& v, double p) {
    if (!(p >= 2.0 && p <= 8.0))
        throw input_error("lieb_check: p must lie in [2, 8]");
    LiebReport out;
    double s = 0.0;
    for (auto& val : v.values) {
        const double a2 = std::norm(val);
        if (a2 > 0.0) s += std::pow(a2, 0.5 * p);
    }
    out.lhs = s * v.spec.h * v.spec.h;
    out.rhs = (2.0 / p) * std::pow(f.norm2_sq(), 0.5 * p);
    out.slack = out.rhs - out.lhs;
    return out;
}

}  // namespace tfloc
