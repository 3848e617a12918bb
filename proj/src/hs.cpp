#include "tfloc/hs.hpp"

#include <algorithm>
#include <cmath>

namespace tfloc {

const char* to_string(HSMethod m) {
    switch (m) {
        case HSMethod::grid_direct: return "grid_direct";
        case HSMethod::grid_convolution: return "grid_convolution";
        case HSMethod::grid_cell_exact: return "grid_cell_exact";
        case HSMethod::radial_bessel: return "radial_bessel";
    }
    return "unknown";
}

double gauss_kernel_sq(const Vec2& z, const Vec2& w) {
    const double dx = z.x - w.x, dy = z.y - w.y;
    return std::exp(-kPi * (dx * dx + dy * dy));
}

complex_t coherent_overlap_closed(const Vec2& z, const Vec2& w) {
    const double dx = z.x - w.x, dw = z.y - w.y;
    const double mag = std::exp(-0.5 * kPi * (dx * dx + dw * dw));
    const double phase = kPi * (z.y - w.y) * (z.x + w.x);
    return mag * complex_t(std::cos(phase), std::sin(phase));
}

complex_t coherent_overlap(const Vec2& z, const Vec2& w) {
    // phi_z(t) = 2^{1/4} e^{2 pi i omega t} e^{-pi (t - x)^2}, z = (x, omega).
    // The integrand decays like a Gaussian centered between the two windows.
    const double c = 0.5 * (z.x + w.x);
    const double half = 6.0 + 0.5 * std::abs(z.x - w.x);
    auto part = [&](bool imag_part) {
        return integrate(
            [&](double t) {
                const double amp = std::sqrt(2.0) *
                                   std::exp(-kPi * ((t - z.x) * (t - z.x) +
                                                    (t - w.x) * (t - w.x)));
                const double phase = 2.0 * kPi * (z.y - w.y) * t;
                return amp * (imag_part ? std::sin(phase) : std::cos(phase));
            },
            c - half, c + half, 1e-14, 1e-12);
    };
    return {part(false), part(true)};
}

double bessel_j(int nu, double x) {
    if (nu < 0) throw input_error("bessel_j: order must be nonnegative");
    if (x < 0.0) throw input_error("bessel_j: argument must be nonnegative");
    return std::cyl_bessel_j(static_cast<double>(nu), x);
}

double ball_fourier(double r, double rho, int d) {
    if (!(r >= 0.0) || !(rho >= 0.0) || d < 1)
        throw input_error("ball_fourier: bad arguments");
    if (r == 0.0) return 0.0;
    const double x = 2.0 * kPi * rho * r;
    if (x < 1e-6) {
        // J_d(x) ~ (x/2)^d / d! * (1 - x^2 / (4(d+1))); the rho^{-d}
        // cancels and the limit is the ball volume omega_{2d} r^{2d}.
        double lead = unit_ball_volume(2 * d) * std::pow(r, 2 * d);
        return lead * (1.0 - x * x / (4.0 * (d + 1)));
    }
    return std::pow(r, d) * std::pow(rho, -d) * bessel_j(d, x);
}

namespace {

struct CellEntry {
    int ix;
    complex_t v;
};

struct SparseRows {
    std::vector<int> iy;                        // rows with nonzero cells
    std::vector<std::vector<CellEntry>> cells;  // per listed row, by ix
    int ix_min = 0, ix_max = -1;                // support bbox in cell indices
    int iy_min = 0, iy_max = -1;
};

SparseRows collect_rows(const GridField& field) {
    const GridSpec& spec = field.spec;
    SparseRows out;
    out.ix_min = spec.nx;
    out.iy_min = spec.ny;
    for (int iy = 0; iy < spec.ny; ++iy) {
        std::vector<CellEntry> row;
        for (int ix = 0; ix < spec.nx; ++ix) {
            const complex_t v = field.values[spec.index(ix, iy)];
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw input_error("hs_norm_sq: field has non-finite entries");
            if (v != 0.0) {
                row.push_back({ix, v});
                out.ix_min = std::min(out.ix_min, ix);
                out.ix_max = std::max(out.ix_max, ix);
            }
        }
        if (!row.empty()) {
            out.iy_min = std::min(out.iy_min, iy);
            out.iy_max = std::max(out.iy_max, iy);
            out.iy.push_back(iy);
            out.cells.push_back(std::move(row));
        }
    }
    return out;
}

void check_margin(const GridSpec& spec, const SparseRows& rows) {
    const double pad = kKernelCutoff - 1e-9;
    const Vec2 lo = spec.center(rows.ix_min, rows.iy_min);
    const Vec2 hi = spec.center(rows.ix_max, rows.iy_max);
    if (lo.x - spec.x_min() < pad || spec.x_max() - hi.x < pad ||
        lo.y - spec.y_min() < pad || spec.y_max() - hi.y < pad)
        throw input_error(
            "hs_norm_sq: grid margin around the support is smaller than the "
            "kernel truncation radius");
}

// One-dimensional Gaussian factors e^{-pi (k h)^2} for |k| <= K.
std::vector<double> gauss_taps(double h, int K) {
    std::vector<double> t(static_cast<std::size_t>(K) + 1);
    for (int k = 0; k <= K; ++k) t[k] = std::exp(-kPi * (k * h) * (k * h));
    return t;
}

double pairs_truncation_bound(const GridField& field) {
    // Dropped pairs have kernel value below e^{-pi R_c^2} < 1e-14.
    const double l1 = field.norm1();
    return 1e-14 * l1 * l1;
}

double direct_sum(const SparseRows& rows, double h, int K,
                  const std::vector<double>& taps) {
    double total = 0.0;
    parallel_reduce_rows(
        rows.iy.size(),
        [&](std::size_t a) {
            const int iy = rows.iy[a];
            double acc = 0.0;
            for (std::size_t b = 0; b < rows.iy.size(); ++b) {
                const int dy = rows.iy[b] - iy;
                if (dy < -K || dy > K) continue;
                const double gy = taps[std::abs(dy)];
                for (const CellEntry& p : rows.cells[a]) {
                    double inner = 0.0;
                    for (const CellEntry& q : rows.cells[b]) {
                        const int dx = q.ix - p.ix;
                        if (dx < -K || dx > K) continue;
                        inner += taps[std::abs(dx)] *
                                 (p.v.real() * q.v.real() +
                                  p.v.imag() * q.v.imag());
                    }
                    acc += gy * inner;
                }
            }
            return acc;
        },
        total);
    return total * h * h * h * h;
}

double convolution_sum(const GridField& field, int K,
                       const std::vector<double>& taps) {
    const GridSpec& spec = field.spec;
    const int nx = spec.nx, ny = spec.ny;
    std::vector<complex_t> pass1(spec.size(), 0.0), pass2(spec.size(), 0.0);
    // Horizontal pass.
    parallel_for(static_cast<std::size_t>(ny), [&](std::size_t row) {
        const int iy = static_cast<int>(row);
        for (int ix = 0; ix < nx; ++ix) {
            complex_t s = 0.0;
            const int k0 = std::max(-K, -ix), k1 = std::min(K, nx - 1 - ix);
            for (int k = k0; k <= k1; ++k)
                s += taps[std::abs(k)] * field.values[spec.index(ix + k, iy)];
            pass1[spec.index(ix, iy)] = s;
        }
    });
    // Vertical pass.
    parallel_for(static_cast<std::size_t>(nx), [&](std::size_t col) {
        const int ix = static_cast<int>(col);
        for (int iy = 0; iy < ny; ++iy) {
            complex_t s = 0.0;
            const int k0 = std::max(-K, -iy), k1 = std::min(K, ny - 1 - iy);
            for (int k = k0; k <= k1; ++k)
                s += taps[std::abs(k)] * pass1[spec.index(ix, iy + k)];
            pass2[spec.index(ix, iy)] = s;
        }
    });
    double total = 0.0;
    parallel_reduce_rows(
        static_cast<std::size_t>(ny),
        [&](std::size_t row) {
            const int iy = static_cast<int>(row);
            double acc = 0.0;
            for (int ix = 0; ix < nx; ++ix) {
                const std::size_t i = spec.index(ix, iy);
                acc += field.values[i].real() * pass2[i].real() +
                       field.values[i].imag() * pass2[i].imag();
            }
            return acc;
        },
        total);
    const double h = spec.h;
    return total * h * h * h * h;
}

// A(k) = int_{cell_0} int_{cell_k} e^{-pi (u - v)^2} du dv for unit-weight
// 1-D cells of width h whose centers are k h apart. Substituting w = u - v
// gives the triangular-weight integral
//   A(k) = int_{-h}^{h} (h - |w|) e^{-pi (k h + w)^2} dw,
// evaluated in closed form with erf.
double cell_pair_weight(double h, int k) {
    auto P = [](double x) { return 0.5 * std::erf(std::sqrt(kPi) * x); };
    auto T = [&](double a) {
        // int_0^h (h - w) e^{-pi (a + w)^2} dw
        return (h + a) * (P(a + h) - P(a)) +
               (std::exp(-kPi * (a + h) * (a + h)) - std::exp(-kPi * a * a)) /
                   (2.0 * kPi);
    };
    const double a = k * h;
    return T(a) + T(-a);
}

std::vector<double> cell_pair_taps(double h, int K) {
    std::vector<double> t(static_cast<std::size_t>(K) + 1);
    for (int k = 0; k <= K; ++k) t[k] = cell_pair_weight(h, k);
    return t;
}

double cell_exact_pairs(const SparseRows& fa, const SparseRows& fb,
                        int shift_x, int shift_y, int K,
                        const std::vector<double>& taps) {
    // sum over cell pairs of Re(v_a conj(v_b)) A(dx) A(dy); the b-grid is
    // offset from the a-grid by (shift_x, shift_y) lattice steps.
    double total = 0.0;
    parallel_reduce_rows(
        fa.iy.size(),
        [&](std::size_t a) {
            const int iy = fa.iy[a];
            double acc = 0.0;
            for (std::size_t b = 0; b < fb.iy.size(); ++b) {
                const int dy = fb.iy[b] + shift_y - iy;
                if (dy < -K || dy > K) continue;
                const double gy = taps[std::abs(dy)];
                for (const CellEntry& p : fa.cells[a]) {
                    double inner = 0.0;
                    for (const CellEntry& q : fb.cells[b]) {
                        const int dx = q.ix + shift_x - p.ix;
                        if (dx < -K || dx > K) continue;
                        inner += taps[std::abs(dx)] *
                                 (p.v.real() * q.v.real() +
                                  p.v.imag() * q.v.imag());
                    }
                    acc += gy * inner;
                }
            }
            return acc;
        },
        total);
    return total;
}

// Cutoff for the cell-exact pair weight: A(k) < h^2 e^{-pi ((k-1) h)^2}.
int cell_exact_cutoff(double h) {
    return static_cast<int>(std::ceil(kKernelCutoff / h)) + 1;
}

}  // namespace

HSResult hs_norm_sq_grid(const GridField& field, HSMethod method) {
    if (method != HSMethod::grid_direct && method != HSMethod::grid_convolution)
        throw input_error("hs_norm_sq_grid: method must be a grid method");
    const double h = field.spec.h;
    SparseRows rows = collect_rows(field);
    HSResult out;
    out.method = method;
    out.resolution = h;
    if (rows.iy.empty()) return out;
    check_margin(field.spec, rows);
    const int K = static_cast<int>(std::ceil(kKernelCutoff / h));
    const std::vector<double> taps = gauss_taps(h, K);
    out.hs_sq = (method == HSMethod::grid_direct)
                    ? direct_sum(rows, h, K, taps)
                    : convolution_sum(field, K, taps);
    // Midpoint sampling is O(h^2); add the stencil truncation bound.
    out.estimated_error = pairs_truncation_bound(field) + h * h * out.hs_sq;
    return out;
}

HSResult hs_norm_sq_cells_exact(const GridField& field) {
    const double h = field.spec.h;
    SparseRows rows = collect_rows(field);
    HSResult out;
    out.method = HSMethod::grid_cell_exact;
    out.resolution = h;
    if (rows.iy.empty()) return out;
    const int K = cell_exact_cutoff(h);
    const std::vector<double> taps = cell_pair_taps(h, K);
    out.hs_sq = cell_exact_pairs(rows, rows, 0, 0, K, taps);
    out.estimated_error = pairs_truncation_bound(field);
    return out;
}

HSResult hs_norm_sq_cells_exact(const GridRegion& omega) {
    return hs_norm_sq_cells_exact(indicator_field(omega));
}

namespace {

double radial_transform(const RadialRegion& omega, double rho) {
    const int d = omega.n / 2;
    double s = 0.0;
    for (auto& [lo, hi] : omega.annuli)
        s += ball_fourier(hi, rho, d) - ball_fourier(lo, rho, d);
    return s;
}

// Quadrature range: the Gaussian factor e^{-pi rho^2} is below 1e-23 past
// rho = 4.2, and |chi_hat|^2 grows at most polynomially there.
constexpr double kRhoMax = 4.2;

}  // namespace

HSResult hs_norm_sq_radial(const RadialRegion& omega) {
    const int d = omega.n / 2;
    const double m = measure(omega);
    const double area = unit_sphere_area(2 * d);
    const double abs_tol = 1e-14 * std::max(1.0, m * m);
    HSResult out;
    out.method = HSMethod::radial_bessel;
    out.resolution = abs_tol;
    if (omega.annuli.empty()) return out;
    out.hs_sq = area * integrate(
                           [&](double rho) {
                               const double c = radial_transform(omega, rho);
                               return std::exp(-kPi * rho * rho) * c * c *
                                      std::pow(rho, 2 * d - 1);
                           },
                           0.0, kRhoMax, abs_tol, 1e-11);
    out.estimated_error = abs_tol + 1e-12 * out.hs_sq;
    return out;
}

HSResult hs_norm_sq_profile(const RadialProfile& profile) {
    const int d = profile.n / 2;
    if (profile.n % 2 != 0 || d < 1)
        throw input_error("hs_norm_sq_profile: dimension must be even and >= 2");
    HSResult out;
    out.method = HSMethod::radial_bessel;
    if (profile.values.empty()) return out;
    // F = sum_k values[k] (chi_{B_{r_{k+1}}} - chi_{B_{r_k}}) telescopes to
    // edge jumps: F_hat(rho) = sum_j (values[j-1] - values[j]) bf(r_j).
    std::vector<double> jump_r, jump_w;
    for (std::size_t j = 1; j < profile.knots.size(); ++j) {
        const double above =
            j < profile.values.size() ? profile.values[j] : 0.0;
        const double w = profile.values[j - 1] - above;
        if (w != 0.0) {
            jump_r.push_back(profile.knots[j]);
            jump_w.push_back(w);
        }
    }
    auto profile_hat = [&](double rho) {
        double s = 0.0;
        for (std::size_t j = 0; j < jump_r.size(); ++j)
            s += jump_w[j] * ball_fourier(jump_r[j], rho, d);
        return s;
    };
    const double l1 = profile.integral();
    const double abs_tol = 1e-13 * std::max(1.0, l1 * l1);
    out.resolution = abs_tol;
    out.hs_sq = unit_sphere_area(2 * d) *
                integrate(
                    [&](double rho) {
                        const double c = profile_hat(rho);
                        return std::exp(-kPi * rho * rho) * c * c *
                               std::pow(rho, 2 * d - 1);
                    },
                    0.0, kRhoMax, abs_tol, 1e-10);
    out.estimated_error = abs_tol + 1e-11 * out.hs_sq;
    return out;
}

double gauss_pair_radial(const RadialRegion& f, const RadialRegion& g,
                         double offset) {
    if (f.n != g.n)
        throw input_error("gauss_pair_radial: dimension mismatch");
    if (offset < 0.0)
        throw input_error("gauss_pair_radial: offset must be nonnegative");
    if (offset > 0.0 && f.n != 2)
        throw input_error("gauss_pair_radial: offsets require n = 2");
    if (f.annuli.empty() || g.annuli.empty()) return 0.0;
    const int d = f.n / 2;
    const double scale = measure(f) * measure(g);
    const double abs_tol = 1e-14 * std::max(1.0, scale);
    return unit_sphere_area(2 * d) *
           integrate(
               [&](double rho) {
                   double v = std::exp(-kPi * rho * rho) *
                              radial_transform(f, rho) *
                              radial_transform(g, rho) *
                              std::pow(rho, 2 * d - 1);
                   if (offset > 0.0)
                       v *= bessel_j(0, 2.0 * kPi * rho * offset);
                   return v;
               },
               0.0, kRhoMax, abs_tol, 1e-11);
}

double gauss_pair_cells_exact(const GridRegion& f, const GridRegion& g) {
    const double h = f.spec.h;
    if (std::abs(g.spec.h - h) > 1e-14 * h)
        throw input_error("gauss_pair_cells_exact: cell sizes differ");
    const double sx = (g.spec.origin.x - f.spec.origin.x) / h;
    const double sy = (g.spec.origin.y - f.spec.origin.y) / h;
    const int shift_x = static_cast<int>(std::lround(sx));
    const int shift_y = static_cast<int>(std::lround(sy));
    if (std::abs(sx - shift_x) > 1e-9 || std::abs(sy - shift_y) > 1e-9)
        throw input_error(
            "gauss_pair_cells_exact: grids do not share a common lattice");
    SparseRows fa = collect_rows(indicator_field(f));
    SparseRows fb = collect_rows(indicator_field(g));
    if (fa.iy.empty() || fb.iy.empty()) return 0.0;
    const int K = cell_exact_cutoff(h);
    return cell_exact_pairs(fa, fb, shift_x, shift_y, K, cell_pair_taps(h, K));
}

double trace_localization(const GridRegion& omega) { return measure(omega); }

double trace_localization(const RadialRegion& omega) { return measure(omega); }

}  // namespace tfloc
