#include "tfloc/common.hpp"

#include <array>
#include <atomic>
#include <cstdlib>
#include <limits>

namespace tfloc {

double unit_ball_volume(int n) {
    if (n < 1) throw input_error("unit_ball_volume: dimension must be >= 1");
    return std::pow(kPi, n / 2.0) / std::tgamma(n / 2.0 + 1.0);
}

double unit_sphere_area(int n) {
    if (n < 1) throw input_error("unit_sphere_area: dimension must be >= 1");
    return 2.0 * std::pow(kPi, n / 2.0) / std::tgamma(n / 2.0);
}

unsigned worker_count() {
    if (const char* env = std::getenv("TFLOC_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

void parallel_reduce_rows(std::size_t n,
                          const std::function<double(std::size_t)>& row,
                          double& out) {
    const unsigned workers = std::min<std::size_t>(worker_count(), n ? n : 1);
    std::vector<double> partial(n, 0.0);
    if (workers <= 1 || n < 2 * workers) {
        for (std::size_t i = 0; i < n; ++i) partial[i] = row(i);
    } else {
        std::vector<std::thread> pool;
        std::atomic<std::size_t> next{0};
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (;;) {
                    std::size_t i = next.fetch_add(1);
                    if (i >= n) break;
                    partial[i] = row(i);
                }
            });
        }
        for (auto& t : pool) t.join();
    }
    // Fixed reduction order: pairwise tree for reproducibility and accuracy.
    std::vector<double> acc = std::move(partial);
    while (acc.size() > 1) {
        std::size_t half = (acc.size() + 1) / 2;
        for (std::size_t i = 0; i + half < acc.size(); ++i) acc[i] += acc[i + half];
        acc.resize(half);
    }
    out = acc.empty() ? 0.0 : acc[0];
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
    const unsigned workers = std::min<std::size_t>(worker_count(), n ? n : 1);
    if (workers <= 1 || n < 2 * workers) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= n) break;
                body(i);
            }
        });
    }
    for (auto& t : pool) t.join();
}

namespace {

// Gauss 7 / Kronrod 15 nodes and weights on [-1, 1].
constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.000000000000000};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

struct GKResult {
    double value;
    double error;
};

GKResult gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double hw = 0.5 * (b - a);
    double kron = 0.0, gauss = 0.0;
    for (int i = 0; i < 8; ++i) {
        const double dx = hw * kKronrodNodes[i];
        const double fv = (i == 7) ? f(c) : f(c - dx) + f(c + dx);
        kron += kKronrodWeights[i] * fv;
        if (i % 2 == 1) gauss += kGaussWeights[i / 2] * fv;
    }
    return {kron * hw, std::abs(kron - gauss) * hw};
}

double integrate_rec(const std::function<double(double)>& f, double a, double b,
                     double tol, int depth, int max_depth) {
    GKResult r = gk15(f, a, b);
    // Stop when the local estimate meets the budget or has reached the
    // round-off floor of the rule; subdividing further cannot improve it.
    const double floor_tol =
        100.0 * std::numeric_limits<double>::epsilon() * std::abs(r.value);
    if (r.error <= std::max(tol, floor_tol) || depth >= max_depth) {
        if (depth >= max_depth && r.error > 1e3 * tol)
            throw numeric_error("integrate: adaptive quadrature did not converge");
        return r.value;
    }
    const double c = 0.5 * (a + b);
    return integrate_rec(f, a, c, 0.5 * tol, depth + 1, max_depth) +
           integrate_rec(f, c, b, 0.5 * tol, depth + 1, max_depth);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol, double rel_tol, int max_depth) {
    GKResult whole = gk15(f, a, b);
    double tol = std::max(abs_tol, rel_tol * std::abs(whole.value));
    return integrate_rec(f, a, b, tol, 0, max_depth);
}

}  // namespace tfloc
