#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace tfloc {

using complex_t = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Raised on malformed user input (bad files, out-of-range parameters).
struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised when a numeric routine fails to converge to its target accuracy.
struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    bool operator==(const Vec2&) const = default;
};

inline double dist(const Vec2& a, const Vec2& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

/// Volume of the unit ball in R^n.
double unit_ball_volume(int n);

/// Surface area of the unit sphere S^{n-1} in R^n.
double unit_sphere_area(int n);

/// Worker count: TFLOC_THREADS if set, else hardware concurrency.
unsigned worker_count();

/// Deterministic parallel loop over [0, n): each index produces a partial
/// result combined sequentially in index order, so the output does not
/// depend on the thread count.
void parallel_reduce_rows(std::size_t n,
                          const std::function<double(std::size_t)>& row,
                          double& out);

/// Parallel loop over [0, n); `body(i)` writes only to index-i output.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

/// Adaptive Gauss-Kronrod (G7/K15) quadrature on [a, b].
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-12, double rel_tol = 1e-10,
                 int max_depth = 40);

}  // namespace tfloc
