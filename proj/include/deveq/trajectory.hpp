#pragma once

#include <vector>

#include "deveq/hvec.hpp"

namespace deveq {

// H-valued function sampled on a strictly increasing time grid, read between
// samples by linear interpolation and as zero outside [front, back].
struct Trajectory {
    std::vector<double> times;
    std::vector<HVec> values;

    std::size_t points() const { return times.size(); }
    std::size_t dim() const { return values.empty() ? 0 : values.front().size(); }
    double t_front() const { return times.front(); }
    double t_back() const { return times.back(); }
};

// Validates grid monotonicity and uniform coordinate dimension.
Trajectory make_trajectory(std::vector<double> times, std::vector<HVec> values);

Trajectory zero_trajectory(const std::vector<double>& times, std::size_t dim);

// Piecewise-linear value at t, zero outside the grid span.
HVec eval(const Trajectory& x, double t);
double eval_coord(const Trajectory& x, double t, std::size_t j);

bool is_uniform_grid(const std::vector<double>& times, double rel_tol = 1e-9);

std::vector<double> uniform_grid(double t0, double t1, std::size_t points);

// Points T * theta^k >= t_min, ascending (geometric refinement toward 0).
std::vector<double> geometric_grid(double t_min, double T, double theta);

// Sorted union with duplicates (within rel 1e-12) removed.
std::vector<double> merge_grids(const std::vector<double>& a,
                                const std::vector<double>& b);

// Inserts segment midpoints (2x refinement).
std::vector<double> refine_grid(const std::vector<double>& times);

// Exact integral of |x(t)|^2 over [a, b] for the PL interpolant.
double l2_norm_sq(const Trajectory& x, double a, double b);
inline double l2_norm_sq(const Trajectory& x) {
    return l2_norm_sq(x, x.t_front(), x.t_back());
}

// Integral of |x(t)|^4 over the grid span: |x|^4 is piecewise degree-4, so
// 3-point Gauss per segment is exact.
double l4_integral(const Trajectory& x);

// Exact integral of <x(t), y(t)> over the common span (PL both).
double l2_inner(const Trajectory& x, const Trajectory& y, double a, double b);

Trajectory subtract(const Trajectory& x, const Trajectory& y);  // same grid
Trajectory restrict_to(const Trajectory& x, const std::vector<double>& times);

// 3-point derivative at every grid index (exact on quadratics; one-sided
// second-order stencils at the ends). Needs >= 3 points.
std::vector<HVec> grid_derivative(const Trajectory& x);

// Scalar series <A x, x>(t_m) needs spectrum; lives in estimates.

bool all_finite(const Trajectory& x);

}  // namespace deveq
