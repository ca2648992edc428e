#include "deveq/trajectory.hpp"

#include <algorithm>
#include <cmath>

namespace deveq {

Trajectory make_trajectory(std::vector<double> times, std::vector<HVec> values) {
    if (times.size() != values.size())
        throw DimensionError("trajectory: times/values size mismatch");
    if (times.empty()) throw ParameterError("trajectory: empty grid");
    for (std::size_t m = 0; m + 1 < times.size(); ++m)
        if (!(times[m] < times[m + 1]))
            throw ParameterError("trajectory: grid not strictly increasing");
    std::size_t n = values.front().size();
    for (const HVec& v : values)
        require_same_dim(n, v.size(), "trajectory values");
    return Trajectory{std::move(times), std::move(values)};
}

Trajectory zero_trajectory(const std::vector<double>& times, std::size_t dim) {
    return make_trajectory(times, std::vector<HVec>(times.size(), HVec(dim, 0.0)));
}

// Index of the segment containing t, or npos outside the span.
static std::size_t segment_index(const std::vector<double>& times, double t) {
    if (t < times.front() || t > times.back()) return static_cast<std::size_t>(-1);
    auto it = std::upper_bound(times.begin(), times.end(), t);
    std::size_t m = static_cast<std::size_t>(it - times.begin());
    if (m == 0) return 0;
    if (m >= times.size()) return times.size() - 2;
    return m - 1;
}

HVec eval(const Trajectory& x, double t) {
    std::size_t m = segment_index(x.times, t);
    if (m == static_cast<std::size_t>(-1)) return HVec(x.dim(), 0.0);
    if (x.points() == 1) return x.values[0];
    double h = x.times[m + 1] - x.times[m];
    double s = (t - x.times[m]) / h;
    HVec w(x.dim());
    for (std::size_t j = 0; j < w.size(); ++j)
        w[j] = (1.0 - s) * x.values[m][j] + s * x.values[m + 1][j];
    return w;
}

double eval_coord(const Trajectory& x, double t, std::size_t j) {
    std::size_t m = segment_index(x.times, t);
    if (m == static_cast<std::size_t>(-1)) return 0.0;
    if (x.points() == 1) return x.values[0].at(j);
    double h = x.times[m + 1] - x.times[m];
    double s = (t - x.times[m]) / h;
    return (1.0 - s) * x.values[m][j] + s * x.values[m + 1][j];
}

bool is_uniform_grid(const std::vector<double>& times, double rel_tol) {
    if (times.size() < 2) return true;
    double h = (times.back() - times.front()) / double(times.size() - 1);
    for (std::size_t m = 0; m + 1 < times.size(); ++m)
        if (std::abs(times[m + 1] - times[m] - h) > rel_tol * h) return false;
    return true;
}

std::vector<double> uniform_grid(double t0, double t1, std::size_t points) {
    if (points < 2) throw ParameterError("uniform_grid: need >= 2 points");
    if (!(t1 > t0)) throw ParameterError("uniform_grid: t1 must exceed t0");
    std::vector<double> g(points);
    double h = (t1 - t0) / double(points - 1);
    for (std::size_t m = 0; m < points; ++m) g[m] = t0 + h * double(m);
    g.back() = t1;
    return g;
}

std::vector<double> geometric_grid(double t_min, double T, double theta) {
    if (!(theta > 0.0 && theta < 1.0))
        throw ParameterError("geometric_grid: theta must be in (0,1)");
    if (!(0.0 < t_min && t_min < T))
        throw ParameterError("geometric_grid: need 0 < t_min < T");
    std::vector<double> g;
    for (double t = T; t >= t_min; t *= theta) g.push_back(t);
    std::reverse(g.begin(), g.end());
    return g;
}

std::vector<double> merge_grids(const std::vector<double>& a,
                                const std::vector<double>& b) {
    std::vector<double> g;
    g.reserve(a.size() + b.size());
    g.insert(g.end(), a.begin(), a.end());
    g.insert(g.end(), b.begin(), b.end());
    std::sort(g.begin(), g.end());
    std::vector<double> out;
    out.reserve(g.size());
    double span = std::max(std::abs(g.front()), std::abs(g.back())) + 1e-300;
    for (double t : g)
        if (out.empty() || t - out.back() > 1e-12 * span) out.push_back(t);
    return out;
}

std::vector<double> refine_grid(const std::vector<double>& times) {
    std::vector<double> g;
    g.reserve(2 * times.size());
    for (std::size_t m = 0; m + 1 < times.size(); ++m) {
        g.push_back(times[m]);
        g.push_back(0.5 * (times[m] + times[m + 1]));
    }
    g.push_back(times.back());
    return g;
}

// Exact integral of <u(s), v(s)> over one PL segment of length h:
// h/6 * (2<u0,v0> + <u0,v1> + <u1,v0> + 2<u1,v1>).
static double segment_inner(const HVec& u0, const HVec& u1, const HVec& v0,
                            const HVec& v1, double h) {
    double s = 0.0;
    for (std::size_t j = 0; j < u0.size(); ++j)
        s += 2.0 * u0[j] * v0[j] + u0[j] * v1[j] + u1[j] * v0[j] +
             2.0 * u1[j] * v1[j];
    return s * h / 6.0;
}

double l2_norm_sq(const Trajectory& x, double a, double b) {
    if (!(b >= a)) throw ParameterError("l2_norm_sq: b < a");
    double total = 0.0;
    for (std::size_t m = 0; m + 1 < x.points(); ++m) {
        double lo = std::max(a, x.times[m]);
        double hi = std::min(b, x.times[m + 1]);
        if (hi <= lo) continue;
        HVec u0 = (lo == x.times[m]) ? x.values[m] : eval(x, lo);
        HVec u1 = (hi == x.times[m + 1]) ? x.values[m + 1] : eval(x, hi);
        total += segment_inner(u0, u1, u0, u1, hi - lo);
    }
    return total;
}

double l2_inner(const Trajectory& x, const Trajectory& y, double a, double b) {
    require_same_dim(x.dim(), y.dim(), "l2_inner");
    std::vector<double> grid = merge_grids(x.times, y.times);
    double total = 0.0;
    for (std::size_t m = 0; m + 1 < grid.size(); ++m) {
        double lo = std::max(a, grid[m]);
        double hi = std::min(b, grid[m + 1]);
        if (hi <= lo) continue;
        total += segment_inner(eval(x, lo), eval(x, hi), eval(y, lo),
                               eval(y, hi), hi - lo);
    }
    return total;
}

double l4_integral(const Trajectory& x) {
    // 3-point Gauss-Legendre nodes on [0,1], exact through degree 5.
    static const double node[3] = {0.1127016653792583, 0.5, 0.8872983346207417};
    static const double wght[3] = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};
    double total = 0.0;
    for (std::size_t m = 0; m + 1 < x.points(); ++m) {
        double h = x.times[m + 1] - x.times[m];
        for (int q = 0; q < 3; ++q) {
            double s = node[q];
            double nsq = 0.0;
            for (std::size_t j = 0; j < x.dim(); ++j) {
                double v = (1.0 - s) * x.values[m][j] + s * x.values[m + 1][j];
                nsq += v * v;
            }
            total += wght[q] * h * nsq * nsq;
        }
    }
    return total;
}

Trajectory subtract(const Trajectory& x, const Trajectory& y) {
    if (x.times != y.times)
        throw ParameterError("subtract: trajectories on different grids");
    std::vector<HVec> vals(x.points());
    for (std::size_t m = 0; m < x.points(); ++m) vals[m] = sub(x.values[m], y.values[m]);
    return make_trajectory(x.times, std::move(vals));
}

Trajectory restrict_to(const Trajectory& x, const std::vector<double>& times) {
    std::vector<HVec> vals(times.size());
    for (std::size_t m = 0; m < times.size(); ++m) vals[m] = eval(x, times[m]);
    return make_trajectory(times, std::move(vals));
}

std::vector<HVec> grid_derivative(const Trajectory& x) {
    if (x.points() < 3)
        throw ParameterError("grid_derivative: need >= 3 grid points");
    std::size_t M = x.points();
    std::vector<HVec> d(M, HVec(x.dim(), 0.0));
    auto stencil = [&](std::size_t m, std::size_t a, std::size_t b, std::size_t c) {
        // derivative at t_m from values at t_a < t_b < t_c, exact on quadratics
        double ta = x.times[a], tb = x.times[b], tc = x.times[c], t = x.times[m];
        double wa = ((t - tb) + (t - tc)) / ((ta - tb) * (ta - tc));
        double wb = ((t - ta) + (t - tc)) / ((tb - ta) * (tb - tc));
        double wc = ((t - ta) + (t - tb)) / ((tc - ta) * (tc - tb));
        for (std::size_t j = 0; j < x.dim(); ++j)
            d[m][j] = wa * x.values[a][j] + wb * x.values[b][j] + wc * x.values[c][j];
    };
    stencil(0, 0, 1, 2);
    for (std::size_t m = 1; m + 1 < M; ++m) stencil(m, m - 1, m, m + 1);
    stencil(M - 1, M - 3, M - 2, M - 1);
    return d;
}

bool all_finite(const Trajectory& x) {
    for (const HVec& v : x.values)
        if (!all_finite(v)) return false;
    return true;
}

}  // namespace deveq
