#include "deveq/linear.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>

namespace deveq {

CVec resolvent_apply(const SpectrumSpec& spec, double omega, const CVec& v) {
    require_same_dim(spec.dim(), v.size(), "resolvent_apply");
    CVec w(v.size());
    for (std::size_t j = 0; j < v.size(); ++j)
        w[j] = v[j] / std::complex<double>(1.0, omega * spec.alphas[j]);
    return w;
}

CVec resolvent_apply(const SpectrumSpec& spec, double omega, const HVec& v) {
    CVec cv(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) cv[j] = v[j];
    return resolvent_apply(spec, omega, cv);
}

double resolvent_symbol_modulus(double alpha, double omega) {
    double wa = omega * alpha;
    return 1.0 / std::sqrt(1.0 + wa * wa);
}

double resolvent_flux_modulus(double alpha, double omega) {
    double wa = omega * alpha;
    return std::abs(wa) / std::sqrt(1.0 + wa * wa);
}

double min_noncenter_alpha(const SpectrumSpec& spec) {
    double m = 0.0;
    for (double a : spec.alphas) {
        double aa = std::abs(a);
        if (aa == 0.0) continue;
        if (m == 0.0 || aa < m) m = aa;
    }
    if (m == 0.0) throw ModelError("spectrum has no noncenter modes");
    return m;
}

static void check_support(const SpectrumSpec& spec, const HVec& g, Subspace tag,
                          const char* name) {
    require_same_dim(spec.dim(), g.size(), name);
    for (std::size_t j = 0; j < g.size(); ++j)
        if (g[j] != 0.0 && !in_subspace(spec.alphas[j], tag))
            throw ParameterError(std::string(name) + ": coordinate " +
                                 std::to_string(j) + " outside the " +
                                 to_string(tag) + " subspace");
}

BoundaryData weak_data(const SpectrumSpec& spec, HVec g0, HVec g1) {
    check_support(spec, g0, Subspace::stable, "boundary g0");
    check_support(spec, g1, Subspace::unstable, "boundary g1");
    return BoundaryData{std::move(g0), std::move(g1), false, {}, {}};
}

BoundaryData mild_data(const SpectrumSpec& spec, const HVec& h0, const HVec& h1) {
    HVec g0 = abs_power(spec, project(spec, h0, Subspace::stable), 0.5);
    HVec g1 = abs_power(spec, project(spec, h1, Subspace::unstable), 0.5);
    BoundaryData bd{std::move(g0), std::move(g1), true, h0, h1};
    return bd;
}

// ---------------------------------------------------------------------------
// Fourier route

namespace {

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

struct FftPlan {
    std::size_t n;
    fftw_complex* buf;
    fftw_plan fwd;
    fftw_plan inv;

    explicit FftPlan(std::size_t n_) : n(n_) {
        buf = fftw_alloc_complex(n);
        fwd = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, FFTW_FORWARD,
                               FFTW_ESTIMATE);
        inv = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, FFTW_BACKWARD,
                               FFTW_ESTIMATE);
    }
    ~FftPlan() {
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(inv);
        fftw_free(buf);
    }
    FftPlan(const FftPlan&) = delete;
    FftPlan& operator=(const FftPlan&) = delete;
};

}  // namespace

FourierSolution solve_fourier(const SpectrumSpec& spec, const Trajectory& f,
                              std::size_t pad_factor) {
    if (pad_factor < 4)
        throw ParameterError("solve_fourier: pad_factor must be >= 4");
    if (f.points() < 2) throw ParameterError("solve_fourier: need >= 2 samples");
    if (!is_uniform_grid(f.times))
        throw ParameterError("solve_fourier: grid must be uniform");
    require_same_dim(spec.dim(), f.dim(), "solve_fourier");

    const std::size_t M = f.points();
    const double h = (f.t_back() - f.t_front()) / double(M - 1);

    // The response of a mode alpha dies off over ~|alpha| in time; pad by
    // 16 decay lengths so wrap-around sits near e^{-16} of the data scale.
    const std::size_t decay_pad =
        static_cast<std::size_t>(std::ceil(16.0 * spec.norm_bound / h));
    const std::size_t L = next_pow2(std::max(pad_factor * M, M + 2 * decay_pad));
    const std::size_t p0 = (L - M) / 2;

    FftPlan plan(L);
    std::vector<HVec> xs(L, HVec(spec.dim(), 0.0));
    const double two_pi = 2.0 * 3.14159265358979323846;

    for (std::size_t j = 0; j < spec.dim(); ++j) {
        for (std::size_t i = 0; i < L; ++i) {
            plan.buf[i][0] = 0.0;
            plan.buf[i][1] = 0.0;
        }
        for (std::size_t m = 0; m < M; ++m) plan.buf[p0 + m][0] = f.values[m][j];
        fftw_execute(plan.fwd);
        const double alpha = spec.alphas[j];
        for (std::size_t k = 0; k < L; ++k) {
            double kk = (k <= L / 2) ? double(k) : double(k) - double(L);
            double omega = two_pi * kk / (double(L) * h);
            std::complex<double> z(plan.buf[k][0], plan.buf[k][1]);
            z /= std::complex<double>(1.0, omega * alpha);
            plan.buf[k][0] = z.real();
            plan.buf[k][1] = z.imag();
        }
        fftw_execute(plan.inv);
        for (std::size_t i = 0; i < L; ++i)
            xs[i][j] = plan.buf[i][0] / double(L);
    }

    std::vector<double> times(L);
    for (std::size_t i = 0; i < L; ++i)
        times[i] = f.t_front() + (double(i) - double(p0)) * h;

    double gap = double(std::min(p0, L - p0 - M)) * h;
    double wrap = 0.0;
    for (double a : spec.alphas)
        if (a != 0.0) wrap = std::max(wrap, std::exp(-gap / std::abs(a)));

    return FourierSolution{make_trajectory(std::move(times), std::move(xs)), wrap};
}

// ---------------------------------------------------------------------------
// Variation-of-constants route

double voc_weight_far(double w) {
    if (w < 0.03) {
        // (1-(1+w)e^{-w})/w = sum_{n>=2} (-1)^n (n-1) w^{n-1}/n!
        double sum = 0.0, pw = w, fact = 1.0, sign = 1.0;
        for (int n = 2; n <= 10; ++n) {
            fact *= n;
            sum += sign * double(n - 1) * pw / fact;
            pw *= w;
            sign = -sign;
        }
        return sum;
    }
    return (1.0 - (1.0 + w) * std::exp(-w)) / w;
}

double voc_weight_near(double w) {
    if (w < 0.03) {
        // (w-1+e^{-w})/w = sum_{n>=2} (-1)^n w^{n-1}/n!
        double sum = 0.0, pw = w, fact = 1.0, sign = 1.0;
        for (int n = 2; n <= 10; ++n) {
            fact *= n;
            sum += sign * pw / fact;
            pw *= w;
            sign = -sign;
        }
        return sum;
    }
    return (w - 1.0 + std::exp(-w)) / w;
}

Trajectory solve_voc(const SpectrumSpec& spec, const Trajectory& f, double cutoff_a,
                     const std::vector<double>& output_times) {
    if (!(cutoff_a > 0.0))
        throw ParameterError("solve_voc: spectral cutoff must be > 0");
    require_same_dim(spec.dim(), f.dim(), "solve_voc");

    std::vector<double> grid = output_times.empty()
                                   ? f.times
                                   : merge_grids(f.times, output_times);
    const std::size_t M = grid.size();
    const std::size_t N = spec.dim();

    // Samples of f on the working grid with the zero extension made explicit:
    // segments whose midpoint falls outside the support span carry f = 0.
    std::vector<HVec> fv(M);
    for (std::size_t m = 0; m < M; ++m) fv[m] = eval(f, grid[m]);

    auto segment_in_support = [&](std::size_t m) {
        double mid = 0.5 * (grid[m] + grid[m + 1]);
        return mid >= f.t_front() && mid <= f.t_back();
    };

    std::vector<HVec> ys(M, HVec(N, 0.0));
    for (std::size_t j = 0; j < N; ++j) {
        const double alpha = spec.alphas[j];
        if (alpha == 0.0) {
            // center modes: y_c = f pointwise
            for (std::size_t m = 0; m < M; ++m) {
                bool inside = grid[m] >= f.t_front() && grid[m] <= f.t_back();
                ys[m][j] = inside ? fv[m][j] : 0.0;
            }
            continue;
        }
        const double aa = std::abs(alpha);
        if (aa < cutoff_a) continue;  // spectral cutoff: mode omitted
        if (alpha > 0.0) {
            double y = 0.0;  // f vanishes before the first grid point
            ys[0][j] = 0.0;
            for (std::size_t m = 0; m + 1 < M; ++m) {
                double hseg = grid[m + 1] - grid[m];
                double w = hseg / alpha;
                double decay = std::exp(-w);
                y *= decay;
                if (segment_in_support(m))
                    y += fv[m][j] * voc_weight_far(w) +
                         fv[m + 1][j] * voc_weight_near(w);
                ys[m + 1][j] = y;
            }
        } else {
            double beta = -alpha;
            double y = 0.0;  // f vanishes beyond the last grid point
            ys[M - 1][j] = 0.0;
            for (std::size_t m = M - 1; m-- > 0;) {
                double hseg = grid[m + 1] - grid[m];
                double w = hseg / beta;
                double decay = std::exp(-w);
                y *= decay;
                if (segment_in_support(m))
                    y += fv[m + 1][j] * voc_weight_far(w) +
                         fv[m][j] * voc_weight_near(w);
                ys[m][j] = y;
            }
        }
    }

    Trajectory full = make_trajectory(std::move(grid), std::move(ys));
    if (output_times.empty()) return full;
    return restrict_to(full, output_times);
}

Trajectory solve_bvp(const SpectrumSpec& spec, const Trajectory& f,
                     const BoundaryData& bd,
                     const std::vector<double>& output_times) {
    check_support(spec, bd.g0, Subspace::stable, "solve_bvp g0");
    check_support(spec, bd.g1, Subspace::unstable, "solve_bvp g1");
    const double t0 = f.t_front();
    const double t1 = f.t_back();
    double a = 0.5 * min_noncenter_alpha(spec);
    Trajectory x = solve_voc(spec, f, a, output_times);
    for (std::size_t m = 0; m < x.points(); ++m) {
        double t = x.times[m];
        for (std::size_t j = 0; j < spec.dim(); ++j) {
            double alpha = spec.alphas[j];
            if (alpha > 0.0 && bd.g0[j] != 0.0 && t >= t0)
                x.values[m][j] += semigroup_factor(alpha, t - t0, 0.5) * bd.g0[j];
            if (alpha < 0.0 && bd.g1[j] != 0.0 && t <= t1)
                x.values[m][j] += semigroup_factor(alpha, t - t1, 0.5) * bd.g1[j];
        }
    }
    return x;
}

double mild_defect(const SpectrumSpec& spec, const HVec& g, double tol_center) {
    return norm(abs_power_inv(spec, g, 0.5, tol_center));
}

double linear_residual(const SpectrumSpec& spec, const Trajectory& x,
                       const std::function<HVec(double)>& f) {
    if (x.points() < 3) throw ParameterError("linear_residual: grid too short");
    require_same_dim(spec.dim(), x.dim(), "linear_residual");
    std::vector<HVec> ax(x.points());
    for (std::size_t m = 0; m < x.points(); ++m) ax[m] = apply_A(spec, x.values[m]);
    Trajectory axt = make_trajectory(x.times, std::move(ax));
    std::vector<HVec> dax = grid_derivative(axt);

    std::vector<double> inner(x.times.begin() + 1, x.times.end() - 1);
    std::vector<HVec> rv(inner.size());
    for (std::size_t m = 0; m < inner.size(); ++m) {
        HVec r = dax[m + 1];
        axpy(r, 1.0, x.values[m + 1]);
        axpy(r, -1.0, f(inner[m]));
        rv[m] = std::move(r);
    }
    if (inner.size() < 2) throw ParameterError("linear_residual: grid too short");
    Trajectory res = make_trajectory(inner, std::move(rv));
    double denom = std::sqrt(l2_norm_sq(x, inner.front(), inner.back()));
    double num = std::sqrt(l2_norm_sq(res));
    if (denom == 0.0) return num;
    return num / denom;
}

double linear_residual(const SpectrumSpec& spec, const Trajectory& x,
                       const Trajectory& f) {
    return linear_residual(spec, x, [&](double t) { return eval(f, t); });
}

}  // namespace deveq
