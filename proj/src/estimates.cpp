#include "deveq/estimates.hpp"

#include <algorithm>
#include <cmath>

#include "deveq/rng.hpp"
#include "deveq/semigroup.hpp"

namespace deveq {

namespace {

void require_finite(const Trajectory& x, const char* where) {
    if (!all_finite(x))
        throw PreconditionError(std::string(where) + ": non-finite trajectory values");
}

void require_finite(const std::vector<double>& v, const char* where) {
    for (double x : v)
        if (!std::isfinite(x))
            throw PreconditionError(std::string(where) + ": non-finite series value");
}

double sup_norm(const Trajectory& x) {
    double s = 0.0;
    for (const HVec& v : x.values) s = std::max(s, norm(v));
    return s;
}

// 5-point Gauss-Legendre over [a, b] split into panels.
double gauss5(const std::function<double(double)>& f, double a, double b,
              int panels) {
    static const double xs[5] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                                 0.5384693101056831, 0.9061798459386640};
    static const double ws[5] = {0.2369268850561891, 0.4786286704993665,
                                 0.5688888888888889, 0.4786286704993665,
                                 0.2369268850561891};
    double h = (b - a) / panels;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        double lo = a + p * h;
        double mid = lo + 0.5 * h;
        for (int q = 0; q < 5; ++q)
            total += ws[q] * f(mid + 0.5 * h * xs[q]);
    }
    return total * 0.5 * h;
}

// Exact integral of <u,v> for vectors linear over a segment of length h.
double pl_inner(const HVec& u0, const HVec& u1, const HVec& v0, const HVec& v1,
                double h) {
    double s = 0.0;
    for (std::size_t j = 0; j < u0.size(); ++j)
        s += 2.0 * u0[j] * v0[j] + u0[j] * v1[j] + u1[j] * v0[j] +
             2.0 * u1[j] * v1[j];
    return s * h / 6.0;
}

double partial_trapezoid(const std::vector<double>& t,
                         const std::vector<double>& v, double a, double b) {
    double total = 0.0;
    for (std::size_t m = 0; m + 1 < t.size(); ++m) {
        double lo = std::max(a, t[m]);
        double hi = std::min(b, t[m + 1]);
        if (hi <= lo) continue;
        double h = t[m + 1] - t[m];
        double va = v[m] + (v[m + 1] - v[m]) * (lo - t[m]) / h;
        double vb = v[m] + (v[m + 1] - v[m]) * (hi - t[m]) / h;
        total += 0.5 * (hi - lo) * (va + vb);
    }
    return total;
}

// 3-point derivative of a scalar series at interior index m.
double scalar_derivative(const std::vector<double>& t,
                         const std::vector<double>& v, std::size_t m) {
    double ta = t[m - 1], tb = t[m], tc = t[m + 1];
    double wa = (2.0 * tb - tb - tc) / ((ta - tb) * (ta - tc));
    double wb = (2.0 * tb - ta - tc) / ((tb - ta) * (tb - tc));
    double wc = (2.0 * tb - ta - tb) / ((tc - ta) * (tc - tb));
    return wa * v[m - 1] + wb * v[m] + wc * v[m + 1];
}

}  // namespace

// ---------------------------------------------------------------------------
// Difference / averaging operators

HVec integral_vec(const Trajectory& x, double a, double b) {
    HVec total(x.dim(), 0.0);
    for (std::size_t m = 0; m + 1 < x.points(); ++m) {
        double lo = std::max(a, x.times[m]);
        double hi = std::min(b, x.times[m + 1]);
        if (hi <= lo) continue;
        HVec u0 = eval(x, lo), u1 = eval(x, hi);
        double h = 0.5 * (hi - lo);
        for (std::size_t j = 0; j < total.size(); ++j)
            total[j] += h * (u0[j] + u1[j]);
    }
    return total;
}

DiffQuotResult diffquot_ops(const Trajectory& x, double tau) {
    require_finite(x, "diffquot_ops");
    if (!(tau > 0.0)) throw ParameterError("diffquot_ops: tau must be > 0");
    if (tau >= x.t_back() - x.t_front())
        throw ParameterError("diffquot_ops: tau exceeds trajectory span");
    std::vector<double> times;
    for (double t : x.times)
        if (t + tau <= x.t_back() + 1e-12 * tau) times.push_back(t);
    if (times.size() < 2)
        throw ParameterError("diffquot_ops: tau leaves fewer than 2 points");
    double max_h = 0.0;
    for (std::size_t m = 0; m + 1 < x.points() && x.times[m] <= times.back(); ++m)
        max_h = std::max(max_h, x.times[m + 1] - x.times[m]);
    if (tau < max_h * (1.0 - 1e-12))
        throw ParameterError("diffquot_ops: tau below grid spacing at evaluation points");

    std::vector<HVec> dv(times.size()), av(times.size()), rv(times.size());
    for (std::size_t m = 0; m < times.size(); ++m) {
        HVec shifted = eval(x, times[m] + tau);
        HVec here = eval(x, times[m]);
        dv[m] = sub(shifted, here);
        av[m] = scaled(integral_vec(x, times[m], times[m] + tau), 1.0 / tau);
        rv[m] = scaled(dv[m], 1.0 / tau);
    }
    return DiffQuotResult{make_trajectory(times, std::move(dv)),
                          make_trajectory(times, std::move(av)),
                          make_trajectory(times, std::move(rv))};
}

// ---------------------------------------------------------------------------
// Quadratic form and tail series

QuadformReport quadratic_form_series(const SpectrumSpec& spec, const Trajectory& x,
                                     double rel_tol) {
    require_finite(x, "quadratic_form_series");
    require_same_dim(spec.dim(), x.dim(), "quadratic_form_series");
    double sup = sup_norm(x);
    if (spec.norm_bound > 1.0 + 1e-6)
        throw PreconditionError("quadratic_form_series: needs |A| <= 1 (rescale)");
    if (sup > 1.0 + 1e-6)
        throw PreconditionError("quadratic_form_series: needs sup |x| <= 1 (rescale)");

    QuadformReport rep;
    rep.t = x.times;
    rep.q.resize(x.points());
    for (std::size_t m = 0; m < x.points(); ++m)
        rep.q[m] = dot(apply_A(spec, x.values[m]), x.values[m]);

    rep.monotone = true;
    rep.worst_rise = 0.0;
    for (std::size_t m = 0; m + 1 < x.points(); ++m) {
        double h = x.times[m + 1] - x.times[m];
        double budget = 10.0 * h * h * sup * sup + 1e-15;
        double rise = rep.q[m + 1] - rep.q[m] - budget;
        rep.worst_rise = std::max(rep.worst_rise, rise);
        if (rise > 0.0) rep.monotone = false;
    }

    rep.min_q = *std::min_element(rep.q.begin(), rep.q.end());
    double q_head = rep.q.front();
    double tol_abs = rel_tol * std::abs(q_head) + 1e-14 * sup * sup + 1e-300;
    rep.nonneg = rep.min_q >= -tol_abs;

    double rate = 1.0 / spec.norm_bound;
    rep.exp_dominated = true;
    rep.worst_excess = 0.0;
    for (std::size_t m = 0; m < x.points(); ++m) {
        double bound =
            q_head * std::exp(-rate * (x.times[m] - x.times.front())) *
                (1.0 + rel_tol) + tol_abs;
        double excess = rep.q[m] - bound;
        rep.worst_excess = std::max(rep.worst_excess, excess);
        if (excess > 0.0) rep.exp_dominated = false;
    }
    return rep;
}

TailReport l2_tail_series(const Trajectory& x) {
    require_finite(x, "l2_tail_series");
    TailReport rep;
    rep.t = x.times;
    rep.tail.assign(x.points(), 0.0);
    for (std::size_t m = x.points() - 1; m-- > 0;) {
        double h = x.times[m + 1] - x.times[m];
        rep.tail[m] = rep.tail[m + 1] +
                      pl_inner(x.values[m], x.values[m + 1], x.values[m],
                               x.values[m + 1], h);
    }
    return rep;
}

BoundVerdict check_exp_dominated(const std::vector<double>& t,
                                 const std::vector<double>& value,
                                 double amplitude, double rate, double rel_tol) {
    if (!std::isfinite(amplitude) || !std::isfinite(rate))
        throw PreconditionError("check_exp_dominated: non-finite bound parameters");
    BoundVerdict v;
    v.pass = true;
    bool first = true;
    for (std::size_t m = 0; m < t.size(); ++m) {
        if (!std::isfinite(value[m]))
            throw PreconditionError("check_exp_dominated: non-finite value");
        double bound = amplitude * std::exp(-rate * (t[m] - t.front()));
        double slack = bound * rel_tol + 1e-300;
        double excess = value[m] - bound - slack;
        double margin = bound + slack - value[m];
        if (first || excess > v.worst_excess) v.worst_excess = excess;
        if (first || margin < v.min_margin) v.min_margin = margin;
        first = false;
        if (excess > 0.0) v.pass = false;
    }
    return v;
}

// ---------------------------------------------------------------------------
// Integral inequality checks

TechlemReport techlem_check(const std::vector<double>& t,
                            const std::vector<double>& F,
                            const std::vector<double>& f,
                            const std::vector<double>& g,
                            const std::vector<std::pair<double, double>>& pairs) {
    if (t.size() < 3 || F.size() != t.size() || f.size() != t.size() ||
        g.size() != t.size())
        throw ParameterError("techlem_check: series lengths");
    require_finite(F, "techlem_check");
    require_finite(f, "techlem_check");
    require_finite(g, "techlem_check");
    double scale = 0.0;
    for (std::size_t m = 0; m < t.size(); ++m)
        scale = std::max({scale, std::abs(F[m]), std::abs(f[m])});
    TechlemReport rep;
    rep.precondition_ok = true;
    for (std::size_t m = 1; m + 1 < t.size(); ++m) {
        double h = std::max(t[m] - t[m - 1], t[m + 1] - t[m]);
        double tol = 100.0 * h * h * scale + 1e-12 * scale + 1e-300;
        double viol =
            scalar_derivative(t, F, m) + F[m] * F[m] * g[m] - f[m] - tol;
        rep.worst_precondition_violation =
            std::max(rep.worst_precondition_violation, viol);
        if (viol > 0.0) rep.precondition_ok = false;
    }
    if (!rep.precondition_ok) return rep;

    rep.conclusion_ok = true;
    for (auto [tp, tt] : pairs) {
        double int_f = partial_trapezoid(t, f, tp, tt);
        double int_g = partial_trapezoid(t, g, tp, tt);
        double bound = int_f + (int_g > 0.0 ? 1.0 / int_g : 1e300);
        double Ft = 0.0;
        // PL value of the series at tt
        for (std::size_t m = 0; m + 1 < t.size(); ++m)
            if (tt >= t[m] && tt <= t[m + 1]) {
                double s = (tt - t[m]) / (t[m + 1] - t[m]);
                Ft = (1.0 - s) * F[m] + s * F[m + 1];
                break;
            }
        double excess = Ft - bound - 1e-8 * (std::abs(Ft) + std::abs(bound));
        rep.worst_conclusion_excess = std::max(rep.worst_conclusion_excess, excess);
        if (excess > 0.0) rep.conclusion_ok = false;
    }
    return rep;
}

TechcorReport techcor_check(const Trajectory& h, const Trajectory& y,
                            const std::vector<double>& f,
                            const std::vector<std::pair<double, double>>& pairs) {
    require_finite(h, "techcor_check");
    require_finite(y, "techcor_check");
    if (h.times != y.times)
        throw ParameterError("techcor_check: h and y must share a grid");
    if (f.size() != y.points())
        throw ParameterError("techcor_check: f series length");
    require_finite(f, "techcor_check");
    const std::vector<double>& t = y.times;

    std::vector<double> s(t.size()), ysq(t.size()), hsq(t.size());
    for (std::size_t m = 0; m < t.size(); ++m) {
        s[m] = dot(h.values[m], y.values[m]);
        ysq[m] = norm_sq(y.values[m]);
        hsq[m] = norm_sq(h.values[m]);
    }
    double scale = 1e-300;
    for (std::size_t m = 0; m < t.size(); ++m)
        scale = std::max({scale, ysq[m], std::abs(f[m]), std::abs(s[m])});

    TechcorReport rep;
    rep.precondition_ok = true;
    for (std::size_t m = 1; m + 1 < t.size(); ++m) {
        double hloc = std::max(t[m] - t[m - 1], t[m + 1] - t[m]);
        double tol = 100.0 * hloc * hloc * scale + 1e-12 * scale;
        double viol = scalar_derivative(t, s, m) + ysq[m] - f[m] - tol;
        rep.worst_precondition_violation =
            std::max(rep.worst_precondition_violation, viol);
        if (viol > 0.0) rep.precondition_ok = false;
    }
    if (!rep.precondition_ok) return rep;

    rep.conclusion_ok = true;
    for (auto [tp, tt] : pairs) {
        if (!(tp < tt))
            throw ParameterError("techcor_check: pairs need t' < t");
        double lhs = partial_trapezoid(t, ysq, tt, t.back());
        double rhs = partial_trapezoid(t, f, tp, t.back()) +
                     partial_trapezoid(t, hsq, tp, tt) / ((tt - tp) * (tt - tp));
        double tol = 1e-8 * (std::abs(lhs) + std::abs(rhs)) + 1e-12 * scale;
        TechcorRow row{tp, tt, lhs, rhs, rhs - lhs, lhs <= rhs + tol};
        if (!row.ok) rep.conclusion_ok = false;
        rep.rows.push_back(row);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Divided differences, decay fits, sharpness

namespace {

double binom(int n, int k) {
    double c = 1.0;
    for (int i = 1; i <= k; ++i) c = c * double(n - k + i) / double(i);
    return c;
}

// Checks that t sits on the grid (then PL eval is exact) or that tau
// dominates the local spacing (then PL error is subordinate).
void check_stencil_point(const Trajectory& x, double t, double tau) {
    if (t < x.t_front() - 1e-12 * tau || t > x.t_back() + 1e-12 * tau)
        throw ParameterError("insufficient grid: stencil point outside span");
    auto it = std::lower_bound(x.times.begin(), x.times.end(), t);
    double nearest = 1e300;
    if (it != x.times.end()) nearest = std::min(nearest, std::abs(*it - t));
    if (it != x.times.begin()) nearest = std::min(nearest, std::abs(*(it - 1) - t));
    if (nearest <= 1e-9 * tau) return;
    std::size_t m = static_cast<std::size_t>(it - x.times.begin());
    if (m == 0 || m >= x.points()) return;
    double spacing = x.times[m] - x.times[m - 1];
    if (tau < spacing * (1.0 - 1e-12))
        throw ParameterError("insufficient grid: stencil step below local spacing");
}

}  // namespace

double divided_difference_mag(const Trajectory& x, int k, double t, double tau) {
    if (k < 0) throw ParameterError("divided_difference_mag: negative order");
    if (k == 0) {
        check_stencil_point(x, t, tau > 0.0 ? tau : 1.0);
        return norm(eval(x, t));
    }
    if (!(tau > 0.0)) throw ParameterError("divided_difference_mag: tau > 0");
    HVec acc(x.dim(), 0.0);
    for (int i = 0; i <= k; ++i) {
        double p = t + (double(i) - 0.5 * double(k)) * tau;
        check_stencil_point(x, p, tau);
        double c = binom(k, i) * ((k - i) % 2 == 0 ? 1.0 : -1.0);
        axpy(acc, c, eval(x, p));
    }
    double scale = std::pow(tau, double(k));
    return norm(acc) / scale;
}

namespace {

struct LineFit {
    double slope, intercept, rms;
    int n;
};

LineFit least_squares(const std::vector<double>& xs, const std::vector<double>& ys) {
    int n = static_cast<int>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < n; ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    double det = n * sxx - sx * sx;
    LineFit fit{};
    fit.n = n;
    fit.slope = (n * sxy - sx * sy) / det;
    fit.intercept = (sy * sxx - sx * sxy) / det;
    double ss = 0.0;
    for (int i = 0; i < n; ++i) {
        double r = ys[i] - fit.slope * xs[i] - fit.intercept;
        ss += r * r;
    }
    fit.rms = std::sqrt(ss / n);
    return fit;
}

}  // namespace

std::vector<DecayReport> decay_fit(const Trajectory& x, int k_max,
                                   const DecayFitOptions& opts) {
    require_finite(x, "decay_fit");
    if (k_max < 0) throw ParameterError("decay_fit: k_max >= 0");

    // dyadic sample times in [t_lo, t_hi]
    std::vector<double> samples;
    int i_hi = static_cast<int>(std::floor(std::log2(1.0 / opts.t_lo) + 1e-9));
    int i_lo = static_cast<int>(std::ceil(std::log2(1.0 / opts.t_hi) - 1e-9));
    for (int i = i_hi; i >= i_lo; --i) samples.push_back(std::ldexp(1.0, -i));
    if (samples.size() < 8)
        throw ParameterError("decay_fit: need >= 8 dyadic sample points in window");

    double large_hi = opts.large_t_hi > 0.0 ? opts.large_t_hi : 0.75 * x.t_back();

    std::vector<DecayReport> reports;
    for (int k = 0; k <= k_max; ++k) {
        DecayReport rep;
        rep.k = k;

        std::vector<double> lt, lv;
        for (std::size_t i = 1; i + 1 < samples.size(); ++i) {  // drop ends
            double t = samples[i];
            double d = divided_difference_mag(x, k, t, opts.stencil_frac * t);
            if (d > 0.0 && std::isfinite(d)) {
                lt.push_back(std::log(t));
                lv.push_back(std::log(d));
            }
        }
        if (lt.size() >= 3) {
            LineFit fit = least_squares(lt, lv);
            rep.small_t_slope = fit.slope;
            rep.small_t_prefactor = std::exp(fit.intercept);
            rep.small_t_residual = fit.rms;
            rep.n_small = fit.n;
        }

        std::vector<double> gt, gv;
        if (opts.large_t_lo > 0.0) {
            for (double t = opts.large_t_lo; t <= large_hi + 1e-12; t += 0.5) {
                double reach = 0.5 * double(std::max(k, 1)) * opts.large_tau;
                if (t - reach < x.t_front() || t + reach > x.t_back()) continue;
                double d = divided_difference_mag(x, k, t, opts.large_tau);
                if (d > 0.0 && std::isfinite(d)) {
                    gt.push_back(t);
                    gv.push_back(std::log(d));
                }
            }
        }
        if (gt.size() >= 3) {
            LineFit fit = least_squares(gt, gv);
            rep.large_t_rate = -fit.slope;
            rep.large_t_residual = fit.rms;
            rep.n_large = fit.n;
        }
        reports.push_back(rep);
    }
    return reports;
}

SharpnessReport sharpness_probe(const SpectrumSpec& spec, int k,
                                double stencil_frac) {
    if (!has_modes(spec, Subspace::stable))
        throw ModelError("sharpness_probe: no stable ladder in spectrum");
    SharpnessReport rep;
    rep.k = k;
    rep.candidate_at_z_t = at_z_equals_t_constant();
    rep.candidate_max = (k == 0) ? 1.0 : std::pow(double(k) / std::exp(1.0), k);

    bool first = true;
    for (std::size_t j = 0; j < spec.dim(); ++j) {
        double a = spec.alphas[j];
        if (!(a > 0.0)) continue;
        // data e_j evolves as e^{-t/a} on its own coordinate; probe at t = a
        double mag;
        if (k == 0) {
            mag = std::exp(-1.0);
        } else {
            double tau = stencil_frac * a;
            double acc = 0.0;
            for (int i = 0; i <= k; ++i) {
                double p = a + (double(i) - 0.5 * double(k)) * tau;
                acc += binom(k, i) * ((k - i) % 2 == 0 ? 1.0 : -1.0) *
                       std::exp(-p / a);
            }
            mag = std::abs(acc) / std::pow(tau, double(k));
        }
        double ratio = mag * std::pow(a, double(k));
        rep.rows.push_back({j, a, mag, ratio});
        if (first || ratio < rep.min_ratio) rep.min_ratio = ratio;
        if (first || ratio > rep.max_ratio) rep.max_ratio = ratio;
        first = false;
    }
    return rep;
}

RateFit fit_exponential_rate(const Trajectory& x, double t_lo, double t_hi) {
    require_finite(x, "fit_exponential_rate");
    std::vector<double> ts, vs;
    for (std::size_t m = 0; m < x.points(); ++m) {
        double t = x.times[m];
        if (t < t_lo || t > t_hi) continue;
        double mag = norm(x.values[m]);
        if (mag <= 0.0) continue;
        ts.push_back(t);
        vs.push_back(std::log(mag));
    }
    RateFit fit;
    if (ts.size() < 3) return fit;
    LineFit lf = least_squares(ts, vs);
    fit.rate = -lf.slope;
    fit.rms = lf.rms;
    fit.n = lf.n;
    return fit;
}

// ---------------------------------------------------------------------------
// Haar L4 bound

double haar_constant() {
    double d = std::pow(2.0, 0.25) - 1.0;
    return (2.0 / d) * (2.0 / d);
}

std::vector<double> dyadic_tau_grid(double lo, double hi) {
    if (!(0.0 < lo && lo < hi))
        throw ParameterError("dyadic_tau_grid: need 0 < lo < hi");
    std::vector<double> g;
    for (double tau = hi; tau >= lo * (1.0 - 1e-12); tau *= 0.5) g.push_back(tau);
    std::reverse(g.begin(), g.end());
    return g;
}

namespace {

// Exact integral of |x(s+tau) - x(s)|^2 over the zero-extended line.
double delta_sq_integral(const Trajectory& x, double tau) {
    std::vector<double> shifted(x.times.size());
    for (std::size_t m = 0; m < x.times.size(); ++m)
        shifted[m] = x.times[m] - tau;
    std::vector<double> grid = merge_grids(x.times, shifted);
    double t0 = x.t_front(), t1 = x.t_back();
    auto value = [&](double s, bool inside) {
        return inside ? eval(x, s) : HVec(x.dim(), 0.0);
    };
    double total = 0.0;
    for (std::size_t m = 0; m + 1 < grid.size(); ++m) {
        double lo = grid[m], hi = grid[m + 1];
        double mid = 0.5 * (lo + hi);
        bool in_here = mid >= t0 && mid <= t1;
        bool in_shift = mid + tau >= t0 && mid + tau <= t1;
        if (!in_here && !in_shift) continue;
        HVec v0 = sub(value(lo + tau, in_shift), value(lo, in_here));
        HVec v1 = sub(value(hi + tau, in_shift), value(hi, in_here));
        total += pl_inner(v0, v1, v0, v1, hi - lo);
    }
    return total;
}

}  // namespace

HaarReport haar_l4_bound(const HaarBoundInput& input) {
    const Trajectory& x = input.x;
    require_finite(x, "haar_l4_bound");
    if (input.tau_grid.empty())
        throw ParameterError("haar_l4_bound: empty tau grid");

    HaarReport rep;
    rep.constant = haar_constant();
    rep.lhs = l4_integral(x);
    rep.c1 = l2_norm_sq(x);
    if (rep.lhs == 0.0) {  // degenerate input: trivial pass
        rep.c2 = 0.0;
        rep.rhs = 0.0;
        rep.pass = true;
        return rep;
    }

    auto sup_over = [&](const std::vector<double>& taus) {
        double best = 0.0;
        rep.tau_table.clear();
        for (double tau : taus) {
            if (!(tau > 0.0)) throw ParameterError("haar_l4_bound: tau > 0");
            double v = delta_sq_integral(x, tau) / tau;
            rep.tau_table.emplace_back(tau, v);
            best = std::max(best, v);
        }
        return best;
    };

    rep.c2 = sup_over(input.tau_grid);
    rep.rhs = rep.constant * rep.c1 * rep.c2;
    rep.pass = rep.lhs <= rep.rhs * (1.0 + 1e-12) + 1e-300;
    if (!rep.pass) {
        // C2 from a finite grid underestimates the sup; refine once (half-step
        // dyadics) before letting the verdict stand.
        std::vector<double> fine;
        for (double tau : input.tau_grid) {
            fine.push_back(tau);
            fine.push_back(tau * std::sqrt(0.5));
        }
        std::sort(fine.begin(), fine.end());
        rep.refined = true;
        rep.c2 = sup_over(fine);
        rep.rhs = rep.constant * rep.c1 * rep.c2;
        rep.pass = rep.lhs <= rep.rhs * (1.0 + 1e-12) + 1e-300;
    }
    return rep;
}

Trajectory bump_trajectory(double t0, double t1, std::size_t points) {
    std::vector<double> times = uniform_grid(t0, t1, points);
    std::vector<HVec> vals(points, HVec(1, 0.0));
    double mid = 0.5 * (t0 + t1);
    double half = 0.5 * (t1 - t0);
    for (std::size_t m = 0; m < points; ++m) {
        double u = (times[m] - mid) / half;
        if (std::abs(u) < 1.0) vals[m][0] = std::exp(-1.0 / (1.0 - u * u));
    }
    return make_trajectory(std::move(times), std::move(vals));
}

Trajectory random_smooth_trajectory(Rng& rng, double t0, double t1,
                                    std::size_t points, int n_modes) {
    std::vector<double> times = uniform_grid(t0, t1, points);
    std::vector<double> amp(n_modes), phase(n_modes);
    for (int k = 0; k < n_modes; ++k) {
        amp[k] = rng.normal() / double((k + 1) * (k + 1));
        phase[k] = rng.uniform(0.0, 2.0 * 3.14159265358979323846);
    }
    std::vector<HVec> vals(points, HVec(1, 0.0));
    double span = t1 - t0;
    for (std::size_t m = 0; m < points; ++m) {
        double v = 0.0;
        for (int k = 0; k < n_modes; ++k)
            v += amp[k] * std::sin(2.0 * 3.14159265358979323846 * (k + 1) *
                                       (times[m] - t0) / span +
                                   phase[k]);
        vals[m][0] = v;
    }
    return make_trajectory(std::move(times), std::move(vals));
}

// ---------------------------------------------------------------------------
// Bochner counterexample

double bochner_g(double sigma, double r) {
    if (!(sigma > 0.0)) throw ParameterError("bochner_g: sigma > 0");
    // g(sigma)^2 = sigma^{-2} int_sigma^inf z e^{-2z} (log(z/sigma)+1)^{-r} dz,
    // integrated in v = log z (mass sits at z ~ 1/2).
    double v_lo = std::log(sigma);
    double v_hi = std::log(45.0);
    double log_sigma = v_lo;
    auto integrand = [&](double v) {
        double z = std::exp(v);
        return z * z * std::exp(-2.0 * z) * std::pow(v - log_sigma + 1.0, -r);
    };
    int panels = std::max(120, static_cast<int>(12.0 * (v_hi - v_lo)));
    double val = gauss5(integrand, v_lo, v_hi, panels);
    return std::sqrt(val) / sigma;
}

BochnerReport bochner_counterexample(double r,
                                     const std::vector<double>& sigma_grid,
                                     const std::vector<double>& eps_grid) {
    BochnerReport rep;
    rep.r = r;
    rep.r_in_range = (r > 1.0 && r <= 2.0);
    if (!(r > 1.0))
        throw ParameterError("bochner_counterexample: need r > 1 for |f| < inf");

    // |f|^2 = int_0^1 a^{-1}(|log a|+1)^{-r} da = int_1^inf u^{-r} du,
    // quadrature in v = log u with a truncation far beyond the tolerance.
    double v_max = 28.0;
    rep.norm_f_sq = gauss5(
        [&](double v) { return std::exp((1.0 - r) * v); }, 0.0, v_max, 560);
    rep.norm_f_sq_closed = 1.0 / (r - 1.0);

    bool first = true;
    for (double sigma : sigma_grid) {
        double g = bochner_g(sigma, r);
        double normalized =
            g * sigma * std::pow(std::abs(std::log(sigma)) + 1.0, 0.5 * r);
        rep.rows.push_back({sigma, g, normalized});
        if (first || normalized < rep.band_min) rep.band_min = normalized;
        if (first || normalized > rep.band_max) rep.band_max = normalized;
        first = false;
    }

    if (!eps_grid.empty()) {
        // int_eps^1 g(sigma) dsigma in w = log sigma, slab by slab so the
        // dyadic increments come out of the same quadrature.
        std::vector<double> eps_sorted(eps_grid);
        std::sort(eps_sorted.begin(), eps_sorted.end(), std::greater<double>());
        auto integrand = [&](double w) {
            double sigma = std::exp(w);
            return bochner_g(sigma, r) * sigma;
        };
        double upper = 1.0;
        double total = 0.0;
        for (std::size_t i = 0; i < eps_sorted.size(); ++i) {
            double eps = eps_sorted[i];
            if (!(eps > 0.0 && eps < upper))
                throw ParameterError("bochner_counterexample: bad eps grid");
            double slab = gauss5(integrand, std::log(eps), std::log(upper), 10);
            total += slab;
            rep.partials.push_back({eps, total, i == 0 ? 0.0 : slab});
            upper = eps;
        }
    }
    return rep;
}

}  // namespace deveq
