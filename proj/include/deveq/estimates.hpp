#pragma once

#include <functional>
#include <string>
#include <vector>

#include "deveq/spectrum.hpp"
#include "deveq/trajectory.hpp"

namespace deveq {

// Difference and averaging operators: Delta_tau v(t) = v(t+tau) - v(t) and
// S_tau v(t) = (1/tau) int_t^{t+tau} v, the substitutes for differentiation
// on low-regularity functions.
struct DiffQuotResult {
    Trajectory delta;       // Delta_tau x
    Trajectory average;     // S_tau x
    Trajectory diff_ratio;  // Delta_tau x / tau
};

DiffQuotResult diffquot_ops(const Trajectory& x, double tau);

// Exact integral of the PL trajectory over [a, b] (vector-valued).
HVec integral_vec(const Trajectory& x, double a, double b);

// <A x, x>(t_m) with a monotonicity and exponential-domination verdict.
// Hypothesis scaling (|A| <= 1 + slack, sup |x| <= 1 + slack) is enforced;
// the domination bound is q(t) <= q(t_1) e^{-(t - t_1)/|A|} (1 + rel_tol),
// and the per-step monotonicity budget is 10 h_loc^2 sup|x|^2.
struct QuadformReport {
    std::vector<double> t;
    std::vector<double> q;
    bool monotone = false;
    double worst_rise = 0.0;  // max of (q_{m+1}-q_m) - budget_m
    bool nonneg = false;
    double min_q = 0.0;
    bool exp_dominated = false;
    double worst_excess = 0.0;  // max of q - bound
    bool pass() const { return monotone && nonneg && exp_dominated; }
};

QuadformReport quadratic_form_series(const SpectrumSpec& spec, const Trajectory& x,
                                     double rel_tol = 1e-3);

// Tail integrals int_t^T |x|^2 at every grid t.
struct TailReport {
    std::vector<double> t;
    std::vector<double> tail;
};

TailReport l2_tail_series(const Trajectory& x);

// tail(t) <= amplitude * e^{-rate (t - t.front())} * (1 + rel_tol) everywhere?
struct BoundVerdict {
    bool pass = false;
    double worst_excess = 0.0;  // max over samples of value - bound
    double min_margin = 0.0;    // min over samples of bound - value
};

BoundVerdict check_exp_dominated(const std::vector<double>& t,
                                 const std::vector<double>& value,
                                 double amplitude, double rate, double rel_tol);

// Scalar integral inequality F' <= -F^2 g + f  =>  F(t) <= int_{t'}^t f +
// (int_{t'}^t g)^{-1}, checked on sampled series.
struct TechlemReport {
    bool precondition_ok = false;
    double worst_precondition_violation = 0.0;
    bool conclusion_ok = false;
    double worst_conclusion_excess = 0.0;
};

TechlemReport techlem_check(const std::vector<double>& t,
                            const std::vector<double>& F,
                            const std::vector<double>& f,
                            const std::vector<double>& g,
                            const std::vector<std::pair<double, double>>& pairs);

// (d/dt)<h,y> <= -|y|^2 + f  =>  int_t^end |y|^2 <= int_{t'}^end f +
// int_{t'}^t |h|^2 / (t-t')^2, per requested (t', t) pair.
struct TechcorRow {
    double t_prime, t;
    double lhs, rhs, margin;
    bool ok;
};

struct TechcorReport {
    bool precondition_ok = false;
    double worst_precondition_violation = 0.0;
    std::vector<TechcorRow> rows;
    bool conclusion_ok = false;
};

TechcorReport techcor_check(const Trajectory& h, const Trajectory& y,
                            const std::vector<double>& f,
                            const std::vector<std::pair<double, double>>& pairs);

// k-fold centered divided difference of the PL trajectory at time t with
// stencil step tau; returns the vector magnitude. Every stencil point must
// land on (or be bracketed tightly by) the grid.
double divided_difference_mag(const Trajectory& x, int k, double t, double tau);

struct DecayReport {
    int k = 0;
    double small_t_slope = 0.0;
    double small_t_prefactor = 0.0;  // exp(intercept) of the log-log fit
    double small_t_residual = 0.0;   // rms of the fit
    int n_small = 0;
    double large_t_rate = 0.0;  // positive = exponential decay
    double large_t_residual = 0.0;
    int n_large = 0;
};

struct DecayFitOptions {
    double t_lo = 1.0 / 4096.0;  // dyadic fit window (inclusive)
    double t_hi = 1.0 / 16.0;
    double stencil_frac = 0.125;  // tau = frac * t
    double large_t_lo = 1.0;
    double large_t_hi = 0.0;  // 0: use 0.75 * span end
    double large_tau = 0.25;
};

// Fits |x^(k)(t)| ~ C t^slope on dyadic samples of the window (first and
// last sample dropped) and an exponential rate on [large_t_lo, large_t_hi].
std::vector<DecayReport> decay_fit(const Trajectory& x, int k_max,
                                   const DecayFitOptions& opts = {});

// Sharpness probe: for each stable ladder mode a_n, evolve data e_n and
// measure |x^(k)(a_n)| a_n^k. The probe value is scale-invariant in n; both
// candidate constants for the scalar maximum are recorded.
struct SharpnessRow {
    std::size_t mode;
    double a_n;
    double deriv_mag;
    double ratio;  // deriv_mag * a_n^k
};

struct SharpnessReport {
    int k = 0;
    std::vector<SharpnessRow> rows;
    double candidate_at_z_t = 0.0;  // e^{-1}
    double candidate_max = 0.0;     // (k/e)^k
    double min_ratio = 0.0;
    double max_ratio = 0.0;
};

SharpnessReport sharpness_probe(const SpectrumSpec& spec, int k,
                                double stencil_frac = 0.125);

// int |x|^4 <= K C1 C2 with K = (2/(2^{1/4}-1))^2, C1 = int |x|^2 and
// C2 = sup_tau (1/tau) int |Delta_tau x|^2 approximated from below on a
// dyadic tau grid; on failure the tau grid is refined once before the
// verdict is final.
struct HaarBoundInput {
    Trajectory x;
    std::vector<double> tau_grid;
};

struct HaarReport {
    double lhs = 0.0;  // int |x|^4
    double c1 = 0.0;
    double c2 = 0.0;
    double rhs = 0.0;
    double constant = 0.0;
    bool pass = false;
    bool refined = false;
    std::vector<std::pair<double, double>> tau_table;  // (tau, value)
};

double haar_constant();  // (2/(2^{1/4}-1))^2

HaarReport haar_l4_bound(const HaarBoundInput& input);

std::vector<double> dyadic_tau_grid(double lo, double hi);

// Borderline-integrand counterexample on L^2(0,1): f(t,alpha) =
// alpha^{-1/2} (|log alpha|+1)^{-r/2} phi(t) has finite L^2(R,H) norm for
// r > 1, while sigma -> |A^{-1} T_s(sigma) f(.-sigma)| fails to be
// integrable near 0 for r <= 2, so the convolution exists only as an
// improper spectral limit. Both signatures are measured.
struct BochnerRow {
    double sigma;
    double g;           // integrand norm at this sigma (|phi| = 1)
    double normalized;  // g * sigma * (|log sigma|+1)^{r/2}
};

struct BochnerPartialRow {
    double eps;
    double integral;   // int_eps^1 g
    double increment;  // gain over the previous (coarser) eps
};

struct BochnerReport {
    double r = 0.0;
    bool r_in_range = true;           // (1, 2]
    double norm_f_sq = 0.0;           // quadrature
    double norm_f_sq_closed = 0.0;    // 1/(r-1)
    std::vector<BochnerRow> rows;
    double band_min = 0.0, band_max = 0.0;
    std::vector<BochnerPartialRow> partials;
};

BochnerReport bochner_counterexample(double r,
                                     const std::vector<double>& sigma_grid,
                                     const std::vector<double>& eps_grid);

// Norm of the mode integrand at scale sigma (unit phi):
// sqrt( int_0^1 alpha^{-3} e^{-2 sigma/alpha} (|log alpha|+1)^{-r} dalpha ).
double bochner_g(double sigma, double r);

// Least-squares fit of log |x(t)| vs t on grid samples in [t_lo, t_hi];
// rate > 0 means exponential decay. Zero samples are skipped.
struct RateFit {
    double rate = 0.0;
    double rms = 0.0;
    int n = 0;
};

RateFit fit_exponential_rate(const Trajectory& x, double t_lo, double t_hi);

// Bundled scalar-valued inputs for the inequality checks: a C-infinity bump
// on [t0, t1] and random smooth Fourier sums with 1/k^2 coefficient decay.
Trajectory bump_trajectory(double t0, double t1, std::size_t points);

class Rng;
Trajectory random_smooth_trajectory(Rng& rng, double t0, double t1,
                                    std::size_t points, int n_modes);

}  // namespace deveq
