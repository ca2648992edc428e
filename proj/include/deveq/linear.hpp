#pragma once

#include <complex>
#include <functional>

#include "deveq/semigroup.hpp"
#include "deveq/spectrum.hpp"
#include "deveq/trajectory.hpp"

namespace deveq {

using CVec = std::vector<std::complex<double>>;

// (i omega A + Id)^{-1} v, coordinate-wise. Contractive for every omega.
CVec resolvent_apply(const SpectrumSpec& spec, double omega, const CVec& v);
CVec resolvent_apply(const SpectrumSpec& spec, double omega, const HVec& v);

// Per-mode moduli of the two resolvent symbols, for bound scans:
// |(i w a + 1)^{-1}| and |i w a (i w a + 1)^{-1}|.
double resolvent_symbol_modulus(double alpha, double omega);
double resolvent_flux_modulus(double alpha, double omega);

// Smallest nonzero |alpha| in the spectrum (model error if none).
double min_noncenter_alpha(const SpectrumSpec& spec);

// Stable/unstable boundary values for the two-point problem on [t0, t1].
// Weak form prescribes g = |A|^{1/2} Pi x at the endpoint; mild form
// prescribes h with g = |A|^{1/2} Pi h.
struct BoundaryData {
    HVec g0;  // stable-supported, attained at t0
    HVec g1;  // unstable-supported, attained at t1
    bool mild = false;
    HVec h0, h1;  // only meaningful when mild
};

BoundaryData weak_data(const SpectrumSpec& spec, HVec g0, HVec g1);
BoundaryData mild_data(const SpectrumSpec& spec, const HVec& h0, const HVec& h1);

// Solution of (d/dt)(Ax) + x = f on the line by the Fourier multiplier
// (i omega A + Id)^{-1}, discretized on a zero-padded uniform grid.
// Cross-validation path; the variation-of-constants route below is the
// production solver.
struct FourierSolution {
    Trajectory x;             // on the padded grid (f sits in the middle)
    double wrap_error_bound;  // periodization-error report
};

FourierSolution solve_fourier(const SpectrumSpec& spec, const Trajectory& f,
                              std::size_t pad_factor = 4);

// Variation of constants against the exponential kernels, with spectral
// cutoff a > 0: coordinates with 0 < |alpha_j| < a are omitted, center
// coordinates carry f pointwise. Quadrature is closed-form per linear
// segment of f, so the result is exact for the PL interpretation of f
// (no time-discretization error, arbitrarily stiff kernels included).
// f is extended by zero outside its grid span.
Trajectory solve_voc(const SpectrumSpec& spec, const Trajectory& f, double cutoff_a,
                     const std::vector<double>& output_times = {});

// Two-point boundary-value problem on [f.t_front, f.t_back]:
//   x = y + |A|^{-1/2} T_s(t - t0) g0 + |A|^{-1/2} T_u(t - t1) g1,
// y the particular VOC solution with f extended by zero.
Trajectory solve_bvp(const SpectrumSpec& spec, const Trajectory& f,
                     const BoundaryData& bd,
                     const std::vector<double>& output_times = {});

// ||A|^{-1/2} g|: finite at every fixed N; the weak/mild classification is
// by growth of this number under spectral refinement, not by its value.
double mild_defect(const SpectrumSpec& spec, const HVec& g,
                   double tol_center = 1e-10);

// L2 norm over the interior grid of (d/dt)(Ax) + x - f, divided by |x|_L2.
// Differentiation is by the quadratic-exact 3-point stencil.
double linear_residual(const SpectrumSpec& spec, const Trajectory& x,
                       const std::function<HVec(double)>& f);
double linear_residual(const SpectrumSpec& spec, const Trajectory& x,
                       const Trajectory& f);

// Exponential-integrator segment weights: exact value of
//   int_0^h e^{-(h-s)/alpha} (f0 (1-s/h) + f1 s/h) ds / alpha
// is f0 * voc_weight_far(h/alpha) + f1 * voc_weight_near(h/alpha).
double voc_weight_far(double w);
double voc_weight_near(double w);

}  // namespace deveq
