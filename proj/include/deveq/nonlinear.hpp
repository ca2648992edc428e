#pragma once

#include <functional>

#include "deveq/linear.hpp"
#include "deveq/rng.hpp"
#include "deveq/spectrum.hpp"
#include "deveq/trajectory.hpp"

namespace deveq {

// Nonlinearity G with certified bounds: G(0) = 0, |G(u)-G(v)| <= lip |u-v|,
// deriv_bounds[j-1] >= sup |D^j G|.
struct NonlinearMap {
    std::function<HVec(const HVec&)> eval;
    double lip_bound = 0.0;
    std::vector<double> deriv_bounds;
    bool zero_at_zero = true;
};

NonlinearMap zero_map();

// G(x) = M x with certified operator norm (power iteration + safety factor).
NonlinearMap linear_map(const std::vector<HVec>& matrix);
NonlinearMap scalar_map(double c, std::size_t dim);  // G = c * Id

// Symmetric bounded bilinear form with a certified norm bound.
struct BilinearMap {
    std::function<HVec(const HVec&, const HVec&)> apply;
    double norm_bound = 0.0;
    double saturation_radius = 1.0;
};

// G(x) = B(m(x), m(x)) with the smooth radial saturation
// m(x) = x / sqrt(1 + |x|^2 / rho^2), so |m| < rho and Lip(m) <= 1, giving
// the certificate lip_bound = 2 * |B| * rho (cutoff factor 1).
NonlinearMap saturated_quadratic(const BilinearMap& B);

// Random symmetric bilinear tensor with certified (Frobenius) norm bound.
BilinearMap random_bilinear(std::size_t dim, Rng& rng, double norm_bound,
                            double saturation_radius);

struct PicardOptions {
    double tol = 1e-8;
    double gamma_max = 0.25;  // paper value; may be weakened up to < 1
    int max_iter = 80;
};

struct PicardResult {
    Trajectory x;
    int iterations = 0;
    double gamma_eff = 0.0;    // max successive-distance ratio observed
    double final_delta = 0.0;  // last successive L2(0,T) distance
};

// Decaying solution of (d/dt)(Ax) = -x + G(x) on (0, T] with stable data
// g0 = |A|^{1/2} Pi_s x(0+) and zero unstable data at T, by contraction
// on x -> |A|^{-1/2} T_s(t) g0 + voc(G(x)).
PicardResult picard_solve(const SpectrumSpec& spec, const NonlinearMap& G,
                          const HVec& g0, double T,
                          const std::vector<double>& grid,
                          const PicardOptions& opts = {});

// Fixed point of c -> Pi_c G(x_sc + c) for the center coordinates.
HVec center_solve(const SpectrumSpec& spec, const NonlinearMap& G,
                  const HVec& x_sc, double tol = 1e-12, int max_iter = 200);

// Normalized L2 norm over the interior grid of (d/dt)(Ax) + x - G(x).
double residual(const SpectrumSpec& spec, const NonlinearMap& G,
                const Trajectory& x);

// Grid for the nonlinear solve: geometric refinement toward 0 (ratio theta)
// plus a uniform head so the spacing never exceeds head_dt.
std::vector<double> nonlinear_grid(double T, double theta, double t_min,
                                   double head_dt);

}  // namespace deveq
