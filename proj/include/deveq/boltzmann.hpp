#pragma once

#include <array>

#include "deveq/estimates.hpp"
#include "deveq/nonlinear.hpp"

namespace deveq {

// Discrete-velocity caricature of the steady kinetic reduction: K velocity
// nodes xi in R^3, A = diag(xi_1 / <xi>) with <xi> = sqrt(1 + |xi|^2), and a
// seeded random symmetric bounded bilinear collision surrogate wrapped with
// the radial saturation so the Lipschitz certificate holds globally.
struct VelocityModel {
    std::vector<std::array<double, 3>> xis;
    SpectrumSpec spec;          // sorted eigenvalues of A
    std::vector<std::size_t> mode_of_node;  // node i -> coordinate index
    BilinearMap collision;
    NonlinearMap G;             // saturated quadratic built from collision
    double amplitude = 0.0;     // certified |B|
};

// K >= 4; xi_1 levels come in +/- pairs on a geometric ladder so refining K
// drives min |alpha| toward 0; transverse components are seeded. amplitude
// is the certified bilinear norm; the saturation radius is fixed at 1, so
// the wrapped map carries lip_bound = 2 * amplitude <= 1/4.
VelocityModel build_model(int K, std::uint64_t seed, double amplitude,
                          bool conserve_moment = false);

struct TailMemberReport {
    Trajectory x;  // converged trajectory (empty grid on failure)
    double g0_scale = 0.0;
    bool converged = false;
    int iterations = 0;
    double gamma_eff = 0.0;
    double residual = 0.0;
    double sup_norm = 0.0;
    double h1_total = 0.0;       // |x|_{H1(t_1, T)}^2
    double t_star = 0.0;         // first grid t with H1 tail below threshold
    double large_t_rate = 0.0;   // fitted exponential rate of |x(t)|
    bool quadform_pass = false;
    bool tail_pass = false;
    std::string error;
};

struct TailExperimentReport {
    std::vector<TailMemberReport> members;
    bool all_converged = false;
    bool t_star_monotone = false;
};

// For each boundary datum (scaled copies of a base g0): solve, verify the
// decay machinery, and locate the time the H1 tail drops under threshold.
TailExperimentReport tail_experiment(const VelocityModel& model,
                                     const std::vector<HVec>& g0_family, double T,
                                     double h1_threshold,
                                     const PicardOptions& opts = {});

// H1(t, T) tail of the squared norm: int_t^T |x|^2 + |x'|^2 with the 3-point
// grid derivative.
std::vector<double> h1_tail_sq(const Trajectory& x);

}  // namespace deveq
