#pragma once

#include <vector>

#include "deveq/spectrum.hpp"
#include "deveq/trajectory.hpp"

namespace deveq {

enum class Direction { stable, unstable };

// Query for the bi-stable semigroups T_s(t) (t >= 0, spectrum alpha > 0) and
// T_u(t) (t <= 0, spectrum alpha < 0), optionally composed with |A|^{-r}.
// r > 0 requires strict time sign: the composition is unbounded at t = 0.
struct SemigroupQuery {
    double t = 0.0;
    double r = 0.0;
    Direction direction = Direction::stable;
};

// Scalar multiplier |alpha|^{-r} e^{-t/alpha}, evaluated in log space so the
// underflow of the exponential always wins against the |alpha|^{-r} blowup.
double semigroup_factor(double alpha, double t, double r);

// T_s(t)h / T_u(t)h (r must be 0 in q).
HVec apply_semigroup(const SpectrumSpec& spec, const SemigroupQuery& q,
                     const HVec& h);

// |A|^{-r} T_s(t) h (r > 0, t > 0), or the unstable mirror image.
HVec apply_smoothing(const SpectrumSpec& spec, const SemigroupQuery& q,
                     const HVec& h);

// Sharp constant of the bound ||A|^{-r} T_s(t)| <= C(r) t^{-r}:
// C(r) = sup_{z>0} z^{-r} e^{-1/z} = r^r e^{-r}.
double smoothing_bound_constant(double r);

// The other candidate constant for the scalar maximum in the sharpness
// discussion: value at z = t is e^{-1}, while the true maximizer z = t/r
// gives (r/e)^r. Both are recorded by the scan; they agree at r = 1.
inline double at_z_equals_t_constant() { return 0.36787944117144233; }

struct SharpScanRow {
    double t;
    double sup_norm;    // operator norm of |A|^{-r} T_s(t), exact per mode
    double predicted;   // C(r) * t^{-r}
    double ratio;       // sup_norm / t^{-r}
};

// For each t in t_grid: sup over unit h of ||A|^{-r} T_s(t) h| (attained on a
// coordinate mode) against the predicted C(r) t^{-r} envelope.
std::vector<SharpScanRow> sharp_bound_scan(const SpectrumSpec& spec, double r,
                                           const std::vector<double>& t_grid);

// Homogeneous linear flow sampled on a grid: x(t) = T_s(t) Pi_s x0 (the only
// decaying homogeneous solutions; center and unstable data are dropped).
Trajectory semigroup_trajectory(const SpectrumSpec& spec, const HVec& x0,
                                const std::vector<double>& times);


}  // namespace deveq
