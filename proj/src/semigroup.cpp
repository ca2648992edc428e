#include "deveq/semigroup.hpp"

#include <cmath>

namespace deveq {

double semigroup_factor(double alpha, double t, double r) {
    double a = std::abs(alpha);
    if (a == 0.0) return 0.0;
    // exponent of |alpha|^{-r} e^{-t/alpha}; e^{-t/alpha} = e^{-|t|/a} for a
    // correctly signed query, and exp() underflow to 0 past -745 is the
    // intended clamp.
    double ex = -t / alpha - r * std::log(a);
    return std::exp(ex);
}

static void check_time_sign(const SemigroupQuery& q) {
    if (q.direction == Direction::stable) {
        if (q.t < 0.0)
            throw ParameterError("semigroup: stable direction needs t >= 0");
        if (q.r > 0.0 && q.t == 0.0)
            throw ParameterError("semigroup: |A|^{-r} T_s(0) is unbounded");
    } else {
        if (q.t > 0.0)
            throw ParameterError("semigroup: unstable direction needs t <= 0");
        if (q.r > 0.0 && q.t == 0.0)
            throw ParameterError("semigroup: |A|^{-r} T_u(0) is unbounded");
    }
}

static HVec apply_impl(const SpectrumSpec& spec, const SemigroupQuery& q,
                       const HVec& h) {
    require_same_dim(spec.dim(), h.size(), "apply_semigroup");
    check_time_sign(q);
    Subspace tag =
        q.direction == Direction::stable ? Subspace::stable : Subspace::unstable;
    HVec w(h.size(), 0.0);
    for (std::size_t j = 0; j < h.size(); ++j) {
        double a = spec.alphas[j];
        if (!in_subspace(a, tag)) continue;
        w[j] = semigroup_factor(a, q.t, q.r) * h[j];
    }
    return w;
}

HVec apply_semigroup(const SpectrumSpec& spec, const SemigroupQuery& q,
                     const HVec& h) {
    if (q.r != 0.0)
        throw ParameterError("apply_semigroup: r must be 0 (use apply_smoothing)");
    return apply_impl(spec, q, h);
}

HVec apply_smoothing(const SpectrumSpec& spec, const SemigroupQuery& q,
                     const HVec& h) {
    if (!(q.r > 0.0))
        throw ParameterError("apply_smoothing: r must be > 0");
    return apply_impl(spec, q, h);
}

double smoothing_bound_constant(double r) {
    if (r == 0.0) return 1.0;
    if (r < 0.0) throw ParameterError("smoothing_bound_constant: r must be >= 0");
    return std::exp(r * (std::log(r) - 1.0));
}

Trajectory semigroup_trajectory(const SpectrumSpec& spec, const HVec& x0,
                                const std::vector<double>& times) {
    require_same_dim(spec.dim(), x0.size(), "semigroup_trajectory");
    std::vector<HVec> vals(times.size(), HVec(spec.dim(), 0.0));
    for (std::size_t m = 0; m < times.size(); ++m) {
        if (times[m] < 0.0)
            throw ParameterError("semigroup_trajectory: times must be >= 0");
        for (std::size_t j = 0; j < spec.dim(); ++j) {
            double a = spec.alphas[j];
            if (a > 0.0 && x0[j] != 0.0)
                vals[m][j] = semigroup_factor(a, times[m], 0.0) * x0[j];
        }
    }
    return make_trajectory(times, std::move(vals));
}

std::vector<SharpScanRow> sharp_bound_scan(const SpectrumSpec& spec, double r,
                                           const std::vector<double>& t_grid) {
    if (!has_modes(spec, Subspace::stable))
        throw ModelError("sharp_bound_scan: spectrum has no stable modes");
    const double c = smoothing_bound_constant(r);
    std::vector<SharpScanRow> rows;
    rows.reserve(t_grid.size());
    for (double t : t_grid) {
        if (!(t > 0.0))
            throw ParameterError("sharp_bound_scan: t grid must be positive");
        double sup = 0.0;
        for (double a : spec.alphas) {
            if (a <= 0.0) continue;
            sup = std::max(sup, semigroup_factor(a, t, r));
        }
        double envelope = std::pow(t, -r);
        rows.push_back({t, sup, c * envelope, sup / envelope});
    }
    return rows;
}

}  // namespace deveq
