#include "deveq/boltzmann.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace deveq {

VelocityModel build_model(int K, std::uint64_t seed, double amplitude,
                          bool conserve_moment) {
    if (K < 4) throw ParameterError("build_model: K must be >= 4");
    if (!(amplitude > 0.0)) throw ParameterError("build_model: amplitude > 0");
    if (2.0 * amplitude > 0.25)
        throw CertificationError(
            "build_model: amplitude too large; lip certificate 2*amplitude = " +
            std::to_string(2.0 * amplitude) + " exceeds 1/4");

    Rng rng(seed);
    VelocityModel model;
    model.amplitude = amplitude;

    // xi_1 in +/- pairs on a geometric ladder; refinement in K pushes
    // min |alpha| toward 0. Odd K adds one xi_1 = 0 node (center mode).
    int pairs = K / 2;
    for (int m = 0; m < pairs; ++m) {
        double xi1 = 1.5 * std::pow(0.5, m);
        for (double s : {+1.0, -1.0}) {
            std::array<double, 3> xi{s * xi1, 0.5 * rng.normal(),
                                     0.5 * rng.normal()};
            model.xis.push_back(xi);
        }
    }
    if (K % 2 == 1)
        model.xis.push_back({0.0, 0.5 * rng.normal(), 0.5 * rng.normal()});

    std::vector<double> alphas(model.xis.size());
    for (std::size_t i = 0; i < model.xis.size(); ++i) {
        const auto& xi = model.xis[i];
        double bracket =
            std::sqrt(1.0 + xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]);
        alphas[i] = xi[0] / bracket;
    }

    // stable sort of node indices by alpha gives the node -> coordinate map
    std::vector<std::size_t> order(alphas.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) {
                         return alphas[a] < alphas[b];
                     });
    model.mode_of_node.resize(alphas.size());
    for (std::size_t pos = 0; pos < order.size(); ++pos)
        model.mode_of_node[order[pos]] = pos;

    model.spec = make_spectrum(alphas);

    BilinearMap B =
        random_bilinear(model.spec.dim(), rng, amplitude, /*saturation=*/1.0);
    if (conserve_moment) {
        // range orthogonal to the designated collision-invariant direction
        std::size_t n = model.spec.dim();
        HVec u0(n, 1.0 / std::sqrt(double(n)));
        auto inner_apply = B.apply;
        B.apply = [inner_apply, u0](const HVec& u, const HVec& v) {
            HVec w = inner_apply(u, v);
            axpy(w, -dot(w, u0), u0);
            return w;
        };
    }
    model.collision = B;
    model.G = saturated_quadratic(B);
    return model;
}

std::vector<double> h1_tail_sq(const Trajectory& x) {
    std::vector<HVec> dx = grid_derivative(x);
    std::vector<double> density(x.points());
    for (std::size_t m = 0; m < x.points(); ++m)
        density[m] = norm_sq(x.values[m]) + norm_sq(dx[m]);
    std::vector<double> tail(x.points(), 0.0);
    for (std::size_t m = x.points() - 1; m-- > 0;)
        tail[m] = tail[m + 1] + 0.5 * (x.times[m + 1] - x.times[m]) *
                                    (density[m] + density[m + 1]);
    return tail;
}

TailExperimentReport tail_experiment(const VelocityModel& model,
                                     const std::vector<HVec>& g0_family, double T,
                                     double h1_threshold,
                                     const PicardOptions& opts) {
    TailExperimentReport rep;
    // theta controls the relative residual floor at each mode's decay scale
    std::vector<double> grid = nonlinear_grid(T, 0.95, 1e-4, 0.02);
    rep.all_converged = true;

    for (const HVec& g0 : g0_family) {
        TailMemberReport mem;
        mem.g0_scale = norm(g0);
        try {
            PicardResult run =
                picard_solve(model.spec, model.G, g0, T, grid, opts);
            mem.converged = true;
            mem.iterations = run.iterations;
            mem.gamma_eff = run.gamma_eff;
            mem.residual = residual(model.spec, model.G, run.x);

            double sup = 0.0;
            for (const HVec& v : run.x.values) sup = std::max(sup, norm(v));
            mem.sup_norm = sup;

            QuadformReport qf = quadratic_form_series(model.spec, run.x);
            mem.quadform_pass = qf.pass();

            TailReport tails = l2_tail_series(run.x);
            double q_head = qf.q.front();
            BoundVerdict tv = check_exp_dominated(
                tails.t, tails.tail, q_head, 1.0 / model.spec.norm_bound, 1e-3);
            mem.tail_pass = tv.pass;

            RateFit rf = fit_exponential_rate(run.x, 1.0, 0.75 * T);
            mem.large_t_rate = rf.rate;

            std::vector<double> h1 = h1_tail_sq(run.x);
            mem.h1_total = h1.front();
            mem.t_star = T;
            for (std::size_t m = 0; m < h1.size(); ++m)
                if (std::sqrt(h1[m]) <= h1_threshold) {
                    mem.t_star = (m == 0) ? 0.0 : run.x.times[m];
                    break;
                }
            mem.x = std::move(run.x);
        } catch (const Error& e) {
            mem.converged = false;
            mem.error = e.what();
            rep.all_converged = false;
        }
        rep.members.push_back(std::move(mem));
    }

    rep.t_star_monotone = true;
    for (std::size_t i = 0; i + 1 < rep.members.size(); ++i) {
        if (!rep.members[i].converged || !rep.members[i + 1].converged) continue;
        if (rep.members[i + 1].t_star > rep.members[i].t_star + 1e-12)
            rep.t_star_monotone = false;
    }
    return rep;
}

}  // namespace deveq
