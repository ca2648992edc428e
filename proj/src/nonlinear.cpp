#include "deveq/nonlinear.hpp"

#include <algorithm>
#include <cmath>

namespace deveq {

NonlinearMap zero_map() {
    NonlinearMap g;
    g.eval = [](const HVec& v) { return HVec(v.size(), 0.0); };
    g.lip_bound = 0.0;
    g.deriv_bounds = {0.0, 0.0};
    return g;
}

static double matrix_norm_certified(const std::vector<HVec>& m) {
    // Power iteration on M^T M with a deterministic start, then a 1.01
    // safety factor capped by the Frobenius norm (a true upper bound).
    std::size_t n = m.size();
    double frob = 0.0;
    for (const HVec& row : m)
        for (double v : row) frob += v * v;
    frob = std::sqrt(frob);
    HVec v(n, 1.0 / std::sqrt(double(n)));
    double lam = 0.0;
    for (int it = 0; it < 200; ++it) {
        HVec mv(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) mv[i] = dot(m[i], v);
        HVec mtmv(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) mtmv[j] += m[i][j] * mv[i];
        double r = norm(mtmv);
        if (r == 0.0) return 0.0;
        lam = r;
        for (std::size_t j = 0; j < n; ++j) v[j] = mtmv[j] / r;
    }
    return std::min(1.01 * std::sqrt(lam), frob);
}

NonlinearMap linear_map(const std::vector<HVec>& matrix) {
    std::size_t n = matrix.size();
    for (const HVec& row : matrix)
        require_same_dim(n, row.size(), "linear_map");
    NonlinearMap g;
    auto m = matrix;
    g.eval = [m](const HVec& v) {
        require_same_dim(m.size(), v.size(), "linear_map eval");
        HVec w(v.size(), 0.0);
        for (std::size_t i = 0; i < m.size(); ++i) w[i] = dot(m[i], v);
        return w;
    };
    g.lip_bound = matrix_norm_certified(matrix);
    g.deriv_bounds = {g.lip_bound, 0.0};
    return g;
}

NonlinearMap scalar_map(double c, std::size_t dim) {
    NonlinearMap g;
    g.eval = [c, dim](const HVec& v) {
        require_same_dim(dim, v.size(), "scalar_map eval");
        return scaled(v, c);
    };
    g.lip_bound = std::abs(c);
    g.deriv_bounds = {std::abs(c), 0.0};
    return g;
}

static HVec saturate(const HVec& x, double rho) {
    double s = std::sqrt(1.0 + norm_sq(x) / (rho * rho));
    return scaled(x, 1.0 / s);
}

NonlinearMap saturated_quadratic(const BilinearMap& B) {
    if (!(B.saturation_radius > 0.0))
        throw ParameterError("saturated_quadratic: radius must be > 0");
    double rho = B.saturation_radius;
    auto apply = B.apply;
    NonlinearMap g;
    g.eval = [apply, rho](const HVec& v) {
        HVec m = saturate(v, rho);
        return apply(m, m);
    };
    g.lip_bound = 2.0 * B.norm_bound * rho;
    // |D^2 G| <= 2|B| (|Dm|^2 + |m| |D^2 m|) with |Dm| <= 1, |D^2 m| <= 3/rho
    g.deriv_bounds = {g.lip_bound, 8.0 * B.norm_bound};
    return g;
}

BilinearMap random_bilinear(std::size_t dim, Rng& rng, double norm_bound,
                            double saturation_radius) {
    if (!(norm_bound > 0.0))
        throw ParameterError("random_bilinear: norm bound must be > 0");
    // Symmetric random tensor, then a global rescale to the certified bound
    // |B(u,v)| <= sqrt(sum_i |T_i|_F^2) |u||v|.
    std::vector<std::vector<HVec>> T(
        dim, std::vector<HVec>(dim, HVec(dim, 0.0)));
    double frob_sq = 0.0;
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
            for (std::size_t k = j; k < dim; ++k) {
                double v = rng.normal();
                T[i][j][k] = v;
                T[i][k][j] = v;
                frob_sq += (j == k) ? v * v : 2.0 * v * v;
            }
    double scale = norm_bound / std::sqrt(frob_sq);
    for (auto& mat : T)
        for (auto& row : mat)
            for (double& v : row) v *= scale;

    BilinearMap B;
    B.norm_bound = norm_bound;
    B.saturation_radius = saturation_radius;
    B.apply = [T](const HVec& u, const HVec& v) {
        std::size_t n = T.size();
        require_same_dim(n, u.size(), "bilinear apply");
        require_same_dim(n, v.size(), "bilinear apply");
        HVec w(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                if (u[j] == 0.0) continue;
                s += u[j] * dot(T[i][j], v);
            }
            w[i] = s;
        }
        return w;
    };
    return B;
}

std::vector<double> nonlinear_grid(double T, double theta, double t_min,
                                   double head_dt) {
    std::vector<double> geo = geometric_grid(t_min, T, theta);
    if (!(head_dt > 0.0)) throw ParameterError("nonlinear_grid: head_dt > 0");
    std::size_t n_head = static_cast<std::size_t>(std::ceil(T / head_dt)) + 1;
    std::vector<double> head = uniform_grid(t_min, T, std::max<std::size_t>(n_head, 2));
    return merge_grids(geo, head);
}

PicardResult picard_solve(const SpectrumSpec& spec, const NonlinearMap& G,
                          const HVec& g0, double T,
                          const std::vector<double>& grid,
                          const PicardOptions& opts) {
    require_same_dim(spec.dim(), g0.size(), "picard_solve");
    if (!G.zero_at_zero)
        throw CertificationError("picard_solve: G(0) = 0 is required");
    if (!(opts.gamma_max > 0.0 && opts.gamma_max < 1.0))
        throw ParameterError("picard_solve: gamma_max must be in (0,1)");
    if (G.lip_bound > opts.gamma_max)
        throw CertificationError(
            "picard_solve: certified Lipschitz bound " +
            std::to_string(G.lip_bound) + " exceeds gamma_max " +
            std::to_string(opts.gamma_max));
    for (std::size_t j = 0; j < g0.size(); ++j)
        if (g0[j] != 0.0 && !(spec.alphas[j] > 0.0))
            throw ParameterError("picard_solve: g0 must be stable-supported");
    if (grid.size() < 3 || !(grid.front() > 0.0) ||
        std::abs(grid.back() - T) > 1e-12 * T)
        throw ParameterError("picard_solve: grid must cover (0, T]");

    const std::size_t M = grid.size();
    const std::size_t N = spec.dim();
    const double cutoff = 0.5 * min_noncenter_alpha(spec);

    // homogeneous part |A|^{-1/2} T_s(t) g0
    std::vector<HVec> hom(M, HVec(N, 0.0));
    for (std::size_t m = 0; m < M; ++m)
        for (std::size_t j = 0; j < N; ++j)
            if (g0[j] != 0.0)
                hom[m][j] = semigroup_factor(spec.alphas[j], grid[m], 0.5) * g0[j];
    Trajectory hom_traj = make_trajectory(grid, hom);

    Trajectory x = hom_traj;
    PicardResult out;
    double prev_delta = -1.0;
    for (int it = 1; it <= opts.max_iter; ++it) {
        std::vector<HVec> fv(M);
        for (std::size_t m = 0; m < M; ++m) fv[m] = G.eval(x.values[m]);
        Trajectory f = make_trajectory(grid, std::move(fv));
        Trajectory y = solve_voc(spec, f, cutoff);
        std::vector<HVec> xv(M);
        for (std::size_t m = 0; m < M; ++m) xv[m] = add(hom_traj.values[m], y.values[m]);
        Trajectory x_next = make_trajectory(grid, std::move(xv));

        double delta = std::sqrt(l2_norm_sq(subtract(x_next, x)));
        x = std::move(x_next);
        out.iterations = it;
        out.final_delta = delta;
        if (prev_delta > 0.0)
            out.gamma_eff = std::max(out.gamma_eff, delta / prev_delta);
        if (delta <= opts.tol) {
            out.x = std::move(x);
            return out;
        }
        prev_delta = delta;
    }
    throw DivergenceError("picard_solve: no convergence in " +
                              std::to_string(opts.max_iter) +
                              " iterations (contraction rate approx " +
                              std::to_string(out.gamma_eff) + ")",
                          out.gamma_eff);
}

HVec center_solve(const SpectrumSpec& spec, const NonlinearMap& G,
                  const HVec& x_sc, double tol, int max_iter) {
    require_same_dim(spec.dim(), x_sc.size(), "center_solve");
    if (!(G.lip_bound < 1.0))
        throw CertificationError("center_solve: needs lip_bound < 1");
    if (!has_modes(spec, Subspace::center)) return HVec(x_sc.size(), 0.0);
    HVec c(x_sc.size(), 0.0);
    double rate = 0.0;
    for (int it = 0; it < max_iter; ++it) {
        HVec next = project(spec, G.eval(add(x_sc, c)), Subspace::center);
        double d = norm(sub(next, c));
        c = std::move(next);
        if (d <= tol) return c;
        rate = G.lip_bound;
    }
    throw DivergenceError("center_solve: no convergence", rate);
}

double residual(const SpectrumSpec& spec, const NonlinearMap& G,
                const Trajectory& x) {
    return linear_residual(spec, x,
                           [&](double t) { return G.eval(eval(x, t)); });
}

}  // namespace deveq
