#include <doctest.h>

#include <cmath>

#include "deveq/boltzmann.hpp"
#include "deveq/rng.hpp"

using namespace deveq;

TEST_CASE("velocity model spectrum structure") {
    VelocityModel model = build_model(16, 7, 0.0625);
    CHECK(model.spec.dim() == 16);
    // |alpha| < 1 always: |xi_1| < <xi>
    for (double a : model.spec.alphas) CHECK(std::abs(a) < 1.0);
    // symmetric xi_1 grid about 0, no zeros for even K
    for (double a : model.spec.alphas) CHECK(a != 0.0);
    int n_pos = 0, n_neg = 0;
    for (double a : model.spec.alphas) (a > 0 ? n_pos : n_neg)++;
    CHECK(n_pos == 8);
    CHECK(n_neg == 8);
    // node -> coordinate map is consistent
    for (std::size_t i = 0; i < model.xis.size(); ++i) {
        const auto& xi = model.xis[i];
        double br = std::sqrt(1.0 + xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]);
        CHECK(model.spec.alphas[model.mode_of_node[i]] ==
              doctest::Approx(xi[0] / br).epsilon(1e-15));
    }
    // odd K includes a xi_1 = 0 node: center mode present
    VelocityModel odd = build_model(5, 7, 0.0625);
    CHECK(has_modes(odd.spec, Subspace::center));

    CHECK_THROWS_AS(build_model(3, 7, 0.0625), ParameterError);
    CHECK_THROWS_AS(build_model(16, 7, 0.2), CertificationError);
}

TEST_CASE("refining the velocity grid drives min |alpha| to zero") {
    double prev = 1.0;
    for (int K : {8, 16, 24, 32}) {
        VelocityModel model = build_model(K, 11, 0.0625);
        double min_abs = 1.0;
        for (double a : model.spec.alphas)
            min_abs = std::min(min_abs, std::abs(a));
        CHECK(min_abs < prev);
        prev = min_abs;
    }
    CHECK(prev < 1e-4);
}

TEST_CASE("lipschitz certificate recomputes from the stored pieces") {
    VelocityModel model = build_model(16, 42, 0.0625);
    // certificate: 2 * |B| * rho * c_chi with rho = 1, c_chi = 1
    double recomputed = 2.0 * model.collision.norm_bound *
                        model.collision.saturation_radius;
    CHECK(model.G.lip_bound == doctest::Approx(recomputed).epsilon(1e-15));
    CHECK(model.G.lip_bound <= 0.25);
    // empirical norm sampling stays below the certified bound
    Rng rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        HVec u = rng.unit_vec(16), v = rng.unit_vec(16);
        CHECK(norm(model.collision.apply(u, v)) <=
              model.collision.norm_bound * (1.0 + 1e-12));
    }
    // symmetry of the collision surrogate
    HVec a = rng.normal_vec(16), b = rng.normal_vec(16);
    CHECK(norm(sub(model.collision.apply(a, b), model.collision.apply(b, a))) <=
          1e-12);
}

TEST_CASE("moment conservation flag keeps the range orthogonal") {
    VelocityModel model = build_model(12, 9, 0.0625, true);
    Rng rng(13);
    HVec u0(12, 1.0 / std::sqrt(12.0));
    for (int trial = 0; trial < 20; ++trial) {
        HVec w = model.collision.apply(rng.normal_vec(12), rng.normal_vec(12));
        CHECK(std::abs(dot(w, u0)) <= 1e-12 * (norm(w) + 1.0));
    }
}

TEST_CASE("tail experiment: zero data and linear single-mode oracle") {
    VelocityModel model = build_model(8, 3, 0.0625);
    double T = 8.0;

    // g0 = 0: x = 0, t* = 0
    TailExperimentReport rep =
        tail_experiment(model, {zeros(model.spec.dim())}, T, 1e-3);
    REQUIRE(rep.members.size() == 1);
    CHECK(rep.members[0].converged);
    CHECK(rep.members[0].t_star == 0.0);
    CHECK(rep.members[0].sup_norm == 0.0);

    // B = 0 single stable mode: closed-form tail with rate 1/alpha
    VelocityModel lin = model;
    lin.G = zero_map();
    // pick the largest stable eigenvalue (slowest mode)
    std::size_t j_max = lin.spec.dim() - 1;
    double alpha = lin.spec.alphas[j_max];
    REQUIRE(alpha > 0.0);
    HVec g0 = zeros(lin.spec.dim());
    g0[j_max] = 0.05;
    TailExperimentReport lrep = tail_experiment(lin, {g0}, T, 1e-4);
    REQUIRE(lrep.members.size() == 1);
    CHECK(lrep.members[0].converged);
    CHECK(lrep.members[0].large_t_rate == doctest::Approx(1.0 / alpha).epsilon(1e-3));
}

TEST_CASE("tail experiment sweep: convergence, checks, monotone t*") {
    VelocityModel model = build_model(16, 2029, 0.0625);
    Rng rng(3001);
    HVec h = project(model.spec, rng.unit_vec(16), Subspace::stable);
    HVec dir = abs_power(model.spec, h, 0.5);
    dir = scaled(dir, 0.05 / norm(dir));
    std::vector<HVec> family;
    for (double s : {1.0, 0.5, 0.25, 0.125}) family.push_back(scaled(dir, s));
    double T = 12.0;
    TailExperimentReport rep = tail_experiment(model, family, T, 2e-3);
    CHECK(rep.all_converged);
    CHECK(rep.t_star_monotone);
    for (const TailMemberReport& mem : rep.members) {
        CHECK(mem.quadform_pass);
        CHECK(mem.tail_pass);
        CHECK(mem.residual <= 3e-4);  // grid-limited; scales with (1-theta)^2
        CHECK(mem.large_t_rate > 0.0);
    }
    // scaled-down data leaves the threshold earlier
    CHECK(rep.members.back().t_star <= rep.members.front().t_star);
}
