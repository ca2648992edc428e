#include <doctest.h>

#include <cmath>

#include "deveq/linear.hpp"
#include "deveq/rng.hpp"
#include "deveq/semigroup.hpp"

using namespace deveq;

TEST_CASE("semigroup scalar values") {
    SpectrumSpec one = make_spectrum({1.0});
    HVec h{1.0};
    HVec w = apply_semigroup(one, {1.0, 0.0, Direction::stable}, h);
    CHECK(w[0] == doctest::Approx(0.36787944117144233).epsilon(1e-15));

    // t = 0 is the stable projection
    SpectrumSpec mix = make_spectrum({1.0, -2.0, 0.0});
    HVec v{1.0, 1.0, 1.0};
    CHECK(apply_semigroup(mix, {0.0, 0.0, Direction::stable}, v) ==
          project(mix, v, Subspace::stable));

    // unstable mirror image
    SpectrumSpec neg = make_spectrum({-1.0});
    HVec u = apply_semigroup(neg, {-1.0, 0.0, Direction::unstable}, HVec{1.0});
    CHECK(u[0] == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));

    CHECK_THROWS_AS(apply_semigroup(one, {-0.5, 0.0, Direction::stable}, h),
                    ParameterError);
    CHECK_THROWS_AS(apply_semigroup(neg, {0.5, 0.0, Direction::unstable}, h),
                    ParameterError);
}

TEST_CASE("smoothing scalar values and norm bound") {
    SpectrumSpec two = make_spectrum({2.0});
    HVec w = apply_smoothing(two, {1.0, 1.0, Direction::stable}, HVec{1.0});
    CHECK(w[0] == doctest::Approx(0.5 * std::exp(-0.5)).epsilon(1e-15));
    CHECK(w[0] == doctest::Approx(0.30326532985631671).epsilon(1e-12));

    // single mode alpha = t, order k: value t^{-k} e^{-1}
    for (int k : {1, 2, 3}) {
        double t = 0.03125;
        SpectrumSpec single = make_spectrum({t});
        HVec s = apply_smoothing(single, {t, double(k), Direction::stable},
                                 HVec{1.0});
        CHECK(s[0] ==
              doctest::Approx(std::pow(t, -k) * std::exp(-1.0)).epsilon(1e-12));
    }

    CHECK_THROWS_AS(apply_smoothing(two, {0.0, 1.0, Direction::stable}, HVec{1.0}),
                    ParameterError);
}

TEST_CASE("smoothing norm bound C(r) t^-r holds with the computed constant") {
    Rng rng(149);
    for (int trial = 0; trial < 8; ++trial) {
        SpectrumSpec spec =
            (trial % 2 == 0) ? harmonic_ladder(96) : geometric_ladder(36);
        for (double r : {0.5, 1.0, 2.0}) {
            double c = smoothing_bound_constant(r);
            for (double t : {1e-6, 1e-3, 0.125, 1.0, 7.0}) {
                HVec h = rng.unit_vec(spec.dim());
                HVec w = apply_smoothing(spec, {t, r, Direction::stable}, h);
                CHECK(norm(w) <= c * std::pow(t, -r) * (1.0 + 1e-12));
            }
        }
    }
}

TEST_CASE("unstable smoothing mirrors the stable composition") {
    // sorted coordinates: alpha = (-1, -0.5, 0.25)
    SpectrumSpec spec = make_spectrum({-0.5, -1.0, 0.25});
    HVec h{1.0, 1.0, 1.0};
    HVec w = apply_smoothing(spec, {-2.0, 1.0, Direction::unstable}, h);
    // per coordinate: |a|^{-1} e^{-t/a} with t = -2
    CHECK(w[0] == doctest::Approx(1.0 * std::exp(-2.0)).epsilon(1e-14));
    CHECK(w[1] == doctest::Approx(2.0 * std::exp(-4.0)).epsilon(1e-14));
    CHECK(w[2] == 0.0);
    double c = smoothing_bound_constant(1.0);
    CHECK(norm(w) <= c * 0.5 * std::sqrt(3.0) * (1.0 + 1e-12));
}

TEST_CASE("harmonic ladder mode attains n/e") {
    SpectrumSpec spec = harmonic_ladder(64);
    for (int n : {1, 8, 64}) {
        double an = 1.0 / n;
        std::size_t j = closest_mode(spec, an);
        REQUIRE(spec.alphas[j] == doctest::Approx(an).epsilon(1e-15));
        HVec e = basis(spec.dim(), j);
        HVec w = apply_smoothing(spec, {an, 1.0, Direction::stable}, e);
        // direct evaluation: alpha_n^{-1} e^{-t/alpha_n} at t = alpha_n
        CHECK(norm(w) == doctest::Approx(n * std::exp(-1.0)).epsilon(1e-13));
    }
}

TEST_CASE("semigroup law and contraction") {
    Rng rng(101);
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<double> alphas(16);
        for (double& a : alphas) a = rng.uniform(0.01, 1.0);
        SpectrumSpec spec = make_spectrum(alphas);
        HVec h = rng.normal_vec(16);
        for (double t1 : {0.25, 1.0, 4.0}) {
            for (double t2 : {0.5, 2.0}) {
                HVec ab = apply_semigroup(
                    spec, {t1, 0.0, Direction::stable},
                    apply_semigroup(spec, {t2, 0.0, Direction::stable}, h));
                HVec once =
                    apply_semigroup(spec, {t1 + t2, 0.0, Direction::stable}, h);
                CHECK(norm(sub(ab, once)) <= 1e-12 * norm(h));
            }
        }
        double prev = norm(h);
        for (double t : {0.0, 0.1, 0.5, 1.0, 3.0, 10.0}) {
            double cur = norm(apply_semigroup(spec, {t, 0.0, Direction::stable}, h));
            CHECK(cur <= prev * (1.0 + 1e-15));
            prev = cur;
        }
    }
}

TEST_CASE("strong continuity along a delta-halving sequence") {
    SpectrumSpec spec = harmonic_ladder(128);
    Rng rng(5);
    HVec h = rng.unit_vec(128);
    double t = 0.5;
    HVec base = apply_semigroup(spec, {t, 0.0, Direction::stable}, h);
    double prev = 1e300;
    for (double delta = 0.25; delta > 1e-6; delta *= 0.5) {
        HVec moved = apply_semigroup(spec, {t + delta, 0.0, Direction::stable}, h);
        double gap = norm(sub(moved, base));
        CHECK(gap < prev);
        prev = gap;
    }
    CHECK(prev <= 1e-5);
}

TEST_CASE("smoothing equals abs_power_inv after the semigroup") {
    SpectrumSpec spec = harmonic_ladder(32);
    Rng rng(23);
    HVec h = rng.normal_vec(32);
    double t = 0.125, r = 0.5;
    HVec lhs = apply_smoothing(spec, {t, r, Direction::stable}, h);
    HVec rhs = abs_power_inv(
        spec, apply_semigroup(spec, {t, 0.0, Direction::stable}, h), r);
    CHECK(norm(sub(lhs, rhs)) <= 1e-12 * norm(lhs));
}

TEST_CASE("homogeneous flow satisfies the discrete equation to O(h^2)") {
    SpectrumSpec spec = make_spectrum({0.5, 1.0});
    HVec h{0.3, 0.7};
    auto zero_f = [&](double) { return HVec(2, 0.0); };
    double prev = -1.0;
    for (std::size_t points : {101, 201, 401}) {
        Trajectory x =
            semigroup_trajectory(spec, h, uniform_grid(0.5, 2.0, points));
        double res = linear_residual(spec, x, zero_f);
        if (prev > 0.0) CHECK(res < 0.35 * prev);  // ~4x drop per halving
        prev = res;
    }
    CHECK(prev <= 1e-5);
}

TEST_CASE("smoothing bound constant") {
    CHECK(smoothing_bound_constant(1.0) == doctest::Approx(std::exp(-1.0)));
    CHECK(smoothing_bound_constant(2.0) == doctest::Approx(4.0 * std::exp(-2.0)));
    // scalar maximization oracle: crude grid search over z
    for (double r : {0.5, 1.0, 1.7, 3.0}) {
        double best = 0.0;
        for (double z = 1e-4; z < 50.0; z *= 1.01)
            best = std::max(best, std::pow(z, -r) * std::exp(-1.0 / z));
        CHECK(smoothing_bound_constant(r) == doctest::Approx(best).epsilon(1e-4));
    }
}

TEST_CASE("sharp bound scan: single mode is not sharp") {
    SpectrumSpec one = make_spectrum({1.0});
    auto rows = sharp_bound_scan(one, 1.0, {0.5, 1.0, 2.0, 4.0});
    for (const auto& row : rows) {
        CHECK(row.sup_norm == doctest::Approx(std::exp(-row.t)).epsilon(1e-13));
        CHECK(row.ratio == doctest::Approx(row.t * std::exp(-row.t)).epsilon(1e-13));
    }
    // ratio decays: the degenerate ladder does not saturate t^{-r}
    CHECK(rows.back().ratio < rows.front().ratio);
}

TEST_CASE("sharp bound scan: geometric ladder saturates the envelope") {
    SpectrumSpec spec = geometric_ladder(40);
    double t = std::ldexp(1.0, -20);
    auto rows = sharp_bound_scan(spec, 1.0, {t});
    // the mode alpha = t sits in the ladder, so sup >= (1/t) e^{-1}
    CHECK(rows[0].sup_norm >= (1.0 / t) * std::exp(-1.0) * (1.0 - 1e-12));
    CHECK(rows[0].ratio >= std::exp(-1.0) * (1.0 - 1e-12));
    CHECK(rows[0].sup_norm <= rows[0].predicted * (1.0 + 1e-12));
}

TEST_CASE("sharp bound scan: log-log slope matches -r") {
    SpectrumSpec spec = geometric_ladder(40);
    for (double r : {0.5, 1.0, 2.0}) {
        std::vector<double> ts;
        for (int i = 30; i >= 10; --i) ts.push_back(std::ldexp(1.0, -i));
        auto rows = sharp_bound_scan(spec, r, ts);
        // least-squares slope oracle on the directly computed maxima
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (const auto& row : rows) {
            double lx = std::log(row.t), ly = std::log(row.sup_norm);
            sx += lx;
            sy += ly;
            sxx += lx * lx;
            sxy += lx * ly;
        }
        double n = double(rows.size());
        double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        CHECK(std::abs(slope + r) <= 0.05);
    }
}

TEST_CASE("sharp bound scan rejects bad inputs") {
    SpectrumSpec unstable_only = make_spectrum({-1.0, -0.5});
    CHECK_THROWS_AS(sharp_bound_scan(unstable_only, 1.0, {0.5}), ModelError);
    SpectrumSpec ok = make_spectrum({1.0});
    CHECK_THROWS_AS(sharp_bound_scan(ok, 1.0, {0.0}), ParameterError);
}
