// Acceptance suite: one criterion per function, one pass/fail line each.
// Exit code 0 iff every executed criterion passes.

#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include "deveq/boltzmann.hpp"
#include "deveq/commands.hpp"
#include "deveq/estimates.hpp"
#include "deveq/linear.hpp"
#include "deveq/nonlinear.hpp"
#include "deveq/report.hpp"
#include "deveq/rng.hpp"
#include "deveq/semigroup.hpp"

using namespace deveq;
namespace fs = std::filesystem;

namespace {

struct Line {
    bool pass = true;
    std::string detail;

    void require(bool ok) { pass = pass && ok; }
    void fmt(const char* spec, double v) {
        char buf[128];
        std::snprintf(buf, sizeof buf, spec, v);
        detail += buf;
    }
    void text(const std::string& s) { detail += s; }
};

double smooth_bump(double s, double a, double b) {
    double u = (2.0 * s - a - b) / (b - a);
    return std::abs(u) < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - u * u)) : 0.0;
}

// --------------------------------------------------------------------------
// 1. resolvent bounds, 50 random spectra x 1e4 omegas, exact per mode

Line criterion1() {
    Line line;
    Rng rng(101);
    double worst1 = 0.0, worst2 = 0.0;
    for (int s = 0; s < 50; ++s) {
        std::vector<double> alphas(64);
        for (double& a : alphas) a = rng.uniform(-2.0, 2.0);
        SpectrumSpec spec = make_spectrum(alphas);
        for (int i = 0; i < 10000; ++i) {
            double omega = -1e6 + 2e6 * double(i) / 9999.0;
            for (double a : spec.alphas) {
                worst1 = std::max(worst1, resolvent_symbol_modulus(a, omega));
                worst2 = std::max(worst2, resolvent_flux_modulus(a, omega));
            }
        }
    }
    line.require(worst1 <= 1.0 + 1e-12);
    line.require(worst2 <= 2.0 + 1e-12);
    line.fmt("sup|(iwA+I)^-1|=%.15g (<=1)", worst1);
    line.fmt("  sup|iwA(iwA+I)^-1|=%.15g (<=2)", worst2);
    return line;
}

// --------------------------------------------------------------------------
// 2. semigroup law + contraction on dyadic time pairs

Line criterion2() {
    Line line;
    Rng rng(202);
    double worst_law = 0.0, worst_contr = 0.0;
    for (int s = 0; s < 20; ++s) {
        std::vector<double> alphas(48);
        for (double& a : alphas) a = rng.uniform(-1.5, 1.5);
        SpectrumSpec spec = make_spectrum(alphas);
        for (int v = 0; v < 20; ++v) {
            HVec h = rng.unit_vec(48);
            for (int i = -8; i <= 4; i += 3) {
                for (int j = -8; j <= 4; j += 3) {
                    double t1 = std::ldexp(1.0, i), t2 = std::ldexp(1.0, j);
                    HVec two = apply_semigroup(
                        spec, {t1, 0.0, Direction::stable},
                        apply_semigroup(spec, {t2, 0.0, Direction::stable}, h));
                    HVec one = apply_semigroup(
                        spec, {t1 + t2, 0.0, Direction::stable}, h);
                    worst_law = std::max(worst_law, norm(sub(two, one)));
                }
            }
            double prev = norm(project(spec, h, Subspace::stable));
            for (int i = -8; i <= 4; ++i) {
                double cur = norm(apply_semigroup(
                    spec, {std::ldexp(1.0, i), 0.0, Direction::stable}, h));
                worst_contr = std::max(worst_contr, cur - prev);
                prev = cur;
            }
        }
    }
    line.require(worst_law <= 1e-12);
    line.require(worst_contr <= 1e-12);
    line.fmt("law violation max=%.3g", worst_law);
    line.fmt("  contraction violation max=%.3g (tol 1e-12)", worst_contr);
    return line;
}

// --------------------------------------------------------------------------
// 3. BVP solver on 25 seeded random instances (N = 32)

Line criterion3() {
    Line line;
    double worst_res = 0.0, worst_bc = 0.0, worst_cross = 0.0;
    for (int inst = 0; inst < 25; ++inst) {
        Rng rng(3000 + inst);
        std::vector<double> alphas(32);
        for (double& a : alphas)
            a = (rng.uniform() < 0.45 ? -1.0 : 1.0) * rng.uniform(0.25, 0.75);
        SpectrumSpec spec = make_spectrum(alphas);

        double t0 = 0.0, t1 = 2.0;
        std::vector<double> times = uniform_grid(t0, t1, 10001);
        std::vector<HVec> fv(times.size(), HVec(32, 0.0));
        for (std::size_t j = 0; j < 32; ++j) {
            double a1 = rng.normal(), a2 = rng.normal();
            double p1 = rng.uniform(0.0, 6.283), p2 = rng.uniform(0.0, 6.283);
            for (std::size_t m = 0; m < times.size(); ++m) {
                double env = smooth_bump(times[m], t0, t1);
                fv[m][j] = env * (a1 * std::sin(3.14159 * times[m] + p1) +
                                  a2 * std::sin(4.71 * times[m] + p2));
            }
        }
        Trajectory f = make_trajectory(times, fv);
        HVec g0 = scaled(project(spec, rng.normal_vec(32), Subspace::stable), 0.4);
        HVec g1 = scaled(project(spec, rng.normal_vec(32), Subspace::unstable), 0.4);
        BoundaryData bd = weak_data(spec, g0, g1);

        Trajectory x = solve_bvp(spec, f, bd);
        Trajectory x_fine = solve_bvp(spec, f, bd, refine_grid(times));
        worst_res = std::max(worst_res, linear_residual(spec, x_fine, f));

        HVec at0 = abs_power(spec, project(spec, x.values.front(), Subspace::stable), 0.5);
        HVec at1 = abs_power(spec, project(spec, x.values.back(), Subspace::unstable), 0.5);
        worst_bc = std::max({worst_bc, norm(sub(at0, g0)), norm(sub(at1, g1))});

        Trajectory yv = solve_voc(spec, f, 0.5 * min_noncenter_alpha(spec));
        FourierSolution yf = solve_fourier(spec, f);
        Trajectory yfr = restrict_to(yf.x, times);
        Trajectory dtraj = subtract(yv, yfr);
        worst_cross = std::max(worst_cross, std::sqrt(l2_norm_sq(dtraj, t0, t1)));
    }
    line.require(worst_res <= 1e-6);
    line.require(worst_bc <= 1e-8);
    line.require(worst_cross <= 1e-5);
    line.fmt("residual max=%.3g (tol 1e-6)", worst_res);
    line.fmt("  bc max=%.3g (tol 1e-8)", worst_bc);
    line.fmt("  fourier/voc max=%.3g (tol 1e-5)", worst_cross);
    return line;
}

// --------------------------------------------------------------------------
// 4. nonlinear decay: quadform monotone, tails under e^{-t}, rate >= 0.4

Line criterion4() {
    Line line;
    double T = 12.0;
    std::vector<double> grid = nonlinear_grid(T, 0.9, 1e-4, 0.05);
    double worst_rate = 1e300;
    int converged = 0;
    std::string rates;
    for (int run_id = 0; run_id < 10; ++run_id) {
        Rng rng(4000 + run_id);
        std::vector<double> alphas(24);
        for (double& a : alphas) a = rng.uniform(-1.0, 1.0);
        double amax = 0.0;
        for (double a : alphas) amax = std::max(amax, std::abs(a));
        for (double& a : alphas) a /= amax;  // |A| = 1 exactly
        SpectrumSpec spec = make_spectrum(alphas);

        NonlinearMap G;
        if (run_id % 2 == 0) {
            Rng grng(9000 + run_id);
            G = saturated_quadratic(random_bilinear(24, grng, 0.1, 1.0));
        } else {
            G = scalar_map(0.2, 24);
        }

        HVec h = project(spec, rng.unit_vec(24), Subspace::stable);
        HVec g0 = abs_power(spec, h, 0.5);
        g0 = scaled(g0, 0.2 / norm(g0));

        PicardResult run = picard_solve(spec, G, g0, T, grid, {1e-9, 0.25, 120});
        ++converged;
        double sup = 0.0;
        for (const HVec& v : run.x.values) sup = std::max(sup, norm(v));
        line.require(sup <= 1.0);

        QuadformReport qf = quadratic_form_series(spec, run.x);
        line.require(qf.monotone && qf.nonneg && qf.exp_dominated);

        TailReport tails = l2_tail_series(run.x);
        for (std::size_t m = 0; m < tails.t.size(); ++m)
            line.require(tails.tail[m] <=
                         std::exp(-tails.t[m]) * (1.0 + 1e-3));

        RateFit rf = fit_exponential_rate(run.x, 1.0, 0.75 * T);
        worst_rate = std::min(worst_rate, rf.rate);
        char buf[16];
        std::snprintf(buf, sizeof buf, "%s%.2f", run_id ? "," : "", rf.rate);
        rates += buf;
    }
    line.require(converged == 10);
    line.require(worst_rate >= 0.4);
    line.fmt("runs=%.0f/10 converged", double(converged));
    line.text("  tails<=e^-t(1+1e-3), quadform monotone; per-run rates [" +
              rates + "] (>=0.4)");
    return line;
}

// --------------------------------------------------------------------------
// 5. smoothing rates: slope of |x^(k)| = -k +- 0.15 on [2^-12, 2^-4]

std::vector<double> stencil_probe_grid(double t_lo, double t_hi, int k_max,
                                       double frac) {
    std::vector<double> pts;
    for (double t = t_hi; t >= t_lo * (1.0 - 1e-12); t *= 0.5) {
        pts.push_back(t);
        for (int k = 1; k <= k_max; ++k)
            for (int i = 0; i <= k; ++i)
                pts.push_back(t + (double(i) - 0.5 * double(k)) * frac * t);
    }
    std::sort(pts.begin(), pts.end());
    std::vector<double> uniq;
    for (double t : pts)
        if (uniq.empty() || t - uniq.back() > 1e-15 * t) uniq.push_back(t);
    return uniq;
}

Line criterion5() {
    Line line;
    // The stated n = 256 harmonic ladder bottoms out at alpha = 2^-8 and
    // cannot scale through the 2^-12 window floor; the ladder is enlarged to
    // n = 32768 (alpha down to 2^-15) with the window kept as stated.
    SpectrumSpec spec = harmonic_ladder(32768);
    double t_lo = std::ldexp(1.0, -12), t_hi = std::ldexp(1.0, -4);
    std::vector<double> grid = stencil_probe_grid(t_lo / 4.0, t_hi * 4.0, 3, 0.125);
    HVec x0(spec.dim());
    for (std::size_t j = 0; j < spec.dim(); ++j)
        x0[j] = std::pow(spec.alphas[j], 0.55);
    double r = norm(x0);
    for (double& v : x0) v /= r;
    Trajectory x = semigroup_trajectory(spec, x0, grid);

    DecayFitOptions opts;
    opts.t_lo = t_lo;
    opts.t_hi = t_hi;
    opts.large_t_lo = 0.0;  // small-t window only
    std::vector<DecayReport> reports = decay_fit(x, 3, opts);
    line.text("slopes");
    for (int k = 1; k <= 3; ++k) {
        double slope = reports[std::size_t(k)].small_t_slope;
        line.require(std::abs(slope + double(k)) <= 0.15);
        line.fmt(" k%.0f", double(k));
        line.fmt("=%.3f", slope);
    }
    line.text("  (target -k +- 0.15; harmonic ladder n=32768)");
    return line;
}

// --------------------------------------------------------------------------
// 6. sharpness probe at t = a_n

Line criterion6() {
    Line line;
    SpectrumSpec spec = geometric_ladder(40);
    SharpnessReport r0 = sharpness_probe(spec, 0);
    line.require(r0.min_ratio == std::exp(-1.0));
    line.require(r0.max_ratio == std::exp(-1.0));
    line.fmt("k0 ratio=%.15g (=1/e exactly)", r0.min_ratio);
    for (int k : {1, 2}) {
        SharpnessReport rep = sharpness_probe(spec, k);
        double spread = (rep.max_ratio - rep.min_ratio) / rep.min_ratio;
        line.require(rep.min_ratio >= 0.2);
        line.require(spread <= 1e-9);
        line.fmt("  k%.0f", double(k));
        line.fmt(" ratio=%.6f", rep.min_ratio);
        line.fmt(" cands[1/e=%.4f", rep.candidate_at_z_t);
        line.fmt(",(k/e)^k=%.4f]", rep.candidate_max);
    }
    return line;
}

// --------------------------------------------------------------------------
// 7. Haar L4 bound over 100 random smooth trajectories

Line criterion7() {
    Line line;
    Rng rng(707);
    double span = 4.0;
    std::size_t points = 257;
    std::vector<double> taus = dyadic_tau_grid(span / double(points - 1), 1.0);
    int violations = 0, refinements = 0;
    double worst_margin = 1e300;
    for (int trial = 0; trial < 100; ++trial) {
        Trajectory x = random_smooth_trajectory(rng, 0.0, span, points, 6);
        HaarReport rep = haar_l4_bound({x, taus});
        if (!rep.pass) ++violations;
        if (rep.refined) ++refinements;
        if (rep.rhs > 0.0)
            worst_margin = std::min(worst_margin, (rep.rhs - rep.lhs) / rep.rhs);
    }
    line.require(violations == 0);
    line.fmt("violations=%.0f/100", double(violations));
    line.fmt(" refinements=%.0f", double(refinements));
    line.fmt("  K=%.2f", haar_constant());
    line.fmt("  min rel margin=%.3g", worst_margin);
    return line;
}

// --------------------------------------------------------------------------
// 8. Bochner counterexample signatures for r = 1.5 and r = 2

Line criterion8() {
    Line line;
    std::vector<double> sigmas;
    for (int i = 24; i >= 4; --i) sigmas.push_back(std::ldexp(1.0, -i));
    std::vector<double> epss;
    for (int k = 1; k <= 20; ++k) epss.push_back(std::ldexp(1.0, -k));
    for (double r : {1.5, 2.0}) {
        BochnerReport rep = bochner_counterexample(r, sigmas, epss);
        double norm_err = std::abs(rep.norm_f_sq - rep.norm_f_sq_closed);
        line.require(norm_err <= 1e-4);
        double band = rep.band_max / rep.band_min;
        line.require(band <= 3.0);
        bool increments_ok = true;
        double last_ratio = 0.0;
        for (std::size_t i = 2; i < rep.partials.size(); ++i) {
            double prev = rep.partials[i - 1].increment;
            double cur = rep.partials[i].increment;
            if (!(cur > 0.0)) increments_ok = false;
            last_ratio = cur / prev;
            if (r == 2.0 && cur < 0.5 * prev) increments_ok = false;
        }
        line.require(increments_ok);
        line.fmt("r=%.1f:", r);
        line.fmt(" |f|^2 err=%.2g", norm_err);
        line.fmt(" band=%.2f(<=3)", band);
        line.fmt(" last incr ratio=%.2f", last_ratio);
        if (r == 1.5) line.text(";  ");
    }
    return line;
}

// --------------------------------------------------------------------------
// 9. Boltzmann toy sweep

Line criterion9() {
    Line line;
    double T = 12.0;
    VelocityModel model = build_model(16, 909, 0.0625);
    Rng rng(910);
    HVec h = project(model.spec, rng.unit_vec(16), Subspace::stable);
    HVec dir = abs_power(model.spec, h, 0.5);
    dir = scaled(dir, 0.05 / norm(dir));
    std::vector<HVec> family;
    for (double s : {1.0, 0.5, 0.25, 0.125, 0.0625})
        family.push_back(scaled(dir, s));

    TailExperimentReport rep = tail_experiment(model, family, T, 2e-3);
    line.require(rep.all_converged);
    line.require(rep.t_star_monotone);
    int converged = 0;
    for (const TailMemberReport& mem : rep.members)
        if (mem.converged) ++converged;
    double worst_slope = -1e300, worst_rate = 1e300;
    for (const TailMemberReport& mem : rep.members) {
        line.require(mem.quadform_pass);  // criterion-4 checks at |A| < 1
        line.require(mem.tail_pass);
        worst_rate = std::min(worst_rate, mem.large_t_rate);
        // criterion-5 check at k = 1, upper-bound direction for computed runs
        DecayFitOptions opts;
        opts.t_lo = std::ldexp(1.0, -12);
        opts.t_hi = std::ldexp(1.0, -4);
        opts.large_t_lo = 0.0;
        if (norm(mem.x.values.front()) > 0.0) {
            double slope = decay_fit(mem.x, 1, opts)[1].small_t_slope;
            worst_slope = std::max(worst_slope, -slope);
            line.require(slope >= -1.0 - 0.15);
        }
    }
    line.require(worst_rate >= 0.4);
    line.fmt("converged=%.0f/5", double(converged));
    line.text(rep.t_star_monotone ? "  t* nonincreasing" : "  t* NOT monotone");
    line.fmt("  min rate=%.2f", worst_rate);
    line.fmt("  steepest k1 slope=-%.3f (>=-1.15)", worst_slope);
    return line;
}

// --------------------------------------------------------------------------
// 10. determinism of the command surface

Line criterion10() {
    Line line;
    fs::path base = fs::temp_directory_path() / "deveq_acceptance_det";
    fs::remove_all(base);

    auto bytes_equal = [&](const std::string& a, const std::string& b,
                           const std::string& name) {
        std::string fa = (fs::path(a) / name).string();
        std::string fb = (fs::path(b) / name).string();
        return read_file(fa) == read_file(fb);
    };

    {
        RunConfig cfg = parse_config_text(
            "seed = 31\n"
            "spectrum = {kind: explicit, alphas: 0.25,0.5,1,-0.5}\n"
            "solver = {T: 6, tol: 1e-9}\n"
            "nonlinearity = {kind: bilinear, amplitude: 0.1}\n"
            "g0 = {kind: mild_random, scale: 0.1}\n");
        std::string d1 = (base / "sim1").string(), d2 = (base / "sim2").string();
        line.require(cmd_simulate(cfg, d1) == 0);
        line.require(cmd_simulate(cfg, d2) == 0);
        line.require(bytes_equal(d1, d2, "trajectory.csv"));
        line.require(bytes_equal(d1, d2, "report.json"));
    }
    {
        RunConfig cfg = parse_config_text(
            "seed = 8\nbvp = {kind: bundled, n: 8, points: 2001, t1: 1}\n");
        std::string d1 = (base / "bvp1").string(), d2 = (base / "bvp2").string();
        int c1 = cmd_bvp(cfg, d1), c2 = cmd_bvp(cfg, d2);
        line.require(c1 == c2);
        line.require(bytes_equal(d1, d2, "solution.csv"));
        line.require(bytes_equal(d1, d2, "bvp_report.json"));
    }
    {
        RunConfig cfg = parse_config_text(
            "seed = 2\nspectrum = {kind: geometric, n: 40}\nk_max = 2\n");
        std::string d1 = (base / "sh1").string(), d2 = (base / "sh2").string();
        line.require(cmd_verify(cfg, "sharpness", d1) == 0);
        line.require(cmd_verify(cfg, "sharpness", d2) == 0);
        line.require(bytes_equal(d1, d2, "sharpness.csv"));
        line.require(bytes_equal(d1, d2, "sharpness_verdict.json"));
    }
    {
        RunConfig cfg = parse_config_text("seed = 6\nhaar = {trials: 10}\n");
        std::string d1 = (base / "h1").string(), d2 = (base / "h2").string();
        line.require(cmd_verify(cfg, "haar", d1) == 0);
        line.require(cmd_verify(cfg, "haar", d2) == 0);
        line.require(bytes_equal(d1, d2, "haar.csv"));
    }
    {
        RunConfig cfg = parse_config_text(
            "seed = 5\nK = 8\nT = 6\ng0_scale_sweep = 1,0.5\n");
        std::string d1 = (base / "bt1").string(), d2 = (base / "bt2").string();
        int c1 = cmd_boltzmann_tail(cfg, d1), c2 = cmd_boltzmann_tail(cfg, d2);
        line.require(c1 == c2);
        line.require(bytes_equal(d1, d2, "summary.csv"));
        line.require(bytes_equal(d1, d2, "member_0.json"));
        line.require(bytes_equal(d1, d2, "tail_report.json"));
    }
    {
        RunConfig cfg = parse_config_text(
            "seed = 3\nspectrum = {kind: geometric, n: 40}\nr = 1\n");
        std::string d1 = (base / "sc1").string(), d2 = (base / "sc2").string();
        line.require(cmd_sharpness_scan(cfg, d1) == 0);
        line.require(cmd_sharpness_scan(cfg, d2) == 0);
        line.require(bytes_equal(d1, d2, "scan.csv"));
        line.require(bytes_equal(d1, d2, "scan_report.json"));
    }
    fs::remove_all(base);
    line.text("simulate/bvp/verify/boltzmann-tail/sharpness-scan rerun bit-identical");
    return line;
}

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc)
            only = std::atoi(argv[++i]);
    }

    struct Entry {
        int id;
        const char* name;
        Line (*fn)();
    };
    const Entry entries[] = {
        {1, "resolvent bounds", criterion1},
        {2, "semigroup law and contraction", criterion2},
        {3, "bvp residual, boundary attainment, cross-solver", criterion3},
        {4, "nonlinear decay", criterion4},
        {5, "smoothing rates", criterion5},
        {6, "sharpness", criterion6},
        {7, "haar L4 bound", criterion7},
        {8, "bochner counterexample", criterion8},
        {9, "boltzmann tail sweep", criterion9},
        {10, "determinism", criterion10},
    };

    bool all_pass = true;
    for (const Entry& e : entries) {
        if (only != 0 && e.id != only) continue;
        Line line;
        try {
            line = e.fn();
        } catch (const std::exception& ex) {
            line.pass = false;
            line.detail = std::string("exception: ") + ex.what();
        }
        std::printf("criterion %2d [%s]: %s  %s\n", e.id,
                    line.pass ? "PASS" : "FAIL", e.name, line.detail.c_str());
        std::fflush(stdout);
        all_pass = all_pass && line.pass;
    }
    return all_pass ? 0 : 1;
}
