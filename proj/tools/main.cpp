#include <CLI11.hpp>

#include <cstdio>
#include <string>

#include "deveq/commands.hpp"
#include "deveq/report.hpp"

namespace {

// Folds a CLI override into a brace block held in the config.
void merge_block_entry(deveq::RunConfig& cfg, const std::string& block_key,
                       const std::string& key, const std::string& value) {
    std::string body;
    if (cfg.has(block_key)) {
        std::string cur = cfg.get(block_key);
        body = cur.substr(1, cur.size() - 2);  // strip braces
        if (!deveq::trim(body).empty()) body += ", ";
    }
    body += key + ": " + value;
    cfg.entries[block_key] = "{" + body + "}";
    cfg.raw += block_key + "." + key + " = " + value + "\n";
}

std::string fmt(double v) { return deveq::format_full(v); }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"deveq: solvers and estimate checks for (d/dt)(Ax) = -x + G(x)"};
    app.require_subcommand(1);

    std::string config_path, out_dir = "out";
    long long seed = -1;
    int threads = 1;
    app.add_option("--config", config_path, "config file (key = value lines)");
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--seed", seed, "seed override");
    app.add_option("--threads", threads, "worker threads (informational)")
        ->check(CLI::PositiveNumber);

    auto* sim = app.add_subcommand("simulate", "nonlinear solve on (0, T]");
    std::string spectrum, g0;
    double T = -1, tol = -1, gamma = -1, grid_theta = -1;
    sim->add_option("--spectrum", spectrum, "spectrum block {kind: ..., ...}");
    sim->add_option("--g0", g0, "stable boundary data (comma list or block)");
    sim->add_option("--T", T, "horizon");
    sim->add_option("--tol", tol, "Picard tolerance");
    sim->add_option("--gamma", gamma, "contraction bound gamma_max");
    sim->add_option("--grid-theta", grid_theta, "geometric grid ratio");

    auto* ver = app.add_subcommand("verify", "run an estimate check");
    std::string check;
    double opt_r = -1;
    long long opt_k = -1;
    ver->add_option("check", check,
                    "quadform|tails|decay|sharpness|haar|bochner|techcor")
        ->required();
    ver->add_option("--r", opt_r, "exponent r (bochner)");
    ver->add_option("--k", opt_k, "max derivative order (decay/sharpness)");

    auto* bvp = app.add_subcommand("bvp", "two-point boundary-value solve");

    auto* bt = app.add_subcommand("boltzmann-tail", "discrete-velocity tail sweep");
    long long K = -1;
    double amplitude = -1, bt_T = -1;
    std::string sweep;
    bt->add_option("--K", K, "velocity nodes");
    bt->add_option("--amplitude", amplitude, "certified bilinear norm");
    bt->add_option("--g0-scale-sweep", sweep, "comma list of scales");
    bt->add_option("--T", bt_T, "horizon");

    auto* scan = app.add_subcommand("sharpness-scan", "smoothing bound scan");
    double scan_r = -1, scan_lo = -1, scan_hi = -1;
    scan->add_option("--r", scan_r, "smoothing order");
    scan->add_option("--t-lo", scan_lo, "window start");
    scan->add_option("--t-hi", scan_hi, "window end");
    scan->add_option("--spectrum", spectrum, "spectrum block");

    // global flags remain valid after the subcommand name
    for (CLI::App* sub : {sim, ver, bvp, bt, scan}) sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        deveq::RunConfig cfg;
        if (!config_path.empty()) cfg = deveq::load_config_file(config_path);
        if (seed >= 0) cfg.set("seed", std::to_string(seed));
        cfg.seed = static_cast<std::uint64_t>(cfg.get_long("seed", 0));

        if (sim->parsed()) {
            if (!spectrum.empty()) cfg.set("spectrum", spectrum);
            if (!g0.empty())
                cfg.set("g0", g0.front() == '{'
                                  ? g0
                                  : "{kind: explicit, coeffs: " + g0 + "}");
            if (T > 0) merge_block_entry(cfg, "solver", "T", fmt(T));
            if (tol > 0) merge_block_entry(cfg, "solver", "tol", fmt(tol));
            if (gamma > 0) merge_block_entry(cfg, "solver", "gamma", fmt(gamma));
            if (grid_theta > 0)
                merge_block_entry(cfg, "solver", "grid_theta", fmt(grid_theta));
            return deveq::cmd_simulate(cfg, out_dir);
        }
        if (ver->parsed()) {
            if (opt_r > 0) merge_block_entry(cfg, "bochner", "r", fmt(opt_r));
            if (opt_k >= 0) {
                merge_block_entry(cfg, "decay", "k_max", std::to_string(opt_k));
                cfg.set("k_max", std::to_string(opt_k));
            }
            return deveq::cmd_verify(cfg, check, out_dir);
        }
        if (bvp->parsed()) return deveq::cmd_bvp(cfg, out_dir);
        if (bt->parsed()) {
            if (K > 0) cfg.set("K", std::to_string(K));
            if (amplitude > 0) cfg.set("amplitude", fmt(amplitude));
            if (bt_T > 0) cfg.set("T", fmt(bt_T));
            if (!sweep.empty()) cfg.set("g0_scale_sweep", sweep);
            return deveq::cmd_boltzmann_tail(cfg, out_dir);
        }
        if (scan->parsed()) {
            if (!spectrum.empty()) cfg.set("spectrum", spectrum);
            if (scan_r > 0) cfg.set("r", fmt(scan_r));
            if (scan_lo > 0) cfg.set("t_lo", fmt(scan_lo));
            if (scan_hi > 0) cfg.set("t_hi", fmt(scan_hi));
            return deveq::cmd_sharpness_scan(cfg, out_dir);
        }
    } catch (const deveq::DivergenceError& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return deveq::kExitNumerical;
    } catch (const deveq::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return deveq::kExitConfig;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return deveq::kExitConfig;
    }
    return deveq::kExitConfig;
}
