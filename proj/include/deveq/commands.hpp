#pragma once

#include <string>

#include "deveq/config.hpp"
#include "deveq/nonlinear.hpp"

namespace deveq {

// Exit codes shared by the CLI: 0 pass, 1 usage/config error, 2 numerical
// failure (divergence, failed verdict, cross-solver disagreement).
inline constexpr int kExitPass = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitNumerical = 2;

// Each command writes its CSV/JSON outputs under out_dir and returns an exit
// code. Config errors surface as ConfigError/ParameterError exceptions; the
// CLI maps them to exit 1.
int cmd_simulate(const RunConfig& cfg, const std::string& out_dir);
int cmd_verify(const RunConfig& cfg, const std::string& check,
               const std::string& out_dir);
int cmd_bvp(const RunConfig& cfg, const std::string& out_dir);
int cmd_boltzmann_tail(const RunConfig& cfg, const std::string& out_dir);
int cmd_sharpness_scan(const RunConfig& cfg, const std::string& out_dir);

// Shared builders (also used by tests and the acceptance suite).
NonlinearMap build_nonlinearity(const RunConfig& cfg, const SpectrumSpec& spec);
HVec build_g0(const RunConfig& cfg, const SpectrumSpec& spec);

struct SolverParams {
    double T = 12.0;
    double tol = 1e-8;
    double gamma = 0.25;
    double grid_theta = 0.9;
    int max_iter = 80;
    double t_min = 1e-4;
    double head_dt = 0.1;
};

SolverParams solver_params(const RunConfig& cfg);

}  // namespace deveq
