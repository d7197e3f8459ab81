#pragma once

#include <optional>
#include <string>
#include <vector>

#include "aprs/lattice.hpp"

namespace aprs {

enum class SystemKind { primitive, ns_aniso };

enum class InitKind { zero, seeded, taylor_green };

/// Recipe for the initial state: a 2D divergence-free mean flow plus a 3D
/// zero-vertical-mean even fluctuation, both seeded and band-limited.
struct InitialDataDescriptor {
    InitKind kind = InitKind::seeded;
    std::uint64_t seed = 1;
    double amplitude = 0.05;       // B^{0,1/2} norm of the fluctuation pair
    double mean_amplitude = 0.05;  // L2(Omega_h) norm of the mean flow
    int band = 3;                  // largest |k| per axis in the random data
};

struct RunConfig {
    LatticePtr lattice;
    SystemKind system = SystemKind::primitive;
    double nu_h = 1.0;
    double gamma = 3.0;
    std::optional<double> eps;  // required for ns_aniso
    int k_trunc = 0;            // 0 -> defaults to N_h/2 (full band)
    double dt = 0.0;            // 0 -> CFL rule
    bool dt_auto = true;
    double t_end = 1.0;
    int output_every = 10;
    InitialDataDescriptor init;
    bool enable_convection = true;  // diagnostic switch for linear-regime runs

    int effective_k_trunc() const { return k_trunc > 0 ? k_trunc : lattice->n_h() / 2; }
    void validate() const;
};

struct SweepConfig {
    std::vector<double> eps_values;  // strictly decreasing in (0, 1]
    double weak_order = 3.0;
    double eta = 0.25;  // H^eta exponent for the strong-distance column
};

struct ParsedConfig {
    RunConfig run;
    std::optional<SweepConfig> sweep;
};

/// Flat key = value format with [section] headers, '#' comments, and
/// line-anchored diagnostics.  Unknown keys are rejected.
ParsedConfig parse_config_text(const std::string& text, const std::string& origin);
ParsedConfig parse_config(const std::string& path);

/// Applies "section.key=value" overrides on top of the file content.
ParsedConfig parse_config_with_overrides(const std::string& path,
                                         const std::vector<std::string>& overrides);

/// dt = 0.25 min( 1/(nu_h pi^2 (N_h/L_h)^2), min(dx,dz)/max|u| ), then
/// rounded down so t_end is an integer number of steps.
double default_time_step(const RunConfig& cfg, double max_speed);

std::string canonical_config_text(const ParsedConfig& cfg);

}  // namespace aprs
