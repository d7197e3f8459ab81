#pragma once

#include <array>
#include <memory>
#include <optional>

#include "aprs/config.hpp"
#include "aprs/norms.hpp"
#include "aprs/integrator.hpp"
#include "aprs/solver2d.hpp"
#include "aprs/velocity.hpp"

namespace aprs {

struct StepDiagnostics {
    long step = 0;
    double time = 0.0;
    double l2_energy_mean = 0.0;     // ||ubar||^2_{L2(Omega_h)}
    double dissipation_mean = 0.0;   // int_0^t ||grad_h ubar||^2
    NormReport besov;                // fluctuation pair (NS: with eps u^v)
    double div_residual = 0.0;
    double parity_residual = 0.0;
    double energy_equality_residual = 0.0;
};

/// Output of solve_coupled: output-time snapshots, per-step norm
/// accumulators, the mean-flow dissipation series, and diagnostics rows.
struct CoupledTrajectory {
    SystemKind system = SystemKind::primitive;
    LatticePtr lattice;
    double dt = 0.0;
    double nu_h = 0.0;
    double gamma = 0.0;
    std::optional<double> eps;

    std::vector<double> times;
    std::vector<std::array<SpectralField, 2>> mean;
    std::vector<VelocityState> fluct;  // uv is the physical vertical velocity
    std::vector<std::array<SpectralField, 3>> tendency;  // d/dt (u^h, [eps] u^v)
    std::vector<StepDiagnostics> diagnostics;
    DissipationSeries dissipation;
    TimeNormAccumulator acc_value;  // blocks of (u~^h [, eps u~^v])
    TimeNormAccumulator acc_grad;   // blocks of grad_h of the same
    TimeNormAccumulator acc_dz;     // blocks of dz of the same (NS only)
    NormSeries norm_series;
    // Per-step block-norm history behind the accumulators, for monitors
    // that need running tilde norms at intermediate times.
    std::vector<double> fine_times;
    std::vector<std::vector<double>> blocks_value, blocks_grad, blocks_dz;

    bool blew_up = false;
    long blowup_step = -1;
    double blowup_time = 0.0;
    double blowup_max = 0.0;

    std::size_t size() const { return times.size(); }
    SpectralField total_uh(std::size_t i, int comp) const;
    /// (u~^h_1, u~^h_2, eps u~^v) for NS runs; (.., u~^v) for primitive.
    std::array<const SpectralField*, 2> fluct_pair(std::size_t i) const;
    double eps_uv_scale() const { return eps ? *eps : 1.0; }
};

/// Initial flow state of a configured run, after every band mask the solver
/// maintains (so recorded data norms match what is actually evolved).
/// Layout: [ubar1, ubar2, ut1, ut2] (+ [eps uv] for NS).
FlowState prepared_initial_state(const RunConfig& cfg);

/// System factory (primitive or NS), used by solve_coupled and by tests
/// that drive the stepper directly.
std::unique_ptr<FlowSystem> make_coupled_system(const RunConfig& cfg);

/// Co-advances the 2D mean flow and the fluctuation system with one clock.
/// Blow-up is recorded in the trajectory, not thrown.
CoupledTrajectory solve_coupled(const RunConfig& cfg);

/// Same, from an explicit (already masked) initial state.
CoupledTrajectory solve_coupled_from(const RunConfig& cfg, FlowState y0);

/// exp(-lambda int_0^t ||grad_h ubar||^2) weighted copy of the norm series.
NormSeries lambda_weighted_field(const CoupledTrajectory& traj, double lambda);

std::string diagnostics_csv(const CoupledTrajectory& traj);

}  // namespace aprs
