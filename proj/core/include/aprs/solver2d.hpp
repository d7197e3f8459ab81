#pragma once

#include <array>

#include "aprs/config.hpp"
#include "aprs/integrator.hpp"

namespace aprs {

/// Per-step record of ||grad_h ubar||^2 with a cumulative integral accurate
/// enough for the 1e-6 energy-equality budget (3-point quadratic panels on
/// the uniform step grid, rebuilt lazily).
struct DissipationSeries {
    std::vector<double> times;
    std::vector<double> grad_sq;

    void append(double t, double g);
    double integral_at(double t) const;
    const std::vector<double>& cumulative() const;

  private:
    mutable std::vector<double> cumulative_;
    mutable bool dirty_ = false;
    void refresh() const;
};

struct Trajectory2D {
    std::vector<double> times;
    std::vector<std::array<SpectralField, 2>> states;
    std::vector<double> energy;            // ||ubar(t)||^2_{L2(Omega_h)}
    std::vector<double> energy_residual;   // |E + 2 nu int - E0| / E0
    DissipationSeries dissipation;
    double dt = 0.0;
};

/// 2D Navier-Stokes (z-constant horizontal pair) with spectral Galerkin
/// convection and exact diffusion.
class Ns2DSystem : public FlowSystem {
  public:
    Ns2DSystem(LatticePtr lattice, double nu_h, bool convection = true)
        : lattice_(std::move(lattice)), nu_h_(nu_h), convection_(convection) {}

    FlowState rhs(const FlowState& y) const override;
    void apply_diffusion(FlowState& y, double tau) const override;
    void postprocess(FlowState& y) const override;

  private:
    LatticePtr lattice_;
    double nu_h_;
    bool convection_;
};

Trajectory2D solve_2d_ns(const SpectralField& u0_1, const SpectralField& u0_2,
                         const RunConfig& cfg);

/// Gradient energy ||grad_h u||^2 summed over the component list.
double grad_h_energy(const std::vector<const SpectralField*>& comps);

/// Heat factor exp(-(nu_h |pi kk_h|^2 + nu_z |pi k3|^2) tau).
void apply_heat_factor(SpectralField& f, double nu_h, double nu_z, double tau);

}  // namespace aprs
