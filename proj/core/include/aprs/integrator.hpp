#pragma once

#include <vector>

#include "aprs/field.hpp"

namespace aprs {

using FlowState = std::vector<SpectralField>;

/// Semilinear system y' = L y + N(y) with L diagonal in spectral space.
/// apply_diffusion realizes exp(tau L) exactly; rhs evaluates N.
class FlowSystem {
  public:
    virtual ~FlowSystem() = default;
    virtual FlowState rhs(const FlowState& y) const = 0;
    virtual void apply_diffusion(FlowState& y, double tau) const = 0;
    /// Cleanup after a full step: symmetry checks, band masks, projections.
    virtual void postprocess(FlowState& y) const { (void)y; }
};

/// Integrating-factor classical RK4: exact on the diffusive part, 4th order
/// on the projected nonlinearity.
void ifrk4_step(const FlowSystem& sys, FlowState& y, double dt);

/// Throws BlowUpError when a coefficient exceeds 1e12 or stops being finite.
void check_bounded(const FlowState& y, long step, double time);

}  // namespace aprs
