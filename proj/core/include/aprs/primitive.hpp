#pragma once

#include "aprs/config.hpp"
#include "aprs/velocity.hpp"

namespace aprs {

/// z-independent hydrostatic pressure of the fluctuation system, solving
/// 2 Lap p = -int_{-1}^{1} div_h[ conv ] dz with zero horizontal mean, where
/// conv = u~.grad u~^h + ubar.grad_h u~^h + u~^h.grad_h ubar.
SpectralField pressure_primitive(const VelocityState& u_tilde, const SpectralField& ubar1,
                                 const SpectralField& ubar2);

/// Q(u, v): the bilinear pressure kernel, assembled from the flux form
/// (-Lap_h)^{-1} div_h div_h of the vertically averaged tensor u (x) v.
SpectralField pressure_q_form(const SpectralField& u1, const SpectralField& u2,
                              const SpectralField& v1, const SpectralField& v2);

struct PrimitiveRhs {
    SpectralField fluct1;     // zero-vertical-mean tendency of u~^h_1
    SpectralField fluct2;
    SpectralField mean_flux1;  // vertical mean of the truncated convection,
    SpectralField mean_flux2;  // handed to the mean-flow equation
    SpectralField pressure;    // hydrostatic pressure (diagnostic)
};

/// Tendency of the fluctuation system with the Friedrichs truncation J_k
/// applied to every nonlinear product.  The vertical velocity is always the
/// hydrostatic reconstruction.  The vertical mean of the convection flux is
/// split off and returned for the mean-flow equation, so the fluctuation
/// part stays exactly mean-free.
PrimitiveRhs rhs_primitive_fluct(const VelocityState& u_tilde, const SpectralField& ubar1,
                                 const SpectralField& ubar2, const RunConfig& cfg);

}  // namespace aprs
