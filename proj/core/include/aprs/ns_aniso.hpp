#pragma once

#include "aprs/config.hpp"
#include "aprs/velocity.hpp"

namespace aprs {

struct NsAnisoRhs {
    SpectralField fluct1;      // zero-vertical-mean tendency of u~^h_1
    SpectralField fluct2;
    SpectralField fluct_v;     // tendency of eps u~^v (odd, mean-free)
    SpectralField mean_flux1;  // vertical mean of P_eps[conv]^h
    SpectralField mean_flux2;
};

/// Convective tendency of the rescaled pair (u~^h, eps u~^v): the projected
/// advection -P_eps[(u~ + ubar).grad U + u~^h.grad_h (ubar, 0)], with the
/// vertical mean of the horizontal rows split off for the mean-flow system.
/// Diffusion (nu_h Lap_h + eps^{gamma-2} dz^2) lives in the heat factor.
NsAnisoRhs rhs_ns_aniso(const SpectralField& t1, const SpectralField& t2, const SpectralField& v,
                        const SpectralField& ubar1, const SpectralField& ubar2,
                        const RunConfig& cfg);

/// Full time derivative of (u^h, eps u^v) including diffusion and the mean
/// equation; used for stored-tendency diagnostics and reduction oracles.
std::array<SpectralField, 3> total_ns_tendency(const SpectralField& t1, const SpectralField& t2,
                                               const SpectralField& v, const SpectralField& ubar1,
                                               const SpectralField& ubar2, const RunConfig& cfg);

}  // namespace aprs
