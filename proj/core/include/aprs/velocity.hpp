#pragma once

#include "aprs/operators.hpp"

namespace aprs {

/// Divergence-free velocity (u^h1, u^h2, u^v) with the parity structure of
/// the hydrostatic system: horizontal components even in z, vertical odd.
struct VelocityState {
    SpectralField uh1;
    SpectralField uh2;
    SpectralField uv;
    double time = 0.0;

    explicit VelocityState(LatticePtr lattice)
        : uh1(lattice, Parity::even), uh2(lattice, Parity::even), uv(lattice, Parity::odd) {}

    VelocityState(SpectralField h1, SpectralField h2, SpectralField v, double t = 0.0)
        : uh1(std::move(h1)), uh2(std::move(h2)), uv(std::move(v)), time(t) {
        uh1.set_parity(Parity::even);
        uh2.set_parity(Parity::even);
        uv.set_parity(Parity::odd);
    }

    const Lattice& lattice() const { return uh1.lattice(); }
    LatticePtr lattice_ptr() const { return uh1.lattice_ptr(); }

    /// ||div u||_L2 relative to ||grad u||_L2 (the incompressibility residual).
    double divergence_residual() const;
    double parity_residual() const;
    double gradient_l2() const;
    double l2_norm() const;
};

/// Builds the full state from horizontal components: u^v is the hydrostatic
/// reconstruction, never an independent unknown.
VelocityState make_hydrostatic_state(const SpectralField& uh1, const SpectralField& uh2,
                                     double time = 0.0);

}  // namespace aprs
