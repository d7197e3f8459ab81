#pragma once

#include "aprs/config.hpp"
#include "aprs/field.hpp"

namespace aprs {

/// Mean flow and fluctuation built from a descriptor.  The mean pair is
/// z-constant and exactly divergence-free (curl of a seeded streamfunction);
/// the fluctuation pair is even in z with zero vertical mean.
struct InitialFields {
    SpectralField mean1;
    SpectralField mean2;
    SpectralField fluct1;
    SpectralField fluct2;
};

InitialFields build_initial_fields(const InitialDataDescriptor& d, const LatticePtr& lattice);

/// Seeded band-limited scalar field with exact symmetries; the generator is
/// the documented corpus recipe (counter PRNG + Box-Muller, Hermitian and
/// parity symmetrization, optional mean removal, unit L2 normalization).
struct FieldRecipe {
    std::uint64_t stream = 0;
    int band_h = 3;
    int band_v = 3;
    Parity parity = Parity::none;
    bool zero_vertical_mean = false;
    bool zero_horizontal_mean = false;
    bool z_constant = false;
};

SpectralField seeded_field(const LatticePtr& lattice, std::uint64_t seed, const FieldRecipe& r);

}  // namespace aprs
