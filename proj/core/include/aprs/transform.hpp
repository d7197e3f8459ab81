#pragma once

#include <vector>

#include "aprs/field.hpp"

namespace aprs {

/// Real values on the collocation grid, k3-fastest layout.
/// `over` is the oversampling factor relative to the lattice (1 or 2).
struct PhysicalField {
    LatticePtr lattice;
    int over = 1;
    std::vector<double> values;

    int n1() const { return lattice->n_h() * over; }
    int n2() const { return lattice->n_h() * over; }
    int n3() const { return lattice->n_v() * over; }
    double& at(int j1, int j2, int j3) {
        return values[(static_cast<std::size_t>(j1) * n2() + j2) * n3() + j3];
    }
    double at(int j1, int j2, int j3) const {
        return values[(static_cast<std::size_t>(j1) * n2() + j2) * n3() + j3];
    }
};

/// Inverse Fourier synthesis onto the collocation grid.
/// Rejects non-Hermitian input (the physical field would not be real).
PhysicalField transform_to_physical(const SpectralField& f, int oversample = 1);

/// Forward transform; drops Nyquist rows and inherits the declared parity.
SpectralField transform_to_spectral(const PhysicalField& g, LatticePtr lattice,
                                    Parity parity = Parity::none);

/// Pointwise product with 2/3-rule truncation of the result.
/// Exact on the retained band when both inputs are band-limited to it.
SpectralField multiply_dealiased(const SpectralField& a, const SpectralField& b);

/// Zeroes every mode outside the 2/3 band.
void dealias_truncate(SpectralField& f);
bool in_dealias_band(const SpectralField& f, double tol = 0.0);

}  // namespace aprs
