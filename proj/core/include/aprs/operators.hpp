#pragma once

#include <array>

#include "aprs/field.hpp"

namespace aprs {

enum class Axis { x, y, z };

/// Spectral derivative: multiplication by i pi kk_axis.
/// The z-derivative flips the declared vertical parity.
SpectralField derivative(const SpectralField& f, Axis axis);

SpectralField laplacian_h(const SpectralField& f);

/// div_h(u) = d1 u1 + d2 u2 for a horizontal pair.
SpectralField divergence_h(const SpectralField& u1, const SpectralField& u2);

/// div_eps(U) = div_h(U^h) + (1/eps) dz U^v.
SpectralField divergence_eps(const SpectralField& u1, const SpectralField& u2,
                             const SpectralField& u3, double eps);

/// Anisotropic Leray projection onto {div_eps = 0}; orthogonal in L2,
/// idempotent, identity on div_eps-free input.  The k = 0 mode is untouched.
std::array<SpectralField, 3> leray_project_eps(const SpectralField& u1, const SpectralField& u2,
                                               const SpectralField& u3, double eps);

/// 2D Leray projection of a horizontal pair (acts on every vertical row).
void leray_project_h(SpectralField& u1, SpectralField& u2);

/// Spectral truncation J_k: keeps |k3| <= k vertically and
/// 1/k <= |kk_h| <= k horizontally (Euclidean reduced frequency).
SpectralField friedrichs_truncate(const SpectralField& f, int k);

/// Vertical mean: zeroes every k3 != 0 row (result is z-independent).
SpectralField vertical_mean(const SpectralField& f);

/// f minus its vertical mean.
SpectralField vertical_fluctuation(const SpectralField& f);

void zero_vertical_mean(SpectralField& f);
double vertical_mean_l2(const SpectralField& f);

bool is_z_constant(const SpectralField& f, double tol = 0.0);

/// Odd periodic primitive of -div_h u^h in z (the hydrostatic vertical
/// velocity).  Requires the vertical mean of div_h u^h to vanish.
SpectralField reconstruct_vertical(const SpectralField& u1, const SpectralField& u2,
                                   double rel_tol = 1e-10);

}  // namespace aprs
