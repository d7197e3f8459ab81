#include "aprs/initial_data.hpp"

#include <cmath>

#include "aprs/norms.hpp"
#include "aprs/operators.hpp"
#include "aprs/prng.hpp"

namespace aprs {

SpectralField seeded_field(const LatticePtr& lattice, std::uint64_t seed, const FieldRecipe& r) {
    CounterRng rng(seed, r.stream);
    SpectralField f(lattice, r.parity);
    std::uint64_t counter = 0;
    f.transform_modes([&](int k1, int k2, int k3, Complex) {
        ++counter;
        if (std::abs(k1) > r.band_h || std::abs(k2) > r.band_h || std::abs(k3) > r.band_v)
            return Complex(0.0);
        if (r.z_constant && k3 != 0) return Complex(0.0);
        return Complex(rng.gaussian(2 * counter), rng.gaussian(2 * counter + 1));
    });
    f.hermitian_symmetrize();
    if (r.parity != Parity::none) f.parity_symmetrize();
    if (r.zero_vertical_mean) zero_vertical_mean(f);
    if (r.zero_horizontal_mean) {
        f.transform_modes(
            [&](int k1, int k2, int, Complex c) { return (k1 == 0 && k2 == 0) ? Complex(0.0) : c; });
    }
    const double n = f.l2_norm();
    if (n > 0) f *= 1.0 / n;
    return f;
}

namespace {

// Taylor-Green pair at the fundamental horizontal frequency.
void taylor_green(SpectralField& u1, SpectralField& u2, double amplitude) {
    for (int s1 : {-1, 1}) {
        for (int s2 : {-1, 1}) {
            // sin(a x) cos(a y) and -cos(a x) sin(a y)
            u1.set(s1, s2, 0, Complex(0.0, -0.25 * s1) * amplitude);
            u2.set(s1, s2, 0, Complex(0.0, 0.25 * s2) * amplitude);
        }
    }
}

}  // namespace

InitialFields build_initial_fields(const InitialDataDescriptor& d, const LatticePtr& lattice) {
    InitialFields out{SpectralField(lattice, Parity::even), SpectralField(lattice, Parity::even),
                      SpectralField(lattice, Parity::even), SpectralField(lattice, Parity::even)};
    if (d.kind == InitKind::zero) return out;

    if (d.kind == InitKind::taylor_green) {
        taylor_green(out.mean1, out.mean2, d.mean_amplitude);
        return out;
    }

    const int band = d.band;
    // Mean flow: perp-gradient of a seeded z-constant streamfunction, so
    // div_h vanishes identically.
    FieldRecipe psi_recipe{/*stream=*/10, band, 0, Parity::even, false, true, true};
    SpectralField psi = seeded_field(lattice, d.seed, psi_recipe);
    out.mean1 = derivative(psi, Axis::y);
    out.mean1 *= -1.0;
    out.mean2 = derivative(psi, Axis::x);
    if (d.mean_amplitude > 0) {
        const double n =
            std::sqrt(std::pow(out.mean1.l2_norm(), 2) + std::pow(out.mean2.l2_norm(), 2));
        if (n > 0) {
            out.mean1 *= d.mean_amplitude / n;
            out.mean2 *= d.mean_amplitude / n;
        }
    } else {
        out.mean1.set_zero();
        out.mean2.set_zero();
    }

    FieldRecipe f1{/*stream=*/20, band, band, Parity::even, true, false, false};
    FieldRecipe f2{/*stream=*/21, band, band, Parity::even, true, false, false};
    out.fluct1 = seeded_field(lattice, d.seed, f1);
    out.fluct2 = seeded_field(lattice, d.seed, f2);
    if (d.amplitude > 0) {
        const double b = besov_norm({&out.fluct1, &out.fluct2}).b0_half;
        if (b > 0) {
            out.fluct1 *= d.amplitude / b;
            out.fluct2 *= d.amplitude / b;
        }
    } else {
        out.fluct1.set_zero();
        out.fluct2.set_zero();
    }
    return out;
}

}  // namespace aprs
