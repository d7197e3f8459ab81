#pragma once

#include <cmath>

#include "aprs/field.hpp"
#include "aprs/operators.hpp"
#include "aprs/prng.hpp"
#include "aprs/transform.hpp"

namespace aprs::testutil {

struct RandomFieldOptions {
    int band_h = -1;          // default: dealias band
    int band_v = -1;
    Parity parity = Parity::none;
    bool zero_vertical_mean = false;
    bool zero_horizontal_mean = false;
    bool unit_l2 = true;
};

/// Seeded band-limited random field with exact declared symmetries.
inline SpectralField random_field(const LatticePtr& lat, std::uint64_t seed,
                                  RandomFieldOptions opt = {}) {
    CounterRng rng(seed);
    SpectralField f(lat, opt.parity);
    const int bh = opt.band_h >= 0 ? opt.band_h : lat->dealias_k_h();
    const int bv = opt.band_v >= 0 ? opt.band_v : lat->dealias_k_v();
    std::uint64_t counter = 0;
    f.transform_modes([&](int k1, int k2, int k3, Complex) {
        ++counter;
        if (std::abs(k1) > bh || std::abs(k2) > bh || std::abs(k3) > bv) return Complex(0.0);
        return Complex(rng.gaussian(2 * counter), rng.gaussian(2 * counter + 1));
    });
    f.hermitian_symmetrize();
    if (opt.parity != Parity::none) f.parity_symmetrize();
    if (opt.zero_vertical_mean) zero_vertical_mean(f);
    if (opt.zero_horizontal_mean) {
        f.transform_modes([&](int k1, int k2, int, Complex c) {
            return (k1 == 0 && k2 == 0) ? Complex(0.0) : c;
        });
    }
    if (opt.unit_l2) {
        const double n = f.l2_norm();
        if (n > 0) f *= 1.0 / n;
    }
    return f;
}

/// Field containing the single real mode cos/sin combination at k, built by
/// setting c(k) = value and mirroring Hermitian.
inline SpectralField single_mode(const LatticePtr& lat, int k1, int k2, int k3, Complex value,
                                 Parity parity = Parity::none) {
    SpectralField f(lat, parity);
    f.set(k1, k2, k3, value);
    f.set(-k1, -k2, -k3, std::conj(value));
    return f;
}

inline double rel_err(double got, double want) {
    return std::abs(got - want) / std::max(1.0, std::abs(want));
}

}  // namespace aprs::testutil
