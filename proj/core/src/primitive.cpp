#include "aprs/primitive.hpp"

#include <cmath>

#include "aprs/transform.hpp"

namespace aprs {
namespace {
constexpr double kPi = 3.14159265358979323846;

// Solves Lap_h p = div_h m for a z-constant pair m, zero horizontal mean.
SpectralField solve_pressure_poisson(const SpectralField& m1, const SpectralField& m2) {
    SpectralField p = divergence_h(m1, m2);
    const Lattice& lat = p.lattice();
    p.transform_modes([&](int k1, int k2, int, Complex c) {
        const double gx = kPi * lat.freq_h(k1), gy = kPi * lat.freq_h(k2);
        const double g_sq = gx * gx + gy * gy;
        if (g_sq == 0.0) return Complex(0.0);
        return -c / g_sq;
    });
    p.set_parity(Parity::even);
    return p;
}

// conv_i = u~.grad u~_i + ubar.grad_h u~_i + u~^h.grad_h ubar_i (dealiased).
// Assembled on the grid with one synthesis per operand, one analysis per
// component: algebraically the same sum of dealiased products.
std::array<SpectralField, 2> convection_terms(const VelocityState& ut, const SpectralField& b1,
                                              const SpectralField& b2) {
    const LatticePtr lat = ut.lattice_ptr();
    const PhysicalField a1 = transform_to_physical(ut.uh1);
    const PhysicalField a2 = transform_to_physical(ut.uh2);
    const PhysicalField a3 = transform_to_physical(ut.uv);
    const PhysicalField g1 = transform_to_physical(b1);
    const PhysicalField g2 = transform_to_physical(b2);

    std::array<SpectralField, 2> out{SpectralField(lat, Parity::even),
                                     SpectralField(lat, Parity::even)};
    const SpectralField* th[2] = {&ut.uh1, &ut.uh2};
    const SpectralField* bh[2] = {&b1, &b2};
    for (int i = 0; i < 2; ++i) {
        const PhysicalField dx = transform_to_physical(derivative(*th[i], Axis::x));
        const PhysicalField dy = transform_to_physical(derivative(*th[i], Axis::y));
        const PhysicalField dz = transform_to_physical(derivative(*th[i], Axis::z));
        const PhysicalField dbx = transform_to_physical(derivative(*bh[i], Axis::x));
        const PhysicalField dby = transform_to_physical(derivative(*bh[i], Axis::y));
        PhysicalField acc{lat, 1, std::vector<double>(dx.values.size())};
        for (std::size_t n = 0; n < acc.values.size(); ++n) {
            acc.values[n] = (a1.values[n] + g1.values[n]) * dx.values[n] +
                            (a2.values[n] + g2.values[n]) * dy.values[n] +
                            a3.values[n] * dz.values[n] +
                            a1.values[n] * dbx.values[n] + a2.values[n] * dby.values[n];
        }
        out[i] = transform_to_spectral(acc, lat, Parity::even);
        dealias_truncate(out[i]);
    }
    return out;
}

}  // namespace

namespace {
SpectralField pressure_from_convection(const std::array<SpectralField, 2>& conv) {
    // 2 Lap p = -int div_h conv dz = -2 div_h mean(conv).
    SpectralField m1 = vertical_mean(conv[0]);
    SpectralField m2 = vertical_mean(conv[1]);
    m1 *= -1.0;
    m2 *= -1.0;
    return solve_pressure_poisson(m1, m2);
}
}  // namespace

SpectralField pressure_primitive(const VelocityState& u_tilde, const SpectralField& ubar1,
                                 const SpectralField& ubar2) {
    return pressure_from_convection(convection_terms(u_tilde, ubar1, ubar2));
}

SpectralField pressure_q_form(const SpectralField& u1, const SpectralField& u2,
                              const SpectralField& v1, const SpectralField& v2) {
    // Q(u, v) = 1/2 int (-Lap)^{-1} div_h div_h (u (x) v) dz
    //         = -(-Lap_h)^{-1} div_h div_h mean(u (x) v).
    SpectralField t11 = vertical_mean(multiply_dealiased(u1, v1));
    SpectralField t12 = vertical_mean(multiply_dealiased(u1, v2));
    SpectralField t21 = vertical_mean(multiply_dealiased(u2, v1));
    SpectralField t22 = vertical_mean(multiply_dealiased(u2, v2));
    SpectralField r1 = derivative(t11, Axis::x);
    r1 += derivative(t21, Axis::y);
    SpectralField r2 = derivative(t12, Axis::x);
    r2 += derivative(t22, Axis::y);
    r1 *= -1.0;
    r2 *= -1.0;
    return solve_pressure_poisson(r1, r2);
}

PrimitiveRhs rhs_primitive_fluct(const VelocityState& u_tilde, const SpectralField& ubar1,
                                 const SpectralField& ubar2, const RunConfig& cfg) {
    const int k = cfg.effective_k_trunc();
    PrimitiveRhs out{SpectralField(u_tilde.lattice_ptr(), Parity::even),
                     SpectralField(u_tilde.lattice_ptr(), Parity::even),
                     SpectralField(u_tilde.lattice_ptr(), Parity::even),
                     SpectralField(u_tilde.lattice_ptr(), Parity::even),
                     SpectralField(u_tilde.lattice_ptr(), Parity::even)};
    if (!cfg.enable_convection) return out;

    const SpectralField bJ1 = friedrichs_truncate(ubar1, k);
    const SpectralField bJ2 = friedrichs_truncate(ubar2, k);
    auto conv = convection_terms(u_tilde, bJ1, bJ2);
    out.pressure = pressure_from_convection(conv);
    conv[0] = friedrichs_truncate(conv[0], k);
    conv[1] = friedrichs_truncate(conv[1], k);

    SpectralField* fl[2] = {&out.fluct1, &out.fluct2};
    SpectralField* mf[2] = {&out.mean_flux1, &out.mean_flux2};
    const SpectralField gp[2] = {derivative(out.pressure, Axis::x),
                                 derivative(out.pressure, Axis::y)};
    for (int i = 0; i < 2; ++i) {
        SpectralField total = conv[i];
        total += gp[i];
        SpectralField mean = vertical_mean(total);
        *mf[i] = mean;
        total -= mean;
        total *= -1.0;
        *fl[i] = std::move(total);
    }
    return out;
}

}  // namespace aprs
