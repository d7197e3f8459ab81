#include "aprs/ns_aniso.hpp"

#include "aprs/solver2d.hpp"
#include "aprs/transform.hpp"

namespace aprs {

NsAnisoRhs rhs_ns_aniso(const SpectralField& t1, const SpectralField& t2, const SpectralField& v,
                        const SpectralField& ubar1, const SpectralField& ubar2,
                        const RunConfig& cfg) {
    if (!cfg.eps) throw ConfigError("rhs_ns_aniso: eps missing from the configuration");
    const double eps = *cfg.eps;
    const LatticePtr lat = t1.lattice_ptr();
    NsAnisoRhs out{SpectralField(lat, Parity::even), SpectralField(lat, Parity::even),
                   SpectralField(lat, Parity::odd), SpectralField(lat, Parity::even),
                   SpectralField(lat, Parity::even)};
    if (!cfg.enable_convection) return out;

    // Advecting velocity u = ubar + u~ with u~^v = v / eps; grid-assembled
    // sum of dealiased products, one analysis per component.
    SpectralField a1s = t1;
    a1s += ubar1;
    SpectralField a2s = t2;
    a2s += ubar2;
    SpectralField a3s = v;
    a3s *= 1.0 / eps;
    const PhysicalField a1 = transform_to_physical(a1s);
    const PhysicalField a2 = transform_to_physical(a2s);
    const PhysicalField a3 = transform_to_physical(a3s);
    const PhysicalField gt1 = transform_to_physical(t1);
    const PhysicalField gt2 = transform_to_physical(t2);

    const SpectralField* U[3] = {&t1, &t2, &v};
    const SpectralField* bh[2] = {&ubar1, &ubar2};
    std::array<SpectralField, 3> conv{SpectralField(lat), SpectralField(lat), SpectralField(lat)};
    for (int i = 0; i < 3; ++i) {
        const PhysicalField dx = transform_to_physical(derivative(*U[i], Axis::x));
        const PhysicalField dy = transform_to_physical(derivative(*U[i], Axis::y));
        const PhysicalField dz = transform_to_physical(derivative(*U[i], Axis::z));
        PhysicalField acc{lat, 1, std::vector<double>(dx.values.size())};
        for (std::size_t n = 0; n < acc.values.size(); ++n)
            acc.values[n] = a1.values[n] * dx.values[n] + a2.values[n] * dy.values[n] +
                            a3.values[n] * dz.values[n];
        if (i < 2) {
            const PhysicalField dbx = transform_to_physical(derivative(*bh[i], Axis::x));
            const PhysicalField dby = transform_to_physical(derivative(*bh[i], Axis::y));
            for (std::size_t n = 0; n < acc.values.size(); ++n)
                acc.values[n] += gt1.values[n] * dbx.values[n] + gt2.values[n] * dby.values[n];
        }
        conv[i] = transform_to_spectral(acc, lat,
                                        i < 2 ? Parity::even : Parity::odd);
        dealias_truncate(conv[i]);
    }

    auto proj = leray_project_eps(conv[0], conv[1], conv[2], eps);
    for (int i = 0; i < 2; ++i) {
        SpectralField mean = vertical_mean(proj[i]);
        (i == 0 ? out.mean_flux1 : out.mean_flux2) = mean;
        proj[i] -= mean;
        proj[i] *= -1.0;
    }
    proj[2] *= -1.0;
    zero_vertical_mean(proj[2]);  // odd row, exact zero already
    out.fluct1 = std::move(proj[0]);
    out.fluct2 = std::move(proj[1]);
    out.fluct_v = std::move(proj[2]);
    out.fluct1.set_parity(Parity::even);
    out.fluct2.set_parity(Parity::even);
    out.fluct_v.set_parity(Parity::odd);
    return out;
}

std::array<SpectralField, 3> total_ns_tendency(const SpectralField& t1, const SpectralField& t2,
                                               const SpectralField& v, const SpectralField& ubar1,
                                               const SpectralField& ubar2, const RunConfig& cfg) {
    const double eps = cfg.eps.value();
    const double nu_z = std::pow(eps, cfg.gamma - 2.0);
    NsAnisoRhs r = rhs_ns_aniso(t1, t2, v, ubar1, ubar2, cfg);

    // Mean-flow tendency: -P_h[ubar.grad ubar + mean flux] + nu_h Lap_h ubar.
    SpectralField m1(t1.lattice_ptr(), Parity::even), m2(t1.lattice_ptr(), Parity::even);
    if (cfg.enable_convection) {
        m1 = multiply_dealiased(ubar1, derivative(ubar1, Axis::x));
        m1 += multiply_dealiased(ubar2, derivative(ubar1, Axis::y));
        m1 += r.mean_flux1;
        m2 = multiply_dealiased(ubar1, derivative(ubar2, Axis::x));
        m2 += multiply_dealiased(ubar2, derivative(ubar2, Axis::y));
        m2 += r.mean_flux2;
        m1 *= -1.0;
        m2 *= -1.0;
        leray_project_h(m1, m2);
    }

    std::array<SpectralField, 3> out{r.fluct1, r.fluct2, r.fluct_v};
    out[0] += m1;
    out[1] += m2;
    // total u^h tendency needs the mean diffusion as well
    for (int i = 0; i < 2; ++i) {
        SpectralField diff = laplacian_h(i == 0 ? ubar1 : ubar2);
        diff *= cfg.nu_h;
        out[i] += diff;
        SpectralField difft = laplacian_h(i == 0 ? t1 : t2);
        difft *= cfg.nu_h;
        out[i] += difft;
        SpectralField dzz = derivative(derivative(i == 0 ? t1 : t2, Axis::z), Axis::z);
        dzz *= nu_z;
        out[i] += dzz;
    }
    SpectralField diffv = laplacian_h(v);
    diffv *= cfg.nu_h;
    out[2] += diffv;
    SpectralField dzzv = derivative(derivative(v, Axis::z), Axis::z);
    dzzv *= nu_z;
    out[2] += dzzv;
    return out;
}

}  // namespace aprs
