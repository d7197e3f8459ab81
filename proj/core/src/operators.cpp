#include "aprs/operators.hpp"

#include <cmath>

#include "aprs/errors.hpp"

namespace aprs {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

SpectralField derivative(const SpectralField& f, Axis axis) {
    SpectralField d = f;
    const Lattice& lat = f.lattice();
    d.transform_modes([&](int k1, int k2, int k3, Complex c) {
        double kk = 0.0;
        switch (axis) {
            case Axis::x: kk = lat.freq_h(k1); break;
            case Axis::y: kk = lat.freq_h(k2); break;
            case Axis::z: kk = lat.freq_v(k3); break;
        }
        return Complex(0.0, kPi * kk) * c;
    });
    if (axis == Axis::z) d.set_parity(flip(f.parity()));
    return d;
}

SpectralField laplacian_h(const SpectralField& f) {
    SpectralField d = f;
    const Lattice& lat = f.lattice();
    d.transform_modes([&](int k1, int k2, int k3, Complex c) {
        (void)k3;
        const double kx = kPi * lat.freq_h(k1), ky = kPi * lat.freq_h(k2);
        return -(kx * kx + ky * ky) * c;
    });
    return d;
}

SpectralField divergence_h(const SpectralField& u1, const SpectralField& u2) {
    SpectralField d = derivative(u1, Axis::x);
    d += derivative(u2, Axis::y);
    return d;
}

SpectralField divergence_eps(const SpectralField& u1, const SpectralField& u2,
                             const SpectralField& u3, double eps) {
    if (!(eps > 0)) throw DomainError("divergence_eps: eps must be positive");
    require_same_lattice(u1, u2);
    require_same_lattice(u1, u3);
    SpectralField d = divergence_h(u1, u2);
    SpectralField dz = derivative(u3, Axis::z);
    dz *= 1.0 / eps;
    d += dz;
    return d;
}

std::array<SpectralField, 3> leray_project_eps(const SpectralField& u1, const SpectralField& u2,
                                               const SpectralField& u3, double eps) {
    if (!(eps > 0)) throw DomainError("leray_project_eps: eps must be positive");
    require_same_lattice(u1, u2);
    require_same_lattice(u1, u3);
    const Lattice& lat = u1.lattice();
    std::array<SpectralField, 3> out{u1, u2, u3};
    auto& v1 = out[0].coeffs();
    auto& v2 = out[1].coeffs();
    auto& v3 = out[2].coeffs();
    const int nh = lat.n_h(), nv = lat.n_v();
    for (int i1 = 0; i1 < nh; ++i1) {
        const int k1 = Lattice::unwrap(i1, nh);
        for (int i2 = 0; i2 < nh; ++i2) {
            const int k2 = Lattice::unwrap(i2, nh);
            for (int i3 = 0; i3 < nv; ++i3) {
                const int k3 = Lattice::unwrap(i3, nv);
                // d_eps = i g with real g; P = Id - g g^T / |g|^2 per mode.
                const double g1 = kPi * lat.freq_h(k1);
                const double g2 = kPi * lat.freq_h(k2);
                const double g3 = kPi * lat.freq_v(k3) / eps;
                const double g_sq = g1 * g1 + g2 * g2 + g3 * g3;
                if (g_sq == 0.0) continue;  // mean mode untouched
                const std::size_t idx = (static_cast<std::size_t>(i1) * nh + i2) * nv + i3;
                const Complex dot = (g1 * v1[idx] + g2 * v2[idx] + g3 * v3[idx]) / g_sq;
                v1[idx] -= g1 * dot;
                v2[idx] -= g2 * dot;
                v3[idx] -= g3 * dot;
            }
        }
    }
    return out;
}

void leray_project_h(SpectralField& u1, SpectralField& u2) {
    require_same_lattice(u1, u2);
    const Lattice& lat = u1.lattice();
    auto& v1 = u1.coeffs();
    auto& v2 = u2.coeffs();
    const int nh = lat.n_h(), nv = lat.n_v();
    for (int i1 = 0; i1 < nh; ++i1) {
        const int k1 = Lattice::unwrap(i1, nh);
        for (int i2 = 0; i2 < nh; ++i2) {
            const int k2 = Lattice::unwrap(i2, nh);
            const double g1 = lat.freq_h(k1), g2 = lat.freq_h(k2);
            const double g_sq = g1 * g1 + g2 * g2;
            if (g_sq == 0.0) continue;
            for (int i3 = 0; i3 < nv; ++i3) {
                const std::size_t idx = (static_cast<std::size_t>(i1) * nh + i2) * nv + i3;
                const Complex dot = (g1 * v1[idx] + g2 * v2[idx]) / g_sq;
                v1[idx] -= g1 * dot;
                v2[idx] -= g2 * dot;
            }
        }
    }
}

SpectralField friedrichs_truncate(const SpectralField& f, int k) {
    if (k < 1) throw DomainError("friedrichs_truncate: k must be >= 1");
    SpectralField g = f;
    const Lattice& lat = f.lattice();
    const double lo = 1.0 / k, hi = static_cast<double>(k);
    g.transform_modes([&](int k1, int k2, int k3, Complex c) {
        if (std::abs(k3) > k) return Complex(0.0);
        // The low horizontal cut excises a neighborhood of frequency zero in
        // the continuum spectrum; on the periodic box the mean column is the
        // only lattice point there and is carried through to the solver.
        if (k1 == 0 && k2 == 0) return c;
        const double kk1 = lat.freq_h(k1), kk2 = lat.freq_h(k2);
        const double xi = std::sqrt(kk1 * kk1 + kk2 * kk2);
        if (xi < lo || xi > hi) return Complex(0.0);
        return c;
    });
    return g;
}

SpectralField vertical_mean(const SpectralField& f) {
    SpectralField m = f;
    m.transform_modes([&](int, int, int k3, Complex c) {
        return k3 == 0 ? c : Complex(0.0);
    });
    if (f.parity() == Parity::odd) m.set_zero();  // odd fields are mean-free
    m.set_parity(Parity::even);
    return m;
}

SpectralField vertical_fluctuation(const SpectralField& f) {
    SpectralField g = f;
    zero_vertical_mean(g);
    return g;
}

void zero_vertical_mean(SpectralField& f) {
    f.transform_modes([&](int, int, int k3, Complex c) {
        return k3 == 0 ? Complex(0.0) : c;
    });
}

double vertical_mean_l2(const SpectralField& f) {
    double s = 0.0;
    f.for_each_mode([&](int, int, int k3, Complex c) {
        if (k3 == 0) s += std::norm(c);
    });
    return std::sqrt(s);
}

bool is_z_constant(const SpectralField& f, double tol) {
    bool ok = true;
    f.for_each_mode([&](int, int, int k3, Complex c) {
        if (k3 != 0 && std::abs(c) > tol) ok = false;
    });
    return ok;
}

SpectralField reconstruct_vertical(const SpectralField& u1, const SpectralField& u2,
                                   double rel_tol) {
    SpectralField div = divergence_h(u1, u2);
    const double scale = std::max(div.l2_norm(), 1e-300);
    const double mean_resid = vertical_mean_l2(div) / scale;
    if (mean_resid > rel_tol)
        throw ConsistencyError(
            "reconstruct_vertical: div_h u^h has a nonzero vertical mean; "
            "the vertical velocity would not be periodic");
    SpectralField uv = div;
    const Lattice& lat = div.lattice();
    uv.transform_modes([&](int, int, int k3, Complex c) {
        if (k3 == 0) return Complex(0.0);
        // dz u^v = -div_h u^h  =>  u^v = -div/(i pi k3), odd row choice.
        return -c / Complex(0.0, kPi * lat.freq_v(k3));
    });
    uv.set_parity(flip(div.parity()));
    return uv;
}

}  // namespace aprs
