#include <cmath>

#include "aprs/coupled.hpp"
#include "aprs/initial_data.hpp"
#include "aprs/norms.hpp"
#include "aprs/ns_aniso.hpp"
#include "aprs/primitive.hpp"
#include "aprs/transform.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace aprs;

namespace {
constexpr double kPi = 3.14159265358979323846;

RunConfig base_config(int n, SystemKind sys = SystemKind::primitive) {
    RunConfig cfg;
    cfg.lattice = make_lattice(n, n);
    cfg.system = sys;
    cfg.nu_h = 1.0;
    cfg.gamma = 3.0;
    if (sys == SystemKind::ns_aniso) cfg.eps = 0.5;
    cfg.t_end = 0.05;
    cfg.output_every = 5;
    cfg.init.kind = InitKind::seeded;
    cfg.init.seed = 3;
    cfg.init.amplitude = 0.02;
    cfg.init.mean_amplitude = 0.05;
    return cfg;
}
}  // namespace

TEST_CASE("solve_2d_ns: Taylor-Green decays at the exact rate") {
    RunConfig cfg = base_config(16);
    cfg.nu_h = 1.0;
    cfg.dt = 1e-3;
    cfg.dt_auto = false;
    cfg.t_end = 0.05;
    cfg.init.kind = InitKind::taylor_green;
    cfg.init.mean_amplitude = 1.0;
    auto init = build_initial_fields(cfg.init, cfg.lattice);
    auto traj = solve_2d_ns(init.mean1, init.mean2, cfg);

    const double decay = std::exp(-2.0 * kPi * kPi * cfg.nu_h * cfg.t_end);
    auto g1 = transform_to_physical(traj.states.back()[0]);
    double worst = 0.0;
    for (int j1 = 0; j1 < 16; ++j1)
        for (int j2 = 0; j2 < 16; ++j2) {
            const double want = decay * std::sin(kPi * cfg.lattice->node_h(j1)) *
                                std::cos(kPi * cfg.lattice->node_h(j2));
            worst = std::max(worst, std::abs(g1.at(j1, j2, 0) - want));
        }
    CHECK(worst < 1e-10);
}

TEST_CASE("solve_2d_ns: zero data stays identically zero") {
    RunConfig cfg = base_config(8);
    cfg.dt = 1e-3;
    cfg.dt_auto = false;
    SpectralField z1(cfg.lattice, Parity::even), z2(cfg.lattice, Parity::even);
    auto traj = solve_2d_ns(z1, z2, cfg);
    CHECK(traj.states.back()[0].is_zero());
    CHECK(traj.states.back()[1].is_zero());
}

TEST_CASE("solve_2d_ns: energy equality holds to 1e-6 on seeded data") {
    for (int seed : {1, 2, 3}) {
        RunConfig cfg = base_config(16);
        cfg.nu_h = 0.5;
        cfg.t_end = 0.2;
        cfg.dt = 2.5e-4;
        cfg.dt_auto = false;
        cfg.init.seed = seed;
        cfg.init.mean_amplitude = 0.3;
        auto init = build_initial_fields(cfg.init, cfg.lattice);
        auto traj = solve_2d_ns(init.mean1, init.mean2, cfg);
        for (double r : traj.energy_residual) CHECK(r < 1e-6);
    }
}

TEST_CASE("pressure_primitive: zero state, z-independence, Poisson identity") {
    auto lat = make_lattice(12, 12);
    VelocityState zero(lat);
    SpectralField zb(lat, Parity::even);
    CHECK(pressure_primitive(zero, zb, zb).is_zero());

    auto t1 = testutil::random_field(lat, 61, {.parity = Parity::even, .zero_vertical_mean = true});
    auto t2 = testutil::random_field(lat, 62, {.parity = Parity::even, .zero_vertical_mean = true});
    auto ut = make_hydrostatic_state(t1, t2);
    auto b = build_initial_fields({InitKind::seeded, 63, 0.0, 0.4, 3}, lat);
    SpectralField p = pressure_primitive(ut, b.mean1, b.mean2);

    // dz p = 0: every k3 != 0 coefficient is exactly zero by construction.
    CHECK(is_z_constant(p, 0.0));
    // zero horizontal mean
    CHECK(std::abs(p.at(0, 0, 0)) == 0.0);

    // 2 Lap p + int div_h[conv] dz = 0, RHS assembled independently from the
    // flux (Q) form, which needs div u~ = 0.
    SpectralField q_sum = pressure_q_form(ut.uh1, ut.uh2, ut.uh1, ut.uh2);
    q_sum += pressure_q_form(b.mean1, b.mean2, ut.uh1, ut.uh2);
    q_sum += pressure_q_form(ut.uh1, ut.uh2, b.mean1, b.mean2);
    SpectralField diff = p;
    diff -= q_sum;
    CHECK(diff.l2_norm() < 1e-11 * std::max(1.0, p.l2_norm()));
}

TEST_CASE("rhs_primitive_fluct: zero and mean-only states give zero tendency") {
    RunConfig cfg = base_config(8);
    auto lat = cfg.lattice;
    VelocityState zero(lat);
    SpectralField zb(lat, Parity::even);
    auto r0 = rhs_primitive_fluct(zero, zb, zb, cfg);
    CHECK(r0.fluct1.is_zero());
    CHECK(r0.fluct2.is_zero());

    auto b = build_initial_fields({InitKind::seeded, 5, 0.0, 0.5, 2}, lat);
    auto rm = rhs_primitive_fluct(zero, b.mean1, b.mean2, cfg);
    CHECK(rm.fluct1.l2_norm() < 1e-15);
    CHECK(rm.fluct2.l2_norm() < 1e-15);
}

TEST_CASE("rhs_primitive_fluct: truncated self-advection is energy neutral") {
    RunConfig cfg = base_config(16);
    cfg.k_trunc = 5;
    cfg.init.amplitude = 0.5;
    cfg.init.mean_amplitude = 0.0;
    FlowState y = prepared_initial_state(cfg);
    VelocityState ut = make_hydrostatic_state(y[2], y[3]);

    // J_k(u~ . grad u~^h) against u~^h, assembled directly.
    double ip = 0.0;
    for (int i = 0; i < 2; ++i) {
        const SpectralField& ti = i == 0 ? ut.uh1 : ut.uh2;
        SpectralField conv = multiply_dealiased(ut.uh1, derivative(ti, Axis::x));
        conv += multiply_dealiased(ut.uh2, derivative(ti, Axis::y));
        conv += multiply_dealiased(ut.uv, derivative(ti, Axis::z));
        ip += friedrichs_truncate(conv, cfg.k_trunc).inner(ti);
    }
    const double scale = std::pow(ut.l2_norm(), 3);
    CHECK(std::abs(ip) < 1e-11 * std::max(1.0, scale));
}

TEST_CASE("rhs_ns_aniso: zero state, config guard, dissipation sign") {
    RunConfig cfg = base_config(8, SystemKind::ns_aniso);
    auto lat = cfg.lattice;
    SpectralField z(lat, Parity::even), zv(lat, Parity::odd);
    auto r = rhs_ns_aniso(z, z, zv, z, z, cfg);
    CHECK(r.fluct1.is_zero());
    CHECK(r.fluct_v.is_zero());

    RunConfig bad = cfg;
    bad.eps.reset();
    CHECK_THROWS_AS(rhs_ns_aniso(z, z, zv, z, z, bad), ConfigError);

    // Linear (convection-off) evolution strictly dissipates the pair norm.
    cfg.enable_convection = false;
    cfg.init.amplitude = 0.1;
    cfg.init.mean_amplitude = 0.0;
    FlowState y = prepared_initial_state(cfg);
    auto sys = make_coupled_system(cfg);
    const double e0 = y[2].l2_norm() * y[2].l2_norm() + y[3].l2_norm() * y[3].l2_norm() +
                      y[4].l2_norm() * y[4].l2_norm();
    ifrk4_step(*sys, y, 1e-3);
    const double e1 = y[2].l2_norm() * y[2].l2_norm() + y[3].l2_norm() * y[3].l2_norm() +
                      y[4].l2_norm() * y[4].l2_norm();
    CHECK(e1 < e0);
}

TEST_CASE("rhs_ns_aniso: eps=1, gamma=2 matches an independent standard-NS oracle") {
    RunConfig cfg = base_config(8, SystemKind::ns_aniso);
    cfg.eps = 1.0;
    cfg.gamma = 2.0000000001;  // gamma > 2; eps = 1 makes eps^(gamma-2) = 1 exactly
    cfg.nu_h = 1.0;
    cfg.init.amplitude = 0.3;
    cfg.init.mean_amplitude = 0.2;
    FlowState y = prepared_initial_state(cfg);
    auto got = total_ns_tendency(y[2], y[3], y[4], y[0], y[1], cfg);

    // Independent oracle: u = (ubar + u~^h, u^v); -P[u.grad u] + Lap u with a
    // per-mode dense projection.
    auto lat = cfg.lattice;
    SpectralField u[3] = {y[0], y[1], y[4]};
    u[0] += y[2];
    u[1] += y[3];
    SpectralField conv[3] = {SpectralField(lat), SpectralField(lat), SpectralField(lat)};
    for (int i = 0; i < 3; ++i) {
        conv[i] = multiply_dealiased(u[0], derivative(u[i], Axis::x));
        conv[i] += multiply_dealiased(u[1], derivative(u[i], Axis::y));
        conv[i] += multiply_dealiased(u[2], derivative(u[i], Axis::z));
    }
    double worst = 0.0;
    conv[0].for_each_mode([&](int k1, int k2, int k3, Complex) {
        double g[3] = {kPi * lat->freq_h(k1), kPi * lat->freq_h(k2), kPi * lat->freq_v(k3)};
        const double gsq = g[0] * g[0] + g[1] * g[1] + g[2] * g[2];
        Complex c[3] = {conv[0].at(k1, k2, k3), conv[1].at(k1, k2, k3), conv[2].at(k1, k2, k3)};
        Complex dot(0.0);
        if (gsq > 0) dot = (g[0] * c[0] + g[1] * c[1] + g[2] * c[2]) / gsq;
        for (int i = 0; i < 3; ++i) {
            const Complex proj = c[i] - g[i] * dot;
            const Complex lap = -(gsq)*u[i].at(k1, k2, k3);
            const Complex want = -proj + lap;
            worst = std::max(worst, std::abs(want - got[i].at(k1, k2, k3)));
        }
    });
    CHECK(worst < 1e-12);
}

TEST_CASE("coupled: fluctuation-free primitive run reproduces the 2D solver") {
    RunConfig cfg = base_config(12);
    cfg.init.amplitude = 0.0;
    cfg.init.mean_amplitude = 0.4;
    cfg.dt = 1e-3;
    cfg.dt_auto = false;
    cfg.t_end = 0.03;
    auto traj = solve_coupled(cfg);
    auto init = build_initial_fields(cfg.init, cfg.lattice);
    auto traj2d = solve_2d_ns(init.mean1, init.mean2, cfg);
    REQUIRE(traj.size() == traj2d.times.size());
    for (std::size_t i = 0; i < traj.size(); ++i) {
        SpectralField d = traj.mean[i][0];
        d -= traj2d.states[i][0];
        CHECK(d.max_abs_coeff() < 1e-12);
        CHECK(traj.fluct[i].uh1.is_zero());
    }
}

TEST_CASE("coupled: invariants hold along a generic primitive run") {
    RunConfig cfg = base_config(16);
    cfg.t_end = 0.05;
    cfg.nu_h = 0.5;
    auto traj = solve_coupled(cfg);
    CHECK(!traj.blew_up);
    for (const auto& d : traj.diagnostics) {
        CHECK(d.div_residual < 1e-10);
        CHECK(d.parity_residual < 1e-10);
    }
    // Mean/fluctuation orthogonality: vertical mean of u~^h stays at zero.
    for (const auto& v : traj.fluct) {
        CHECK(vertical_mean_l2(v.uh1) < 1e-10);
        CHECK(vertical_mean_l2(v.uh2) < 1e-10);
    }
}

TEST_CASE("coupled: NS run keeps div_eps at solver precision") {
    RunConfig cfg = base_config(12, SystemKind::ns_aniso);
    cfg.t_end = 0.03;
    auto traj = solve_coupled(cfg);
    CHECK(!traj.blew_up);
    for (const auto& d : traj.diagnostics) CHECK(d.div_residual < 1e-10);
}

TEST_CASE("coupled: inviscid Galerkin dynamics conserves energy") {
    for (SystemKind sys : {SystemKind::primitive, SystemKind::ns_aniso}) {
        RunConfig cfg = base_config(12, sys);
        cfg.nu_h = 0.0;
        cfg.gamma = 60.0;  // eps^(gamma-2) ~ 2.6e-18: vertical viscosity off
        cfg.init.amplitude = 0.2;
        cfg.init.mean_amplitude = 0.2;
        FlowState y = prepared_initial_state(cfg);
        auto system = make_coupled_system(cfg);
        auto energy = [&] {
            double e = 0.0;
            for (const auto& f : y) e += f.l2_norm() * f.l2_norm();
            return e;
        };
        const double e0 = energy();
        for (int s = 0; s < 20; ++s) ifrk4_step(*system, y, 5e-4);
        CHECK(std::abs(energy() - e0) / e0 < 1e-9);
    }
}

TEST_CASE("coupled: blow-up is reported, not thrown") {
    RunConfig cfg = base_config(8);
    cfg.nu_h = 0.0;  // no damping, so the oversized step must explode
    cfg.dt = 10.0;
    cfg.dt_auto = false;
    cfg.t_end = 100.0;
    cfg.output_every = 1;
    cfg.init.amplitude = 2.0;
    cfg.init.mean_amplitude = 2.0;
    auto traj = solve_coupled(cfg);
    CHECK(traj.blew_up);
    CHECK(traj.blowup_step >= 1);
    CHECK(traj.size() >= 1);  // the initial record survives
}

TEST_CASE("lambda_weighted_field: identity at lambda=0, monotone weights") {
    RunConfig cfg = base_config(12);
    cfg.t_end = 0.03;
    auto traj = solve_coupled(cfg);
    auto w0 = lambda_weighted_field(traj, 0.0);
    for (std::size_t i = 0; i < traj.size(); ++i)
        CHECK(w0.reports[i].b0_half == doctest::Approx(traj.norm_series.reports[i].b0_half));

    auto w = lambda_weighted_field(traj, 5.0);
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const double ratio_now = w.reports[i].b0_half;
        const double raw = traj.norm_series.reports[i].b0_half;
        CHECK(ratio_now <= raw * (1.0 + 1e-12));
    }
    // weight(t) is non-increasing
    for (std::size_t i = 1; i < traj.size(); ++i) {
        const double wi = std::exp(-5.0 * traj.dissipation.integral_at(traj.times[i]));
        const double wp = std::exp(-5.0 * traj.dissipation.integral_at(traj.times[i - 1]));
        CHECK(wi <= wp + 1e-15);
    }

    // ubar == 0 run: weight is identically one.
    RunConfig cfg0 = base_config(12);
    cfg0.t_end = 0.02;
    cfg0.init.mean_amplitude = 0.0;
    auto traj0 = solve_coupled(cfg0);
    auto w1 = lambda_weighted_field(traj0, 7.0);
    for (std::size_t i = 0; i < traj0.size(); ++i)
        CHECK(w1.reports[i].b0_half == doctest::Approx(traj0.norm_series.reports[i].b0_half));
}

TEST_CASE("default_time_step: CFL rule and exact step count") {
    RunConfig cfg = base_config(16);
    cfg.nu_h = 1.0;
    cfg.t_end = 1.0;
    const double dt = default_time_step(cfg, 0.0);
    const double diffusive = 0.25 / (cfg.nu_h * kPi * kPi * 64.0);
    CHECK(dt <= diffusive * (1 + 1e-12));
    CHECK(std::abs(cfg.t_end / dt - std::round(cfg.t_end / dt)) < 1e-9);

    const double dt_fast = default_time_step(cfg, 100.0);
    CHECK(dt_fast <= 0.25 * (2.0 / 16.0) / 100.0 * (1 + 1e-12));
}
