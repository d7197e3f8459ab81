#include <cmath>

#include "aprs/convergence.hpp"
#include "aprs/transform.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace aprs;

namespace {
RunConfig sweep_base(int n) {
    RunConfig cfg;
    cfg.lattice = make_lattice(n, n);
    cfg.system = SystemKind::primitive;
    cfg.nu_h = 1.0;
    cfg.gamma = 3.0;
    cfg.t_end = 0.04;
    cfg.output_every = 4;
    cfg.init.kind = InitKind::seeded;
    cfg.init.seed = 9;
    cfg.init.amplitude = 0.05;
    cfg.init.mean_amplitude = 0.05;
    cfg.init.band = 3;
    return cfg;
}
}  // namespace

TEST_CASE("weak_norm: zero, single mode closed form, weight ordering") {
    auto lat = make_lattice(8, 8);
    std::vector<double> times{0.0, 0.5, 1.0};
    std::vector<std::array<SpectralField, 3>> zero(
        3, {SpectralField(lat), SpectralField(lat), SpectralField(lat)});
    CHECK(weak_norm(times, zero, 3.0) == 0.0);

    // constant-in-time single mode: value = sqrt(T) (1+|pi kk|^2)^{-s/2} |c|
    // with |c| the l2 coefficient magnitude of the Hermitian pair.
    std::vector<std::array<SpectralField, 3>> series = zero;
    for (auto& arr : series) {
        arr[0].set(1, 0, 2, Complex(0.3, 0.0));
        arr[0].set(-1, 0, -2, Complex(0.3, 0.0));
    }
    const double kk_sq = 3.14159265358979 * 3.14159265358979 * (1.0 + 4.0);
    const double coeff_l2 = std::sqrt(2.0) * 0.3;
    for (double s : {1.0, 3.0}) {
        const double want = std::sqrt(1.0) * std::pow(1.0 + kk_sq, -s / 2.0) * coeff_l2;
        CHECK(weak_norm(times, series, s) == doctest::Approx(want).epsilon(1e-12));
    }
    CHECK(weak_norm(times, series, 3.0) <= weak_norm(times, series, 1.0));

    std::vector<double> l2_sq{0.0};
    (void)l2_sq;
    CHECK_THROWS_AS(weak_norm(times, series, 0.0), DomainError);
}

TEST_CASE("pairing: spectral route equals physical-space quadrature") {
    auto lat = make_lattice(8, 8);
    auto dict = test_dictionary(lat, 1.0);
    CHECK(dict.size() == 16);
    auto f = testutil::random_field(lat, 33);
    for (const auto& psi : {dict[0], dict[5], dict[10]}) {
        const double spectral = f.inner(psi.space);
        auto gf = transform_to_physical(f);
        auto gp = transform_to_physical(psi.space);
        double phys = 0.0;
        for (std::size_t i = 0; i < gf.values.size(); ++i) phys += gf.values[i] * gp.values[i];
        phys /= static_cast<double>(gf.values.size());
        CHECK(std::abs(spectral - phys) < 1e-10);
    }
    // bumps vanish at the endpoints (compact support in time)
    for (const auto& psi : dict) {
        CHECK(psi.bump(0.0) == 0.0);
        CHECK(psi.bump(1.0) == 0.0);
        CHECK(psi.bump(0.5 * (psi.t0 + psi.t1)) > 0.9);
    }
}

TEST_CASE("run_sweep: member-wise chain, decreasing distances, uniform tendencies") {
    SweepPlan plan;
    plan.base = sweep_base(12);
    plan.eps_values = {0.5, 0.25, 0.125};
    plan.weak_order = 3.0;
    plan.eta = 0.25;
    auto report = run_sweep(plan);
    REQUIRE(report.members.size() == 3);
    CHECK(!report.any_blowup);
    for (const auto& m : report.members) {
        CHECK(m.poincare_chain_ok);
        CHECK(m.l2_eps_uv <= m.eps_grad_bound * (1 + 1e-12));
        CHECK(m.d_weak >= 0.0);
    }
    for (std::size_t i = 1; i < report.members.size(); ++i) {
        CHECK(report.members[i].d_weak < report.members[i - 1].d_weak);
        CHECK(report.members[i].l2loc_h_eta < report.members[i - 1].l2loc_h_eta);
    }
    auto tb = time_derivative_bound_check(report);
    CHECK(tb.bounded);
    CHECK(tb.max_over_min < 10.0);

    const std::string csv = report.to_csv();
    CHECK(csv.find("eps,d_weak") == 0);
    CHECK(report.plot_data().find("log2_eps") == 0);
}

TEST_CASE("run_sweep: eps = 1 sanity member is finite bookkeeping") {
    SweepPlan plan;
    plan.base = sweep_base(8);
    plan.base.init.band = 2;
    plan.base.t_end = 0.02;
    plan.eps_values = {1.0};
    auto report = run_sweep(plan);
    REQUIRE(report.members.size() == 1);
    CHECK(!report.members[0].blew_up);
    CHECK(std::isfinite(report.members[0].d_weak));
    CHECK(std::isfinite(report.members[0].l2loc_h_eta));
}
