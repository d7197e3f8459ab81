#include <cmath>
#include <cstdlib>

#include "aprs/coupled.hpp"
#include "aprs/estimates/apriori.hpp"
#include "aprs/estimates/convection.hpp"
#include "aprs/estimates/osgood.hpp"
#include "aprs/estimates/smallness.hpp"
#include "aprs/estimates/stability.hpp"
#include "aprs/estimates/verify_suite.hpp"
#include "aprs/initial_data.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace aprs;

namespace {
RunConfig small_run_config(int n, SystemKind sys = SystemKind::primitive) {
    RunConfig cfg;
    cfg.lattice = make_lattice(n, n);
    cfg.system = sys;
    cfg.nu_h = 1.0;
    cfg.gamma = 3.0;
    if (sys == SystemKind::ns_aniso) cfg.eps = 0.5;
    cfg.t_end = 0.05;
    cfg.output_every = 1;
    cfg.init.kind = InitKind::seeded;
    cfg.init.seed = 11;
    cfg.init.amplitude = 0.02;
    cfg.init.mean_amplitude = 0.05;
    cfg.init.band = 3;
    return cfg;
}
}  // namespace

TEST_CASE("osgood: zero data, Gronwall closed form, domain guards") {
    std::vector<double> times{0.0, 0.5, 1.0, 2.0};
    std::vector<double> gamma{1.0, 1.0, 1.0, 1.0};

    auto zero = osgood_integrate(0.0, times, gamma, OsgoodModulus::loglog);
    for (double v : zero.values) CHECK(v == 0.0);

    const double a = 0.01;
    auto gr = osgood_integrate(a, times, gamma, OsgoodModulus::gronwall);
    for (std::size_t i = 0; i < times.size(); ++i)
        CHECK(gr.values[i] == doctest::Approx(a * std::exp(times[i])).epsilon(1e-8));
    CHECK(gr.values[0] == doctest::Approx(a).epsilon(1e-12));

    CHECK_THROWS_AS(osgood_integrate(-1.0, times, gamma, OsgoodModulus::log), DomainError);
    CHECK_THROWS_AS(osgood_integrate(1.5, times, gamma, OsgoodModulus::log), DomainError);
}

TEST_CASE("osgood: log modulus matches the analytic bound") {
    // mu(r) = r(1 - ln r), gamma = 1, a = e^{-e}:
    // M(x) = ln(1 - ln x), bound(t) = exp(1 - (1 - ln a) e^{-t}).
    const double a = std::exp(-std::exp(1.0));
    std::vector<double> times, gamma;
    for (int i = 0; i <= 30; ++i) {
        times.push_back(3.0 * i / 30.0);
        gamma.push_back(1.0);
    }
    auto bound = osgood_integrate(a, times, gamma, OsgoodModulus::log);
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double want = std::exp(1.0 - (1.0 - std::log(a)) * std::exp(-times[i]));
        CHECK(std::abs(bound.values[i] - want) < 1e-8);
    }
}

TEST_CASE("osgood: monotone in a and in the drift") {
    std::vector<double> times{0.0, 1.0, 2.0};
    std::vector<double> g1{1.0, 1.0, 1.0};
    std::vector<double> g2{2.0, 2.0, 2.0};
    auto b1 = osgood_integrate(1e-6, times, g1, OsgoodModulus::loglog);
    auto b2 = osgood_integrate(1e-5, times, g1, OsgoodModulus::loglog);
    auto b3 = osgood_integrate(1e-6, times, g2, OsgoodModulus::loglog);
    for (std::size_t i = 0; i < times.size(); ++i) {
        CHECK(b1.values[i] <= b2.values[i] * (1 + 1e-12));
        CHECK(b1.values[i] <= b3.values[i] * (1 + 1e-12));
    }
}

TEST_CASE("poincare_checks: closed forms and random fields") {
    auto lat = make_lattice(8, 8);
    // f = sin(pi z): ||f|| / ||dz f|| = 1/pi.
    SpectralField f(lat, Parity::odd);
    f.set(0, 0, 1, Complex(0.0, -0.5));
    f.set(0, 0, -1, Complex(0.0, 0.5));
    auto rep = poincare_checks(f);
    CHECK(rep.all_hold);
    CHECK(rep.rows[0].lhs / (0.5 * rep.rows[0].rhs) ==
          doctest::Approx(1.0 / 3.14159265358979).epsilon(1e-10));

    // constant in z: mean-removed lhs is zero
    SpectralField c(lat, Parity::even);
    c.set(1, 0, 0, Complex(0.5, 0.0));
    c.set(-1, 0, 0, Complex(0.5, 0.0));
    auto repc = poincare_checks(c);
    for (const auto& r : repc.rows)
        if (r.check == "poincare_vertical_mean") CHECK(r.lhs == 0.0);

    auto g = testutil::random_field(lat, 17, {.parity = Parity::odd});
    CHECK(poincare_checks(g).all_hold);
}

TEST_CASE("inequality corpus: fresh seeds stay within frozen constants") {
    SuiteOptions opt;
    opt.n_h = 12;
    opt.n_v = 12;
    opt.n_seeds = 40;
    opt.convection_times = 7;
    FrozenConstants constants;
    auto cal = calibrate_inequalities(opt, constants);
    CHECK(cal.measured.at("bernstein_upper") > 0.0);
    CHECK(constants.has("ineq_gn_classical"));
    CHECK(constants.has("ineq_convection_torus"));
    CHECK(constants.at("ineq_minkowski_order") == 1.0);

    SuiteOptions fresh = opt;
    fresh.first_seed = 501;
    fresh.n_seeds = 10;
    auto ver = verify_inequalities(fresh, constants);
    for (const auto& v : ver.violations) MESSAGE(v);
    CHECK(ver.pass);
}

TEST_CASE("convection: c_q normalization arithmetic is exact") {
    auto lat = make_lattice(12, 12);
    ConvectionData data = synthetic_convection_data(lat, 5, 7, 0.5);
    for (auto lemma : {ConvectionLemma::anisotropic, ConvectionLemma::torus,
                       ConvectionLemma::mean_coupling}) {
        auto res = convection_lemma_check(data, lemma);
        REQUIRE(!res.skipped);
        double sum_sqrt = 0.0;
        for (double c : res.c_q) sum_sqrt += std::sqrt(std::max(0.0, c));
        CHECK(sum_sqrt <= 1.0 + 1e-12);
        // lhs_q == C c_q 2^{-q} bracket by construction of the extraction
        for (int q = -1; q + 1 < static_cast<int>(res.lhs_q.size()); ++q) {
            const double rhs =
                res.constant * res.c_q[q + 1] * std::pow(2.0, -q) * res.bracket;
            CHECK(res.lhs_q[q + 1] == doctest::Approx(rhs).epsilon(1e-10));
        }
    }
}

TEST_CASE("convection: hypothesis violation is skipped, not failed") {
    auto lat = make_lattice(12, 12);
    ConvectionData data = synthetic_convection_data(lat, 6, 5, 0.5);
    for (auto& b : data.b) b.set(0, 0, 0, Complex(0.7, 0.0));  // nonzero box mean
    auto res = convection_lemma_check(data, ConvectionLemma::torus);
    CHECK(res.skipped);
    CHECK(!res.note.empty());
}

TEST_CASE("check_smallness: verdicts and calibration guard") {
    RunConfig cfg = small_run_config(12);
    FrozenConstants constants;
    CHECK_THROWS_AS(check_smallness(cfg, constants), UncalibratedError);

    constants.set("smallness_c", 0.05);
    constants.set("smallness_C", 1.0);
    cfg.init.amplitude = 0.0;
    auto green = check_smallness(cfg, constants);
    CHECK(green.green);
    CHECK(green.lhs == 0.0);

    // lhs is linear in the fluctuation amplitude: the verdict flips once.
    std::vector<int> verdicts;
    for (double amp : {1e-4, 1e-3, 1e-2, 1e-1, 1.0}) {
        cfg.init.amplitude = amp;
        verdicts.push_back(check_smallness(cfg, constants).green ? 1 : 0);
    }
    for (std::size_t i = 1; i < verdicts.size(); ++i) CHECK(verdicts[i] <= verdicts[i - 1]);
    CHECK(verdicts.front() == 1);
    CHECK(verdicts.back() == 0);
}

TEST_CASE("apriori monitor: zero data and linear-regime monotonicity") {
    RunConfig cfg = small_run_config(12);
    cfg.init.kind = InitKind::zero;
    FrozenConstants constants;
    constants.set("smallness_c", 0.05);
    constants.set("smallness_C", 1.0);
    auto traj = solve_coupled(cfg);
    auto mon = attach_apriori_monitor(traj, constants);
    CHECK(mon.ok);
    for (double v : mon.monitored) CHECK(v == 0.0);

    // Pure diffusion: the instantaneous Besov norm never grows.
    RunConfig lin = small_run_config(12);
    lin.enable_convection = false;
    lin.init.amplitude = 0.05;
    auto ltraj = solve_coupled(lin);
    for (std::size_t i = 1; i < ltraj.norm_series.reports.size(); ++i)
        CHECK(ltraj.norm_series.reports[i].b0_half <=
              ltraj.norm_series.reports[i - 1].b0_half * (1.0 + 1e-12));

    // Violation bookkeeping fires when the bound is absurdly tight.
    FrozenConstants tight;
    tight.set("smallness_c", 1e-12);
    tight.set("smallness_C", 1.0);
    auto mon2 = attach_apriori_monitor(ltraj, tight);
    CHECK(!mon2.ok);
    CHECK(!mon2.violations.empty());
}

TEST_CASE("stability_experiment: refusal, exact zero, monotone scales, bound") {
    RunConfig cfg = small_run_config(12);
    cfg.t_end = 0.03;
    FrozenConstants constants;
    constants.set("smallness_c", 0.05);
    constants.set("smallness_C", 1.0);
    constants.set("stability_C", 1.0);

    RunConfig red = cfg;
    red.init.amplitude = 10.0;
    CHECK_THROWS_AS(stability_experiment(red, 1e-4, constants), ConsistencyError);

    auto rec0 = stability_experiment(cfg, 0.0, constants);
    for (double v : rec0.phi) CHECK(v == 0.0);
    CHECK(rec0.ok);

    auto rec4 = stability_experiment(cfg, 1e-4, constants);
    auto rec6 = stability_experiment(cfg, 1e-6, constants);
    CHECK(rec4.phi.back() > rec6.phi.back());
    CHECK(rec6.phi.back() > 0.0);

    // Freeze the constant from one record and confirm the bound dominates.
    const double c_fit = fit_stability_constant(rec4);
    CHECK(c_fit > 0.0);
    StabilityRecord withc = rec4;
    apply_stability_bound(withc, c_fit * 1.5);
    CHECK(withc.ok);
    CHECK(withc.margin >= 0.0);
}

TEST_CASE("identity suite: clean pass at a reduced corpus size") {
    IdentityOptions opt;
    opt.n_h = 12;
    opt.n_v = 12;
    opt.n_seeds = 6;
    auto res = run_identity_suite(opt);
    for (const auto& v : res.violations) MESSAGE(v);
    CHECK(res.pass);
    CHECK(res.rows.at("bony_sum").size() == 6);
    CHECK(res.measured.at("pressure_z_independence") == 0.0);
}

TEST_CASE("frozen constants: json round trip and env resolution") {
    FrozenConstants c;
    c.set("alpha", 1.25);
    c.set("beta", 3.5e-3);
    auto back = FrozenConstants::from_json(c.to_json());
    CHECK(back.at("alpha") == 1.25);
    CHECK(back.at("beta") == 3.5e-3);
    CHECK_THROWS_AS(back.at("missing"), UncalibratedError);

    setenv("APRS_CONSTANTS", "/tmp/somewhere.json", 1);
    CHECK(FrozenConstants::resolve_path("fallback.json") == "/tmp/somewhere.json");
    unsetenv("APRS_CONSTANTS");
    CHECK(FrozenConstants::resolve_path("fallback.json") == "fallback.json");
}
