#include "aprs/estimates/stability.hpp"

#include <cmath>

#include "aprs/estimates/smallness.hpp"
#include "aprs/initial_data.hpp"
#include "aprs/norms.hpp"
#include "aprs/operators.hpp"

namespace aprs {
namespace {

double h0s_sq(const std::vector<const SpectralField*>& comps, double s) {
    const double n = h0s_norm(comps, s);
    return n * n;
}

double grad_h0_half_sq(const std::vector<const SpectralField*>& comps) {
    double sum = 0.0;
    for (const SpectralField* f : comps) {
        SpectralField dx = derivative(*f, Axis::x);
        SpectralField dy = derivative(*f, Axis::y);
        sum += h0s_sq({&dx, &dy}, 0.5);
    }
    return sum;
}

}  // namespace

StabilityRecord stability_experiment(const RunConfig& cfg, double perturbation_scale,
                                     const FrozenConstants& constants) {
    if (perturbation_scale < 0)
        throw DomainError("stability_experiment: perturbation scale must be >= 0");
    SmallnessCheck small = check_smallness(cfg, constants);
    if (!small.green)
        throw ConsistencyError(
            "stability_experiment refused: initial data fails the smallness condition");

    const bool is_ns = cfg.system == SystemKind::ns_aniso;
    FlowState y1 = prepared_initial_state(cfg);
    FlowState y2 = y1;
    if (perturbation_scale > 0) {
        FieldRecipe dir1{90, cfg.init.band, cfg.init.band, Parity::even, true, false, false};
        FieldRecipe dir2{91, cfg.init.band, cfg.init.band, Parity::even, true, false, false};
        y2[2].axpy(perturbation_scale, seeded_field(cfg.lattice, cfg.init.seed + 7919, dir1));
        y2[3].axpy(perturbation_scale, seeded_field(cfg.lattice, cfg.init.seed + 7919, dir2));
        if (is_ns) {
            SpectralField v = reconstruct_vertical(y2[2], y2[3]);
            v *= cfg.eps.value();
            y2[4] = std::move(v);
        }
        make_coupled_system(cfg)->postprocess(y2);
    }

    CoupledTrajectory t1 = solve_coupled_from(cfg, std::move(y1));
    CoupledTrajectory t2 = solve_coupled_from(cfg, std::move(y2));
    if (t1.blew_up || t2.blew_up)
        throw ConsistencyError("stability_experiment: a member run blew up");

    StabilityRecord rec;
    const std::size_t n = std::min(t1.size(), t2.size());
    const double eps = is_ns ? cfg.eps.value() : 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        rec.times.push_back(t1.times[i]);

        SpectralField w1 = t2.total_uh(i, 0);
        w1 -= t1.total_uh(i, 0);
        SpectralField w2 = t2.total_uh(i, 1);
        w2 -= t1.total_uh(i, 1);
        std::vector<const SpectralField*> wcomps{&w1, &w2};
        SpectralField wv(cfg.lattice, Parity::odd);
        if (is_ns) {
            wv = t2.fluct[i].uv;
            wv -= t1.fluct[i].uv;
            wv *= eps;
            wcomps.push_back(&wv);
        }
        rec.phi.push_back(h0s_sq(wcomps, -0.5));

        // f(t) from the pair and difference norms in H^{0,1/2}.
        std::vector<const SpectralField*> u1c, u2c;
        SpectralField a1 = t1.total_uh(i, 0), a2 = t1.total_uh(i, 1);
        SpectralField b1 = t2.total_uh(i, 0), b2 = t2.total_uh(i, 1);
        SpectralField av(cfg.lattice, Parity::odd), bv(cfg.lattice, Parity::odd);
        u1c = {&a1, &a2};
        u2c = {&b1, &b2};
        if (is_ns) {
            av = t1.fluct[i].uv;
            av *= eps;
            bv = t2.fluct[i].uv;
            bv *= eps;
            u1c.push_back(&av);
            u2c.push_back(&bv);
        }
        const double f =
            (1.0 + h0s_sq(u1c, 0.5) + h0s_sq(u2c, 0.5) + h0s_sq(wcomps, 0.5)) *
            (1.0 + grad_h0_half_sq(u1c) + grad_h0_half_sq(u2c) + grad_h0_half_sq(wcomps));
        rec.f_series.push_back(f);

        const double phi = rec.phi.back();
        if (phi > 0 && phi < 1) {
            const double s = 1.0 - std::log(phi);
            rec.modulus_loglog.push_back(s * std::log(s));
        } else {
            rec.modulus_loglog.push_back(0.0);
        }
        const double wh = h0s_sq(wcomps, 0.5);
        if (wh > 0) {
            const double l = std::log(1.0 + std::exp(1.0) + 1.0 / wh);
            rec.modulus_logform.push_back(l * std::log(l));
        } else {
            rec.modulus_logform.push_back(0.0);
        }
    }

    apply_stability_bound(rec, constants.at("stability_C"));
    return rec;
}

void apply_stability_bound(StabilityRecord& rec, double constant) {
    std::vector<double> gamma(rec.f_series.size());
    for (std::size_t i = 0; i < gamma.size(); ++i) gamma[i] = constant * rec.f_series[i];
    OsgoodBound bound = osgood_integrate(rec.phi.empty() ? 0.0 : rec.phi.front(), rec.times,
                                         gamma, OsgoodModulus::loglog);
    rec.osgood_bound = bound.values;
    rec.ok = true;
    rec.margin = 1e300;
    for (std::size_t i = 0; i < rec.phi.size(); ++i) {
        const double m = rec.osgood_bound[i] - rec.phi[i];
        rec.margin = std::min(rec.margin, m);
        if (rec.phi[i] > rec.osgood_bound[i] * (1.0 + 1e-9)) rec.ok = false;
    }
    if (rec.phi.empty()) rec.margin = 0.0;
}

double fit_stability_constant(const StabilityRecord& rec) {
    if (rec.phi.empty() || rec.phi.front() == 0.0) return 0.0;
    double lo = 0.0, hi = 1.0;
    StabilityRecord probe = rec;
    auto holds = [&](double c) {
        apply_stability_bound(probe, c);
        return probe.ok;
    };
    int expand = 0;
    while (!holds(hi) && ++expand < 60) hi *= 2.0;
    for (int i = 0; i < 40; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (holds(mid))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

}  // namespace aprs
