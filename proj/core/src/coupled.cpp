#include "aprs/coupled.hpp"

#include <cmath>
#include <memory>
#include <sstream>

#include "aprs/initial_data.hpp"
#include "aprs/integrator.hpp"
#include "aprs/ns_aniso.hpp"
#include "aprs/primitive.hpp"
#include "aprs/transform.hpp"

namespace aprs {
namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void mask_mean_field(SpectralField& f) {
    f.transform_modes([](int, int, int k3, Complex c) { return k3 == 0 ? c : Complex(0.0); });
    dealias_truncate(f);
}

void common_cleanup(SpectralField& f) {
    if (f.parity_residual() > 1e-10)
        throw SymmetryError("coupled solver: parity drift beyond 1e-10");
    f.hermitian_symmetrize();
    f.parity_symmetrize();
    f.clear_nyquist();
}

class PrimitiveCoupledSystem : public FlowSystem {
  public:
    explicit PrimitiveCoupledSystem(RunConfig cfg) : cfg_(std::move(cfg)) {}

    FlowState rhs(const FlowState& y) const override {
        VelocityState ut = make_hydrostatic_state(y[2], y[3]);
        PrimitiveRhs r = rhs_primitive_fluct(ut, y[0], y[1], cfg_);
        FlowState out{SpectralField(cfg_.lattice, Parity::even),
                      SpectralField(cfg_.lattice, Parity::even), std::move(r.fluct1),
                      std::move(r.fluct2)};
        if (cfg_.enable_convection) {
            out[0] = multiply_dealiased(y[0], derivative(y[0], Axis::x));
            out[0] += multiply_dealiased(y[1], derivative(y[0], Axis::y));
            out[0] += r.mean_flux1;
            out[1] = multiply_dealiased(y[0], derivative(y[1], Axis::x));
            out[1] += multiply_dealiased(y[1], derivative(y[1], Axis::y));
            out[1] += r.mean_flux2;
            out[0] *= -1.0;
            out[1] *= -1.0;
            leray_project_h(out[0], out[1]);
        }
        return out;
    }

    void apply_diffusion(FlowState& y, double tau) const override {
        for (auto& f : y) apply_heat_factor(f, cfg_.nu_h, 0.0, tau);
    }

    void postprocess(FlowState& y) const override {
        for (auto& f : y) common_cleanup(f);
        mask_mean_field(y[0]);
        mask_mean_field(y[1]);
        leray_project_h(y[0], y[1]);
        for (int i : {2, 3}) {
            zero_vertical_mean(y[i]);
            dealias_truncate(y[i]);
            y[i] = friedrichs_truncate(y[i], cfg_.effective_k_trunc());
        }
    }

  private:
    RunConfig cfg_;
};

class NsAnisoCoupledSystem : public FlowSystem {
  public:
    explicit NsAnisoCoupledSystem(RunConfig cfg) : cfg_(std::move(cfg)) {
        nu_z_ = std::pow(cfg_.eps.value(), cfg_.gamma - 2.0);
    }

    FlowState rhs(const FlowState& y) const override {
        NsAnisoRhs r = rhs_ns_aniso(y[2], y[3], y[4], y[0], y[1], cfg_);
        FlowState out{SpectralField(cfg_.lattice, Parity::even),
                      SpectralField(cfg_.lattice, Parity::even), std::move(r.fluct1),
                      std::move(r.fluct2), std::move(r.fluct_v)};
        if (cfg_.enable_convection) {
            out[0] = multiply_dealiased(y[0], derivative(y[0], Axis::x));
            out[0] += multiply_dealiased(y[1], derivative(y[0], Axis::y));
            out[0] += r.mean_flux1;
            out[1] = multiply_dealiased(y[0], derivative(y[1], Axis::x));
            out[1] += multiply_dealiased(y[1], derivative(y[1], Axis::y));
            out[1] += r.mean_flux2;
            out[0] *= -1.0;
            out[1] *= -1.0;
            leray_project_h(out[0], out[1]);
        }
        return out;
    }

    void apply_diffusion(FlowState& y, double tau) const override {
        apply_heat_factor(y[0], cfg_.nu_h, 0.0, tau);
        apply_heat_factor(y[1], cfg_.nu_h, 0.0, tau);
        for (int i : {2, 3, 4}) apply_heat_factor(y[i], cfg_.nu_h, nu_z_, tau);
    }

    void postprocess(FlowState& y) const override {
        for (auto& f : y) common_cleanup(f);
        mask_mean_field(y[0]);
        mask_mean_field(y[1]);
        leray_project_h(y[0], y[1]);
        for (int i : {2, 3, 4}) {
            zero_vertical_mean(y[i]);
            dealias_truncate(y[i]);
        }
        auto proj = leray_project_eps(y[2], y[3], y[4], cfg_.eps.value());
        y[2] = std::move(proj[0]);
        y[3] = std::move(proj[1]);
        y[4] = std::move(proj[2]);
    }

  private:
    RunConfig cfg_;
    double nu_z_ = 0.0;
};

}  // namespace

SpectralField CoupledTrajectory::total_uh(std::size_t i, int comp) const {
    SpectralField f = mean[i][comp];
    f += (comp == 0 ? fluct[i].uh1 : fluct[i].uh2);
    return f;
}

std::array<const SpectralField*, 2> CoupledTrajectory::fluct_pair(std::size_t i) const {
    return {&fluct[i].uh1, &fluct[i].uh2};
}

std::unique_ptr<FlowSystem> make_coupled_system(const RunConfig& cfg) {
    if (cfg.system == SystemKind::ns_aniso) return std::make_unique<NsAnisoCoupledSystem>(cfg);
    return std::make_unique<PrimitiveCoupledSystem>(cfg);
}

FlowState prepared_initial_state(const RunConfig& cfg) {
    cfg.validate();
    InitialFields init = build_initial_fields(cfg.init, cfg.lattice);
    FlowState y{std::move(init.mean1), std::move(init.mean2), std::move(init.fluct1),
                std::move(init.fluct2)};
    if (cfg.system == SystemKind::ns_aniso) {
        SpectralField v = reconstruct_vertical(y[2], y[3]);
        v *= cfg.eps.value();
        y.push_back(std::move(v));
        NsAnisoCoupledSystem(cfg).postprocess(y);
    } else {
        PrimitiveCoupledSystem(cfg).postprocess(y);
    }
    return y;
}

CoupledTrajectory solve_coupled(const RunConfig& cfg) {
    return solve_coupled_from(cfg, prepared_initial_state(cfg));
}

CoupledTrajectory solve_coupled_from(const RunConfig& cfg, FlowState y0) {
    cfg.validate();
    const bool is_ns = cfg.system == SystemKind::ns_aniso;
    CoupledTrajectory traj;
    traj.system = cfg.system;
    traj.lattice = cfg.lattice;
    traj.nu_h = cfg.nu_h;
    traj.gamma = cfg.gamma;
    traj.eps = cfg.eps;

    FlowState y = std::move(y0);
    std::unique_ptr<FlowSystem> sys = make_coupled_system(cfg);

    double max_speed = 0.0;
    {
        VelocityState ut = is_ns ? VelocityState(y[2], y[3], [&] {
            SpectralField uv = y[4];
            uv *= 1.0 / cfg.eps.value();
            return uv;
        }())
                                 : make_hydrostatic_state(y[2], y[3]);
        SpectralField tot1 = y[0];
        tot1 += ut.uh1;
        SpectralField tot2 = y[1];
        tot2 += ut.uh2;
        max_speed = std::max({linf_norm(tot1), linf_norm(tot2), linf_norm(ut.uv)});
    }
    const double dt = cfg.dt_auto ? default_time_step(cfg, max_speed) : cfg.dt;
    const long n_steps = static_cast<long>(std::llround(cfg.t_end / dt));
    traj.dt = dt;

    const double e0 =
        y[0].l2_norm() * y[0].l2_norm() + y[1].l2_norm() * y[1].l2_norm();

    auto block_sets = [&](std::vector<double>& val, std::vector<double>& grd,
                          std::vector<double>& dzv) {
        std::vector<const SpectralField*> comps{&y[2], &y[3]};
        if (is_ns) comps.push_back(&y[4]);
        val = block_l2_norms(comps);
        grd = block_grad_h_l2_norms(comps);
        if (is_ns) dzv = block_dz_l2_norms(comps);
    };

    auto record = [&](long step, double t) {
        VelocityState ut(cfg.lattice);
        if (is_ns) {
            SpectralField uv = y[4];
            uv *= 1.0 / cfg.eps.value();
            ut = VelocityState(y[2], y[3], std::move(uv), t);
        } else {
            ut = make_hydrostatic_state(y[2], y[3], t);
        }
        std::array<SpectralField, 3> tend{SpectralField(cfg.lattice),
                                          SpectralField(cfg.lattice),
                                          SpectralField(cfg.lattice)};
        if (is_ns) {
            tend = total_ns_tendency(y[2], y[3], y[4], y[0], y[1], cfg);
        } else {
            VelocityState state = make_hydrostatic_state(y[2], y[3], t);
            PrimitiveRhs r = rhs_primitive_fluct(state, y[0], y[1], cfg);
            FlowState meanpart = PrimitiveCoupledSystem(cfg).rhs(y);
            for (int i = 0; i < 2; ++i) {
                tend[i] = (i == 0 ? r.fluct1 : r.fluct2);
                tend[i] += meanpart[i];
                SpectralField diff = laplacian_h(y[i]);
                diff += laplacian_h(y[2 + i]);
                diff *= cfg.nu_h;
                tend[i] += diff;
            }
            SpectralField dfl1 = tend[0];
            SpectralField dfl2 = tend[1];
            zero_vertical_mean(dfl1);
            zero_vertical_mean(dfl2);
            tend[2] = reconstruct_vertical(dfl1, dfl2);
        }

        StepDiagnostics d;
        d.step = step;
        d.time = t;
        d.l2_energy_mean = y[0].l2_norm() * y[0].l2_norm() + y[1].l2_norm() * y[1].l2_norm();
        d.dissipation_mean = traj.dissipation.integral_at(t);
        std::vector<const SpectralField*> comps{&y[2], &y[3]};
        if (is_ns) comps.push_back(&y[4]);
        d.besov = besov_norm(comps);
        if (is_ns) {
            d.div_residual = divergence_eps(ut.uh1, ut.uh2, y[4], cfg.eps.value()).l2_norm();
            SpectralField db = divergence_h(y[0], y[1]);
            d.div_residual = std::max(d.div_residual, db.l2_norm());
        } else {
            VelocityState total(ut);
            total.uh1 += y[0];
            total.uh2 += y[1];
            d.div_residual = total.divergence_residual();
        }
        d.parity_residual =
            std::max({y[0].parity_residual(), y[1].parity_residual(), y[2].parity_residual(),
                      y[3].parity_residual(), is_ns ? y[4].parity_residual() : 0.0});
        d.energy_equality_residual =
            std::abs(d.l2_energy_mean + 2.0 * cfg.nu_h * d.dissipation_mean - e0) /
            std::max(e0, 1e-300);

        traj.times.push_back(t);
        traj.mean.push_back({y[0], y[1]});
        traj.fluct.push_back(std::move(ut));
        traj.tendency.push_back(std::move(tend));
        traj.norm_series.append(t, d.besov);
        traj.diagnostics.push_back(std::move(d));
    };

    traj.dissipation.append(0.0, grad_h_energy({&y[0], &y[1]}));
    {
        std::vector<double> val, grd, dzv;
        block_sets(val, grd, dzv);
        traj.acc_value.add_sample(0.0, val);
        traj.acc_grad.add_sample(0.0, grd);
        if (is_ns) traj.acc_dz.add_sample(0.0, dzv);
        traj.fine_times.push_back(0.0);
        traj.blocks_value.push_back(std::move(val));
        traj.blocks_grad.push_back(std::move(grd));
        if (is_ns) traj.blocks_dz.push_back(std::move(dzv));
    }
    record(0, 0.0);

    for (long step = 1; step <= n_steps; ++step) {
        const double t = static_cast<double>(step) * dt;
        try {
            ifrk4_step(*sys, y, dt);
            check_bounded(y, step, t);
        } catch (const BlowUpError& e) {
            traj.blew_up = true;
            traj.blowup_step = e.step;
            traj.blowup_time = e.time;
            traj.blowup_max = e.max_coeff;
            break;
        }
        traj.dissipation.append(t, grad_h_energy({&y[0], &y[1]}));
        std::vector<double> val, grd, dzv;
        block_sets(val, grd, dzv);
        traj.acc_value.add_sample(t, val);
        traj.acc_grad.add_sample(t, grd);
        if (is_ns) traj.acc_dz.add_sample(t, dzv);
        traj.fine_times.push_back(t);
        traj.blocks_value.push_back(std::move(val));
        traj.blocks_grad.push_back(std::move(grd));
        if (is_ns) traj.blocks_dz.push_back(std::move(dzv));
        if (step % cfg.output_every == 0 || step == n_steps) record(step, t);
    }
    return traj;
}

NormSeries lambda_weighted_field(const CoupledTrajectory& traj, double lambda) {
    if (lambda < 0) throw DomainError("lambda_weighted_field: lambda must be >= 0");
    NormSeries out;
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const double w = std::exp(-lambda * traj.dissipation.integral_at(traj.times[i]));
        NormReport r = traj.norm_series.reports[i];
        r.b0_half *= w;
        for (auto& [s, v] : r.h0_s) v *= w;
        r.b0_minus_half_inf *= w;
        for (auto& [q, v] : r.per_block) v *= w;
        out.append(traj.times[i], std::move(r));
    }
    return out;
}

std::string diagnostics_csv(const CoupledTrajectory& traj) {
    std::ostringstream os;
    os << "step,time,l2_energy_mean,dissipation_integral,b0_half_fluct,h0_half_fluct,"
          "div_residual,parity_residual,energy_equality_residual\n";
    for (const auto& d : traj.diagnostics) {
        os << d.step << "," << fmt(d.time) << "," << fmt(d.l2_energy_mean) << ","
           << fmt(d.dissipation_mean) << "," << fmt(d.besov.b0_half) << ","
           << fmt(d.besov.h0_half()) << "," << fmt(d.div_residual) << ","
           << fmt(d.parity_residual) << "," << fmt(d.energy_equality_residual) << "\n";
    }
    return os.str();
}

}  // namespace aprs
