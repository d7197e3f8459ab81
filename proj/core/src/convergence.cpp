#include "aprs/convergence.hpp"

#include <cmath>
#include <sstream>

#include "aprs/norms.hpp"
#include "aprs/operators.hpp"

namespace aprs {
namespace {
constexpr double kPi = 3.14159265358979323846;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double smooth_ramp(double s) {
    if (s <= 0.0) return 0.0;
    if (s >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / s);
    const double b = std::exp(-1.0 / (1.0 - s));
    return a / (a + b);
}

double trapz(const std::vector<double>& t, const std::vector<double>& v) {
    double s = 0.0;
    for (std::size_t i = 1; i < t.size(); ++i)
        s += 0.5 * (t[i] - t[i - 1]) * (v[i - 1] + v[i]);
    return s;
}

double coeff_sobolev_sq(const SpectralField& f, double s) {
    const double n = sobolev_norm(f, s);
    return n * n;
}

double fit_slope_last3(const std::vector<double>& eps, const std::vector<double>& val) {
    std::vector<double> xs, ys;
    for (std::size_t i = eps.size() >= 3 ? eps.size() - 3 : 0; i < eps.size(); ++i) {
        if (val[i] > 0) {
            xs.push_back(std::log2(eps[i]));
            ys.push_back(std::log2(val[i]));
        }
    }
    if (xs.size() < 2) return 0.0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int n = static_cast<int>(xs.size());
    for (int i = 0; i < n; ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

double TestFunction::bump(double t) const {
    // C-infinity plateau supported in [t0, t1].
    const double w = 0.25 * (t1 - t0);
    return smooth_ramp((t - t0) / w) * smooth_ramp((t1 - t) / w);
}

std::vector<TestFunction> test_dictionary(const LatticePtr& lattice, double t_end) {
    std::vector<TestFunction> dict;
    // Low spatial modes as real cosine/sine shapes; parities chosen to be
    // compatible with the component they pair against.
    struct ModeSpec {
        int k1, k2, k3;
        bool sine;
        int component;
    };
    const ModeSpec specs[] = {
        {1, 0, 0, false, 0}, {0, 1, 0, true, 0},  {1, 1, 1, false, 0}, {2, 0, 1, true, 0},
        {0, 1, 0, false, 1}, {1, 0, 1, true, 1},  {0, 2, 1, false, 1}, {1, 1, 0, true, 1},
        {1, 0, 1, true, 2},  {0, 1, 1, true, 2},  {1, 1, 2, true, 2},  {2, 1, 1, true, 2},
        {2, 0, 0, false, 0}, {0, 0, 1, false, 1}, {0, 2, 2, true, 2},  {1, 2, 1, false, 0},
    };
    int idx = 0;
    for (const auto& m : specs) {
        TestFunction tf{SpectralField(lattice,
                                      m.component == 2 ? Parity::odd : Parity::even),
                        m.component, 0.0, 0.0};
        const Complex amp = m.sine ? Complex(0.0, -0.5) : Complex(0.5, 0.0);
        tf.space.set(m.k1, m.k2, m.k3, amp);
        tf.space.set(-m.k1, -m.k2, -m.k3, std::conj(amp));
        tf.space.hermitian_symmetrize();
        tf.space.parity_symmetrize();
        if (tf.space.l2_norm() > 0) tf.space *= 1.0 / tf.space.l2_norm();
        // Two staggered supports alternate through the dictionary.
        if (idx % 2 == 0) {
            tf.t0 = 0.05 * t_end;
            tf.t1 = 0.65 * t_end;
        } else {
            tf.t0 = 0.35 * t_end;
            tf.t1 = 0.95 * t_end;
        }
        dict.push_back(std::move(tf));
        ++idx;
    }
    return dict;
}

SweepPlan make_sweep_plan(const RunConfig& base, const SweepConfig& sweep) {
    SweepPlan plan;
    plan.base = base;
    plan.eps_values = sweep.eps_values;
    plan.weak_order = sweep.weak_order;
    plan.eta = sweep.eta;
    return plan;
}

double weak_norm(const std::vector<double>& times,
                 const std::vector<std::array<SpectralField, 3>>& series, double order) {
    if (!(order > 0)) throw DomainError("weak_norm: order must be positive");
    std::vector<double> sq(times.size(), 0.0);
    for (std::size_t i = 0; i < times.size(); ++i)
        for (const auto& f : series[i]) sq[i] += coeff_sobolev_sq(f, -order);
    return std::sqrt(trapz(times, sq));
}

double spacetime_pairing(const std::vector<double>& times,
                         const std::vector<SpectralField>& series, const TestFunction& psi) {
    std::vector<double> vals(times.size(), 0.0);
    for (std::size_t i = 0; i < times.size(); ++i)
        vals[i] = series[i].inner(psi.space) * psi.bump(times[i]);
    return trapz(times, vals);
}

ConvergenceReport run_sweep(const SweepPlan& plan) {
    ConvergenceReport report;
    RunConfig base = plan.base;
    base.system = SystemKind::primitive;
    base.eps.reset();

    // One clock for every run: the primitive CFL step, frozen.
    {
        FlowState y0 = prepared_initial_state(base);
        double max_speed = 0.0;
        VelocityState ut = make_hydrostatic_state(y0[2], y0[3]);
        SpectralField tot1 = y0[0];
        tot1 += ut.uh1;
        SpectralField tot2 = y0[1];
        tot2 += ut.uh2;
        max_speed = std::max({linf_norm(tot1), linf_norm(tot2), linf_norm(ut.uv)});
        base.dt = base.dt_auto ? default_time_step(base, max_speed) : base.dt;
        base.dt_auto = false;
    }

    CoupledTrajectory prim = solve_coupled(base);
    if (prim.blew_up) {
        report.any_blowup = true;
        return report;
    }
    const auto dict = test_dictionary(base.lattice, base.t_end);

    // Primitive per-component series (total velocity).
    const std::size_t n = prim.size();
    std::vector<std::array<SpectralField, 3>> prim_series;
    prim_series.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        prim_series.push_back({prim.total_uh(i, 0), prim.total_uh(i, 1), prim.fluct[i].uv});

    for (double eps : plan.eps_values) {
        RunConfig cfg = base;
        cfg.system = SystemKind::ns_aniso;
        cfg.eps = eps;
        MemberReport mr;
        mr.eps = eps;
        CoupledTrajectory traj = solve_coupled(cfg);
        if (traj.blew_up || traj.size() != n) {
            mr.blew_up = true;
            report.any_blowup = true;
            report.members.push_back(mr);
            continue;
        }

        // distances against the primitive baseline
        std::vector<double> uv_sq(n, 0.0), grad_sq(n, 0.0), diff_eta_sq(n, 0.0),
            pair_l2_sq(n, 0.0), pair_eta_sq(n, 0.0);
        std::vector<std::array<SpectralField, 3>> diff_series;
        diff_series.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            SpectralField d1 = traj.total_uh(i, 0);
            d1 -= prim_series[i][0];
            SpectralField d2 = traj.total_uh(i, 1);
            d2 -= prim_series[i][1];
            SpectralField dv = traj.fluct[i].uv;
            dv -= prim_series[i][2];
            diff_eta_sq[i] = coeff_sobolev_sq(d1, plan.eta) + coeff_sobolev_sq(d2, plan.eta);
            diff_series.push_back({std::move(d1), std::move(d2), std::move(dv)});

            SpectralField v_scaled = traj.fluct[i].uv;
            v_scaled *= eps;
            uv_sq[i] = v_scaled.l2_norm() * v_scaled.l2_norm();
            SpectralField th1 = traj.total_uh(i, 0), th2 = traj.total_uh(i, 1);
            grad_sq[i] = grad_h_energy({&th1, &th2});
            const double pl2 = th1.l2_norm() * th1.l2_norm() +
                               th2.l2_norm() * th2.l2_norm() +
                               v_scaled.l2_norm() * v_scaled.l2_norm();
            pair_l2_sq[i] = pl2;
            pair_eta_sq[i] = coeff_sobolev_sq(th1, plan.eta) + coeff_sobolev_sq(th2, plan.eta) +
                             coeff_sobolev_sq(v_scaled, plan.eta);
        }

        for (const auto& psi : dict) {
            std::vector<SpectralField> comp;
            comp.reserve(n);
            for (std::size_t i = 0; i < n; ++i) comp.push_back(diff_series[i][psi.component]);
            mr.d_weak = std::max(mr.d_weak, std::abs(spacetime_pairing(traj.times, comp, psi)));
        }
        mr.l2_eps_uv = std::sqrt(trapz(traj.times, uv_sq));
        mr.eps_grad_bound = eps * std::sqrt(trapz(traj.times, grad_sq));
        mr.poincare_chain_ok = mr.l2_eps_uv <= mr.eps_grad_bound * (1.0 + 1e-12);
        {
            std::vector<double> tmp(n);
            for (std::size_t i = 0; i < n; ++i) tmp[i] = diff_eta_sq[i];
            mr.l2loc_h_eta = std::sqrt(trapz(traj.times, tmp));
        }
        mr.tendency_weak = weak_norm(traj.times, traj.tendency, plan.weak_order);
        double supl2 = 0.0;
        for (double v : pair_l2_sq) supl2 = std::max(supl2, v);
        mr.sup_l2 = std::sqrt(supl2);
        mr.l2_h_eta = std::sqrt(trapz(traj.times, pair_eta_sq));
        report.members.push_back(std::move(mr));
    }

    std::vector<double> eps_list, weak_list, strong_list, tend_list;
    for (const auto& m : report.members) {
        if (m.blew_up) continue;
        eps_list.push_back(m.eps);
        weak_list.push_back(m.d_weak);
        strong_list.push_back(m.l2loc_h_eta);
        tend_list.push_back(m.tendency_weak);
    }
    report.fitted_order_weak = fit_slope_last3(eps_list, weak_list);
    report.fitted_order_strong = fit_slope_last3(eps_list, strong_list);
    if (!tend_list.empty()) {
        double mx = tend_list.front(), mn = tend_list.front();
        for (double v : tend_list) {
            mx = std::max(mx, v);
            mn = std::min(mn, v);
        }
        report.tendency_uniform = mn > 0 && mx / mn < 10.0;
    }
    return report;
}

std::string ConvergenceReport::to_csv() const {
    std::ostringstream os;
    os << "eps,d_weak,l2_eps_uv,l2loc_h_eta,tendency_weak_norm,sup_l2,l2_h_eta,"
          "poincare_chain_ok,blew_up\n";
    for (const auto& m : members) {
        os << fmt(m.eps) << "," << fmt(m.d_weak) << "," << fmt(m.l2_eps_uv) << ","
           << fmt(m.l2loc_h_eta) << "," << fmt(m.tendency_weak) << "," << fmt(m.sup_l2) << ","
           << fmt(m.l2_h_eta) << "," << (m.poincare_chain_ok ? "1" : "0") << ","
           << (m.blew_up ? "1" : "0") << "\n";
    }
    return os.str();
}

std::string ConvergenceReport::plot_data() const {
    std::ostringstream os;
    os << "log2_eps,log2_d_weak,log2_l2loc_h_eta\n";
    for (const auto& m : members) {
        if (m.blew_up || m.d_weak <= 0 || m.l2loc_h_eta <= 0) continue;
        os << fmt(std::log2(m.eps)) << "," << fmt(std::log2(m.d_weak)) << ","
           << fmt(std::log2(m.l2loc_h_eta)) << "\n";
    }
    return os.str();
}

TendencyBoundReport time_derivative_bound_check(const ConvergenceReport& report) {
    TendencyBoundReport out;
    for (const auto& m : report.members) {
        if (m.blew_up) continue;
        out.eps.push_back(m.eps);
        out.weak_norms.push_back(m.tendency_weak);
    }
    if (!out.weak_norms.empty()) {
        double mx = out.weak_norms.front(), mn = out.weak_norms.front();
        for (double v : out.weak_norms) {
            mx = std::max(mx, v);
            mn = std::min(mn, v);
        }
        out.max_over_min = mn > 0 ? mx / mn : 0.0;
        out.bounded = mn > 0 && out.max_over_min < 10.0;
    }
    return out;
}

}  // namespace aprs
