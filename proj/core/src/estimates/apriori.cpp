#include "aprs/estimates/apriori.hpp"

#include <cmath>

namespace aprs {

AprioriMonitor attach_apriori_monitor(const CoupledTrajectory& traj,
                                      const FrozenConstants& constants) {
    AprioriMonitor mon;
    mon.bound = constants.at("smallness_c") * traj.nu_h;
    const bool is_ns = traj.system == SystemKind::ns_aniso;
    const double grad_coeff = is_ns ? std::sqrt(traj.nu_h) : 0.5 * std::sqrt(traj.nu_h);
    const double dz_coeff =
        is_ns ? std::sqrt(std::pow(traj.eps.value(), traj.gamma - 2.0)) : 0.0;

    TimeNormAccumulator val, grd, dzv;
    for (std::size_t i = 0; i < traj.fine_times.size(); ++i) {
        const double t = traj.fine_times[i];
        val.add_sample(t, traj.blocks_value[i]);
        grd.add_sample(t, traj.blocks_grad[i]);
        if (is_ns) dzv.add_sample(t, traj.blocks_dz[i]);
        mon.times.push_back(t);
        mon.linf_besov.push_back(val.ltilde_inf_b0_half());
        mon.l2_grad_besov.push_back(grad_coeff * grd.ltilde_2_b0_half());
        mon.l2_dz_besov.push_back(is_ns ? dz_coeff * dzv.ltilde_2_b0_half() : 0.0);
        mon.monitored.push_back(mon.linf_besov.back() + mon.l2_grad_besov.back() +
                                mon.l2_dz_besov.back());
        if (mon.monitored.back() > mon.bound) {
            mon.violations.push_back(i);
            mon.ok = false;
        }
    }
    return mon;
}

}  // namespace aprs
