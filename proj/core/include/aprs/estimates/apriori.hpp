#pragma once

#include "aprs/coupled.hpp"
#include "aprs/estimates/constants.hpp"

namespace aprs {

/// Running check of the a priori bound along a recorded trajectory:
///   primitive:  L~inf(B) + (sqrt(nu)/2) L~2(grad_h)              <= c nu
///   ns_aniso :  L~inf(B) + sqrt(nu) L~2(grad_h)
///               + sqrt(eps^(gamma-2)) L~2(dz)                    <= C0 = c nu
struct AprioriMonitor {
    double bound = 0.0;
    std::vector<double> times;
    std::vector<double> linf_besov;
    std::vector<double> l2_grad_besov;
    std::vector<double> l2_dz_besov;
    std::vector<double> monitored;
    std::vector<std::size_t> violations;  // indices where monitored > bound
    bool ok = true;
};

AprioriMonitor attach_apriori_monitor(const CoupledTrajectory& traj,
                                      const FrozenConstants& constants);

}  // namespace aprs
