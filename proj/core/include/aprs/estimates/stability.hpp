#pragma once

#include "aprs/coupled.hpp"
#include "aprs/estimates/constants.hpp"
#include "aprs/estimates/osgood.hpp"

namespace aprs {

/// Two-solution experiment: phi(t) = ||w^h(t)||^2_{H^{0,-1/2}} for
/// w = u_2 - u_1 (NS: the (w^h, eps w^v) pair), compared against the Osgood
/// bound with the double-log modulus and integrand C f(t).
struct StabilityRecord {
    std::vector<double> times;
    std::vector<double> phi;
    std::vector<double> f_series;
    std::vector<double> osgood_bound;
    // both modulus diagnostics are recorded; only the double-log one is the
    // asserted bound
    std::vector<double> modulus_loglog;   // (1 - ln phi) ln(1 - ln phi)
    std::vector<double> modulus_logform;  // ln(1+e+1/||w||^2_{H^{0,1/2}}) ln(ln(...))
    double margin = 0.0;                  // min over t of bound - phi
    bool ok = true;
};

StabilityRecord stability_experiment(const RunConfig& cfg, double perturbation_scale,
                                     const FrozenConstants& constants);

/// Smallest C for which phi stays below the Osgood bound on the given
/// record; used to freeze "stability_C".
double fit_stability_constant(const StabilityRecord& rec);

/// Re-evaluates the bound with a different constant.
void apply_stability_bound(StabilityRecord& rec, double constant);

}  // namespace aprs
