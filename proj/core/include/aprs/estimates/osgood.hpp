#pragma once

#include <vector>

namespace aprs {

/// Comparison modulus for the Osgood bound.
enum class OsgoodModulus {
    gronwall,  // mu(r) = r               (closed-form cross-check)
    log,       // mu(r) = r (1 - ln r)
    loglog,    // mu(r) = r (1 - ln r) ln(1 - ln r)
};

double osgood_mu(OsgoodModulus m, double r);

struct OsgoodBound {
    std::vector<double> times;
    std::vector<double> values;
};

/// Sharp comparison bound for rho(t) <= a + int_0^t gamma mu(rho):
/// B(t) solves int_a^B dr/mu(r) = int_0^t gamma, by adaptive quadrature of
/// the antiderivative and monotone inversion.  a = 0 gives the zero bound;
/// a >= 1 is outside the modulus domain and is rejected (rescale rho first).
OsgoodBound osgood_integrate(double a, const std::vector<double>& times,
                             const std::vector<double>& gamma_values, OsgoodModulus mu);

/// int_x^y dr / mu(r) by adaptive Simpson (x <= y within the modulus domain).
double osgood_antiderivative(OsgoodModulus mu, double x, double y);

}  // namespace aprs
