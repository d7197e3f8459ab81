#include "aprs/estimates/osgood.hpp"

#include <cmath>

#include "aprs/errors.hpp"

namespace aprs {
namespace {

double adaptive_simpson(double (*f)(OsgoodModulus, double), OsgoodModulus m, double a, double b,
                        double fa, double fm, double fb, double whole, double tol, int depth) {
    const double mid = 0.5 * (a + b);
    const double lm = 0.5 * (a + mid), rm = 0.5 * (mid + b);
    const double flm = f(m, lm), frm = f(m, rm);
    const double left = (mid - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - mid) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(f, m, a, mid, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, mid, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double inv_mu(OsgoodModulus m, double r) { return 1.0 / osgood_mu(m, r); }

double domain_sup(OsgoodModulus m) {
    switch (m) {
        case OsgoodModulus::gronwall: return 1e300;
        case OsgoodModulus::log: return std::exp(1.0) * (1.0 - 1e-12);
        case OsgoodModulus::loglog: return 1.0 - 1e-14;
    }
    return 1.0;
}

}  // namespace

double osgood_mu(OsgoodModulus m, double r) {
    switch (m) {
        case OsgoodModulus::gronwall: return r;
        case OsgoodModulus::log: return r * (1.0 - std::log(r));
        case OsgoodModulus::loglog: {
            const double s = 1.0 - std::log(r);
            return r * s * std::log(s);
        }
    }
    return r;
}

double osgood_antiderivative(OsgoodModulus mu, double x, double y) {
    if (!(x > 0) || !(y >= x)) throw DomainError("osgood_antiderivative: need 0 < x <= y");
    if (y == x) return 0.0;
    const double fa = inv_mu(mu, x), fb = inv_mu(mu, y);
    const double mid = 0.5 * (x + y);
    const double fm = inv_mu(mu, mid);
    const double whole = (y - x) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(inv_mu, mu, x, y, fa, fm, fb, whole, 1e-13 * (1.0 + std::abs(whole)),
                            48);
}

OsgoodBound osgood_integrate(double a, const std::vector<double>& times,
                             const std::vector<double>& gamma_values, OsgoodModulus mu) {
    if (times.size() != gamma_values.size())
        throw DomainError("osgood_integrate: times and gamma lengths differ");
    if (a < 0) throw DomainError("osgood_integrate: a must be nonnegative");
    if (a >= 1.0)
        throw DomainError(
            "osgood_integrate: a >= 1 lies outside the antiderivative domain; rescale rho");

    OsgoodBound out;
    out.times = times;
    out.values.assign(times.size(), 0.0);
    if (a == 0.0) return out;  // rho identically zero

    // Cumulative int gamma (trapezoid on the sample grid).
    std::vector<double> big_gamma(times.size(), 0.0);
    for (std::size_t i = 1; i < times.size(); ++i) {
        big_gamma[i] = big_gamma[i - 1] + 0.5 * (times[i] - times[i - 1]) *
                                              (gamma_values[i - 1] + gamma_values[i]);
        if (gamma_values[i] < 0) throw DomainError("osgood_integrate: gamma must be >= 0");
    }

    const double sup = domain_sup(mu);
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double target = big_gamma[i];
        if (target <= 0) {
            out.values[i] = a;
            continue;
        }
        // Monotone inversion of F(B) = int_a^B dr/mu(r) = target.
        double lo = a, hi = std::min(sup, std::max(2.0 * a, 1e-3));
        int expand = 0;
        while (osgood_antiderivative(mu, a, hi) < target && ++expand < 120) {
            lo = hi;
            hi = (2.0 * hi < sup) ? 2.0 * hi : 0.5 * (hi + sup);
            if (sup - hi < 1e-15 * sup) break;
        }
        if (osgood_antiderivative(mu, a, hi) < target) {
            out.values[i] = sup;  // bound saturates the modulus domain
            continue;
        }
        for (int it = 0; it < 80; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (osgood_antiderivative(mu, a, mid) < target)
                lo = mid;
            else
                hi = mid;
        }
        out.values[i] = 0.5 * (lo + hi);
    }
    return out;
}

}  // namespace aprs
