#include "aprs/integrator.hpp"

#include "aprs/errors.hpp"

namespace aprs {
namespace {

void axpy(FlowState& y, double a, const FlowState& x) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i].axpy(a, x[i]);
}

}  // namespace

void ifrk4_step(const FlowSystem& sys, FlowState& y, double dt) {
    const FlowState k1 = sys.rhs(y);

    FlowState u = y;
    axpy(u, 0.5 * dt, k1);
    sys.apply_diffusion(u, 0.5 * dt);
    const FlowState k2 = sys.rhs(u);

    u = y;
    sys.apply_diffusion(u, 0.5 * dt);
    axpy(u, 0.5 * dt, k2);
    const FlowState k3 = sys.rhs(u);

    u = y;
    sys.apply_diffusion(u, 0.5 * dt);
    FlowState k3e = k3;
    sys.apply_diffusion(k3e, 0.5 * dt);
    axpy(u, dt, k3e);
    const FlowState k4 = sys.rhs(u);

    // y+ = E1 y + dt/6 (E1 k1 + 2 E1/2 (k2 + k3) + k4)
    sys.apply_diffusion(y, dt);
    FlowState acc = k1;
    sys.apply_diffusion(acc, dt);
    axpy(y, dt / 6.0, acc);

    acc = k2;
    axpy(acc, 1.0, k3);
    sys.apply_diffusion(acc, 0.5 * dt);
    axpy(y, dt / 3.0, acc);

    axpy(y, dt / 6.0, k4);
    sys.postprocess(y);
}

void check_bounded(const FlowState& y, long step, double time) {
    double m = 0.0;
    bool ok = true;
    for (const auto& f : y) {
        if (!f.finite()) ok = false;
        m = std::max(m, f.max_abs_coeff());
    }
    if (!ok || m > 1e12)
        throw BlowUpError("simulation blow-up: coefficient magnitude " + std::to_string(m) +
                              " at t = " + std::to_string(time),
                          step, time, m);
}

}  // namespace aprs
