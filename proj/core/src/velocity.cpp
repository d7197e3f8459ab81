#include "aprs/velocity.hpp"

#include <cmath>

namespace aprs {

double VelocityState::divergence_residual() const {
    SpectralField div = divergence_h(uh1, uh2);
    div += derivative(uv, Axis::z);
    const double grad = gradient_l2();
    return grad > 0 ? div.l2_norm() / grad : div.l2_norm();
}

double VelocityState::parity_residual() const {
    return std::max({uh1.parity_residual(), uh2.parity_residual(), uv.parity_residual()});
}

double VelocityState::gradient_l2() const {
    double s = 0.0;
    for (const SpectralField* f : {&uh1, &uh2, &uv}) {
        for (Axis a : {Axis::x, Axis::y, Axis::z}) {
            const double n = derivative(*f, a).l2_norm();
            s += n * n;
        }
    }
    return std::sqrt(s);
}

double VelocityState::l2_norm() const {
    const double a = uh1.l2_norm(), b = uh2.l2_norm(), c = uv.l2_norm();
    return std::sqrt(a * a + b * b + c * c);
}

VelocityState make_hydrostatic_state(const SpectralField& uh1, const SpectralField& uh2,
                                     double time) {
    return VelocityState(uh1, uh2, reconstruct_vertical(uh1, uh2), time);
}

}  // namespace aprs
