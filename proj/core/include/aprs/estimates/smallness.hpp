#pragma once

#include "aprs/config.hpp"
#include "aprs/estimates/constants.hpp"

namespace aprs {

/// Verdict of the initial-data smallness condition
///   ||u~_0||_{B^{0,1/2}} exp(||ubar_0|| / (C nu_h)) <= c nu_h,
/// with (C, c) from the calibration corpus.  NS runs measure the pair
/// (u~^h, eps u~^v).
struct SmallnessCheck {
    double tilde_norm = 0.0;
    double bar_norm = 0.0;
    double nu_h = 0.0;
    double c_cal = 0.0;
    double big_c_cal = 0.0;
    double lhs = 0.0;
    bool green = false;
};

SmallnessCheck check_smallness(const RunConfig& cfg, const FrozenConstants& constants);

struct SmallnessCalibration {
    double c = 0.0;       // largest green ||u~_0||_B / nu_h at zero mean flow
    double big_c = 0.0;   // exponential mean-flow sensitivity
    int runs = 0;
    std::vector<std::string> log;
};

/// Bisection protocol: the boundedness oracle is "no blow-up and
/// sup_t ||u~||_B <= 2 ||u~_0||_B on [0, T_cal]".  c comes from the largest
/// uniformly green amplitude over the seed corpus; C from a least-squares
/// fit of ln A*(m) = ln(c nu) - m/(C nu) across mean-flow magnitudes m.
SmallnessCalibration calibrate_smallness(double nu_h, int n_seeds, double t_cal,
                                         FrozenConstants& constants);

}  // namespace aprs
