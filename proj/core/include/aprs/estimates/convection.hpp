#pragma once

#include "aprs/estimates/inequalities.hpp"
#include "aprs/velocity.hpp"

namespace aprs {

/// Divergence-free vector trajectory a(t) and scalar trajectory b(t) on a
/// shared time grid, for exercising the time-integrated convection bounds.
struct ConvectionData {
    std::vector<double> times;
    std::vector<VelocityState> a;
    std::vector<SpectralField> b;
    // z-constant divergence-free pair for the mean-coupling variant
    std::vector<std::array<SpectralField, 2>> mean;
};

/// Smooth seeded synthetic trajectories with zero full mean (the torus
/// hypothesis of the convection bounds).
ConvectionData synthetic_convection_data(const LatticePtr& lat, std::uint64_t seed, int n_times,
                                         double t_end);

enum class ConvectionLemma {
    anisotropic,    // bracket: ||a||^{1/2} ||grad a||^{1/2} ||b||^{1/2} ||grad b||^{3/2}
                    //          + ||grad a|| ||b|| ||grad b||   (tilde norms)
    torus,          // bracket: ||grad a|| ||b|| ||grad b|| + ||a|| ||grad b||^2
    mean_coupling,  // bracket: ||grad ubar||_{L2 L2} ||b|| ||grad b||
};

struct ConvectionResult {
    std::vector<double> lhs_q;    // int |(Delta_q(a.grad b), Delta_q b)| dt
    std::vector<double> rhs_q;    // c_q 2^{-q} bracket with sum sqrt(c_q) = 1
    double bracket = 0.0;
    double constant = 0.0;        // (sum_q sqrt(2^q lhs_q / bracket))^2
    std::vector<double> c_q;      // normalized block sequence
    bool skipped = false;
    std::string note;
};

/// Evaluates one convection bound on a trajectory pair.  The measured
/// constant is the smallest C with lhs_q <= C c_q 2^{-q} bracket for a
/// sequence with sum sqrt(c_q) <= 1; re-runs assert it against the frozen
/// corpus value.  Violated mean-value hypotheses mark the result skipped.
ConvectionResult convection_lemma_check(const ConvectionData& data, ConvectionLemma lemma);

/// (lhs, rhs, ratio) for one block index against a frozen constant.
CheckRow convection_row(const ConvectionResult& res, ConvectionLemma lemma, std::uint64_t seed,
                        int q, double frozen_c);

}  // namespace aprs
