#pragma once

#include "aprs/coupled.hpp"

namespace aprs {

/// One smooth space-time test function: a low-mode spatial field times a
/// compactly supported C-infinity time bump, paired against one velocity
/// component.
struct TestFunction {
    SpectralField space;
    int component = 0;  // 0, 1: horizontal; 2: vertical
    double t0 = 0.0, t1 = 1.0;
    double bump(double t) const;
};

/// Fixed reproducible dictionary of 16 test functions on [0, t_end].
std::vector<TestFunction> test_dictionary(const LatticePtr& lattice, double t_end);

struct SweepPlan {
    RunConfig base;                  // lattice, nu_h, gamma, data, t_end
    std::vector<double> eps_values;  // strictly decreasing in (0, 1]
    double weak_order = 3.0;
    double eta = 0.25;
};

SweepPlan make_sweep_plan(const RunConfig& base, const SweepConfig& sweep);

struct MemberReport {
    double eps = 0.0;
    bool blew_up = false;
    double d_weak = 0.0;        // sup over the dictionary of |<u_eps - u, psi>|
    double l2_eps_uv = 0.0;     // ||eps u_eps^v||_{L2 L2}
    double eps_grad_bound = 0.0;  // eps ||grad_h u_eps^h||_{L2 L2}
    bool poincare_chain_ok = false;
    double l2loc_h_eta = 0.0;   // ||u_eps^h - u^h||_{L2 H^eta}
    double tendency_weak = 0.0;  // ||dt(u^h, eps u^v)||_{L2 H^-s}
    double sup_l2 = 0.0;        // sup_t ||(u^h, eps u^v)||_{L2}
    double l2_h_eta = 0.0;      // ||(u^h, eps u^v)||_{L2 H^eta}
};

struct ConvergenceReport {
    std::vector<MemberReport> members;
    double fitted_order_weak = 0.0;   // log2-log2 slope over the last 3 eps
    double fitted_order_strong = 0.0;
    bool any_blowup = false;
    bool tendency_uniform = false;  // max/min of the tendency column < 10

    std::string to_csv() const;
    std::string plot_data() const;  // log2 eps vs log2 distance pairs
};

/// L2-in-time of the (1 + |pi kk|^2)^{-s/2}-weighted coefficient norm.
double weak_norm(const std::vector<double>& times,
                 const std::vector<std::array<SpectralField, 3>>& series, double order);

/// Space-time pairing of a per-component series against a test function;
/// spectral route (equals physical quadrature for band-limited data).
double spacetime_pairing(const std::vector<double>& times,
                         const std::vector<SpectralField>& series, const TestFunction& psi);

/// Runs the primitive baseline and every NS member from shared data on one
/// lattice and clock, then measures all distances.
ConvergenceReport run_sweep(const SweepPlan& plan);

struct TendencyBoundReport {
    std::vector<double> eps;
    std::vector<double> weak_norms;
    double max_over_min = 0.0;
    bool bounded = false;  // max/min < 10
};

TendencyBoundReport time_derivative_bound_check(const ConvergenceReport& report);

}  // namespace aprs
