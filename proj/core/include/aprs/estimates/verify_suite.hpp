#pragma once

#include <map>

#include "aprs/estimates/constants.hpp"
#include "aprs/estimates/convection.hpp"
#include "aprs/estimates/inequalities.hpp"

namespace aprs {

struct SuiteResult {
    std::map<std::string, std::vector<CheckRow>> rows;
    std::map<std::string, double> measured;  // max ratio per check family
    std::map<std::string, double> frozen;    // constants the rows were judged by
    std::vector<std::string> violations;
    bool pass = true;

    std::string summary_csv() const;
    std::string rows_csv(const std::string& check) const;
};

struct SuiteOptions {
    int n_h = 16;
    int n_v = 16;
    double l_h = 2.0;
    std::uint64_t first_seed = 1;
    int n_seeds = 50;
    int convection_seeds = 0;  // 0: use n_seeds
    int convection_times = 9;
    double slack = 1.05;
    // Safety factors applied when freezing measured maxima, so seed noise in
    // later corpora cannot masquerade as a regression.
    double freeze_safety = 1.10;
    double convection_freeze_safety = 1.30;
};

/// Measures every regression constant on the seeded corpus and freezes the
/// max ratios (x a unit safety factor) into `constants`.
SuiteResult calibrate_inequalities(const SuiteOptions& opt, FrozenConstants& constants);

/// Fresh-seed verification against frozen constants; a ratio above
/// frozen x slack is a violation.
SuiteResult verify_inequalities(const SuiteOptions& opt, const FrozenConstants& constants);

/// The exact-identity battery (reconstructions, projector algebra,
/// quasi-orthogonality, pressure structure); thresholds are fixed.
struct IdentityOptions {
    int n_h = 16;
    int n_v = 16;
    std::uint64_t first_seed = 1;
    int n_seeds = 100;
    double tol = 1e-11;
};
SuiteResult run_identity_suite(const IdentityOptions& opt);

}  // namespace aprs
