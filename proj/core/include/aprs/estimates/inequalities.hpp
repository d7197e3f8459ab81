#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "aprs/field.hpp"

namespace aprs {

/// One measured instance of an inequality: ratio = lhs / rhs, where rhs
/// carries no constant; the regression constant is the frozen max ratio.
struct CheckRow {
    std::string check;
    std::uint64_t seed = 0;
    int q = 0;
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
    bool skipped = false;
    std::string note;
};

struct InequalityCheck {
    std::string name;
    std::function<std::vector<CheckRow>(const LatticePtr&, std::uint64_t)> run;
};

/// The per-field inequality battery: Bernstein, Gagliardo-Nirenberg
/// (classical and general), the B^{0,1/2} embedding corollary, the
/// commutator estimate, both Poincare inequalities, the order-of-integration
/// inequality, the sqrt(p) Lebesgue growth bounds, and the 2D Sobolev
/// embedding.  Convection lemmas live in convection.hpp (they need
/// trajectories).
const std::vector<InequalityCheck>& inequality_corpus();

/// Poincare report for a single field (spec operation).
struct PoincareReport {
    std::vector<CheckRow> rows;
    bool all_hold = true;
};
PoincareReport poincare_checks(const SpectralField& f, double horizontal_c = 2.0);

}  // namespace aprs
