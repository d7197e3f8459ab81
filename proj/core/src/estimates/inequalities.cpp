#include "aprs/estimates/inequalities.hpp"

#include <cmath>

#include "aprs/dyadic.hpp"
#include "aprs/initial_data.hpp"
#include "aprs/norms.hpp"
#include "aprs/operators.hpp"
#include "aprs/paraproduct.hpp"
#include "aprs/solver2d.hpp"

namespace aprs {
namespace {

const double kInf = std::numeric_limits<double>::infinity();

CheckRow row(const std::string& check, std::uint64_t seed, int q, double lhs, double rhs) {
    CheckRow r{check, seed, q, lhs, rhs, 0.0, false, ""};
    r.ratio = rhs > 0 ? lhs / rhs : (lhs > 0 ? kInf : 0.0);
    return r;
}

SpectralField annulus_field(const LatticePtr& lat, std::uint64_t seed, int q) {
    FieldRecipe rec;
    rec.stream = 40 + static_cast<std::uint64_t>(q);
    rec.band_h = lat->dealias_k_h();
    rec.band_v = lat->max_k_v();
    auto f = seeded_field(lat, seed, rec);
    f = dyadic_block(f, q);
    const double n = f.l2_norm();
    if (n > 0) f *= 1.0 / n;
    return f;
}

// Bernstein: derivative growth 2^{qk} on single-annulus fields, both sides,
// plus the L_v^inf lift 2^{q/2}.
std::vector<CheckRow> bernstein(const LatticePtr& lat, std::uint64_t seed) {
    std::vector<CheckRow> rows;
    const int qm = DyadicPartition::q_max(*lat);
    for (int q = 1; q < qm; ++q) {
        auto f = annulus_field(lat, seed, q);
        if (f.l2_norm() == 0.0) continue;
        const double pow_q = std::pow(2.0, q);
        SpectralField dz = derivative(f, Axis::z);
        SpectralField dzz = derivative(dz, Axis::z);
        rows.push_back(row("bernstein_upper", seed, q, dz.l2_norm(), pow_q * f.l2_norm()));
        rows.push_back(row("bernstein_lower", seed, q, pow_q * f.l2_norm(), dz.l2_norm()));
        rows.push_back(row("bernstein_upper", seed, q, std::sqrt(dzz.l2_norm()),
                           pow_q * std::sqrt(f.l2_norm())));
        rows.push_back(row("bernstein_lower", seed, q, pow_q * std::sqrt(f.l2_norm()),
                           std::sqrt(dzz.l2_norm())));
        const double linf_v =
            anisotropic_lebesgue_norm(f, 2.0, kInf, NormOrder::h_outer);
        rows.push_back(
            row("bernstein_vertical_linf", seed, q, linf_v, std::pow(2.0, 0.5 * q) * f.l2_norm()));
    }
    return rows;
}

std::vector<CheckRow> gagliardo_nirenberg(const LatticePtr& lat, std::uint64_t seed) {
    FieldRecipe rec;
    rec.stream = 50;
    rec.band_h = lat->dealias_k_h();
    rec.band_v = lat->dealias_k_v();
    rec.zero_horizontal_mean = true;
    auto u = seeded_field(lat, seed, rec);
    const double grad = std::sqrt(grad_h_energy({&u}));
    const double mixed = anisotropic_lebesgue_norm(u, 4.0, 2.0, NormOrder::v_outer);
    std::vector<CheckRow> rows;
    rows.push_back(
        row("gn_classical", seed, 0, mixed, std::sqrt(u.l2_norm()) * std::sqrt(grad)));

    FieldRecipe rec2 = rec;
    rec2.stream = 51;
    rec2.zero_horizontal_mean = false;
    auto v = seeded_field(lat, seed, rec2);
    const double grad2 = std::sqrt(grad_h_energy({&v}));
    const double mixed2 = anisotropic_lebesgue_norm(v, 4.0, 2.0, NormOrder::v_outer);
    rows.push_back(row("gn_general", seed, 0, mixed2,
                       std::sqrt(v.l2_norm()) * std::sqrt(grad2) + v.l2_norm()));
    return rows;
}

std::vector<CheckRow> besov_corollary(const LatticePtr& lat, std::uint64_t seed) {
    FieldRecipe rec;
    rec.stream = 52;
    rec.band_h = lat->dealias_k_h();
    rec.band_v = lat->dealias_k_v();
    auto u = seeded_field(lat, seed, rec);
    const double lhs = anisotropic_lebesgue_norm(u, 2.0, kInf, NormOrder::h_outer);
    return {row("besov_vertical_linf", seed, 0, lhs, besov_norm(u).b0_half)};
}

std::vector<CheckRow> commutator_estimate(const LatticePtr& lat, std::uint64_t seed) {
    FieldRecipe ru;
    ru.stream = 53;
    ru.band_h = 2;
    ru.band_v = 2;
    auto u = seeded_field(lat, seed, ru);
    FieldRecipe rw;
    rw.stream = 54;
    rw.band_h = lat->dealias_k_h();
    rw.band_v = lat->dealias_k_v();
    auto w = seeded_field(lat, seed, rw);
    const double dzu_linf =
        anisotropic_lebesgue_norm(derivative(u, Axis::z), kInf, kInf, NormOrder::v_outer);
    std::vector<CheckRow> rows;
    const int qm = DyadicPartition::q_max(*lat);
    for (int q = 0; q <= qm; ++q) {
        SpectralField c = commutator(q, u, w);
        if (c.l2_norm() == 0.0 && q > 2) continue;
        rows.push_back(row("commutator", seed, q, c.l2_norm(),
                           std::pow(2.0, -q) * dzu_linf * w.l2_norm()));
    }
    return rows;
}

std::vector<CheckRow> poincare_corpus(const LatticePtr& lat, std::uint64_t seed) {
    std::vector<CheckRow> rows;
    FieldRecipe odd;
    odd.stream = 55;
    odd.band_h = lat->dealias_k_h();
    odd.band_v = lat->dealias_k_v();
    odd.parity = Parity::odd;
    auto f = seeded_field(lat, seed, odd);
    rows.push_back(row("poincare_vertical_odd", seed, 0, f.l2_norm(),
                       2.0 * derivative(f, Axis::z).l2_norm()));

    FieldRecipe gen;
    gen.stream = 56;
    gen.band_h = lat->dealias_k_h();
    gen.band_v = lat->dealias_k_v();
    auto g = seeded_field(lat, seed, gen);
    SpectralField fluct = vertical_fluctuation(g);
    rows.push_back(row("poincare_vertical_mean", seed, 0, fluct.l2_norm(),
                       2.0 * derivative(g, Axis::z).l2_norm()));

    SpectralField h = g;
    h.transform_modes(
        [](int k1, int k2, int, Complex c) { return (k1 == 0 && k2 == 0) ? Complex(0.0) : c; });
    rows.push_back(
        row("poincare_horizontal", seed, 0, h.l2_norm(), std::sqrt(grad_h_energy({&h}))));
    return rows;
}

std::vector<CheckRow> minkowski_order(const LatticePtr& lat, std::uint64_t seed) {
    FieldRecipe rec;
    rec.stream = 57;
    rec.band_h = lat->dealias_k_h();
    rec.band_v = lat->dealias_k_v();
    auto f = seeded_field(lat, seed, rec);
    std::vector<CheckRow> rows;
    // outer exponent >= inner exponent is the small side, both placements
    rows.push_back(row("minkowski_order", seed, 0,
                       anisotropic_lebesgue_norm(f, 2.0, 4.0, NormOrder::v_outer),
                       anisotropic_lebesgue_norm(f, 2.0, 4.0, NormOrder::h_outer)));
    rows.push_back(row("minkowski_order", seed, 1,
                       anisotropic_lebesgue_norm(f, 4.0, 2.0, NormOrder::h_outer),
                       anisotropic_lebesgue_norm(f, 4.0, 2.0, NormOrder::v_outer)));
    rows.push_back(row("minkowski_order", seed, 2,
                       anisotropic_lebesgue_norm(f, 1.0, 2.0, NormOrder::v_outer),
                       anisotropic_lebesgue_norm(f, 1.0, 2.0, NormOrder::h_outer)));
    return rows;
}

std::vector<CheckRow> sobolev_sqrt_p(const LatticePtr& lat, std::uint64_t seed) {
    FieldRecipe rec;
    rec.stream = 58;
    rec.band_h = lat->dealias_k_h();
    rec.band_v = 0;
    rec.z_constant = true;
    rec.zero_horizontal_mean = true;
    auto u = seeded_field(lat, seed, rec);
    const double l2 = u.l2_norm();
    const double grad = std::sqrt(grad_h_energy({&u}));
    std::vector<CheckRow> rows;
    for (double p : {1.0, 2.0, 4.0, 8.0}) {
        const double lhs = lp_norm(u, 2.0 * p);
        const double rhs =
            std::sqrt(p) * std::pow(l2, 1.0 / p) * std::pow(grad, 1.0 - 1.0 / p);
        rows.push_back(row("sobolev_sqrt_p", seed, static_cast<int>(p), lhs, rhs));
    }
    return rows;
}

std::vector<CheckRow> sobolev_embedding(const LatticePtr& lat, std::uint64_t seed) {
    FieldRecipe rec;
    rec.stream = 59;
    rec.band_h = lat->dealias_k_h();
    rec.band_v = 0;
    rec.z_constant = true;
    auto u = seeded_field(lat, seed, rec);
    // (d, s, p) = (2, 1/2, 4): ||u||_L4 <= C sqrt(p) ||u||_{H^{1/2}}.
    const double lhs = lp_norm(u, 4.0);
    const double rhs = 2.0 * sobolev_norm(u, 0.5);
    return {row("sobolev_embedding_2d", seed, 0, lhs, rhs)};
}

}  // namespace

const std::vector<InequalityCheck>& inequality_corpus() {
    static const std::vector<InequalityCheck> corpus = {
        {"bernstein", bernstein},
        {"gagliardo_nirenberg", gagliardo_nirenberg},
        {"besov_corollary", besov_corollary},
        {"commutator", commutator_estimate},
        {"poincare", poincare_corpus},
        {"minkowski", minkowski_order},
        {"sobolev_sqrt_p", sobolev_sqrt_p},
        {"sobolev_embedding", sobolev_embedding},
    };
    return corpus;
}

PoincareReport poincare_checks(const SpectralField& f, double horizontal_c) {
    PoincareReport rep;
    const double dz = derivative(f, Axis::z).l2_norm();
    if (f.parity() == Parity::odd) {
        rep.rows.push_back(row("poincare_vertical_odd", 0, 0, f.l2_norm(), 2.0 * dz));
    }
    SpectralField fluct = vertical_fluctuation(f);
    rep.rows.push_back(row("poincare_vertical_mean", 0, 0, fluct.l2_norm(), 2.0 * dz));
    SpectralField h = f;
    h.transform_modes(
        [](int k1, int k2, int, Complex c) { return (k1 == 0 && k2 == 0) ? Complex(0.0) : c; });
    // Horizontal analogue with a supplied (frozen) constant.
    rep.rows.push_back(row("poincare_horizontal", 0, 0, h.l2_norm(),
                           horizontal_c * std::sqrt(grad_h_energy({&h}))));
    for (const auto& r : rep.rows)
        if (r.ratio > 1.0) rep.all_hold = false;
    return rep;
}

}  // namespace aprs
