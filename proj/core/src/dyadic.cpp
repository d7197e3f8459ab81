#include "aprs/dyadic.hpp"

#include <cmath>

#include "aprs/errors.hpp"

namespace aprs {
namespace {

double bump(double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; }

// 0 for s <= 0, 1 for s >= 1, strictly increasing C-infinity in between.
double ramp(double s) {
    if (s <= 0.0) return 0.0;
    if (s >= 1.0) return 1.0;
    const double a = bump(s);
    return a / (a + bump(1.0 - s));
}

}  // namespace

DyadicPartition::DyadicPartition() = default;

double DyadicPartition::chi(double t) const {
    // 1 on [-1,1], 0 outside [-4/3,4/3].
    return 1.0 - ramp(3.0 * (std::abs(t) - 1.0));
}

double DyadicPartition::phi(double t) const { return chi(0.5 * t) - chi(t); }

double DyadicPartition::block_multiplier(int q, double kk3) const {
    if (q <= -2) return 0.0;
    if (q == -1) return chi(std::abs(kk3));
    return phi(std::abs(kk3) / static_cast<double>(1 << q));
}

double DyadicPartition::low_cut_multiplier(int q, double kk3) const {
    if (q < 0) return 0.0;
    return chi(std::abs(kk3) / static_cast<double>(1 << q));
}

int DyadicPartition::q_max(const Lattice& lat) {
    const int half = lat.n_v() / 2;
    return static_cast<int>(std::floor(std::log2(static_cast<double>(half)))) + 1;
}

const DyadicPartition& dyadic_partition() {
    static const DyadicPartition p;
    return p;
}

SpectralField dyadic_block(const SpectralField& f, int q) {
    const DyadicPartition& p = dyadic_partition();
    SpectralField g = f;
    if (q <= -2) {
        g.set_zero();
        return g;
    }
    const Lattice& lat = f.lattice();
    std::vector<double> mult(lat.n_v());
    for (int i3 = 0; i3 < lat.n_v(); ++i3)
        mult[i3] = p.block_multiplier(q, lat.freq_v(Lattice::unwrap(i3, lat.n_v())));
    auto& c = g.coeffs();
    const int nh = lat.n_h(), nv = lat.n_v();
    for (std::size_t i = 0; i < c.size(); ++i) c[i] *= mult[i % nv];
    (void)nh;
    return g;
}

SpectralField low_freq_cut(const SpectralField& f, int q) {
    const DyadicPartition& p = dyadic_partition();
    SpectralField g = f;
    if (q < 0) {
        g.set_zero();
        return g;
    }
    const Lattice& lat = f.lattice();
    std::vector<double> mult(lat.n_v());
    for (int i3 = 0; i3 < lat.n_v(); ++i3)
        mult[i3] = p.low_cut_multiplier(q, lat.freq_v(Lattice::unwrap(i3, lat.n_v())));
    auto& c = g.coeffs();
    const int nv = lat.n_v();
    for (std::size_t i = 0; i < c.size(); ++i) c[i] *= mult[i % nv];
    return g;
}

double DyadicLadder::reconstruction_residual(const SpectralField& source) const {
    SpectralField sum(source.lattice_ptr(), source.parity());
    for (const auto& b : blocks) sum += b;
    sum -= source;
    const double n = source.l2_norm();
    return n > 0 ? sum.l2_norm() / n : sum.l2_norm();
}

DyadicLadder make_ladder(const SpectralField& f) {
    DyadicLadder ladder;
    const int qm = DyadicPartition::q_max(f.lattice());
    ladder.blocks.reserve(qm + 2);
    for (int q = -1; q <= qm; ++q) ladder.blocks.push_back(dyadic_block(f, q));
    ladder.source_norm_l2 = f.l2_norm();
    return ladder;
}

namespace {

enum class BlockWeight { plain, grad_h, dz };

// Fused single pass over the coefficients: per-block squared multipliers by
// vertical row, optional derivative weights, no temporary fields.
std::vector<double> block_profile(const std::vector<const SpectralField*>& comps,
                                  BlockWeight weight) {
    if (comps.empty()) throw DomainError("block_l2_norms: no components");
    const Lattice& lat = comps.front()->lattice();
    const DyadicPartition& p = dyadic_partition();
    const int qm = DyadicPartition::q_max(lat);
    const int nh = lat.n_h(), nv = lat.n_v();
    constexpr double pi = 3.14159265358979323846;

    std::vector<double> mult_sq(static_cast<std::size_t>(qm + 2) * nv);
    for (int q = -1; q <= qm; ++q)
        for (int i3 = 0; i3 < nv; ++i3) {
            const double m = p.block_multiplier(q, lat.freq_v(Lattice::unwrap(i3, nv)));
            mult_sq[static_cast<std::size_t>(q + 1) * nv + i3] = m * m;
        }
    std::vector<double> dz_sq(nv, 1.0);
    if (weight == BlockWeight::dz)
        for (int i3 = 0; i3 < nv; ++i3) {
            const double g = pi * lat.freq_v(Lattice::unwrap(i3, nv));
            dz_sq[i3] = g * g;
        }

    std::vector<double> acc(qm + 2, 0.0);
    for (const SpectralField* f : comps) {
        require_same_lattice(*comps.front(), *f);
        const auto& c = f->coeffs();
        std::size_t idx = 0;
        for (int i1 = 0; i1 < nh; ++i1) {
            const double g1 = pi * lat.freq_h(Lattice::unwrap(i1, nh));
            for (int i2 = 0; i2 < nh; ++i2) {
                const double g2 = pi * lat.freq_h(Lattice::unwrap(i2, nh));
                const double gh_sq = g1 * g1 + g2 * g2;
                for (int i3 = 0; i3 < nv; ++i3, ++idx) {
                    double w = std::norm(c[idx]);
                    if (weight == BlockWeight::grad_h)
                        w *= gh_sq;
                    else if (weight == BlockWeight::dz)
                        w *= dz_sq[i3];
                    if (w == 0.0) continue;
                    for (int q = -1; q <= qm; ++q) {
                        const double m = mult_sq[static_cast<std::size_t>(q + 1) * nv + i3];
                        if (m != 0.0) acc[q + 1] += m * w;
                    }
                }
            }
        }
    }
    for (double& v : acc) v = std::sqrt(v);
    return acc;
}

}  // namespace

std::vector<double> block_l2_norms(const std::vector<const SpectralField*>& comps) {
    return block_profile(comps, BlockWeight::plain);
}

std::vector<double> block_grad_h_l2_norms(const std::vector<const SpectralField*>& comps) {
    return block_profile(comps, BlockWeight::grad_h);
}

std::vector<double> block_dz_l2_norms(const std::vector<const SpectralField*>& comps) {
    return block_profile(comps, BlockWeight::dz);
}

}  // namespace aprs
