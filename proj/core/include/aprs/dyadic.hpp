#pragma once

#include <functional>
#include <vector>

#include "aprs/field.hpp"

namespace aprs {

/// Smooth dyadic partition of unity in the vertical frequency:
///   chi == 1 on [-1,1], supported in [-4/3, 4/3];
///   phi(t) = chi(t/2) - chi(t), supported in {1 <= |t| <= 8/3};
///   chi(t) + sum_{q>=0} phi(2^-q t) = 1 (telescoping, exact in FP).
///
/// Built from the C-infinity plateau ramp(s) = e(s) / (e(s) + e(1-s)) with
/// e(s) = exp(-1/s) on s > 0.
class DyadicPartition {
  public:
    DyadicPartition();

    double chi(double t) const;
    double phi(double t) const;

    /// Multiplier of the block Delta_q at vertical frequency kk3:
    /// chi(|kk3|) for q = -1, phi(|kk3|/2^q) for q >= 0, 0 for q <= -2.
    double block_multiplier(int q, double kk3) const;

    /// Multiplier of S_q = sum_{q' <= q-1} Delta_q'; equals chi(|kk3|/2^q)
    /// for q >= 0 and vanishes for q < 0.
    double low_cut_multiplier(int q, double kk3) const;

    /// Largest block index that can be nonzero on the lattice.
    static int q_max(const Lattice& lat);
};

const DyadicPartition& dyadic_partition();

/// Vertical dyadic block Delta_q^v.  Horizontal content untouched; the
/// declared parity survives (the multiplier is even in k3).
SpectralField dyadic_block(const SpectralField& f, int q);

/// Low-frequency cut S_q^v = sum_{q' <= q-1} Delta_q'^v.
SpectralField low_freq_cut(const SpectralField& f, int q);

/// All blocks q = -1..q_max of one field.
struct DyadicLadder {
    std::vector<SpectralField> blocks;  // index 0 <-> q = -1
    double source_norm_l2 = 0.0;

    int q_min() const { return -1; }
    int q_max() const { return static_cast<int>(blocks.size()) - 2; }
    const SpectralField& block(int q) const { return blocks[q + 1]; }

    /// || sum_q blocks[q] - source ||_L2 / ||source||_L2.
    double reconstruction_residual(const SpectralField& source) const;
};

DyadicLadder make_ladder(const SpectralField& f);

/// Per-block L2 norms of a component list (components enter as an l2 sum
/// inside each block), plus derivative-weighted variants used by the
/// running trajectory accumulators.
std::vector<double> block_l2_norms(const std::vector<const SpectralField*>& comps);
std::vector<double> block_grad_h_l2_norms(const std::vector<const SpectralField*>& comps);
std::vector<double> block_dz_l2_norms(const std::vector<const SpectralField*>& comps);

}  // namespace aprs
