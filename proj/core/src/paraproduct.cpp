#include "aprs/paraproduct.hpp"

#include "aprs/operators.hpp"
#include "aprs/transform.hpp"

namespace aprs {

BonyDecomposition bony_decompose(const SpectralField& u, const SpectralField& w) {
    require_same_lattice(u, w);
    const int qm = DyadicPartition::q_max(u.lattice());
    BonyDecomposition d{SpectralField(u.lattice_ptr()), SpectralField(u.lattice_ptr()),
                        SpectralField(u.lattice_ptr())};
    // Pair coverage: (j <= q-2) + (q <= j-2) + (|j-q| <= 1) partitions all
    // block pairs, so the three sums rebuild the product exactly.
    for (int q = 1; q <= qm; ++q) {
        d.t_u_w += multiply_dealiased(low_freq_cut(u, q - 1), dyadic_block(w, q));
        d.t_w_u += multiply_dealiased(low_freq_cut(w, q - 1), dyadic_block(u, q));
    }
    for (int q = -1; q <= qm; ++q) {
        const SpectralField uq = dyadic_block(u, q);
        for (int i = -1; i <= 1; ++i) {
            if (q + i < -1 || q + i > qm) continue;
            d.remainder += multiply_dealiased(uq, dyadic_block(w, q + i));
        }
    }
    return d;
}

CheminDecomposition chemin_decompose(const SpectralField& a_v, const SpectralField& b, int q) {
    require_same_lattice(a_v, b);
    const int qm = DyadicPartition::q_max(a_v.lattice());
    const SpectralField dzb = derivative(b, Axis::z );
    CheminDecomposition d{SpectralField(a_v.lattice_ptr()), SpectralField(a_v.lattice_ptr()),
                          SpectralField(a_v.lattice_ptr()), SpectralField(a_v.lattice_ptr())};

    const SpectralField s_qm1_a = low_freq_cut(a_v, q - 1);
    d.a1 = multiply_dealiased(s_qm1_a, dyadic_block(dzb, q));

    for (int qp = std::max(-1, q - 4); qp <= std::min(qm, q + 4); ++qp) {
        const SpectralField s_a = low_freq_cut(a_v, qp - 1);
        const SpectralField dzb_qp = dyadic_block(dzb, qp);
        // commutator part
        d.a2 += dyadic_block(multiply_dealiased(s_a, dzb_qp), q);
        d.a2 -= multiply_dealiased(s_a, dyadic_block(dzb_qp, q));
        // low-cut mismatch (nonzero only where the double block survives)
        SpectralField mismatch = s_a;
        mismatch -= s_qm1_a;
        d.a3 += multiply_dealiased(mismatch, dyadic_block(dzb_qp, q));
    }

    for (int qp = std::max(-1, q - 4); qp <= qm; ++qp) {
        d.a4 += dyadic_block(multiply_dealiased(low_freq_cut(dzb, qp + 2), dyadic_block(a_v, qp)),
                             q);
    }
    return d;
}

SpectralField commutator(int q, const SpectralField& u, const SpectralField& w) {
    require_same_lattice(u, w);
    SpectralField c = dyadic_block(multiply_dealiased(u, w), q);
    c -= multiply_dealiased(u, dyadic_block(w, q));
    return c;
}

}  // namespace aprs
