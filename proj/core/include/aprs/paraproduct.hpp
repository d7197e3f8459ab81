#pragma once

#include <array>

#include "aprs/dyadic.hpp"

namespace aprs {

/// Exact vertical Bony splitting of the (dealiased) product:
/// u w = T_u w + T_w u + R(u, w).
struct BonyDecomposition {
    SpectralField t_u_w;
    SpectralField t_w_u;
    SpectralField remainder;
};

BonyDecomposition bony_decompose(const SpectralField& u, const SpectralField& w);

/// Four-term splitting of Delta_q(a dz b): leading transport, commutators,
/// low-cut mismatch, and the high-frequency tail.  The terms sum to
/// Delta_q(a dz b) exactly (with dealiased products throughout).
struct CheminDecomposition {
    SpectralField a1;  // S_{q-1} a . dz Delta_q b
    SpectralField a2;  // sum_{|q'-q|<=4} [Delta_q ; S_{q'-1} a] dz Delta_q' b
    SpectralField a3;  // sum_{|q'-q|<=4} (S_{q'-1} - S_{q-1}) a . dz Delta_q Delta_q' b
    SpectralField a4;  // sum_{q'>q-4} Delta_q( S_{q'+2}(dz b) Delta_q' a )
};

CheminDecomposition chemin_decompose(const SpectralField& a_v, const SpectralField& b, int q);

/// [Delta_q, u] w = Delta_q(u w) - u Delta_q(w).
SpectralField commutator(int q, const SpectralField& u, const SpectralField& w);

}  // namespace aprs
