#pragma once

#include <cstddef>
#include <memory>

#include "aprs/errors.hpp"

namespace aprs {

/// Mode lattice of the periodic box (-L_h/2, L_h/2)^2 x (-1, 1).
///
/// Fields are trigonometric polynomials  f(x) = sum_k c_k exp(i pi kk . x)
/// over integer mode indices k = (k1, k2, k3), |k_i| <= N_i/2, where the
/// reduced frequency is kk = (2 k1/L_h, 2 k2/L_h, k3).  With the default
/// L_h = 2 every axis uses exp(i pi k x).  The Nyquist rows |k_i| = N_i/2
/// are kept structurally zero so that reflection symmetries (Hermitian,
/// vertical parity) act within the retained band.
class Lattice {
  public:
    Lattice(int n_h, int n_v, double l_h = 2.0) : n_h_(n_h), n_v_(n_v), l_h_(l_h) {
        if (n_h < 4 || n_h % 2 != 0) throw ConfigError("Lattice: N_h must be even and >= 4");
        if (n_v < 4 || n_v % 2 != 0) throw ConfigError("Lattice: N_v must be even and >= 4");
        if (!(l_h > 0)) throw ConfigError("Lattice: L_h must be positive");
    }

    int n_h() const { return n_h_; }
    int n_v() const { return n_v_; }
    double l_h() const { return l_h_; }

    std::size_t size() const {
        return static_cast<std::size_t>(n_h_) * n_h_ * n_v_;
    }

    // Largest representable nonzero mode per axis (Nyquist excluded).
    int max_k_h() const { return n_h_ / 2 - 1; }
    int max_k_v() const { return n_v_ / 2 - 1; }

    // 2/3-rule band edge used for dealiased products.  3K < N keeps the top
    // alias image of a quadratic product strictly outside the retained band.
    int dealias_k_h() const { return (n_h_ - 1) / 3; }
    int dealias_k_v() const { return (n_v_ - 1) / 3; }

    // Reduced frequencies kk entering all multipliers (derivative = i pi kk).
    double freq_h(int k) const { return 2.0 * k / l_h_; }
    double freq_v(int k) const { return static_cast<double>(k); }

    // Storage is FFT-ordered, k3 fastest: idx = (i1*N_h + i2)*N_v + i3,
    // with i = k >= 0 ? k : k + N.
    std::size_t index(int k1, int k2, int k3) const {
        return (static_cast<std::size_t>(wrap(k1, n_h_)) * n_h_ + wrap(k2, n_h_)) * n_v_ +
               wrap(k3, n_v_);
    }

    bool contains(int k1, int k2, int k3) const {
        return std::abs(k1) <= n_h_ / 2 && std::abs(k2) <= n_h_ / 2 && std::abs(k3) <= n_v_ / 2;
    }

    // Physical collocation nodes (N_h x N_h x N_v grid).
    double node_h(int j) const { return -0.5 * l_h_ + l_h_ * j / n_h_; }
    double node_v(int j) const { return -1.0 + 2.0 * j / n_v_; }

    bool operator==(const Lattice& o) const {
        return n_h_ == o.n_h_ && n_v_ == o.n_v_ && l_h_ == o.l_h_;
    }
    bool operator!=(const Lattice& o) const { return !(*this == o); }

    static int wrap(int k, int n) {
        int i = k % n;
        return i < 0 ? i + n : i;
    }

    // Signed mode index from a storage index along one axis.
    static int unwrap(int i, int n) { return i <= n / 2 ? i : i - n; }

  private:
    int n_h_;
    int n_v_;
    double l_h_;
};

using LatticePtr = std::shared_ptr<const Lattice>;

inline LatticePtr make_lattice(int n_h, int n_v, double l_h = 2.0) {
    return std::make_shared<const Lattice>(n_h, n_v, l_h);
}

}  // namespace aprs
