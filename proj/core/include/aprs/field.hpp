#pragma once

#include <complex>
#include <vector>

#include "aprs/lattice.hpp"

namespace aprs {

using Complex = std::complex<double>;

/// Declared symmetry of a field in the vertical variable z.
enum class Parity { none, even, odd };

Parity product_parity(Parity a, Parity b);
Parity flip(Parity p);
const char* to_string(Parity p);

/// Complex Fourier coefficients of a real scalar field on the box.
///
/// Invariants (enforceable, see residual/symmetrize pairs):
///   - Hermitian symmetry c(-k) = conj(c(k))  (real-valued physical field),
///   - declared vertical parity: c(k1,k2,-k3) = +/- c(k1,k2,k3),
///   - Nyquist rows identically zero.
///
/// All norms use the normalized measure on the box, so
/// ||f||_L2^2 = sum_k |c_k|^2 = (1/|Omega|) int |f|^2 dx.
class SpectralField {
  public:
    explicit SpectralField(LatticePtr lattice, Parity parity = Parity::none);

    const Lattice& lattice() const { return *lattice_; }
    LatticePtr lattice_ptr() const { return lattice_; }
    Parity parity() const { return parity_; }
    void set_parity(Parity p) { parity_ = p; }

    Complex at(int k1, int k2, int k3) const { return coeffs_[lattice_->index(k1, k2, k3)]; }
    void set(int k1, int k2, int k3, Complex c) { coeffs_[lattice_->index(k1, k2, k3)] = c; }

    const std::vector<Complex>& coeffs() const { return coeffs_; }
    std::vector<Complex>& coeffs() { return coeffs_; }

    void set_zero();
    bool is_zero() const;

    SpectralField& operator+=(const SpectralField& o);
    SpectralField& operator-=(const SpectralField& o);
    SpectralField& operator*=(double s);
    SpectralField& operator*=(Complex s);

    friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
    friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
    friend SpectralField operator*(double s, SpectralField a) { return a *= s; }

    /// y += s * x
    void axpy(double s, const SpectralField& x);

    double l2_norm() const;
    double max_abs_coeff() const;
    bool finite() const;

    /// Real L2 inner product (normalized measure): (1/|Omega|) int f g dx.
    double inner(const SpectralField& o) const;

    double hermitian_residual() const;
    void hermitian_symmetrize();

    /// Relative parity residual; 0 for Parity::none.
    double parity_residual() const;
    void parity_symmetrize();

    double nyquist_residual() const;
    void clear_nyquist();

    /// Checks declared symmetries to the given relative tolerance and throws
    /// SymmetryError on violation.
    void require_symmetries(double rel_tol = 1e-10) const;

    /// Visit every retained mode (Nyquist rows excluded).
    template <class F>
    void for_each_mode(F&& f) const {
        const int nh = lattice_->n_h(), nv = lattice_->n_v();
        for (int i1 = 0; i1 < nh; ++i1) {
            const int k1 = Lattice::unwrap(i1, nh);
            if (k1 == nh / 2) continue;
            for (int i2 = 0; i2 < nh; ++i2) {
                const int k2 = Lattice::unwrap(i2, nh);
                if (k2 == nh / 2) continue;
                for (int i3 = 0; i3 < nv; ++i3) {
                    const int k3 = Lattice::unwrap(i3, nv);
                    if (k3 == nv / 2) continue;
                    f(k1, k2, k3, coeffs_[(static_cast<std::size_t>(i1) * nh + i2) * nv + i3]);
                }
            }
        }
    }

    template <class F>
    void transform_modes(F&& f) {
        const int nh = lattice_->n_h(), nv = lattice_->n_v();
        for (int i1 = 0; i1 < nh; ++i1) {
            const int k1 = Lattice::unwrap(i1, nh);
            for (int i2 = 0; i2 < nh; ++i2) {
                const int k2 = Lattice::unwrap(i2, nh);
                for (int i3 = 0; i3 < nv; ++i3) {
                    const int k3 = Lattice::unwrap(i3, nv);
                    Complex& c = coeffs_[(static_cast<std::size_t>(i1) * nh + i2) * nv + i3];
                    c = f(k1, k2, k3, c);
                }
            }
        }
    }

  private:
    LatticePtr lattice_;
    Parity parity_;
    std::vector<Complex> coeffs_;
};

void require_same_lattice(const SpectralField& a, const SpectralField& b);

}  // namespace aprs
