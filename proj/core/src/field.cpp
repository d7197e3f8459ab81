#include "aprs/field.hpp"

#include <algorithm>
#include <cmath>

namespace aprs {

Parity product_parity(Parity a, Parity b) {
    if (a == Parity::none || b == Parity::none) return Parity::none;
    return a == b ? Parity::even : Parity::odd;
}

Parity flip(Parity p) {
    switch (p) {
        case Parity::even: return Parity::odd;
        case Parity::odd: return Parity::even;
        default: return Parity::none;
    }
}

const char* to_string(Parity p) {
    switch (p) {
        case Parity::even: return "even";
        case Parity::odd: return "odd";
        default: return "none";
    }
}

SpectralField::SpectralField(LatticePtr lattice, Parity parity)
    : lattice_(std::move(lattice)), parity_(parity), coeffs_(lattice_->size(), Complex(0.0, 0.0)) {}

void SpectralField::set_zero() { std::fill(coeffs_.begin(), coeffs_.end(), Complex(0.0)); }

bool SpectralField::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [](Complex c) { return c == Complex(0.0); });
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
    require_same_lattice(*this, o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    if (parity_ != o.parity_) parity_ = Parity::none;
    return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
    require_same_lattice(*this, o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    if (parity_ != o.parity_) parity_ = Parity::none;
    return *this;
}

SpectralField& SpectralField::operator*=(double s) {
    for (auto& c : coeffs_) c *= s;
    return *this;
}

SpectralField& SpectralField::operator*=(Complex s) {
    for (auto& c : coeffs_) c *= s;
    return *this;
}

void SpectralField::axpy(double s, const SpectralField& x) {
    require_same_lattice(*this, x);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += s * x.coeffs_[i];
    if (parity_ != x.parity_) parity_ = Parity::none;
}

double SpectralField::l2_norm() const {
    double s = 0.0;
    for (const auto& c : coeffs_) s += std::norm(c);
    return std::sqrt(s);
}

double SpectralField::max_abs_coeff() const {
    double m = 0.0;
    for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
    return m;
}

bool SpectralField::finite() const {
    for (const auto& c : coeffs_) {
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
    }
    return true;
}

double SpectralField::inner(const SpectralField& o) const {
    require_same_lattice(*this, o);
    // Real fields: int f g / |Omega| = Re sum c_f conj(c_g).
    double s = 0.0;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        s += coeffs_[i].real() * o.coeffs_[i].real() + coeffs_[i].imag() * o.coeffs_[i].imag();
    }
    return s;
}

namespace {
inline int mirror_index(int i, int n) { return i == 0 ? 0 : n - i; }
}  // namespace

double SpectralField::hermitian_residual() const {
    const int nh = lattice_->n_h(), nv = lattice_->n_v();
    double num = 0.0, den = 0.0;
    for (int i1 = 0; i1 < nh; ++i1) {
        const int m1 = mirror_index(i1, nh);
        for (int i2 = 0; i2 < nh; ++i2) {
            const int m2 = mirror_index(i2, nh);
            const std::size_t row = (static_cast<std::size_t>(i1) * nh + i2) * nv;
            const std::size_t mrow = (static_cast<std::size_t>(m1) * nh + m2) * nv;
            for (int i3 = 0; i3 < nv; ++i3) {
                if (i1 == nh / 2 || i2 == nh / 2 || i3 == nv / 2) continue;
                const Complex c = coeffs_[row + i3];
                const Complex mirror = std::conj(coeffs_[mrow + mirror_index(i3, nv)]);
                num += std::norm(c - mirror);
                den += std::norm(c);
            }
        }
    }
    return den > 0 ? std::sqrt(num / den) : 0.0;
}

void SpectralField::hermitian_symmetrize() {
    const int nh = lattice_->n_h(), nv = lattice_->n_v();
    const std::vector<Complex> tmp = coeffs_;
    for (int i1 = 0; i1 < nh; ++i1) {
        const int m1 = mirror_index(i1, nh);
        for (int i2 = 0; i2 < nh; ++i2) {
            const int m2 = mirror_index(i2, nh);
            const std::size_t row = (static_cast<std::size_t>(i1) * nh + i2) * nv;
            const std::size_t mrow = (static_cast<std::size_t>(m1) * nh + m2) * nv;
            for (int i3 = 0; i3 < nv; ++i3) {
                if (i1 == nh / 2 || i2 == nh / 2 || i3 == nv / 2) {
                    coeffs_[row + i3] = Complex(0.0);
                    continue;
                }
                coeffs_[row + i3] =
                    0.5 * (tmp[row + i3] + std::conj(tmp[mrow + mirror_index(i3, nv)]));
            }
        }
    }
}

double SpectralField::parity_residual() const {
    if (parity_ == Parity::none) return 0.0;
    const double sign = parity_ == Parity::even ? 1.0 : -1.0;
    const int nh = lattice_->n_h(), nv = lattice_->n_v();
    double num = 0.0, den = 0.0;
    for (std::size_t row = 0; row < coeffs_.size(); row += nv) {
        for (int i3 = 0; i3 < nv; ++i3) {
            if (i3 == nv / 2) continue;
            const Complex c = coeffs_[row + i3];
            const Complex mirror = sign * coeffs_[row + mirror_index(i3, nv)];
            num += std::norm(c - mirror);
            den += std::norm(c);
        }
    }
    (void)nh;
    return den > 0 ? std::sqrt(num / den) : 0.0;
}

void SpectralField::parity_symmetrize() {
    if (parity_ == Parity::none) return;
    const double sign = parity_ == Parity::even ? 1.0 : -1.0;
    const int nv = lattice_->n_v();
    for (std::size_t row = 0; row < coeffs_.size(); row += nv) {
        coeffs_[row + nv / 2] = Complex(0.0);
        for (int i3 = 1; i3 < nv / 2; ++i3) {
            const Complex a = coeffs_[row + i3];
            const Complex b = coeffs_[row + nv - i3];
            coeffs_[row + i3] = 0.5 * (a + sign * b);
            coeffs_[row + nv - i3] = 0.5 * (b + sign * a);
        }
        // the i3 = 0 row maps to itself
        if (sign < 0) coeffs_[row] = Complex(0.0);
    }
}

double SpectralField::nyquist_residual() const {
    const int nh = lattice_->n_h(), nv = lattice_->n_v();
    double m = 0.0;
    for (int i1 = 0; i1 < nh; ++i1)
        for (int i2 = 0; i2 < nh; ++i2)
            for (int i3 = 0; i3 < nv; ++i3)
                if (i1 == nh / 2 || i2 == nh / 2 || i3 == nv / 2)
                    m = std::max(m, std::abs(coeffs_[(static_cast<std::size_t>(i1) * nh + i2) * nv + i3]));
    return m;
}

void SpectralField::clear_nyquist() {
    const int nh = lattice_->n_h(), nv = lattice_->n_v();
    for (int i1 = 0; i1 < nh; ++i1)
        for (int i2 = 0; i2 < nh; ++i2)
            for (int i3 = 0; i3 < nv; ++i3)
                if (i1 == nh / 2 || i2 == nh / 2 || i3 == nv / 2)
                    coeffs_[(static_cast<std::size_t>(i1) * nh + i2) * nv + i3] = Complex(0.0);
}

void SpectralField::require_symmetries(double rel_tol) const {
    if (hermitian_residual() > rel_tol)
        throw SymmetryError("SpectralField: Hermitian symmetry violated");
    if (parity_residual() > rel_tol)
        throw SymmetryError(std::string("SpectralField: declared ") + to_string(parity_) +
                            " parity violated");
}

void require_same_lattice(const SpectralField& a, const SpectralField& b) {
    if (a.lattice() != b.lattice())
        throw LatticeMismatchError("fields live on different lattices");
}

}  // namespace aprs
