#include "aprs/transform.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <map>
#include <mutex>
#include <tuple>

namespace aprs {
namespace {

// One forward + one backward c2c plan per grid shape.  FFTW_ESTIMATE keeps
// plan selection deterministic across runs; execution uses the new-array
// interface on fftw_malloc'd buffers so plans are shareable across threads.
class PlanCache {
  public:
    struct Plans {
        fftw_plan forward = nullptr;
        fftw_plan backward = nullptr;
    };

    static Plans get(int n1, int n2, int n3) {
        static PlanCache cache;
        std::lock_guard<std::mutex> lock(cache.mutex_);
        auto key = std::make_tuple(n1, n2, n3);
        auto it = cache.plans_.find(key);
        if (it != cache.plans_.end()) return it->second;
        const std::size_t n = static_cast<std::size_t>(n1) * n2 * n3;
        fftw_complex* in = fftw_alloc_complex(n);
        fftw_complex* out = fftw_alloc_complex(n);
        Plans p;
        p.forward = fftw_plan_dft_3d(n1, n2, n3, in, out, FFTW_FORWARD, FFTW_ESTIMATE);
        p.backward = fftw_plan_dft_3d(n1, n2, n3, in, out, FFTW_BACKWARD, FFTW_ESTIMATE);
        fftw_free(in);
        fftw_free(out);
        cache.plans_.emplace(key, p);
        return p;
    }

  private:
    PlanCache() = default;
    std::mutex mutex_;
    std::map<std::tuple<int, int, int>, Plans> plans_;
};

struct FftwBuffer {
    explicit FftwBuffer(std::size_t n) : data(fftw_alloc_complex(n)), n(n) {
        std::memset(data, 0, n * sizeof(fftw_complex));
    }
    ~FftwBuffer() { fftw_free(data); }
    FftwBuffer(const FftwBuffer&) = delete;
    FftwBuffer& operator=(const FftwBuffer&) = delete;
    fftw_complex* data;
    std::size_t n;
};

// exp(i pi kk x_j) = (-1)^k exp(2 pi i k j / N) per axis, so synthesis is a
// backward DFT of (-1)^(k1+k2+k3) c_k.  Storage index parity equals mode
// parity because N is even.
inline double phase_sign(int i1, int i2, int i3) { return ((i1 + i2 + i3) & 1) ? -1.0 : 1.0; }

}  // namespace

PhysicalField transform_to_physical(const SpectralField& f, int oversample) {
    if (f.hermitian_residual() > 1e-10)
        throw SymmetryError("transform_to_physical: non-Hermitian coefficients");
    const Lattice& lat = f.lattice();
    const int nh = lat.n_h(), nv = lat.n_v();
    const int m1 = nh * oversample, m3 = nv * oversample;

    FftwBuffer in(static_cast<std::size_t>(m1) * m1 * m3);
    FftwBuffer out(in.n);
    // Scatter retained modes into the (possibly padded) grid.
    f.for_each_mode([&](int k1, int k2, int k3, Complex c) {
        if (c == Complex(0.0)) return;
        const std::size_t idx =
            (static_cast<std::size_t>(Lattice::wrap(k1, m1)) * m1 + Lattice::wrap(k2, m1)) * m3 +
            Lattice::wrap(k3, m3);
        const double s = ((k1 + k2 + k3) & 1) ? -1.0 : 1.0;
        in.data[idx][0] = s * c.real();
        in.data[idx][1] = s * c.imag();
    });

    auto plans = PlanCache::get(m1, m1, m3);
    fftw_execute_dft(plans.backward, in.data, out.data);

    PhysicalField g;
    g.lattice = f.lattice_ptr();
    g.over = oversample;
    g.values.resize(in.n);
    for (std::size_t i = 0; i < in.n; ++i) g.values[i] = out.data[i][0];
    return g;
}

SpectralField transform_to_spectral(const PhysicalField& g, LatticePtr lattice,
                                    Parity parity) {
    const int m1 = g.n1(), m3 = g.n3();
    FftwBuffer in(g.values.size());
    FftwBuffer out(in.n);
    for (std::size_t i = 0; i < in.n; ++i) in.data[i][0] = g.values[i];

    auto plans = PlanCache::get(m1, m1, m3);
    fftw_execute_dft(plans.forward, in.data, out.data);

    SpectralField f(std::move(lattice), parity);
    const double scale = 1.0 / static_cast<double>(in.n);
    f.transform_modes([&](int k1, int k2, int k3, Complex) {
        const Lattice& lat = f.lattice();
        if (std::abs(k1) == lat.n_h() / 2 || std::abs(k2) == lat.n_h() / 2 ||
            std::abs(k3) == lat.n_v() / 2)
            return Complex(0.0);
        const std::size_t idx =
            (static_cast<std::size_t>(Lattice::wrap(k1, m1)) * m1 + Lattice::wrap(k2, m1)) * m3 +
            Lattice::wrap(k3, m3);
        const double s = ((k1 + k2 + k3) & 1) ? -1.0 : 1.0;
        return s * scale * Complex(out.data[idx][0], out.data[idx][1]);
    });
    return f;
}

void dealias_truncate(SpectralField& f) {
    const Lattice& lat = f.lattice();
    const int kh = lat.dealias_k_h(), kv = lat.dealias_k_v();
    f.transform_modes([&](int k1, int k2, int k3, Complex c) {
        if (std::abs(k1) > kh || std::abs(k2) > kh || std::abs(k3) > kv) return Complex(0.0);
        return c;
    });
}

bool in_dealias_band(const SpectralField& f, double tol) {
    const Lattice& lat = f.lattice();
    const int kh = lat.dealias_k_h(), kv = lat.dealias_k_v();
    bool ok = true;
    f.for_each_mode([&](int k1, int k2, int k3, Complex c) {
        if ((std::abs(k1) > kh || std::abs(k2) > kh || std::abs(k3) > kv) && std::abs(c) > tol)
            ok = false;
    });
    return ok;
}

SpectralField multiply_dealiased(const SpectralField& a, const SpectralField& b) {
    require_same_lattice(a, b);
    PhysicalField ga = transform_to_physical(a);
    PhysicalField gb = transform_to_physical(b);
    for (std::size_t i = 0; i < ga.values.size(); ++i) ga.values[i] *= gb.values[i];
    SpectralField prod =
        transform_to_spectral(ga, a.lattice_ptr(), product_parity(a.parity(), b.parity()));
    dealias_truncate(prod);
    return prod;
}

}  // namespace aprs
