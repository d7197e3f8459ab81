#include "aprs/norms.hpp"

#include <cmath>
#include <sstream>

#include "aprs/errors.hpp"
#include "aprs/transform.hpp"

namespace aprs {
namespace {
constexpr double kPi = 3.14159265358979323846;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}
}  // namespace

NormReport besov_norm(const std::vector<const SpectralField*>& comps) {
    NormReport r;
    const std::vector<double> bn = block_l2_norms(comps);
    double h_half_sq = 0.0, h_mhalf_sq = 0.0;
    for (int q = -1; q <= static_cast<int>(bn.size()) - 2; ++q) {
        const double w = std::pow(2.0, 0.5 * q);
        const double weighted = w * bn[q + 1];
        r.per_block.emplace_back(q, weighted);
        r.b0_half += weighted;
        h_half_sq += weighted * weighted;
        const double anti = bn[q + 1] / w;
        r.b0_minus_half_inf = std::max(r.b0_minus_half_inf, anti);
        h_mhalf_sq += anti * anti;
    }
    r.h0_s[0.5] = std::sqrt(h_half_sq);
    r.h0_s[-0.5] = std::sqrt(h_mhalf_sq);
    return r;
}

NormReport besov_norm(const SpectralField& f) { return besov_norm({&f}); }

double h0s_norm(const std::vector<const SpectralField*>& comps, double s) {
    const std::vector<double> bn = block_l2_norms(comps);
    double sum = 0.0;
    for (int q = -1; q <= static_cast<int>(bn.size()) - 2; ++q) {
        const double w = std::pow(2.0, s * q) * bn[q + 1];
        sum += w * w;
    }
    return std::sqrt(sum);
}

double h0s_norm(const SpectralField& f, double s) { return h0s_norm({&f}, s); }

double h0_half_direct(const SpectralField& f) {
    double sum = 0.0;
    const Lattice& lat = f.lattice();
    f.for_each_mode([&](int, int, int k3, Complex c) {
        sum += (1.0 + std::abs(lat.freq_v(k3))) * std::norm(c);
    });
    return std::sqrt(sum);
}

double b0_half_norm(const std::vector<const SpectralField*>& comps) {
    return besov_norm(comps).b0_half;
}
double b0_half_norm(const SpectralField& f) { return besov_norm(f).b0_half; }

double sobolev_norm(const SpectralField& f, double s) {
    double sum = 0.0;
    const Lattice& lat = f.lattice();
    f.for_each_mode([&](int k1, int k2, int k3, Complex c) {
        const double gx = kPi * lat.freq_h(k1), gy = kPi * lat.freq_h(k2),
                     gz = kPi * lat.freq_v(k3);
        sum += std::pow(1.0 + gx * gx + gy * gy + gz * gz, s) * std::norm(c);
    });
    return std::sqrt(sum);
}

namespace {

void require_exponent(double p) {
    if (!(p == 1.0 || p == 2.0 || p == 4.0 || std::isinf(p)))
        throw DomainError("anisotropic_lebesgue_norm: exponent must be 1, 2, 4 or inf");
}

// Normalized-measure L^p reduction of a strided slice.
template <class Get>
double reduce_lp(int n, double p, Get&& get) {
    if (std::isinf(p)) {
        double m = 0.0;
        for (int i = 0; i < n; ++i) m = std::max(m, std::abs(get(i)));
        return m;
    }
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += std::pow(std::abs(get(i)), p);
    return std::pow(s / n, 1.0 / p);
}

}  // namespace

double anisotropic_lebesgue_norm(const SpectralField& f, double p_h, double q_v,
                                 NormOrder order) {
    require_exponent(p_h);
    require_exponent(q_v);
    const PhysicalField g = transform_to_physical(f, 2);
    const int nh = g.n1(), nv = g.n3();
    if (order == NormOrder::h_outer) {
        // || z-norm ||_{p_h over x_h}
        std::vector<double> inner(static_cast<std::size_t>(nh) * nh);
        for (int j1 = 0; j1 < nh; ++j1)
            for (int j2 = 0; j2 < nh; ++j2)
                inner[static_cast<std::size_t>(j1) * nh + j2] =
                    reduce_lp(nv, q_v, [&](int j3) { return g.at(j1, j2, j3); });
        return reduce_lp(nh * nh, p_h, [&](int i) { return inner[i]; });
    }
    std::vector<double> inner(nv);
    for (int j3 = 0; j3 < nv; ++j3)
        inner[j3] = reduce_lp(nh * nh, p_h, [&](int i) { return g.at(i / nh, i % nh, j3); });
    return reduce_lp(nv, q_v, [&](int i) { return inner[i]; });
}

double lp_norm(const SpectralField& f, double p) {
    if (std::isinf(p)) return linf_norm(f);
    const PhysicalField g = transform_to_physical(f, 2);
    double s = 0.0;
    for (double v : g.values) s += std::pow(std::abs(v), p);
    return std::pow(s / static_cast<double>(g.values.size()), 1.0 / p);
}

double linf_norm(const SpectralField& f) {
    const PhysicalField g = transform_to_physical(f, 2);
    double m = 0.0;
    for (double v : g.values) m = std::max(m, std::abs(v));
    return m;
}

void TimeNormAccumulator::add_sample(double time, const std::vector<double>& block_norms) {
    if (sup_.empty()) {
        sup_.assign(block_norms.size(), 0.0);
        int_sq_.assign(block_norms.size(), 0.0);
    }
    if (block_norms.size() != sup_.size())
        throw DomainError("TimeNormAccumulator: inconsistent block count");
    for (std::size_t i = 0; i < sup_.size(); ++i) sup_[i] = std::max(sup_[i], block_norms[i]);
    if (n_samples_ > 0) {
        const double dt = time - last_time_;
        for (std::size_t i = 0; i < sup_.size(); ++i)
            int_sq_[i] += 0.5 * dt * (last_[i] * last_[i] + block_norms[i] * block_norms[i]);
    }
    last_ = block_norms;
    last_time_ = time;
    ++n_samples_;
}

double TimeNormAccumulator::ltilde_inf_b0_half() const {
    double s = 0.0;
    for (int q = -1; q <= q_max(); ++q) s += std::pow(2.0, 0.5 * q) * sup_[q + 1];
    return s;
}

double TimeNormAccumulator::ltilde_2_b0_half() const {
    double s = 0.0;
    for (int q = -1; q <= q_max(); ++q)
        s += std::pow(2.0, 0.5 * q) * std::sqrt(std::max(0.0, int_sq_[q + 1]));
    return s;
}

void NormSeries::append(double t, NormReport r) {
    times.push_back(t);
    reports.push_back(std::move(r));
}

std::string NormSeries::to_csv() const {
    std::ostringstream os;
    os << "time,b0_half,h0_half,h0_minus_half";
    if (!reports.empty())
        for (const auto& [q, v] : reports.front().per_block) os << ",block_q" << q;
    os << "\n";
    for (std::size_t i = 0; i < times.size(); ++i) {
        os << fmt(times[i]) << "," << fmt(reports[i].b0_half) << ","
           << fmt(reports[i].h0_half()) << "," << fmt(reports[i].h0_minus_half());
        for (const auto& [q, v] : reports[i].per_block) os << "," << fmt(v);
        os << "\n";
    }
    return os.str();
}

}  // namespace aprs
