#pragma once

#include <map>
#include <string>
#include <vector>

#include "aprs/dyadic.hpp"

namespace aprs {

/// Per-field summary of the vertical-anisotropic norms.
struct NormReport {
    double b0_half = 0.0;                       // sum_q 2^{q/2} ||Delta_q u||_L2
    std::map<double, double> h0_s;              // s -> H^{0,s} norm (s = +-1/2 by default)
    double b0_minus_half_inf = 0.0;             // sup_q 2^{-q/2} ||Delta_q u||_L2
    std::vector<std::pair<int, double>> per_block;  // (q, 2^{q/2} ||Delta_q u||_L2)

    double h0_half() const { return h0_s.at(0.5); }
    double h0_minus_half() const { return h0_s.at(-0.5); }
};

NormReport besov_norm(const SpectralField& f);
NormReport besov_norm(const std::vector<const SpectralField*>& comps);

/// H^{0,s} from the block formula (sum_q (2^{qs} ||Delta_q u||)^2)^{1/2}.
double h0s_norm(const std::vector<const SpectralField*>& comps, double s);
double h0s_norm(const SpectralField& f, double s);

/// Direct coefficient-sum form (sum_n (1+|kk3|) |c_n|^2)^{1/2}; equivalent to
/// h0s_norm(f, 1/2) up to a partition-dependent constant.
double h0_half_direct(const SpectralField& f);

double b0_half_norm(const std::vector<const SpectralField*>& comps);
double b0_half_norm(const SpectralField& f);

/// Isotropic Sobolev norm (sum_k (1+|pi kk|^2)^s |c_k|^2)^{1/2}.
double sobolev_norm(const SpectralField& f, double s);

enum class NormOrder { h_outer, v_outer };

/// Mixed Lebesgue norm on the 2x-oversampled collocation grid with the
/// normalized measure; exponents in {1, 2, 4, inf}.
double anisotropic_lebesgue_norm(const SpectralField& f, double p_h, double q_v, NormOrder order);

double lp_norm(const SpectralField& f, double p);
double linf_norm(const SpectralField& f);

/// Running tilde-L^infty / tilde-L^2 Besov accumulator over a trajectory:
/// per-block sup in time and trapezoid integral of the squared block norms.
class TimeNormAccumulator {
  public:
    TimeNormAccumulator() = default;
    explicit TimeNormAccumulator(int q_max) : sup_(q_max + 2, 0.0), int_sq_(q_max + 2, 0.0) {}

    void add_sample(double time, const std::vector<double>& block_norms);

    int samples() const { return n_samples_; }
    int q_max() const { return static_cast<int>(sup_.size()) - 2; }
    const std::vector<double>& per_block_sup() const { return sup_; }
    const std::vector<double>& per_block_int_sq() const { return int_sq_; }

    /// sum_q 2^{q/2} sup_t ||Delta_q u(t)||.
    double ltilde_inf_b0_half() const;
    /// sum_q 2^{q/2} sqrt(int ||Delta_q u||^2 dt).
    double ltilde_2_b0_half() const;

  private:
    std::vector<double> sup_;
    std::vector<double> int_sq_;
    std::vector<double> last_;
    double last_time_ = 0.0;
    int n_samples_ = 0;
};

/// Time-stamped norm records of a run, serializable as CSV with one
/// per-block column per q.
struct NormSeries {
    std::vector<double> times;
    std::vector<NormReport> reports;

    void append(double t, NormReport r);
    std::string to_csv() const;
};

}  // namespace aprs
