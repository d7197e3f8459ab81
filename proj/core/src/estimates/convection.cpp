#include "aprs/estimates/convection.hpp"

#include <cmath>

#include "aprs/initial_data.hpp"
#include "aprs/norms.hpp"
#include "aprs/solver2d.hpp"
#include "aprs/transform.hpp"

namespace aprs {
namespace {

// Smooth time profile in [1/2, 3/2]; distinct phases decorrelate the shapes.
double profile(double t, double t_end, double phase) {
    return 1.0 + 0.5 * std::sin(2.0 * 3.14159265358979323846 * t / t_end + phase);
}

SpectralField blend(const SpectralField& x, const SpectralField& y, double cx, double cy) {
    SpectralField out = x;
    out *= cx;
    out.axpy(cy, y);
    return out;
}

}  // namespace

ConvectionData synthetic_convection_data(const LatticePtr& lat, std::uint64_t seed, int n_times,
                                         double t_end) {
    ConvectionData data;
    FieldRecipe even{70, lat->dealias_k_h(), lat->dealias_k_v(), Parity::even, true, false, false};
    FieldRecipe even2 = even;
    even2.stream = 71;
    FieldRecipe evenb = even;
    evenb.stream = 72;
    FieldRecipe evenb2 = even;
    evenb2.stream = 73;
    const SpectralField a1a = seeded_field(lat, seed, even);
    even.stream = 74;
    const SpectralField a1b = seeded_field(lat, seed, even);
    const SpectralField a2a = seeded_field(lat, seed, even2);
    even2.stream = 75;
    const SpectralField a2b = seeded_field(lat, seed, even2);
    const SpectralField b_a = seeded_field(lat, seed, evenb);
    const SpectralField b_b = seeded_field(lat, seed, evenb2);

    FieldRecipe psi{76, lat->dealias_k_h(), 0, Parity::even, false, true, true};
    const SpectralField psi_a = seeded_field(lat, seed, psi);
    psi.stream = 77;
    const SpectralField psi_b = seeded_field(lat, seed, psi);

    for (int i = 0; i < n_times; ++i) {
        const double t = t_end * i / (n_times - 1);
        data.times.push_back(t);
        SpectralField u1 = blend(a1a, a1b, profile(t, t_end, 0.3), profile(t, t_end, 1.9));
        SpectralField u2 = blend(a2a, a2b, profile(t, t_end, 0.9), profile(t, t_end, 2.7));
        data.a.push_back(make_hydrostatic_state(u1, u2, t));
        data.b.push_back(blend(b_a, b_b, profile(t, t_end, 1.3), profile(t, t_end, 0.1)));

        SpectralField ps = blend(psi_a, psi_b, profile(t, t_end, 2.2), profile(t, t_end, 0.7));
        SpectralField m1 = derivative(ps, Axis::y);
        m1 *= -1.0;
        SpectralField m2 = derivative(ps, Axis::x);
        data.mean.push_back({std::move(m1), std::move(m2)});
    }
    return data;
}

ConvectionResult convection_lemma_check(const ConvectionData& data, ConvectionLemma lemma) {
    ConvectionResult res;
    const LatticePtr lat = data.b.front().lattice_ptr();
    const int qm = DyadicPartition::q_max(*lat);
    const std::size_t nt = data.times.size();

    // Hypotheses: zero full mean of a and b on the box.
    for (std::size_t i = 0; i < nt; ++i) {
        const double mean_mag =
            std::max({std::abs(data.a[i].uh1.at(0, 0, 0)), std::abs(data.a[i].uh2.at(0, 0, 0)),
                      std::abs(data.b[i].at(0, 0, 0))});
        if (mean_mag > 1e-12) {
            res.skipped = true;
            res.note = "nonzero mean value on the box; hypothesis violated";
            return res;
        }
    }

    // lhs_q by trapezoid quadrature of |(Delta_q(conv), Delta_q b)|.
    std::vector<std::vector<double>> integrand(nt, std::vector<double>(qm + 2, 0.0));
    TimeNormAccumulator acc_a, acc_ga, acc_b, acc_gb;
    DissipationSeries mean_grad;
    for (std::size_t i = 0; i < nt; ++i) {
        if (lemma == ConvectionLemma::mean_coupling) {
            // (Delta_q(u~^h . grad_h ubar) | Delta_q u~^h), full vector pairing.
            SpectralField conv1 =
                multiply_dealiased(data.a[i].uh1, derivative(data.mean[i][0], Axis::x));
            conv1 += multiply_dealiased(data.a[i].uh2, derivative(data.mean[i][0], Axis::y));
            SpectralField conv2 =
                multiply_dealiased(data.a[i].uh1, derivative(data.mean[i][1], Axis::x));
            conv2 += multiply_dealiased(data.a[i].uh2, derivative(data.mean[i][1], Axis::y));
            for (int q = -1; q <= qm; ++q)
                integrand[i][q + 1] =
                    std::abs(dyadic_block(conv1, q).inner(dyadic_block(data.a[i].uh1, q)) +
                             dyadic_block(conv2, q).inner(dyadic_block(data.a[i].uh2, q)));
            mean_grad.append(data.times[i],
                             grad_h_energy({&data.mean[i][0], &data.mean[i][1]}));
        } else {
            const SpectralField& b = data.b[i];
            SpectralField conv = multiply_dealiased(data.a[i].uh1, derivative(b, Axis::x));
            conv += multiply_dealiased(data.a[i].uh2, derivative(b, Axis::y));
            conv += multiply_dealiased(data.a[i].uv, derivative(b, Axis::z));
            for (int q = -1; q <= qm; ++q)
                integrand[i][q + 1] =
                    std::abs(dyadic_block(conv, q).inner(dyadic_block(b, q)));
        }

        acc_a.add_sample(data.times[i], block_l2_norms({&data.a[i].uh1, &data.a[i].uh2}));
        std::vector<SpectralField> ga{
            derivative(data.a[i].uh1, Axis::x), derivative(data.a[i].uh1, Axis::y),
            derivative(data.a[i].uh2, Axis::x), derivative(data.a[i].uh2, Axis::y)};
        acc_ga.add_sample(data.times[i], block_l2_norms({&ga[0], &ga[1], &ga[2], &ga[3]}));
        if (lemma == ConvectionLemma::mean_coupling) {
            acc_b.add_sample(data.times[i], block_l2_norms({&data.a[i].uh1, &data.a[i].uh2}));
            std::vector<SpectralField> gb{
                derivative(data.a[i].uh1, Axis::x), derivative(data.a[i].uh1, Axis::y),
                derivative(data.a[i].uh2, Axis::x), derivative(data.a[i].uh2, Axis::y)};
            acc_gb.add_sample(data.times[i], block_l2_norms({&gb[0], &gb[1], &gb[2], &gb[3]}));
        } else {
            const SpectralField& bb = data.b[i];
            acc_b.add_sample(data.times[i], block_l2_norms({&bb}));
            std::vector<SpectralField> gb{derivative(bb, Axis::x), derivative(bb, Axis::y)};
            acc_gb.add_sample(data.times[i], block_l2_norms({&gb[0], &gb[1]}));
        }
    }

    res.lhs_q.assign(qm + 2, 0.0);
    for (int q = -1; q <= qm; ++q) {
        for (std::size_t i = 1; i < nt; ++i)
            res.lhs_q[q + 1] += 0.5 * (data.times[i] - data.times[i - 1]) *
                                (integrand[i - 1][q + 1] + integrand[i][q + 1]);
    }

    const double a_inf = acc_a.ltilde_inf_b0_half();
    const double ga_l2 = acc_ga.ltilde_2_b0_half();
    const double b_inf = acc_b.ltilde_inf_b0_half();
    const double gb_l2 = acc_gb.ltilde_2_b0_half();
    switch (lemma) {
        case ConvectionLemma::anisotropic:
            res.bracket = std::sqrt(a_inf) * std::sqrt(ga_l2) * std::sqrt(b_inf) *
                              std::pow(gb_l2, 1.5) +
                          ga_l2 * b_inf * gb_l2;
            break;
        case ConvectionLemma::torus:
            res.bracket = ga_l2 * b_inf * gb_l2 + a_inf * gb_l2 * gb_l2;
            break;
        case ConvectionLemma::mean_coupling:
            res.bracket =
                std::sqrt(mean_grad.integral_at(data.times.back())) * b_inf * gb_l2;
            break;
    }

    // Smallest C with lhs_q <= C c_q 2^{-q} bracket and sum sqrt(c_q) <= 1:
    // C = (sum_q sqrt(2^q lhs_q / bracket))^2, c_q the normalized sequence.
    double sum_sqrt = 0.0;
    for (int q = -1; q <= qm; ++q)
        sum_sqrt += std::sqrt(std::pow(2.0, q) * res.lhs_q[q + 1] / res.bracket);
    res.constant = sum_sqrt * sum_sqrt;
    res.c_q.assign(qm + 2, 0.0);
    res.rhs_q.assign(qm + 2, 0.0);
    for (int q = -1; q <= qm; ++q) {
        const double r_q = std::pow(2.0, q) * res.lhs_q[q + 1] / res.bracket;
        res.c_q[q + 1] = res.constant > 0 ? r_q / res.constant : 0.0;
        res.rhs_q[q + 1] =
            res.constant * res.c_q[q + 1] * std::pow(2.0, -q) * res.bracket;
    }
    return res;
}

CheckRow convection_row(const ConvectionResult& res, ConvectionLemma lemma, std::uint64_t seed,
                        int q, double frozen_c) {
    const char* name = lemma == ConvectionLemma::anisotropic
                           ? "convection_anisotropic"
                           : (lemma == ConvectionLemma::torus ? "convection_torus"
                                                              : "convection_mean_coupling");
    CheckRow r;
    r.check = name;
    r.seed = seed;
    r.q = q;
    r.skipped = res.skipped;
    if (res.skipped) {
        r.note = res.note;
        return r;
    }
    r.lhs = res.lhs_q[q + 1];
    r.rhs = frozen_c * res.c_q[q + 1] * std::pow(2.0, -q) * res.bracket;
    r.ratio = res.constant / frozen_c;
    return r;
}

}  // namespace aprs
