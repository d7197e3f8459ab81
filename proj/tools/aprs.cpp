// aprs: pseudospectral simulation and verification suite for the hydrostatic
// primitive equations and the rescaled anisotropic Navier-Stokes family.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "aprs/convergence.hpp"
#include "aprs/coupled.hpp"
#include "aprs/estimates/apriori.hpp"
#include "aprs/estimates/smallness.hpp"
#include "aprs/estimates/stability.hpp"
#include "aprs/estimates/verify_suite.hpp"
#include "aprs/snapshot.hpp"

namespace fs = std::filesystem;
using namespace aprs;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitBlowUp = 3;
constexpr int kExitVerification = 4;
constexpr int kExitUncalibrated = 5;

#ifndef APRS_DEFAULT_CONSTANTS
#define APRS_DEFAULT_CONSTANTS "share/frozen_constants.json"
#endif

std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[19];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

struct CommonArgs {
    std::string config_path;
    std::string output_dir = "aprs-out";
    std::string constants_path;
    std::vector<std::string> overrides;
    std::int64_t seed = -1;
};

void write_file(const fs::path& p, const std::string& content) {
    std::ofstream os(p, std::ios::binary);
    if (!os) throw ConfigError("cannot write " + p.string());
    os << content;
}

std::string resolve_constants(const CommonArgs& args) {
    if (!args.constants_path.empty()) return args.constants_path;
    return FrozenConstants::resolve_path(APRS_DEFAULT_CONSTANTS);
}

ParsedConfig load_config(const CommonArgs& args) {
    ParsedConfig cfg = parse_config_with_overrides(args.config_path, args.overrides);
    if (args.seed >= 0) cfg.run.init.seed = static_cast<std::uint64_t>(args.seed);
    return cfg;
}

void write_manifest(const CommonArgs& args, const ParsedConfig& cfg,
                    const std::string& command) {
    nlohmann::ordered_json m;
    m["command"] = command;
    const std::string canonical = canonical_config_text(cfg);
    m["config"] = canonical;
    m["config_hash"] = hex64(fnv1a64(canonical));
    m["seed"] = cfg.run.init.seed;
    m["overrides"] = args.overrides;
    m["constants_file"] = resolve_constants(args);
    m["version"] = "aprs 0.1.0";
    write_file(fs::path(args.output_dir) / "manifest.json", m.dump(2) + "\n");
}

void write_state_snapshots(const fs::path& dir, const CoupledTrajectory& traj) {
    if (traj.size() == 0) return;
    const std::size_t i = traj.size() - 1;
    write_snapshot_file((dir / "final_mean_uh1.aprs").string(), traj.mean[i][0],
                        FieldKind::mean_uh1);
    write_snapshot_file((dir / "final_mean_uh2.aprs").string(), traj.mean[i][1],
                        FieldKind::mean_uh2);
    write_snapshot_file((dir / "final_uh1.aprs").string(), traj.fluct[i].uh1, FieldKind::uh1);
    write_snapshot_file((dir / "final_uh2.aprs").string(), traj.fluct[i].uh2, FieldKind::uh2);
    write_snapshot_file((dir / "final_uv.aprs").string(), traj.fluct[i].uv, FieldKind::uv);
}

int run_simulation(const CommonArgs& args, SystemKind system) {
    ParsedConfig cfg = load_config(args);
    cfg.run.system = system;
    if (system == SystemKind::ns_aniso && !cfg.run.eps)
        throw ConfigError("simulate-ns needs eps (set [run] eps or --set eps=...)");
    cfg.run.validate();
    fs::create_directories(args.output_dir);
    write_manifest(args, cfg, system == SystemKind::primitive ? "simulate-primitive"
                                                              : "simulate-ns");

    // Smallness verdict is informational: large data is legal, the a priori
    // monitor is simply not armed for it.
    bool monitored = false;
    try {
        FrozenConstants constants = FrozenConstants::load(resolve_constants(args));
        SmallnessCheck small = check_smallness(cfg.run, constants);
        std::cout << "smallness: lhs = " << small.lhs << " vs c*nu = "
                  << small.c_cal * small.nu_h << " -> " << (small.green ? "green" : "red")
                  << "\n";
        monitored = small.green;
    } catch (const UncalibratedError&) {
        std::cout << "smallness: constants not calibrated; monitor disarmed\n";
    }

    CoupledTrajectory traj = solve_coupled(cfg.run);
    write_file(fs::path(args.output_dir) / "diagnostics.csv", diagnostics_csv(traj));
    write_file(fs::path(args.output_dir) / "norms.csv", traj.norm_series.to_csv());
    write_state_snapshots(args.output_dir, traj);

    if (monitored) {
        FrozenConstants constants = FrozenConstants::load(resolve_constants(args));
        AprioriMonitor mon = attach_apriori_monitor(traj, constants);
        std::ostringstream os;
        os << "time,linf_besov,l2_grad_besov,l2_dz_besov,monitored,bound,violation\n";
        for (std::size_t i = 0; i < mon.times.size(); ++i) {
            const bool bad = mon.monitored[i] > mon.bound;
            os << mon.times[i] << "," << mon.linf_besov[i] << "," << mon.l2_grad_besov[i]
               << "," << mon.l2_dz_besov[i] << "," << mon.monitored[i] << "," << mon.bound
               << "," << (bad ? "1" : "0") << "\n";
        }
        write_file(fs::path(args.output_dir) / "monitor.csv", os.str());
        std::cout << "a priori monitor: " << (mon.ok ? "bound held" : "violations logged")
                  << " (" << mon.violations.size() << " events)\n";
    }

    if (traj.blew_up) {
        nlohmann::ordered_json rep;
        rep["blow_up"] = true;
        rep["step"] = traj.blowup_step;
        rep["time"] = traj.blowup_time;
        rep["max_coeff"] = traj.blowup_max;
        write_file(fs::path(args.output_dir) / "blowup.json", rep.dump(2) + "\n");
        std::cerr << "blow-up at step " << traj.blowup_step << ", t = " << traj.blowup_time
                  << "\n";
        return kExitBlowUp;
    }
    std::cout << "run complete: " << traj.size() << " records in " << args.output_dir << "\n";
    return kExitOk;
}

int run_sweep_cmd(const CommonArgs& args) {
    ParsedConfig cfg = load_config(args);
    if (!cfg.sweep) throw ConfigError("sweep-eps needs a [sweep] section with eps_values");
    fs::create_directories(args.output_dir);
    write_manifest(args, cfg, "sweep-eps");

    SweepPlan plan = make_sweep_plan(cfg.run, *cfg.sweep);
    ConvergenceReport report = run_sweep(plan);
    write_file(fs::path(args.output_dir) / "sweep_report.csv", report.to_csv());
    write_file(fs::path(args.output_dir) / "plot_data.csv", report.plot_data());
    auto tb = time_derivative_bound_check(report);
    std::cout << "sweep: " << report.members.size() << " members, weak order "
              << report.fitted_order_weak << ", strong order " << report.fitted_order_strong
              << ", tendency max/min " << tb.max_over_min << "\n";
    if (report.any_blowup) {
        std::cerr << "sweep: at least one member blew up; report is partial\n";
        return kExitBlowUp;
    }
    return kExitOk;
}

int run_verify(const CommonArgs& args, int n_seeds, int lattice_n, std::uint64_t first_seed) {
    FrozenConstants constants = FrozenConstants::load(resolve_constants(args));
    fs::create_directories(args.output_dir);

    IdentityOptions iopt;
    iopt.n_h = lattice_n;
    iopt.n_v = lattice_n;
    iopt.n_seeds = n_seeds;
    iopt.first_seed = first_seed;
    SuiteResult identities = run_identity_suite(iopt);

    SuiteOptions opt;
    opt.n_h = lattice_n;
    opt.n_v = lattice_n;
    opt.n_seeds = n_seeds;
    opt.first_seed = first_seed;
    SuiteResult ineq = verify_inequalities(opt, constants);

    for (const SuiteResult* suite : {&identities, &ineq})
        for (const auto& [name, rows] : suite->rows)
            write_file(fs::path(args.output_dir) / (name + ".csv"), suite->rows_csv(name));
    write_file(fs::path(args.output_dir) / "summary_identities.csv", identities.summary_csv());
    write_file(fs::path(args.output_dir) / "summary_inequalities.csv", ineq.summary_csv());

    const bool pass = identities.pass && ineq.pass;
    std::cout << "identities: " << (identities.pass ? "pass" : "FAIL") << "; inequalities: "
              << (ineq.pass ? "pass" : "FAIL") << "\n";
    for (const auto& v : identities.violations) std::cout << "  " << v << "\n";
    for (const auto& v : ineq.violations) std::cout << "  " << v << "\n";
    return pass ? kExitOk : kExitVerification;
}

int run_calibrate(const CommonArgs& args, int n_seeds, int lattice_n, bool skip_smallness,
                  bool skip_stability) {
    FrozenConstants constants;
    SuiteOptions opt;
    opt.n_h = lattice_n;
    opt.n_v = lattice_n;
    opt.n_seeds = n_seeds;
    SuiteResult cal = calibrate_inequalities(opt, constants);
    std::cout << "inequality corpus calibrated over " << n_seeds << " seeds ("
              << cal.measured.size() << " families)\n";

    if (!skip_smallness) {
        SmallnessCalibration sc = calibrate_smallness(1.0, 20, 1.0, constants);
        std::cout << "smallness: c = " << sc.c << ", C = " << sc.big_c << " (" << sc.runs
                  << " runs)\n";
    }

    if (!skip_stability) {
        // Freeze the stability constant from calibration pairs.
        RunConfig cfg;
        cfg.lattice = make_lattice(12, 12);
        cfg.nu_h = 1.0;
        cfg.t_end = 0.25;
        cfg.output_every = 1;
        cfg.init.amplitude = constants.has("smallness_c")
                                 ? 0.2 * constants.at("smallness_c") * cfg.nu_h
                                 : 0.01;
        cfg.init.mean_amplitude = 0.05;
        FrozenConstants probe = constants;
        probe.set("stability_C", 1.0);
        double c_fit = 0.0;
        for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
            cfg.init.seed = seed;
            StabilityRecord rec = stability_experiment(cfg, 1e-4, probe);
            c_fit = std::max(c_fit, fit_stability_constant(rec));
        }
        constants.set("stability_C", c_fit * 1.5);
        std::cout << "stability constant frozen at " << c_fit * 1.5 << "\n";
    }

    const std::string path = args.constants_path.empty()
                                 ? FrozenConstants::resolve_path(APRS_DEFAULT_CONSTANTS)
                                 : args.constants_path;
    fs::create_directories(fs::path(path).parent_path().empty()
                               ? fs::path(".")
                               : fs::path(path).parent_path());
    constants.save(path);
    std::cout << "constants written to " << path << "\n";
    return kExitOk;
}

int run_norms(const std::string& input, const std::string& output) {
    SpectralField f = read_snapshot_file(input);
    NormSeries series;
    series.append(0.0, besov_norm(f));
    const std::string csv = series.to_csv();
    if (output.empty())
        std::cout << csv;
    else
        write_file(output, csv);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"anisotropic primitive-equation simulation and verification suite"};
    app.require_subcommand(1);

    CommonArgs args;
    int verify_seeds = 50;
    int verify_lattice = 16;
    std::uint64_t verify_first_seed = 1001;
    int cal_seeds = 120;
    int cal_lattice = 16;
    bool skip_smallness = false;
    bool skip_stability = false;
    std::string norms_input, norms_output;

    auto add_common = [&](CLI::App* cmd, bool needs_config) {
        if (needs_config)
            cmd->add_option("-c,--config", args.config_path, "run configuration file")
                ->required();
        cmd->add_option("-o,--output", args.output_dir, "output directory");
        cmd->add_option("--constants", args.constants_path, "frozen-constants file");
        cmd->add_option("--seed", args.seed, "override the data seed");
        cmd->add_option("--set", args.overrides,
                        "config override section.key=value (repeatable)");
    };

    auto* sim_p = app.add_subcommand("simulate-primitive", "run the hydrostatic system");
    add_common(sim_p, true);
    auto* sim_ns = app.add_subcommand("simulate-ns", "run the rescaled anisotropic family");
    add_common(sim_ns, true);
    auto* sweep = app.add_subcommand("sweep-eps", "run the eps -> 0 convergence sweep");
    add_common(sweep, true);
    auto* verify = app.add_subcommand("verify", "run the identity and inequality suites");
    add_common(verify, false);
    verify->add_option("--seeds", verify_seeds, "fresh seeds per check");
    verify->add_option("--lattice", verify_lattice, "lattice size N");
    verify->add_option("--first-seed", verify_first_seed, "first fresh seed");
    auto* calibrate = app.add_subcommand("calibrate", "measure and freeze constants");
    add_common(calibrate, false);
    calibrate->add_option("--seeds", cal_seeds, "calibration corpus size");
    calibrate->add_option("--lattice", cal_lattice, "lattice size N");
    calibrate->add_flag("--skip-smallness", skip_smallness, "skip solver-based calibration");
    calibrate->add_flag("--skip-stability", skip_stability, "skip the stability constant");
    auto* norms = app.add_subcommand("norms", "norm report of a snapshot file");
    norms->add_option("-i,--input", norms_input, "snapshot file")->required();
    norms->add_option("-o,--output", norms_output, "CSV output (stdout when omitted)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim_p->parsed()) return run_simulation(args, SystemKind::primitive);
        if (sim_ns->parsed()) return run_simulation(args, SystemKind::ns_aniso);
        if (sweep->parsed()) return run_sweep_cmd(args);
        if (verify->parsed())
            return run_verify(args, verify_seeds, verify_lattice, verify_first_seed);
        if (calibrate->parsed())
            return run_calibrate(args, cal_seeds, cal_lattice, skip_smallness, skip_stability);
        if (norms->parsed()) return run_norms(norms_input, norms_output);
    } catch (const UncalibratedError& e) {
        std::cerr << "uncalibrated: " << e.what() << "\n";
        return kExitUncalibrated;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const BlowUpError& e) {
        std::cerr << "blow-up: " << e.what() << "\n";
        return kExitBlowUp;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitOk;
}
