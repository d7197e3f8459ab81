#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;

#ifndef APRS_CLI
#define APRS_CLI "aprs"
#endif

namespace {

struct Result {
    int code;
    std::string out;
};

Result run_cli(const std::string& argsline) {
    const std::string outfile = (fs::temp_directory_path() / "aprs_cli_out.txt").string();
    const std::string cmd = std::string(APRS_CLI) + " " + argsline + " > " + outfile + " 2>&1";
    const int rc = std::system(cmd.c_str());
    std::ifstream is(outfile);
    std::stringstream ss;
    ss << is.rdbuf();
    return {WEXITSTATUS(rc), ss.str()};
}

fs::path make_workdir() {
    auto dir = fs::temp_directory_path() / "aprs_cli_test";
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

void write(const fs::path& p, const std::string& text) {
    std::ofstream os(p);
    os << text;
}

const char* kBaseConfig = R"ini(
[lattice]
n_h = 12
n_v = 12

[run]
system = primitive
nu_h = 1.0
t_end = 0.02
output_every = 4
dt = 5e-4

[init]
kind = seeded
seed = 3
amplitude = 0.02
mean_amplitude = 0.04
band = 3
)ini";

}  // namespace

TEST_CASE("cli: simulate-primitive writes artifacts and is deterministic") {
    auto dir = make_workdir();
    write(dir / "run.ini", kBaseConfig);
    auto r1 = run_cli("simulate-primitive -c " + (dir / "run.ini").string() + " -o " +
                      (dir / "a").string());
    CHECK(r1.code == 0);
    for (const char* f : {"diagnostics.csv", "norms.csv", "manifest.json", "final_uh1.aprs"})
        CHECK(fs::exists(dir / "a" / f));

    auto r2 = run_cli("simulate-primitive -c " + (dir / "run.ini").string() + " -o " +
                      (dir / "b").string());
    CHECK(r2.code == 0);
    std::ifstream f1(dir / "a" / "diagnostics.csv"), f2(dir / "b" / "diagnostics.csv");
    std::stringstream s1, s2;
    s1 << f1.rdbuf();
    s2 << f2.rdbuf();
    CHECK(s1.str() == s2.str());  // bit-identical diagnostics
    CHECK(s1.str().find("step,time,") == 0);
}

TEST_CASE("cli: manifest allows re-execution with identical results") {
    auto dir = make_workdir();
    write(dir / "run.ini", kBaseConfig);
    auto r1 = run_cli("simulate-primitive -c " + (dir / "run.ini").string() + " -o " +
                      (dir / "a").string() + " --set init.seed=9");
    CHECK(r1.code == 0);

    std::ifstream mf(dir / "a" / "manifest.json");
    nlohmann::json m = nlohmann::json::parse(mf);
    CHECK(m["command"] == "simulate-primitive");
    CHECK(m["seed"] == 9);
    write(dir / "replay.ini", m["config"].get<std::string>());
    auto r2 = run_cli(std::string(m["command"].get<std::string>()) + " -c " +
                      (dir / "replay.ini").string() + " -o " + (dir / "replay").string());
    CHECK(r2.code == 0);
    std::ifstream f1(dir / "a" / "diagnostics.csv"), f2(dir / "replay" / "diagnostics.csv");
    std::stringstream s1, s2;
    s1 << f1.rdbuf();
    s2 << f2.rdbuf();
    CHECK(s1.str() == s2.str());
}

TEST_CASE("cli: config rejection paths use exit code 2") {
    auto dir = make_workdir();
    write(dir / "run.ini", kBaseConfig);
    auto bad_gamma = run_cli("simulate-primitive -c " + (dir / "run.ini").string() + " -o " +
                             (dir / "x").string() + " --set run.gamma=1.5");
    CHECK(bad_gamma.code == 2);
    CHECK(bad_gamma.out.find("gamma") != std::string::npos);

    write(dir / "unknown.ini", std::string(kBaseConfig) + "\n[run]\nwhatever = 3\n");
    auto unknown = run_cli("simulate-primitive -c " + (dir / "unknown.ini").string() + " -o " +
                           (dir / "y").string());
    CHECK(unknown.code == 2);
    CHECK(unknown.out.find("unknown key") != std::string::npos);

    // CLI override precedence over the file value
    auto r = run_cli("simulate-primitive -c " + (dir / "run.ini").string() + " -o " +
                     (dir / "z").string() + " --set run.nu_h=0.5");
    CHECK(r.code == 0);
    std::ifstream mf(dir / "z" / "manifest.json");
    nlohmann::json m = nlohmann::json::parse(mf);
    CHECK(m["config"].get<std::string>().find("nu_h = 0.5") != std::string::npos);
}

TEST_CASE("cli: verify without constants exits 5") {
    auto dir = make_workdir();
    setenv("APRS_CONSTANTS", (dir / "missing.json").string().c_str(), 1);
    auto r = run_cli("verify -o " + (dir / "v").string() + " --seeds 2 --lattice 8");
    unsetenv("APRS_CONSTANTS");
    CHECK(r.code == 5);
}

TEST_CASE("cli: quick calibrate then verify round trip exits 0") {
    auto dir = make_workdir();
    auto cal = run_cli("calibrate --seeds 60 --lattice 12 --skip-smallness --skip-stability "
                       "--constants " +
                       (dir / "consts.json").string());
    CHECK(cal.code == 0);
    auto ver = run_cli("verify -o " + (dir / "v").string() + " --seeds 8 --lattice 12 "
                       "--constants " +
                       (dir / "consts.json").string());
    CHECK(ver.code == 0);
    CHECK(fs::exists(dir / "v" / "summary_inequalities.csv"));
    CHECK(fs::exists(dir / "v" / "bony_sum.csv"));
    CHECK(fs::exists(dir / "v" / "convection_torus.csv"));
}

TEST_CASE("cli: blow-up exits 3 with a structured report") {
    auto dir = make_workdir();
    write(dir / "run.ini", kBaseConfig);
    auto r = run_cli("simulate-primitive -c " + (dir / "run.ini").string() + " -o " +
                     (dir / "bu").string() +
                     " --set run.nu_h=0 --set run.dt=10 --set run.t_end=100 "
                     "--set init.amplitude=2 --set init.mean_amplitude=2");
    CHECK(r.code == 3);
    CHECK(fs::exists(dir / "bu" / "blowup.json"));
}

TEST_CASE("cli: norms subcommand reads a snapshot") {
    auto dir = make_workdir();
    write(dir / "run.ini", kBaseConfig);
    auto r1 = run_cli("simulate-primitive -c " + (dir / "run.ini").string() + " -o " +
                      (dir / "a").string());
    REQUIRE(r1.code == 0);
    auto r = run_cli("norms -i " + (dir / "a" / "final_uh1.aprs").string());
    CHECK(r.code == 0);
    CHECK(r.out.find("time,b0_half,h0_half,h0_minus_half") == 0);
}
