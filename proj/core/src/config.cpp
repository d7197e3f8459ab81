#include "aprs/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "aprs/errors.hpp"

namespace aprs {
namespace {

struct Entry {
    std::string value;
    int line = 0;
    bool used = false;
};

using Sections = std::map<std::string, std::map<std::string, Entry>>;

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(const std::string& origin, int line, const std::string& msg) {
    throw ConfigError(origin + ":" + std::to_string(line) + ": " + msg);
}

Sections tokenize(const std::string& text, const std::string& origin) {
    Sections out;
    std::istringstream is(text);
    std::string line;
    std::string section = "run";
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail(origin, lineno, "unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail(origin, lineno, "expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) fail(origin, lineno, "empty key");
        out[section][key] = Entry{value, lineno, false};
    }
    return out;
}

class Reader {
  public:
    Reader(Sections& s, std::string origin) : s_(s), origin_(std::move(origin)) {}

    std::optional<std::string> raw(const std::string& sec, const std::string& key) {
        auto si = s_.find(sec);
        if (si == s_.end()) return std::nullopt;
        auto ki = si->second.find(key);
        if (ki == si->second.end()) return std::nullopt;
        ki->second.used = true;
        return ki->second.value;
    }

    double number(const std::string& sec, const std::string& key, double fallback) {
        auto v = raw(sec, key);
        if (!v) return fallback;
        return parse_double(sec, key, *v);
    }

    int integer(const std::string& sec, const std::string& key, int fallback) {
        auto v = raw(sec, key);
        if (!v) return fallback;
        try {
            std::size_t pos = 0;
            const int n = std::stoi(*v, &pos);
            if (pos != v->size()) throw std::invalid_argument("");
            return n;
        } catch (...) {
            fail_key(sec, key, "expected an integer, got '" + *v + "'");
        }
    }

    double parse_double(const std::string& sec, const std::string& key, const std::string& v) {
        try {
            std::size_t pos = 0;
            const double d = std::stod(v, &pos);
            if (pos != v.size()) throw std::invalid_argument("");
            return d;
        } catch (...) {
            fail_key(sec, key, "expected a number, got '" + v + "'");
        }
    }

    [[noreturn]] void fail_key(const std::string& sec, const std::string& key,
                               const std::string& msg) {
        int line = 0;
        auto si = s_.find(sec);
        if (si != s_.end()) {
            auto ki = si->second.find(key);
            if (ki != si->second.end()) line = ki->second.line;
        }
        fail(origin_, line, "[" + sec + "] " + key + ": " + msg);
    }

    void reject_unused() {
        for (const auto& [sec, kv] : s_)
            for (const auto& [key, entry] : kv)
                if (!entry.used)
                    fail(origin_, entry.line, "unknown key '" + key + "' in [" + sec + "]");
    }

  private:
    Sections& s_;
    std::string origin_;
};

}  // namespace

void RunConfig::validate() const {
    if (!lattice) throw ConfigError("config: lattice missing");
    if (nu_h < 0) throw ConfigError("config: nu_h must be nonnegative");
    if (!(gamma > 2.0))
        throw ConfigError("config: gamma must be > 2 (the vertical viscosity is eps^gamma)");
    if (system == SystemKind::ns_aniso && !eps)
        throw ConfigError("config: eps is required for system = ns");
    if (eps && !(*eps > 0.0 && *eps <= 1.0))
        throw ConfigError("config: eps must lie in (0, 1]");
    if (!dt_auto && !(dt > 0)) throw ConfigError("config: dt must be positive");
    if (!(t_end > 0)) throw ConfigError("config: t_end must be positive");
    if (effective_k_trunc() < 1) throw ConfigError("config: k_trunc must be >= 1");
    if (output_every < 1) throw ConfigError("config: output_every must be >= 1");
}

ParsedConfig parse_config_text(const std::string& text, const std::string& origin) {
    Sections sections = tokenize(text, origin);
    Reader r(sections, origin);
    ParsedConfig out;

    const int n_h = r.integer("lattice", "n_h", 16);
    const int n_v = r.integer("lattice", "n_v", 16);
    const double l_h = r.number("lattice", "l_h", 2.0);
    try {
        out.run.lattice = make_lattice(n_h, n_v, l_h);
    } catch (const ConfigError& e) {
        r.fail_key("lattice", "n_h", e.what());
    }

    if (auto sys = r.raw("run", "system")) {
        if (*sys == "primitive")
            out.run.system = SystemKind::primitive;
        else if (*sys == "ns")
            out.run.system = SystemKind::ns_aniso;
        else
            r.fail_key("run", "system", "must be 'primitive' or 'ns'");
    }
    out.run.nu_h = r.number("run", "nu_h", out.run.nu_h);
    out.run.gamma = r.number("run", "gamma", out.run.gamma);
    if (auto e = r.raw("run", "eps")) out.run.eps = r.parse_double("run", "eps", *e);
    out.run.k_trunc = r.integer("run", "k_trunc", out.run.k_trunc);
    if (auto dtv = r.raw("run", "dt")) {
        if (*dtv == "auto") {
            out.run.dt_auto = true;
        } else {
            out.run.dt = r.parse_double("run", "dt", *dtv);
            out.run.dt_auto = false;
        }
    }
    out.run.t_end = r.number("run", "t_end", out.run.t_end);
    out.run.output_every = r.integer("run", "output_every", out.run.output_every);
    if (auto c = r.raw("run", "convection")) {
        if (*c == "on")
            out.run.enable_convection = true;
        else if (*c == "off")
            out.run.enable_convection = false;
        else
            r.fail_key("run", "convection", "must be 'on' or 'off'");
    }

    if (auto kind = r.raw("init", "kind")) {
        if (*kind == "zero")
            out.run.init.kind = InitKind::zero;
        else if (*kind == "seeded")
            out.run.init.kind = InitKind::seeded;
        else if (*kind == "taylor_green")
            out.run.init.kind = InitKind::taylor_green;
        else
            r.fail_key("init", "kind", "must be zero, seeded or taylor_green");
    }
    out.run.init.seed = static_cast<std::uint64_t>(r.integer("init", "seed", 1));
    out.run.init.amplitude = r.number("init", "amplitude", out.run.init.amplitude);
    out.run.init.mean_amplitude = r.number("init", "mean_amplitude", out.run.init.mean_amplitude);
    out.run.init.band = r.integer("init", "band", out.run.init.band);

    if (auto ev = r.raw("sweep", "eps_values")) {
        SweepConfig sweep;
        std::istringstream is(*ev);
        std::string tok;
        while (std::getline(is, tok, ',')) {
            tok = trim(tok);
            if (tok.empty()) continue;
            sweep.eps_values.push_back(r.parse_double("sweep", "eps_values", tok));
        }
        if (sweep.eps_values.empty()) r.fail_key("sweep", "eps_values", "empty list");
        for (std::size_t i = 0; i < sweep.eps_values.size(); ++i) {
            const double e = sweep.eps_values[i];
            if (!(e > 0 && e <= 1)) r.fail_key("sweep", "eps_values", "members must be in (0,1]");
            if (i > 0 && !(e < sweep.eps_values[i - 1]))
                r.fail_key("sweep", "eps_values", "must be strictly decreasing");
        }
        sweep.weak_order = r.number("sweep", "weak_order", sweep.weak_order);
        sweep.eta = r.number("sweep", "eta", sweep.eta);
        if (!(sweep.weak_order > 0)) r.fail_key("sweep", "weak_order", "must be positive");
        if (!(sweep.eta > 0 && sweep.eta < 0.5))
            r.fail_key("sweep", "eta", "must lie in (0, 1/2)");
        out.sweep = sweep;
    }

    r.reject_unused();
    out.run.validate();
    return out;
}

ParsedConfig parse_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("config: cannot open " + path);
    std::stringstream ss;
    ss << is.rdbuf();
    return parse_config_text(ss.str(), path);
}

ParsedConfig parse_config_with_overrides(const std::string& path,
                                         const std::vector<std::string>& overrides) {
    std::ifstream is(path);
    if (!is) throw ConfigError("config: cannot open " + path);
    std::stringstream ss;
    ss << is.rdbuf();
    std::string text = ss.str();
    // CLI overrides take precedence by appending; later keys win within a
    // section, so re-emit each override under its own header.
    for (const std::string& ov : overrides) {
        const auto eq = ov.find('=');
        if (eq == std::string::npos)
            throw ConfigError("override '" + ov + "': expected section.key=value");
        std::string key = trim(ov.substr(0, eq));
        const std::string value = trim(ov.substr(eq + 1));
        std::string section = "run";
        const auto dot = key.find('.');
        if (dot != std::string::npos) {
            section = key.substr(0, dot);
            key = key.substr(dot + 1);
        }
        text += "\n[" + section + "]\n" + key + " = " + value + "\n";
    }
    return parse_config_text(text, path);
}

double default_time_step(const RunConfig& cfg, double max_speed) {
    const Lattice& lat = *cfg.lattice;
    constexpr double pi = 3.14159265358979323846;
    const double diffusive =
        1.0 / (cfg.nu_h * pi * pi * std::pow(lat.n_h() / lat.l_h(), 2.0));
    double dt = 0.25 * diffusive;
    if (max_speed > 0) {
        const double dx = std::min(lat.l_h() / lat.n_h(), 2.0 / lat.n_v());
        dt = std::min(dt, 0.25 * dx / max_speed);
    }
    dt = std::min(dt, cfg.t_end);
    const long steps = static_cast<long>(std::ceil(cfg.t_end / dt - 1e-12));
    return cfg.t_end / static_cast<double>(steps);
}

std::string canonical_config_text(const ParsedConfig& cfg) {
    std::ostringstream os;
    const RunConfig& r = cfg.run;
    os << "[lattice]\n";
    os << "n_h = " << r.lattice->n_h() << "\n";
    os << "n_v = " << r.lattice->n_v() << "\n";
    os << "l_h = " << r.lattice->l_h() << "\n";
    os << "[run]\n";
    os << "system = " << (r.system == SystemKind::primitive ? "primitive" : "ns") << "\n";
    os << "nu_h = " << r.nu_h << "\n";
    os << "gamma = " << r.gamma << "\n";
    if (r.eps) os << "eps = " << *r.eps << "\n";
    if (r.k_trunc > 0) os << "k_trunc = " << r.k_trunc << "\n";
    if (r.dt_auto)
        os << "dt = auto\n";
    else
        os << "dt = " << r.dt << "\n";
    os << "t_end = " << r.t_end << "\n";
    os << "output_every = " << r.output_every << "\n";
    os << "convection = " << (r.enable_convection ? "on" : "off") << "\n";
    os << "[init]\n";
    os << "kind = "
       << (r.init.kind == InitKind::zero
               ? "zero"
               : (r.init.kind == InitKind::seeded ? "seeded" : "taylor_green"))
       << "\n";
    os << "seed = " << r.init.seed << "\n";
    os << "amplitude = " << r.init.amplitude << "\n";
    os << "mean_amplitude = " << r.init.mean_amplitude << "\n";
    os << "band = " << r.init.band << "\n";
    if (cfg.sweep) {
        os << "[sweep]\n";
        os << "eps_values = ";
        for (std::size_t i = 0; i < cfg.sweep->eps_values.size(); ++i)
            os << (i ? "," : "") << cfg.sweep->eps_values[i];
        os << "\n";
        os << "weak_order = " << cfg.sweep->weak_order << "\n";
        os << "eta = " << cfg.sweep->eta << "\n";
    }
    return os.str();
}

}  // namespace aprs
