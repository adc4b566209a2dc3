#include "ekg/config.hpp"

#include "ekg/errors.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace ekg {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_real(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("bad real for '" + key + "': " + v);
    }
}

int to_int(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const int x = std::stoi(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("bad integer for '" + key + "': " + v);
    }
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("bad boolean for '" + key + "': " + v);
}

} // namespace

const char* to_string(RunMode m) {
    switch (m) {
    case RunMode::cauchy: return "cauchy";
    case RunMode::null: return "null";
    case RunMode::crosscheck: return "crosscheck";
    case RunMode::converge: return "converge";
    case RunMode::diagnose: return "diagnose";
    }
    return "?";
}

const char* to_string(DataKind k) {
    switch (k) {
    case DataKind::gaussian_phi: return "gaussian_phi";
    case DataKind::gaussian_both: return "gaussian_both";
    case DataKind::zero: return "zero";
    }
    return "?";
}

RunMode parse_mode(const std::string& v) {
    for (RunMode m : {RunMode::cauchy, RunMode::null, RunMode::crosscheck, RunMode::converge, RunMode::diagnose})
        if (v == to_string(m)) return m;
    throw ConfigError("unknown mode: " + v);
}

SimConfig parse_config_text(const std::string& text) {
    SimConfig c;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        auto& d = c.data_family;
        if (key == "mass_m") c.mass_m = to_real(key, val);
        else if (key == "n_cells") c.n_cells = to_int(key, val);
        else if (key == "r_max") c.r_max = to_real(key, val);
        else if (key == "cfl") c.cfl = to_real(key, val);
        else if (key == "t_final") c.t_final = to_real(key, val);
        else if (key == "delta") c.delta = to_real(key, val);
        else if (key == "sigma") c.sigma = to_real(key, val);
        else if (key == "cone_fraction") c.cone_fraction = to_real(key, val);
        else if (key == "mode") c.mode = parse_mode(val);
        else if (key == "apex_time") c.apex_time = to_real(key, val);
        else if (key == "snapshot_every") c.snapshot_every = to_int(key, val);
        else if (key == "frozen_metric") c.frozen_metric = to_bool(key, val);
        else if (key == "output_dir") c.output_dir = val;
        else if (key == "alpha_closure") {
            if (val == "backward_difference") c.alpha_closure = AlphaClosure::backward_difference;
            else if (val == "constraint_integral") c.alpha_closure = AlphaClosure::constraint_integral;
            else throw ConfigError("unknown alpha_closure: " + val);
        } else if (key == "kind" || key == "data_family") {
            if (val == "gaussian_phi") d.kind = DataKind::gaussian_phi;
            else if (val == "gaussian_both") d.kind = DataKind::gaussian_both;
            else if (val == "zero") d.kind = DataKind::zero;
            else throw ConfigError("unknown data kind: " + val);
        } else if (key == "amp_phi") d.amp_phi = to_real(key, val);
        else if (key == "amp_gamma") d.amp_gamma = to_real(key, val);
        else if (key == "amp_phi_t") d.amp_phi_t = to_real(key, val);
        else if (key == "amp_gamma_t") d.amp_gamma_t = to_real(key, val);
        else if (key == "center") d.center = to_real(key, val);
        else if (key == "width") d.width = to_real(key, val);
        else throw ConfigError("unknown key: " + key);
    }
    validate_config(c);
    return c;
}

SimConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot read config: " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config_text(ss.str());
}

void validate_config(const SimConfig& c) {
    auto need = [](bool ok, const char* msg) {
        if (!ok) throw ConfigError(msg);
    };
    need(std::isfinite(c.mass_m) && c.mass_m >= 0.0, "mass_m must be >= 0");
    need(c.n_cells >= 16, "n_cells must be >= 16");
    need(std::isfinite(c.r_max) && c.r_max > 0.0, "r_max must be > 0");
    need(c.cfl > 0.0 && c.cfl <= 1.0, "cfl must be in (0,1]");
    need(std::isfinite(c.t_final) && c.t_final > 0.0, "t_final must be > 0");
    need(c.delta > 0.5 && c.delta < 2.0 / 3.0, "delta must be in (1/2, 2/3)");
    need(c.sigma > 1.0 && c.sigma < 2.0, "sigma must be in (1, 2)");
    need(c.cone_fraction > 0.0 && c.cone_fraction < 1.0, "cone_fraction must be in (0,1)");
    need(c.snapshot_every >= 1, "snapshot_every must be >= 1");
    need(c.data_family.width > 0.0, "width must be > 0");
    need(c.data_family.center >= 0.0, "center must be >= 0");
}

} // namespace ekg
