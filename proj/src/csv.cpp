#include "ekg/io.hpp"

#include "ekg/errors.hpp"
#include "ekg/initial_data.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace ekg {

std::string format_real(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
    const auto parent = std::filesystem::path(path).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
    std::ofstream f(path);
    if (!f) throw ConfigError("cannot write " + path);
    return f;
}

void row(std::ostream& o, std::initializer_list<double> xs) {
    bool first = true;
    for (double x : xs) {
        if (!first) o << ',';
        o << format_real(x);
        first = false;
    }
    o << '\n';
}

} // namespace

void write_diagnostics_csv(const std::string& path, const std::vector<DiagnosticsRecord>& rows) {
    auto f = open_out(path);
    f << diagnostics_header << '\n';
    for (const auto& d : rows)
        row(f, {d.time, d.E_total, d.E_cone, d.flux_PT, d.potential_cone, d.E_ext, d.kin_integral_rate,
                d.radial_integral_rate, d.X_sup, d.rU2_sup, d.morawetz_partial, d.res_momentum, d.res_evolution,
                d.res_energy_transport, d.res_momentum_transport});
}

void write_snapshot_csv(const std::string& path, const CauchyState& s, const RadialGrid& grid) {
    auto f = open_out(path);
    f << "r,gamma,gamma_t,phi,phi_t,alpha,beta\n";
    for (int i = 0; i < grid.n_cells; ++i)
        row(f, {grid.r(i), s.gamma[i], s.gamma_t[i], s.phi[i], s.phi_t[i], s.alpha[i], s.beta[i]});
}

void write_snapshots(const std::string& dir, const CauchyRun& run) {
    std::filesystem::create_directories(dir);
    auto idx = open_out(dir + "/snapshots.csv");
    idx << "index,time,file\n";
    for (std::size_t k = 0; k < run.snapshots.size(); ++k) {
        char name[32];
        std::snprintf(name, sizeof name, "snap_%05zu.csv", k);
        write_snapshot_csv(dir + "/" + name, run.snapshots[k], run.grid);
        idx << k << ',' << format_real(run.snapshots[k].time) << ',' << name << '\n';
    }
}

CauchyRun read_snapshots(const std::string& dir, const SimConfig& c) {
    std::ifstream idx(dir + "/snapshots.csv");
    if (!idx) throw ConfigError("no snapshots.csv in " + dir);
    CauchyRun run;
    run.config = c;
    run.grid = build_grid(c.n_cells, c.r_max, 4);
    run.dt = c.dt();
    run.snapshot_dt = run.dt * c.snapshot_every;
    std::string line;
    std::getline(idx, line);
    while (std::getline(idx, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string k, t, file;
        std::getline(ss, k, ',');
        std::getline(ss, t, ',');
        std::getline(ss, file, ',');
        std::ifstream f(dir + "/" + file);
        if (!f) throw ConfigError("missing snapshot " + file);
        CauchyState s(c.n_cells);
        s.time = std::strtod(t.c_str(), nullptr);
        std::getline(f, line);
        int i = 0;
        while (std::getline(f, line) && i < c.n_cells) {
            double v[7];
            std::stringstream ls(line);
            std::string cell;
            for (double& x : v) {
                std::getline(ls, cell, ',');
                // strtod keeps subnormals that stod rejects.
                x = std::strtod(cell.c_str(), nullptr);
            }
            s.gamma[i] = v[1];
            s.gamma_t[i] = v[2];
            s.phi[i] = v[3];
            s.phi_t[i] = v[4];
            s.alpha[i] = v[5];
            s.beta[i] = v[6];
            ++i;
        }
        if (i != c.n_cells) throw ConfigError("snapshot " + file + " does not match n_cells");
        apply_axis_parity_inplace(s);
        if (!c.frozen_metric) {
            s.beta_t = beta_t_from_momentum(s, run.grid);
            s.alpha_t = alpha_t_constraint(s, run.grid, c.mass_m);
        }
        apply_axis_parity_inplace(s);
        run.snapshots.push_back(std::move(s));
    }
    if (run.snapshots.size() >= 2) run.snapshot_dt = run.snapshots[1].time - run.snapshots[0].time;
    fill_residual_history(run);
    return run;
}

void write_convergence_csv(const std::string& path, const std::vector<ConvergenceRow>& rows) {
    auto f = open_out(path);
    f << "quantity,n_cells,value,order\n";
    for (const auto& r : rows)
        f << r.quantity << ',' << r.n_cells << ',' << format_real(r.value) << ','
          << (std::isnan(r.order) ? std::string("") : format_real(r.order)) << '\n';
}

void write_crosscheck_csv(const std::string& path, const std::vector<CrossEvent>& ev) {
    auto f = open_out(path);
    f << "slice,k,v_axis,r,t_cauchy,gamma_null,gamma_cauchy,phi_null,phi_cauchy\n";
    for (const auto& e : ev) {
        f << e.slice << ',' << e.k << ',';
        row(f, {e.v_axis, e.r, e.t_cauchy, e.gamma_null, e.gamma_cauchy, e.phi_null, e.phi_cauchy});
    }
}

} // namespace ekg
