#include "ekg/studies.hpp"

#include "ekg/crosscheck.hpp"
#include "ekg/diagnostics.hpp"
#include "ekg/initial_data.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>

namespace ekg {

std::vector<std::pair<double, double>> flat_events() {
    std::vector<std::pair<double, double>> ev;
    for (double T : {1.0, 2.0, 3.0, 4.0, 5.0})
        for (double R : {0.5, 2.0, 3.5, 6.0}) ev.emplace_back(T, R);
    return ev;
}

std::vector<double> flat_oracle_values(const SimConfig& c, const std::vector<std::pair<double, double>>& events,
                                       double tol) {
    const RadialGrid grid = build_grid(c.n_cells, c.r_max, 4);
    const FreeData d = sample_free_data(c.data_family, grid);
    OracleOptions opt;
    opt.tolerance = tol;
    return kernel_solve(SourceSpec{}, d, events, opt);
}

double frozen_pulse_error(SimConfig c, const std::vector<std::pair<double, double>>& events,
                          const std::vector<double>& oracle) {
    c.frozen_metric = true;
    c.mass_m = 0.0;
    c.snapshot_every = 1;
    double tmax = 0.0;
    for (const auto& e : events) tmax = std::max(tmax, e.first);
    c.t_final = tmax + 2.0 * c.dt();
    const CauchyRun run = run_cauchy(c);
    double diff = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < events.size(); ++i) {
        const double u = sample_cauchy(run, &CauchyState::phi, events[i].first, events[i].second);
        diff = std::max(diff, std::abs(u - oracle[i]));
        scale = std::max(scale, std::abs(oracle[i]));
    }
    return diff / scale;
}

ResidualSample coupled_residuals(const SimConfig& c, bool with_null) {
    ResidualSample out;
    const CauchyRun run = run_cauchy(c);
    for (const auto& r : run.residual_history) {
        out.momentum = std::max(out.momentum, r.momentum);
        out.res_evolution = std::max(out.res_evolution, r.evolution);
    }
    for (int k = 1; k + 1 < static_cast<int>(run.snapshots.size()); ++k) {
        const auto ir = identity_residuals(run, k);
        out.res_energy_transport = std::max(out.res_energy_transport, ir.res_energy_transport);
        out.res_momentum_transport = std::max(out.res_momentum_transport, ir.res_momentum_transport);
    }
    if (with_null) {
        const NullRun nrun = run_null(c, run.snapshots.front(), run.grid);
        const int J = static_cast<int>(nrun.slices.size());
        for (int j = 2; j + 2 < J; ++j) {
            const auto [u, v] = residual_raychaudhuri(nrun, j);
            out.null_u = std::max(out.null_u, u);
            out.null_v = std::max(out.null_v, v);
        }
        out.cross = relative_difference(cross_events(nrun, run, default_event_targets()));
    }
    return out;
}

double observed_order(double coarse, double fine) { return std::log2(coarse / fine); }

std::vector<ConvergenceRow> convergence_study(const SimConfig& base) {
    std::vector<SimConfig> cfg(3, base);
    for (int i = 0; i < 3; ++i) cfg[i].n_cells = base.n_cells << i;
    std::vector<ConvergenceRow> rows;
    auto add = [&](const std::string& name, const double (&v)[3]) {
        for (int i = 0; i < 3; ++i)
            rows.push_back({name, cfg[i].n_cells, v[i],
                            i == 0 ? std::numeric_limits<double>::quiet_NaN() : observed_order(v[i - 1], v[i])});
    };
    if (base.frozen_metric) {
        const auto ev = flat_events();
        const auto oracle = flat_oracle_values(base, ev);
        std::future<double> f[3];
        for (int i = 0; i < 3; ++i)
            f[i] = std::async(std::launch::async, [&, i] { return frozen_pulse_error(cfg[i], ev, oracle); });
        double e[3];
        for (int i = 0; i < 3; ++i) e[i] = f[i].get();
        add("field_error_vs_kernel", e);
        return rows;
    }
    std::future<ResidualSample> f[3];
    for (int i = 0; i < 3; ++i)
        f[i] = std::async(std::launch::async, [&, i] { return coupled_residuals(cfg[i]); });
    ResidualSample s[3];
    for (int i = 0; i < 3; ++i) s[i] = f[i].get();
    auto col = [&](double ResidualSample::*m, const char* name) {
        const double v[3] = {s[0].*m, s[1].*m, s[2].*m};
        add(name, v);
    };
    col(&ResidualSample::momentum, "res_momentum");
    col(&ResidualSample::res_evolution, "res_evolution");
    col(&ResidualSample::res_energy_transport, "res_energy_transport");
    col(&ResidualSample::res_momentum_transport, "res_momentum_transport");
    col(&ResidualSample::null_u, "res_null_u");
    col(&ResidualSample::null_v, "res_null_v");
    col(&ResidualSample::cross, "crosscheck_rel_diff");
    return rows;
}

} // namespace ekg
