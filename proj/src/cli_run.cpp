#include "ekg/cli.hpp"

#include "ekg/cauchy.hpp"
#include "ekg/config.hpp"
#include "ekg/crosscheck.hpp"
#include "ekg/diagnostics.hpp"
#include "ekg/errors.hpp"
#include "ekg/initial_data.hpp"
#include "ekg/io.hpp"
#include "ekg/null.hpp"
#include "ekg/studies.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace ekg {

namespace {

RunMode mode_from(const std::string& s) {
    for (RunMode m : {RunMode::cauchy, RunMode::null, RunMode::crosscheck, RunMode::converge, RunMode::diagnose})
        if (s == to_string(m)) return m;
    throw ConfigError("unknown mode: " + s);
}

void write_report_header(std::ofstream& rep, const SimConfig& c) {
    rep << "mode = " << to_string(c.mode) << "\n";
    rep << "n_cells = " << c.n_cells << "\nr_max = " << format_real(c.r_max) << "\nmass_m = " << format_real(c.mass_m)
        << "\nt_final = " << format_real(c.t_final) << "\nkind = " << to_string(c.data_family.kind) << "\n";
}

void cauchy_outputs(const CauchyRun& run, const SimConfig& c, RunArtifacts& art, std::ofstream& rep) {
    const ConeSpec cone{c.apex_time, c.cone_fraction};
    write_diagnostics_csv(art.diagnostics_csv_path, diagnostics_series(run, cone));
    const auto v = validate_data(run.snapshots.front(), run.grid, c);
    rep << "E0 = " << format_real(v.total_energy) << "\nenergy_below_2pi = " << v.energy_below_2pi
        << "\ndata_conditions_ok = " << v.data_conditions_ok << "\nbeta_axis = " << format_real(v.beta_axis)
        << "\nalpha_axis = " << format_real(v.alpha_axis)
        << "\nmax_constraint_residual = " << format_real(v.max_constraint_residual) << "\n";
}

void execute(const SimConfig& c, RunArtifacts& art) {
    const std::string out = c.output_dir;
    std::filesystem::create_directories(out);
    art.report_path = out + "/report.txt";
    art.diagnostics_csv_path = out + "/diagnostics.csv";
    art.snapshots_path = out + "/snapshots";
    std::ofstream rep(art.report_path);
    write_report_header(rep, c);

    switch (c.mode) {
    case RunMode::cauchy: {
        const CauchyRun run = run_cauchy(c);
        write_snapshots(art.snapshots_path, run);
        cauchy_outputs(run, c, art, rep);
        break;
    }
    case RunMode::diagnose: {
        CauchyRun run;
        if (std::filesystem::exists(art.snapshots_path + "/snapshots.csv")) {
            run = read_snapshots(art.snapshots_path, c);
            rep << "source = stored snapshots\n";
        } else {
            run = run_cauchy(c);
            write_snapshots(art.snapshots_path, run);
            rep << "source = fresh run\n";
        }
        cauchy_outputs(run, c, art, rep);
        const ConeSpec cone{c.apex_time, c.cone_fraction};
        const auto track = trace_mantle(run, cone);
        const auto sups = weighted_sups(run, track, c.delta);
        rep << "X = " << format_real(sups.X) << "\nrU2 = " << format_real(sups.rU2) << "\nX0 = " << format_real(sups.X0)
            << "\nY0 = " << format_real(sups.Y0) << "\nL0 = " << format_real(sups.L0)
            << "\nmorawetz = " << format_real(morawetz_integral(run, track, c.sigma)) << "\n";
        if (track.index.size() >= 2) {
            const auto fl = flux_PT(run, track, track.index.front(), track.index.back());
            rep << "flux_stokes = " << format_real(fl.stokes) << "\nflux_mantle = " << format_real(fl.mantle)
                << "\nflux_residual = " << format_real(fl.residual) << "\n";
        }
        break;
    }
    case RunMode::null: {
        const NullRun nrun = run_null(c);
        const auto geo = axis_geometry(nrun);
        std::ofstream f(out + "/null_axis.csv");
        f << "v,axis_lambda,res_u,res_v,slope_r,slope_ru,slope_rv,max_dev_r,max_dev_ru,max_dev_rv\n";
        const int J = static_cast<int>(nrun.slices.size());
        for (int j = 0; j < J; ++j) {
            double ru = 0.0, rv = 0.0;
            if (j >= 2 && j + 2 < J) std::tie(ru, rv) = residual_raychaudhuri(nrun, j);
            const auto& g = geo[j];
            auto mx = [](const std::vector<double>& x) { return x.empty() ? 0.0 : *std::max_element(x.begin(), x.end()); };
            f << format_real(g.v) << ',' << format_real(nrun.axis_lambda[j]) << ',' << format_real(ru) << ','
              << format_real(rv) << ',' << format_real(g.slope_r) << ',' << format_real(g.slope_ru) << ','
              << format_real(g.slope_rv) << ',' << format_real(mx(g.dev_r)) << ',' << format_real(mx(g.dev_ru)) << ','
              << format_real(mx(g.dev_rv)) << '\n';
        }
        art.diagnostics_csv_path = out + "/null_axis.csv";
        break;
    }
    case RunMode::crosscheck: {
        const RadialGrid grid = build_grid(c);
        SimConfig cc = c;
        cc.snapshot_every = 1;
        const CauchyRun run = run_cauchy(cc, initial_state(c, grid));
        const NullRun nrun = run_null(c, run.snapshots.front(), run.grid);
        const auto ev = cross_events(nrun, run, default_event_targets());
        write_crosscheck_csv(out + "/crosscheck.csv", ev);
        rep << "relative_difference = " << format_real(relative_difference(ev)) << "\n";
        cauchy_outputs(run, c, art, rep);
        break;
    }
    case RunMode::converge: {
        const auto rows = convergence_study(c);
        write_convergence_csv(out + "/convergence.csv", rows);
        art.diagnostics_csv_path = out + "/convergence.csv";
        for (const auto& r : rows)
            if (!std::isnan(r.order)) rep << r.quantity << "@" << r.n_cells << " order = " << format_real(r.order) << "\n";
        break;
    }
    }
}

} // namespace

RunArtifacts run(const std::string& config_path, const std::string& mode_override, const std::string& output_dir) {
    RunArtifacts art;
    try {
        SimConfig c = load_config(config_path);
        if (!mode_override.empty()) c.mode = mode_from(mode_override);
        if (!output_dir.empty()) c.output_dir = output_dir;
        execute(c, art);
        art.exit_code = exit_ok;
    } catch (const BlowupError& e) {
        std::cerr << "blowup: " << e.what() << "\n";
        art.exit_code = exit_degenerate;
    } catch (const DegenerateConeError& e) {
        std::cerr << "degenerate cone: " << e.what() << "\n";
        art.exit_code = exit_degenerate;
    } catch (const NonFiniteError& e) {
        std::cerr << "non-finite: " << e.what() << "\n";
        art.exit_code = exit_numerical;
    } catch (const QuadratureError& e) {
        std::cerr << "quadrature: " << e.what() << "\n";
        art.exit_code = exit_numerical;
    } catch (const IndexError& e) {
        std::cerr << "index: " << e.what() << "\n";
        art.exit_code = exit_numerical;
    } catch (const EkgError& e) {
        std::cerr << "config: " << e.what() << "\n";
        art.exit_code = exit_config;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "config: " << e.what() << "\n";
        art.exit_code = exit_config;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        art.exit_code = exit_numerical;
    }
    return art;
}

int run_cli(int argc, char** argv) {
    CLI::App app{"Radially symmetric Einstein-wave-Klein-Gordon evolution"};
    std::string mode, config, out;
    app.add_option("mode", mode, "cauchy | null | crosscheck | converge | diagnose")->required();
    app.add_option("--config", config, "key = value configuration file")->required();
    app.add_option("--output-dir", out, "directory for CSV outputs");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : exit_config;
    }
    const RunArtifacts art = run(config, mode, out);
    if (art.exit_code == exit_ok) std::cout << "wrote " << art.diagnostics_csv_path << "\n";
    return art.exit_code;
}

} // namespace ekg
