#include "ekg/cli.hpp"
#include "ekg/io.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace ekg;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("ekg_cli_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string write_config(const fs::path& dir, const std::string& body) {
    const fs::path p = dir / "run.cfg";
    std::ofstream(p) << body;
    return p.string();
}

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::vector<std::vector<std::string>> read_csv(const std::string& path) {
    std::vector<std::vector<std::string>> rows;
    std::ifstream f(path);
    std::string line;
    while (std::getline(f, line)) {
        std::vector<std::string> cells;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.emplace_back();
        rows.push_back(cells);
    }
    return rows;
}

const char* small_run = "n_cells = 128\nt_final = 2.0\napex_time = 3.0\nsnapshot_every = 4\n";

} // namespace

TEST(Cli, CauchyRunWritesSchema) {
    const fs::path d = scratch("cauchy");
    const RunArtifacts art = run(write_config(d, small_run), "cauchy", d.string());
    ASSERT_EQ(art.exit_code, exit_ok);
    const auto rows = read_csv(art.diagnostics_csv_path);
    ASSERT_GE(rows.size(), 2u);
    std::string header;
    for (std::size_t k = 0; k < rows[0].size(); ++k) header += (k ? "," : "") + rows[0][k];
    EXPECT_EQ(header, diagnostics_header);
    EXPECT_EQ(header, "time,E_total,E_cone,flux_PT,potential_cone,E_ext,kin_rate,radial_rate,X_sup,rU2_sup,"
                      "morawetz_partial,res_momentum,res_213,res_324,res_325");
    for (std::size_t k = 1; k < rows.size(); ++k) EXPECT_EQ(rows[k].size(), 15u);

    ASSERT_TRUE(fs::exists(art.snapshots_path + "/snapshots.csv"));
    const auto snap = read_csv(art.snapshots_path + "/snap_00000.csv");
    EXPECT_EQ(snap[0], (std::vector<std::string>{"r", "gamma", "gamma_t", "phi", "phi_t", "alpha", "beta"}));
    EXPECT_EQ(snap.size(), 129u);
    EXPECT_NE(slurp(art.report_path).find("E0 = "), std::string::npos);
}

TEST(Cli, RerunIsByteIdentical) {
    const fs::path a = scratch("rerun_a"), b = scratch("rerun_b");
    const RunArtifacts ra = run(write_config(a, small_run), "cauchy", a.string());
    const RunArtifacts rb = run(write_config(b, small_run), "cauchy", b.string());
    ASSERT_EQ(ra.exit_code, exit_ok);
    ASSERT_EQ(rb.exit_code, exit_ok);
    EXPECT_EQ(slurp(ra.diagnostics_csv_path), slurp(rb.diagnostics_csv_path));
    EXPECT_EQ(slurp(ra.snapshots_path + "/snap_00003.csv"), slurp(rb.snapshots_path + "/snap_00003.csv"));
}

TEST(Cli, VacuumHasZeroEnergyColumn) {
    const fs::path d = scratch("vacuum");
    const RunArtifacts art = run(write_config(d, std::string(small_run) + "kind = zero\n"), "cauchy", d.string());
    ASSERT_EQ(art.exit_code, exit_ok);
    const auto rows = read_csv(art.diagnostics_csv_path);
    for (std::size_t k = 1; k < rows.size(); ++k) {
        EXPECT_EQ(std::stod(rows[k][1]), 0.0);
        EXPECT_EQ(std::stod(rows[k][2]), 0.0);
    }
}

TEST(Cli, SeventeenSignificantDigits) {
    const fs::path d = scratch("digits");
    const RunArtifacts art = run(write_config(d, small_run), "cauchy", d.string());
    const auto rows = read_csv(art.diagnostics_csv_path);
    const std::string e = rows[1][1];
    EXPECT_EQ(format_real(std::stod(e)), e);
    EXPECT_EQ(format_real(0.1), "0.10000000000000001");
}

TEST(Cli, ExitCodes) {
    const fs::path d = scratch("codes");
    EXPECT_EQ(run(write_config(d, std::string(small_run) + "amp_phi = 50\n"), "cauchy", d.string()).exit_code,
              exit_degenerate);
    EXPECT_EQ(run(write_config(d, "n_cells = banana\n"), "cauchy", d.string()).exit_code, exit_config);
    EXPECT_EQ(run(write_config(d, "mystery_key = 1\n"), "cauchy", d.string()).exit_code, exit_config);
    EXPECT_EQ(run((d / "missing.cfg").string(), "cauchy", d.string()).exit_code, exit_config);
    EXPECT_EQ(run(write_config(d, small_run), "sideways", d.string()).exit_code, exit_config);
}

TEST(Cli, ArgumentParsing) {
    const fs::path d = scratch("argv");
    const std::string cfg = write_config(d, small_run), out = d.string();
    {
        const char* argv[] = {"ekg", "cauchy", "--config", cfg.c_str(), "--output-dir", out.c_str()};
        EXPECT_EQ(run_cli(6, const_cast<char**>(argv)), exit_ok);
    }
    {
        const char* argv[] = {"ekg", "cauchy"};
        EXPECT_EQ(run_cli(2, const_cast<char**>(argv)), exit_config);
    }
}

TEST(Cli, DiagnoseReusesSnapshots) {
    const fs::path d = scratch("diagnose");
    const std::string cfg = write_config(d, small_run);
    ASSERT_EQ(run(cfg, "cauchy", d.string()).exit_code, exit_ok);
    const std::string first = slurp((d / "diagnostics.csv").string());
    const RunArtifacts art = run(cfg, "diagnose", d.string());
    ASSERT_EQ(art.exit_code, exit_ok);
    const std::string rep = slurp(art.report_path);
    EXPECT_NE(rep.find("source = stored snapshots"), std::string::npos);
    EXPECT_NE(rep.find("morawetz = "), std::string::npos);
    EXPECT_EQ(slurp(art.diagnostics_csv_path), first);
}

TEST(Cli, NullModeWritesAxisTable) {
    const fs::path d = scratch("null");
    const RunArtifacts art = run(write_config(d, small_run), "null", d.string());
    ASSERT_EQ(art.exit_code, exit_ok);
    const auto rows = read_csv(d / "null_axis.csv");
    ASSERT_GE(rows.size(), 3u);
    EXPECT_EQ(rows[0].front(), "v");
    EXPECT_EQ(rows[0].size(), 10u);
}

TEST(Cli, CrosscheckModeWritesEvents) {
    const fs::path d = scratch("cross");
    const RunArtifacts art = run(write_config(d, "n_cells = 256\n"), "crosscheck", d.string());
    ASSERT_EQ(art.exit_code, exit_ok);
    EXPECT_GE(read_csv(d / "crosscheck.csv").size(), 2u);
    EXPECT_NE(slurp(art.report_path).find("relative_difference = "), std::string::npos);
}

TEST(Cli, ConvergeModeFrozenPulseIsSecondOrder) {
    const fs::path d = scratch("converge");
    const RunArtifacts art = run(write_config(d, "n_cells = 256\nmass_m = 0\nfrozen_metric = true\n"), "converge",
                                 d.string());
    ASSERT_EQ(art.exit_code, exit_ok);
    const auto rows = read_csv(d / "convergence.csv");
    ASSERT_EQ(rows.size(), 4u);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"quantity", "n_cells", "value", "order"}));
    EXPECT_EQ(rows[1][3], "");
    for (int k : {2, 3}) {
        const double order = std::stod(rows[k][3]);
        EXPECT_GE(order, 1.9);
        EXPECT_LE(order, 2.1);
    }
}
