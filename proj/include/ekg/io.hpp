#pragma once

#include "ekg/cauchy.hpp"
#include "ekg/crosscheck.hpp"
#include "ekg/diagnostics.hpp"

#include <string>
#include <vector>

namespace ekg {

inline constexpr const char* diagnostics_header =
    "time,E_total,E_cone,flux_PT,potential_cone,E_ext,kin_rate,radial_rate,X_sup,rU2_sup,morawetz_partial,"
    "res_momentum,res_213,res_324,res_325";

void write_diagnostics_csv(const std::string& path, const std::vector<DiagnosticsRecord>& rows);
void write_snapshot_csv(const std::string& path, const CauchyState& s, const RadialGrid& grid);
// Writes snap_XXXXX.csv files plus snapshots.csv (index,time,file) into dir.
void write_snapshots(const std::string& dir, const CauchyRun& run);
// Reads a directory written by write_snapshots back into a run (alpha_t, beta_t recomputed).
CauchyRun read_snapshots(const std::string& dir, const SimConfig& config);

struct ConvergenceRow {
    std::string quantity;
    int n_cells;
    double value;
    double order; // NaN on the coarsest row
};

void write_convergence_csv(const std::string& path, const std::vector<ConvergenceRow>& rows);
void write_crosscheck_csv(const std::string& path, const std::vector<CrossEvent>& events);

std::string format_real(double x);

} // namespace ekg
