#pragma once

#include "ekg/cauchy.hpp"
#include "ekg/grid.hpp"
#include "ekg/state.hpp"

#include <vector>

namespace ekg {

struct NullRun;

struct Densities {
    std::vector<double> e, m_dens, f, e_kin;
};

// Cell-centred densities; radial derivatives by centred differences.
Densities densities(const CauchyState& s, const RadialGrid& grid, double mass_m);

// 2 pi int_0^R e r e^beta dr. Kinetic and potential parts are weighted at cells, gradient parts at
// faces, so that the frozen-metric semi-discrete energy is exactly conserved.
// up_to_r < 0 means the whole grid.
double energy(const CauchyState& s, const RadialGrid& grid, double mass_m, double up_to_r = -1.0);

struct ConeSpec {
    double apex_time = 8.0;
    double cone_fraction = 0.5;
};

// Mantle radius r2 at every stored snapshot with time < apex (ingoing characteristic traced backward).
struct ConeTrack {
    std::vector<int> index;
    std::vector<double> time, r2;
    // Position in `index` of a snapshot index, or -1.
    int find(int snapshot) const;
};

ConeTrack trace_mantle(const CauchyRun& run, const ConeSpec& cone);

double energy_cone(const CauchyRun& run, const ConeTrack& track, int snapshot);

struct FluxResult {
    double stokes = 0.0; // E^O(tau) - E^O(s)
    double mantle = 0.0; // trapezoid quadrature of 2 pi r e^alpha (e - m) along the mantle
    double residual = 0.0;
};

FluxResult flux_PT(const CauchyRun& run, const ConeTrack& track, int snap_tau, int snap_s);

struct NonconcentrationRow {
    double time;
    double r2;
    double potential_cone; // int f over the cone slice
    double E_ext;          // energy on r1 < r < r2
    double kin_rate;       // r2^{-1} int_{K_tau} e_kin
    double radial_rate;    // r2^{-1} int_{K_tau} e^{-2 beta}(2 gamma_r^2 + phi_r^2)/2
};

std::vector<NonconcentrationRow> nonconcentration_suite(const CauchyRun& run, const ConeSpec& cone,
                                                        const ConeTrack& track);

struct IdentityResiduals {
    double res_energy_transport = 0.0;
    double res_momentum_transport = 0.0;
    double sum_defect = 0.0;  // max |G^2 + F^2 - 2 r e|
    double diff_defect = 0.0; // max |G^2 - F^2 - 2 r m|
    std::vector<double> F2, G2, F2_hat, G2_hat;
};

IdentityResiduals identity_residuals(const CauchyRun& run, int index);

struct WeightedSups {
    double X = 0.0;   // sup r^delta |U_v|
    double rU2 = 0.0; // sup r |U|^2
    double X0 = 0.0;  // sup r^delta |V_v|, V = U_R
    double Y0 = 0.0;  // sup r^{delta-1} |V|
    double L0 = 0.0;  // sup r^{delta-1} |lambda_R|
};

// Sups over the grid points of one snapshot inside the cone (r <= r2).
WeightedSups weighted_sups_at(const CauchyRun& run, const ConeTrack& track, int snapshot, double delta);
// Sups over every snapshot inside the cone.
WeightedSups weighted_sups(const CauchyRun& run, const ConeTrack& track, double delta);

// Running int_0^t int_0^{r2} (gamma_u^2 + phi_u^2) R^{sigma-1} dR dT, one entry per track point.
std::vector<double> morawetz_series(const CauchyRun& run, const ConeTrack& track, double sigma);
double morawetz_integral(const CauchyRun& run, const ConeTrack& track, double sigma);

struct AxisSlice {
    double v;
    std::vector<double> R, dev_ru, dev_rv, dev_r;
    double slope_ru = 0.0, slope_rv = 0.0, slope_r = 0.0;
};

// Deviations in the axis-normalized gauge; slopes fitted over R in [r_lo, r_hi].
std::vector<AxisSlice> axis_geometry(const NullRun& run, double r_lo = 0.1, double r_hi = 1.0);

// Least-squares slope of log y against log x over points with y > floor.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y, double floor = 1e-14);

struct DiagnosticsRecord {
    double time = 0.0;
    double E_total = 0.0, E_cone = 0.0, flux_PT = 0.0;
    double potential_cone = 0.0, E_ext = 0.0, kin_integral_rate = 0.0, radial_integral_rate = 0.0;
    double X_sup = 0.0, Y_sup = 0.0, rU2_sup = 0.0, morawetz_partial = 0.0;
    double res_momentum = 0.0, res_evolution = 0.0;
    double res_energy_transport = 0.0, res_momentum_transport = 0.0;
    double axis_dev_ru = 0.0, axis_dev_rv = 0.0, axis_dev_r = 0.0;
};

// One record per stored snapshot. Quantities not defined at a snapshot (outside the cone,
// run boundaries for differenced residuals) are reported as 0.
std::vector<DiagnosticsRecord> diagnostics_series(const CauchyRun& run, const ConeSpec& cone);

} // namespace ekg
