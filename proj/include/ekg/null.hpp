#pragma once

#include "ekg/config.hpp"
#include "ekg/grid.hpp"
#include "ekg/state.hpp"

#include <utility>
#include <vector>

namespace ekg {

// Points of slice j sit at k = 0..2j: k = 0 is the axis, u = (j - k) du, v = j dv, R = k du / 2.
// Rows k = 2j and k = 2j - 1 lie on T = 0 and T = du / 2 and are filled from the Cauchy slice.
struct NullRun {
    SimConfig config;
    double du = 0.0;
    std::vector<NullSlice> slices;

    // Axis lapse lambda(T, 0) at T = j du, used for the axis-normalized relabelling.
    std::vector<double> axis_lambda;
    // G(s) = int_0^s e^{lambda_axis}, odd in s; sampled at s = j du.
    std::vector<double> axis_clock;

    double clock(double s) const; // G(s) by interpolation of axis_clock
    double clock_rate(double s) const; // G'(s)
};

// Values on the T = 0 row (faces R = j du) and the T = du/2 row (cell centres).
struct NullBoundaryData {
    // Index j: T = 0 point at R = j du.
    std::vector<double> r0, lambda0, gamma0, phi0;
    // Index j: T = du/2 point at R = (j + 1/2) du.
    std::vector<double> r1, lambda1, gamma1, phi1;
    // Axis point at T = du.
    double axis_lambda = 0.0, axis_gamma = 0.0, axis_phi = 0.0;
};

// The initial slice must be constraint-solved (alpha, beta filled).
NullBoundaryData init_null_from_free_data(const CauchyState& initial, const RadialGrid& grid, double mass_m);


// Values at the first off-axis point of the initial cone in null derivative form, for tests.
struct NullDerivatives {
    double gamma_u, gamma_v, phi_u, phi_v;
};
NullDerivatives null_derivatives_at(const CauchyState& s, const RadialGrid& grid, int cell);

struct AxisSeed {
    double r, lambda, gamma, phi, r_u, r_v;
};

// Seed for the axis point of a slice whose off-axis points k = 1, 2, 3 are filled.
AxisSeed axis_limits(const NullSlice& partial);

// Builds slice j + 1 of the run (slices 0..j must exist).
NullSlice march_diamond(const NullRun& run, const NullBoundaryData& bd, int slice_index);

NullRun run_null(const SimConfig& config);
NullRun run_null(const SimConfig& config, const CauchyState& initial, const RadialGrid& grid);

// Fills u- and v-derivatives of every slice by finite differences.
void fill_null_derivatives(NullRun& run);

// Max residuals of the two null constraint equations on slice j (needs slices j-2..j+2).
std::pair<double, double> residual_raychaudhuri(const NullRun& run, int slice_index);

} // namespace ekg
