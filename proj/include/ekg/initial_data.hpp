#pragma once

#include "ekg/config.hpp"
#include "ekg/grid.hpp"
#include "ekg/state.hpp"

#include <vector>

namespace ekg {

// A[e^{-(r-c)^2/w^2} + e^{-(r+c)^2/w^2}] / (1 + e^{-4c^2/w^2}); equals A at r = c.
struct RadialProfile {
    double amp = 0.0;
    double center = 0.0;
    double width = 1.0;

    double value(double r) const;
    double d1(double r) const;
    double d2(double r) const;
    bool is_zero() const { return amp == 0.0; }
};

struct FreeData {
    GridField gamma0, gamma1, phi0, phi1;
    RadialProfile g0, g1, p0, p1;
};

FreeData sample_free_data(const InitialDataFamily& family, const RadialGrid& grid);

// gamma1 >= 0, gamma0 >= 0, gamma0' > -1/(2r) at every cell.
bool data_conditions_hold(const FreeData& data, const RadialGrid& grid);

// Matter terms of the slice constraint ODEs at the half-spacing nodes r = k h / 2,
// k = 0..2n, plus the node r = h / 4 used by the first half step.
struct ConstraintSources {
    std::vector<double> kin;   // gamma_t^2 + phi_t^2 / 2
    std::vector<double> grad;  // gamma_r^2 + phi_r^2 / 2
    std::vector<double> phi2;  // phi^2
    std::vector<double> gamma; // gamma
    double q_kin = 0, q_grad = 0, q_phi2 = 0, q_gamma = 0;
    std::vector<double> fixed; // the metric function held fixed in a one-sided solve
    double q_fixed = 0;
};

ConstraintSources sources_from_state(const CauchyState& s, const RadialGrid& grid);
ConstraintSources sources_from_profiles(const FreeData& d, const RadialGrid& grid);

enum class ConstraintSolve { joint, beta_only, alpha_only };

struct MetricProfiles {
    GridField alpha, beta;
};

// Classical RK4 outward from the axis with alpha(0) = beta(0) = 0.
// beta_only holds alpha at `fixed`; alpha_only holds beta at `fixed`.
MetricProfiles solve_constraint_odes(const ConstraintSources& src, const RadialGrid& grid, double mass_m,
                                     ConstraintSolve which = ConstraintSolve::joint);

GridField solve_beta_slice(const CauchyState& s, const RadialGrid& grid, double mass_m);
GridField solve_alpha_slice(const CauchyState& s, const RadialGrid& grid, double mass_m);
GridField beta_t_from_momentum(const CauchyState& s, const RadialGrid& grid);

// Solves alpha, beta jointly and fills beta_t; ghosts refreshed.
void solve_metric(CauchyState& s, const RadialGrid& grid, double mass_m);

CauchyState initial_state(const FreeData& data, const RadialGrid& grid, double mass_m);
CauchyState initial_state(const SimConfig& config, const RadialGrid& grid);

struct ValidationReport {
    double total_energy = 0.0;
    bool energy_below_2pi = true;
    bool data_conditions_ok = true;
    double beta_axis = 0.0;
    double alpha_axis = 0.0;
    double max_constraint_residual = 0.0;
};

ValidationReport validate_data(const CauchyState& s, const RadialGrid& grid, const SimConfig& config);

struct AmplitudeSweepRow {
    double amp_phi;
    double energy;
    bool energy_ok;
    bool conditions_ok;
    bool blowup;
};

// Doubles amp_phi from `start` until the first family failing a check (or max_steps).
std::vector<AmplitudeSweepRow> amplitude_sweep(SimConfig config, double start, int max_steps = 20);

} // namespace ekg
