#pragma once

#include "ekg/config.hpp"
#include "ekg/grid.hpp"
#include "ekg/state.hpp"

#include <functional>
#include <vector>

namespace ekg {

struct ResidualRow {
    double time;
    double momentum;
    double evolution;
};

struct CauchyRun {
    SimConfig config;
    RadialGrid grid;
    double dt = 0.0;             // evolution step
    double snapshot_dt = 0.0;    // spacing of stored snapshots
    std::vector<CauchyState> snapshots;
    std::vector<ResidualRow> residual_history;

    double t_last() const { return snapshots.back().time; }
};

struct Accelerations {
    GridField gamma_tt, phi_tt;
};

// Uses alpha, beta, beta_t and alpha_t as stored in the state; ghosts must be filled.
Accelerations field_accelerations(const CauchyState& s, const RadialGrid& grid, double mass_m);

// alpha_t from the time derivative of the lapse constraint, integrated outward from the axis.
GridField alpha_t_constraint(const CauchyState& s, const RadialGrid& grid, double mass_m);

// Makes the state consistent: ghosts, alpha, beta, beta_t, alpha_t (or flat when frozen).
void prepare_state(CauchyState& s, const RadialGrid& grid, const SimConfig& config);

// One RK4 step. `prev` is the last accepted slice before `state` (may equal `state` on the first step).
CauchyState step_cauchy(const CauchyState& state, const CauchyState& prev, double dt, const SimConfig& config,
                        const RadialGrid& grid);

using StepObserver = std::function<void(const CauchyState&)>;

CauchyRun run_cauchy(const SimConfig& config);
CauchyRun run_cauchy(const SimConfig& config, CauchyState initial, int n_steps = -1,
                     const StepObserver& observer = {});

// Discrete residuals at a stored snapshot; need snapshots index-1 and index+1.
double residual_momentum(const CauchyRun& run, int index);
double residual_evolution(const CauchyRun& run, int index);

void fill_residual_history(CauchyRun& run);

} // namespace ekg
