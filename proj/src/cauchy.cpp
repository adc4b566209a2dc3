#include "ekg/cauchy.hpp"

#include "ekg/errors.hpp"
#include "ekg/initial_data.hpp"
#include "ekg/kernels.hpp"

#include <cmath>
#include <string>

namespace ekg {

Accelerations field_accelerations(const CauchyState& s, const RadialGrid& grid, double m) {
    const int n = grid.n_cells;
    const double h = grid.spacing;
    std::vector<double> flux(n + 1), acoef(n), damp(n), pot(n);
    flux[0] = 0.0;
    for (int j = 1; j <= n; ++j) {
        const double ab = 0.5 * ((s.alpha[j - 1] - s.beta[j - 1]) + (s.alpha[j] - s.beta[j]));
        flux[j] = grid.face(j) * std::exp(ab);
    }
    const double m2 = m * m;
    for (int i = 0; i < n; ++i) {
        acoef[i] = std::exp(s.alpha[i] - s.beta[i]) / (grid.r(i) * h * h);
        damp[i] = s.beta_t[i] - s.alpha_t[i];
        pot[i] = m2 * std::exp(2.0 * s.alpha[i] - 2.0 * s.gamma[i]);
    }
    Accelerations acc{GridField(n), GridField(n)};
    kernels::WaveInputs in{s.gamma.padded(), s.phi.padded(), s.gamma_t.interior(), s.phi_t.interior(),
                           flux.data(), acoef.data(), damp.data(), pot.data(), n};
    kernels::wave_accel(in, acc.gamma_tt.interior(), acc.phi_tt.interior());
    for (int i = 0; i < n; ++i)
        if (!std::isfinite(acc.gamma_tt[i]) || !std::isfinite(acc.phi_tt[i]))
            throw NonFiniteError("non-finite acceleration at cell " + std::to_string(i));
    fill_ghosts(acc.gamma_tt);
    fill_ghosts(acc.phi_tt);
    return acc;
}

GridField alpha_t_constraint(const CauchyState& s, const RadialGrid& grid, double m) {
    // (alpha - beta)_r = -m^2 r e^{2 beta - 2 gamma} phi^2, vanishing on the axis.
    const int n = grid.n_cells;
    const double h = grid.spacing;
    GridField at(n);
    auto integrand = [&](int i) {
        const double e = std::exp(2.0 * s.beta[i] - 2.0 * s.gamma[i]);
        const double p = s.phi[i];
        return -m * m * grid.r(i) * e *
               (2.0 * (s.beta_t[i] - s.gamma_t[i]) * p * p + 2.0 * p * s.phi_t[i]);
    };
    double acc = 0.5 * (0.5 * h) * integrand(0);
    double prev = integrand(0);
    at[0] = s.beta_t[0] + acc;
    for (int i = 1; i < n; ++i) {
        const double cur = integrand(i);
        acc += 0.5 * h * (prev + cur);
        prev = cur;
        at[i] = s.beta_t[i] + acc;
    }
    fill_ghosts(at);
    return at;
}

namespace {

void fill_flat(CauchyState& s) {
    s.alpha.fill(0.0);
    s.beta.fill(0.0);
    s.beta_t.fill(0.0);
    s.alpha_t.fill(0.0);
}

struct Deriv {
    GridField g, gt, p, pt;
};

// alpha_ref/t_ref: the accepted slice used by the backward-difference closure.
Deriv stage_rhs(CauchyState& s, const RadialGrid& grid, const SimConfig& c, const GridField* alpha_ref,
                double t_ref) {
    for (GridField* f : {&s.gamma, &s.gamma_t, &s.phi, &s.phi_t}) fill_ghosts(*f);
    if (c.frozen_metric) {
        fill_flat(s);
    } else {
        solve_metric(s, grid, c.mass_m);
        if (c.alpha_closure == AlphaClosure::constraint_integral) {
            s.alpha_t = alpha_t_constraint(s, grid, c.mass_m);
        } else if (alpha_ref && s.time != t_ref) {
            const double inv = 1.0 / (s.time - t_ref);
            for (int i = 0; i < grid.n_cells; ++i) s.alpha_t[i] = (s.alpha[i] - (*alpha_ref)[i]) * inv;
            fill_ghosts(s.alpha_t);
        }
    }
    auto acc = field_accelerations(s, grid, c.mass_m);
    return Deriv{s.gamma_t, acc.gamma_tt, s.phi_t, acc.phi_tt};
}

void axpy(GridField& out, const GridField& base, double a, const GridField& d, int n) {
    for (int i = 0; i < n; ++i) out[i] = base[i] + a * d[i];
}

} // namespace

void prepare_state(CauchyState& s, const RadialGrid& grid, const SimConfig& c) {
    for (GridField* f : {&s.gamma, &s.gamma_t, &s.phi, &s.phi_t}) fill_ghosts(*f);
    if (c.frozen_metric) {
        fill_flat(s);
    } else {
        solve_metric(s, grid, c.mass_m);
        if (c.alpha_closure == AlphaClosure::constraint_integral) s.alpha_t = alpha_t_constraint(s, grid, c.mass_m);
    }
    apply_axis_parity_inplace(s);
}

CauchyState step_cauchy(const CauchyState& state, const CauchyState& prev, double dt, const SimConfig& c,
                        const RadialGrid& grid) {
    const double h = grid.spacing;
    if (!(dt > 0.0) || dt > c.cfl * h * (1.0 + 1e-12)) throw CFLError("dt exceeds cfl * spacing");
    double speed = 1.0;
    for (int i = 0; i < grid.n_cells; ++i) speed = std::max(speed, std::exp(state.alpha[i] - state.beta[i]));
    if (speed * dt / h > 1.0) throw CFLError("characteristic speed violates the step bound");

    const int n = grid.n_cells;
    const double t0 = state.time;
    const bool closure_bd = !c.frozen_metric && c.alpha_closure == AlphaClosure::backward_difference;

    CauchyState s1 = state;
    Deriv k1;
    if (closure_bd && prev.time < t0) k1 = stage_rhs(s1, grid, c, &prev.alpha, prev.time);
    else k1 = stage_rhs(s1, grid, c, nullptr, t0);

    auto stage = [&](const Deriv& k, double a, double tc) {
        CauchyState s(n);
        s.time = tc;
        axpy(s.gamma, state.gamma, a, k.g, n);
        axpy(s.gamma_t, state.gamma_t, a, k.gt, n);
        axpy(s.phi, state.phi, a, k.p, n);
        axpy(s.phi_t, state.phi_t, a, k.pt, n);
        s.alpha_t = state.alpha_t;
        return s;
    };
    CauchyState s2 = stage(k1, 0.5 * dt, t0 + 0.5 * dt);
    Deriv k2 = stage_rhs(s2, grid, c, &state.alpha, t0);
    CauchyState s3 = stage(k2, 0.5 * dt, t0 + 0.5 * dt);
    Deriv k3 = stage_rhs(s3, grid, c, &state.alpha, t0);
    CauchyState s4 = stage(k3, dt, t0 + dt);
    Deriv k4 = stage_rhs(s4, grid, c, &state.alpha, t0);

    CauchyState out(n);
    out.time = t0 + dt;
    const double w = dt / 6.0;
    auto combine = [&](GridField& o, const GridField& base, const GridField& a, const GridField& b,
                       const GridField& cc, const GridField& d) {
        for (int i = 0; i < n; ++i) o[i] = base[i] + w * (a[i] + 2.0 * b[i] + 2.0 * cc[i] + d[i]);
    };
    combine(out.gamma, state.gamma, k1.g, k2.g, k3.g, k4.g);
    combine(out.gamma_t, state.gamma_t, k1.gt, k2.gt, k3.gt, k4.gt);
    combine(out.phi, state.phi, k1.p, k2.p, k3.p, k4.p);
    combine(out.phi_t, state.phi_t, k1.pt, k2.pt, k3.pt, k4.pt);

    if (closure_bd) {
        stage_rhs(out, grid, c, &state.alpha, t0);
    } else {
        prepare_state(out, grid, c);
    }
    apply_axis_parity_inplace(out);
    if (!all_finite(out)) throw NonFiniteError("non-finite field after step at t = " + std::to_string(out.time));
    return out;
}

CauchyRun run_cauchy(const SimConfig& c) {
    const RadialGrid grid = build_grid(c);
    return run_cauchy(c, initial_state(c, grid));
}

CauchyRun run_cauchy(const SimConfig& c, CauchyState initial, int n_steps, const StepObserver& observer) {
    CauchyRun run;
    run.config = c;
    run.grid = build_grid(c.n_cells, c.r_max, 4);
    run.dt = c.dt();
    run.snapshot_dt = run.dt * c.snapshot_every;
    if (n_steps < 0) n_steps = static_cast<int>(std::llround(c.t_final / run.dt));

    prepare_state(initial, run.grid, c);
    run.snapshots.push_back(initial);
    if (observer) observer(initial);
    CauchyState prev = initial;
    CauchyState cur = std::move(initial);
    for (int k = 1; k <= n_steps; ++k) {
        CauchyState next = step_cauchy(cur, prev, run.dt, c, run.grid);
        next.time = k * run.dt;
        prev = std::move(cur);
        cur = std::move(next);
        if (observer) observer(cur);
        if (k % c.snapshot_every == 0) run.snapshots.push_back(cur);
    }
    fill_residual_history(run);
    return run;
}

namespace {

void check_interior(const CauchyRun& run, int index) {
    if (index < 1 || index + 1 >= static_cast<int>(run.snapshots.size()))
        throw IndexError("residual needs neighbouring snapshots at index " + std::to_string(index));
}

int residual_cells(const RadialGrid& g) { return g.n_cells - 3; }

} // namespace

double residual_momentum(const CauchyRun& run, int index) {
    check_interior(run, index);
    const auto& a = run.snapshots[index - 1];
    const auto& b = run.snapshots[index];
    const auto& c = run.snapshots[index + 1];
    const double inv = 1.0 / (c.time - a.time);
    double res = 0.0;
    for (int i = 0; i < residual_cells(run.grid); ++i)
        res = std::max(res, std::abs((c.beta[i] - a.beta[i]) * inv - b.beta_t[i]));
    return res;
}

double residual_evolution(const CauchyRun& run, int index) {
    check_interior(run, index);
    const auto& a = run.snapshots[index - 1];
    const auto& s = run.snapshots[index];
    const auto& c = run.snapshots[index + 1];
    const double dt = 0.5 * (c.time - a.time);
    const double h = run.grid.spacing;
    const double m2 = run.config.mass_m * run.config.mass_m;
    double res = 0.0;
    for (int i = 0; i < residual_cells(run.grid); ++i) {
        const double al = s.alpha[i], be = s.beta[i];
        const double ar = d_dr(s.alpha, i, h), br = d_dr(s.beta, i, h);
        const double arr = (s.alpha[i + 1] - 2.0 * al + s.alpha[i - 1]) / (h * h);
        const double btt = (c.beta[i] - 2.0 * be + a.beta[i]) / (dt * dt);
        const double at = (c.alpha[i] - a.alpha[i]) / (2.0 * dt);
        const double bt = s.beta_t[i];
        const double gr = d_dr(s.gamma, i, h), pr = d_dr(s.phi, i, h);
        const double gt = s.gamma_t[i], pt = s.phi_t[i];
        const double e2a = std::exp(-2.0 * al), e2b = std::exp(-2.0 * be);
        const double lhs = e2b * arr - e2a * btt + e2b * ar * (ar - br) + e2a * bt * (at - bt);
        const double rhs = -0.5 * m2 * std::exp(-2.0 * s.gamma[i]) * s.phi[i] * s.phi[i] +
                           e2a * (gt * gt + 0.5 * pt * pt) - e2b * (gr * gr + 0.5 * pr * pr);
        res = std::max(res, std::abs(lhs - rhs));
    }
    return res;
}

void fill_residual_history(CauchyRun& run) {
    run.residual_history.clear();
    if (run.config.frozen_metric) return;
    for (int k = 1; k + 1 < static_cast<int>(run.snapshots.size()); ++k)
        run.residual_history.push_back(
            {run.snapshots[k].time, residual_momentum(run, k), residual_evolution(run, k)});
}

} // namespace ekg
