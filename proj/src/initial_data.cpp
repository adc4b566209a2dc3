#include "ekg/initial_data.hpp"

#include "ekg/diagnostics.hpp"
#include "ekg/errors.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace ekg {

double RadialProfile::value(double r) const {
    if (amp == 0.0) return 0.0;
    const double w2 = width * width;
    const double a = r - center, b = r + center;
    return amp * (std::exp(-a * a / w2) + std::exp(-b * b / w2)) / (1.0 + std::exp(-4.0 * center * center / w2));
}

double RadialProfile::d1(double r) const {
    if (amp == 0.0) return 0.0;
    const double w2 = width * width;
    const double a = r - center, b = r + center;
    return amp * (-2.0 * a / w2 * std::exp(-a * a / w2) - 2.0 * b / w2 * std::exp(-b * b / w2)) /
           (1.0 + std::exp(-4.0 * center * center / w2));
}

double RadialProfile::d2(double r) const {
    if (amp == 0.0) return 0.0;
    const double w2 = width * width;
    const double a = r - center, b = r + center;
    const double ta = (4.0 * a * a / (w2 * w2) - 2.0 / w2) * std::exp(-a * a / w2);
    const double tb = (4.0 * b * b / (w2 * w2) - 2.0 / w2) * std::exp(-b * b / w2);
    return amp * (ta + tb) / (1.0 + std::exp(-4.0 * center * center / w2));
}

namespace {

GridField sample(const RadialProfile& p, const RadialGrid& g) {
    GridField f(g.n_cells);
    for (int i = 0; i < g.n_cells; ++i) f[i] = p.value(g.r(i));
    fill_ghosts(f);
    return f;
}

// Midpoint value at face i (between cells i-1 and i), fourth order.
double face_value(const GridField& f, int i) {
    if (i == 0) return axis_value(f);
    return (-f[i - 2] + 9.0 * f[i - 1] + 9.0 * f[i] - f[i + 1]) / 16.0;
}

double face_deriv(const GridField& f, int i, double h) { return i == 0 ? 0.0 : (f[i] - f[i - 1]) / h; }

} // namespace

FreeData sample_free_data(const InitialDataFamily& fam, const RadialGrid& grid) {
    for (double a : {fam.amp_phi, fam.amp_gamma, fam.amp_phi_t, fam.amp_gamma_t})
        if (!std::isfinite(a)) throw ConfigError("non-finite amplitude");
    if (fam.amp_gamma < 0.0) throw ConfigError("gamma0 >= 0 violated: amp_gamma < 0");
    if (fam.amp_gamma_t < 0.0) throw ConfigError("gamma1 >= 0 violated: amp_gamma_t < 0");
    if (!(fam.width > 0.0)) throw ConfigError("width must be positive");

    FreeData d;
    auto mk = [&](double a) { return RadialProfile{a, fam.center, fam.width}; };
    switch (fam.kind) {
    case DataKind::zero: break;
    case DataKind::gaussian_phi:
        d.p0 = mk(fam.amp_phi);
        d.p1 = mk(fam.amp_phi_t);
        break;
    case DataKind::gaussian_both:
        d.p0 = mk(fam.amp_phi);
        d.p1 = mk(fam.amp_phi_t);
        d.g0 = mk(fam.amp_gamma);
        d.g1 = mk(fam.amp_gamma_t);
        break;
    }
    d.gamma0 = sample(d.g0, grid);
    d.gamma1 = sample(d.g1, grid);
    d.phi0 = sample(d.p0, grid);
    d.phi1 = sample(d.p1, grid);
    if (!data_conditions_hold(d, grid)) throw ConfigError("free data violate the gamma sign/slope conditions");
    return d;
}

bool data_conditions_hold(const FreeData& d, const RadialGrid& grid) {
    for (int i = 0; i < grid.n_cells; ++i) {
        const double r = grid.r(i);
        if (d.gamma1[i] < 0.0 || d.gamma0[i] < 0.0) return false;
        if (!(d.g0.d1(r) > -0.5 / r)) return false;
    }
    return true;
}

ConstraintSources sources_from_state(const CauchyState& s, const RadialGrid& grid) {
    const int n = grid.n_cells;
    const double h = grid.spacing;
    ConstraintSources src;
    for (auto* v : {&src.kin, &src.grad, &src.phi2, &src.gamma}) v->assign(2 * n + 1, 0.0);
    for (int i = 0; i <= n; ++i) {
        const int k = 2 * i;
        const double gt = face_value(s.gamma_t, i), pt = face_value(s.phi_t, i);
        const double gr = face_deriv(s.gamma, i, h), pr = face_deriv(s.phi, i, h);
        const double p = face_value(s.phi, i);
        src.kin[k] = gt * gt + 0.5 * pt * pt;
        src.grad[k] = gr * gr + 0.5 * pr * pr;
        src.phi2[k] = p * p;
        src.gamma[k] = face_value(s.gamma, i);
    }
    for (int i = 0; i < n; ++i) {
        const int k = 2 * i + 1;
        const double gr = d_dr(s.gamma, i, h), pr = d_dr(s.phi, i, h);
        src.kin[k] = s.gamma_t[i] * s.gamma_t[i] + 0.5 * s.phi_t[i] * s.phi_t[i];
        src.grad[k] = gr * gr + 0.5 * pr * pr;
        src.phi2[k] = s.phi[i] * s.phi[i];
        src.gamma[k] = s.gamma[i];
    }
    const double q = 0.25 * h;
    const double gt = interpolate(s.gamma_t, grid, q), pt = interpolate(s.phi_t, grid, q);
    const double gr = 0.5 * d_dr(s.gamma, 0, h), pr = 0.5 * d_dr(s.phi, 0, h);
    const double p = interpolate(s.phi, grid, q);
    src.q_kin = gt * gt + 0.5 * pt * pt;
    src.q_grad = gr * gr + 0.5 * pr * pr;
    src.q_phi2 = p * p;
    src.q_gamma = interpolate(s.gamma, grid, q);
    return src;
}

ConstraintSources sources_from_profiles(const FreeData& d, const RadialGrid& grid) {
    const int n = grid.n_cells;
    ConstraintSources src;
    for (auto* v : {&src.kin, &src.grad, &src.phi2, &src.gamma}) v->assign(2 * n + 1, 0.0);
    auto at = [&](double r, double& kin, double& grad, double& phi2, double& gam) {
        const double gt = d.g1.value(r), pt = d.p1.value(r);
        const double gr = d.g0.d1(r), pr = d.p0.d1(r);
        const double p = d.p0.value(r);
        kin = gt * gt + 0.5 * pt * pt;
        grad = gr * gr + 0.5 * pr * pr;
        phi2 = p * p;
        gam = d.g0.value(r);
    };
    for (int k = 0; k <= 2 * n; ++k) at(0.5 * k * grid.spacing, src.kin[k], src.grad[k], src.phi2[k], src.gamma[k]);
    at(0.25 * grid.spacing, src.q_kin, src.q_grad, src.q_phi2, src.q_gamma);
    return src;
}

MetricProfiles solve_constraint_odes(const ConstraintSources& src, const RadialGrid& grid, double m,
                                     ConstraintSolve which) {
    const int n = grid.n_cells;
    const double h = grid.spacing;
    const double m2h = 0.5 * m * m;
    const bool one_sided = which != ConstraintSolve::joint;
    if (one_sided && src.fixed.size() != static_cast<std::size_t>(2 * n + 1))
        throw ConfigError("one-sided constraint solve needs the fixed metric function at all nodes");

    struct Node {
        double r, kin, grad, phi2, gamma, fixed;
    };
    auto node = [&](int k) {
        return Node{0.5 * k * h, src.kin[k], src.grad[k], src.phi2[k], src.gamma[k], one_sided ? src.fixed[k] : 0.0};
    };
    const Node quarter{0.25 * h, src.q_kin, src.q_grad, src.q_phi2, src.q_gamma, src.q_fixed};

    // y = {beta, alpha}
    using Y = std::array<double, 2>;
    auto rhs = [&](const Node& nd, Y y) -> Y {
        if (which == ConstraintSolve::beta_only) y[1] = nd.fixed;
        if (which == ConstraintSolve::alpha_only) y[0] = nd.fixed;
        const double common = std::exp(2.0 * y[0] - 2.0 * y[1]) * nd.kin + nd.grad;
        const double pot = m2h * std::exp(2.0 * y[0] - 2.0 * nd.gamma) * nd.phi2;
        Y out{nd.r * (common + pot), nd.r * (common - pot)};
        if (which == ConstraintSolve::beta_only) out[1] = 0.0;
        if (which == ConstraintSolve::alpha_only) out[0] = 0.0;
        return out;
    };
    auto rk4 = [&](const Y& y, double dr, const Node& a, const Node& mid, const Node& b) {
        const Y k1 = rhs(a, y);
        const Y k2 = rhs(mid, {y[0] + 0.5 * dr * k1[0], y[1] + 0.5 * dr * k1[1]});
        const Y k3 = rhs(mid, {y[0] + 0.5 * dr * k2[0], y[1] + 0.5 * dr * k2[1]});
        const Y k4 = rhs(b, {y[0] + dr * k3[0], y[1] + dr * k3[1]});
        Y out;
        for (int c = 0; c < 2; ++c) out[c] = y[c] + dr / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
        return out;
    };

    MetricProfiles mp{GridField(n), GridField(n)};
    Y y{0.0, 0.0};
    for (int i = 0; i < n; ++i) {
        y = i == 0 ? rk4(y, 0.5 * h, node(0), quarter, node(1))
                   : rk4(y, h, node(2 * i - 1), node(2 * i), node(2 * i + 1));
        const double b = which == ConstraintSolve::alpha_only ? src.fixed[2 * i + 1] : y[0];
        const double a = which == ConstraintSolve::beta_only ? src.fixed[2 * i + 1] : y[1];
        if (!(std::isfinite(a) && std::isfinite(b))) throw BlowupError("constraint solve produced non-finite metric");
        if (b > 50.0) throw BlowupError("beta exceeded 50 in the constraint solve");
        mp.beta[i] = b;
        mp.alpha[i] = a;
    }
    fill_ghosts(mp.alpha);
    fill_ghosts(mp.beta);
    return mp;
}

namespace {

void attach_fixed(ConstraintSources& src, const GridField& f, const RadialGrid& grid) {
    const int n = grid.n_cells;
    src.fixed.assign(2 * n + 1, 0.0);
    for (int i = 0; i <= n; ++i) src.fixed[2 * i] = face_value(f, i);
    for (int i = 0; i < n; ++i) src.fixed[2 * i + 1] = f[i];
    src.q_fixed = interpolate(f, grid, 0.25 * grid.spacing);
}

} // namespace

GridField solve_beta_slice(const CauchyState& s, const RadialGrid& grid, double m) {
    auto src = sources_from_state(s, grid);
    GridField a = s.alpha;
    fill_ghosts(a);
    attach_fixed(src, a, grid);
    return solve_constraint_odes(src, grid, m, ConstraintSolve::beta_only).beta;
}

GridField solve_alpha_slice(const CauchyState& s, const RadialGrid& grid, double m) {
    auto src = sources_from_state(s, grid);
    GridField b = s.beta;
    fill_ghosts(b);
    attach_fixed(src, b, grid);
    return solve_constraint_odes(src, grid, m, ConstraintSolve::alpha_only).alpha;
}

GridField beta_t_from_momentum(const CauchyState& s, const RadialGrid& grid) {
    const double h = grid.spacing;
    GridField bt(grid.n_cells);
    for (int i = 0; i < grid.n_cells; ++i)
        bt[i] = grid.r(i) * (2.0 * s.gamma_t[i] * d_dr(s.gamma, i, h) + s.phi_t[i] * d_dr(s.phi, i, h));
    fill_ghosts(bt);
    return bt;
}

void solve_metric(CauchyState& s, const RadialGrid& grid, double m) {
    for (GridField* f : {&s.gamma, &s.gamma_t, &s.phi, &s.phi_t}) fill_ghosts(*f);
    auto mp = solve_constraint_odes(sources_from_state(s, grid), grid, m);
    s.alpha = std::move(mp.alpha);
    s.beta = std::move(mp.beta);
    s.beta_t = beta_t_from_momentum(s, grid);
}

CauchyState initial_state(const FreeData& d, const RadialGrid& grid, double m) {
    CauchyState s(grid.n_cells);
    s.gamma = d.gamma0;
    s.gamma_t = d.gamma1;
    s.phi = d.phi0;
    s.phi_t = d.phi1;
    solve_metric(s, grid, m);
    apply_axis_parity_inplace(s);
    return s;
}

CauchyState initial_state(const SimConfig& c, const RadialGrid& grid) {
    return initial_state(sample_free_data(c.data_family, grid), grid, c.mass_m);
}

ValidationReport validate_data(const CauchyState& s, const RadialGrid& grid, const SimConfig& c) {
    ValidationReport rep;
    const double h = grid.spacing;
    rep.total_energy = energy(s, grid, c.mass_m);
    rep.energy_below_2pi = rep.total_energy < 2.0 * std::numbers::pi;
    for (int i = 0; i < grid.n_cells; ++i) {
        const double r = grid.r(i);
        if (s.gamma_t[i] < 0.0 || s.gamma[i] < 0.0 || !(d_dr(s.gamma, i, h) > -0.5 / r)) rep.data_conditions_ok = false;
    }
    rep.beta_axis = axis_value(s.beta);
    rep.alpha_axis = axis_value(s.alpha);
    const double m2h = 0.5 * c.mass_m * c.mass_m;
    for (int i = 1; i < grid.n_cells - 1; ++i) {
        const double r = grid.r(i);
        const double gr = d_dr(s.gamma, i, h), pr = d_dr(s.phi, i, h);
        const double kin = s.gamma_t[i] * s.gamma_t[i] + 0.5 * s.phi_t[i] * s.phi_t[i];
        const double rhs = r * (std::exp(2.0 * s.beta[i] - 2.0 * s.alpha[i]) * kin + gr * gr + 0.5 * pr * pr +
                                m2h * std::exp(2.0 * s.beta[i] - 2.0 * s.gamma[i]) * s.phi[i] * s.phi[i]);
        rep.max_constraint_residual = std::max(rep.max_constraint_residual, std::abs(d_dr(s.beta, i, h) - rhs));
    }
    return rep;
}

std::vector<AmplitudeSweepRow> amplitude_sweep(SimConfig c, double start, int max_steps) {
    std::vector<AmplitudeSweepRow> rows;
    const RadialGrid grid = build_grid(c);
    double amp = start;
    for (int k = 0; k < max_steps; ++k, amp *= 2.0) {
        c.data_family.amp_phi = amp;
        AmplitudeSweepRow row{amp, 0.0, false, false, false};
        try {
            const auto s = initial_state(c, grid);
            const auto rep = validate_data(s, grid, c);
            row.energy = rep.total_energy;
            row.energy_ok = rep.energy_below_2pi;
            row.conditions_ok = rep.data_conditions_ok;
        } catch (const BlowupError&) {
            row.blowup = true;
        }
        rows.push_back(row);
        if (row.blowup || !row.energy_ok || !row.conditions_ok) break;
    }
    return rows;
}

} // namespace ekg
