#include "ekg/null.hpp"

#include "ekg/errors.hpp"
#include "ekg/initial_data.hpp"

#include <cmath>
#include <string>

namespace ekg {

namespace {

double face_value(const GridField& f, int i) {
    if (i == 0) return axis_value(f);
    return (-f[i - 2] + 9.0 * f[i - 1] + 9.0 * f[i] - f[i + 1]) / 16.0;
}

// f(0) + b r^2 fitted through the two innermost cells; returns b.
double even_curvature(const GridField& f, double h) { return (f[1] - f[0]) / (2.0 * h * h); }

} // namespace

NullBoundaryData init_null_from_free_data(const CauchyState& s0, const RadialGrid& grid, double m) {
    CauchyState s = apply_axis_parity(s0);
    const int n = grid.n_cells;
    const double h = grid.spacing;
    const double m2 = m * m;
    NullBoundaryData bd;
    for (auto* v : {&bd.r0, &bd.lambda0, &bd.gamma0, &bd.phi0}) v->resize(n + 1);
    for (auto* v : {&bd.r1, &bd.lambda1, &bd.gamma1, &bd.phi1}) v->resize(n);
    for (int j = 0; j <= n; ++j) {
        bd.r0[j] = j * h;
        bd.lambda0[j] = j == 0 ? 0.0 : face_value(s.beta, j);
        bd.gamma0[j] = face_value(s.gamma, j);
        bd.phi0[j] = face_value(s.phi, j);
    }
    const double dT = 0.5 * h;
    for (int j = 0; j < n; ++j) {
        const double R = grid.r(j);
        const double e = std::exp(s.beta[j] - s.alpha[j]);
        const double gT = e * s.gamma_t[j], pT = e * s.phi_t[j];
        const double gR = d_dr(s.gamma, j, h), pR = d_dr(s.phi, j, h);
        const double gRR = (s.gamma[j + 1] - 2.0 * s.gamma[j] + s.gamma[j - 1]) / (h * h);
        const double pRR = (s.phi[j + 1] - 2.0 * s.phi[j] + s.phi[j - 1]) / (h * h);
        const double lR = d_dr(s.beta, j, h);
        const double lRR = (s.beta[j + 1] - 2.0 * s.beta[j] + s.beta[j - 1]) / (h * h);
        const double ph = s.phi[j];
        const double E2 = std::exp(2.0 * s.beta[j] - 2.0 * s.gamma[j]);
        const double gTT = gRR + gR / R + E2 * 0.5 * m2 * ph * ph;
        const double pTT = pRR + pR / R - E2 * m2 * ph;
        const double lT = R * (2.0 * gT * gR + pT * pR);
        const double lTT = lRR + E2 * 0.5 * m2 * ph * ph - (gT * gT - gR * gR + 0.5 * pT * pT - 0.5 * pR * pR);
        const double rTT = m2 * R * E2 * ph * ph;
        (void)lR;
        bd.r1[j] = R + 0.5 * dT * dT * rTT;
        bd.lambda1[j] = s.beta[j] + dT * lT + 0.5 * dT * dT * lTT;
        bd.gamma1[j] = s.gamma[j] + dT * gT + 0.5 * dT * dT * gTT;
        bd.phi1[j] = ph + dT * pT + 0.5 * dT * dT * pTT;
    }
    // Axis point at T = h from the even expansion about the origin; alpha = beta = 0 there.
    const double g0 = axis_value(s.gamma), p0 = axis_value(s.phi);
    const double gt0 = axis_value(s.gamma_t), pt0 = axis_value(s.phi_t);
    const double E2 = std::exp(-2.0 * g0);
    const double gTT = 4.0 * even_curvature(s.gamma, h) + E2 * 0.5 * m2 * p0 * p0;
    const double pTT = 4.0 * even_curvature(s.phi, h) - E2 * m2 * p0;
    const double lTT = 2.0 * even_curvature(s.beta, h) + E2 * 0.5 * m2 * p0 * p0 - (gt0 * gt0 + 0.5 * pt0 * pt0);
    bd.axis_gamma = g0 + h * gt0 + 0.5 * h * h * gTT;
    bd.axis_phi = p0 + h * pt0 + 0.5 * h * h * pTT;
    bd.axis_lambda = 0.5 * h * h * lTT;
    return bd;
}

NullDerivatives null_derivatives_at(const CauchyState& s, const RadialGrid& grid, int i) {
    const double e = std::exp(s.beta[i] - s.alpha[i]);
    const double gT = e * s.gamma_t[i], pT = e * s.phi_t[i];
    const double gR = d_dr(s.gamma, i, grid.spacing), pR = d_dr(s.phi, i, grid.spacing);
    return {0.5 * (gT - gR), 0.5 * (gT + gR), 0.5 * (pT - pR), 0.5 * (pT + pR)};
}

AxisSeed axis_limits(const NullSlice& sl) {
    auto ex = [](const std::vector<double>& f) { return 3.0 * f[1] - 3.0 * f[2] + f[3]; };
    AxisSeed a;
    a.r = 0.0;
    // r = a R + b R^2 + c R^3 through k = 1, 2, 3 (R = k h / 2); regularity gives e^lambda = a.
    const double slope = (18.0 * sl.r[1] - 9.0 * sl.r[2] + 2.0 * sl.r[3]) / (6.0 * sl.R[1]);
    a.lambda = std::log(slope);
    a.gamma = ex(sl.gamma);
    a.phi = ex(sl.phi);
    a.r_u = -0.5 * std::exp(a.lambda);
    a.r_v = 0.5 * std::exp(a.lambda);
    return a;
}

namespace {

struct Corner {
    double r, lambda, gamma, phi;
};

Corner corner(const NullSlice& s, int k) { return {s.r[k], s.lambda[k], s.gamma[k], s.phi[k]}; }

Corner diamond(const Corner& E, const Corner& S, const Corner& W, const Corner& N0, double d, double m) {
    const double m2 = m * m;
    const double x = 0.25 * ((2.0 * N0.lambda - 2.0 * N0.gamma) + (2.0 * E.lambda - 2.0 * E.gamma) +
                             (2.0 * W.lambda - 2.0 * W.gamma) + (2.0 * S.lambda - 2.0 * S.gamma));
    const double ex = std::exp(x);
    const double rc = 0.25 * (N0.r + E.r + W.r + S.r);
    const double pc = 0.25 * (N0.phi + E.phi + W.phi + S.phi);
    const double d2 = d * d;

    Corner N;
    N.r = E.r + W.r - S.r + d2 * 0.25 * m2 * rc * ex * pc * pc;

    const double gu = (N0.gamma - W.gamma + E.gamma - S.gamma) / (2.0 * d);
    const double gv = (N0.gamma - E.gamma + W.gamma - S.gamma) / (2.0 * d);
    const double pu = (N0.phi - W.phi + E.phi - S.phi) / (2.0 * d);
    const double pv = (N0.phi - E.phi + W.phi - S.phi) / (2.0 * d);
    N.lambda = E.lambda + W.lambda - S.lambda + d2 * (-gu * gv - 0.5 * pu * pv + 0.125 * m2 * ex * pc * pc);

    const double rne = 0.5 * (N.r + E.r), rnw = 0.5 * (N.r + W.r);
    const double rws = 0.5 * (W.r + S.r), res = 0.5 * (E.r + S.r);
    const double rbar = 0.25 * (N.r + E.r + W.r + S.r);
    const double sg = 0.25 * m2 * rbar * ex * pc * pc;
    const double sp = -0.5 * m2 * rbar * ex * pc;
    const double den = rne + rnw;
    N.gamma = (d2 * sg + rne * E.gamma + rnw * W.gamma + rws * (W.gamma - S.gamma) + res * (E.gamma - S.gamma)) / den;
    N.phi = (d2 * sp + rne * E.phi + rnw * W.phi + rws * (W.phi - S.phi) + res * (E.phi - S.phi)) / den;
    return N;
}

} // namespace

NullSlice march_diamond(const NullRun& run, const NullBoundaryData& bd, int j) {
    if (j < 0 || j >= static_cast<int>(run.slices.size())) throw IndexError("march_diamond: slice not built");
    const NullSlice& prev = run.slices[j];
    const double d = run.du;
    const double m = run.config.mass_m;
    const int jn = j + 1;
    const int K = 2 * jn;
    if (jn >= static_cast<int>(bd.r0.size())) throw IndexError("null run outgrows the initial slice");

    NullSlice cur;
    cur.resize(K + 1);
    cur.v = jn * d;
    for (int k = 0; k <= K; ++k) {
        cur.u_values[k] = (jn - k) * d;
        cur.R[k] = 0.5 * k * d;
    }
    auto set = [&](int k, double r, double l, double g, double p) {
        cur.r[k] = r;
        cur.lambda[k] = l;
        cur.gamma[k] = g;
        cur.phi[k] = p;
    };
    set(K, bd.r0[jn], bd.lambda0[jn], bd.gamma0[jn], bd.phi0[jn]);
    set(K - 1, bd.r1[jn - 1], bd.lambda1[jn - 1], bd.gamma1[jn - 1], bd.phi1[jn - 1]);
    for (int k = K - 2; k >= 1; --k) {
        const Corner E = corner(prev, k - 1), S = corner(prev, k), W = corner(cur, k + 1);
        const Corner guess{E.r + W.r - S.r, E.lambda + W.lambda - S.lambda, E.gamma + W.gamma - S.gamma,
                           E.phi + W.phi - S.phi};
        Corner N = diamond(E, S, W, guess, d, m);
        N = diamond(E, S, W, N, d, m);
        if (!(std::isfinite(N.r) && std::isfinite(N.lambda) && std::isfinite(N.gamma) && std::isfinite(N.phi)))
            throw NonFiniteError("non-finite value in null march at v = " + std::to_string(cur.v));
        if (N.r <= 0.0)
            throw DegenerateConeError("areal radius lost positivity off the axis at v = " + std::to_string(cur.v));
        set(k, N.r, N.lambda, N.gamma, N.phi);
    }
    if (jn == 1) {
        set(0, 0.0, bd.axis_lambda, bd.axis_gamma, bd.axis_phi);
    } else {
        const AxisSeed a = axis_limits(cur);
        set(0, 0.0, a.lambda, a.gamma, a.phi);
    }
    return cur;
}

double NullRun::clock(double s) const {
    const double a = std::abs(s);
    const int last = static_cast<int>(axis_clock.size()) - 1;
    const double x = a / du;
    int i = std::min(static_cast<int>(x), std::max(last - 1, 0));
    const double t = x - i;
    double g = last <= 0 ? a : axis_clock[i] + t * (axis_clock[i + 1] - axis_clock[i]);
    return s < 0 ? -g : g;
}

double NullRun::clock_rate(double s) const {
    const double a = std::abs(s);
    const int last = static_cast<int>(axis_lambda.size()) - 1;
    if (last <= 0) return 1.0;
    const double x = a / du;
    int i = std::min(static_cast<int>(x), last - 1);
    const double t = x - i;
    return std::exp(axis_lambda[i] + t * (axis_lambda[i + 1] - axis_lambda[i]));
}

namespace {

void build_clock(NullRun& run) {
    const int J = static_cast<int>(run.slices.size());
    run.axis_lambda.resize(J);
    run.axis_clock.assign(J, 0.0);
    for (int j = 0; j < J; ++j) run.axis_lambda[j] = run.slices[j].lambda[0];
    for (int j = 1; j < J; ++j)
        run.axis_clock[j] = run.axis_clock[j - 1] +
                            0.5 * run.du * (std::exp(run.axis_lambda[j]) + std::exp(run.axis_lambda[j - 1]));
}

} // namespace

void fill_null_derivatives(NullRun& run) {
    const double d = run.du;
    const int J = static_cast<int>(run.slices.size());
    using Member = std::vector<double> NullSlice::*;
    const Member vals[4] = {&NullSlice::r, &NullSlice::lambda, &NullSlice::gamma, &NullSlice::phi};
    const Member du_[4] = {&NullSlice::r_u, &NullSlice::lambda_u, &NullSlice::gamma_u, &NullSlice::phi_u};
    const Member dv_[4] = {&NullSlice::r_v, &NullSlice::lambda_v, &NullSlice::gamma_v, &NullSlice::phi_v};
    for (int j = 0; j < J; ++j) {
        NullSlice& s = run.slices[j];
        const int K = static_cast<int>(s.size()) - 1;
        for (int c = 0; c < 4; ++c) {
            const auto& f = s.*vals[c];
            auto& fu = s.*du_[c];
            auto& fv = s.*dv_[c];
            // u decreases with k.
            for (int k = 0; k <= K; ++k) {
                if (K < 2) fu[k] = K == 0 ? 0.0 : -(f[1] - f[0]) / d;
                else if (k == 0) fu[k] = -(-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * d);
                else if (k == K) fu[k] = -(3.0 * f[K] - 4.0 * f[K - 1] + f[K - 2]) / (2.0 * d);
                else fu[k] = (f[k - 1] - f[k + 1]) / (2.0 * d);
            }
            // Same u on slice j +- 1 sits at k +- 1.
            for (int k = 0; k <= K; ++k) {
                auto at = [&](int jj, int kk) { return (run.slices[jj].*vals[c])[kk]; };
                const bool back = j >= 1 && k >= 1 && k - 1 <= 2 * (j - 1);
                const bool fwd = j + 1 < J;
                if (back && fwd) fv[k] = (at(j + 1, k + 1) - at(j - 1, k - 1)) / (2.0 * d);
                else if (fwd && j + 2 < J) fv[k] = (-3.0 * f[k] + 4.0 * at(j + 1, k + 1) - at(j + 2, k + 2)) / (2.0 * d);
                else if (j >= 2 && k >= 2 && k - 2 <= 2 * (j - 2))
                    fv[k] = (3.0 * f[k] - 4.0 * at(j - 1, k - 1) + at(j - 2, k - 2)) / (2.0 * d);
                else if (back) fv[k] = (f[k] - at(j - 1, k - 1)) / d;
                else if (k >= 2) fv[k] = 2.0 * fv[k - 1] - fv[k - 2];
                else fv[k] = 0.0;
            }
        }
    }
}

NullRun run_null(const SimConfig& c, const CauchyState& initial, const RadialGrid& grid) {
    NullRun run;
    run.config = c;
    run.du = grid.spacing;
    const NullBoundaryData bd = init_null_from_free_data(initial, grid, c.mass_m);
    const int J = static_cast<int>(std::llround(c.t_final / run.du));
    if (J > grid.n_cells) throw ConfigError("null run needs r_max >= t_final");

    NullSlice s0;
    s0.resize(1);
    s0.v = 0.0;
    s0.r[0] = 0.0;
    s0.lambda[0] = 0.0;
    s0.gamma[0] = bd.gamma0[0];
    s0.phi[0] = bd.phi0[0];
    run.slices.reserve(J + 1);
    run.slices.push_back(std::move(s0));
    for (int j = 0; j < J; ++j) run.slices.push_back(march_diamond(run, bd, j));
    fill_null_derivatives(run);
    build_clock(run);
    return run;
}

NullRun run_null(const SimConfig& c) {
    const RadialGrid grid = build_grid(c);
    return run_null(c, initial_state(c, grid), grid);
}

std::pair<double, double> residual_raychaudhuri(const NullRun& run, int j) {
    const int J = static_cast<int>(run.slices.size());
    if (j < 2 || j + 2 >= J) throw IndexError("null residual needs two slices on each side");
    const double d = run.du;
    const NullSlice& s = run.slices[j];
    const NullSlice& sp = run.slices[j + 1];
    const NullSlice& sm = run.slices[j - 1];
    const int K = static_cast<int>(s.size()) - 1;
    double ru = 0.0, rv = 0.0;
    auto qu = [](const NullSlice& sl, int k) { return std::exp(-2.0 * sl.lambda[k]) * sl.r_u[k]; };
    auto qv = [](const NullSlice& sl, int k) { return std::exp(-2.0 * sl.lambda[k]) * sl.r_v[k]; };
    for (int k = 2; k <= K - 2; ++k) {
        const double e = std::exp(-2.0 * s.lambda[k]);
        const double du_q = (qu(s, k - 1) - qu(s, k + 1)) / (2.0 * d);
        const double res_u = du_q + e * s.r[k] * (2.0 * s.gamma_u[k] * s.gamma_u[k] + s.phi_u[k] * s.phi_u[k]);
        const double dv_q = (qv(sp, k + 1) - qv(sm, k - 1)) / (2.0 * d);
        const double res_v = dv_q + e * s.r[k] * (2.0 * s.gamma_v[k] * s.gamma_v[k] + s.phi_v[k] * s.phi_v[k]);
        ru = std::max(ru, std::abs(res_u));
        rv = std::max(rv, std::abs(res_v));
    }
    return {ru, rv};
}

} // namespace ekg
