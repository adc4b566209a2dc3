#include "ekg/diagnostics.hpp"

#include "ekg/errors.hpp"
#include "ekg/kernels.hpp"
#include "ekg/null.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace ekg {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

double overlap(double a, double b, double lim) { return std::clamp(lim - a, 0.0, b - a); }

GridField to_field(const std::vector<double>& v, Parity p) {
    GridField f(static_cast<int>(v.size()));
    for (int i = 0; i < f.size(); ++i) f[i] = v[i];
    fill_ghosts(f, p);
    return f;
}

} // namespace

Densities densities(const CauchyState& s, const RadialGrid& grid, double m) {
    const int n = grid.n_cells;
    const double h = grid.spacing;
    std::vector<double> gr(n), pr(n), ea(n), eb(n), eab(n), ef(n);
    for (int i = 0; i < n; ++i) {
        gr[i] = d_dr(s.gamma, i, h);
        pr[i] = d_dr(s.phi, i, h);
        ea[i] = std::exp(-2.0 * s.alpha[i]);
        eb[i] = std::exp(-2.0 * s.beta[i]);
        eab[i] = std::exp(-s.alpha[i] - s.beta[i]);
        ef[i] = m * m * std::exp(-2.0 * s.gamma[i]);
    }
    Densities d;
    for (auto* v : {&d.e, &d.m_dens, &d.f, &d.e_kin}) v->assign(n, 0.0);
    kernels::DensityInputs in{s.gamma_t.interior(), s.phi_t.interior(), gr.data(), pr.data(), s.phi.interior(),
                              ea.data(), eb.data(), eab.data(), ef.data(), n};
    kernels::densities(in, {d.e.data(), d.m_dens.data(), d.f.data(), d.e_kin.data()});
    return d;
}

double energy(const CauchyState& s, const RadialGrid& grid, double m, double up_to_r) {
    const int n = grid.n_cells;
    const double h = grid.spacing;
    const double lim = up_to_r < 0.0 ? grid.r_max : std::min(up_to_r, grid.r_max);
    const double m2h = 0.5 * m * m;
    double cells = 0.0, faces = 0.0;
    for (int i = 0; i < n; ++i) {
        const double w = overlap(grid.face(i), grid.face(i + 1), lim);
        if (w <= 0.0) break;
        const double kin = std::exp(-2.0 * s.alpha[i]) *
                           (s.gamma_t[i] * s.gamma_t[i] + 0.5 * s.phi_t[i] * s.phi_t[i]);
        const double pot = m2h * std::exp(-2.0 * s.gamma[i]) * s.phi[i] * s.phi[i];
        cells += w * grid.r(i) * std::exp(s.beta[i]) * (kin + pot);
    }
    for (int j = 1; j < n; ++j) {
        const double w = overlap(grid.face(j) - 0.5 * h, grid.face(j) + 0.5 * h, lim);
        if (w <= 0.0) break;
        const double gr = (s.gamma[j] - s.gamma[j - 1]) / h;
        const double pr = (s.phi[j] - s.phi[j - 1]) / h;
        const double bf = 0.5 * (s.beta[j] + s.beta[j - 1]);
        faces += w * grid.face(j) * std::exp(-bf) * (gr * gr + 0.5 * pr * pr);
    }
    return two_pi * (cells + faces);
}

int ConeTrack::find(int snapshot) const {
    auto it = std::lower_bound(index.begin(), index.end(), snapshot);
    if (it == index.end() || *it != snapshot) return -1;
    return static_cast<int>(it - index.begin());
}

ConeTrack trace_mantle(const CauchyRun& run, const ConeSpec& cone) {
    const auto& snaps = run.snapshots;
    const auto& grid = run.grid;
    auto speed = [&](int k, double r) {
        return std::exp(interpolate(snaps[k].alpha, grid, r) - interpolate(snaps[k].beta, grid, r));
    };
    int K = static_cast<int>(snaps.size()) - 1;
    while (K >= 0 && snaps[K].time >= cone.apex_time) --K;
    ConeTrack tr;
    if (K < 0) return tr;
    const double r_lim = grid.r_max - 3.0 * grid.spacing;
    std::vector<double> r(K + 1);
    r[K] = cone.apex_time - snaps[K].time;
    for (int k = K; k > 0; --k) {
        if (r[k] > r_lim) throw ConeOutOfRangeError("cone mantle leaves the grid");
        const double dt = snaps[k].time - snaps[k - 1].time;
        const double s0 = speed(k, r[k]);
        const double pred = r[k] + dt * s0;
        if (pred > r_lim) throw ConeOutOfRangeError("cone mantle leaves the grid");
        r[k - 1] = r[k] + 0.5 * dt * (s0 + speed(k - 1, pred));
    }
    if (r[0] > r_lim) throw ConeOutOfRangeError("cone mantle leaves the grid");
    for (int k = 0; k <= K; ++k) {
        tr.index.push_back(k);
        tr.time.push_back(snaps[k].time);
        tr.r2.push_back(r[k]);
    }
    return tr;
}

double energy_cone(const CauchyRun& run, const ConeTrack& track, int snapshot) {
    const int p = track.find(snapshot);
    if (p < 0) throw ConeOutOfRangeError("snapshot outside the cone window");
    return energy(run.snapshots[snapshot], run.grid, run.config.mass_m, track.r2[p]);
}

FluxResult flux_PT(const CauchyRun& run, const ConeTrack& track, int a, int b) {
    const int pa = track.find(a), pb = track.find(b);
    if (pa < 0 || pb < 0) throw ConeOutOfRangeError("flux endpoints outside the cone window");
    FluxResult res;
    res.stokes = energy_cone(run, track, a) - energy_cone(run, track, b);
    auto integrand = [&](int p) {
        const auto& s = run.snapshots[track.index[p]];
        const auto d = densities(s, run.grid, run.config.mass_m);
        const GridField e = to_field(d.e, Parity::even);
        const GridField mm = to_field(d.m_dens, Parity::odd);
        const double r = track.r2[p];
        return two_pi * r * std::exp(interpolate(s.alpha, run.grid, r)) *
               (interpolate(e, run.grid, r) - interpolate(mm, run.grid, r));
    };
    const int lo = std::min(pa, pb), hi = std::max(pa, pb);
    double prev = integrand(lo);
    for (int p = lo + 1; p <= hi; ++p) {
        const double cur = integrand(p);
        res.mantle += 0.5 * (track.time[p] - track.time[p - 1]) * (prev + cur);
        prev = cur;
    }
    if (pa > pb) res.mantle = -res.mantle;
    res.residual = res.stokes - res.mantle;
    return res;
}

namespace {

// 2 pi int_0^lim q r e^{w} dr with q given at cells.
double cell_integral(const std::vector<double>& q, const GridField& expo, const RadialGrid& grid, double lim) {
    double acc = 0.0;
    for (int i = 0; i < grid.n_cells; ++i) {
        const double w = overlap(grid.face(i), grid.face(i + 1), lim);
        if (w <= 0.0) break;
        acc += w * grid.r(i) * std::exp(expo[i]) * q[i];
    }
    return two_pi * acc;
}

} // namespace

std::vector<NonconcentrationRow> nonconcentration_suite(const CauchyRun& run, const ConeSpec& cone,
                                                        const ConeTrack& track) {
    const auto& grid = run.grid;
    const double m = run.config.mass_m;
    const int np = static_cast<int>(track.index.size());
    std::vector<NonconcentrationRow> rows(np);
    std::vector<double> skin(np), srad(np);
    for (int p = 0; p < np; ++p) {
        const auto& s = run.snapshots[track.index[p]];
        const double r2 = track.r2[p];
        const auto d = densities(s, grid, m);
        GridField ab(grid.n_cells);
        std::vector<double> rad(grid.n_cells);
        for (int i = 0; i < grid.n_cells; ++i) {
            ab[i] = s.alpha[i] + s.beta[i];
            const double gr = d_dr(s.gamma, i, grid.spacing), pr = d_dr(s.phi, i, grid.spacing);
            rad[i] = std::exp(-2.0 * s.beta[i]) * (gr * gr + 0.5 * pr * pr);
        }
        rows[p].time = track.time[p];
        rows[p].r2 = r2;
        rows[p].potential_cone = cell_integral(d.f, s.beta, grid, r2);
        rows[p].E_ext = energy(s, grid, m, r2) - energy(s, grid, m, cone.cone_fraction * r2);
        skin[p] = cell_integral(d.e_kin, ab, grid, r2);
        srad[p] = cell_integral(rad, ab, grid, r2);
    }
    // Tail from the last stored slice to the apex when the apex lies inside the run.
    double kin_acc = 0.0, rad_acc = 0.0;
    if (np > 0 && run.t_last() >= cone.apex_time) {
        const double tail = cone.apex_time - track.time[np - 1];
        kin_acc = 0.5 * tail * skin[np - 1];
        rad_acc = 0.5 * tail * srad[np - 1];
    }
    for (int p = np - 1; p >= 0; --p) {
        if (p + 1 < np) {
            const double dt = track.time[p + 1] - track.time[p];
            kin_acc += 0.5 * dt * (skin[p] + skin[p + 1]);
            rad_acc += 0.5 * dt * (srad[p] + srad[p + 1]);
        }
        const double r2 = rows[p].r2;
        rows[p].kin_rate = r2 > 0.0 ? kin_acc / r2 : 0.0;
        rows[p].radial_rate = r2 > 0.0 ? rad_acc / r2 : 0.0;
    }
    return rows;
}

IdentityResiduals identity_residuals(const CauchyRun& run, int index) {
    if (index < 1 || index + 1 >= static_cast<int>(run.snapshots.size()))
        throw IndexError("identity residuals need neighbouring snapshots");
    const auto& grid = run.grid;
    const double h = grid.spacing;
    const double m = run.config.mass_m;
    const auto& sa = run.snapshots[index - 1];
    const auto& s = run.snapshots[index];
    const auto& sc = run.snapshots[index + 1];
    const double inv2dt = 1.0 / (sc.time - sa.time);
    const int n = grid.n_cells;

    const auto da = densities(sa, grid, m), d = densities(s, grid, m), dc = densities(sc, grid, m);
    GridField flux_m(n), flux_e(n);
    for (int i = 0; i < n; ++i) {
        const double ea = grid.r(i) * std::exp(s.alpha[i]);
        flux_m[i] = ea * d.m_dens[i];
        flux_e[i] = ea * d.e[i];
    }
    fill_ghosts(flux_m, Parity::even); // r e^alpha m is even in r
    fill_ghosts(flux_e, Parity::odd);  // r e^alpha e is odd in r

    IdentityResiduals out;
    out.F2.resize(n);
    out.G2.resize(n);
    out.F2_hat.resize(n);
    out.G2_hat.resize(n);
    const double m2 = m * m;
    for (int i = 0; i < n; ++i) {
        const double r = grid.r(i);
        out.F2[i] = r * (d.e[i] - d.m_dens[i]);
        out.G2[i] = r * (d.e[i] + d.m_dens[i]);
        out.F2_hat[i] = std::exp(2.0 * s.beta[i]) * out.F2[i];
        out.G2_hat[i] = std::exp(2.0 * s.beta[i]) * out.G2[i];
        out.sum_defect = std::max(out.sum_defect, std::abs(out.G2[i] + out.F2[i] - 2.0 * r * d.e[i]));
        out.diff_defect = std::max(out.diff_defect, std::abs(out.G2[i] - out.F2[i] - 2.0 * r * d.m_dens[i]));
    }
    for (int i = 0; i < n - 3; ++i) {
        const double r = grid.r(i);
        const double eb_a = r * std::exp(sa.beta[i]), eb_c = r * std::exp(sc.beta[i]);
        const double de_t = (eb_c * dc.e[i] - eb_a * da.e[i]) * inv2dt;
        const double dm_t = (eb_c * dc.m_dens[i] - eb_a * da.m_dens[i]) * inv2dt;
        const double dm_r = d_dr(flux_m, i, h);
        const double de_r = d_dr(flux_e, i, h);

        const double al = s.alpha[i], be = s.beta[i];
        const double gr = d_dr(s.gamma, i, h), pr = d_dr(s.phi, i, h);
        const double Tg = std::exp(-al) * s.gamma_t[i], Tp = std::exp(-al) * s.phi_t[i];
        const double Rg = std::exp(-be) * gr, Rp = std::exp(-be) * pr;
        const double ph = s.phi[i];
        const double ef = m2 * std::exp(-2.0 * s.gamma[i]);
        const double f = ef * ph * ph;
        const double ar = d_dr(s.alpha, i, h);
        const double L0 = 0.5 * (-2.0 * Tg * Tg - Tp * Tp + 2.0 * Rg * Rg + Rp * Rp) -
                          2.0 * ef * r * (ph * pr - ph * ph * gr) - 0.5 * f;
        const double L = 0.5 * r * std::exp(al) * ar * (2.0 * Tg * Tg + Tp * Tp + 2.0 * Rg * Rg + Rp * Rp - f) +
                         std::exp(al) * L0 - r * s.beta_t[i] * std::exp(be) * d.m_dens[i];
        out.res_energy_transport = std::max(out.res_energy_transport, std::abs(de_t - dm_r));
        out.res_momentum_transport = std::max(out.res_momentum_transport, std::abs(dm_t - de_r - L));
    }
    return out;
}

namespace {

// V = U_R in the local frame at one snapshot (cells, odd ghosts filled).
GridField frame_radial(const CauchyState& s, const GridField& u, const RadialGrid& grid) {
    GridField v(grid.n_cells);
    for (int i = 0; i < grid.n_cells; ++i)
        v[i] = std::exp(0.5 * (s.alpha[i] - s.beta[i])) * d_dr(u, i, grid.spacing);
    fill_ghosts(v, Parity::odd);
    return v;
}

} // namespace

WeightedSups weighted_sups_at(const CauchyRun& run, const ConeTrack& track, int k, double delta) {
    WeightedSups w;
    const int p = track.find(k);
    if (p < 0) return w;
    const auto& grid = run.grid;
    const auto& snaps = run.snapshots;
    const auto& s = snaps[k];
    const double r2 = track.r2[p];
    const int last = static_cast<int>(snaps.size()) - 1;
    const int ka = std::max(0, k - 1), kc = std::min(last, k + 1);
    const double dtk = snaps[kc].time - snaps[ka].time;
    for (int field = 0; field < 2; ++field) {
        auto pick = [&](const CauchyState& st) -> const GridField& { return field == 0 ? st.gamma : st.phi; };
        auto pick_t = [&](const CauchyState& st) -> const GridField& { return field == 0 ? st.gamma_t : st.phi_t; };
        const GridField& u = pick(s);
        const GridField V = frame_radial(s, u, grid);
        const GridField Va = frame_radial(snaps[ka], pick(snaps[ka]), grid);
        const GridField Vc = frame_radial(snaps[kc], pick(snaps[kc]), grid);
        for (int i = 0; i < grid.n_cells && grid.r(i) <= r2; ++i) {
            const double r = grid.r(i);
            const double up = std::exp(0.5 * (s.beta[i] - s.alpha[i]));
            const double uT = up * pick_t(s)[i];
            const double uv = 0.5 * (uT + V[i]);
            w.X = std::max(w.X, std::pow(r, delta) * std::abs(uv));
            w.rU2 = std::max(w.rU2, r * u[i] * u[i]);
            w.Y0 = std::max(w.Y0, std::pow(r, delta - 1.0) * std::abs(V[i]));
            const double VT = dtk > 0.0 ? up * (Vc[i] - Va[i]) / dtk : 0.0;
            const double VR = std::exp(0.5 * (s.alpha[i] - s.beta[i])) * d_dr(V, i, grid.spacing);
            w.X0 = std::max(w.X0, std::pow(r, delta) * std::abs(0.5 * (VT + VR)));
        }
    }
    for (int i = 0; i < grid.n_cells && grid.r(i) <= r2; ++i) {
        const double W = std::exp(0.5 * (s.alpha[i] - s.beta[i])) * 0.5 *
                         (d_dr(s.alpha, i, grid.spacing) + d_dr(s.beta, i, grid.spacing));
        w.L0 = std::max(w.L0, std::pow(grid.r(i), delta - 1.0) * std::abs(W));
    }
    return w;
}

WeightedSups weighted_sups(const CauchyRun& run, const ConeTrack& track, double delta) {
    WeightedSups w;
    for (int k : track.index) {
        const auto a = weighted_sups_at(run, track, k, delta);
        w.X = std::max(w.X, a.X);
        w.rU2 = std::max(w.rU2, a.rU2);
        w.X0 = std::max(w.X0, a.X0);
        w.Y0 = std::max(w.Y0, a.Y0);
        w.L0 = std::max(w.L0, a.L0);
    }
    return w;
}

std::vector<double> morawetz_series(const CauchyRun& run, const ConeTrack& track, double sigma) {
    const auto& grid = run.grid;
    const int np = static_cast<int>(track.index.size());
    std::vector<double> slice(np), out(np, 0.0);
    for (int p = 0; p < np; ++p) {
        const auto& s = run.snapshots[track.index[p]];
        double acc = 0.0;
        for (int i = 0; i < grid.n_cells; ++i) {
            const double w = overlap(grid.face(i), grid.face(i + 1), track.r2[p]);
            if (w <= 0.0) break;
            const double up = std::exp(0.5 * (s.beta[i] - s.alpha[i]));
            const double dn = std::exp(0.5 * (s.alpha[i] - s.beta[i]));
            const double gu = 0.5 * (up * s.gamma_t[i] - dn * d_dr(s.gamma, i, grid.spacing));
            const double pu = 0.5 * (up * s.phi_t[i] - dn * d_dr(s.phi, i, grid.spacing));
            acc += w * (gu * gu + pu * pu) * std::pow(grid.r(i), sigma - 1.0);
        }
        slice[p] = acc;
    }
    for (int p = 1; p < np; ++p) out[p] = out[p - 1] + 0.5 * (track.time[p] - track.time[p - 1]) * (slice[p] + slice[p - 1]);
    return out;
}

double morawetz_integral(const CauchyRun& run, const ConeTrack& track, double sigma) {
    const auto s = morawetz_series(run, track, sigma);
    return s.empty() ? 0.0 : s.back();
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y, double floor) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(y[i] > floor) || !(x[i] > 0.0)) continue;
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++n;
    }
    if (n < 2) return 0.0;
    const double den = n * sxx - sx * sx;
    return den == 0.0 ? 0.0 : (n * sxy - sx * sy) / den;
}

std::vector<AxisSlice> axis_geometry(const NullRun& run, double r_lo, double r_hi) {
    std::vector<AxisSlice> out;
    for (const auto& sl : run.slices) {
        AxisSlice a;
        const double vt = run.clock(sl.v);
        a.v = vt;
        std::vector<double> fx;
        std::vector<double> fru, frv, fr;
        for (std::size_t k = 1; k < sl.size(); ++k) {
            const double u = sl.u_values[k];
            const double ut = run.clock(u);
            const double Rt = 0.5 * (vt - ut);
            const double ru = sl.r_u[k] / run.clock_rate(u);
            const double rv = sl.r_v[k] / run.clock_rate(sl.v);
            a.R.push_back(Rt);
            a.dev_ru.push_back(std::abs(ru + 0.5));
            a.dev_rv.push_back(std::abs(rv - 0.5));
            a.dev_r.push_back(std::abs(sl.r[k] - Rt));
            if (Rt >= r_lo && Rt <= r_hi) {
                fx.push_back(Rt);
                fru.push_back(a.dev_ru.back());
                frv.push_back(a.dev_rv.back());
                fr.push_back(a.dev_r.back());
            }
        }
        a.slope_ru = loglog_slope(fx, fru);
        a.slope_rv = loglog_slope(fx, frv);
        a.slope_r = loglog_slope(fx, fr);
        out.push_back(std::move(a));
    }
    return out;
}

std::vector<DiagnosticsRecord> diagnostics_series(const CauchyRun& run, const ConeSpec& cone) {
    const auto& snaps = run.snapshots;
    const double m = run.config.mass_m;
    const ConeTrack track = trace_mantle(run, cone);
    const auto nc = nonconcentration_suite(run, cone, track);
    const auto mor = morawetz_series(run, track, run.config.sigma);
    const double e0_cone = track.index.empty() ? 0.0 : energy_cone(run, track, track.index.front());
    std::vector<DiagnosticsRecord> rows;
    for (int k = 0; k < static_cast<int>(snaps.size()); ++k) {
        DiagnosticsRecord d;
        d.time = snaps[k].time;
        d.E_total = energy(snaps[k], run.grid, m);
        if (const int p = track.find(k); p >= 0) {
            d.E_cone = energy_cone(run, track, k);
            d.flux_PT = e0_cone - d.E_cone;
            d.potential_cone = nc[p].potential_cone;
            d.E_ext = nc[p].E_ext;
            d.kin_integral_rate = nc[p].kin_rate;
            d.radial_integral_rate = nc[p].radial_rate;
            const auto w = weighted_sups_at(run, track, k, run.config.delta);
            d.X_sup = w.X;
            d.Y_sup = w.Y0;
            d.rU2_sup = w.rU2;
            d.morawetz_partial = mor[p];
        }
        if (k >= 1 && k + 1 < static_cast<int>(snaps.size())) {
            if (!run.config.frozen_metric) {
                d.res_momentum = residual_momentum(run, k);
                d.res_evolution = residual_evolution(run, k);
            }
            const auto ir = identity_residuals(run, k);
            d.res_energy_transport = ir.res_energy_transport;
            d.res_momentum_transport = ir.res_momentum_transport;
        }
        rows.push_back(d);
    }
    return rows;
}

} // namespace ekg
