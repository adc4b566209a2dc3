#include "ekg/cauchy.hpp"
#include "ekg/diagnostics.hpp"
#include "ekg/errors.hpp"
#include "ekg/initial_data.hpp"
#include "ekg/null.hpp"

#include <boost/numeric/odeint.hpp>
#include <gtest/gtest.h>

#include <array>
#include <cmath>

using namespace ekg;

namespace {

SimConfig run_config(double amp, int n = 256, double t_final = 6.0) {
    SimConfig c;
    c.n_cells = n;
    c.t_final = t_final;
    c.data_family.amp_phi = amp;
    return c;
}

const CauchyRun& reference_run() {
    static const CauchyRun run = run_cauchy(run_config(0.1));
    return run;
}

} // namespace

TEST(Densities, VacuumIsZero) {
    const RadialGrid g = build_grid(64, 8.0);
    const CauchyState s(64);
    const Densities d = densities(apply_axis_parity(s), g, 1.0);
    for (int i = 0; i < 64; ++i) {
        EXPECT_EQ(d.e[i], 0.0);
        EXPECT_EQ(d.m_dens[i], 0.0);
        EXPECT_EQ(d.f[i], 0.0);
    }
    EXPECT_EQ(energy(apply_axis_parity(s), g, 1.0), 0.0);
}

TEST(Densities, ConstantField) {
    const RadialGrid g = build_grid(64, 8.0);
    CauchyState s(64);
    s.phi.fill(0.4);
    const Densities d = densities(s, g, 1.0);
    for (int i = 0; i < 64; ++i) {
        EXPECT_NEAR(d.e[i], 0.08, 1e-16);
        EXPECT_NEAR(d.e[i], 0.5 * d.f[i], 1e-16);
        EXPECT_EQ(d.m_dens[i], 0.0);
    }
}

TEST(Densities, PointwiseBoundsOnEverySlice) {
    const CauchyRun& run = reference_run();
    for (const auto& s : run.snapshots) {
        const Densities d = densities(s, run.grid, 1.0);
        for (int i = 0; i < run.grid.n_cells; ++i) {
            ASSERT_GE(d.e[i] + 1e-18, std::abs(d.m_dens[i]));
            ASSERT_GE(d.f[i], 0.0);
            ASSERT_GE(d.e[i] - d.e_kin[i] - 0.5 * d.f[i], -1e-18);
        }
    }
}

TEST(Energy, MatchesFineOdeQuadrature) {
    SimConfig c = run_config(0.1, 1024);
    const FreeData d = sample_free_data(c.data_family, build_grid(c));
    // y = {beta, E}; static data, m = 1.
    using State = std::array<double, 2>;
    auto rhs = [&](const State& y, State& dy, double r) {
        const double pr = d.p0.d1(r), ph = d.p0.value(r);
        dy[0] = 0.5 * r * pr * pr + 0.5 * r * std::exp(2 * y[0]) * ph * ph;
        const double e = std::exp(-2 * y[0]) * 0.5 * pr * pr + 0.5 * ph * ph;
        dy[1] = 2 * M_PI * e * r * std::exp(y[0]);
    };
    namespace ode = boost::numeric::odeint;
    State y{0.0, 0.0};
    ode::integrate_adaptive(ode::make_controlled(1e-13, 1e-13, ode::runge_kutta_dopri5<State>()), rhs, y, 0.0,
                            c.r_max, 1e-3);
    double err[2];
    int k = 0;
    for (int n : {1024, 2048}) {
        c.n_cells = n;
        const RadialGrid g = build_grid(c);
        err[k++] = std::abs(energy(initial_state(c, g), g, 1.0) / y[1] - 1.0);
    }
    EXPECT_LE(err[1], 1e-4);
    EXPECT_NEAR(std::log2(err[0] / err[1]), 2.0, 0.1);
}

TEST(Energy, FullBallEqualsTotal) {
    const CauchyRun& run = reference_run();
    for (std::size_t k = 0; k < run.snapshots.size(); k += 20) {
        const auto& s = run.snapshots[k];
        EXPECT_DOUBLE_EQ(energy(s, run.grid, 1.0, run.grid.r_max), energy(s, run.grid, 1.0));
        EXPECT_LE(energy(s, run.grid, 1.0, 3.0), energy(s, run.grid, 1.0, 5.0));
    }
}

TEST(Cone, VacuumAndDisjointDataGiveZero) {
    SimConfig c = run_config(0.0, 256, 4.0);
    c.data_family.kind = DataKind::zero;
    CauchyRun run = run_cauchy(c);
    ConeTrack tr = trace_mantle(run, {4.0, 0.5});
    for (int idx : tr.index) EXPECT_EQ(energy_cone(run, tr, idx), 0.0);

    c = run_config(0.1, 256, 4.0);
    c.data_family.center = 20.0;
    run = run_cauchy(c);
    tr = trace_mantle(run, {8.0, 0.5});
    for (int idx : tr.index) EXPECT_LE(energy_cone(run, tr, idx), 1e-10);
    const auto rows = nonconcentration_suite(run, {8.0, 0.5}, tr);
    for (const auto& r : rows) {
        EXPECT_LE(std::abs(r.potential_cone), 1e-10);
        EXPECT_LE(std::abs(r.E_ext), 1e-10);
        EXPECT_LE(std::abs(r.kin_rate), 1e-10);
        EXPECT_LE(std::abs(r.radial_rate), 1e-10);
    }
}

TEST(Cone, MantleFollowsLightRays) {
    const CauchyRun& run = reference_run();
    const ConeTrack tr = trace_mantle(run, {8.0, 0.5});
    ASSERT_FALSE(tr.index.empty());
    for (std::size_t p = 0; p < tr.index.size(); ++p) {
        // Light speed e^{alpha - beta} never exceeds 1 here.
        EXPECT_LE(tr.r2[p], 8.0 - tr.time[p] + 1e-12);
        EXPECT_GE(tr.r2[p], 8.0 - tr.time[p] - 0.2);
        if (p > 0) {
            EXPECT_LT(tr.r2[p], tr.r2[p - 1]);
        }
    }
    EXPECT_EQ(tr.find(tr.index.front()), 0);
    EXPECT_EQ(tr.find(-7), -1);
}

TEST(Cone, ApexBeyondGridRejected) {
    const CauchyRun& run = reference_run();
    EXPECT_THROW(trace_mantle(run, {40.0, 0.5}), ConeOutOfRangeError);
}

TEST(Flux, NonNegativeAndStokesConsistent) {
    const CauchyRun& run = reference_run();
    const double e0 = energy(run.snapshots[0], run.grid, 1.0);
    const ConeTrack tr = trace_mantle(run, {8.0, 0.5});
    for (std::size_t p = 1; p < tr.index.size(); p += 17) {
        const FluxResult f = flux_PT(run, tr, tr.index.front(), tr.index[p]);
        EXPECT_GE(f.stokes, -1e-8 * e0);
        EXPECT_NEAR(f.stokes, f.mantle, 1e-2 * e0);
        EXPECT_DOUBLE_EQ(f.residual, f.stokes - f.mantle);
    }
}

TEST(Identities, AlgebraicRelationsHold) {
    const CauchyRun& run = reference_run();
    for (int k = 1; k + 1 < static_cast<int>(run.snapshots.size()); k += 9) {
        const IdentityResiduals ir = identity_residuals(run, k);
        EXPECT_LE(ir.sum_defect, 1e-15);
        EXPECT_LE(ir.diff_defect, 1e-15);
        for (std::size_t i = 0; i < ir.F2.size(); ++i) {
            EXPECT_GE(ir.F2[i], -1e-18);
            EXPECT_GE(ir.G2[i], -1e-18);
        }
    }
    EXPECT_THROW(identity_residuals(run, 0), IndexError);
}

TEST(Identities, ResidualsSecondOrder) {
    double r[2][2];
    int k = 0;
    for (int n : {256, 512}) {
        const CauchyRun run = run_cauchy(run_config(0.1, n, 4.0));
        double a = 0.0, b = 0.0;
        for (int i = 1; i + 1 < static_cast<int>(run.snapshots.size()); ++i) {
            const IdentityResiduals ir = identity_residuals(run, i);
            a = std::max(a, ir.res_energy_transport);
            b = std::max(b, ir.res_momentum_transport);
        }
        r[k][0] = a;
        r[k++][1] = b;
    }
    EXPECT_NEAR(std::log2(r[0][0] / r[1][0]), 2.0, 0.25);
    EXPECT_NEAR(std::log2(r[0][1] / r[1][1]), 2.0, 0.25);
}

TEST(Sups, VacuumZeroAndAmplitudeResponse) {
    SimConfig c = run_config(0.0, 256, 4.0);
    c.data_family.kind = DataKind::zero;
    CauchyRun run = run_cauchy(c);
    WeightedSups w = weighted_sups(run, trace_mantle(run, {4.0, 0.5}), 0.6);
    EXPECT_EQ(w.X, 0.0);
    EXPECT_EQ(w.rU2, 0.0);
    EXPECT_EQ(w.Y0, 0.0);
    EXPECT_EQ(morawetz_integral(run, trace_mantle(run, {4.0, 0.5}), 1.5), 0.0);

    double x[2];
    int k = 0;
    for (double amp : {0.1, 0.05}) {
        run = run_cauchy(run_config(amp, 256, 6.0));
        x[k++] = weighted_sups(run, trace_mantle(run, {8.0, 0.5}), 0.6).X;
    }
    EXPECT_LT(x[1], x[0]);
}

TEST(Morawetz, FiniteForBothExponents) {
    const CauchyRun& run = reference_run();
    const ConeTrack tr = trace_mantle(run, {8.0, 0.5});
    const double a = morawetz_integral(run, tr, 1.5), b = morawetz_integral(run, tr, 1.4);
    EXPECT_TRUE(std::isfinite(a) && a > 0.0);
    EXPECT_TRUE(std::isfinite(b) && b > 0.0);
    const auto series = morawetz_series(run, tr, 1.5);
    for (std::size_t i = 1; i < series.size(); ++i) EXPECT_GE(series[i], series[i - 1]);
}

TEST(Slopes, ExactPowerLaw) {
    std::vector<double> x, y;
    for (int i = 1; i <= 10; ++i) {
        x.push_back(0.1 * i);
        y.push_back(3.0 * std::pow(0.1 * i, 2.5));
    }
    EXPECT_NEAR(loglog_slope(x, y), 2.5, 1e-12);
    y[3] = 0.0;
    EXPECT_NEAR(loglog_slope(x, y), 2.5, 1e-12);
}

TEST(AxisGeometry, VacuumDeviationsVanish) {
    SimConfig c = run_config(0.0, 256, 4.0);
    c.data_family.kind = DataKind::zero;
    for (const auto& a : axis_geometry(run_null(c)))
        for (std::size_t k = 0; k < a.R.size(); ++k) {
            EXPECT_EQ(a.dev_r[k], 0.0);
            EXPECT_EQ(a.dev_ru[k], 0.0);
            EXPECT_EQ(a.dev_rv[k], 0.0);
        }
}

TEST(Series, RecordInvariants) {
    const CauchyRun& run = reference_run();
    const auto rows = diagnostics_series(run, {8.0, 0.5});
    ASSERT_EQ(rows.size(), run.snapshots.size());
    for (const auto& d : rows) {
        EXPECT_GE(d.E_total + 1e-15, d.E_cone);
        EXPECT_GE(d.E_cone, 0.0);
        for (double v : {d.E_total, d.flux_PT, d.potential_cone, d.E_ext, d.kin_integral_rate, d.X_sup, d.rU2_sup,
                         d.morawetz_partial, d.res_momentum, d.res_evolution, d.res_energy_transport, d.res_momentum_transport})
            EXPECT_TRUE(std::isfinite(v));
    }
}
