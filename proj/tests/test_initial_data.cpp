#include "ekg/diagnostics.hpp"
#include "ekg/errors.hpp"
#include "ekg/initial_data.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/numeric/odeint.hpp>
#include <gtest/gtest.h>

#include <array>
#include <cmath>

using namespace ekg;

namespace {

SimConfig family(double amp, double mass) {
    SimConfig c;
    c.n_cells = 512;
    c.mass_m = mass;
    c.data_family.amp_phi = amp;
    return c;
}

// Static data: beta' and alpha' from analytic profiles, integrated by an adaptive Dormand-Prince stepper.
std::vector<std::array<double, 2>> ode_oracle(const FreeData& d, const RadialGrid& g, double m) {
    using State = std::array<double, 2>;
    auto rhs = [&](const State& y, State& dy, double r) {
        const double gr = d.g0.d1(r), pr = d.p0.d1(r), ph = d.p0.value(r);
        const double common = r * gr * gr + 0.5 * r * pr * pr;
        const double pot = 0.5 * m * m * r * std::exp(2 * y[0] - 2 * d.g0.value(r)) * ph * ph;
        dy[0] = common + pot;
        dy[1] = common - pot;
    };
    namespace ode = boost::numeric::odeint;
    auto stepper = ode::make_controlled(1e-13, 1e-13, ode::runge_kutta_dopri5<State>());
    std::vector<State> out;
    State y{0.0, 0.0};
    double r = 0.0;
    for (int i = 0; i < g.n_cells; ++i) {
        ode::integrate_adaptive(stepper, rhs, y, r, g.r(i), 1e-3);
        r = g.r(i);
        out.push_back(y);
    }
    return out;
}

} // namespace

TEST(FreeData, ZeroKindIsZero) {
    SimConfig c;
    c.data_family.kind = DataKind::zero;
    const RadialGrid g = build_grid(c);
    const FreeData d = sample_free_data(c.data_family, g);
    for (int i = 0; i < g.n_cells; ++i) {
        EXPECT_EQ(d.gamma0[i], 0.0);
        EXPECT_EQ(d.gamma1[i], 0.0);
        EXPECT_EQ(d.phi0[i], 0.0);
        EXPECT_EQ(d.phi1[i], 0.0);
    }
}

TEST(FreeData, GaussianPeakNearCentre) {
    SimConfig c;
    const RadialGrid g = build_grid(c);
    const FreeData d = sample_free_data(c.data_family, g);
    int arg = 0;
    for (int i = 0; i < g.n_cells; ++i)
        if (d.phi0[i] > d.phi0[arg]) arg = i;
    EXPECT_LE(std::abs(g.r(arg) - 4.0), g.spacing);
    EXPECT_NEAR(d.phi0[arg], 0.1, 1e-4);
    EXPECT_NEAR(d.p0.value(4.0), 0.1, 1e-15);
}

TEST(FreeData, RejectsNegativeGamma) {
    InitialDataFamily f;
    f.kind = DataKind::gaussian_both;
    f.amp_gamma = -0.1;
    EXPECT_THROW(sample_free_data(f, build_grid(256, 16.0)), ConfigError);
}

TEST(Constraints, VacuumGivesFlatMetric) {
    SimConfig c = family(0.0, 1.0);
    c.data_family.kind = DataKind::zero;
    const RadialGrid g = build_grid(c);
    const CauchyState s = initial_state(c, g);
    for (int i = -2; i < g.n_cells + 2; ++i) {
        EXPECT_EQ(s.alpha[i], 0.0);
        EXPECT_EQ(s.beta[i], 0.0);
        EXPECT_EQ(s.beta_t[i], 0.0);
    }
}

TEST(Constraints, MasslessStaticBetaMatchesQuadrature) {
    SimConfig c = family(0.1, 0.0);
    c.n_cells = 1024;
    const RadialGrid g = build_grid(c);
    const FreeData d = sample_free_data(c.data_family, g);
    const MetricProfiles mp = solve_constraint_odes(sources_from_profiles(d, g), g, 0.0);
    auto integrand = [&](double r) { return r * d.g0.d1(r) * d.g0.d1(r) + 0.5 * r * d.p0.d1(r) * d.p0.d1(r); };
    using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
    double prev = 0.0, acc = 0.0, diff = 0.0;
    for (int i = 0; i < g.n_cells; ++i) {
        acc += GK::integrate(integrand, prev, g.r(i), 3, 1e-14);
        prev = g.r(i);
        diff = std::max(diff, std::abs(mp.beta[i] - acc));
    }
    EXPECT_GT(acc, 0.0);
    EXPECT_LE(diff / acc, 1e-6);
}

TEST(Constraints, MassiveBetaMatchesAdaptiveOde) {
    const SimConfig c = family(0.1, 1.0);
    const RadialGrid g = build_grid(c);
    const FreeData d = sample_free_data(c.data_family, g);
    const MetricProfiles mp = solve_constraint_odes(sources_from_profiles(d, g), g, 1.0);
    const auto oracle = ode_oracle(d, g, 1.0);
    double db = 0.0, da = 0.0;
    for (int i = 0; i < g.n_cells; ++i) {
        db = std::max(db, std::abs(mp.beta[i] - oracle[i][0]));
        da = std::max(da, std::abs(mp.alpha[i] - oracle[i][1]));
        EXPECT_LE(mp.alpha[i], mp.beta[i] + 1e-15);
    }
    EXPECT_LE(db, 1e-7);
    EXPECT_LE(da, 1e-7);
}

TEST(Constraints, EvolvedPathSecondOrderAgainstOde) {
    double err[2];
    int k = 0;
    for (int n : {256, 512}) {
        SimConfig c = family(0.1, 1.0);
        c.n_cells = n;
        const RadialGrid g = build_grid(c);
        const CauchyState s = initial_state(c, g);
        const auto oracle = ode_oracle(sample_free_data(c.data_family, g), g, 1.0);
        double e = 0.0;
        for (int i = 0; i < n; ++i) e = std::max(e, std::abs(s.beta[i] - oracle[i][0]));
        err[k++] = e;
    }
    EXPECT_GE(std::log2(err[0] / err[1]), 1.9);
}

TEST(Constraints, MasslessAlphaEqualsBeta) {
    SimConfig c = family(0.1, 0.0);
    c.data_family.kind = DataKind::gaussian_both;
    c.data_family.amp_gamma = 0.05;
    c.data_family.amp_phi_t = 0.03;
    const RadialGrid g = build_grid(c);
    const CauchyState s = initial_state(c, g);
    for (int i = 0; i < g.n_cells; ++i) EXPECT_NEAR(s.alpha[i], s.beta[i], 1e-15 * (1 + std::abs(s.beta[i])));
}

TEST(Constraints, OneSidedSolvesAgreeWithJoint) {
    const SimConfig c = family(0.1, 1.0);
    const RadialGrid g = build_grid(c);
    const CauchyState s = initial_state(c, g);
    const GridField b = solve_beta_slice(s, g, 1.0), a = solve_alpha_slice(s, g, 1.0);
    for (int i = 0; i < g.n_cells; ++i) {
        EXPECT_NEAR(b[i], s.beta[i], 1e-9);
        EXPECT_NEAR(a[i], s.alpha[i], 1e-9);
    }
}

TEST(Constraints, FourthOrderWithAnalyticSources) {
    double err[3];
    const int ns[3] = {128, 256, 512};
    for (int k = 0; k < 3; ++k) {
        SimConfig c = family(0.3, 1.0);
        c.n_cells = ns[k];
        const RadialGrid g = build_grid(c);
        const FreeData d = sample_free_data(c.data_family, g);
        const MetricProfiles mp = solve_constraint_odes(sources_from_profiles(d, g), g, 1.0);
        const auto oracle = ode_oracle(d, g, 1.0);
        double e = 0.0;
        for (int i = 0; i < ns[k]; ++i) e = std::max(e, std::abs(mp.beta[i] - oracle[i][0]));
        err[k] = e;
    }
    EXPECT_GE(std::log2(err[0] / err[1]), 3.5);
    EXPECT_GE(std::log2(err[1] / err[2]), 3.5);
}

TEST(Constraints, MasslessScalingIsQuadratic) {
    const RadialGrid g = build_grid(512, 32.0);
    SimConfig c = family(0.1, 0.0);
    const CauchyState s1 = initial_state(c, g);
    c.data_family.amp_phi = 0.2;
    const CauchyState s2 = initial_state(c, g);
    for (int i = 0; i < g.n_cells; ++i) EXPECT_NEAR(s2.beta[i], 4.0 * s1.beta[i], 1e-14);
}

TEST(Constraints, GhostsAreEvenExtension) {
    const SimConfig c = family(0.1, 1.0);
    const RadialGrid g = build_grid(c);
    const CauchyState s = initial_state(c, g);
    EXPECT_EQ(s.beta[-1], s.beta[0]);
    EXPECT_EQ(s.beta[-2], s.beta[1]);
    EXPECT_EQ(s.alpha[-1], s.alpha[0]);
}

TEST(Constraints, MomentumTermDropout) {
    SimConfig c = family(0.1, 1.0);
    c.data_family.amp_phi_t = 0.05;
    const RadialGrid g = build_grid(c);
    const CauchyState s = initial_state(c, g);
    const GridField bt = beta_t_from_momentum(s, g);
    for (int i = 0; i < g.n_cells; ++i)
        EXPECT_NEAR(bt[i], g.r(i) * s.phi_t[i] * d_dr(s.phi, i, g.spacing), 1e-15);
}

TEST(Constraints, HugeAmplitudeBlowsUp) {
    SimConfig c = family(50.0, 1.0);
    const RadialGrid g = build_grid(c);
    try {
        const CauchyState s = initial_state(c, g);
        EXPECT_FALSE(validate_data(s, g, c).energy_below_2pi);
    } catch (const BlowupError&) {
        SUCCEED();
    }
}

TEST(Validation, VacuumAndSmallData) {
    SimConfig c;
    c.data_family.kind = DataKind::zero;
    RadialGrid g = build_grid(c);
    ValidationReport r = validate_data(initial_state(c, g), g, c);
    EXPECT_EQ(r.total_energy, 0.0);
    EXPECT_TRUE(r.energy_below_2pi);
    EXPECT_TRUE(r.data_conditions_ok);

    c = SimConfig{};
    g = build_grid(c);
    r = validate_data(initial_state(c, g), g, c);
    EXPECT_GT(r.total_energy, 0.0);
    EXPECT_LT(r.total_energy, 2 * M_PI);
    EXPECT_TRUE(r.energy_below_2pi);
    EXPECT_TRUE(r.data_conditions_ok);
    EXPECT_NEAR(r.beta_axis, 0.0, 1e-15);
    EXPECT_NEAR(r.alpha_axis, 0.0, 1e-15);
    EXPECT_LT(r.max_constraint_residual, 1e-3);
}

TEST(Validation, SweepStopsAtFirstFailure) {
    SimConfig c;
    c.n_cells = 256;
    const auto rows = amplitude_sweep(c, 0.1);
    ASSERT_GE(rows.size(), 2u);
    for (std::size_t k = 0; k + 1 < rows.size(); ++k) {
        EXPECT_TRUE(rows[k].energy_ok && rows[k].conditions_ok && !rows[k].blowup);
        EXPECT_DOUBLE_EQ(rows[k + 1].amp_phi, 2 * rows[k].amp_phi);
    }
    const auto& last = rows.back();
    EXPECT_TRUE(!last.energy_ok || !last.conditions_ok || last.blowup);
}
