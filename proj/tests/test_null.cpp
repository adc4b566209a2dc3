#include "ekg/errors.hpp"
#include "ekg/initial_data.hpp"
#include "ekg/null.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace ekg;

namespace {

SimConfig null_config(double amp, double mass, int n = 256, double t_final = 6.0) {
    SimConfig c;
    c.n_cells = n;
    c.mass_m = mass;
    c.t_final = t_final;
    c.data_family.amp_phi = amp;
    return c;
}

double max_residual(const NullRun& run, bool u_side) {
    double m = 0.0;
    for (int j = 2; j + 2 < static_cast<int>(run.slices.size()); ++j) {
        const auto [ru, rv] = residual_raychaudhuri(run, j);
        m = std::max(m, u_side ? ru : rv);
    }
    return m;
}

} // namespace

TEST(Null, VacuumExact) {
    for (double m : {0.0, 1.0}) {
        SimConfig c = null_config(0.0, m);
        c.data_family.kind = DataKind::zero;
        const NullRun run = run_null(c);
        ASSERT_EQ(run.slices.size(), 49u);
        for (const auto& sl : run.slices)
            for (std::size_t k = 0; k < sl.size(); ++k) {
                ASSERT_EQ(sl.r[k], 0.5 * (sl.v - sl.u_values[k]));
                ASSERT_EQ(sl.lambda[k], 0.0);
                ASSERT_EQ(sl.gamma[k], 0.0);
                ASSERT_EQ(sl.phi[k], 0.0);
            }
        for (int j = 2; j + 2 < static_cast<int>(run.slices.size()); j += 7) {
            const auto [ru, rv] = residual_raychaudhuri(run, j);
            EXPECT_LE(ru, 1e-13);
            EXPECT_LE(rv, 1e-13);
        }
    }
}

TEST(Null, VacuumAxisSeed) {
    NullSlice s;
    s.resize(4);
    for (int k = 0; k < 4; ++k) s.r[k] = s.R[k] = 0.5 * k * 0.25;
    const AxisSeed a = axis_limits(s);
    EXPECT_EQ(a.r, 0.0);
    EXPECT_NEAR(a.lambda, 0.0, 1e-15);
    EXPECT_NEAR(a.r_u, -0.5, 1e-15);
    EXPECT_NEAR(a.r_v, 0.5, 1e-15);
    EXPECT_EQ(a.gamma, 0.0);
}

TEST(Null, AxisSeedExactForCubicRadius) {
    NullSlice s;
    s.resize(4);
    const double a1 = 1.1, b = 0.3, c = -0.2;
    for (int k = 0; k < 4; ++k) {
        const double R = 0.1 * k;
        s.R[k] = R;
        s.r[k] = a1 * R + b * R * R + c * R * R * R;
        s.gamma[k] = 0.4 - 0.7 * R + 2.0 * R * R;
        s.phi[k] = 0.1;
    }
    const AxisSeed a = axis_limits(s);
    EXPECT_NEAR(a.lambda, std::log(a1), 1e-13);
    EXPECT_NEAR(a.r_v, 0.5 * a1, 1e-13);
    EXPECT_NEAR(a.gamma, 0.4, 1e-13);
    EXPECT_NEAR(a.phi, 0.1, 1e-15);
}

TEST(Null, MasslessRadiusIsExact) {
    const NullRun run = run_null(null_config(0.1, 0.0));
    for (std::size_t j = 1; j < run.slices.size(); ++j) {
        const auto& cur = run.slices[j];
        const auto& prev = run.slices[j - 1];
        for (std::size_t k = 1; k + 2 < cur.size(); ++k) {
            ASSERT_EQ(cur.r[k] + prev.r[k], prev.r[k - 1] + cur.r[k + 1]);
            ASSERT_EQ(cur.r[k], 0.5 * (cur.v - cur.u_values[k]));
        }
    }
}

TEST(Null, InitialConeMatchesCauchySlice) {
    SimConfig c = null_config(0.1, 0.0);
    const RadialGrid g = build_grid(c);
    const CauchyState s = initial_state(c, g);
    const NullBoundaryData bd = init_null_from_free_data(s, g, 0.0);
    for (int j = 0; j <= g.n_cells; ++j) EXPECT_EQ(bd.r0[j], j * g.spacing);
    for (int j = 2; j + 2 < g.n_cells; ++j) {
        const double face_ab = (-(s.alpha[j - 2] + s.beta[j - 2]) + 9 * (s.alpha[j - 1] + s.beta[j - 1]) +
                                9 * (s.alpha[j] + s.beta[j]) - (s.alpha[j + 1] + s.beta[j + 1])) /
                               32.0;
        EXPECT_NEAR(bd.lambda0[j], face_ab, 1e-15);
    }
}

TEST(Null, NullDerivativesRecombine) {
    SimConfig c = null_config(0.1, 1.0);
    c.data_family.amp_phi_t = 0.05;
    const RadialGrid g = build_grid(c);
    const CauchyState s = initial_state(c, g);
    for (int i : {10, 100, 150}) {
        const NullDerivatives d = null_derivatives_at(s, g, i);
        const double e = std::exp(s.beta[i] - s.alpha[i]);
        EXPECT_NEAR(d.phi_u + d.phi_v, e * s.phi_t[i], 1e-15);
        EXPECT_NEAR(d.phi_v - d.phi_u, d_dr(s.phi, i, g.spacing), 1e-15);
    }
}

TEST(Null, SmallDataHasNoTrappedSurfaces) {
    const NullRun run = run_null(null_config(0.1, 1.0));
    for (std::size_t j = 1; j < run.slices.size(); ++j)
        for (std::size_t k = 1; k < run.slices[j].size(); ++k) {
            ASSERT_LT(run.slices[j].r_u[k], 0.0);
            ASSERT_GT(run.slices[j].r_v[k], 0.0);
        }
}

TEST(Null, ConstraintResidualsConverge) {
    double ru[2], rv[2];
    int k = 0;
    for (int n : {512, 1024}) {
        const NullRun run = run_null(null_config(0.1, 1.0, n, 6.0));
        ru[k] = max_residual(run, true);
        rv[k++] = max_residual(run, false);
    }
    EXPECT_GE(ru[0] / ru[1], 3.0);
    EXPECT_LE(ru[0] / ru[1], 5.0);
    EXPECT_GE(rv[0] / rv[1], 3.0);
    EXPECT_LE(rv[0] / rv[1], 5.0);
}

TEST(Null, ResidualDetectsZeroedShear) {
    SimConfig c = null_config(0.1, 1.0);
    c.data_family.kind = DataKind::gaussian_both;
    c.data_family.amp_gamma = 0.1;
    NullRun run = run_null(c);
    const int j = static_cast<int>(run.slices.size()) / 2;
    const double base = residual_raychaudhuri(run, j).first;
    for (auto& x : run.slices[j].gamma_u) x = 0.0;
    EXPECT_GE(residual_raychaudhuri(run, j).first, 10.0 * base);
}

TEST(Null, ResidualIndexChecks) {
    const NullRun run = run_null(null_config(0.1, 1.0, 64, 2.0));
    EXPECT_THROW(residual_raychaudhuri(run, 1), IndexError);
    EXPECT_THROW(residual_raychaudhuri(run, static_cast<int>(run.slices.size()) - 2), IndexError);
}

TEST(Null, DegenerateRadiusRaises) {
    SimConfig c = null_config(0.0, 0.0, 64, 2.0);
    c.data_family.kind = DataKind::zero;
    const RadialGrid g = build_grid(c);
    NullBoundaryData bd = init_null_from_free_data(initial_state(c, g), g, 0.0);
    bd.r1[1] = -5.0;
    NullRun run;
    run.config = c;
    run.du = g.spacing;
    NullSlice s0;
    s0.resize(1);
    run.slices.push_back(s0);
    run.slices.push_back(march_diamond(run, bd, 0));
    EXPECT_THROW(march_diamond(run, bd, 1), DegenerateConeError);
}

TEST(Null, RunLongerThanGridRejected) {
    SimConfig c = null_config(0.1, 1.0, 64, 40.0);
    EXPECT_THROW(run_null(c), ConfigError);
}

TEST(Null, AxisClockIsOddAndMonotone) {
    const NullRun run = run_null(null_config(0.1, 1.0));
    EXPECT_EQ(run.clock(0.0), 0.0);
    for (double s : {0.5, 1.7, 3.0}) {
        EXPECT_EQ(run.clock(-s), -run.clock(s));
        EXPECT_GT(run.clock(s + 0.1), run.clock(s));
        EXPECT_GT(run.clock_rate(s), 0.0);
    }
}
