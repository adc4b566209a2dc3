#include "ekg/crosscheck.hpp"

#include "ekg/errors.hpp"

#include <algorithm>
#include <cmath>

namespace ekg {

namespace {

double speed(const CauchyRun& run, int k, double r) {
    const auto& s = run.snapshots[k];
    return std::exp(interpolate(s.alpha, run.grid, r) - interpolate(s.beta, run.grid, r));
}

} // namespace

double ingoing_ray_time(const CauchyRun& run, double t_axis, double r_target) {
    const auto& snaps = run.snapshots;
    const int last = static_cast<int>(snaps.size()) - 1;
    if (t_axis > snaps[last].time + 1e-12) throw ConeOutOfRangeError("ray apex beyond the Cauchy run");
    int k = std::min(last, static_cast<int>(std::floor(t_axis / run.snapshot_dt + 1e-9)));
    double r = t_axis - snaps[k].time;
    if (r >= r_target) return t_axis - r_target;
    for (; k > 0; --k) {
        const double dt = snaps[k].time - snaps[k - 1].time;
        const double s0 = speed(run, k, r);
        const double s1 = speed(run, k - 1, r + dt * s0);
        const double rn = r + 0.5 * dt * (s0 + s1);
        if (rn >= r_target) {
            // Quadratic r(t) through the step: r(t_k - x) = r + s0 x + (s1 - s0) x^2 / (2 dt).
            const double a = 0.5 * (s1 - s0) / dt, b = s0, c = r - r_target;
            double x = std::abs(a) < 1e-14 ? -c / b : (-b + std::sqrt(b * b - 4.0 * a * c)) / (2.0 * a);
            return snaps[k].time - x;
        }
        r = rn;
    }
    throw ConeOutOfRangeError("ray leaves the initial slice before reaching the requested radius");
}

double sample_cauchy(const CauchyRun& run, GridField CauchyState::*field, double t, double r) {
    const auto& snaps = run.snapshots;
    const int n = static_cast<int>(snaps.size());
    if (n < 4) throw IndexError("bicubic sample needs four snapshots");
    const double x = (t - snaps[0].time) / run.snapshot_dt;
    int i = std::clamp(static_cast<int>(std::floor(x)), 1, n - 3);
    const double s = x - i;
    double v[4];
    for (int c = 0; c < 4; ++c) v[c] = interpolate(snaps[i - 1 + c].*field, run.grid, r);
    const double a = s + 1.0, b = s, cc = s - 1.0, d = s - 2.0;
    return -v[0] * b * cc * d / 6.0 + v[1] * a * cc * d / 2.0 - v[2] * a * b * d / 2.0 + v[3] * a * b * cc / 6.0;
}

std::vector<std::pair<double, double>> default_event_targets() {
    std::vector<std::pair<double, double>> t;
    for (double v : {3.0, 4.0, 5.0, 6.0, 7.0})
        for (double R : {0.5, 1.0, 1.5, 2.5}) t.emplace_back(v, R);
    return t;
}

std::vector<CrossEvent> cross_events(const NullRun& nrun, const CauchyRun& crun,
                                     const std::vector<std::pair<double, double>>& targets) {
    std::vector<CrossEvent> out;
    const double d = nrun.du;
    for (const auto& [v, R] : targets) {
        CrossEvent e;
        e.slice = static_cast<int>(std::llround(v / d));
        e.k = static_cast<int>(std::llround(2.0 * R / d));
        if (e.slice >= static_cast<int>(nrun.slices.size()) || e.k > 2 * e.slice)
            throw ConeOutOfRangeError("cross-check event outside the null domain");
        const NullSlice& sl = nrun.slices[e.slice];
        e.v_axis = nrun.clock(sl.v);
        e.r = sl.r[e.k];
        e.gamma_null = sl.gamma[e.k];
        e.phi_null = sl.phi[e.k];
        e.t_cauchy = ingoing_ray_time(crun, e.v_axis, e.r);
        e.gamma_cauchy = sample_cauchy(crun, &CauchyState::gamma, e.t_cauchy, e.r);
        e.phi_cauchy = sample_cauchy(crun, &CauchyState::phi, e.t_cauchy, e.r);
        out.push_back(e);
    }
    return out;
}

double relative_difference(const std::vector<CrossEvent>& ev) {
    double diff = 0.0, scale = 0.0;
    for (const auto& e : ev) {
        diff = std::max({diff, std::abs(e.gamma_null - e.gamma_cauchy), std::abs(e.phi_null - e.phi_cauchy)});
        scale = std::max({scale, std::abs(e.gamma_cauchy), std::abs(e.phi_cauchy)});
    }
    return scale > 0.0 ? diff / scale : diff;
}

} // namespace ekg
