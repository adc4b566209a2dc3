#pragma once

#include "ekg/cauchy.hpp"
#include "ekg/null.hpp"

#include <utility>
#include <vector>

namespace ekg {

// Time at which the ingoing characteristic that reaches the axis at t_axis has areal radius r.
double ingoing_ray_time(const CauchyRun& run, double t_axis, double r);

// Bicubic (Lagrange in t and r) sample of a stored Cauchy field.
double sample_cauchy(const CauchyRun& run, GridField CauchyState::*field, double t, double r);

struct CrossEvent {
    int slice = 0, k = 0;
    double v_axis = 0.0; // axis time of the slice in the normalized gauge
    double r = 0.0;      // areal radius
    double t_cauchy = 0.0;
    double gamma_null = 0.0, phi_null = 0.0;
    double gamma_cauchy = 0.0, phi_cauchy = 0.0;
};

// Targets are (v, R) pairs in the computational null gauge.
std::vector<std::pair<double, double>> default_event_targets();

std::vector<CrossEvent> cross_events(const NullRun& nrun, const CauchyRun& crun,
                                     const std::vector<std::pair<double, double>>& targets);

// max |difference| / max |value| over both fields.
double relative_difference(const std::vector<CrossEvent>& events);

} // namespace ekg
