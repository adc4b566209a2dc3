#pragma once

#include "ekg/cauchy.hpp"
#include "ekg/config.hpp"
#include "ekg/flat_oracle.hpp"
#include "ekg/io.hpp"
#include "ekg/null.hpp"

#include <string>
#include <utility>
#include <vector>

namespace ekg {

// Twenty (T, R) events for the flat comparison.
std::vector<std::pair<double, double>> flat_events();

std::vector<double> flat_oracle_values(const SimConfig& config, const std::vector<std::pair<double, double>>& events,
                                       double tolerance = 1e-9);

// max |Cauchy - oracle| / max |oracle| over the events (frozen metric is forced).
double frozen_pulse_error(SimConfig config, const std::vector<std::pair<double, double>>& events,
                          const std::vector<double>& oracle);

struct ResidualSample {
    double momentum = 0.0, res_evolution = 0.0, res_energy_transport = 0.0, res_momentum_transport = 0.0;
    double null_u = 0.0, null_v = 0.0;
    double cross = 0.0;
};

// Window maxima of every residual on a coupled run of the given config.
ResidualSample coupled_residuals(const SimConfig& config, bool with_null = true);

// log2(coarse / fine).
double observed_order(double coarse, double fine);

// Runs `config` at n, 2n, 4n in parallel and reports every residual with its order.
std::vector<ConvergenceRow> convergence_study(const SimConfig& config);

} // namespace ekg
