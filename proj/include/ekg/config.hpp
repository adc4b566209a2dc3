#pragma once

#include <string>

namespace ekg {

enum class DataKind { gaussian_phi, gaussian_both, zero };

struct InitialDataFamily {
    DataKind kind = DataKind::gaussian_phi;
    double amp_phi = 0.1;
    double amp_gamma = 0.0;
    double amp_phi_t = 0.0;
    double amp_gamma_t = 0.0;
    double center = 4.0;
    double width = 1.0;
};

enum class RunMode { cauchy, null, crosscheck, converge, diagnose };

// How the lapse time derivative is closed inside the Cauchy stepper.
enum class AlphaClosure { backward_difference, constraint_integral };

struct SimConfig {
    double mass_m = 1.0;
    int n_cells = 1024;
    double r_max = 32.0;
    double cfl = 0.5;
    double t_final = 8.0;
    double delta = 0.6;
    double sigma = 1.5;
    double cone_fraction = 0.5;
    InitialDataFamily data_family{};
    RunMode mode = RunMode::cauchy;

    double apex_time = 8.0;
    int snapshot_every = 1;
    bool frozen_metric = false;
    AlphaClosure alpha_closure = AlphaClosure::constraint_integral;
    std::string output_dir = "out";

    double spacing() const { return r_max / n_cells; }
    double dt() const { return cfl * spacing(); }
};

// Throws ConfigError on out-of-range fields.
void validate_config(const SimConfig& c);

SimConfig parse_config_text(const std::string& text);
SimConfig load_config(const std::string& path);

const char* to_string(RunMode m);
const char* to_string(DataKind k);

} // namespace ekg
