#pragma once

#include "ekg/initial_data.hpp"

#include <utility>
#include <vector>

namespace ekg {

enum class SourceKind { zero, constant_ball, gaussian_pulse };

// Radially symmetric source h(t, r) for -U_tt + Laplacian U = h in two space dimensions.
struct SourceSpec {
    SourceKind kind = SourceKind::zero;
    double amplitude = 1.0;
    double support_radius = 1.0; // constant_ball radius
    double center = 0.0;         // gaussian_pulse radial centre
    double width = 1.0;          // gaussian_pulse radial width
    double t_center = 0.0;       // gaussian_pulse time centre
    double t_width = 1.0;        // gaussian_pulse time width

    double value(double t, double r) const;
};

struct FlatData {
    RadialProfile f; // U(0, r)
    RadialProfile g; // U_t(0, r)
};

struct OracleOptions {
    double tolerance = 1e-6; // absolute
    unsigned max_depth = 15;
};

// Value of the homogeneous solution from the data layer at (T, R).
double kernel_homogeneous(const FlatData& data, double T, double R, const OracleOptions& opt = {});

// Retarded source term (the inhomogeneous part) at (T, R).
double kernel_duhamel(const SourceSpec& source, double T, double R, const OracleOptions& opt = {});

// U at each event (T, R) for flat data plus source.
std::vector<double> kernel_solve(const SourceSpec& source, const FlatData& data,
                                 const std::vector<std::pair<double, double>>& events, const OracleOptions& opt = {});

// Scalar field phi of free data, treated as a single flat-space wave.
std::vector<double> kernel_solve(const SourceSpec& source, const FreeData& data,
                                 const std::vector<std::pair<double, double>>& events, const OracleOptions& opt = {});

struct TailIntegral {
    double value;
    double bound_ratio; // value * mu^{a+b-1}
};

// int_0^inf (mu + x)^{-a} x^{-b} dx, split at x = mu.
TailIntegral weighted_tail_integral(double mu, double a, double b);

} // namespace ekg
