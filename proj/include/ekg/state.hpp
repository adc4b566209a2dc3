#pragma once

#include "ekg/config.hpp"
#include "ekg/grid.hpp"

#include <vector>

namespace ekg {

struct CauchyState {
    double time = 0.0;
    GridField gamma, gamma_t, phi, phi_t;
    GridField alpha, beta, beta_t;
    GridField alpha_t; // closure value used by the last stage, kept for diagnostics

    CauchyState() = default;
    explicit CauchyState(int n)
        : gamma(n), gamma_t(n), phi(n), phi_t(n), alpha(n), beta(n), beta_t(n), alpha_t(n) {}
    int size() const { return gamma.size(); }
};

// Even reflection of all even fields, odd-free copy-out at the outer edge.
CauchyState apply_axis_parity(CauchyState s);
void apply_axis_parity_inplace(CauchyState& s);

bool all_finite(const CauchyState& s);

// One v = const slice. Index k = 0 is the axis point; k increases outward (u decreases).
struct NullSlice {
    double v = 0.0;
    std::vector<double> u_values;
    std::vector<double> R; // coordinate radius (v - u)/2
    std::vector<double> r, lambda, gamma, phi;
    std::vector<double> r_u, lambda_u, gamma_u, phi_u;
    std::vector<double> r_v, lambda_v, gamma_v, phi_v;

    std::size_t size() const { return r.size(); }
    void resize(std::size_t n);
};

} // namespace ekg
