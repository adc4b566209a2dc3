#include "ekg/state.hpp"

#include <cmath>

namespace ekg {

void apply_axis_parity_inplace(CauchyState& s) {
    for (GridField* f : {&s.gamma, &s.gamma_t, &s.phi, &s.phi_t, &s.alpha, &s.beta, &s.beta_t, &s.alpha_t})
        fill_ghosts(*f, Parity::even);
}

CauchyState apply_axis_parity(CauchyState s) {
    apply_axis_parity_inplace(s);
    return s;
}

bool all_finite(const CauchyState& s) {
    for (const GridField* f : {&s.gamma, &s.gamma_t, &s.phi, &s.phi_t, &s.alpha, &s.beta, &s.beta_t})
        for (double x : f->raw())
            if (!std::isfinite(x)) return false;
    return std::isfinite(s.time);
}

void NullSlice::resize(std::size_t n) {
    for (auto* v : {&u_values, &R, &r, &lambda, &gamma, &phi, &r_u, &lambda_u, &gamma_u, &phi_u, &r_v,
                    &lambda_v, &gamma_v, &phi_v})
        v->assign(n, 0.0);
}

} // namespace ekg
