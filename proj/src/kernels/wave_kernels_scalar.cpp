#include "ekg/kernels.hpp"

namespace ekg::kernels {

void wave_accel_scalar(const WaveInputs& in, double* gtt, double* ptt) {
    const double* g = in.g + 2;
    const double* p = in.p + 2;
    for (int i = 0; i < in.n; ++i) {
        const double fr = in.flux[i + 1], fl = in.flux[i];
        const double lg = fr * (g[i + 1] - g[i]) - fl * (g[i] - g[i - 1]);
        const double lp = fr * (p[i + 1] - p[i]) - fl * (p[i] - p[i - 1]);
        const double src = in.pot[i] * p[i];
        gtt[i] = in.acoef[i] * lg - in.damp[i] * in.gt[i] + 0.5 * src * p[i];
        ptt[i] = in.acoef[i] * lp - in.damp[i] * in.pt[i] - src;
    }
}

void densities_scalar(const DensityInputs& in, const DensityOutputs& out) {
    for (int i = 0; i < in.n; ++i) {
        const double gt2 = in.gt[i] * in.gt[i], pt2 = in.pt[i] * in.pt[i];
        const double gr2 = in.gr[i] * in.gr[i], pr2 = in.pr[i] * in.pr[i];
        const double f = in.ef[i] * in.phi[i] * in.phi[i];
        const double kin = in.ea[i] * (gt2 + 0.5 * pt2);
        const double grad = in.eb[i] * (gr2 + 0.5 * pr2);
        out.e[i] = kin + grad + 0.5 * f;
        out.m[i] = in.eab[i] * (2.0 * in.gt[i] * in.gr[i] + in.pt[i] * in.pr[i]);
        out.f[i] = f;
        out.e_kin[i] = kin;
    }
}

} // namespace ekg::kernels
